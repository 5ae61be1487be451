//! Special functions needed by the oscillator solvers: physicists' Hermite
//! polynomials, double factorials, and the modified spherical Bessel
//! functions of the second kind `k_l`.
//!
//! The `k_l` convention here carries no `pi/2` prefactor; it is fixed by
//! `k_0(s) = e^{-s}/s` and the recursion
//! `k_{l-1}(s) - k_{l+1}(s) = -(2l+1)/s * k_l(s)`.

use crate::error::{Error, Result};
use crate::sdomain::{Factor, GeneralTerm, SDomainFn};

/// Dense real polynomial, coefficients in ascending power order.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    coeffs: Vec<f64>,
}

impl Polynomial {
    pub fn new(coeffs: Vec<f64>) -> Self {
        let mut p = Polynomial { coeffs };
        p.trim();
        p
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: vec![] }
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0.0) {
            self.coeffs.pop();
        }
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    /// Coefficient of `x^k` (zero beyond the stored degree).
    pub fn coeff(&self, k: usize) -> f64 {
        self.coeffs.get(k).copied().unwrap_or(0.0)
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn eval(&self, x: f64) -> f64 {
        // Horner
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }

    pub fn derivative(&self) -> Polynomial {
        if self.coeffs.len() <= 1 {
            return Polynomial::zero();
        }
        Polynomial::new(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, &c)| (i as f64 + 1.0) * c)
                .collect(),
        )
    }

    pub fn scale(&self, k: f64) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|c| c * k).collect())
    }
}

/// Physicists' Hermite polynomial `H_n`, from the three-term recurrence
/// `H_{n+1}(x) = 2x H_n(x) - 2n H_{n-1}(x)` with `H_0 = 1`, `H_1 = 2x`.
///
/// Coefficients stay exact in f64 well past n = 10 (they are integers far
/// below 2^53 there).
pub fn hermite(n: u32) -> Polynomial {
    let mut prev = vec![1.0]; // H_0
    if n == 0 {
        return Polynomial::new(prev);
    }
    let mut cur = vec![0.0, 2.0]; // H_1
    for m in 1..n {
        let mut next = vec![0.0; m as usize + 2];
        for (k, &c) in cur.iter().enumerate() {
            next[k + 1] += 2.0 * c;
        }
        for (k, &c) in prev.iter().enumerate() {
            next[k] -= 2.0 * m as f64 * c;
        }
        prev = cur;
        cur = next;
    }
    Polynomial::new(cur)
}

/// Double factorial `n!! = n (n-2) (n-4) ...` with `0!! = 1!! = 1`.
pub fn double_factorial(n: u64) -> f64 {
    let mut acc = 1.0;
    let mut k = n;
    while k > 1 {
        acc *= k as f64;
        k -= 2;
    }
    acc
}

fn bessel_k_term_coeff(l: u32, j: u32) -> f64 {
    // (l+j)! / (j! (l-j)! 2^j): integer-valued before the power of two,
    // so everything here is exact in f64 for the small l in play
    let mut num = 1.0; // (l+j)!/j! = (j+1)(j+2)...(l+j)
    for i in (j + 1)..=(l + j) {
        num *= i as f64;
    }
    let mut den = 1.0; // (l-j)!
    for i in 1..=(l - j) {
        den *= i as f64;
    }
    num / den / 2f64.powi(j as i32)
}

/// Modified spherical Bessel function of the second kind,
/// `k_l(s) = (e^{-s}/s) * sum_{j=0}^{l} (l+j)! / (j! (l-j)! (2s)^j)`,
/// for real `s > 0`.
pub fn mod_sph_bessel_k(l: u32, s: f64) -> Result<f64> {
    if !(s > 0.0) {
        return Err(Error::DomainError(format!(
            "k_{l} is evaluated for real s > 0, got s = {s}"
        )));
    }
    let mut sum = 0.0;
    for j in 0..=l {
        sum += bessel_k_term_coeff(l, j) / s.powi(j as i32 + 1);
    }
    Ok((-s).exp() * sum)
}

/// `k_l` as an s-domain function: `sum_j c_j s^{-(j+1)} e^{-s}`.
///
/// This closed form is what the transformed-equation residual checks
/// differentiate and evaluate symbolically.
pub fn mod_sph_bessel_k_sdomain(l: u32) -> SDomainFn {
    let terms = (0..=l)
        .map(|j| {
            GeneralTerm::new(
                bessel_k_term_coeff(l, j),
                vec![Factor::new(0.0, -(j as f64) - 1.0)],
                [0.0, -1.0, 0.0],
            )
        })
        .collect();
    SDomainFn::new(terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn hermite_low_orders() {
        assert_eq!(hermite(0).coeffs(), &[1.0]);
        assert_eq!(hermite(1).coeffs(), &[0.0, 2.0]);
        assert_eq!(hermite(2).coeffs(), &[-2.0, 0.0, 4.0]);
        assert_eq!(hermite(3).coeffs(), &[0.0, -12.0, 0.0, 8.0]);
    }

    #[test]
    fn hermite_ten_matches_published_coefficients() {
        // H_10 = 1024 x^10 - 23040 x^8 + 161280 x^6 - 403200 x^4 + 302400 x^2 - 30240
        let h = hermite(10);
        let expect = [
            (-30240.0, 0),
            (302400.0, 2),
            (-403200.0, 4),
            (161280.0, 6),
            (-23040.0, 8),
            (1024.0, 10),
        ];
        for (c, k) in expect {
            assert_eq!(h.coeff(k), c);
        }
        for k in (1..10).step_by(2) {
            assert_eq!(h.coeff(k), 0.0);
        }
    }

    #[test]
    fn hermite_orthogonality_low_orders() {
        // int H_m H_n e^{-x^2} dx = delta_mn 2^n n! sqrt(pi); Simpson on [-10, 10]
        let n_int = 20_000;
        let (a, b) = (-10.0, 10.0);
        let h = (b - a) / n_int as f64;
        for m in 0..=4u32 {
            for n in 0..=4u32 {
                let (pm, pn) = (hermite(m), hermite(n));
                let f = |x: f64| pm.eval(x) * pn.eval(x) * (-x * x).exp();
                let mut acc = f(a) + f(b);
                for i in 1..n_int {
                    let w = if i % 2 == 1 { 4.0 } else { 2.0 };
                    acc += w * f(a + i as f64 * h);
                }
                let integral = acc * h / 3.0;
                let norm = |k: u32| {
                    2f64.powi(k as i32)
                        * (1..=k).map(|i| i as f64).product::<f64>()
                        * std::f64::consts::PI.sqrt()
                };
                if m == n {
                    assert_relative_eq!(integral, norm(n), max_relative = 1e-10);
                } else {
                    assert!(integral.abs() < 1e-8 * (norm(m) * norm(n)).sqrt());
                }
            }
        }
    }

    #[test]
    fn double_factorials() {
        assert_eq!(double_factorial(0), 1.0);
        assert_eq!(double_factorial(1), 1.0);
        assert_eq!(double_factorial(2), 2.0);
        assert_eq!(double_factorial(5), 15.0);
        assert_eq!(double_factorial(7), 105.0);
        assert_eq!(double_factorial(9), 945.0);
    }

    #[test]
    fn bessel_k_closed_forms() {
        // k_0(s) = e^{-s}/s; k_1(1) = 2/e; k_2(2) = e^{-2} * 13/8
        assert_relative_eq!(
            mod_sph_bessel_k(0, 1.0).unwrap(),
            (-1f64).exp(),
            max_relative = 1e-14
        );
        assert_relative_eq!(
            mod_sph_bessel_k(1, 1.0).unwrap(),
            0.7357588823428847,
            max_relative = 1e-14
        );
        assert_relative_eq!(
            mod_sph_bessel_k(2, 2.0).unwrap(),
            (-2f64).exp() * 13.0 / 8.0,
            max_relative = 1e-14
        );
    }

    #[test]
    fn bessel_k_recursion() {
        // k_{l-1}(s) - k_{l+1}(s) = -(2l+1)/s * k_l(s)
        for l in 1..=5u32 {
            for &s in &[0.3, 1.0, 2.5, 7.0] {
                let lhs = mod_sph_bessel_k(l - 1, s).unwrap() - mod_sph_bessel_k(l + 1, s).unwrap();
                let rhs = -(2.0 * l as f64 + 1.0) / s * mod_sph_bessel_k(l, s).unwrap();
                assert_relative_eq!(lhs, rhs, max_relative = 1e-11);
            }
        }
    }

    #[test]
    fn bessel_k_rejects_nonpositive_s() {
        assert!(mod_sph_bessel_k(1, 0.0).is_err());
        assert!(mod_sph_bessel_k(1, -2.0).is_err());
    }

    #[test]
    fn bessel_k_sdomain_matches_pointwise() {
        for l in 0..=3u32 {
            let f = mod_sph_bessel_k_sdomain(l);
            for &s in &[0.4, 1.0, 3.0] {
                let direct = mod_sph_bessel_k(l, s).unwrap();
                let via_terms = f.eval_real(s).unwrap();
                assert_relative_eq!(via_terms, direct, max_relative = 1e-13);
            }
        }
    }
}
