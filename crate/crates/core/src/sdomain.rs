//! Closed symbolic family of s-domain functions.
//!
//! Everything the transform pipeline produces lives in one shape:
//!
//! ```text
//!   f(s) = sum_t  c_t * prod_i (s - a_i)^{p_i} * exp(q_t(s)),     deg q <= 2
//! ```
//!
//! with real pole locations `a_i`, real exponents `p_i` (negative, positive,
//! or fractional) and a real quadratic `q_t`. The family is closed under
//! addition, scaling, multiplication by `(s - a)^p`, and differentiation,
//! which is all the solver needs: transformed bound states are proper
//! rationals, while the transforms obtained by dropping boundary terms pick
//! up Gaussian factors (`e^{-s^2/4}`), decaying exponentials (`e^{-s}`), or
//! fractional powers `(s - 1/2)^{2c-1}`.
//!
//! Fractional powers are kept on their real branch: they evaluate only for
//! real `s` to the right of the branch point.

use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Tolerance for structural comparisons: pole locations, exponents, and
/// coefficient matching are considered equal within this.
pub const COMPARE_TOL: f64 = 1e-12;

/// Terms whose coefficient magnitude falls below this after combination are
/// dropped from the normal form.
pub const DROP_TOL: f64 = 1e-14;

pub(crate) fn as_integer(p: f64) -> Option<i32> {
    let r = p.round();
    if (p - r).abs() <= COMPARE_TOL && r.abs() < i32::MAX as f64 {
        Some(r as i32)
    } else {
        None
    }
}

/// One factor `(s - location)^exponent`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Factor {
    pub location: f64,
    pub exponent: f64,
}

impl Factor {
    pub fn new(location: f64, exponent: f64) -> Self {
        Factor { location, exponent }
    }
}

/// A single product term `coeff * prod (s - a_i)^{p_i} * e^{q(s)}` with
/// `q(s) = q[0] + q[1] s + q[2] s^2`.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneralTerm {
    coeff: f64,
    factors: Vec<Factor>,
    exp_poly: [f64; 3],
}

impl GeneralTerm {
    /// Build a term in normal form: factors at the same location are merged
    /// (exponents added), zero exponents removed, factors sorted by location.
    pub fn new(coeff: f64, factors: Vec<Factor>, exp_poly: [f64; 3]) -> Self {
        let mut merged: Vec<Factor> = Vec::with_capacity(factors.len());
        for f in factors {
            match merged
                .iter_mut()
                .find(|g| (g.location - f.location).abs() <= COMPARE_TOL)
            {
                Some(g) => g.exponent += f.exponent,
                None => merged.push(f),
            }
        }
        merged.retain(|f| f.exponent.abs() > COMPARE_TOL);
        merged.sort_by(|a, b| a.location.total_cmp(&b.location));
        GeneralTerm {
            coeff,
            factors: merged,
            exp_poly,
        }
    }

    /// A constant term.
    pub fn constant(c: f64) -> Self {
        GeneralTerm::new(c, vec![], [0.0; 3])
    }

    pub fn coeff(&self) -> f64 {
        self.coeff
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn exp_poly(&self) -> [f64; 3] {
        self.exp_poly
    }

    pub fn scaled(&self, k: f64) -> Self {
        let mut t = self.clone();
        t.coeff *= k;
        t
    }

    /// Multiply by `(s - location)^exponent`, merging into the factor list.
    pub fn mul_factor(&self, location: f64, exponent: f64) -> Self {
        let mut factors = self.factors.clone();
        factors.push(Factor::new(location, exponent));
        GeneralTerm::new(self.coeff, factors, self.exp_poly)
    }

    fn has_exp_part(&self) -> bool {
        self.exp_poly.iter().any(|q| q.abs() > COMPARE_TOL)
    }

    /// True when the term is a ratio of polynomials (integer exponents, no
    /// exponential part).
    pub fn is_rational(&self) -> bool {
        !self.has_exp_part() && self.factors.iter().all(|f| as_integer(f.exponent).is_some())
    }

    /// True when the term is a polynomial in `s`.
    pub fn is_polynomial(&self) -> bool {
        !self.has_exp_part()
            && self
                .factors
                .iter()
                .all(|f| matches!(as_integer(f.exponent), Some(p) if p >= 0))
    }

    /// Sum of all factor exponents (degree of numerator minus denominator).
    pub fn net_degree(&self) -> f64 {
        self.factors.iter().map(|f| f.exponent).sum()
    }

    /// Evaluate at complex `s`. Fractional exponents restrict `s` to the
    /// real half-line right of their branch point.
    pub fn eval(&self, s: Complex64) -> Result<Complex64> {
        let mut acc = Complex64::new(self.coeff, 0.0);
        for f in &self.factors {
            let z = s - f.location;
            match as_integer(f.exponent) {
                Some(p) => {
                    if p < 0 && z.norm() <= COMPARE_TOL {
                        return Err(Error::PoleEvaluation {
                            s: s.re,
                            pole: f.location,
                        });
                    }
                    acc *= z.powi(p);
                }
                None => {
                    if s.im != 0.0 || s.re <= f.location {
                        return Err(Error::BranchDomain {
                            branch_point: f.location,
                            exponent: f.exponent,
                        });
                    }
                    acc *= (s.re - f.location).powf(f.exponent);
                }
            }
        }
        if self.has_exp_part() {
            let q = Complex64::new(self.exp_poly[0], 0.0)
                + self.exp_poly[1] * s
                + self.exp_poly[2] * s * s;
            acc *= q.exp();
        }
        Ok(acc)
    }

    /// Exact derivative; product rule over the factors plus the chain rule
    /// on the exponential, expressed back in the same family.
    fn differentiate(&self) -> Vec<GeneralTerm> {
        let mut out = Vec::new();
        for (i, f) in self.factors.iter().enumerate() {
            let mut factors = self.factors.clone();
            factors[i].exponent -= 1.0;
            out.push(GeneralTerm::new(
                self.coeff * f.exponent,
                factors,
                self.exp_poly,
            ));
        }
        let q1 = self.exp_poly[1];
        let q2 = self.exp_poly[2];
        if q1.abs() > 0.0 {
            out.push(self.scaled(q1));
        }
        if q2.abs() > 0.0 {
            out.push(self.mul_factor(0.0, 1.0).scaled(2.0 * q2));
        }
        out
    }

    fn structure_matches(&self, other: &Self) -> bool {
        if self.factors.len() != other.factors.len() {
            return false;
        }
        let exp_eq = self
            .exp_poly
            .iter()
            .zip(other.exp_poly.iter())
            .all(|(a, b)| (a - b).abs() <= COMPARE_TOL);
        exp_eq
            && self.factors.iter().zip(other.factors.iter()).all(|(a, b)| {
                (a.location - b.location).abs() <= COMPARE_TOL
                    && (a.exponent - b.exponent).abs() <= COMPARE_TOL
            })
    }
}

impl fmt::Display for GeneralTerm {
    fn fmt(&self, w: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(w, "{}", self.coeff)?;
        for f in &self.factors {
            if f.location == 0.0 {
                write!(w, " s^{}", f.exponent)?;
            } else if f.location < 0.0 {
                write!(w, " (s+{})^{}", -f.location, f.exponent)?;
            } else {
                write!(w, " (s-{})^{}", f.location, f.exponent)?;
            }
        }
        if self.has_exp_part() {
            let [q0, q1, q2] = self.exp_poly;
            write!(w, " exp(")?;
            let mut first = true;
            for (c, p) in [(q0, ""), (q1, " s"), (q2, " s^2")] {
                if c != 0.0 {
                    if !first {
                        write!(w, " + ")?;
                    }
                    write!(w, "{c}{p}")?;
                    first = false;
                }
            }
            write!(w, ")")?;
        }
        Ok(())
    }
}

/// A finite sum of [`GeneralTerm`]s in normal form (structurally equal terms
/// merged, negligible coefficients dropped).
#[derive(Debug, Clone, PartialEq, Default)]
pub struct SDomainFn {
    terms: Vec<GeneralTerm>,
}

impl SDomainFn {
    pub fn new(terms: Vec<GeneralTerm>) -> Self {
        let mut merged: Vec<GeneralTerm> = Vec::with_capacity(terms.len());
        for t in terms {
            match merged.iter_mut().find(|u| u.structure_matches(&t)) {
                Some(u) => u.coeff += t.coeff,
                None => merged.push(t),
            }
        }
        merged.retain(|t| t.coeff.abs() >= DROP_TOL);
        SDomainFn { terms: merged }
    }

    pub fn zero() -> Self {
        SDomainFn { terms: vec![] }
    }

    pub fn constant(c: f64) -> Self {
        SDomainFn::new(vec![GeneralTerm::constant(c)])
    }

    /// Single-term builder; factors given as `(location, exponent)` pairs.
    pub fn term(coeff: f64, factors: &[(f64, f64)], exp_poly: [f64; 3]) -> Self {
        SDomainFn::new(vec![GeneralTerm::new(
            coeff,
            factors.iter().map(|&(a, p)| Factor::new(a, p)).collect(),
            exp_poly,
        )])
    }

    /// Polynomial `sum_k c[k] s^k` as an s-domain function.
    pub fn poly_in_s(c: &[f64]) -> Self {
        let terms = c
            .iter()
            .enumerate()
            .filter(|(_, ck)| **ck != 0.0)
            .map(|(k, &ck)| {
                if k == 0 {
                    GeneralTerm::constant(ck)
                } else {
                    GeneralTerm::new(ck, vec![Factor::new(0.0, k as f64)], [0.0; 3])
                }
            })
            .collect();
        SDomainFn::new(terms)
    }

    pub fn terms(&self) -> &[GeneralTerm] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        SDomainFn::new(terms)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scaled(-1.0))
    }

    pub fn scaled(&self, k: f64) -> Self {
        SDomainFn::new(self.terms.iter().map(|t| t.scaled(k)).collect())
    }

    /// Multiply every term by `(s - location)^exponent`.
    pub fn mul_factor(&self, location: f64, exponent: f64) -> Self {
        SDomainFn::new(
            self.terms
                .iter()
                .map(|t| t.mul_factor(location, exponent))
                .collect(),
        )
    }

    /// Exact derivative within the family.
    pub fn differentiate(&self) -> Self {
        let mut out = Vec::new();
        for t in &self.terms {
            out.extend(t.differentiate());
        }
        SDomainFn::new(out)
    }

    pub fn evaluate(&self, s: Complex64) -> Result<Complex64> {
        let mut acc = Complex64::new(0.0, 0.0);
        for t in &self.terms {
            acc += t.eval(s)?;
        }
        Ok(acc)
    }

    /// Evaluate at real `s` (the imaginary part of the result is zero by
    /// construction for real input).
    pub fn eval_real(&self, s: f64) -> Result<f64> {
        Ok(self.evaluate(Complex64::new(s, 0.0))?.re)
    }

    /// Locations where the function is singular or branches: factor
    /// locations carrying a negative or fractional exponent.
    pub fn singular_points(&self) -> Vec<f64> {
        let mut pts: Vec<f64> = Vec::new();
        for t in &self.terms {
            for f in &t.factors {
                let singular = match as_integer(f.exponent) {
                    Some(p) => p < 0,
                    None => true,
                };
                if singular && !pts.iter().any(|p| (p - f.location).abs() <= COMPARE_TOL) {
                    pts.push(f.location);
                }
            }
        }
        pts.sort_by(f64::total_cmp);
        pts
    }

    /// Poles of the rational part as `(location, max multiplicity)`.
    pub fn rational_poles(&self) -> Vec<(f64, u32)> {
        let mut poles: Vec<(f64, u32)> = Vec::new();
        for t in &self.terms {
            for f in &t.factors {
                if let Some(p) = as_integer(f.exponent) {
                    if p < 0 {
                        let m = (-p) as u32;
                        match poles
                            .iter_mut()
                            .find(|(a, _)| (*a - f.location).abs() <= COMPARE_TOL)
                        {
                            Some((_, mm)) => *mm = (*mm).max(m),
                            None => poles.push((f.location, m)),
                        }
                    }
                }
            }
        }
        poles.sort_by(|a, b| a.0.total_cmp(&b.0));
        poles
    }

    /// Structural comparison: same terms up to `tol` on coefficients,
    /// locations, and exponents.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        if self.terms.len() != other.terms.len() {
            return false;
        }
        let mut used = vec![false; other.terms.len()];
        'outer: for t in &self.terms {
            for (j, u) in other.terms.iter().enumerate() {
                if !used[j] && t.structure_matches(u) && (t.coeff - u.coeff).abs() <= tol {
                    used[j] = true;
                    continue 'outer;
                }
            }
            return false;
        }
        true
    }

    /// Laurent expansion around `s = 0`, keeping powers up to `order`.
    ///
    /// Supported shapes: integer powers of `s` itself (they shift the
    /// window), integer powers of `(s - a)` with `a != 0`, fractional powers
    /// with `a < 0` (real-analytic at 0), and the quadratic exponential.
    /// A fractional power with `a >= 0` has no real Laurent expansion at 0.
    pub fn laurent_expand(&self, order: i32) -> Result<LaurentSeries> {
        let mut min_power = 0i32;
        let mut window: std::collections::BTreeMap<i32, f64> = std::collections::BTreeMap::new();
        for t in &self.terms {
            let mut shift = 0i32;
            let mut regular: Vec<f64> = vec![1.0];
            // factor expansions; `regular` holds a Taylor series around 0
            for f in &t.factors {
                if f.location.abs() <= COMPARE_TOL {
                    match as_integer(f.exponent) {
                        Some(p) => shift += p,
                        None => {
                            return Err(Error::NotExpandable {
                                reason: format!(
                                    "branch point at s = 0 with fractional exponent {}",
                                    f.exponent
                                ),
                            })
                        }
                    }
                } else if as_integer(f.exponent).is_none() && f.location > 0.0 {
                    return Err(Error::NotExpandable {
                        reason: format!(
                            "(s - {})^{} branches between 0 and the expansion point",
                            f.location, f.exponent
                        ),
                    });
                }
            }
            let len = (order - shift + 1).max(0) as usize;
            if len == 0 {
                // the term only contributes above the requested order
                min_power = min_power.min(shift.min(order + 1));
                continue;
            }
            for f in &t.factors {
                if f.location.abs() <= COMPARE_TOL {
                    continue;
                }
                regular = mul_series(&regular, &binomial_series(f.location, f.exponent, len), len);
            }
            if t.has_exp_part() {
                regular = mul_series(&regular, &exp_series(t.exp_poly, len), len);
            }
            min_power = min_power.min(shift);
            for (k, c) in regular.iter().enumerate() {
                let p = shift + k as i32;
                if p <= order && *c != 0.0 {
                    *window.entry(p).or_insert(0.0) += t.coeff * c;
                }
            }
        }
        let lo = min_power.min(0);
        let coeffs = (lo..=order).map(|p| window.get(&p).copied().unwrap_or(0.0)).collect();
        Ok(LaurentSeries::new(lo, coeffs))
    }

    /// Exact partial-fraction decomposition of a purely rational function
    /// whose factors all carry negative integer exponents.
    ///
    /// For a pole `a` of maximal multiplicity `m`, the coefficient of
    /// `(s - a)^{-j}` is the `(m - j)`-th derivative of `(s - a)^m f(s)` at
    /// `a`, divided by `(m - j)!` — computed symbolically, so the only
    /// rounding is in the final evaluations.
    pub fn partial_fractions(&self) -> Result<Vec<PartialFraction>> {
        for t in &self.terms {
            if t.has_exp_part() {
                return Err(Error::UnsupportedInput(
                    "partial fractions need a purely rational function (exponential part present)"
                        .into(),
                ));
            }
            for f in &t.factors {
                if as_integer(f.exponent).is_none() {
                    return Err(Error::UnsupportedInput(format!(
                        "partial fractions need integer exponents, got (s - {})^{}",
                        f.location, f.exponent
                    )));
                }
            }
            if t.net_degree() > -1.0 + COMPARE_TOL {
                return Err(Error::UnsupportedInput(format!(
                    "partial fractions need proper rational terms, got net degree {}",
                    t.net_degree()
                )));
            }
        }
        let mut out = Vec::new();
        for (a, m) in self.rational_poles() {
            let shifted = self.mul_factor(a, m as f64);
            let mut deriv = shifted;
            let mut fact = 1.0;
            for i in 0..m {
                // i-th derivative gives the coefficient of (s-a)^{-(m-i)}
                if i > 0 {
                    deriv = deriv.differentiate();
                    fact *= i as f64;
                }
                let c = deriv.eval_real(a)? / fact;
                if c.abs() >= DROP_TOL {
                    out.push(PartialFraction {
                        pole: a,
                        order: m - i,
                        coeff: c,
                    });
                }
            }
        }
        Ok(out)
    }
}

impl fmt::Display for SDomainFn {
    fn fmt(&self, w: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(w, "0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(w, " + ")?;
            }
            write!(w, "{t}")?;
        }
        Ok(())
    }
}

/// One component `coeff / (s - pole)^order` of a partial-fraction form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PartialFraction {
    pub pole: f64,
    pub order: u32,
    pub coeff: f64,
}

impl PartialFraction {
    pub fn to_sdomain(&self) -> SDomainFn {
        SDomainFn::term(self.coeff, &[(self.pole, -(self.order as f64))], [0.0; 3])
    }
}

/// Recombine a partial-fraction list into a single s-domain function.
pub fn recombine(parts: &[PartialFraction]) -> SDomainFn {
    parts
        .iter()
        .fold(SDomainFn::zero(), |acc, p| acc.add(&p.to_sdomain()))
}

/// Truncated Laurent series around `s = 0`: coefficients of
/// `s^min_power ..= s^max_power`, stored densely.
///
/// The same container also holds expansions "at infinity" such as the
/// inverse-power series `sum_k V_k s^{-(k+1)}` produced by the oscillator
/// recurrence; those store only negative powers.
#[derive(Debug, Clone, PartialEq)]
pub struct LaurentSeries {
    min_power: i32,
    coeffs: Vec<f64>,
}

impl LaurentSeries {
    pub fn new(min_power: i32, coeffs: Vec<f64>) -> Self {
        LaurentSeries { min_power, coeffs }
    }

    pub fn min_power(&self) -> i32 {
        self.min_power
    }

    pub fn max_power(&self) -> i32 {
        self.min_power + self.coeffs.len() as i32 - 1
    }

    /// Coefficient of `s^power`; zero outside the stored window.
    pub fn coeff(&self, power: i32) -> f64 {
        let idx = power - self.min_power;
        if idx < 0 {
            return 0.0;
        }
        self.coeffs.get(idx as usize).copied().unwrap_or(0.0)
    }

    /// Coefficient `V_k` in the inverse-power representation
    /// `sum_k V_k s^{-(k+1)}`.
    pub fn inv_power_coeff(&self, k: usize) -> f64 {
        self.coeff(-(k as i32) - 1)
    }

    pub fn iter_powers(&self) -> impl Iterator<Item = (i32, f64)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, &c)| (self.min_power + i as i32, c))
    }

    /// Reinterpret the stored window as an exact s-domain function
    /// `sum_p c_p s^p`, one term per stored power.
    pub fn to_sdomain(&self) -> SDomainFn {
        let terms = self
            .iter_powers()
            .filter(|(_, c)| *c != 0.0)
            .map(|(p, c)| {
                if p == 0 {
                    GeneralTerm::constant(c)
                } else {
                    GeneralTerm::new(c, vec![Factor::new(0.0, p as f64)], [0.0; 3])
                }
            })
            .collect();
        SDomainFn::new(terms)
    }

    /// Evaluate the truncated series at real `s != 0`.
    pub fn eval(&self, s: f64) -> f64 {
        self.iter_powers().map(|(p, c)| c * s.powi(p)).sum()
    }
}

/// Taylor series of `(s - a)^p` around 0 for `a != 0`, length `len`.
/// Uses the generalized binomial series `(b + s)^p = b^p sum C(p,k)(s/b)^k`
/// with `b = -a`; for fractional `p` the base must be positive (`a < 0`).
fn binomial_series(a: f64, p: f64, len: usize) -> Vec<f64> {
    let b = -a;
    let mut out = Vec::with_capacity(len);
    // running C(p, k) * b^{p-k}
    let mut c = match as_integer(p) {
        Some(ip) => b.powi(ip),
        None => b.powf(p),
    };
    for k in 0..len {
        out.push(c);
        c *= (p - k as f64) / ((k as f64 + 1.0) * b);
    }
    out
}

/// Taylor series of `exp(q0 + q1 s + q2 s^2)` around 0, length `len`.
fn exp_series(q: [f64; 3], len: usize) -> Vec<f64> {
    let base = {
        let mut v = vec![0.0; len.min(3).max(1)];
        if len > 1 {
            v[1] = q[1];
        }
        if len > 2 {
            v[2] = q[2];
        }
        v
    };
    let mut acc = vec![0.0; len];
    if len > 0 {
        acc[0] = 1.0;
    }
    let mut power = vec![0.0; len];
    if len > 0 {
        power[0] = 1.0;
    }
    let mut fact = 1.0;
    for m in 1..len {
        power = mul_series(&power, &base, len);
        fact *= m as f64;
        if power.iter().all(|&x| x == 0.0) {
            break;
        }
        for (acc_k, p_k) in acc.iter_mut().zip(power.iter()) {
            *acc_k += p_k / fact;
        }
    }
    let scale = q[0].exp();
    if scale != 1.0 {
        for x in &mut acc {
            *x *= scale;
        }
    }
    acc
}

fn mul_series(a: &[f64], b: &[f64], len: usize) -> Vec<f64> {
    let mut out = vec![0.0; len];
    for (i, &ai) in a.iter().enumerate().take(len) {
        if ai == 0.0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            if i + j >= len {
                break;
            }
            out[i + j] += ai * bj;
        }
    }
    out
}
