//! Quantifying what the dropped boundary terms cost.
//!
//! Dropping `v(0)`, `v'(0)` from the transformed harmonic equation turns
//! the ground-state transform `1/s` into `G(s) = e^{-s^2/4}/s`, which has
//! an essential singularity at infinity and is the transform of nothing.
//! The truncated contour inverse of `G` does not converge anywhere as the
//! truncation width `gamma` grows; it blows up like `e^{gamma^2/4}` while
//! oscillating with wavelength `2 pi / gamma`. This module studies the
//! *rescaled* inverse
//!
//! ```text
//!   g(xi; gamma) = gamma^2 e^{-gamma^2/4} f_gamma(xi)
//! ```
//!
//! whose structure is universal: near the origin the oscillation peaks
//! plateau at `2/pi`, and in the scaling variable `w = xi/gamma` the peak
//! envelope collapses onto
//!
//! ```text
//!   A(w) = (2/pi) / sqrt(1 + 4 w^2)
//! ```
//!
//! independent of `gamma`. (Both follow from a boundary-layer reduction of
//! the contour integral: the `e^{(y^2-gamma^2)/4}` weight concentrates all
//! mass in a layer of width `~2/gamma` below `y = gamma`, leaving a damped
//! cosine divided by `1 - 2iw` up to `O(1/gamma^2)` corrections.)
//!
//! The module also exposes the formal moment sequence of the deviation
//! `(e^{-s^2/4} - 1)/s` in exact integer fractions, computed two
//! independent ways, as a cross-check that the moment series and the
//! closed form describe the same object.

use rayon::prelude::*;
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::transforms::bromwich_half_axis_rescaled;

/// Limit of the near-origin oscillation peaks of `g`: `2/pi`.
pub const PLATEAU_LIMIT: f64 = 2.0 / PI;

/// The universal peak envelope in the scaling variable `w = xi/gamma`.
pub fn envelope_model(w: f64) -> f64 {
    PLATEAU_LIMIT / (1.0 + 4.0 * w * w).sqrt()
}

/// The rescaled truncated inverse `g(xi; gamma)` of `e^{-s^2/4}/s`.
pub fn rescaled_inverse(xi: f64, gamma: f64, budget: usize) -> Result<f64> {
    let sample = bromwich_half_axis_rescaled(xi, gamma, budget)?;
    Ok(gamma * gamma * sample.mantissa)
}

/// A sampled oscillation profile with its two summary statistics.
#[derive(Debug, Clone, PartialEq)]
pub struct PathologyProfile {
    pub gamma: f64,
    pub xi: Vec<f64>,
    pub g: Vec<f64>,
    /// Mean refined height of the first few oscillation peaks of `|g|`
    /// (up to ten); tends to `2/pi` as `gamma` grows.
    pub plateau_estimate: f64,
    /// Twice the mean zero-crossing spacing; tends to `2 pi / gamma`.
    pub wavelength_estimate: f64,
}

/// Quadratic refinement of a peak from three uniform samples around it.
fn parabolic_peak(g0: f64, g1: f64, g2: f64) -> f64 {
    let denom = g2 - 2.0 * g1 + g0;
    if denom == 0.0 {
        return g1;
    }
    g1 - (g2 - g0) * (g2 - g0) / (8.0 * denom)
}

/// Sample `g(xi; gamma)` on a uniform grid from one step up to `xi_max`
/// and extract the plateau height and oscillation wavelength.
///
/// The step is `(2 pi / gamma) / samples_per_wavelength`. Preconditions:
/// `gamma` in `[10, 1000]` (the plateau asymptotics need a thin boundary
/// layer, and cost grows like `gamma^2`), at least 8 samples per
/// wavelength, and a grid long enough to hold two wavelengths.
pub fn profile(
    gamma: f64,
    xi_max: f64,
    samples_per_wavelength: u32,
    budget: usize,
) -> Result<PathologyProfile> {
    if !(10.0..=1000.0).contains(&gamma) {
        return Err(Error::DomainError(format!(
            "profile expects gamma in [10, 1000], got {gamma}"
        )));
    }
    if samples_per_wavelength < 8 {
        return Err(Error::DomainError(format!(
            "need at least 8 samples per wavelength to locate peaks, got \
             {samples_per_wavelength}"
        )));
    }
    let wavelength = 2.0 * PI / gamma;
    let dxi = wavelength / f64::from(samples_per_wavelength);
    if !(xi_max > 0.0) || !xi_max.is_finite() {
        return Err(Error::DomainError(format!(
            "xi_max must be positive and finite, got {xi_max}"
        )));
    }
    let count = (xi_max / dxi).floor() as usize;
    if count < 2 * samples_per_wavelength as usize {
        return Err(Error::DomainError(format!(
            "xi_max = {xi_max} holds fewer than two oscillation wavelengths \
             (2 pi / gamma = {wavelength:.3e})"
        )));
    }
    let xi: Vec<f64> = (1..=count).map(|i| i as f64 * dxi).collect();
    let g: Vec<f64> = xi
        .par_iter()
        .map(|&x| rescaled_inverse(x, gamma, budget))
        .collect::<Result<_>>()?;

    // peaks of |g|, refined quadratically, first ten averaged
    let mut peaks = Vec::new();
    for i in 1..g.len() - 1 {
        let (a, b, c) = (g[i - 1].abs(), g[i].abs(), g[i + 1].abs());
        if b > a && b >= c {
            peaks.push(parabolic_peak(a, b, c));
            if peaks.len() == 10 {
                break;
            }
        }
    }
    if peaks.is_empty() {
        return Err(Error::DomainError(
            "no oscillation peaks found on the sampling grid".into(),
        ));
    }
    let plateau_estimate = peaks.iter().sum::<f64>() / peaks.len() as f64;

    // zero crossings by linear interpolation; mean spacing telescopes
    let mut first_root = None;
    let mut last_root = 0.0;
    let mut roots = 0usize;
    for i in 0..g.len() - 1 {
        if g[i] == 0.0 || g[i] * g[i + 1] < 0.0 {
            let root = xi[i] + dxi * g[i] / (g[i] - g[i + 1]);
            if first_root.is_none() {
                first_root = Some(root);
            }
            last_root = root;
            roots += 1;
        }
    }
    if roots < 2 {
        return Err(Error::DomainError(
            "fewer than two zero crossings on the sampling grid".into(),
        ));
    }
    let spacing = (last_root - first_root.unwrap()) / (roots - 1) as f64;
    Ok(PathologyProfile {
        gamma,
        xi,
        g,
        plateau_estimate,
        wavelength_estimate: 2.0 * spacing,
    })
}

/// Peak envelope `A(w)` of `|g|` at each requested `w = xi/gamma`: the
/// refined maximum of `|g|` over a 1.5-wavelength window (49 samples)
/// centered on `w gamma`.
pub fn envelope_decay(gamma: f64, w_grid: &[f64], budget: usize) -> Result<Vec<f64>> {
    if !(10.0..=1000.0).contains(&gamma) {
        return Err(Error::DomainError(format!(
            "envelope_decay expects gamma in [10, 1000], got {gamma}"
        )));
    }
    let wavelength = 2.0 * PI / gamma;
    w_grid
        .par_iter()
        .map(|&w| {
            if !(w > 0.0) || !w.is_finite() {
                return Err(Error::DomainError(format!(
                    "envelope abscissa w must be positive and finite, got {w}"
                )));
            }
            let center = w * gamma;
            let lo = (center - 0.75 * wavelength).max(wavelength / 100.0);
            let step = 1.5 * wavelength / 48.0;
            let mut vals = [0.0f64; 49];
            for (j, v) in vals.iter_mut().enumerate() {
                *v = rescaled_inverse(lo + j as f64 * step, gamma, budget)?.abs();
            }
            let (mut arg, mut best) = (0, vals[0]);
            for (j, &v) in vals.iter().enumerate() {
                if v > best {
                    best = v;
                    arg = j;
                }
            }
            Ok(if arg > 0 && arg < 48 {
                parabolic_peak(vals[arg - 1], vals[arg], vals[arg + 1])
            } else {
                best
            })
        })
        .collect()
}

fn gcd(mut a: i128, mut b: i128) -> i128 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.max(1)
}

fn reduce(num: i128, den: i128) -> (i128, i128) {
    debug_assert!(den != 0);
    let g = gcd(num, den);
    let sign = if den < 0 { -1 } else { 1 };
    (sign * num / g, sign * den / g)
}

const MAX_DEVIATION_ORDER: usize = 33;

/// Formal moment `M_p` of the deviation `D(s) = (e^{-s^2/4} - 1)/s`, read
/// off its Taylor window by `M_p = (-1)^p p! [s^p] D(s)` and reduced to an
/// exact fraction: zero for even `p`, and for `p = 2k - 1`
///
/// ```text
///   M_p = (-1)^{k-1} (2k-1)!! / (2^{k+1} k)
/// ```
///
/// (No classical moment integral exists, because `D` is the transform of
/// nothing; the sequence is what the moment-series representation would
/// require, which is exactly why it is worth pinning down exactly.)
pub fn deviation_moment(p: usize) -> Result<(i128, i128)> {
    if p > MAX_DEVIATION_ORDER {
        return Err(Error::UnsupportedInput(format!(
            "deviation moments overflow exact i128 arithmetic past order \
             {MAX_DEVIATION_ORDER}, got {p}"
        )));
    }
    if p % 2 == 0 {
        return Ok((0, 1));
    }
    let k = (p + 1) / 2;
    let mut dfact: i128 = 1;
    for j in 1..=k {
        dfact *= (2 * j - 1) as i128;
    }
    let sign = if k % 2 == 1 { 1 } else { -1 };
    Ok(reduce(sign * dfact, (1i128 << (k + 1)) * k as i128))
}

/// The same moment by the other route: the exact rational Taylor
/// expansion of the Gaussian gives `[s^{2k-1}] D = 1/((-4)^k k!)`, hence
/// `M_p = -(2k-1)! / ((-4)^k k!)`. Must agree with [`deviation_moment`]
/// identically.
pub fn deviation_moment_from_series(p: usize) -> Result<(i128, i128)> {
    if p > MAX_DEVIATION_ORDER {
        return Err(Error::UnsupportedInput(format!(
            "deviation moments overflow exact i128 arithmetic past order \
             {MAX_DEVIATION_ORDER}, got {p}"
        )));
    }
    if p % 2 == 0 {
        return Ok((0, 1));
    }
    let k = (p + 1) / 2;
    let mut fact: i128 = 1; // (2k-1)!
    for j in 2..=(2 * k - 1) {
        fact *= j as i128;
    }
    let mut kfact: i128 = 1;
    for j in 2..=k {
        kfact *= j as i128;
    }
    let four_k: i128 = 1i128 << (2 * k); // 4^k
    let sign = if k % 2 == 1 { 1 } else { -1 }; // -1 / (-1)^k
    Ok(reduce(sign * fact, four_k * kfact))
}

/// f64 value of the exact fraction.
pub fn deviation_moment_f64(p: usize) -> Result<f64> {
    let (num, den) = deviation_moment(p)?;
    Ok(num as f64 / den as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sdomain::SDomainFn;
    use crate::transforms::DEFAULT_POINT_BUDGET;
    use approx::assert_relative_eq;

    const BUDGET: usize = DEFAULT_POINT_BUDGET;

    #[test]
    fn first_peak_of_the_reference_case() {
        // frozen reference: g(pi/200; 100), the first oscillation peak at
        // gamma = 100, computed independently with the same grid rule
        let g = rescaled_inverse(PI / 200.0, 100.0, BUDGET).unwrap();
        assert_relative_eq!(g, 0.6368749145512371, max_relative = 1e-9);
    }

    #[test]
    fn origin_is_removable_and_zero() {
        assert_eq!(rescaled_inverse(0.0, 100.0, BUDGET).unwrap(), 0.0);
    }

    #[test]
    fn profile_statistics_match_frozen_oracle() {
        let wavelength = 2.0 * PI / 50.0;
        let p = profile(50.0, 6.5 * wavelength, 16, BUDGET).unwrap();
        // frozen from an independent implementation of the same estimator
        assert_relative_eq!(p.plateau_estimate, 0.6375716, max_relative = 1e-5);
        assert_relative_eq!(
            p.wavelength_estimate / wavelength,
            1.000818,
            max_relative = 1e-5
        );
        // and the theory limits
        assert!((p.plateau_estimate - PLATEAU_LIMIT).abs() < 2e-3);
        assert!((p.wavelength_estimate / wavelength - 1.0).abs() < 0.01);
    }

    #[test]
    fn envelope_collapses_onto_the_model() {
        let ws = [0.25, 0.5, 1.0];
        let a = envelope_decay(50.0, &ws, BUDGET).unwrap();
        for (&w, &aw) in ws.iter().zip(&a) {
            assert!(
                (aw / envelope_model(w) - 1.0).abs() <= 5e-3,
                "w = {w}: envelope {aw} vs model {}",
                envelope_model(w)
            );
        }
        assert!(a[0] > a[1] && a[1] > a[2]);
    }

    #[test]
    fn guard_rails() {
        assert!(profile(5.0, 1.0, 16, BUDGET).is_err());
        assert!(profile(50.0, 1.0, 4, BUDGET).is_err());
        assert!(profile(50.0, 0.05, 16, BUDGET).is_err());
        assert!(matches!(
            profile(200.0, 0.5, 16, 100),
            Err(Error::BudgetExceeded { .. })
        ));
        assert!(envelope_decay(50.0, &[-1.0], BUDGET).is_err());
        assert!(envelope_decay(2000.0, &[0.5], BUDGET).is_err());
    }

    #[test]
    fn deviation_moments_low_orders() {
        assert_eq!(deviation_moment(0).unwrap(), (0, 1));
        assert_eq!(deviation_moment(1).unwrap(), (1, 4));
        assert_eq!(deviation_moment(2).unwrap(), (0, 1));
        assert_eq!(deviation_moment(3).unwrap(), (-3, 16));
        assert_eq!(deviation_moment(5).unwrap(), (5, 16));
    }

    #[test]
    fn both_moment_routes_agree_exactly() {
        for p in 0..=MAX_DEVIATION_ORDER {
            assert_eq!(
                deviation_moment(p).unwrap(),
                deviation_moment_from_series(p).unwrap(),
                "order {p}"
            );
        }
        assert!(deviation_moment(MAX_DEVIATION_ORDER + 1).is_err());
    }

    #[test]
    fn moments_match_the_taylor_window_of_the_deviation() {
        // D(s) = e^{-s^2/4}/s - 1/s expanded symbolically must satisfy
        // [s^p] D = (-1)^p M_p / p!
        let d = SDomainFn::term(1.0, &[(0.0, -1.0)], [0.0, 0.0, -0.25])
            .sub(&SDomainFn::term(1.0, &[(0.0, -1.0)], [0.0; 3]));
        let taylor = d.laurent_expand(15).unwrap();
        let mut fact = 1.0;
        for p in 0..=15usize {
            if p > 0 {
                fact *= p as f64;
            }
            let sign = if p % 2 == 0 { 1.0 } else { -1.0 };
            let from_moment = sign * deviation_moment_f64(p).unwrap() / fact;
            let c = taylor.coeff(p as i32);
            assert!(
                (c - from_moment).abs() <= 1e-12 * (1.0 + c.abs()),
                "p = {p}: taylor {c} vs moment route {from_moment}"
            );
        }
    }
}
