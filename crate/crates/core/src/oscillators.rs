//! The three solvable potentials and their transform-side structure.
//!
//! Each oscillator's stationary Schrodinger equation is mapped to a
//! dimensionless coordinate `xi` and the wavefunction is peeled as
//! `psi = (asymptotic factor) * v(xi)`:
//!
//! | potential        | coordinate            | peeling                     |
//! |------------------|-----------------------|-----------------------------|
//! | harmonic         | `xi = sqrt(m w/hb) x` | `psi = e^{-xi^2/2} v`       |
//! | Morse            | `xi = 2c e^{-a x}`    | `psi = xi^{c-n-1/2} v`      |
//! | Poschl-Teller    | `xi = tanh(a x)`      | `psi = (1-xi^2)^{mu/2} v`   |
//!
//! The factor `v` then satisfies a linear ODE in `xi` whose Laplace
//! transform is *first order* (harmonic, Morse) or second order
//! (Poschl-Teller) in `s`, with an inhomogeneity proportional to the
//! boundary data `v(0)`, `v'(0)`:
//!
//! ```text
//!   harmonic:  2s V' + (s^2 + 2nu + 2) V - v0 s - v0' = 0
//!   Morse:     (1/4 - s^2) V' + [c + 2(c-n-1) s] V - [2(c-n) - 1] v0 = 0
//!   P-T:       -s^2 V'' + 2(mu-1) s V' + [(l+mu)(l+1-mu) + s^2] V
//!                - v0 s - v0' = 0
//! ```
//!
//! Keeping the boundary terms, the bound solutions are proper rational
//! functions and residue inversion returns the textbook eigenfunctions.
//! Dropping them leaves homogeneous solutions with an essential
//! singularity (`e^{-s^2/4}`), a branch point (`(s-1/2)^{2c-1}`), or an
//! exponential tail (`s^mu k_l(s)`), none of which is the transform of
//! any function; that failure is quantified in [`crate::pathology`].

use std::fmt;

use crate::error::{Error, Result};
use crate::sdomain::{as_integer, LaurentSeries, SDomainFn};
use crate::specfun;
use crate::transforms::{forward_laplace, inverse_by_residues, PolyExp};

/// Scale constants of the physical problem. `omega` only matters for the
/// harmonic well, `alpha` only for the exponential ones.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalParams {
    pub mass: f64,
    pub omega: f64,
    pub alpha: f64,
    pub hbar: f64,
}

impl Default for PhysicalParams {
    fn default() -> Self {
        PhysicalParams {
            mass: 1.0,
            omega: 1.0,
            alpha: 1.0,
            hbar: 1.0,
        }
    }
}

impl PhysicalParams {
    fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("mass", self.mass),
            ("omega", self.omega),
            ("alpha", self.alpha),
            ("hbar", self.hbar),
        ] {
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::DomainError(format!(
                    "{name} must be positive and finite, got {v}"
                )));
            }
        }
        Ok(())
    }
}

/// Which potential, with its dimensionless strength.
///
/// For Morse the strength is `c = sqrt(2 m A)/(alpha hbar)`; for
/// Poschl-Teller it is `l = (sqrt(1 + 8 m A/(alpha hbar)^2) - 1)/2`, both
/// fixed by the well depth `A`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum OscKind {
    Harmonic,
    Morse { c: f64 },
    PoschlTeller { ell: f64 },
}

/// Number of bound states.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Spectrum {
    Unbounded,
    Finite { count: u32 },
}

/// A potential plus its physical scales.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Oscillator {
    kind: OscKind,
    params: PhysicalParams,
}

impl fmt::Display for Oscillator {
    fn fmt(&self, w: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            OscKind::Harmonic => write!(w, "harmonic"),
            OscKind::Morse { c } => write!(w, "Morse (c = {c})"),
            OscKind::PoschlTeller { ell } => write!(w, "Poschl-Teller (l = {ell})"),
        }
    }
}

/// One bound state: quantum number, energies, the factor `v`, and its
/// transform together with the boundary data that fixed it.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundState {
    pub n: u32,
    /// The parameter entering the s-domain equation: `nu` (harmonic),
    /// `n` (Morse), `mu = l - n` (Poschl-Teller).
    pub energy_param: f64,
    /// Energy in natural units: `n + 1/2` in `hbar omega`, or the
    /// (negative) binding energy in `alpha^2 hbar^2 / 2m`.
    pub energy_natural: f64,
    pub v: PolyExp,
    pub transform: SDomainFn,
    pub v0: f64,
    pub v0_prime: f64,
}

/// Coefficients of the transformed equation
/// `c2(s) V'' + c1(s) V' + c0(s) V + b0(s) v(0) + b1(s) v'(0) = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct SOdeSpec {
    pub second: SDomainFn,
    pub first: SDomainFn,
    pub zeroth: SDomainFn,
    /// Multiplies `v(0)`.
    pub boundary_value: SDomainFn,
    /// Multiplies `v'(0)`.
    pub boundary_slope: SDomainFn,
}

impl SOdeSpec {
    /// Left-hand side of the equation at real `s`, for a candidate
    /// transform and boundary data. Zero (to rounding) exactly when the
    /// candidate solves the equation with that data.
    pub fn residual_at(
        &self,
        transform: &SDomainFn,
        v0: f64,
        v0_prime: f64,
        s: f64,
    ) -> Result<f64> {
        let d1 = transform.differentiate();
        let d2 = d1.differentiate();
        Ok(self.second.eval_real(s)? * d2.eval_real(s)?
            + self.first.eval_real(s)? * d1.eval_real(s)?
            + self.zeroth.eval_real(s)? * transform.eval_real(s)?
            + self.boundary_value.eval_real(s)? * v0
            + self.boundary_slope.eval_real(s)? * v0_prime)
    }
}

impl Oscillator {
    pub fn harmonic() -> Self {
        Oscillator {
            kind: OscKind::Harmonic,
            params: PhysicalParams::default(),
        }
    }

    pub fn harmonic_with(params: PhysicalParams) -> Result<Self> {
        params.validate()?;
        Ok(Oscillator {
            kind: OscKind::Harmonic,
            params,
        })
    }

    pub fn morse(c: f64) -> Result<Self> {
        Oscillator::morse_with(c, PhysicalParams::default())
    }

    pub fn morse_with(c: f64, params: PhysicalParams) -> Result<Self> {
        params.validate()?;
        if !(c > 0.0) || !c.is_finite() {
            return Err(Error::DomainError(format!(
                "Morse strength c must be positive and finite, got {c}"
            )));
        }
        Ok(Oscillator {
            kind: OscKind::Morse { c },
            params,
        })
    }

    /// Morse well of depth `A`: `c = sqrt(2 m A)/(alpha hbar)`.
    pub fn morse_from_depth(depth: f64, params: PhysicalParams) -> Result<Self> {
        params.validate()?;
        if !(depth > 0.0) || !depth.is_finite() {
            return Err(Error::DomainError(format!(
                "well depth must be positive and finite, got {depth}"
            )));
        }
        let c = (2.0 * params.mass * depth).sqrt() / (params.alpha * params.hbar);
        Oscillator::morse_with(c, params)
    }

    pub fn poschl_teller(ell: f64) -> Result<Self> {
        Oscillator::poschl_teller_with(ell, PhysicalParams::default())
    }

    pub fn poschl_teller_with(ell: f64, params: PhysicalParams) -> Result<Self> {
        params.validate()?;
        if !(ell > 0.0) || !ell.is_finite() {
            return Err(Error::DomainError(format!(
                "Poschl-Teller strength l must be positive and finite, got {ell}"
            )));
        }
        Ok(Oscillator {
            kind: OscKind::PoschlTeller { ell },
            params,
        })
    }

    /// Poschl-Teller well of depth `A`:
    /// `l = (sqrt(1 + 8 m A/(alpha hbar)^2) - 1)/2`.
    pub fn poschl_teller_from_depth(depth: f64, params: PhysicalParams) -> Result<Self> {
        params.validate()?;
        if !(depth > 0.0) || !depth.is_finite() {
            return Err(Error::DomainError(format!(
                "well depth must be positive and finite, got {depth}"
            )));
        }
        let q = params.alpha * params.hbar;
        let ell = 0.5 * ((1.0 + 8.0 * params.mass * depth / (q * q)).sqrt() - 1.0);
        Oscillator::poschl_teller_with(ell, params)
    }

    pub fn kind(&self) -> OscKind {
        self.kind
    }

    pub fn params(&self) -> PhysicalParams {
        self.params
    }

    /// The unit all natural energies are quoted in: `hbar omega` for the
    /// harmonic well, `alpha^2 hbar^2 / 2m` for the exponential ones.
    pub fn energy_unit(&self) -> f64 {
        let p = self.params;
        match self.kind {
            OscKind::Harmonic => p.hbar * p.omega,
            _ => p.alpha * p.alpha * p.hbar * p.hbar / (2.0 * p.mass),
        }
    }

    /// Map physical position to the dimensionless coordinate.
    pub fn xi_from_x(&self, x: f64) -> f64 {
        let p = self.params;
        match self.kind {
            OscKind::Harmonic => (p.mass * p.omega / p.hbar).sqrt() * x,
            OscKind::Morse { c } => 2.0 * c * (-p.alpha * x).exp(),
            OscKind::PoschlTeller { .. } => (p.alpha * x).tanh(),
        }
    }

    /// Inverse coordinate map; errors where the coordinate has no
    /// preimage (`xi <= 0` for Morse, `|xi| >= 1` for Poschl-Teller).
    pub fn x_from_xi(&self, xi: f64) -> Result<f64> {
        let p = self.params;
        match self.kind {
            OscKind::Harmonic => Ok(xi / (p.mass * p.omega / p.hbar).sqrt()),
            OscKind::Morse { c } => {
                if xi <= 0.0 {
                    return Err(Error::DomainError(format!(
                        "Morse coordinate must satisfy xi > 0, got {xi}"
                    )));
                }
                Ok(-(xi / (2.0 * c)).ln() / p.alpha)
            }
            OscKind::PoschlTeller { .. } => {
                if xi.abs() >= 1.0 {
                    return Err(Error::DomainError(format!(
                        "Poschl-Teller coordinate must satisfy |xi| < 1, got {xi}"
                    )));
                }
                Ok(xi.atanh() / p.alpha)
            }
        }
    }

    pub fn spectrum(&self) -> Spectrum {
        match self.kind {
            OscKind::Harmonic => Spectrum::Unbounded,
            // bound states need n < c - 1/2 (binding energy strictly
            // negative), so the count is the number of such integers
            OscKind::Morse { c } => Spectrum::Finite {
                count: (c - 0.5).ceil().max(0.0) as u32,
            },
            // here the condition is n < l
            OscKind::PoschlTeller { ell } => Spectrum::Finite {
                count: ell.ceil().max(0.0) as u32,
            },
        }
    }

    /// Check that `n` indexes a bound state.
    pub fn quantize(&self, n: u32) -> Result<()> {
        match self.spectrum() {
            Spectrum::Unbounded => Ok(()),
            Spectrum::Finite { count: 0 } => Err(Error::NoBoundStates),
            Spectrum::Finite { count } if n < count => Ok(()),
            Spectrum::Finite { count } => Err(Error::InvalidQuantumNumber {
                n,
                detail: format!("this well binds only n = 0..{}", count - 1),
            }),
        }
    }

    /// The parameter that enters the transformed equation: `nu = n`
    /// (harmonic), `n` (Morse), `mu = l - n` (Poschl-Teller).
    pub fn energy_param(&self, n: u32) -> Result<f64> {
        self.quantize(n)?;
        Ok(match self.kind {
            OscKind::Harmonic | OscKind::Morse { .. } => f64::from(n),
            OscKind::PoschlTeller { ell } => ell - f64::from(n),
        })
    }

    /// Energy in natural units ([`Self::energy_unit`]): `n + 1/2` for the
    /// harmonic well, `-(c - 1/2 - n)^2` for Morse, `-(l - n)^2` for
    /// Poschl-Teller.
    pub fn energy_natural(&self, n: u32) -> Result<f64> {
        self.quantize(n)?;
        Ok(match self.kind {
            OscKind::Harmonic => f64::from(n) + 0.5,
            OscKind::Morse { c } => {
                let k = c - 0.5 - f64::from(n);
                -k * k
            }
            OscKind::PoschlTeller { ell } => {
                let mu = ell - f64::from(n);
                -mu * mu
            }
        })
    }

    pub fn energy_physical(&self, n: u32) -> Result<f64> {
        Ok(self.energy_natural(n)? * self.energy_unit())
    }

    /// Transformed-equation coefficients at the given energy parameter.
    ///
    /// The parameter is explicit (rather than a quantum number) so the
    /// equation can be probed off the spectrum too, e.g. at `nu = 1/2`
    /// where the power-series solution refuses to terminate.
    pub fn s_ode_spec(&self, energy_param: f64) -> SOdeSpec {
        match self.kind {
            OscKind::Harmonic => {
                let nu = energy_param;
                SOdeSpec {
                    second: SDomainFn::zero(),
                    first: SDomainFn::poly_in_s(&[0.0, 2.0]),
                    zeroth: SDomainFn::poly_in_s(&[2.0 * nu + 2.0, 0.0, 1.0]),
                    boundary_value: SDomainFn::poly_in_s(&[0.0, -1.0]),
                    boundary_slope: SDomainFn::constant(-1.0),
                }
            }
            OscKind::Morse { c } => {
                let n = energy_param;
                SOdeSpec {
                    second: SDomainFn::zero(),
                    first: SDomainFn::poly_in_s(&[0.25, 0.0, -1.0]),
                    zeroth: SDomainFn::poly_in_s(&[c, 2.0 * (c - n - 1.0)]),
                    boundary_value: SDomainFn::constant(-(2.0 * (c - n) - 1.0)),
                    boundary_slope: SDomainFn::zero(),
                }
            }
            OscKind::PoschlTeller { ell } => {
                let mu = energy_param;
                SOdeSpec {
                    second: SDomainFn::poly_in_s(&[0.0, 0.0, -1.0]),
                    first: SDomainFn::poly_in_s(&[0.0, 2.0 * (mu - 1.0)]),
                    zeroth: SDomainFn::poly_in_s(&[
                        (ell + mu) * (ell + 1.0 - mu),
                        0.0,
                        1.0,
                    ]),
                    boundary_value: SDomainFn::poly_in_s(&[0.0, -1.0]),
                    boundary_slope: SDomainFn::constant(-1.0),
                }
            }
        }
    }

    /// Convenience wrapper around [`SOdeSpec::residual_at`].
    pub fn s_ode_residual(
        &self,
        energy_param: f64,
        transform: &SDomainFn,
        v0: f64,
        v0_prime: f64,
        s: f64,
    ) -> Result<f64> {
        self.s_ode_spec(energy_param)
            .residual_at(transform, v0, v0_prime, s)
    }

    /// Residual of the coordinate-space equation for the factor `v`:
    ///
    /// ```text
    ///   harmonic:  v'' - 2 xi v' + 2 nu v
    ///   Morse:     xi v'' + 2(c - n) v' + (c - xi/4) v
    ///   P-T:       (1 - xi^2) v'' - 2(mu + 1) xi v' + (l - mu)(l + mu + 1) v
    /// ```
    pub fn xi_ode_residual(&self, energy_param: f64, v: &PolyExp, xi: f64) -> f64 {
        let d1 = v.derivative();
        let d2 = d1.derivative();
        let (v0, v1, v2) = (v.eval(xi), d1.eval(xi), d2.eval(xi));
        match self.kind {
            OscKind::Harmonic => v2 - 2.0 * xi * v1 + 2.0 * energy_param * v0,
            OscKind::Morse { c } => {
                let n = energy_param;
                xi * v2 + 2.0 * (c - n) * v1 + (c - xi / 4.0) * v0
            }
            OscKind::PoschlTeller { ell } => {
                let mu = energy_param;
                (1.0 - xi * xi) * v2 - 2.0 * (mu + 1.0) * xi * v1
                    + (ell - mu) * (ell + mu + 1.0) * v0
            }
        }
    }

    /// The bound state `n`, built by solving the transformed equation with
    /// the boundary terms kept and inverting by residues.
    ///
    /// The harmonic tower is unbounded, so any `n` works there (the
    /// power-series recurrence terminates at integer `nu = n`). The
    /// exponential wells carry their closed forms for `n = 0, 1`; higher
    /// bound `n` exist for deep wells but are not tabulated here.
    pub fn eigenstate(&self, n: u32) -> Result<BoundState> {
        self.quantize(n)?;
        let energy_param = self.energy_param(n)?;
        let energy_natural = self.energy_natural(n)?;
        let (v, transform) = match self.kind {
            OscKind::Harmonic => {
                // even n excites the even coefficient chain, odd n the odd
                let (v0, v0p) = if n % 2 == 0 { (1.0, 0.0) } else { (0.0, 1.0) };
                let series =
                    harmonic_recurrence(f64::from(n), v0, v0p, n as usize + 2);
                let transform = series.to_sdomain();
                (inverse_by_residues(&transform)?, transform)
            }
            OscKind::Morse { c } => {
                let v = match n {
                    0 => PolyExp::smooth_term(1.0, 0, 0.5),
                    1 => PolyExp::polynomial(&[2.0 * c - 2.0, -1.0], 0.5),
                    _ => return Err(Error::UnsupportedExcitation { n }),
                };
                let transform = forward_laplace(&v);
                (v, transform)
            }
            OscKind::PoschlTeller { .. } => {
                let v = match n {
                    0 => PolyExp::smooth_term(1.0, 0, 0.0),
                    1 => PolyExp::smooth_term(1.0, 1, 0.0),
                    _ => return Err(Error::UnsupportedExcitation { n }),
                };
                let transform = forward_laplace(&v);
                (v, transform)
            }
        };
        Ok(BoundState {
            n,
            energy_param,
            energy_natural,
            v0: v.value_at_zero(),
            v0_prime: v.derivative_at_zero(),
            v,
            transform,
        })
    }

    /// The homogeneous solution of the transformed equation at level `n`:
    /// what the "solution" becomes once the boundary terms are dropped.
    ///
    /// These leave the rational family: an essential singularity
    /// `e^{-s^2/4}` (harmonic), a branch factor `(s - 1/2)^{2c-1}`
    /// (Morse), or the exponential tail `s^mu k_l(s)` (Poschl-Teller,
    /// integer `l` only). The harmonic form holds at every level; the
    /// exponential wells carry it for the tabulated `n = 0, 1`.
    pub fn homogeneous_transform(&self, n: u32) -> Result<SDomainFn> {
        self.quantize(n)?;
        match self.kind {
            // valid at every level: e^{-s^2/4} s^{-n-1} solves
            // 2 s V' + (s^2 + 2 n + 2) V = 0 for all n
            OscKind::Harmonic => Ok(SDomainFn::term(
                1.0,
                &[(0.0, -f64::from(n) - 1.0)],
                [0.0, 0.0, -0.25],
            )),
            OscKind::Morse { c } => match n {
                0 => Ok(SDomainFn::term(
                    1.0,
                    &[(0.5, 2.0 * c - 1.0), (-0.5, -1.0)],
                    [0.0; 3],
                )),
                1 => Ok(SDomainFn::term(
                    1.0,
                    &[(0.5, 2.0 * c - 2.0), (-0.5, -2.0)],
                    [0.0; 3],
                )),
                _ => Err(Error::UnsupportedExcitation { n }),
            },
            OscKind::PoschlTeller { ell } => {
                let l = as_integer(ell).filter(|&l| l >= 1).ok_or_else(|| {
                    Error::UnsupportedInput(format!(
                        "the homogeneous tail uses the modified spherical Bessel form, \
                         which needs integer l >= 1; got l = {ell}"
                    ))
                })?;
                if n > 1 {
                    return Err(Error::UnsupportedExcitation { n });
                }
                let mu = ell - f64::from(n);
                Ok(specfun::mod_sph_bessel_k_sdomain(l as u32).mul_factor(0.0, mu))
            }
        }
    }

    /// Physical wavefunction at `x`, reassembled from the factor:
    /// asymptotic peeling times `v(xi(x))`. Not normalized.
    ///
    /// Evaluated term by term in log magnitude, because far in a tail the
    /// peeling underflows while the polynomial part overflows; the product
    /// is tiny but the naive factored form is `0 * inf`.
    pub fn wavefunction(&self, state: &BoundState, x: f64) -> f64 {
        let xi = self.xi_from_x(x);
        match self.kind {
            OscKind::Harmonic => eval_damped(&state.v, xi, 0.0, -xi * xi / 2.0),
            OscKind::Morse { c } => {
                let peel = c - f64::from(state.n) - 0.5;
                eval_damped(&state.v, xi, peel, 0.0)
            }
            OscKind::PoschlTeller { .. } => {
                // |xi| < 1 keeps every factor bounded; plain evaluation
                let mu = state.energy_param;
                (1.0 - xi * xi).powf(mu / 2.0) * state.v.eval(xi)
            }
        }
    }

    /// `Int |psi|^2 dx` over the whole line: Richardson-extrapolated
    /// Simpson quadrature on a window that doubles until the value stops
    /// moving.
    pub fn norm_squared(&self, state: &BoundState) -> f64 {
        let density = 64.0;
        let psi_sq = |x: f64| {
            let p = self.wavefunction(state, x);
            p * p
        };
        let mut prev = f64::NAN;
        let mut half_width = 8.0;
        loop {
            let mut n = (2.0 * half_width * density) as usize;
            if n % 2 == 1 {
                n += 1;
            }
            let coarse = crate::transforms::simpson(psi_sq, -half_width, half_width, n);
            let fine = crate::transforms::simpson(psi_sq, -half_width, half_width, 2 * n);
            let cur = (16.0 * fine - coarse) / 15.0;
            if (cur - prev).abs() <= 1e-12 * cur.abs() || half_width >= 256.0 {
                return cur;
            }
            prev = cur;
            half_width *= 2.0;
        }
    }
}

/// `sum_t coeff * xi^(power + extra_power) * e^{-decay xi + extra_exponent}`
/// with each term's magnitude assembled in log space, so that a gigantic
/// polynomial factor damped by a vanishing exponential comes out as the
/// tiny number it is instead of `inf * 0`.
fn eval_damped(v: &PolyExp, xi: f64, extra_power: f64, extra_exponent: f64) -> f64 {
    v.smooth()
        .iter()
        .map(|t| {
            let p = f64::from(t.power) + extra_power;
            let log_pow = if p == 0.0 {
                0.0
            } else if xi == 0.0 {
                f64::NEG_INFINITY
            } else {
                p * xi.abs().ln()
            };
            let sign = if xi < 0.0 && t.power % 2 == 1 { -1.0 } else { 1.0 };
            t.coeff * sign * (log_pow - t.decay * xi + extra_exponent).exp()
        })
        .sum()
}

/// Power-series solution of the transformed harmonic equation: writing
/// `V(s) = sum_k V_k s^{-(k+1)}`, matching powers gives
///
/// ```text
///   V_0 = v(0),  V_1 = v'(0),  V_{k+2} = -2 (nu - k) V_k
/// ```
///
/// At integer `nu` the excited chain terminates at `k = nu` and the series
/// is the (rational) bound-state transform. Away from integers nothing
/// terminates: `|V_{k+2}/V_k| ~ 2k`, factorial growth, and the series is
/// purely formal. Both regimes are returned as the raw coefficient window
/// `k = 0 ..= kmax`.
pub fn harmonic_recurrence(nu: f64, v0: f64, v0_prime: f64, kmax: usize) -> LaurentSeries {
    let mut vk = vec![0.0; kmax + 1];
    vk[0] = v0;
    if kmax >= 1 {
        vk[1] = v0_prime;
    }
    for k in 0..kmax.saturating_sub(1) {
        vk[k + 2] = -2.0 * (nu - k as f64) * vk[k];
    }
    let coeffs: Vec<f64> = (0..=kmax).rev().map(|k| vk[k]).collect();
    LaurentSeries::new(-(kmax as i32) - 1, coeffs)
}
