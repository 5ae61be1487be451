//! Bound states of three classic one-dimensional potentials (harmonic,
//! Morse, modified Poschl-Teller) solved through the Laplace transform,
//! plus a quantitative dissection of what happens when the transform's
//! boundary terms are dropped.
//!
//! The transform of a bound-state factor `v(xi)` satisfies a first-order
//! s-domain equation whose inhomogeneity carries the boundary data
//! `v(0)`, `v'(0)`. Solving the full equation gives proper rational
//! functions that invert term by term to the textbook eigenfunctions.
//! Dropping the boundary terms instead yields functions with essential
//! singularities or branch points; their truncated contour inverses do
//! not converge anywhere, but oscillate under a universal envelope that
//! this crate computes, fits, and renders.
//!
//! Modules:
//! - [`sdomain`]: the closed symbolic family `sum c (s-a)^p e^{q(s)}`
//!   with exact differentiation, Laurent expansion, partial fractions.
//! - [`transforms`]: forward Laplace transform of polynomial-exponential
//!   signals, residue inversion, moments, and the truncated contour
//!   (Bromwich) quadrature with growth rescaling.
//! - [`oscillators`]: the three potentials, their scalings, spectra,
//!   s-domain equations, closed-form low-lying states, and the
//!   power-series recurrence.
//! - [`pathology`]: the rescaled truncated inverse of the
//!   boundary-term-free harmonic transform, its plateau, wavelength,
//!   and envelope decay, plus the deviation moments in exact arithmetic.
//! - [`specfun`]: small special-function helpers (Hermite polynomials,
//!   modified spherical Bessel tails).
//!
//! Runnable walkthroughs live in `examples/`; each major capability has
//! one. The thin `laplaceqm` binary exposes the same functionality as
//! `solve`, `verify`, `pathology`, and `figure` subcommands.

pub mod cli;
pub mod error;
pub mod oscillators;
pub mod pathology;
pub mod sdomain;
pub mod specfun;
pub mod transforms;

pub use error::{Error, Result};
