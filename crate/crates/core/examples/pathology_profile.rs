//! What the truncated inverse of a boundary-free transform looks like.
//!
//! Dropping the boundary terms for the harmonic ground state leaves
//! G(s) = e^{-s^2/4}/s. Its truncated inversion integral does not settle
//! as gamma grows; it oscillates at wavelength 2 pi / gamma with an
//! amplitude that explodes like e^{gamma^2/4}. After dividing out
//! gamma^2 e^{gamma^2/4} (the rescaling baked into `rescaled_inverse`)
//! the peaks flatten onto 2/pi and the whole family collapses onto the
//! envelope (2/pi)/sqrt(1 + 4 w^2) in w = xi/gamma: structured garbage,
//! identical for every gamma, bearing no resemblance to a bound state.

use laplaceqm::pathology::{envelope_model, profile, rescaled_inverse, PLATEAU_LIMIT};
use laplaceqm::transforms::point_budget_from_env;
use std::f64::consts::PI;

fn main() -> laplaceqm::Result<()> {
    let budget = point_budget_from_env();

    println!("gamma    plateau      wavelength*gamma/(2pi)   (2/pi = {PLATEAU_LIMIT:.6})");
    for gamma in [50.0, 100.0, 200.0] {
        let prof = profile(gamma, 13.0 * PI / gamma, 16, budget)?;
        println!(
            "{gamma:5}  {:.6}     {:.6}",
            prof.plateau_estimate,
            prof.wavelength_estimate * gamma / (2.0 * PI)
        );
    }

    // A slice of the gamma = 100 profile against the universal envelope.
    let gamma = 100.0;
    println!("\n  xi        g(xi; {gamma})   envelope at w = xi/gamma");
    for k in 1..=12 {
        let xi = f64::from(k) * PI / (2.0 * gamma); // quarter wavelengths
        let g = rescaled_inverse(xi, gamma, budget)?;
        println!("{xi:8.5}  {g:12.6}  {:12.6}", envelope_model(xi / gamma));
    }

    println!("\nPeaks sit on the envelope; zeros interlace them. Nothing here");
    println!("converges to the actual ground-state factor v = 1.");
    Ok(())
}
