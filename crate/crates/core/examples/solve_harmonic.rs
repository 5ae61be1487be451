//! The harmonic ladder from the transform method.
//!
//! For integer energy parameter the power-series recurrence in 1/s
//! terminates, the inverse transform is a polynomial, and peeling off the
//! Gaussian gives the familiar Hermite states with E = (n + 1/2) hbar omega.

use laplaceqm::oscillators::Oscillator;
use laplaceqm::specfun::hermite;

fn main() -> laplaceqm::Result<()> {
    let osc = Oscillator::harmonic();
    println!("{osc} well, natural energy unit hbar*omega = {}", osc.energy_unit());

    for n in 0..=5 {
        let st = osc.eigenstate(n)?;
        println!("\nn = {n}: E = {} hbar*omega", st.energy_natural);
        println!("  v(xi)     = {}", st.v);
        println!("  V(s)      = {}", st.transform);
        println!("  (v0, v0') = ({}, {})", st.v0, st.v0_prime);
        println!("  norm^2    = {:.12}", osc.norm_squared(&st));
    }

    // The factor v is proportional to the Hermite polynomial; the overall
    // scale depends on the chosen boundary data, not on physics.
    let st = osc.eigenstate(6)?;
    println!("\nn = 6 factor: {}", st.v);
    println!("H_6 coeffs:   {:?}", hermite(6).coeffs());
    Ok(())
}
