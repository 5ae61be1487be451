//! The 1/s power-series recurrence, terminating and not.
//!
//! Writing V(s) = sum_k V_k s^{-(k+1)} turns the transformed harmonic
//! equation into V_{k+2} = -2 (nu - k) V_k. At integer nu = n the chain
//! hits the factor (nu - n) and stops: V is a Laurent polynomial and its
//! inverse is the Hermite factor. Off the integers nothing stops it, the
//! coefficients explode factorially, and there is no bound state; that is
//! the quantization condition seen from the s-domain.

use laplaceqm::oscillators::{harmonic_recurrence, Oscillator};
use laplaceqm::transforms::inverse_by_residues;

fn main() -> laplaceqm::Result<()> {
    for n in [0u32, 1, 2, 3, 6] {
        let (v0, v0p) = if n % 2 == 0 { (1.0, 0.0) } else { (0.0, 1.0) };
        let series = harmonic_recurrence(f64::from(n), v0, v0p, n as usize + 2);
        let transform = series.to_sdomain();
        let factor = inverse_by_residues(&transform)?;
        println!("nu = {n}: V(s) = {transform}");
        println!("         v(xi) = {factor}");
    }

    // Same recurrence between the integers: coefficients with k ~ 200.
    // |V_k| grows like 2^k k!!, far past f64 range, so compare ratios.
    let series = harmonic_recurrence(0.5, 1.0, 0.0, 204);
    let (a, b) = (series.inv_power_coeff(202), series.inv_power_coeff(200));
    println!("\nnu = 1/2: V_202 / V_200 = {} (= -2(1/2 - 200), no termination)", a / b);

    // Cross-check against the eigenstate construction.
    let osc = Oscillator::harmonic();
    let st = osc.eigenstate(6)?;
    println!("\neigenstate(6) factor: {}", st.v);
    Ok(())
}
