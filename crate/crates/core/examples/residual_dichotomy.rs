//! The boundary terms are not optional.
//!
//! Transforming v'' brings in s^2 V - s v(0) - v'(0). This example plugs
//! each tabulated transform into its transformed equation twice: once with
//! the boundary terms kept (residual at rounding level) and once with them
//! dropped (residual of order one). The same inputs, the same equation,
//! opposite verdicts; everything downstream of the dropped terms is what
//! the pathology modules quantify.

use laplaceqm::oscillators::Oscillator;

fn main() -> laplaceqm::Result<()> {
    let states = [
        (Oscillator::harmonic(), 0u32),
        (Oscillator::harmonic(), 1),
        (Oscillator::morse(3.0)?, 0),
        (Oscillator::morse(3.0)?, 1),
        (Oscillator::poschl_teller(2.0)?, 0),
        (Oscillator::poschl_teller(2.0)?, 1),
    ];
    let grid: Vec<f64> = (0..20).map(|i| 0.6 + 0.2 * f64::from(i)).collect();

    println!("{:<28} {:>14} {:>14}", "state", "kept max|res|", "dropped min|res|");
    for (osc, n) in &states {
        let st = osc.eigenstate(*n)?;
        let mut kept = 0.0f64;
        let mut dropped = f64::INFINITY;
        for &s in &grid {
            let with = osc.s_ode_residual(st.energy_param, &st.transform, st.v0, st.v0_prime, s)?;
            let without = osc.s_ode_residual(st.energy_param, &st.transform, 0.0, 0.0, s)?;
            kept = kept.max(with.abs());
            dropped = dropped.min(without.abs());
        }
        println!("{:<28} {:>14.3e} {:>14.3e}", format!("{osc}, n = {n}"), kept, dropped);
    }

    println!();
    println!("The dropped-terms residual equals the boundary polynomial itself,");
    println!("e.g. s for the harmonic ground state: the true transform solves the");
    println!("inhomogeneous equation, never the homogeneous one.");
    Ok(())
}
