//! Morse bound states, including the physical route from a well depth.
//!
//! The dimensionless strength is c = sqrt(2 m A)/(alpha hbar); a well
//! binds ceil(c - 1/2) states. The transform of the bound-state factor is
//! a pure pole cluster at s = -1/2, so residues recover it exactly.

use laplaceqm::oscillators::{Oscillator, PhysicalParams, Spectrum};

fn main() -> laplaceqm::Result<()> {
    // depth chosen so c = 3 exactly
    let osc = Oscillator::morse_from_depth(4.5, PhysicalParams::default())?;
    let count = match osc.spectrum() {
        Spectrum::Finite { count } => count,
        Spectrum::Unbounded => unreachable!("Morse spectra are finite"),
    };
    println!("{osc}: {count} bound states, unit alpha^2 hbar^2 / 2m = {}", osc.energy_unit());

    for n in 0..2 {
        let st = osc.eigenstate(n)?;
        println!("\nn = {n}: E = {} (binding), physical {}", st.energy_natural, osc.energy_physical(n)?);
        println!("  v(xi)     = {}", st.v);
        println!("  V(s)      = {}", st.transform);
        println!("  norm^2    = {}", osc.norm_squared(&st));
    }

    // A few wavefunction samples across the well. x = 0 sits at the
    // potential minimum; xi = 2c e^{-alpha x} decreases to the right.
    let st = osc.eigenstate(0)?;
    println!("\n     x        xi        psi (unnormalized)");
    for i in -2..=6 {
        let x = f64::from(i) * 0.5;
        println!(
            "{:8.2}  {:8.4}  {:14.8}",
            x,
            osc.xi_from_x(x),
            osc.wavefunction(&st, x)
        );
    }

    // Too shallow to bind anything: c < 1/2.
    let too_shallow = Oscillator::morse(0.3)?;
    println!("\nc = 0.3 spectrum: {:?}", too_shallow.spectrum());
    println!("eigenstate(0) -> {:?}", too_shallow.eigenstate(0).err());
    Ok(())
}
