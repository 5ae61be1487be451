//! Modified Poschl-Teller bound states.
//!
//! In the coordinate xi = tanh(alpha x) the bound-state factor for the
//! top levels is just 1 or xi, with everything else carried by the
//! peeling (1 - xi^2)^{mu/2}. Binding energies are -(l - n)^2 in units
//! of alpha^2 hbar^2 / 2m.

use laplaceqm::oscillators::Oscillator;

fn main() -> laplaceqm::Result<()> {
    let osc = Oscillator::poschl_teller(2.0)?;
    println!("{osc}, spectrum {:?}", osc.spectrum());

    for n in 0..2 {
        let st = osc.eigenstate(n)?;
        println!("\nn = {n}: mu = {}, E = {}", st.energy_param, st.energy_natural);
        println!("  v(xi)  = {}", st.v);
        println!("  V(s)   = {}", st.transform);
        println!("  norm^2 = {}", osc.norm_squared(&st));
    }

    // The ground state of the l = 2 well is sech^2-shaped; sample it.
    let st = osc.eigenstate(0)?;
    println!("\n     x        xi = tanh(x)   psi");
    for i in 0..=6 {
        let x = f64::from(i) * 0.6;
        println!(
            "{:8.2}  {:12.6}  {:12.8}",
            x,
            osc.xi_from_x(x),
            osc.wavefunction(&st, x)
        );
    }

    // Non-integer l works for the spectrum and the states; only the
    // closed homogeneous tail needs integer l.
    let frac = Oscillator::poschl_teller(2.5)?;
    println!("\nl = 2.5: spectrum {:?}, E_0 = {}", frac.spectrum(), frac.energy_natural(0)?);
    println!("homogeneous transform -> {:?}", frac.homogeneous_transform(0).err());
    Ok(())
}
