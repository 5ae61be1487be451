//! Transforms from moments alone.
//!
//! When v decays, F(s) = sum_p (-1)^p M_p s^p / p! reproduces the Taylor
//! window of the transform from nothing but the moment integrals
//! M_p = Int xi^p v dxi. For the Morse factor the moments are closed
//! form; comparing the two windows is an end-to-end consistency test of
//! the whole transform table.

use laplaceqm::oscillators::Oscillator;
use laplaceqm::transforms::{moments, series_from_moments, Moment};

fn main() -> laplaceqm::Result<()> {
    let osc = Oscillator::morse(3.0)?;
    let st = osc.eigenstate(1)?;
    println!("Morse c = 3, n = 1: v = {}", st.v);

    let ms = moments(&st.v, 8)?;
    println!("\n p   M_p (quadrature-free)   2^(p+2) p! (c - 2 - p)");
    for (p, m) in ms.iter().enumerate() {
        let Moment::Finite(value) = m else { unreachable!("decaying factor") };
        let fact: f64 = (1..=p).map(|k| k as f64).product();
        let closed = 2f64.powi(p as i32 + 2) * fact * (3.0 - 2.0 - p as f64);
        println!("{p:2}  {value:22.10}  {closed:22.10}");
    }

    let window = series_from_moments(&ms)?;
    let direct = st.transform.laurent_expand(8)?;
    println!("\n p   from moments        direct Taylor");
    for p in 0..=8 {
        println!("{p:2}  {:18.12}  {:18.12}", window.coeff(p), direct.coeff(p));
    }

    // Non-decaying factors have no moments, and the code says so instead
    // of integrating something divergent.
    let pt = Oscillator::poschl_teller(2.0)?;
    let flat = pt.eigenstate(0)?;
    println!("\nPoschl-Teller n = 0 (v = 1): {:?}", series_from_moments(&moments(&flat.v, 3)?).err());
    Ok(())
}
