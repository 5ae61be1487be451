//! Forward transform and residue inversion on the closed function family.
//!
//! Signals are sums of xi^k e^{-b xi} (plus optional delta components at
//! the origin); transforms are rational with real poles. Both directions
//! are exact term algebra, no quadrature involved.

use laplaceqm::sdomain::SDomainFn;
use laplaceqm::transforms::{forward_laplace, inverse_by_residues, PolyExp};

fn main() -> laplaceqm::Result<()> {
    // (3 - xi) e^{-xi/2} + xi^2 e^{-2 xi}
    let v = PolyExp::polynomial(&[3.0, -1.0], 0.5).add(&PolyExp::smooth_term(1.0, 2, 2.0));
    let f = forward_laplace(&v);
    let back = inverse_by_residues(&f)?;
    println!("v(xi)     = {v}");
    println!("V(s)      = {f}");
    println!("inverse   = {back}");
    println!("round trip exact: {}", back.approx_eq(&v, 1e-14));

    // Polynomial parts of a transform come back as delta derivatives:
    // the constant 1 is the transform of delta(xi).
    let with_poly = SDomainFn::poly_in_s(&[1.0, 2.0]).add(&SDomainFn::term(
        1.0,
        &[(-1.0, -1.0)],
        [0.0; 3],
    ));
    let dist = inverse_by_residues(&with_poly)?;
    println!("\nF(s)      = {with_poly}");
    println!("inverse   = {dist}");

    // Outside the family the inversion refuses rather than approximates.
    let gaussian = SDomainFn::term(1.0, &[(0.0, -1.0)], [0.0, 0.0, -0.25]);
    println!("\ne^(-s^2/4)/s -> {:?}", inverse_by_residues(&gaussian).err());

    // Repeated poles exercise the derivative rule in the residue sum.
    let repeated = SDomainFn::term(2.0, &[(0.0, 1.0), (-1.0, -3.0)], [0.0; 3]);
    println!("\nF(s)      = {repeated}");
    println!("inverse   = {}", inverse_by_residues(&repeated)?);
    Ok(())
}
