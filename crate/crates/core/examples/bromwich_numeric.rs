//! Truncated contour inversion, where it works and how it fails.
//!
//! Cutting the inversion integral at |Im s| = gamma leaves an error tail
//! of order e^{a xi} cos(gamma xi) / (pi gamma xi). For well-behaved
//! transforms that tail dies like 1/gamma; pushing gamma up buys accuracy.
//! The budget cap (BROMWICH_POINT_BUDGET) protects against runaway grids.

use laplaceqm::sdomain::SDomainFn;
use laplaceqm::transforms::{bromwich_invert, point_budget_from_env};

fn main() -> laplaceqm::Result<()> {
    let budget = point_budget_from_env();
    let step = SDomainFn::term(1.0, &[(0.0, -1.0)], [0.0; 3]); // 1/s  ->  1
    let decay = SDomainFn::term(1.0, &[(-0.5, -1.0)], [0.0; 3]); // 1/(s+1/2)  ->  e^{-xi/2}
    let a = 0.1;
    let xi = 2.0;

    println!("inverting 1/s and 1/(s + 1/2) at xi = {xi}, contour Re s = {a}");
    println!("\n gamma     err(1/s)        err(e^(-xi/2))   tail scale 1/(pi gamma xi)");
    for gamma in [25.0, 50.0, 100.0, 200.0, 400.0] {
        let e1 = bromwich_invert(&step, xi, a, gamma, budget)?.value() - 1.0;
        let e2 = bromwich_invert(&decay, xi, a, gamma, budget)?.value() - (-xi / 2.0f64).exp();
        let tail = (a * xi).exp() / (std::f64::consts::PI * gamma * xi);
        println!("{gamma:6}  {e1:14.3e}  {e2:14.3e}  {tail:14.3e}");
    }

    // The contour must pass right of every pole...
    println!("\na = 0 against 1/s: {:?}", bromwich_invert(&step, 1.0, 0.0, 50.0, budget).err());
    // ...and the grid must fit the budget.
    println!("budget 100:        {:?}", bromwich_invert(&step, 1.0, a, 50.0, 100).err());
    Ok(())
}
