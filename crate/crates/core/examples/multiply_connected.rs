//! Doubly connected domains: a square with a square hole held at `u = 1`,
//! and a disk with two circular holes.

use aaals::laplace::solve;
use aaals::scenarios::*;
use aaals::Complex64;

fn main() -> aaals::Result<()> {
    let d = square_with_hole();
    let sol = solve(&d, &square_with_hole_data(&d), &square_with_hole_options())?;
    let dg = &sol.diagnostics;
    println!(
        "square with hole: {} poles, boundary error {:.2e}, log coefficient {:.6}, u(0.5+0.5i) = {:.10}",
        dg.poles_kept,
        dg.boundary_error,
        sol.log_coefficients[0],
        sol.eval_u(&[Complex64::new(0.5, 0.5)])[0]
    );

    let d = triple_circles();
    let opts = aaals::laplace::SolverOptions {
        variant: aaals::laplace::Variant::Global,
        ..Default::default()
    };
    let sol = solve(&d, &triple_circles_data(&d), &opts)?;
    println!(
        "three circles: {} poles, boundary error {:.2e}, u(0, 1) = {:.10}",
        sol.diagnostics.poles_kept,
        sol.diagnostics.boundary_error,
        sol.eval_u(&[Complex64::new(0.0, 1.0)])[0]
    );
    Ok(())
}
