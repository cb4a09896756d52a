//! Exterior of three rectangles: `u = 1` on the left one, `0` on the right
//! two, bounded at infinity.

use aaals::laplace::solve;
use aaals::scenarios::{three_rectangles, three_rectangles_data, three_rectangles_options};
use aaals::Complex64;

fn main() -> aaals::Result<()> {
    let d = three_rectangles();
    let sol = solve(&d, &three_rectangles_data(&d), &three_rectangles_options())?;
    let dg = &sol.diagnostics;
    println!("{} poles, {} x {} matrix, boundary error {:.2e}", dg.poles_kept, dg.layout.rows, dg.layout.cols, dg.boundary_error);
    for x in [1.0, 1.5, 10.0, 1e4] {
        println!("u({x}) = {:.12}", sol.eval_u(&[Complex64::new(x, 0.0)])[0]);
    }
    Ok(())
}
