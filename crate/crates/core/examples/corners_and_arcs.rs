//! Square with two circular bites; corners where arcs meet lines need the
//! same pole clustering as polygon corners.

use aaals::laplace::{solve, BoundaryData, DataFn, SolverOptions};
use aaals::scenarios::square_with_bites;

fn main() -> aaals::Result<()> {
    let d = square_with_bites();
    let sol = solve(&d, &BoundaryData::Uniform(DataFn::Re2), &SolverOptions::default())?;
    let dg = &sol.diagnostics;
    println!("{} poles kept, {} discarded, validation error {:.2e}", dg.poles_kept, dg.poles_discarded, dg.validation_error.unwrap_or(f64::NAN));
    for f in &dg.fits {
        println!("corner {:?}: {} samples, degree {}, {} poles", f.corner, f.samples, f.support_points, f.poles);
    }
    Ok(())
}
