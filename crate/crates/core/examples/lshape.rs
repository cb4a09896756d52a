//! Dirichlet problem on the L-shaped domain with `h = (Re z)^2`, solved
//! with both pole-selection variants.

use aaals::laplace::{solve, BoundaryData, DataFn, Variant};
use aaals::scenarios::{l_shape, l_shape_options, L_SHAPE_POINT, L_SHAPE_VALUE};

fn main() -> aaals::Result<()> {
    let d = l_shape();
    let data = BoundaryData::Uniform(DataFn::Re2);
    for variant in [Variant::Local, Variant::Global] {
        let sol = solve(&d, &data, &l_shape_options(variant))?;
        let dg = &sol.diagnostics;
        let u = sol.eval_u(&[L_SHAPE_POINT])[0];
        println!(
            "{variant:?}: {} poles ({} discarded), {} x {} matrix, boundary error {:.2e}, u(0.99+0.99i) - ref = {:.1e}, {:.2} s",
            dg.poles_kept,
            dg.poles_discarded,
            dg.layout.rows,
            dg.layout.cols,
            dg.boundary_error,
            u - L_SHAPE_VALUE,
            dg.timings.total
        );
    }
    Ok(())
}
