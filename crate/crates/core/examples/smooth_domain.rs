//! `u = -log|z|` on a random smooth domain: the solution is the Green's
//! function plus `log|z|`, so `u + log|z|` vanishes on the boundary.

use aaals::laplace::solve;
use aaals::scenarios::{smooth_data, smooth_domain, smooth_options, SMOOTH_SEED};
use aaals::Complex64;

fn main() -> aaals::Result<()> {
    let seed = std::env::args().nth(1).map_or(SMOOTH_SEED, |s| s.parse().expect("integer seed"));
    let d = smooth_domain(seed);
    let sol = solve(&d, &smooth_data(), &smooth_options())?;
    let dg = &sol.diagnostics;
    println!(
        "seed {seed}: {} poles kept, {} outside the domain rejected, validation error {:.2e}",
        dg.poles_kept,
        dg.poles_discarded,
        dg.validation_error.unwrap_or(f64::NAN)
    );
    let g = sol.eval_u(&[Complex64::new(0.0, 0.0)])[0];
    println!("u(0) = {g:.12}  (conformal radius about 0 is exp(-u(0)) = {:.12})", (-g).exp());
    Ok(())
}
