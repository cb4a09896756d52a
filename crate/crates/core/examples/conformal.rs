//! Conformal map of the smooth random domain onto the disk, with the
//! inverse map and a round-trip check.

use aaals::scenarios::{smooth_domain, SMOOTH_SEED};
use aaals::transforms::{conformal_map, ConformalOptions};
use aaals::Complex64;

fn main() -> aaals::Result<()> {
    let d = smooth_domain(SMOOTH_SEED);
    let map = conformal_map(&d, &ConformalOptions::default())?;
    let dg = &map.diagnostics;
    println!("forward degree {}, inverse {} poles", map.forward.degree(), map.inverse.poles.len());
    println!("round trip on {} points: {:.2e}", dg.roundtrip_points, dg.roundtrip_error);
    let z = Complex64::new(0.3, -0.2);
    let w = map.forward(z);
    println!("g({z}) = {w:.12}, |g| = {:.6}, back: {:.12}", w.norm(), map.inverse(w));
    Ok(())
}
