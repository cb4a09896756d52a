//! Where AAA puts poles when fitting boundary data of a lens: too many in
//! the domain for `Re z`, too few outside for a function with branch points
//! at the tips.

use aaals::aaa::{aaa_fit, AaaOptions};
use aaals::geometry::sample_boundary;
use aaals::scenarios::{lens, lens_slit_map};
use aaals::Complex64;

fn main() -> aaals::Result<()> {
    let d = lens();
    let s = sample_boundary(&d, 600, &Default::default())?;
    let re: Vec<Complex64> = s.z.iter().map(|z| Complex64::new(z.re, 0.0)).collect();
    let slit: Vec<Complex64> = s.z.iter().map(|&z| lens_slit_map(z)).collect();
    for (name, f) in [("Re z", re), ("slit map", slit)] {
        let fit = aaa_fit(&s.z, &f, &AaaOptions::default())?;
        let inside = fit.poles.poles.iter().filter(|p| d.contains(**p)).count();
        println!("{name}: {} poles, {inside} inside the lens, {} outside", fit.poles.len(), fit.poles.len() - inside);
    }
    Ok(())
}
