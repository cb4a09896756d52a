//! Fit `tan(pi z / 2)` on the unit circle and print the poles AAA finds.

use aaals::aaa::{aaa_fit, AaaOptions};
use aaals::Complex64;
use std::f64::consts::PI;

fn main() -> aaals::Result<()> {
    let z: Vec<Complex64> = (0..400).map(|k| Complex64::from_polar(1.0, 2.0 * PI * (k as f64 + 0.5) / 400.0)).collect();
    let f: Vec<Complex64> = z.iter().map(|&z| (z * PI / 2.0).tan()).collect();
    let fit = aaa_fit(&z, &f, &AaaOptions::default())?;
    println!("degree {} after {} iterations, max error {:.2e}", fit.r.degree(), fit.iterations, fit.max_error);

    let mut pairs: Vec<_> = fit.poles.poles.iter().zip(&fit.poles.residues).collect();
    pairs.sort_by(|a, b| a.0.norm().total_cmp(&b.0.norm()));
    for (p, r) in pairs.into_iter().take(6) {
        println!("pole {p:.12}  residue {r:.12}");
    }
    println!("r(0.5) = {:.15}, exact {:.15}", fit.r.eval(Complex64::new(0.5, 0.0)).re, (PI / 4.0).tan());
    Ok(())
}
