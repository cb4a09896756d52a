//! Real approximation of a zigzag on `[-1, 1]` with poles from windowed
//! AAA fits around each kink and none on the interval.

use aaals::interval::{approximate, zigzag, zigzag_grid, zigzag_singularities, IntervalOptions};

fn main() -> aaals::Result<()> {
    let x = zigzag_grid();
    let f: Vec<f64> = x.iter().map(|&v| zigzag(v)).collect();
    let ap = approximate(&x, &f, &zigzag_singularities(), &IntervalOptions::default())?;
    let err = (0..10_000)
        .map(|k| -1.0 + 2.0 * k as f64 / 9999.0)
        .map(|t| (ap.eval(t) - zigzag(t)).abs())
        .fold(0.0, f64::max);
    println!(
        "{} samples, {} poles ({} on the interval), {} degrees of freedom, max error {err:.2e}",
        x.len(),
        ap.poles.len(),
        ap.poles_on_interval((-1.0, 1.0)),
        ap.degrees_of_freedom
    );
    Ok(())
}
