//! Load a domain from JSON and solve with the data ids it carries.
//! Usage: `cargo run --example domain_file -- crates/core/data/lshape.json`

use aaals::geometry::DomainDescription;
use aaals::laplace::{solve, BoundaryData, DataFn, SolverOptions};

fn main() -> aaals::Result<()> {
    let path = std::env::args().nth(1).unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/data/lshape.json").into());
    let desc = DomainDescription::from_json(&std::fs::read_to_string(&path)?)?;
    let d = desc.build()?;
    let table = desc
        .data_labels()
        .into_iter()
        .map(|segs| segs.into_iter().map(|l| DataFn::parse(l.as_deref().unwrap_or("const:0"))).collect())
        .collect::<aaals::Result<_>>()?;
    let sol = solve(&d, &BoundaryData::PerSegment(table), &SolverOptions::default())?;
    println!("{path}: {} poles, boundary error {:.2e}", sol.diagnostics.poles_kept, sol.diagnostics.boundary_error);
    Ok(())
}
