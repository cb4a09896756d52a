//! Command-line front end. Exit codes: 0 on success, 1 on malformed input
//! or a failed computation, 2 when `--strict` turns a warning into a failure.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;

use crate::aaa::{aaa_fit, AaaOptions};
use crate::error::{Error, Result};
use crate::geometry::{sample_boundary, samples_at, Domain, DomainDescription};
use crate::interval::{self, IntervalOptions};
use crate::laplace::{self, ArtificialData, BoundaryData, DataFn, HarmonicSolution, SolverOptions, Variant};
use crate::report::{fmt_f64, to_json, write_json, Table};
use crate::scenarios;
use crate::transforms::{
    abs_exp_conjugate, conformal_map, graded_grid, hilbert_builtin, hilbert_transform, ConformalOptions,
    HilbertFunction, HilbertOptions,
};

#[derive(Debug, Parser)]
#[command(name = "aaals", version, about = "AAA-least squares solvers for Laplace problems, conformal maps and Hilbert transforms")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve a Dirichlet problem on a domain given as JSON or by name.
    Solve(SolveArgs),
    /// Real rational approximation on an interval without poles on it.
    Approx(ApproxArgs),
    /// Hilbert transform (harmonic conjugate) on the real line.
    Hilbert(HilbertArgs),
    /// Conformal map of a simply connected domain onto the unit disk.
    Confmap(ConfmapArgs),
    /// Regenerate the data behind the reference figures as CSV/JSON.
    Demo(DemoArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    Global,
    Local,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ArtificialArg {
    Off,
    SqrtProduct,
    Auto,
}

/// Built-in domains.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BuiltinDomain {
    LShape,
    ThreeRectangles,
    Smooth,
    SquareWithBites,
    SquareWithHole,
    Lens,
    TripleCircles,
}

#[derive(Debug, Clone, Args)]
pub struct SolverFlags {
    /// AAA tolerance, relative to the largest data value.
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
    /// Polynomial degree per center [default: by domain type].
    #[arg(long)]
    pub degree: Option<usize>,
    #[arg(long, value_enum)]
    pub variant: Option<VariantArg>,
    /// Clustered sample points per boundary segment.
    #[arg(long)]
    pub samples_per_segment: Option<usize>,
    /// Data used to locate poles in the local variant.
    #[arg(long, value_enum)]
    pub artificial_data: Option<ArtificialArg>,
    /// Cap on AAA support points.
    #[arg(long)]
    pub max_degree: Option<usize>,
}

#[derive(Debug, Clone, Args)]
pub struct OutputFlags {
    /// Directory for result files; created if missing.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Exit with status 2 when the run produced warnings.
    #[arg(long)]
    pub strict: bool,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    /// Domain JSON file.
    #[arg(required_unless_present = "builtin", conflicts_with = "builtin")]
    pub domain: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub builtin: Option<BuiltinDomain>,
    /// Data id for the whole boundary: re2, rez, neglogabs or const:<value>.
    /// `const-per-component` (or no flag) uses the ids in the domain file.
    #[arg(long, conflicts_with = "data_csv")]
    pub data: Option<String>,
    /// Tabulated boundary data: CSV rows `re,im,value` at boundary points.
    #[arg(long)]
    pub data_csv: Option<PathBuf>,
    /// Point `re,im` at which to report u; repeatable.
    #[arg(long = "eval", value_parser = parse_complex)]
    pub eval: Vec<Complex64>,
    /// Evaluation grid `NX,NY` over the bounding box, written to grid.csv.
    #[arg(long, value_parser = parse_grid)]
    pub grid: Option<(usize, usize)>,
    /// Reference point `re,im` for the angle column of the error table
    /// [default: bounding-box center].
    #[arg(long, value_parser = parse_complex)]
    pub angle_ref: Option<Complex64>,
    #[command(flatten)]
    pub solver: SolverFlags,
    #[command(flatten)]
    pub output: OutputFlags,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ApproxFunction {
    /// Zigzag with kinks at -0.8, -0.6, ..., 0.8 on its clustered grid.
    Zigzag,
    /// The constant 1.
    Constant,
    /// `1 / (x - 2)`.
    Pole,
}

#[derive(Debug, Args)]
pub struct ApproxArgs {
    #[arg(long, value_enum, default_value = "zigzag", conflicts_with = "csv")]
    pub function: ApproxFunction,
    /// Samples as CSV rows `x,f`.
    #[arg(long)]
    pub csv: Option<PathBuf>,
    /// Singularity locations, comma separated (CSV input only).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub singularities: Vec<f64>,
    /// Radius of the sample window around each singularity.
    #[arg(long)]
    pub window: Option<f64>,
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
    /// Polynomial degree.
    #[arg(long, default_value_t = 16)]
    pub degree: usize,
    #[arg(long)]
    pub max_degree: Option<usize>,
    #[command(flatten)]
    pub output: OutputFlags,
}

#[derive(Debug, Args)]
pub struct HilbertArgs {
    /// Built-in function ids (runge, quartic, sinc2, sinc4, gauss, sech,
    /// abs-exp) or `all`.
    #[arg(long, value_delimiter = ',', default_value = "all", conflicts_with = "csv")]
    pub function: Vec<String>,
    /// Grade range such as `1..6` or `2,4`: convergence study on graded grids.
    #[arg(long)]
    pub grades: Option<String>,
    /// Samples as CSV rows `y,u`.
    #[arg(long)]
    pub csv: Option<PathBuf>,
    /// Points at which to report v for CSV input.
    #[arg(long = "eval", value_delimiter = ',', allow_hyphen_values = true)]
    pub eval: Vec<f64>,
    /// AAA tolerance [default: 1e-8, 1e-10 for --grades].
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long)]
    pub max_degree: Option<usize>,
    #[command(flatten)]
    pub output: OutputFlags,
}

#[derive(Debug, Args)]
pub struct ConfmapArgs {
    /// Domain JSON file.
    #[arg(required_unless_present = "builtin", conflicts_with = "builtin")]
    pub domain: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub builtin: Option<BuiltinDomain>,
    /// AAA tolerance of the Laplace solve.
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
    /// AAA tolerance for the forward and inverse maps.
    #[arg(long, default_value_t = 1e-11)]
    pub compression_tol: f64,
    #[arg(long, default_value_t = 1000)]
    pub samples_per_segment: usize,
    /// Polynomial degree of the Laplace solve [default: 20].
    #[arg(long)]
    pub degree: Option<usize>,
    #[arg(long)]
    pub max_degree: Option<usize>,
    /// Random disk points for the round-trip check.
    #[arg(long, default_value_t = 10_000)]
    pub test_points: usize,
    #[arg(long, default_value_t = 7)]
    pub seed: u64,
    /// Seed of the built-in smooth domain.
    #[arg(long, default_value_t = scenarios::SMOOTH_SEED)]
    pub domain_seed: u64,
    #[command(flatten)]
    pub output: OutputFlags,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DemoName {
    /// L-shape, global and local variants.
    Lshape,
    /// Smooth domain, global variant.
    Smooth,
    /// Exterior of three rectangles.
    ThreeRectangles,
    /// Square with bites and square with a square hole.
    Corners,
    /// Zigzag on [-1, 1].
    Zigzag,
    /// Lens pole portraits.
    Lens,
    /// Global AAA on a triply connected domain.
    TripleCircles,
    /// Hilbert convergence on graded grids.
    HilbertGrades,
    /// Conformal map of the smooth domain.
    Confmap,
    All,
}

#[derive(Debug, Args)]
pub struct DemoArgs {
    #[arg(value_enum, default_value = "all")]
    pub name: DemoName,
    /// Seed of the smooth domain.
    #[arg(long, default_value_t = scenarios::SMOOTH_SEED)]
    pub seed: u64,
    /// Output directory.
    #[arg(long, default_value = "demo-out")]
    pub out: PathBuf,
    #[arg(long)]
    pub strict: bool,
}

fn parse_complex(s: &str) -> std::result::Result<Complex64, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let num = |t: &str| t.parse::<f64>().map_err(|e| format!("{t:?}: {e}"));
    match parts.as_slice() {
        [re] => Ok(Complex64::new(num(re)?, 0.0)),
        [re, im] => Ok(Complex64::new(num(re)?, num(im)?)),
        _ => Err(format!("expected `re,im`, got {s:?}")),
    }
}

fn parse_grid(s: &str) -> std::result::Result<(usize, usize), String> {
    let (a, b) = s.split_once(',').ok_or_else(|| format!("expected `NX,NY`, got {s:?}"))?;
    let n = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("{t:?}: {e}"));
    let (nx, ny) = (n(a)?, n(b)?);
    if nx < 2 || ny < 2 {
        return Err("grid needs at least 2 points per direction".into());
    }
    Ok((nx, ny))
}

/// `1..6`, `3` or `1,3,5`.
fn parse_grades(s: &str) -> Result<Vec<usize>> {
    let bad = || Error::Parse(format!("bad grade list {s:?}"));
    let n = |t: &str| t.trim().parse::<usize>().map_err(|_| bad());
    let out: Vec<usize> = if let Some((a, b)) = s.split_once("..") {
        let (a, b) = (n(a)?, n(b.trim_start_matches('='))?);
        (a..=b).collect()
    } else {
        s.split(',').map(n).collect::<Result<_>>()?
    };
    if out.is_empty() || out.contains(&0) {
        return Err(bad());
    }
    Ok(out)
}

/// Runs the CLI; returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    let strict = match &cli.command {
        Command::Solve(a) => a.output.strict,
        Command::Approx(a) => a.output.strict,
        Command::Hilbert(a) => a.output.strict,
        Command::Confmap(a) => a.output.strict,
        Command::Demo(a) => a.strict,
    };
    let result = match cli.command {
        Command::Solve(a) => cmd_solve(&a),
        Command::Approx(a) => cmd_approx(&a),
        Command::Hilbert(a) => cmd_hilbert(&a),
        Command::Confmap(a) => cmd_confmap(&a),
        Command::Demo(a) => cmd_demo(&a),
    };
    match result {
        Ok(warnings) => {
            for w in &warnings {
                eprintln!("warning: {w}");
            }
            if strict && !warnings.is_empty() {
                2
            } else {
                0
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

type Warnings = Vec<String>;

fn out_dir(p: &Option<PathBuf>) -> Result<Option<&Path>> {
    match p {
        Some(dir) => {
            fs::create_dir_all(dir)?;
            Ok(Some(dir.as_path()))
        }
        None => Ok(None),
    }
}

/// `e` as a parse error prefixed with the file it came from.
fn in_file(path: &Path, e: Error) -> Error {
    let msg = match e {
        Error::Parse(m) => m,
        other => other.to_string(),
    };
    Error::Parse(format!("{}: {msg}", path.display()))
}

fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

/// Numeric CSV with exactly `ncols` columns; an optional non-numeric first
/// row is taken as a header. Errors name the file and line.
pub fn read_csv_columns(path: &Path, ncols: usize) -> Result<Vec<Vec<f64>>> {
    let text = read_text(path)?;
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .flexible(true)
        .from_reader(text.as_bytes());
    let mut cols = vec![Vec::new(); ncols];
    for (k, rec) in rdr.records().enumerate() {
        let rec = rec.map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        let line = rec.position().map_or(0, |p| p.line());
        let vals: std::result::Result<Vec<f64>, _> = rec.iter().map(str::parse::<f64>).collect();
        let vals = match vals {
            Ok(v) => v,
            Err(_) if k == 0 => continue,
            Err(e) => return Err(Error::Parse(format!("{}:{line}: {e}", path.display()))),
        };
        if vals.len() != ncols {
            return Err(Error::Parse(format!(
                "{}:{line}: expected {ncols} columns, found {}",
                path.display(),
                vals.len()
            )));
        }
        if let Some(v) = vals.iter().find(|v| !v.is_finite()) {
            return Err(Error::Parse(format!("{}:{line}: value {v} is not finite", path.display())));
        }
        for (c, v) in cols.iter_mut().zip(vals) {
            c.push(v);
        }
    }
    if cols[0].is_empty() {
        return Err(Error::Parse(format!("{}: no data rows", path.display())));
    }
    Ok(cols)
}

fn load_domain(path: &Path) -> Result<(Domain, DomainDescription)> {
    let text = read_text(path)?;
    let desc = DomainDescription::from_json(&text).map_err(|e| in_file(path, e))?;
    let d = desc.build().map_err(|e| in_file(path, e))?;
    Ok((d, desc))
}

/// Domain, its default data and default options for a built-in name.
fn builtin(name: BuiltinDomain, seed: u64) -> (Domain, BoundaryData, SolverOptions) {
    use scenarios::*;
    match name {
        BuiltinDomain::LShape => (l_shape(), BoundaryData::Uniform(DataFn::Re2), l_shape_options(Variant::Local)),
        BuiltinDomain::ThreeRectangles => {
            let d = three_rectangles();
            let data = three_rectangles_data(&d);
            (d, data, three_rectangles_options())
        }
        BuiltinDomain::Smooth => (smooth_domain(seed), smooth_data(), smooth_options()),
        BuiltinDomain::SquareWithBites => (square_with_bites(), BoundaryData::Uniform(DataFn::Re2), SolverOptions::default()),
        BuiltinDomain::SquareWithHole => {
            let d = square_with_hole();
            let data = square_with_hole_data(&d);
            (d, data, square_with_hole_options())
        }
        BuiltinDomain::Lens => (lens(), BoundaryData::Uniform(DataFn::ReZ), SolverOptions::default()),
        BuiltinDomain::TripleCircles => {
            let d = triple_circles();
            let data = triple_circles_data(&d);
            let opts = SolverOptions {
                variant: Variant::Global,
                ..Default::default()
            };
            (d, data, opts)
        }
    }
}

fn data_from_labels(desc: &DomainDescription) -> Result<BoundaryData> {
    let labels = desc.data_labels();
    let mut table = Vec::with_capacity(labels.len());
    for (ci, segs) in labels.iter().enumerate() {
        let mut row = Vec::with_capacity(segs.len());
        for (si, l) in segs.iter().enumerate() {
            let id = l.as_deref().ok_or_else(|| {
                Error::Parse(format!(
                    "component {ci}, segment {si} has no data id; give --data or add \"data\" to the domain file"
                ))
            })?;
            row.push(DataFn::parse(id).map_err(|e| Error::Parse(format!("component {ci}, segment {si}: {e}")))?);
        }
        table.push(row);
    }
    Ok(BoundaryData::PerSegment(table))
}

fn apply_flags(mut o: SolverOptions, f: &SolverFlags) -> Result<SolverOptions> {
    if !(f.tol > 0.0) {
        return Err(Error::Parse(format!("--tol must be positive, got {}", f.tol)));
    }
    o.aaa.tol = f.tol;
    if let Some(m) = f.max_degree {
        o.aaa.max_degree = m;
    }
    if f.degree.is_some() {
        o.degree = f.degree;
    }
    if let Some(v) = f.variant {
        o.variant = match v {
            VariantArg::Global => Variant::Global,
            VariantArg::Local => Variant::Local,
        };
    }
    if let Some(n) = f.samples_per_segment {
        o.samples_per_segment = n;
    }
    if let Some(a) = f.artificial_data {
        o.artificial_data = match a {
            ArtificialArg::Off => ArtificialData::Off,
            ArtificialArg::SqrtProduct => ArtificialData::SqrtProduct,
            ArtificialArg::Auto => ArtificialData::Auto,
        };
    }
    Ok(o)
}

/// The solution without its timings, which go to a separate file.
fn solution_json(sol: &HarmonicSolution) -> serde_json::Value {
    let mut v = serde_json::to_value(sol).expect("solutions serialize");
    if let Some(d) = v.get_mut("diagnostics").and_then(|d| d.as_object_mut()) {
        d.remove("timings");
    }
    v
}

fn boundary_error_table(d: &Domain, data: Option<&BoundaryData>, sol: &HarmonicSolution, n: usize, reference: Complex64) -> Result<Table> {
    let mut t = Table::new(&["re", "im", "component", "angle", "error"]);
    let Some(data) = data else { return Ok(t) };
    let mut s = sample_boundary(d, 3 * n, &Default::default())?;
    s.h = data.eval(&s)?;
    let u = sol.eval_u(&s.z);
    for i in 0..s.len() {
        let z = s.z[i];
        t.push(vec![z.re, z.im, s.component[i] as f64, (z - reference).arg(), (u[i] - s.h[i]).abs()]);
    }
    Ok(t)
}

fn grid_table(d: &Domain, sol: &HarmonicSolution, (nx, ny): (usize, usize)) -> Table {
    let pad = if d.is_bounded() { 0.0 } else { 0.25 * d.scale() };
    let half = 0.5 * d.scale() + pad;
    let c = d.centroid();
    let mut t = Table::new(&["x", "y", "u"]);
    for j in 0..ny {
        for i in 0..nx {
            let z = Complex64::new(
                c.re - half + 2.0 * half * i as f64 / (nx - 1) as f64,
                c.im - half + 2.0 * half * j as f64 / (ny - 1) as f64,
            );
            let u = if d.contains(z) { sol.eval_u(&[z])[0] } else { f64::NAN };
            t.push(vec![z.re, z.im, u]);
        }
    }
    t
}

fn print_solution_summary(sol: &HarmonicSolution, wall: f64) {
    let dg = &sol.diagnostics;
    println!("poles kept: {}, discarded: {}", dg.poles_kept, dg.poles_discarded);
    println!("matrix: {} x {}", dg.layout.rows, dg.layout.cols);
    println!("boundary error: {}", fmt_f64(dg.boundary_error));
    if let Some(v) = dg.validation_error {
        println!("validation error: {}", fmt_f64(v));
    }
    println!("wall time: {wall:.3} s");
}

fn cmd_solve(a: &SolveArgs) -> Result<Warnings> {
    let (d, desc, base_data, base_opts) = match (&a.domain, a.builtin) {
        (Some(p), _) => {
            let (d, desc) = load_domain(p)?;
            (d, Some(desc), None, SolverOptions::default())
        }
        (None, Some(b)) => {
            let (d, data, o) = builtin(b, scenarios::SMOOTH_SEED);
            (d, None, Some(data), o)
        }
        (None, None) => return Err(Error::Parse("a domain file or --builtin is required".into())),
    };
    let opts = apply_flags(base_opts, &a.solver)?;
    let t0 = Instant::now();
    let (sol, data) = if let Some(csv) = &a.data_csv {
        let cols = read_csv_columns(csv, 3)?;
        let z: Vec<Complex64> = cols[0].iter().zip(&cols[1]).map(|(&x, &y)| Complex64::new(x, y)).collect();
        let mut s = samples_at(&d, &z).map_err(|e| in_file(csv, e))?;
        s.h = cols[2].clone();
        (laplace::solve_samples(&d, &s, &opts)?, None)
    } else {
        let data = match (&a.data, &desc, base_data) {
            (Some(id), Some(desc), _) if id == "const-per-component" => data_from_labels(desc)?,
            (Some(id), _, _) if id != "const-per-component" => BoundaryData::Uniform(DataFn::parse(id)?),
            (_, _, Some(data)) => data,
            (_, Some(desc), None) => data_from_labels(desc)?,
            _ => return Err(Error::Parse("no boundary data given".into())),
        };
        (laplace::solve(&d, &data, &opts)?, Some(data))
    };
    let wall = t0.elapsed().as_secs_f64();
    print_solution_summary(&sol, wall);
    for z in &a.eval {
        let u = sol.eval_u(&[*z])[0];
        println!("u({}, {}) = {}", fmt_f64(z.re), fmt_f64(z.im), fmt_f64(u));
    }
    if let Some(dir) = out_dir(&a.output.out)? {
        write_json(&dir.join("solution.json"), &solution_json(&sol))?;
        write_json(&dir.join("timings.json"), &sol.diagnostics.timings)?;
        let reference = a.angle_ref.unwrap_or(d.centroid());
        boundary_error_table(&d, data.as_ref(), &sol, opts.samples_per_segment, reference)?.write(&dir.join("boundary_error.csv"))?;
        if let Some(g) = a.grid {
            grid_table(&d, &sol, g).write(&dir.join("grid.csv"))?;
        }
        if !a.eval.is_empty() {
            let mut t = Table::new(&["re", "im", "u"]);
            for z in &a.eval {
                t.push(vec![z.re, z.im, sol.eval_u(&[*z])[0]]);
            }
            t.write(&dir.join("values.csv"))?;
        }
    }
    Ok(sol.diagnostics.warnings.clone())
}

#[derive(Serialize)]
struct ApproxReport<'a> {
    function: String,
    samples: usize,
    max_error: Option<f64>,
    sample_error: f64,
    poles_kept: usize,
    poles_discarded: usize,
    poles_on_interval: usize,
    degrees_of_freedom: usize,
    approximation: &'a interval::IntervalApprox,
}

fn cmd_approx(a: &ApproxArgs) -> Result<Warnings> {
    let mut aaa = AaaOptions {
        tol: a.tol,
        ..Default::default()
    };
    if let Some(m) = a.max_degree {
        aaa.max_degree = m;
    }
    let opts = IntervalOptions {
        aaa,
        degree: a.degree,
        window: a.window,
        ..Default::default()
    };
    let chebyshev = |n: usize| -> Vec<f64> { (0..n).map(|k| (std::f64::consts::PI * k as f64 / (n - 1) as f64).cos()).collect() };
    type Exact = Option<fn(f64) -> f64>;
    let (name, x, f, sing, exact): (String, Vec<f64>, Vec<f64>, Vec<f64>, Exact) = match &a.csv {
        Some(p) => {
            let cols = read_csv_columns(p, 2)?;
            (p.display().to_string(), cols[0].clone(), cols[1].clone(), a.singularities.clone(), None)
        }
        None => {
            let (x, g, s): (Vec<f64>, fn(f64) -> f64, Vec<f64>) = match a.function {
                ApproxFunction::Zigzag => (interval::zigzag_grid(), interval::zigzag, interval::zigzag_singularities()),
                ApproxFunction::Constant => (chebyshev(1000), |_| 1.0, vec![]),
                ApproxFunction::Pole => (chebyshev(1000), |x| 1.0 / (x - 2.0), vec![]),
            };
            let f = x.iter().map(|&v| g(v)).collect();
            (format!("{:?}", a.function).to_lowercase(), x, f, s, Some(g))
        }
    };
    let t0 = Instant::now();
    let ap = interval::approximate(&x, &f, &sing, &opts)?;
    let wall = t0.elapsed().as_secs_f64();
    let fine: Vec<f64> = (0..10_000).map(|k| -1.0 + 2.0 * k as f64 / 9999.0).collect();
    let mut errors = Table::new(&["x", "f", "approx", "error"]);
    let max_error = exact.map(|g| {
        let y = ap.eval_many(&fine);
        let mut m = 0.0_f64;
        for (xi, yi) in fine.iter().zip(&y) {
            let e = (yi - g(*xi)).abs();
            m = m.max(e);
            errors.push(vec![*xi, g(*xi), *yi, e]);
        }
        m
    });
    let on = ap.poles_on_interval(opts.interval);
    println!("function: {name}");
    println!("poles kept: {}, discarded: {}", ap.poles.len(), ap.discarded.len());
    println!("poles on [{}, {}]: {on}", opts.interval.0, opts.interval.1);
    println!("degrees of freedom: {}", ap.degrees_of_freedom);
    if let Some(m) = max_error {
        println!("max error on 10000 points: {}", fmt_f64(m));
    }
    println!("max error on samples: {}", fmt_f64(ap.sample_error));
    println!("wall time: {wall:.3} s");
    let report = ApproxReport {
        function: name,
        samples: x.len(),
        max_error,
        sample_error: ap.sample_error,
        poles_kept: ap.poles.len(),
        poles_discarded: ap.discarded.len(),
        poles_on_interval: on,
        degrees_of_freedom: ap.degrees_of_freedom,
        approximation: &ap,
    };
    if let Some(dir) = out_dir(&a.output.out)? {
        write_json(&dir.join("approx.json"), &report)?;
        if max_error.is_some() {
            errors.write(&dir.join("errors.csv"))?;
        }
        let mut poles = Table::new(&["re", "im", "discarded"]);
        for p in &ap.poles {
            poles.push(vec![p.re, p.im, 0.0]);
        }
        for p in &ap.discarded {
            poles.push(vec![p.re, p.im, 1.0]);
        }
        poles.write(&dir.join("poles.csv"))?;
    }
    let warnings = ap
        .fits
        .iter()
        .filter(|f| !f.converged)
        .map(|f| format!("AAA fit {} stopped at the degree cap", f.corner.map_or("global".into(), |k| k.to_string())))
        .collect();
    Ok(warnings)
}

#[derive(Debug, Clone, Serialize)]
pub struct HilbertRow {
    pub function: String,
    pub v_at_two: f64,
    pub reference: f64,
    pub difference: f64,
    pub reference_error: f64,
    pub poles: usize,
    pub poles_discarded: usize,
    pub boundary_error: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct GradeRow {
    pub grade: usize,
    pub points: usize,
    pub poles: usize,
    pub max_error: f64,
}

/// Error of the abs-exp transform on graded grids, measured at 1000
/// points of `[-5, 5]` against the closed form.
pub fn hilbert_grade_study(grades: &[usize], opts: &HilbertOptions) -> Result<Vec<GradeRow>> {
    let test: Vec<f64> = (0..1000).map(|k| -5.0 + 10.0 * k as f64 / 999.0).collect();
    grades
        .iter()
        .map(|&l| {
            let y = graded_grid(l);
            let u: Vec<f64> = y.iter().map(|&x| HilbertFunction::AbsExp.eval(x)).collect();
            let h = hilbert_transform(&y, &u, opts)?;
            let max_error = test.iter().map(|&t| (h.eval_v(t) - abs_exp_conjugate(t)).abs()).fold(0.0, f64::max);
            Ok(GradeRow {
                grade: l,
                points: y.len(),
                poles: h.poles.len(),
                max_error,
            })
        })
        .collect()
}

/// The seven built-in functions at `y = 2` against the published values.
pub fn hilbert_table(funcs: &[HilbertFunction], opts: &HilbertOptions) -> Result<Vec<HilbertRow>> {
    funcs
        .iter()
        .map(|&f| {
            let h = hilbert_builtin(f, opts)?;
            let v = h.eval_v(2.0);
            let (reference, reference_error) = f.reference_at_two();
            Ok(HilbertRow {
                function: f.id().into(),
                v_at_two: v,
                reference,
                difference: v - reference,
                reference_error,
                poles: h.poles.len(),
                poles_discarded: h.poles_discarded,
                boundary_error: h.boundary_error,
            })
        })
        .collect()
}

fn write_hilbert_csv(rows: &[HilbertRow], path: &Path) -> Result<()> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| Error::Io(e.into());
    w.write_record(["function", "v_at_two", "reference", "difference", "reference_error", "poles"]).map_err(io)?;
    for r in rows {
        w.write_record([
            r.function.clone(),
            fmt_f64(r.v_at_two),
            fmt_f64(r.reference),
            fmt_f64(r.difference),
            fmt_f64(r.reference_error),
            r.poles.to_string(),
        ])
        .map_err(io)?;
    }
    fs::write(path, w.into_inner().map_err(|e| Error::Io(e.into_error()))?)?;
    Ok(())
}

fn grades_table(rows: &[GradeRow]) -> Table {
    let mut t = Table::new(&["grade", "points", "poles", "max_error"]);
    for r in rows {
        t.push(vec![r.grade as f64, r.points as f64, r.poles as f64, r.max_error]);
    }
    t
}

fn cmd_hilbert(a: &HilbertArgs) -> Result<Warnings> {
    let dir = out_dir(&a.output.out)?;
    let opts_with = |tol: f64| -> Result<HilbertOptions> {
        if !(tol > 0.0) {
            return Err(Error::Parse(format!("--tol must be positive, got {tol}")));
        }
        let mut aaa = AaaOptions { tol, ..Default::default() };
        if let Some(m) = a.max_degree {
            aaa.max_degree = m;
        }
        Ok(HilbertOptions { aaa })
    };
    if let Some(p) = &a.csv {
        let cols = read_csv_columns(p, 2)?;
        let opts = opts_with(a.tol.unwrap_or(1e-8))?;
        let h = hilbert_transform(&cols[0], &cols[1], &opts)?;
        println!("poles kept: {}, discarded: {}", h.poles.len(), h.poles_discarded);
        println!("boundary error: {}", fmt_f64(h.boundary_error));
        let pts = if a.eval.is_empty() { vec![2.0] } else { a.eval.clone() };
        let mut t = Table::new(&["y", "v"]);
        for y in pts {
            let v = h.eval_v(y);
            println!("v({}) = {}", fmt_f64(y), fmt_f64(v));
            t.push(vec![y, v]);
        }
        if let Some(dir) = dir {
            write_json(&dir.join("hilbert.json"), &h)?;
            t.write(&dir.join("values.csv"))?;
        }
        return Ok(Vec::new());
    }
    if let Some(g) = &a.grades {
        let grades = parse_grades(g)?;
        let funcs: Vec<&str> = a.function.iter().map(String::as_str).collect();
        if funcs != ["all"] && funcs != ["abs-exp"] {
            return Err(Error::Parse("--grades is only defined for --function abs-exp".into()));
        }
        let opts = opts_with(a.tol.unwrap_or(1e-10))?;
        let rows = hilbert_grade_study(&grades, &opts)?;
        println!("{:>5} {:>7} {:>6} {:>24}", "grade", "points", "poles", "max error on [-5, 5]");
        for r in &rows {
            println!("{:>5} {:>7} {:>6} {:>24}", r.grade, r.points, r.poles, fmt_f64(r.max_error));
        }
        if let Some(dir) = dir {
            grades_table(&rows).write(&dir.join("grades.csv"))?;
        }
        return Ok(Vec::new());
    }
    let funcs: Vec<HilbertFunction> = if a.function.iter().any(|f| f == "all") {
        HilbertFunction::ALL.to_vec()
    } else {
        a.function.iter().map(|f| HilbertFunction::parse(f)).collect::<Result<_>>()?
    };
    let opts = opts_with(a.tol.unwrap_or(1e-8))?;
    let t0 = Instant::now();
    let rows = hilbert_table(&funcs, &opts)?;
    let wall = t0.elapsed().as_secs_f64();
    println!("{:<8} {:>24} {:>24} {:>24} {:>6}", "function", "v(2)", "published", "difference", "poles");
    for r in &rows {
        println!(
            "{:<8} {:>24} {:>24} {:>24} {:>6}",
            r.function,
            fmt_f64(r.v_at_two),
            fmt_f64(r.reference),
            fmt_f64(r.difference),
            r.poles
        );
    }
    println!("wall time: {wall:.3} s");
    if let Some(dir) = dir {
        write_json(&dir.join("hilbert.json"), &rows)?;
        write_hilbert_csv(&rows, &dir.join("table.csv"))?;
    }
    Ok(Vec::new())
}

fn cmd_confmap(a: &ConfmapArgs) -> Result<Warnings> {
    let d = match (&a.domain, a.builtin) {
        (Some(p), _) => load_domain(p)?.0,
        (None, Some(b)) => builtin(b, a.domain_seed).0,
        (None, None) => return Err(Error::Parse("a domain file or --builtin is required".into())),
    };
    let mut opts = ConformalOptions {
        compression_tol: a.compression_tol,
        test_points: a.test_points,
        seed: a.seed,
        ..Default::default()
    };
    opts.solver.aaa.tol = a.tol;
    opts.solver.samples_per_segment = a.samples_per_segment;
    opts.solver.degree = a.degree;
    if let Some(m) = a.max_degree {
        opts.solver.aaa.max_degree = m;
    }
    let t0 = Instant::now();
    let map = conformal_map(&d, &opts)?;
    let wall = t0.elapsed().as_secs_f64();
    let dg = &map.diagnostics;
    println!("laplace boundary error: {}", fmt_f64(dg.laplace_error));
    println!("forward map: degree {}, fit error {}", map.forward.degree(), fmt_f64(dg.forward_fit_error));
    println!(
        "inverse map: {} poles ({} discarded), fit error {}",
        map.inverse.poles.len(),
        dg.inverse_poles_discarded,
        fmt_f64(dg.inverse_fit_error)
    );
    println!("round trip on {} disk points: {}", dg.roundtrip_points, fmt_f64(dg.roundtrip_error));
    println!("wall time: {wall:.3} s");
    if let Some(dir) = out_dir(&a.output.out)? {
        write_json(&dir.join("confmap.json"), &map)?;
    }
    Ok(dg.warnings.clone())
}

fn poles_table(kept: &[Complex64], discarded: &[Complex64]) -> Table {
    let mut t = Table::new(&["re", "im", "kept"]);
    for p in kept {
        t.push(vec![p.re, p.im, 1.0]);
    }
    for p in discarded {
        t.push(vec![p.re, p.im, 0.0]);
    }
    t
}

fn demo_solution(dir: &Path, tag: &str, d: &Domain, data: &BoundaryData, opts: &SolverOptions, reference: Complex64) -> Result<HarmonicSolution> {
    let sol = laplace::solve(d, data, opts)?;
    poles_table(&sol.basis.poles, &sol.diagnostics.discarded).write(&dir.join(format!("{tag}_poles.csv")))?;
    boundary_error_table(d, Some(data), &sol, opts.samples_per_segment, reference)?.write(&dir.join(format!("{tag}_error.csv")))?;
    write_json(&dir.join(format!("{tag}_solution.json")), &solution_json(&sol))?;
    println!(
        "{tag}: {} poles kept, {} discarded, boundary error {}, validation error {}, {:.2} s",
        sol.diagnostics.poles_kept,
        sol.diagnostics.poles_discarded,
        fmt_f64(sol.diagnostics.boundary_error),
        sol.diagnostics.validation_error.map_or("-".into(), fmt_f64),
        sol.diagnostics.timings.total
    );
    Ok(sol)
}

fn cmd_demo(a: &DemoArgs) -> Result<Warnings> {
    use scenarios::*;
    let dir = a.out.as_path();
    fs::create_dir_all(dir)?;
    let all = a.name == DemoName::All;
    let want = |n: DemoName| all || a.name == n;
    let mut warnings = Vec::new();
    let mut summary = serde_json::Map::new();

    if want(DemoName::Lshape) {
        let d = l_shape();
        let data = BoundaryData::Uniform(DataFn::Re2);
        for (tag, v) in [("lshape_global", Variant::Global), ("lshape_local", Variant::Local)] {
            let sol = demo_solution(dir, tag, &d, &data, &l_shape_options(v), Complex64::new(0.5, 0.5))?;
            let u = sol.eval_u(&[L_SHAPE_POINT])[0];
            println!("{tag}: u(0.99+0.99i) = {}, difference {}", fmt_f64(u), fmt_f64(u - L_SHAPE_VALUE));
            summary.insert(tag.into(), serde_json::json!({ "u": u, "difference": u - L_SHAPE_VALUE }));
            warnings.extend(sol.diagnostics.warnings.iter().map(|w| format!("{tag}: {w}")));
        }
    }
    if want(DemoName::Smooth) {
        let d = smooth_domain(a.seed);
        let sol = demo_solution(dir, "smooth", &d, &smooth_data(), &smooth_options(), Complex64::new(0.0, 0.0))?;
        grid_table(&d, &sol, (101, 101)).write(&dir.join("smooth_grid.csv"))?;
        warnings.extend(sol.diagnostics.warnings.iter().map(|w| format!("smooth: {w}")));
    }
    if want(DemoName::ThreeRectangles) {
        let d = three_rectangles();
        let sol = demo_solution(dir, "three_rectangles", &d, &three_rectangles_data(&d), &three_rectangles_options(), Complex64::new(1.0, 0.0))?;
        let u = sol.eval_u(&[Complex64::new(1.0, 0.0)])[0];
        let l = &sol.diagnostics.layout;
        println!("three_rectangles: u(1) = {}, matrix {} x {}", fmt_f64(u), l.rows, l.cols);
        summary.insert("three_rectangles".into(), serde_json::json!({ "u_at_1": u, "rows": l.rows, "cols": l.cols }));
        warnings.extend(sol.diagnostics.warnings.iter().map(|w| format!("three_rectangles: {w}")));
    }
    if want(DemoName::Corners) {
        let d = square_with_bites();
        let sol = demo_solution(dir, "bites", &d, &BoundaryData::Uniform(DataFn::Re2), &SolverOptions::default(), Complex64::new(0.0, 0.0))?;
        warnings.extend(sol.diagnostics.warnings.iter().map(|w| format!("bites: {w}")));
        let d = square_with_hole();
        let sol = demo_solution(dir, "square_hole", &d, &square_with_hole_data(&d), &square_with_hole_options(), Complex64::new(0.0, 0.0))?;
        warnings.extend(sol.diagnostics.warnings.iter().map(|w| format!("square_hole: {w}")));
    }
    if want(DemoName::Zigzag) {
        let x = interval::zigzag_grid();
        let f: Vec<f64> = x.iter().map(|&v| interval::zigzag(v)).collect();
        let ap = interval::approximate(&x, &f, &interval::zigzag_singularities(), &IntervalOptions::default())?;
        poles_table(&ap.poles, &ap.discarded).write(&dir.join("zigzag_poles.csv"))?;
        let mut t = Table::new(&["x", "error"]);
        let mut m = 0.0_f64;
        for k in 0..10_000 {
            let xi = -1.0 + 2.0 * k as f64 / 9999.0;
            let e = (ap.eval(xi) - interval::zigzag(xi)).abs();
            m = m.max(e);
            t.push(vec![xi, e]);
        }
        t.write(&dir.join("zigzag_error.csv"))?;
        println!(
            "zigzag: {} poles kept, {} discarded, {} on [-1, 1], {} degrees of freedom, max error {}",
            ap.poles.len(),
            ap.discarded.len(),
            ap.poles_on_interval((-1.0, 1.0)),
            ap.degrees_of_freedom,
            fmt_f64(m)
        );
        summary.insert("zigzag".into(), serde_json::json!({ "max_error": m, "poles": ap.poles.len() }));
    }
    if want(DemoName::Lens) {
        let d = lens();
        let s = sample_boundary(&d, 600, &Default::default())?;
        let cases: [(&str, Vec<Complex64>); 2] = [
            ("lens_too_many", s.z.iter().map(|z| Complex64::new(z.re, 0.0)).collect()),
            ("lens_too_few", s.z.iter().map(|&z| lens_slit_map(z)).collect()),
        ];
        for (tag, f) in cases {
            let r = aaa_fit(&s.z, &f, &AaaOptions::default())?;
            let (inside, outside): (Vec<Complex64>, Vec<Complex64>) = r.poles.poles.iter().partition(|p| d.contains(**p));
            poles_table(&outside, &inside).write(&dir.join(format!("{tag}_poles.csv")))?;
            let largest = r.poles.poles.iter().map(|p| p.norm()).fold(0.0, f64::max);
            println!(
                "{tag}: {} poles inside, {} outside, largest |pole| {}",
                inside.len(),
                outside.len(),
                fmt_f64(largest)
            );
            summary.insert(tag.into(), serde_json::json!({ "inside": inside.len(), "outside": outside.len(), "largest": largest }));
        }
    }
    if want(DemoName::TripleCircles) {
        let d = triple_circles();
        let data = triple_circles_data(&d);
        let mut s = sample_boundary(&d, 600, &Default::default())?;
        s.h = data.eval(&s)?;
        let f: Vec<Complex64> = s.h.iter().map(|&v| Complex64::new(v, 0.0)).collect();
        let r = aaa_fit(&s.z, &f, &AaaOptions::default())?;
        let (inside, outside): (Vec<Complex64>, Vec<Complex64>) = r.poles.poles.iter().partition(|p| d.contains(**p));
        poles_table(&outside, &inside).write(&dir.join("triple_circles_poles.csv"))?;
        println!(
            "triple_circles: global AAA error {}, {} poles inside the domain, {} outside",
            fmt_f64(r.max_error),
            inside.len(),
            outside.len()
        );
        summary.insert("triple_circles".into(), serde_json::json!({ "inside": inside.len(), "outside": outside.len() }));
    }
    if want(DemoName::HilbertGrades) {
        let opts = HilbertOptions {
            aaa: AaaOptions {
                tol: 1e-10,
                ..Default::default()
            },
        };
        let rows = hilbert_grade_study(&[1, 2, 3, 4, 5, 6], &opts)?;
        grades_table(&rows).write(&dir.join("hilbert_grades.csv"))?;
        for r in &rows {
            println!("hilbert grade {}: {} points, error {}", r.grade, r.points, fmt_f64(r.max_error));
        }
        let table = hilbert_table(&HilbertFunction::ALL, &HilbertOptions::default())?;
        write_hilbert_csv(&table, &dir.join("hilbert_table.csv"))?;
    }
    if want(DemoName::Confmap) {
        let d = smooth_domain(a.seed);
        let map = conformal_map(&d, &ConformalOptions::default())?;
        // images of circles and radii of the disk under the inverse map
        let mut t = Table::new(&["w_re", "w_im", "z_re", "z_im"]);
        let mut w = Vec::new();
        for k in 1..=9 {
            let r = k as f64 / 10.0;
            w.extend((0..=400).map(|j| Complex64::from_polar(r, std::f64::consts::TAU * j as f64 / 400.0)));
        }
        for k in 0..16 {
            let th = std::f64::consts::TAU * k as f64 / 16.0;
            w.extend((0..=100).map(|j| Complex64::from_polar(j as f64 / 100.0, th)));
        }
        for (wi, zi) in w.iter().zip(map.inverse.eval_many(&w)) {
            t.push(vec![wi.re, wi.im, zi.re, zi.im]);
        }
        t.write(&dir.join("confmap_grid.csv"))?;
        write_json(&dir.join("confmap.json"), &map)?;
        println!(
            "confmap: round trip {} on {} points, forward degree {}, inverse poles {}",
            fmt_f64(map.diagnostics.roundtrip_error),
            map.diagnostics.roundtrip_points,
            map.forward.degree(),
            map.inverse.poles.len()
        );
        warnings.extend(map.diagnostics.warnings.iter().map(|w| format!("confmap: {w}")));
    }
    write_json(&dir.join("summary.json"), &summary)?;
    Ok(warnings)
}

/// JSON text of a value with 16 significant digits; re-exported for callers
/// that print results instead of writing files.
pub fn json<T: Serialize + ?Sized>(value: &T) -> String {
    to_json(value)
}
