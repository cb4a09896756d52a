//! Dirichlet problems for the Laplace equation by rational least squares.
//!
//! Poles come from AAA fits to boundary data, either one global fit or one
//! fit per corner. Poles inside the closed domain are dropped and the rest
//! enter a real least-squares problem for `u = Re f (+ log terms)`.

use std::fmt;
use std::sync::Arc;
use std::time::Instant;

use faer::Mat;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::aaa::{aaa_fit, local_aaa, AaaOptions, AaaResult};
use crate::arnoldi::{va_eval, va_orthog, ArnoldiBasis, CenterMap};
use crate::error::{Error, Result};
use crate::geometry::{sample_boundary, Clustering, Domain, SampleSet};
use crate::linalg::lstsq_regularized;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Variant {
    Global,
    Local,
}

/// Replacement data for the pole-finding AAA step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ArtificialData {
    Off,
    SqrtProduct,
    /// Switch to `SqrtProduct` when the data are constant on every component.
    Auto,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolverOptions {
    pub variant: Variant,
    pub aaa: AaaOptions,
    /// Polynomial degree per center; `None` picks by domain type.
    pub degree: Option<usize>,
    pub artificial_data: ArtificialData,
    pub samples_per_segment: usize,
    pub clustering: Clustering,
    /// Check the fit on a boundary grid three times finer.
    pub validate: bool,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self {
            variant: Variant::Local,
            aaa: AaaOptions::default(),
            degree: None,
            artificial_data: ArtificialData::Auto,
            samples_per_segment: 600,
            clustering: Clustering::default(),
            validate: true,
        }
    }
}

impl SolverOptions {
    pub fn default_degree(d: &Domain) -> usize {
        if !d.is_bounded() {
            10
        } else if d.is_simply_connected() {
            20
        } else {
            40
        }
    }

    fn degree_for(&self, d: &Domain) -> usize {
        self.degree.unwrap_or_else(|| Self::default_degree(d))
    }
}

/// Built-in boundary data.
#[derive(Clone)]
pub enum DataFn {
    /// `(Re z)^2`
    Re2,
    /// `Re z`
    ReZ,
    /// `-log |z|`
    NegLogAbs,
    Const(f64),
    Custom(Arc<dyn Fn(Complex64) -> f64 + Send + Sync>),
}

impl fmt::Debug for DataFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DataFn::Re2 => write!(f, "re2"),
            DataFn::ReZ => write!(f, "rez"),
            DataFn::NegLogAbs => write!(f, "neglogabs"),
            DataFn::Const(v) => write!(f, "const:{v}"),
            DataFn::Custom(_) => write!(f, "custom"),
        }
    }
}

impl DataFn {
    /// Parses `re2`, `rez`, `neglogabs` or `const:<value>`.
    pub fn parse(id: &str) -> Result<Self> {
        match id.trim() {
            "re2" => Ok(DataFn::Re2),
            "rez" => Ok(DataFn::ReZ),
            "neglogabs" => Ok(DataFn::NegLogAbs),
            s => match s.strip_prefix("const:") {
                Some(v) => v
                    .trim()
                    .parse::<f64>()
                    .ok()
                    .filter(|x| x.is_finite())
                    .map(DataFn::Const)
                    .ok_or_else(|| Error::Parse(format!("bad constant in data id {id:?}"))),
                None => Err(Error::Parse(format!(
                    "unknown data id {id:?}; expected re2, rez, neglogabs or const:<value>"
                ))),
            },
        }
    }

    pub fn custom(f: impl Fn(Complex64) -> f64 + Send + Sync + 'static) -> Self {
        DataFn::Custom(Arc::new(f))
    }

    pub fn eval(&self, z: Complex64) -> f64 {
        match self {
            DataFn::Re2 => z.re * z.re,
            DataFn::ReZ => z.re,
            DataFn::NegLogAbs => -z.norm().ln(),
            DataFn::Const(v) => *v,
            DataFn::Custom(f) => f(z),
        }
    }
}

/// Dirichlet data on the whole boundary.
#[derive(Debug, Clone)]
pub enum BoundaryData {
    Uniform(DataFn),
    /// Indexed by component, then segment.
    PerSegment(Vec<Vec<DataFn>>),
}

impl BoundaryData {
    pub fn per_component(values: Vec<DataFn>, d: &Domain) -> Self {
        BoundaryData::PerSegment(
            values
                .into_iter()
                .zip(d.components())
                .map(|(v, c)| vec![v; c.segments().len()])
                .collect(),
        )
    }

    pub fn eval(&self, samples: &SampleSet) -> Result<Vec<f64>> {
        (0..samples.len())
            .map(|i| {
                let f = match self {
                    BoundaryData::Uniform(f) => f,
                    BoundaryData::PerSegment(table) => table
                        .get(samples.component[i])
                        .and_then(|segs| segs.get(samples.segment[i]))
                        .ok_or_else(|| {
                            Error::DimensionMismatch(format!(
                                "no data for component {} segment {}",
                                samples.component[i], samples.segment[i]
                            ))
                        })?,
                };
                let v = f.eval(samples.z[i]);
                if v.is_finite() {
                    Ok(v)
                } else {
                    Err(Error::InvalidInput(format!("boundary data not finite at {}", samples.z[i])))
                }
            })
            .collect()
    }
}

/// One AAA fit of the pole-finding stage.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitSummary {
    /// Corner index for local fits, `None` for the global fit.
    pub corner: Option<usize>,
    pub samples: usize,
    pub support_points: usize,
    pub poles: usize,
    pub max_error: f64,
    pub converged: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PoleChoice {
    pub kept: Vec<Complex64>,
    pub discarded: Vec<Complex64>,
    /// Fits with a pole pair closer than the near-double threshold.
    pub near_double_fits: usize,
    pub artificial_data: bool,
    pub fits: Vec<FitSummary>,
    pub warnings: Vec<String>,
}

fn data_constant_per_component(samples: &SampleSet, n_components: usize) -> bool {
    let scale = samples.h.iter().fold(1.0_f64, |m, v| m.max(v.abs()));
    (0..n_components).all(|c| {
        let vals = samples.h.iter().zip(&samples.component).filter(|(_, &k)| k == c).map(|(v, _)| *v);
        let (lo, hi) = vals.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)));
        !(hi - lo > 1e-14 * scale)
    })
}

fn summarize(corner: Option<usize>, samples: usize, r: &AaaResult) -> FitSummary {
    FitSummary {
        corner,
        samples,
        support_points: r.r.support().len(),
        poles: r.poles.len(),
        max_error: r.max_error,
        converged: r.converged,
    }
}

/// AAA pole selection followed by removal of poles in the closed domain.
pub fn choose_poles(d: &Domain, samples: &SampleSet, opts: &SolverOptions) -> Result<PoleChoice> {
    if samples.is_empty() {
        return Err(Error::InvalidInput("no boundary samples".into()));
    }
    let has_corners = !d.corners().is_empty();
    let artificial = has_corners
        && match opts.artificial_data {
            ArtificialData::Off => false,
            ArtificialData::SqrtProduct => true,
            ArtificialData::Auto => data_constant_per_component(samples, d.components().len()),
        };
    let data: Vec<Complex64> = if artificial {
        d.artificial_corner_data(&samples.z)?
            .into_iter()
            .map(|v| Complex64::new(v, 0.0))
            .collect()
    } else {
        samples.h.iter().map(|&v| Complex64::new(v, 0.0)).collect()
    };

    let mut warnings = Vec::new();
    let mut fits = Vec::new();
    let mut all_poles = Vec::new();
    let mut near_double = 0;
    match opts.variant {
        Variant::Global => {
            let r = aaa_fit(&samples.z, &data, &opts.aaa)?;
            fits.push(summarize(None, samples.len(), &r));
            near_double += usize::from(r.poles.near_double);
            all_poles.extend(r.poles.poles);
        }
        Variant::Local => {
            let groups = samples.corner_indices()?;
            let n_corners = d.corners().len();
            let results = local_aaa(&samples.z, &data, &groups, n_corners, &opts.aaa)?;
            for (k, r) in results.into_iter().enumerate() {
                let count = groups.iter().filter(|&&g| g == k).count();
                fits.push(summarize(Some(k), count, &r));
                near_double += usize::from(r.poles.near_double);
                all_poles.extend(r.poles.poles);
            }
        }
    }
    for f in &fits {
        if !f.converged {
            warnings.push(match f.corner {
                Some(k) => format!("local AAA fit at corner {k} stopped at the degree cap"),
                None => "global AAA fit stopped at the degree cap".into(),
            });
        }
    }
    let (kept, discarded): (Vec<Complex64>, Vec<Complex64>) =
        all_poles.into_iter().partition(|p| p.re.is_finite() && p.im.is_finite() && !d.in_closure(*p));
    if kept.is_empty() && has_corners {
        warnings.push("no poles retained although the domain has corners".into());
    }
    Ok(PoleChoice {
        kept,
        discarded,
        near_double_fits: near_double,
        artificial_data: artificial,
        fits,
        warnings,
    })
}

/// How the logarithm columns are formed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LogPairing {
    /// One column `log|z - z_j|` per hole.
    Single,
    /// `log|z - z_j| - log|z - z_{j+1}|`, cyclically, so the coefficients
    /// sum to zero and infinity stays regular.
    Cyclic,
}

/// Columns of the least-squares problem.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LaplaceBasis {
    pub poles: Vec<Complex64>,
    /// `d_k = min |Z - p_k|`.
    pub scaling: Vec<f64>,
    pub polynomials: Vec<ArnoldiBasis>,
    pub log_centers: Vec<Complex64>,
    pub log_pairing: LogPairing,
}

/// Maps matrix columns back to basis elements.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColumnLayout {
    pub rows: usize,
    pub cols: usize,
    /// Columns per polynomial block (degree + 1).
    pub polynomial_blocks: Vec<usize>,
    pub poles: usize,
    pub logs: usize,
}

impl ColumnLayout {
    /// Complex coefficients: polynomial columns then poles.
    pub fn complex_len(&self) -> usize {
        self.polynomial_blocks.iter().sum::<usize>() + self.poles
    }
}

impl LaplaceBasis {
    /// Polynomial centers and log terms chosen from the domain type; the
    /// Arnoldi bases are orthogonalized on `z`.
    pub fn build(d: &Domain, z: &[Complex64], poles: Vec<Complex64>, degree: usize) -> Result<(Self, Vec<Mat<Complex64>>)> {
        let mut maps = Vec::new();
        if d.is_bounded() {
            maps.push(CenterMap::Identity);
        }
        let centers: Vec<Complex64> = if d.is_bounded() || !d.hole_centers().is_empty() {
            d.hole_centers().to_vec()
        } else {
            d.exterior_center().into_iter().collect()
        };
        maps.extend(centers.iter().map(|&c| CenterMap::Reciprocal { center: c }));
        let mut polynomials = Vec::with_capacity(maps.len());
        let mut qs = Vec::with_capacity(maps.len());
        for map in maps {
            let (b, q) = va_orthog(z, degree, map)?;
            polynomials.push(b);
            qs.push(q);
        }
        let scaling = poles
            .iter()
            .map(|p| z.iter().map(|zi| (zi - p).norm()).fold(f64::INFINITY, f64::min))
            .collect();
        let log_pairing = if d.is_bounded() { LogPairing::Single } else { LogPairing::Cyclic };
        let log_centers = if d.is_bounded() || centers.len() > 1 {
            centers
        } else {
            Vec::new()
        };
        Ok((
            Self {
                poles,
                scaling,
                polynomials,
                log_centers,
                log_pairing,
            },
            qs,
        ))
    }

    pub fn n_logs(&self) -> usize {
        self.log_centers.len()
    }

    fn log_column(&self, j: usize, z: Complex64) -> f64 {
        let a = (z - self.log_centers[j]).norm().ln();
        match self.log_pairing {
            LogPairing::Single => a,
            LogPairing::Cyclic => {
                let n = self.log_centers.len();
                a - (z - self.log_centers[(j + 1) % n]).norm().ln()
            }
        }
    }

    /// Complex basis functions at `w`: polynomial blocks then scaled poles.
    pub fn complex_columns(&self, w: &[Complex64]) -> Mat<Complex64> {
        let blocks: Vec<Mat<Complex64>> = self.polynomials.iter().map(|b| va_eval(w, b)).collect();
        self.assemble_complex(w, &blocks)
    }

    fn assemble_complex(&self, w: &[Complex64], blocks: &[Mat<Complex64>]) -> Mat<Complex64> {
        let npoly: usize = blocks.iter().map(|b| b.ncols()).sum();
        let n = npoly + self.poles.len();
        let mut out = Mat::<Complex64>::zeros(w.len(), n);
        let mut col = 0;
        for b in blocks {
            for j in 0..b.ncols() {
                for i in 0..w.len() {
                    out[(i, col)] = b[(i, j)];
                }
                col += 1;
            }
        }
        for (p, dk) in self.poles.iter().zip(&self.scaling) {
            for i in 0..w.len() {
                out[(i, col)] = dk / (w[i] - p);
            }
            col += 1;
        }
        out
    }

    /// Real matrix `[Re P, Re Q, -Im P, -Im Q, logs]` at the points `z`.
    ///
    /// `blocks` are the Arnoldi matrices at `z` when already known.
    pub fn assemble(&self, z: &[Complex64], blocks: Option<&[Mat<Complex64>]>) -> (Mat<f64>, ColumnLayout) {
        let c = match blocks {
            Some(b) => self.assemble_complex(z, b),
            None => self.complex_columns(z),
        };
        let n = c.ncols();
        let nl = self.n_logs();
        let a = Mat::<f64>::from_fn(z.len(), 2 * n + nl, |i, j| {
            if j < n {
                c[(i, j)].re
            } else if j < 2 * n {
                -c[(i, j - n)].im
            } else {
                self.log_column(j - 2 * n, z[i])
            }
        });
        let layout = ColumnLayout {
            rows: z.len(),
            cols: 2 * n + nl,
            polynomial_blocks: self.polynomials.iter().map(|b| b.degree() + 1).collect(),
            poles: self.poles.len(),
            logs: nl,
        };
        (a, layout)
    }
}

/// Convenience wrapper around [`LaplaceBasis::assemble`].
pub fn assemble_matrix(samples: &SampleSet, basis: &LaplaceBasis) -> (Mat<f64>, ColumnLayout) {
    basis.assemble(&samples.z, None)
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Timings {
    pub sampling: f64,
    pub aaa: f64,
    pub least_squares: f64,
    pub validation: f64,
    pub total: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Diagnostics {
    /// `max |u(Z) - H|` on the solve grid.
    pub boundary_error: f64,
    /// Same on the finer validation grid, when it was run.
    pub validation_error: Option<f64>,
    pub residual: f64,
    pub rank: usize,
    pub layout: ColumnLayout,
    pub poles_kept: usize,
    pub poles_discarded: usize,
    pub discarded: Vec<Complex64>,
    pub near_double_fits: usize,
    pub artificial_data: bool,
    pub fits: Vec<FitSummary>,
    pub warnings: Vec<String>,
    /// Wall-clock seconds; not deterministic.
    pub timings: Timings,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HarmonicSolution {
    pub basis: LaplaceBasis,
    /// Coefficients of the complex columns.
    pub coefficients: Vec<Complex64>,
    /// Real coefficients of the log columns.
    pub log_coefficients: Vec<f64>,
    pub diagnostics: Diagnostics,
}

/// Compensated (Neumaier) summation.
#[derive(Default)]
struct Neumaier {
    sum: f64,
    carry: f64,
}

impl Neumaier {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry += (self.sum - t) + x;
        } else {
            self.carry += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn sum(&self) -> f64 {
        self.sum + self.carry
    }
}

impl HarmonicSolution {
    /// Analytic part `f`; the log terms are not included.
    pub fn eval_f(&self, z: &[Complex64]) -> Vec<Complex64> {
        if z.is_empty() {
            return Vec::new();
        }
        let cols = self.basis.complex_columns(z);
        // the terms are often 1e4 times larger than their sum, so the sum is
        // compensated to keep finite differences of u meaningful
        (0..z.len())
            .map(|i| {
                let (mut re, mut im) = (Neumaier::default(), Neumaier::default());
                for (j, c) in self.coefficients.iter().enumerate() {
                    let t = cols[(i, j)] * c;
                    re.add(t.re);
                    im.add(t.im);
                }
                Complex64::new(re.sum(), im.sum())
            })
            .collect()
    }

    fn log_part(&self, z: Complex64) -> f64 {
        self.log_coefficients
            .iter()
            .enumerate()
            .map(|(j, a)| a * self.basis.log_column(j, z))
            .sum()
    }

    /// `u = Re f + sum a_j log|z - z_j|`.
    pub fn eval_u(&self, z: &[Complex64]) -> Vec<f64> {
        self.eval_f(z)
            .into_iter()
            .zip(z)
            .map(|(f, &p)| f.re + self.log_part(p))
            .collect()
    }

    /// `v = Im f`, without the multivalued conjugates of the log terms.
    pub fn eval_v(&self, z: &[Complex64]) -> Vec<f64> {
        self.eval_f(z).into_iter().map(|f| f.im).collect()
    }

    /// A local harmonic conjugate of `u`: `Im f` plus the principal-branch
    /// arguments matching the log terms. Smooth away from the branch cuts.
    pub fn eval_conjugate_local(&self, z: &[Complex64]) -> Vec<f64> {
        let n = self.basis.log_centers.len();
        self.eval_f(z)
            .into_iter()
            .zip(z)
            .map(|(f, &p)| {
                let mut v = f.im;
                for (j, a) in self.log_coefficients.iter().enumerate() {
                    let arg = |c: Complex64| (p - c).arg();
                    v += a * match self.basis.log_pairing {
                        LogPairing::Single => arg(self.basis.log_centers[j]),
                        LogPairing::Cyclic => arg(self.basis.log_centers[j]) - arg(self.basis.log_centers[(j + 1) % n]),
                    };
                }
                v
            })
            .collect()
    }
}

/// Samples the boundary, fits, and validates on a finer grid.
pub fn solve(d: &Domain, data: &BoundaryData, opts: &SolverOptions) -> Result<HarmonicSolution> {
    let t0 = Instant::now();
    let mut samples = sample_boundary(d, opts.samples_per_segment, &opts.clustering)?;
    samples.h = data.eval(&samples)?;
    let sampling = t0.elapsed().as_secs_f64();
    let mut sol = solve_samples(d, &samples, opts)?;
    sol.diagnostics.timings.sampling = sampling;
    if opts.validate {
        let tv = Instant::now();
        let mut fine = sample_boundary(d, 3 * opts.samples_per_segment, &opts.clustering)?;
        fine.h = data.eval(&fine)?;
        let u = sol.eval_u(&fine.z);
        let err = u.iter().zip(&fine.h).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        sol.diagnostics.validation_error = Some(err);
        if err > 1e3 * sol.diagnostics.boundary_error.max(f64::EPSILON) {
            sol.diagnostics
                .warnings
                .push(format!("validation error {err:.3e} exceeds 1000 times the solve-grid error"));
        }
        sol.diagnostics.timings.validation = tv.elapsed().as_secs_f64();
    }
    sol.diagnostics.timings.total = t0.elapsed().as_secs_f64();
    Ok(sol)
}

/// Fit to given samples with data already in `samples.h`.
pub fn solve_samples(d: &Domain, samples: &SampleSet, opts: &SolverOptions) -> Result<HarmonicSolution> {
    let t0 = Instant::now();
    if samples.h.len() != samples.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} samples but {} data values",
            samples.len(),
            samples.h.len()
        )));
    }
    let choice = choose_poles(d, samples, opts)?;
    let t_aaa = t0.elapsed().as_secs_f64();

    let t1 = Instant::now();
    let degree = opts.degree_for(d);
    let (basis, qs) = LaplaceBasis::build(d, &samples.z, choice.kept.clone(), degree)?;
    let (a, layout) = basis.assemble(&samples.z, Some(&qs));
    let sol = lstsq_regularized(a.as_ref(), &samples.h)?;
    let n = layout.complex_len();
    let coefficients: Vec<Complex64> = (0..n).map(|j| Complex64::new(sol.x[j], sol.x[n + j])).collect();
    let log_coefficients = sol.x[2 * n..].to_vec();
    let fitted = &a * faer::Col::<f64>::from_fn(layout.cols, |j| sol.x[j]);
    let boundary_error = (0..samples.len())
        .map(|i| (fitted[i] - samples.h[i]).abs())
        .fold(0.0, f64::max);
    let least_squares = t1.elapsed().as_secs_f64();

    Ok(HarmonicSolution {
        basis,
        coefficients,
        log_coefficients,
        diagnostics: Diagnostics {
            boundary_error,
            validation_error: None,
            residual: sol.residual,
            rank: sol.rank,
            layout,
            poles_kept: choice.kept.len(),
            poles_discarded: choice.discarded.len(),
            discarded: choice.discarded,
            near_double_fits: choice.near_double_fits,
            artificial_data: choice.artificial_data,
            fits: choice.fits,
            warnings: choice.warnings,
            timings: Timings {
                aaa: t_aaa,
                least_squares,
                total: t0.elapsed().as_secs_f64(),
                ..Default::default()
            },
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{BoundaryComponent, Segment};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn unit_square() -> Domain {
        Domain::simple(BoundaryComponent::polygon(&[c(0.0, 0.0), c(1.0, 0.0), c(1.0, 1.0), c(0.0, 1.0)]).unwrap()).unwrap()
    }

    fn unit_disk() -> Domain {
        Domain::simple(BoundaryComponent::new(vec![Segment::circle(c(0.0, 0.0), 1.0, true).unwrap()], vec![]).unwrap()).unwrap()
    }

    #[test]
    fn data_ids_parse() {
        assert!(matches!(DataFn::parse("re2").unwrap(), DataFn::Re2));
        assert_eq!(DataFn::parse("const:2.5").unwrap().eval(c(9.0, 9.0)), 2.5);
        assert!(DataFn::parse("const:x").is_err());
        assert!(DataFn::parse("sin").is_err());
    }

    #[test]
    fn polynomial_only_matrix_fits_re_z() {
        let d = unit_square();
        let mut s = sample_boundary(&d, 10, &Clustering::default()).unwrap();
        s.h = s.z.iter().map(|z| z.re).collect();
        let (basis, _) = LaplaceBasis::build(&d, &s.z, vec![], 1).unwrap();
        let (a, layout) = assemble_matrix(&s, &basis);
        assert_eq!((a.nrows(), a.ncols()), (40, 4));
        assert_eq!(layout.complex_len(), 2);
        let sol = lstsq_regularized(a.as_ref(), &s.h).unwrap();
        assert!(sol.residual <= 1e-13);
    }

    #[test]
    fn pole_column_has_unit_magnitude() {
        let d = unit_square();
        let z = vec![c(0.5, 0.0); 1];
        let p = c(0.5, -0.3);
        let basis = LaplaceBasis {
            poles: vec![p],
            scaling: vec![(z[0] - p).norm()],
            polynomials: vec![],
            log_centers: vec![],
            log_pairing: LogPairing::Single,
        };
        let cols = basis.complex_columns(&z);
        assert!((cols[(0, 0)].norm() - 1.0).abs() < 1e-15);
        let _ = d;
    }

    #[test]
    fn zero_coefficients_give_zero() {
        let d = unit_square();
        let mut s = sample_boundary(&d, 10, &Clustering::default()).unwrap();
        s.h = vec![0.0; s.len()];
        let opts = SolverOptions {
            degree: Some(3),
            artificial_data: ArtificialData::Off,
            ..Default::default()
        };
        let sol = solve_samples(&d, &s, &opts).unwrap();
        assert!(sol.coefficients.iter().all(|c| c.norm() == 0.0));
        assert!(sol.eval_f(&[c(0.3, 0.7), c(5.0, 5.0)]).iter().all(|f| f.norm() == 0.0));
    }

    #[test]
    fn square_with_linear_data() {
        let d = unit_square();
        let sol = solve(&d, &BoundaryData::Uniform(DataFn::ReZ), &SolverOptions::default()).unwrap();
        let u = sol.eval_u(&[c(0.5, 0.5)]);
        assert!((u[0] - 0.5).abs() < 1e-12, "{}", u[0]);
    }

    #[test]
    fn disk_with_cosine_data() {
        let d = unit_disk();
        let opts = SolverOptions {
            variant: Variant::Global,
            samples_per_segment: 200,
            ..Default::default()
        };
        let sol = solve(&d, &BoundaryData::Uniform(DataFn::ReZ), &opts).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let pts: Vec<Complex64> = (0..100)
            .map(|_| Complex64::from_polar(rng.gen::<f64>().sqrt() * 0.999, rng.gen::<f64>() * std::f64::consts::TAU))
            .collect();
        for (p, u) in pts.iter().zip(sol.eval_u(&pts)) {
            assert!((u - p.re).abs() < 1e-8);
        }
    }

    #[test]
    fn constant_data_with_artificial_poles() {
        let d = unit_square();
        let data = BoundaryData::Uniform(DataFn::Const(1.0));
        let mut s = sample_boundary(&d, 60, &Clustering::default()).unwrap();
        s.h = data.eval(&s).unwrap();
        let off = SolverOptions {
            artificial_data: ArtificialData::Off,
            ..Default::default()
        };
        let choice = choose_poles(&d, &s, &off).unwrap();
        assert!(choice.kept.is_empty() && choice.discarded.is_empty());
        assert!(!choice.warnings.is_empty());
        let on = SolverOptions {
            artificial_data: ArtificialData::SqrtProduct,
            ..Default::default()
        };
        let choice = choose_poles(&d, &s, &on).unwrap();
        assert!(choice.artificial_data);
        assert!(!choice.kept.is_empty());
        assert!(choice.kept.iter().all(|p| !d.in_closure(*p)));
    }

    #[test]
    fn local_needs_corners() {
        let d = unit_disk();
        let err = solve(&d, &BoundaryData::Uniform(DataFn::ReZ), &SolverOptions::default()).unwrap_err();
        assert!(matches!(err, Error::NoCorners { component: 0 }));
    }
}
