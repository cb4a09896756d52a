//! Real approximation on an interval with poles from local AAA fits near
//! known singularities. Poles on the interval itself are dropped, so the
//! result is analytic there.

use faer::Mat;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::aaa::{aaa_fit, AaaOptions};
use crate::arnoldi::{va_eval, va_orthog, ArnoldiBasis, CenterMap};
use crate::error::{Error, Result};
use crate::geometry::BOUNDARY_BUFFER;
use crate::laplace::FitSummary;
use crate::linalg::lstsq_regularized;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IntervalOptions {
    pub aaa: AaaOptions,
    pub degree: usize,
    pub interval: (f64, f64),
    /// Radius of the sample window around each singularity. `None` uses
    /// 0.75 times the smallest gap between singularities.
    pub window: Option<f64>,
}

impl Default for IntervalOptions {
    fn default() -> Self {
        Self {
            aaa: AaaOptions::default(),
            degree: 16,
            interval: (-1.0, 1.0),
            window: None,
        }
    }
}

/// `f(x) ~ mean + Re(P(x) + sum c_k d_k / (x - p_k))`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IntervalApprox {
    pub mean: f64,
    pub poles: Vec<Complex64>,
    pub scaling: Vec<f64>,
    pub polynomial: ArnoldiBasis,
    pub coefficients: Vec<Complex64>,
    /// Poles found on the interval and dropped.
    pub discarded: Vec<Complex64>,
    pub fits: Vec<FitSummary>,
    /// Real unknowns of the least-squares problem.
    pub degrees_of_freedom: usize,
    /// `max |f - approx|` on the samples.
    pub sample_error: f64,
}

impl IntervalApprox {
    pub fn eval_many(&self, x: &[f64]) -> Vec<f64> {
        if x.is_empty() {
            return Vec::new();
        }
        let w: Vec<Complex64> = x.iter().map(|&v| Complex64::new(v, 0.0)).collect();
        let p = va_eval(&w, &self.polynomial);
        let np = p.ncols();
        (0..x.len())
            .map(|i| {
                let mut acc = Complex64::new(self.mean, 0.0);
                for j in 0..np {
                    acc += p[(i, j)] * self.coefficients[j];
                }
                for (k, (pk, dk)) in self.poles.iter().zip(&self.scaling).enumerate() {
                    acc += self.coefficients[np + k] * dk / (w[i] - pk);
                }
                acc.re
            })
            .collect()
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.eval_many(&[x])[0]
    }

    /// Retained poles lying on the closed interval; zero by construction.
    pub fn poles_on_interval(&self, interval: (f64, f64)) -> usize {
        self.poles.iter().filter(|p| on_interval(**p, interval)).count()
    }
}

fn on_interval(p: Complex64, (a, b): (f64, f64)) -> bool {
    let tol = BOUNDARY_BUFFER * (b - a);
    p.im.abs() <= tol && p.re >= a - tol && p.re <= b + tol
}

/// Fits samples `(x, f)` using one AAA fit per singularity, each on the
/// samples within a window around it, or a single global fit when
/// `singularities` is empty. Windows of neighbours overlap, which keeps
/// the spurious poles each fit places near its window edges away from the
/// edges of the other fits.
pub fn approximate(x: &[f64], f: &[f64], singularities: &[f64], opts: &IntervalOptions) -> Result<IntervalApprox> {
    if x.len() != f.len() {
        return Err(Error::DimensionMismatch(format!("{} points but {} values", x.len(), f.len())));
    }
    if let Some(i) = x.iter().zip(f).position(|(a, b)| !a.is_finite() || !b.is_finite()) {
        return Err(Error::InvalidInput(format!("sample {i} is not finite")));
    }
    if x.is_empty() {
        return Err(Error::InvalidInput("no samples".into()));
    }
    let mean = f.iter().sum::<f64>() / f.len() as f64;
    let z: Vec<Complex64> = x.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    let data: Vec<Complex64> = f.iter().map(|&v| Complex64::new(v - mean, 0.0)).collect();

    let mut fits = Vec::new();
    let mut all = Vec::new();
    if singularities.is_empty() {
        let r = aaa_fit(&z, &data, &opts.aaa)?;
        fits.push(summary(None, z.len(), &r));
        all.extend(r.poles.poles);
    } else {
        let radius = opts.window.unwrap_or_else(|| default_window(singularities));
        if !(radius > 0.0) {
            return Err(Error::InvalidInput(format!("window radius {radius} must be positive")));
        }
        for (k, &s) in singularities.iter().enumerate() {
            let idx: Vec<usize> = (0..x.len()).filter(|&i| (x[i] - s).abs() <= radius).collect();
            if idx.is_empty() {
                return Err(Error::InvalidInput(format!("no samples within {radius} of singularity {s}")));
            }
            let zs: Vec<Complex64> = idx.iter().map(|&i| z[i]).collect();
            let fs: Vec<Complex64> = idx.iter().map(|&i| data[i]).collect();
            let r = aaa_fit(&zs, &fs, &opts.aaa)?;
            fits.push(summary(Some(k), idx.len(), &r));
            all.extend(r.poles.poles);
        }
    }
    let (poles, discarded): (Vec<Complex64>, Vec<Complex64>) = all
        .into_iter()
        .partition(|p| p.re.is_finite() && p.im.is_finite() && !on_interval(*p, opts.interval));

    let (polynomial, q) = va_orthog(&z, opts.degree, CenterMap::Identity)?;
    let scaling: Vec<f64> = poles
        .iter()
        .map(|p| z.iter().map(|zi| (zi - p).norm()).fold(f64::INFINITY, f64::min))
        .collect();
    let np = q.ncols();
    let n = np + poles.len();
    let col = |i: usize, j: usize| -> Complex64 {
        if j < np {
            q[(i, j)]
        } else {
            scaling[j - np] / (z[i] - poles[j - np])
        }
    };
    let a = Mat::<f64>::from_fn(z.len(), 2 * n, |i, j| if j < n { col(i, j).re } else { -col(i, j - n).im });
    let rhs: Vec<f64> = data.iter().map(|v| v.re).collect();
    let sol = lstsq_regularized(a.as_ref(), &rhs)?;
    let mut out = IntervalApprox {
        mean,
        poles,
        scaling,
        polynomial,
        coefficients: (0..n).map(|j| Complex64::new(sol.x[j], sol.x[n + j])).collect(),
        discarded,
        fits,
        degrees_of_freedom: 2 * n,
        sample_error: 0.0,
    };
    out.sample_error = out
        .eval_many(x)
        .iter()
        .zip(f)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    Ok(out)
}

fn default_window(singularities: &[f64]) -> f64 {
    let mut s = singularities.to_vec();
    s.sort_by(f64::total_cmp);
    let gap = s.windows(2).map(|w| w[1] - w[0]).filter(|g| *g > 0.0).fold(f64::INFINITY, f64::min);
    if gap.is_finite() {
        0.75 * gap
    } else {
        f64::INFINITY
    }
}

fn summary(corner: Option<usize>, samples: usize, r: &crate::aaa::AaaResult) -> FitSummary {
    FitSummary {
        corner,
        samples,
        support_points: r.r.support().len(),
        poles: r.poles.len(),
        max_error: r.max_error,
        converged: r.converged,
    }
}

/// Singularities of [`zigzag`]: `-0.8, -0.6, ..., 0.8`.
pub fn zigzag_singularities() -> Vec<f64> {
    (0..9).map(|k| -0.8 + 0.2 * k as f64).collect()
}

/// Piecewise linear, slopes `+-5`, values in `[0, 1]`: zero at
/// `-1, -0.6, -0.2, 0.2, 0.6, 1` and one at `-0.8, -0.4, 0, 0.4, 0.8`.
pub fn zigzag(x: f64) -> f64 {
    let t = (x + 1.0) / 0.4;
    5.0 * 0.4 * (t - t.round()).abs()
}

/// Ten `tanh`-clustered blocks of 300 points, centered at
/// `-0.9, -0.7, ..., 0.9` with half-width 0.1, so the clustering lands on
/// the kinks and on the ends of `[-1, 1]`.
pub fn zigzag_grid() -> Vec<f64> {
    let n = 300;
    let mut x = Vec::with_capacity(10 * n);
    for c in 0..10 {
        let center = -0.9 + 0.2 * c as f64;
        for k in 0..n {
            let s = -16.0 + 32.0 * k as f64 / (n - 1) as f64;
            x.push(center + 0.1 * s.tanh());
        }
    }
    // neighbouring blocks meet at their clustered ends; keep one copy
    x.sort_by(f64::total_cmp);
    x.dedup();
    x
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zigzag_shape() {
        for (x, want) in [(-1.0, 0.0), (-0.8, 1.0), (-0.6, 0.0), (-0.7, 0.5), (0.0, 1.0), (1.0, 0.0)] {
            assert!((zigzag(x) - want).abs() < 1e-14, "zigzag({x})");
        }
    }

    #[test]
    fn constant_data_is_exact() {
        let x: Vec<f64> = (0..200).map(|k| -1.0 + 2.0 * k as f64 / 199.0).collect();
        let f = vec![3.25; 200];
        let a = approximate(&x, &f, &[], &IntervalOptions::default()).unwrap();
        assert_eq!(a.fits[0].support_points, 1);
        assert!(a.poles.is_empty());
        for v in [-1.0, -0.3, 0.9] {
            assert_eq!(a.eval(v), 3.25);
        }
    }

    #[test]
    fn simple_pole_outside_interval() {
        let x: Vec<f64> = (0..500).map(|k| (std::f64::consts::PI * k as f64 / 499.0).cos()).collect();
        let f: Vec<f64> = x.iter().map(|v| 1.0 / (v - 2.0)).collect();
        let a = approximate(&x, &f, &[], &IntervalOptions::default()).unwrap();
        assert!(a.poles.iter().any(|p| (p - 2.0).norm() < 1e-8));
        for k in 0..1000 {
            let v = -1.0 + 2.0 * k as f64 / 999.0;
            assert!((a.eval(v) - 1.0 / (v - 2.0)).abs() < 1e-10);
        }
    }

    #[test]
    fn grid_clusters_at_kinks() {
        let g = zigzag_grid();
        assert!(g.len() > 2900 && g.len() <= 3000);
        for s in zigzag_singularities() {
            let d = g.iter().map(|x| (x - s).abs()).fold(f64::INFINITY, f64::min);
            assert!(d < 1e-12, "no clustering at {s}");
        }
    }
}
