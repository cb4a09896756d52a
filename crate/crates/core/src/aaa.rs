//! The AAA algorithm: greedy support-point selection alternating with a
//! Loewner least-squares step for the barycentric weights. There is no
//! cleanup of small-residue poles; callers filter poles by location.

use faer::Mat;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::barycentric::{BarycentricRational, PoleSet};
use crate::error::{Error, Result};
use crate::linalg::right_singular_vectors;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AaaOptions {
    /// Relative tolerance against `max |F|`.
    pub tol: f64,
    /// Maximum number of support points.
    pub max_degree: usize,
}

impl Default for AaaOptions {
    fn default() -> Self {
        Self {
            tol: 1e-8,
            max_degree: 150,
        }
    }
}

impl AaaOptions {
    fn validate(&self) -> Result<()> {
        if !(self.tol > 0.0) {
            return Err(Error::InvalidInput(format!("AAA tolerance must be positive, got {}", self.tol)));
        }
        if self.max_degree < 1 {
            return Err(Error::InvalidInput("AAA max_degree must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AaaResult {
    pub r: BarycentricRational,
    pub poles: PoleSet,
    /// `max |F - r(Z)|` over the non-support samples.
    pub max_error: f64,
    pub iterations: usize,
    pub converged: bool,
    /// Sample indices in the order they became support points.
    pub support_indices: Vec<usize>,
    /// Max error after each iteration.
    pub error_history: Vec<f64>,
}

fn check_distinct(z: &[Complex64]) -> Result<()> {
    let mut idx: Vec<usize> = (0..z.len()).collect();
    idx.sort_by(|&a, &b| z[a].re.total_cmp(&z[b].re).then(z[a].im.total_cmp(&z[b].im)));
    for p in idx.windows(2) {
        if z[p[0]] == z[p[1]] {
            return Err(Error::InvalidInput(format!(
                "sample points {} and {} coincide",
                p[0].min(p[1]),
                p[0].max(p[1])
            )));
        }
    }
    Ok(())
}

pub fn aaa_fit(z: &[Complex64], f: &[Complex64], opts: &AaaOptions) -> Result<AaaResult> {
    opts.validate()?;
    let m_total = z.len();
    if m_total < 2 {
        return Err(Error::InvalidInput(format!("AAA needs at least 2 samples, got {m_total}")));
    }
    if f.len() != m_total {
        return Err(Error::DimensionMismatch(format!(
            "{m_total} sample points but {} data values",
            f.len()
        )));
    }
    if let Some(i) = f.iter().position(|v| !(v.re.is_finite() && v.im.is_finite())) {
        return Err(Error::InvalidInput(format!("data value {i} is not finite")));
    }
    check_distinct(z)?;

    let fnorm = f.iter().map(|v| v.norm()).fold(0.0, f64::max);
    let abstol = opts.tol * fnorm;
    let mean = f.iter().sum::<Complex64>() / m_total as f64;
    let mut approx = vec![mean; m_total];
    let mut is_support = vec![false; m_total];
    let mut support_indices = Vec::new();
    // Cauchy columns 1/(Z - z_k), one per support point
    let mut cauchy: Vec<Vec<Complex64>> = Vec::new();
    let mut weights: Vec<Complex64> = Vec::new();
    let mut history = Vec::new();
    let mut converged = false;
    let mut max_error = f64::INFINITY;

    while support_indices.len() < opts.max_degree.min(m_total) {
        let mut pick = None;
        let mut best = -1.0;
        for i in 0..m_total {
            if is_support[i] {
                continue;
            }
            let e = (f[i] - approx[i]).norm();
            let e = if e.is_nan() { f64::INFINITY } else { e };
            if e > best {
                best = e;
                pick = Some(i);
            }
        }
        let Some(j) = pick else { break };
        is_support[j] = true;
        support_indices.push(j);
        cauchy.push(z.iter().map(|&zi| (zi - z[j]).inv()).collect());
        let m = support_indices.len();

        let rows: Vec<usize> = (0..m_total).filter(|&i| !is_support[i]).collect();
        if rows.is_empty() {
            // every sample interpolated; any nonzero weights will do
            weights = vec![Complex64::new(1.0 / (m as f64).sqrt(), 0.0); m];
            max_error = 0.0;
            history.push(0.0);
            converged = true;
            break;
        }
        let loewner = Mat::<Complex64>::from_fn(rows.len(), m, |r, k| {
            let i = rows[r];
            (f[i] - f[support_indices[k]]) * cauchy[k][i]
        });
        let (_, v) = right_singular_vectors(loewner.as_ref())?;
        weights = (0..m).map(|k| v[(k, v.ncols() - 1)]).collect();

        let mut err = 0.0_f64;
        for &i in &rows {
            let mut num = Complex64::new(0.0, 0.0);
            let mut den = Complex64::new(0.0, 0.0);
            for k in 0..m {
                let c = weights[k] * cauchy[k][i];
                num += c * f[support_indices[k]];
                den += c;
            }
            // a single support point makes r constant; skip the rounding of N/D
            approx[i] = if m == 1 { f[support_indices[0]] } else { num / den };
            let e = (f[i] - approx[i]).norm();
            err = err.max(if e.is_nan() { f64::INFINITY } else { e });
        }
        for &k in &support_indices {
            approx[k] = f[k];
        }
        max_error = err;
        history.push(err);
        if err <= abstol {
            converged = true;
            break;
        }
    }

    let support: Vec<Complex64> = support_indices.iter().map(|&i| z[i]).collect();
    let values: Vec<Complex64> = support_indices.iter().map(|&i| f[i]).collect();
    let r = BarycentricRational::new(support, values, weights)?;
    let poles = r.poles_and_residues()?;
    Ok(AaaResult {
        r,
        poles,
        max_error,
        iterations: history.len(),
        converged,
        support_indices,
        error_history: history,
    })
}

/// Independent AAA fits on the samples assigned to each singularity.
///
/// `groups[i]` is the singularity index of sample `i`; the result has one
/// entry per singularity `0..n_groups`, in index order.
pub fn local_aaa(
    z: &[Complex64],
    f: &[Complex64],
    groups: &[usize],
    n_groups: usize,
    opts: &AaaOptions,
) -> Result<Vec<AaaResult>> {
    if z.len() != f.len() || z.len() != groups.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} points, {} values, {} group labels",
            z.len(),
            f.len(),
            groups.len()
        )));
    }
    let mut members: Vec<Vec<usize>> = vec![Vec::new(); n_groups];
    for (i, &g) in groups.iter().enumerate() {
        if g >= n_groups {
            return Err(Error::InvalidInput(format!("sample {i} has group {g} >= {n_groups}")));
        }
        members[g].push(i);
    }
    members
        .iter()
        .enumerate()
        .map(|(g, idx)| {
            if idx.len() < 2 {
                return Err(Error::TooFewSamples {
                    index: g,
                    count: idx.len(),
                });
            }
            let zg: Vec<Complex64> = idx.iter().map(|&i| z[i]).collect();
            let fg: Vec<Complex64> = idx.iter().map(|&i| f[i]).collect();
            aaa_fit(&zg, &fg, opts)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn circle(n: usize, radius: f64) -> Vec<Complex64> {
        (0..n)
            .map(|k| Complex64::from_polar(radius, 2.0 * PI * k as f64 / n as f64))
            .collect()
    }

    #[test]
    fn constant_data_gives_degree_zero() {
        let z = circle(40, 1.0);
        let f = vec![Complex64::new(7.0, 0.0); 40];
        let res = aaa_fit(&z, &f, &AaaOptions::default()).unwrap();
        assert_eq!(res.r.degree(), 0);
        assert_eq!(res.max_error, 0.0);
        assert!(res.converged);
        assert_eq!(res.r.eval(Complex64::new(0.3, 0.2)), Complex64::new(7.0, 0.0));
    }

    #[test]
    fn simple_pole_recovered() {
        let z = circle(128, 1.0);
        let two = Complex64::new(2.0, 0.0);
        let f: Vec<Complex64> = z.iter().map(|&x| (x - two).inv()).collect();
        let opts = AaaOptions {
            tol: 1e-12,
            ..Default::default()
        };
        let res = aaa_fit(&z, &f, &opts).unwrap();
        assert!(res.converged);
        assert!(res.r.support().len() <= 3);
        assert_eq!(res.poles.len(), 1, "{:?}", res.poles);
        assert!((res.poles.poles[0] - two).norm() < 1e-10);
        assert!((res.poles.residues[0] - 1.0).norm() < 1e-8);
    }

    #[test]
    fn two_poles_and_residues() {
        let z = circle(200, 2.0);
        let f: Vec<Complex64> = z.iter().map(|&x| (x * x + 1.0).inv()).collect();
        let opts = AaaOptions {
            tol: 1e-13,
            ..Default::default()
        };
        let res = aaa_fit(&z, &f, &opts).unwrap();
        let i = Complex64::i();
        let mut found = 0;
        for (p, a) in res.poles.poles.iter().zip(&res.poles.residues) {
            if (p - i).norm() < 1e-9 {
                assert!((a - (-i / 2.0)).norm() < 1e-8);
                found += 1;
            } else if (p + i).norm() < 1e-9 {
                assert!((a - i / 2.0).norm() < 1e-8);
                found += 1;
            }
        }
        assert_eq!(found, 2, "{:?}", res.poles);
    }

    #[test]
    fn interpolates_at_support_points() {
        let z = circle(100, 1.0);
        let f: Vec<Complex64> = z.iter().map(|&x| (x.re * 3.0).exp() * x.im.cos()).map(|v| Complex64::new(v, 0.0)).collect();
        let res = aaa_fit(&z, &f, &AaaOptions::default()).unwrap();
        for &k in &res.support_indices {
            assert_eq!(res.r.eval(z[k]), f[k]);
        }
        assert!(res.poles.len() <= res.r.degree());
    }

    #[test]
    fn rejects_bad_input() {
        let z = vec![Complex64::new(0.0, 0.0)];
        assert!(aaa_fit(&z, &z, &AaaOptions::default()).is_err());
        let z = vec![Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0)];
        assert!(aaa_fit(&z, &z, &AaaOptions::default()).is_err());
        let z = circle(4, 1.0);
        let bad = AaaOptions { tol: 0.0, max_degree: 3 };
        assert!(aaa_fit(&z, &z, &bad).is_err());
    }

    #[test]
    fn degree_cap_returns_unconverged() {
        let z: Vec<Complex64> = (0..200).map(|k| Complex64::new(-1.0 + 2.0 * k as f64 / 199.0, 0.0)).collect();
        let f: Vec<Complex64> = z.iter().map(|x| Complex64::new(x.re.abs(), 0.0)).collect();
        let opts = AaaOptions { tol: 1e-13, max_degree: 5 };
        let res = aaa_fit(&z, &f, &opts).unwrap();
        assert!(!res.converged);
        assert_eq!(res.r.support().len(), 5);
    }

    #[test]
    fn local_with_single_group_matches_global() {
        let z = circle(60, 1.0);
        let f: Vec<Complex64> = z.iter().map(|&x| (x - 1.5).inv()).collect();
        let opts = AaaOptions::default();
        let local = local_aaa(&z, &f, &vec![0; 60], 1, &opts).unwrap();
        let global = aaa_fit(&z, &f, &opts).unwrap();
        assert_eq!(local.len(), 1);
        assert_eq!(local[0].r, global.r);
    }

    #[test]
    fn local_rejects_starved_group() {
        let z = circle(10, 1.0);
        let mut groups = vec![0; 10];
        groups[3] = 1;
        let err = local_aaa(&z, &z, &groups, 2, &AaaOptions::default()).unwrap_err();
        assert!(matches!(err, Error::TooFewSamples { index: 1, count: 1 }));
    }
}
