//! Vandermonde with Arnoldi: a discretely orthonormal polynomial basis built
//! by Arnoldi iteration on pointwise multiplication, replacing the
//! ill-conditioned monomial matrix `Z.^(0:n)`.

use faer::Mat;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Variable the polynomial is taken in.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum CenterMap {
    /// Polynomials in `z`.
    Identity,
    /// Polynomials in `1 / (z - center)`.
    Reciprocal { center: Complex64 },
}

impl CenterMap {
    #[inline]
    pub fn apply(&self, z: Complex64) -> Complex64 {
        match *self {
            CenterMap::Identity => z,
            CenterMap::Reciprocal { center } => (z - center).inv(),
        }
    }
}

/// Upper-Hessenberg recurrence `H` ((n+1) x n) of an Arnoldi basis.
///
/// The recurrence runs in `(map(z) - shift) / scale`, with `shift` the mean
/// of the mapped sample points and `scale` their largest distance from it.
/// The span is unchanged; without the shift the diagonal of `H` cancels a
/// large common part of the mapped points at every step, and replaying the
/// recurrence loses about that ratio in accuracy per degree.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ArnoldiBasis {
    /// Column `k` of `H`, entries `0..=k+1`.
    columns: Vec<Vec<Complex64>>,
    map: CenterMap,
    shift: Complex64,
    scale: f64,
}

impl ArnoldiBasis {
    pub fn degree(&self) -> usize {
        self.columns.len()
    }

    pub fn map(&self) -> CenterMap {
        self.map
    }

    /// The variable the recurrence multiplies by.
    #[inline]
    pub fn variable(&self, z: Complex64) -> Complex64 {
        (self.map.apply(z) - self.shift) / self.scale
    }

    /// Dense `(n+1) x n` Hessenberg matrix.
    pub fn hessenberg(&self) -> Mat<Complex64> {
        let n = self.degree();
        Mat::from_fn(n + 1, n, |i, k| {
            self.columns[k].get(i).copied().unwrap_or_default()
        })
    }
}

pub fn va_orthog(z: &[Complex64], n: usize, map: CenterMap) -> Result<(ArnoldiBasis, Mat<Complex64>)> {
    let m = z.len();
    if m <= n {
        return Err(Error::InvalidInput(format!(
            "Arnoldi basis of degree {n} needs more than {n} points, got {m}"
        )));
    }
    let mf = m as f64;
    let mapped: Vec<Complex64> = z.iter().map(|&p| map.apply(p)).collect();
    let shift = mapped.iter().sum::<Complex64>() / mf;
    let scale = mapped.iter().map(|&w| (w - shift).norm()).fold(0.0, f64::max);
    let scale = if scale > 0.0 && scale.is_finite() { scale } else { 1.0 };
    let x: Vec<Complex64> = mapped.iter().map(|&w| (w - shift) / scale).collect();
    let mut q = Mat::<Complex64>::zeros(m, n + 1);
    for i in 0..m {
        q[(i, 0)] = Complex64::new(1.0, 0.0);
    }
    let mut columns = Vec::with_capacity(n);
    for k in 0..n {
        let mut v: Vec<Complex64> = (0..m).map(|i| x[i] * q[(i, k)]).collect();
        let mut h = vec![Complex64::new(0.0, 0.0); k + 1];
        // two Gram-Schmidt passes keep Q orthonormal on clustered points
        for _ in 0..2 {
            for j in 0..=k {
                let hjk = (0..m).map(|i| q[(i, j)].conj() * v[i]).sum::<Complex64>() / mf;
                for i in 0..m {
                    v[i] -= hjk * q[(i, j)];
                }
                h[j] += hjk;
            }
        }
        let norm = (v.iter().map(|c| c.norm_sqr()).sum::<f64>() / mf).sqrt();
        if !(norm >= 1e-300) {
            return Err(Error::ArnoldiBreakdown { degree: k });
        }
        h.push(Complex64::new(norm, 0.0));
        // form the column exactly as va_eval will, so replay at Z is bit-identical
        for i in 0..m {
            q[(i, k + 1)] = next_column(x[i], &q, i, &h);
        }
        columns.push(h);
    }
    Ok((ArnoldiBasis { columns, map, shift, scale }, q))
}

/// Entry `i` of column `k + 1` from column `k` of `H` (`h.len() == k + 2`).
#[inline]
fn next_column(x: Complex64, q: &Mat<Complex64>, i: usize, h: &[Complex64]) -> Complex64 {
    let k = h.len() - 2;
    let mut acc = x * q[(i, k)];
    for (j, hj) in h.iter().take(k + 1).enumerate() {
        acc -= hj * q[(i, j)];
    }
    acc / h[k + 1]
}

/// Rebuilds the basis at new points by replaying the stored recurrence.
pub fn va_eval(w: &[Complex64], basis: &ArnoldiBasis) -> Mat<Complex64> {
    let k_pts = w.len();
    let n = basis.degree();
    let x: Vec<Complex64> = w.iter().map(|&p| basis.variable(p)).collect();
    let mut q = Mat::<Complex64>::zeros(k_pts, n + 1);
    for i in 0..k_pts {
        q[(i, 0)] = Complex64::new(1.0, 0.0);
    }
    for k in 0..n {
        let h = &basis.columns[k];
        for i in 0..k_pts {
            q[(i, k + 1)] = next_column(x[i], &q, i, h);
        }
    }
    q
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn two_point_hand_example() {
        let z = [c(-1.0, 0.0), c(1.0, 0.0)];
        let (basis, q) = va_orthog(&z, 1, CenterMap::Identity).unwrap();
        let h = basis.hessenberg();
        assert_eq!(h.nrows(), 2);
        assert!(h[(0, 0)].norm() < 1e-15);
        assert!((h[(1, 0)] - 1.0).norm() < 1e-15);
        let want = [[1.0, -1.0], [1.0, 1.0]];
        for i in 0..2 {
            for j in 0..2 {
                assert!((q[(i, j)] - want[i][j]).norm() < 1e-15);
            }
        }
        let at_zero = va_eval(&[c(0.0, 0.0)], &basis);
        assert!((at_zero[(0, 0)] - 1.0).norm() < 1e-15);
        assert!(at_zero[(0, 1)].norm() < 1e-15);
    }

    #[test]
    fn degree_zero_is_constant() {
        let z = [c(0.3, 0.1), c(2.0, -1.0), c(-4.0, 0.5)];
        let (basis, q) = va_orthog(&z, 0, CenterMap::Identity).unwrap();
        assert_eq!(basis.degree(), 0);
        assert_eq!(q.ncols(), 1);
        assert!((0..3).all(|i| q[(i, 0)] == c(1.0, 0.0)));
    }

    #[test]
    fn orthonormal_on_circle() {
        let z: Vec<_> = (0..200).map(|k| Complex64::from_polar(1.0, 2.0 * PI * k as f64 / 200.0)).collect();
        let (_, q) = va_orthog(&z, 20, CenterMap::Identity).unwrap();
        let g = q.adjoint() * &q;
        for i in 0..21 {
            for j in 0..21 {
                let want = if i == j { 200.0 } else { 0.0 };
                assert!((g[(i, j)] - want).norm() / 200.0 < 1e-12);
            }
        }
    }

    #[test]
    fn eval_reproduces_construction() {
        let z: Vec<_> = (0..50).map(|k| c((k as f64 * 0.37).sin(), (k as f64 * 0.11).cos())).collect();
        let map = CenterMap::Reciprocal { center: c(3.0, 0.0) };
        let (basis, q) = va_orthog(&z, 8, map).unwrap();
        let again = va_eval(&z, &basis);
        assert!((&again - &q).norm_max() < 1e-12);
    }

    #[test]
    fn too_few_points() {
        let z = [c(0.0, 0.0), c(1.0, 0.0)];
        assert!(va_orthog(&z, 2, CenterMap::Identity).is_err());
    }

    #[test]
    fn breakdown_detected() {
        // a single repeated point spans only the constants
        let z = [c(1.0, 0.0); 3];
        assert!(matches!(
            va_orthog(&z, 1, CenterMap::Identity),
            Err(Error::ArnoldiBreakdown { .. })
        ));
    }
}
