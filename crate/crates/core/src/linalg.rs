//! Dense kernels: thin SVD, the arrowhead pencil behind barycentric poles,
//! and rank-truncated real least squares.
//!
//! Matrices are `faer` column-major matrices; the rest of the crate builds
//! them directly.

use faer::dyn_stack::{MemBuffer, MemStack};
use faer::linalg::svd::ComputeSvdVectors;
use faer::diag::Diag;
use faer::linalg::solvers::Solve;
use faer::{Col, Mat, MatRef, Par};
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Relative singular-value cutoff used by [`lstsq_regularized`].
pub const LSTSQ_RCOND: f64 = 1e-13;

/// Eigenvalues of the arrowhead pencil larger than this multiple of
/// `max |z_j|` are treated as the pencil's artificial infinities.
pub const INFINITE_EIG_FACTOR: f64 = 1e13;

/// Thin SVD `M = U diag(s) V*` with `s` sorted descending.
#[derive(Debug, Clone)]
pub struct ThinSvd {
    pub u: Mat<Complex64>,
    pub s: Vec<f64>,
    pub v: Mat<Complex64>,
}

fn check_finite_c(m: MatRef<'_, Complex64>) -> Result<()> {
    for j in 0..m.ncols() {
        for i in 0..m.nrows() {
            let x = m[(i, j)];
            if !(x.re.is_finite() && x.im.is_finite()) {
                return Err(Error::InvalidInput(format!(
                    "non-finite matrix entry at ({i}, {j})"
                )));
            }
        }
    }
    Ok(())
}

pub fn svd_thin(m: MatRef<'_, Complex64>) -> Result<ThinSvd> {
    if m.nrows() == 0 || m.ncols() == 0 {
        return Err(Error::InvalidInput("empty matrix".into()));
    }
    check_finite_c(m)?;
    let svd = m.thin_svd().map_err(|_| Error::SvdNoConvergence {
        rows: m.nrows(),
        cols: m.ncols(),
    })?;
    let k = m.nrows().min(m.ncols());
    Ok(ThinSvd {
        u: svd.U().to_owned(),
        s: (0..k).map(|i| svd.S()[i].re).collect(),
        v: svd.V().to_owned(),
    })
}

/// Singular values and right singular vectors only (no `U`).
///
/// `V` is `ncols x ncols` when `nrows >= ncols`, so its last column always
/// minimizes `|Mw|` over unit vectors.
pub fn right_singular_vectors(m: MatRef<'_, Complex64>) -> Result<(Vec<f64>, Mat<Complex64>)> {
    let (rows, cols) = m.shape();
    let size = rows.min(cols);
    let par = Par::Seq;
    let mut s = Diag::<Complex64>::zeros(size);
    let v_cols = if rows >= cols { size } else { cols };
    let mut v = Mat::<Complex64>::zeros(cols, v_cols);
    let want = if rows >= cols {
        ComputeSvdVectors::Thin
    } else {
        ComputeSvdVectors::Full
    };
    let mut buf = MemBuffer::new(faer::linalg::svd::svd_scratch::<Complex64>(
        rows,
        cols,
        ComputeSvdVectors::No,
        want,
        par,
        Default::default(),
    ));
    faer::linalg::svd::svd(
        m,
        s.as_mut(),
        None,
        Some(v.as_mut()),
        par,
        MemStack::new(&mut buf),
        Default::default(),
    )
    .map_err(|_| Error::SvdNoConvergence { rows, cols })?;
    Ok(((0..size).map(|i| s[i].re).collect(), v))
}

/// Finite generalized eigenvalues of the arrowhead pencil `E - lambda B`:
///
/// ```text
/// E = [ 0  w1 .. wm ]     B = [ 0          ]
///     [ 1  z1       ]         [    1       ]
///     [ :     ..    ]         [       ..   ]
///     [ 1        zm ]         [          1 ]
/// ```
///
/// These are the zeros of `sum_j w_j / (lambda - z_j)`, i.e. the poles of a
/// barycentric rational with support `z` and weights `w`.
pub fn eig_arrowhead_pencil(z: &[Complex64], w: &[Complex64]) -> Result<Vec<Complex64>> {
    let m = z.len();
    if m != w.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} support points but {} weights",
            m,
            w.len()
        )));
    }
    if m < 2 {
        return Err(Error::InvalidInput(
            "arrowhead pencil needs at least two support points".into(),
        ));
    }
    if w.iter().all(|x| *x == Complex64::new(0.0, 0.0)) {
        return Err(Error::DegeneratePencil);
    }
    let n = m + 1;
    let one = Complex64::new(1.0, 0.0);
    let scale = z.iter().map(|x| x.norm()).fold(0.0_f64, f64::max).max(f64::MIN_POSITIVE);
    let center = z.iter().sum::<Complex64>() / m as f64;
    let radius = z.iter().map(|x| (x - center).norm()).fold(0.0_f64, f64::max).max(scale * 1e-3);

    // Shift and invert: the finite eigenvalues lambda of (E, B) are
    // sigma + 1/mu for the nonzero eigenvalues mu of (E - sigma B)^-1 B,
    // and the infinite ones map to mu = 0. The shift sits outside the
    // support cloud; a second shift is tried if the first is singular.
    let mut last_err = Error::EigNoConvergence { order: n };
    for k in 0..4 {
        let sigma = center + Complex64::from_polar(1.5 * radius, 0.7 + 1.9 * k as f64);
        let mut es = Mat::<Complex64>::zeros(n, n);
        for j in 0..m {
            es[(0, j + 1)] = w[j];
            es[(j + 1, 0)] = one;
            es[(j + 1, j + 1)] = z[j] - sigma;
        }
        let lu = es.partial_piv_lu();
        let mut rhs = Mat::<Complex64>::zeros(n, n);
        for j in 1..n {
            rhs[(j, j)] = one;
        }
        let t = lu.solve(&rhs);
        if !t.as_ref().is_all_finite() {
            continue;
        }
        let mu = match t.eigenvalues() {
            Ok(mu) => mu,
            Err(_) => {
                last_err = Error::EigNoConvergence { order: n };
                continue;
            }
        };
        let cutoff = INFINITE_EIG_FACTOR * scale;
        // the two infinite eigenvalues have the smallest |mu|; rounding can
        // leave one of them slightly nonzero
        let mut mu = mu;
        mu.sort_by(|a, b| b.norm().total_cmp(&a.norm()));
        let mut out = Vec::with_capacity(m - 1);
        for &mu in mu.iter().take(m - 1) {
            if mu.norm() == 0.0 {
                continue;
            }
            let lam = sigma + mu.inv();
            if lam.re.is_finite() && lam.im.is_finite() && lam.norm() <= cutoff {
                out.push(lam);
            }
        }
        aberth_polish(z, w, &mut out);
        out.retain(|l| l.re.is_finite() && l.im.is_finite() && l.norm() <= cutoff);
        out.sort_by(|p, q| p.re.total_cmp(&q.re).then(p.im.total_cmp(&q.im)));
        return Ok(out);
    }
    Err(last_err)
}

/// Simultaneous (Aberth) refinement of the roots of
/// `N(lam) = D(lam) prod (lam - z_j)`, `D = sum w_j / (lam - z_j)`.
///
/// The eigensolver's error is absolute, on the scale of the whole support
/// set; for support spread over many decades the small poles come out as
/// rounding noise. `D` itself is evaluated to high relative accuracy, and
/// the mutual repulsion keeps two starting values from landing on the
/// same root.
fn aberth_polish(z: &[Complex64], w: &[Complex64], lam: &mut [Complex64]) {
    let n = lam.len();
    let mut done = vec![false; n];
    for _ in 0..100 {
        let mut moved = false;
        for i in 0..n {
            if done[i] {
                continue;
            }
            let x = lam[i];
            let mut d = Complex64::new(0.0, 0.0);
            let mut dp = Complex64::new(0.0, 0.0);
            let mut s = Complex64::new(0.0, 0.0);
            let mut gap = f64::INFINITY;
            for (zj, wj) in z.iter().zip(w) {
                let c = (x - zj).inv();
                let t = wj * c;
                d += t;
                dp -= t * c;
                s += c;
                gap = gap.min((x - zj).norm());
            }
            if gap == 0.0 || d.norm() == 0.0 {
                done[i] = true;
                continue;
            }
            let ratio = dp / d + s;
            if !(ratio.norm() > 0.0) {
                done[i] = true;
                continue;
            }
            let rho = ratio.inv();
            let rep: Complex64 = (0..n)
                .filter(|&k| k != i && lam[k] != x)
                .map(|k| (x - lam[k]).inv())
                .sum();
            let corr = rho / (Complex64::new(1.0, 0.0) - rho * rep);
            let next = x - corr;
            if !(next.re.is_finite() && next.im.is_finite()) {
                done[i] = true;
                continue;
            }
            lam[i] = next;
            if corr.norm() <= 4.0 * f64::EPSILON * x.norm().min(gap).max(f64::MIN_POSITIVE) {
                done[i] = true;
            } else {
                moved = true;
            }
        }
        if !moved {
            break;
        }
    }
}

/// Result of [`lstsq_regularized`].
#[derive(Debug, Clone)]
pub struct LstsqSolution {
    pub x: Vec<f64>,
    /// `|Ax - b|_2`
    pub residual: f64,
    /// Number of singular directions kept.
    pub rank: usize,
}

/// Least squares with singular directions below `LSTSQ_RCOND * s_max`
/// discarded.
///
/// Tall problems are first reduced by a Householder QR of the augmented
/// matrix `[A b]`, whose last column carries `Q^T b`; the SVD then runs on
/// the small triangular factor.
pub fn lstsq_regularized(a: MatRef<'_, f64>, b: &[f64]) -> Result<LstsqSolution> {
    let (rows, cols) = a.shape();
    if rows == 0 {
        return Err(Error::InvalidInput("least-squares matrix has no rows".into()));
    }
    if b.len() != rows {
        return Err(Error::DimensionMismatch(format!(
            "matrix has {rows} rows but right-hand side has {}",
            b.len()
        )));
    }
    if cols == 0 {
        let residual = b.iter().map(|x| x * x).sum::<f64>().sqrt();
        return Ok(LstsqSolution {
            x: Vec::new(),
            residual,
            rank: 0,
        });
    }

    let (reduced, rhs) = if rows > cols {
        let aug = Mat::<f64>::from_fn(rows, cols + 1, |i, j| if j < cols { a[(i, j)] } else { b[i] });
        let qr = aug.qr();
        let r = qr.R();
        let reduced = Mat::<f64>::from_fn(cols, cols, |i, j| if i <= j { r[(i, j)] } else { 0.0 });
        let rhs: Vec<f64> = (0..cols).map(|i| r[(i, cols)]).collect();
        (reduced, rhs)
    } else {
        (a.to_owned(), b.to_vec())
    };

    let svd = reduced.thin_svd().map_err(|_| Error::SvdNoConvergence { rows, cols })?;
    let u = svd.U();
    let v = svd.V();
    let k = reduced.nrows().min(reduced.ncols());
    let s: Vec<f64> = (0..k).map(|i| svd.S()[i]).collect();
    let smax = s.first().copied().unwrap_or(0.0);
    let mut x = vec![0.0; cols];
    let mut rank = 0;
    if smax > 0.0 {
        for (i, &si) in s.iter().enumerate() {
            if si < LSTSQ_RCOND * smax {
                break;
            }
            rank += 1;
            let coef: f64 = (0..rhs.len()).map(|r| u[(r, i)] * rhs[r]).sum::<f64>() / si;
            for (j, xj) in x.iter_mut().enumerate() {
                *xj += coef * v[(j, i)];
            }
        }
    }

    let xc = Col::<f64>::from_fn(cols, |j| x[j]);
    let ax = a * &xc;
    let residual = (0..rows).map(|i| (ax[i] - b[i]).powi(2)).sum::<f64>().sqrt();
    Ok(LstsqSolution { x, residual, rank })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn svd_identity_and_zero() {
        let id = Mat::<Complex64>::from_fn(2, 2, |i, j| if i == j { c(1.0, 0.0) } else { c(0.0, 0.0) });
        let svd = svd_thin(id.as_ref()).unwrap();
        assert!((svd.s[0] - 1.0).abs() < 1e-15 && (svd.s[1] - 1.0).abs() < 1e-15);

        let zero = Mat::<Complex64>::zeros(2, 2);
        let svd = svd_thin(zero.as_ref()).unwrap();
        assert_eq!(svd.s, vec![0.0, 0.0]);
        let vhv = svd.v.adjoint() * &svd.v;
        for i in 0..2 {
            for j in 0..2 {
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((vhv[(i, j)] - c(want, 0.0)).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn svd_reconstructs_random_matrix() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let m = Mat::<Complex64>::from_fn(8, 3, |_, _| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
        let svd = svd_thin(m.as_ref()).unwrap();
        assert!(svd.s.windows(2).all(|p| p[0] >= p[1]));
        let sig = Mat::<Complex64>::from_fn(3, 3, |i, j| if i == j { c(svd.s[i], 0.0) } else { c(0.0, 0.0) });
        let rebuilt = &svd.u * &sig * svd.v.adjoint();
        let diff = (&rebuilt - &m).norm_l2();
        assert!(diff <= 1e-12 * m.norm_l2(), "{diff}");
        let vhv = svd.v.adjoint() * &svd.v;
        for i in 0..3 {
            for j in 0..3 {
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((vhv[(i, j)] - c(want, 0.0)).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn last_right_singular_vector_minimizes() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let m = Mat::<Complex64>::from_fn(20, 5, |_, _| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
        let (s, v) = right_singular_vectors(m.as_ref()).unwrap();
        let w = v.col(4).to_owned();
        let mw = (&m * &w).norm_l2();
        assert!((mw - s[4]).abs() < 1e-12);
    }

    #[test]
    fn pencil_symmetric_pair_has_root_at_origin() {
        let eig = eig_arrowhead_pencil(&[c(-1.0, 0.0), c(1.0, 0.0)], &[c(1.0, 0.0), c(1.0, 0.0)]).unwrap();
        assert_eq!(eig.len(), 1);
        assert!(eig[0].norm() < 1e-14);
    }

    #[test]
    fn pencil_identity_map_has_no_finite_poles() {
        let eig = eig_arrowhead_pencil(&[c(0.0, 0.0), c(1.0, 0.0)], &[c(1.0, 0.0), c(-1.0, 0.0)]).unwrap();
        assert!(eig.is_empty(), "{eig:?}");
    }

    #[test]
    fn pencil_rejects_zero_weights() {
        let r = eig_arrowhead_pencil(&[c(0.0, 0.0), c(1.0, 0.0)], &[c(0.0, 0.0); 2]);
        assert!(matches!(r, Err(Error::DegeneratePencil)));
    }

    #[test]
    fn lstsq_identity() {
        let a = Mat::<f64>::identity(2, 2);
        let sol = lstsq_regularized(a.as_ref(), &[3.0, 4.0]).unwrap();
        assert!((sol.x[0] - 3.0).abs() < 1e-15 && (sol.x[1] - 4.0).abs() < 1e-15);
        assert!(sol.residual < 1e-15);
    }

    #[test]
    fn lstsq_mean_of_data() {
        let a = Mat::<f64>::from_fn(2, 1, |_, _| 1.0);
        let sol = lstsq_regularized(a.as_ref(), &[0.0, 2.0]).unwrap();
        assert!((sol.x[0] - 1.0).abs() < 1e-15);
        assert!((sol.residual - 2f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn lstsq_absorbs_duplicate_columns() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let col: Vec<f64> = (0..10).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let other: Vec<f64> = (0..10).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let a = Mat::<f64>::from_fn(10, 3, |i, j| if j < 2 { col[i] } else { other[i] });
        let b: Vec<f64> = (0..10).map(|i| 2.0 * col[i] - 0.5 * other[i]).collect();
        let sol = lstsq_regularized(a.as_ref(), &b).unwrap();
        let bn = b.iter().map(|x| x * x).sum::<f64>().sqrt();
        assert!(sol.x.iter().all(|x| x.is_finite()));
        assert!(sol.residual <= 1e-12 * bn);
        assert_eq!(sol.rank, 2);
    }

    #[test]
    fn lstsq_dimension_mismatch() {
        let a = Mat::<f64>::identity(3, 2);
        assert!(matches!(
            lstsq_regularized(a.as_ref(), &[1.0, 2.0]),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn lstsq_underdetermined() {
        let a = Mat::<f64>::from_fn(1, 2, |_, _| 1.0);
        let sol = lstsq_regularized(a.as_ref(), &[2.0]).unwrap();
        assert!((sol.x[0] - 1.0).abs() < 1e-14 && (sol.x[1] - 1.0).abs() < 1e-14);
    }
}
