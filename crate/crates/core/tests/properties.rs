use std::f64::consts::PI;

use aaals::aaa::{aaa_fit, AaaOptions};
use aaals::arnoldi::{va_eval, va_orthog, CenterMap};
use aaals::barycentric::BarycentricRational;
use aaals::geometry::{sample_boundary, BoundaryComponent, Domain};
use aaals::linalg::lstsq_regularized;
use aaals::transforms::{default_grid, hilbert_transform, HilbertFunction, HilbertOptions};
use aaals::Complex64;
use faer::Mat;
use proptest::collection::vec;
use proptest::prelude::*;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn cplx(r: f64) -> impl Strategy<Value = Complex64> {
    (-r..r, -r..r).prop_map(|(a, b)| c(a, b))
}

/// `m` points near the unit circle at jittered equispaced angles.
fn support(m: usize) -> impl Strategy<Value = Vec<Complex64>> {
    vec((0.0..0.1f64, 0.0..0.5f64), m).prop_map(move |jit| {
        jit.iter()
            .enumerate()
            .map(|(j, &(dr, dt))| Complex64::from_polar(1.0 + dr, 2.0 * PI * (j as f64 + dt) / jit.len() as f64))
            .collect()
    })
}

/// Roots of the barycentric denominator placed by construction:
/// `w_j = prod_k (z_j - q_k) / prod_{i != j} (z_j - z_i)`.
fn weights_for_poles(z: &[Complex64], q: &[Complex64]) -> Vec<Complex64> {
    z.iter()
        .enumerate()
        .map(|(j, &zj)| {
            let num: Complex64 = q.iter().map(|&qk| zj - qk).product();
            let den: Complex64 = z.iter().enumerate().filter(|(i, _)| *i != j).map(|(_, &zi)| zj - zi).product();
            num / den
        })
        .collect()
}

fn separated(q: &[Complex64], gap: f64) -> bool {
    q.iter().enumerate().all(|(i, a)| q[..i].iter().all(|b| (a - b).norm() > gap))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn pencil_matches_prescribed_roots(
        (z, q, f) in (2usize..=12).prop_flat_map(|m| (support(m), vec(cplx(0.55), m - 1), vec(cplx(1.0), m)))
    ) {
        prop_assume!(separated(&q, 0.05));
        let w = weights_for_poles(&z, &q);
        let r = BarycentricRational::new(z, f, w).unwrap();
        let p = r.poles().unwrap();
        prop_assert_eq!(p.len(), q.len());
        for want in &q {
            let err = p.iter().map(|g| (g - want).norm()).fold(f64::INFINITY, f64::min);
            prop_assert!(err <= 1e-9, "pole {} missed by {:e}", want, err);
        }
    }

    #[test]
    fn barycentric_interpolates_and_matches_polynomial_form(
        (z, f, w) in (2usize..=10).prop_flat_map(|m| (support(m), vec(cplx(1.0), m), vec(cplx(1.0), m))),
        pts in vec(cplx(0.8), 100),
    ) {
        prop_assume!(w.iter().all(|x| x.norm() > 1e-3));
        let r = BarycentricRational::new(z.clone(), f.clone(), w.clone()).unwrap();
        for (zj, fj) in z.iter().zip(&f) {
            prop_assert_eq!(r.eval(*zj), *fj);
        }
        prop_assert!(r.poles().unwrap().len() < z.len());
        // N and D multiplied through by prod (t - z_j)
        let ell = |t: Complex64, j: usize| -> Complex64 {
            z.iter().enumerate().filter(|(i, _)| *i != j).map(|(_, &zi)| t - zi).product()
        };
        for t in pts {
            let num: Complex64 = (0..z.len()).map(|j| w[j] * f[j] * ell(t, j)).sum();
            let den: Complex64 = (0..z.len()).map(|j| w[j] * ell(t, j)).sum();
            prop_assume!(den.norm() > 1e-6);
            let want = num / den;
            prop_assert!((r.eval(t) - want).norm() <= 1e-10 * want.norm().max(1.0));
        }
    }

    #[test]
    fn aaa_recovers_low_degree_rationals(
        (poles, res) in (1usize..=8).prop_flat_map(|k| (vec((1.2..3.0f64, 0.0..2.0 * PI), k), vec(cplx(1.0), k)))
    ) {
        let p: Vec<Complex64> = poles.iter().map(|&(r, t)| Complex64::from_polar(r, t)).collect();
        prop_assume!(separated(&p, 0.1));
        let k = p.len();
        let z: Vec<Complex64> = (0..500).map(|j| Complex64::from_polar(1.0, 2.0 * PI * j as f64 / 500.0)).collect();
        let f: Vec<Complex64> = z.iter().map(|&x| 0.5 + p.iter().zip(&res).map(|(&pk, &ak)| ak / (x - pk)).sum::<Complex64>()).collect();
        let fit = aaa_fit(&z, &f, &AaaOptions { tol: 1e-12, max_degree: 150 }).unwrap();
        prop_assert!(fit.converged);
        prop_assert!(fit.support_indices.len() <= k + 2, "{} support points for degree {}", fit.support_indices.len(), k);
        for &j in &fit.support_indices {
            prop_assert_eq!(fit.r.eval(z[j]), f[j]);
        }
        // no cleanup: every finite pencil eigenvalue is reported
        prop_assert!(fit.poles.len() <= fit.support_indices.len() - 1);
    }

    #[test]
    fn arnoldi_is_orthonormal_and_reproducible(
        z in vec(cplx(1.0), 40..200),
        n in 0usize..30,
        center in cplx(0.3),
        reciprocal in any::<bool>(),
    ) {
        let map = if reciprocal { CenterMap::Reciprocal { center: center + c(3.0, 0.0) } } else { CenterMap::Identity };
        prop_assume!(n < z.len() && separated(&z, 1e-3));
        let (basis, q) = va_orthog(&z, n, map).unwrap();
        let m = z.len() as f64;
        let g = q.adjoint() * &q;
        for i in 0..=n {
            for j in 0..=n {
                let want = if i == j { 1.0 } else { 0.0 };
                prop_assert!((g[(i, j)] / m - want).norm() <= 1e-10);
            }
        }
        let e = va_eval(&z, &basis);
        for i in 0..z.len() {
            for j in 0..=n {
                prop_assert!((e[(i, j)] - q[(i, j)]).norm() <= 1e-12);
            }
        }
        let h = basis.hessenberg();
        for k in 0..n {
            prop_assert!(h[(k + 1, k)].re > 0.0 && h[(k + 1, k)].im == 0.0);
            for i in k + 2..=n {
                prop_assert_eq!(h[(i, k)], c(0.0, 0.0));
            }
        }
    }

    #[test]
    fn contains_agrees_with_winding_number(
        radii in vec(0.3..1.5f64, 3..12),
        pts in vec(cplx(1.6), 200),
    ) {
        let n = radii.len();
        let v: Vec<Complex64> = radii.iter().enumerate().map(|(k, &r)| Complex64::from_polar(r, 2.0 * PI * k as f64 / n as f64)).collect();
        let d = Domain::simple(BoundaryComponent::polygon(&v).unwrap()).unwrap();
        for z in pts {
            if d.distance_to_boundary(z) < 1e-9 {
                continue;
            }
            let wind: f64 = (0..n).map(|k| ((v[(k + 1) % n] - z) / (v[k] - z)).arg()).sum::<f64>() / (2.0 * PI);
            prop_assert_eq!(d.contains(z), wind.round() as i64 == 1, "at {}", z);
        }
    }

    #[test]
    fn samples_lie_on_the_boundary(radii in vec(0.3..1.5f64, 3..8), per in 10usize..80) {
        let n = radii.len();
        let v: Vec<Complex64> = radii.iter().enumerate().map(|(k, &r)| Complex64::from_polar(r, 2.0 * PI * k as f64 / n as f64)).collect();
        let d = Domain::simple(BoundaryComponent::polygon(&v).unwrap()).unwrap();
        let s = sample_boundary(&d, per, &Default::default()).unwrap();
        for (z, &seg) in s.z.iter().zip(&s.segment) {
            let (a, b) = (v[seg], v[(seg + 1) % n]);
            let t = ((z - a) / (b - a)).re;
            let off = (a + (b - a) * t - z).norm();
            prop_assert!(off <= 1e-12 && (-1e-12..=1.0 + 1e-12).contains(&t));
        }
    }

    #[test]
    fn reflection_identity_on_the_line(
        terms in vec((cplx(2.0), 0.05..1.0f64, cplx(1.0)), 1..8),
        c0 in -1.0..1.0f64,
    ) {
        // poles p in the lower half-plane, partners conj(p) above
        let lower: Vec<(Complex64, Complex64)> = terms.iter().map(|&(p, d, a)| (c(p.re, -d), a)).collect();
        let r = |x: f64| -> f64 {
            let x = c(x, 0.0);
            (c0 + lower.iter().map(|&(p, a)| a / (x - p) + a.conj() / (x - p.conj())).sum::<Complex64>()).re
        };
        let r_plus = |x: f64| -> Complex64 { c0 + 2.0 * lower.iter().map(|&(p, a)| a / (c(x, 0.0) - p)).sum::<Complex64>() };
        for k in 0..500 {
            let x = -5.0 + 10.0 * k as f64 / 499.0;
            prop_assert!((r_plus(x).re - r(x)).abs() <= 1e-12 * r(x).abs().max(1.0));
        }
    }

    #[test]
    fn lstsq_residual_is_minimal(
        (rows, cols, data) in (5usize..30, 1usize..5).prop_flat_map(|(r, c)| (Just(r), Just(c), vec(-1.0..1.0f64, r * (c + 1)))),
        perturb in vec(vec(-1e-3..1e-3f64, 5), 100),
    ) {
        prop_assume!(cols < rows);
        let a = Mat::from_fn(rows, cols, |i, j| data[i * (cols + 1) + j]);
        let b: Vec<f64> = (0..rows).map(|i| data[i * (cols + 1) + cols]).collect();
        let sol = lstsq_regularized(a.as_ref(), &b).unwrap();
        let resid = |x: &[f64]| -> f64 {
            (0..rows).map(|i| {
                let ax: f64 = (0..cols).map(|j| a[(i, j)] * x[j]).sum();
                (ax - b[i]).powi(2)
            }).sum::<f64>().sqrt()
        };
        prop_assert!((resid(&sol.x) - sol.residual).abs() <= 1e-12);
        for p in perturb {
            let x: Vec<f64> = sol.x.iter().zip(&p).map(|(a, b)| a + b).collect();
            prop_assert!(sol.residual <= resid(&x) + 1e-14);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn hilbert_is_linear(alpha in -2.0..2.0f64, beta in -2.0..2.0f64) {
        let y = default_grid();
        let (f1, f2) = (HilbertFunction::Runge, HilbertFunction::Gauss);
        let opts = HilbertOptions::default();
        let u1: Vec<f64> = y.iter().map(|&x| f1.eval(x)).collect();
        let u2: Vec<f64> = y.iter().map(|&x| f2.eval(x)).collect();
        let mix: Vec<f64> = u1.iter().zip(&u2).map(|(a, b)| alpha * a + beta * b).collect();
        let (h1, h2) = (hilbert_transform(&y, &u1, &opts).unwrap(), hilbert_transform(&y, &u2, &opts).unwrap());
        let h = hilbert_transform(&y, &mix, &opts).unwrap();
        for t in [-3.0, -0.7, 0.0, 0.4, 2.0, 5.0] {
            let want = alpha * h1.eval_v(t) + beta * h2.eval_v(t);
            prop_assert!((h.eval_v(t) - want).abs() <= 1e-6, "v({}) = {} against {}", t, h.eval_v(t), want);
        }
        // analytic in the upper half-plane
        prop_assert!(h.poles.iter().all(|p| p.im < 0.0));
        for k in 0..100 {
            let z = c(-10.0 + 0.2 * k as f64, 0.01 + 0.05 * k as f64);
            let f = h.eval_f(z);
            prop_assert!(f.re.is_finite() && f.im.is_finite());
        }
    }
}

#[test]
fn conformal_map_is_normalized_and_bounded() {
    use aaals::scenarios::{smooth_domain, SMOOTH_SEED};
    use aaals::transforms::{conformal_map, ConformalOptions};

    let d = smooth_domain(SMOOTH_SEED);
    let map = conformal_map(&d, &ConformalOptions::default()).unwrap();
    assert!(map.forward(c(0.0, 0.0)).norm() <= 1e-10);
    let h = 1e-5;
    let g1 = (map.forward(c(h, 0.0)) - map.forward(c(-h, 0.0))) / (2.0 * h);
    assert!(g1.re > 0.0 && g1.im.abs() <= 1e-6 * g1.re, "g'(0) = {g1}");

    let bound = 1.0 + 10.0 * map.diagnostics.laplace_error;
    let mut n = 0;
    for i in 0..60 {
        for j in 0..60 {
            let z = c(-1.4 + 2.8 * i as f64 / 59.0, -1.4 + 2.8 * j as f64 / 59.0);
            if d.contains(z) {
                assert!(map.forward(z).norm() <= bound, "|g({z})| = {}", map.forward(z).norm());
                n += 1;
            }
        }
    }
    assert!(n > 1000);
}
