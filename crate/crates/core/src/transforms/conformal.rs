use std::f64::consts::TAU;

use faer::Mat;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::aaa::{aaa_fit, AaaOptions};
use crate::arnoldi::{va_eval, va_orthog, ArnoldiBasis, CenterMap};
use crate::barycentric::BarycentricRational;
use crate::error::{Error, Result};
use crate::geometry::{sample_boundary, Domain};
use crate::laplace::{solve, BoundaryData, DataFn, SolverOptions, Variant};
use crate::linalg::lstsq_regularized;

#[derive(Debug, Clone, PartialEq)]
pub struct ConformalOptions {
    pub solver: SolverOptions,
    /// AAA tolerance for compressing the forward map and fitting the inverse.
    pub compression_tol: f64,
    /// Polynomial degree of the inverse refit.
    pub inverse_degree: usize,
    /// Random disk points for the round-trip check.
    pub test_points: usize,
    pub seed: u64,
}

impl Default for ConformalOptions {
    fn default() -> Self {
        Self {
            solver: SolverOptions {
                variant: Variant::Global,
                samples_per_segment: 1000,
                ..Default::default()
            },
            compression_tol: 1e-11,
            inverse_degree: 20,
            test_points: 10_000,
            seed: 7,
        }
    }
}

/// `z = P(w) + sum c_k d_k / (w - p_k)` with all poles outside the closed disk.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InverseMap {
    pub poles: Vec<Complex64>,
    pub scaling: Vec<f64>,
    pub polynomial: ArnoldiBasis,
    /// Polynomial coefficients followed by pole coefficients.
    pub coefficients: Vec<Complex64>,
}

impl InverseMap {
    pub fn eval_many(&self, w: &[Complex64]) -> Vec<Complex64> {
        if w.is_empty() {
            return Vec::new();
        }
        let p = va_eval(w, &self.polynomial);
        let np = p.ncols();
        (0..w.len())
            .map(|i| {
                let mut acc = Complex64::new(0.0, 0.0);
                for j in 0..np {
                    acc += p[(i, j)] * self.coefficients[j];
                }
                for (k, (pk, dk)) in self.poles.iter().zip(&self.scaling).enumerate() {
                    acc += self.coefficients[np + k] * dk / (w[i] - pk);
                }
                acc
            })
            .collect()
    }

    pub fn eval(&self, w: Complex64) -> Complex64 {
        self.eval_many(&[w])[0]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConformalDiagnostics {
    /// Boundary error of the Laplace solve for `-log|z|`.
    pub laplace_error: f64,
    /// `max |g_compressed - g|` on the fitting points.
    pub forward_fit_error: f64,
    /// `max |inverse(g(Z)) - Z|` on the boundary samples.
    pub inverse_fit_error: f64,
    pub inverse_poles_discarded: usize,
    /// `max |w - g(inverse(w))|` over random disk points.
    pub roundtrip_error: f64,
    pub roundtrip_points: usize,
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConformalMap {
    pub forward: BarycentricRational,
    pub inverse: InverseMap,
    pub diagnostics: ConformalDiagnostics,
}

impl ConformalMap {
    pub fn forward(&self, z: Complex64) -> Complex64 {
        self.forward.eval(z)
    }

    pub fn inverse(&self, w: Complex64) -> Complex64 {
        self.inverse.eval(w)
    }

    /// Largest `|w - g(inverse(w))|` over the given disk points.
    pub fn roundtrip_error(&self, w: &[Complex64]) -> f64 {
        let z = self.inverse.eval_many(w);
        z.iter()
            .zip(w)
            .map(|(&zi, &wi)| (self.forward.eval(zi) - wi).norm())
            .fold(0.0, f64::max)
    }
}

/// Points uniformly distributed in the unit disk.
pub fn random_disk_points(n: usize, seed: u64) -> Vec<Complex64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let r: f64 = rng.gen::<f64>().sqrt();
            let t: f64 = rng.gen::<f64>() * TAU;
            Complex64::from_polar(r, t)
        })
        .collect()
}

/// Map of a simply connected `d` containing 0 onto the unit disk, with
/// `g(0) = 0` and `g'(0) > 0`.
pub fn conformal_map(d: &Domain, opts: &ConformalOptions) -> Result<ConformalMap> {
    if !d.is_bounded() || !d.is_simply_connected() {
        return Err(Error::InvalidInput("conformal maps need a bounded simply connected domain".into()));
    }
    let zero = Complex64::new(0.0, 0.0);
    if !d.contains(zero) {
        return Err(Error::OriginOutside);
    }
    let mut warnings = Vec::new();
    let sol = solve(d, &BoundaryData::Uniform(DataFn::NegLogAbs), &opts.solver)?;
    warnings.extend(sol.diagnostics.warnings.iter().cloned());
    let v0 = sol.eval_f(&[zero])[0].im;
    let g_exact = |z: &[Complex64]| -> Vec<Complex64> {
        sol.eval_f(z)
            .into_iter()
            .zip(z)
            .map(|(f, &p)| p * (f - Complex64::new(0.0, v0)).exp())
            .collect()
    };

    let boundary = sample_boundary(d, opts.solver.samples_per_segment, &opts.solver.clustering)?.z;
    let mut pts = boundary.clone();
    pts.push(zero);
    for rho in [0.95, 0.85, 0.7, 0.5, 0.3] {
        pts.extend(boundary.iter().step_by(4).map(|z| z * rho).filter(|z| d.contains(*z)));
    }
    let gvals = g_exact(&pts);
    let aaa = AaaOptions {
        tol: opts.compression_tol,
        max_degree: opts.solver.aaa.max_degree,
    };
    let fwd = aaa_fit(&pts, &gvals, &aaa)?;
    let forward_fit_error = pts
        .iter()
        .zip(&gvals)
        .map(|(z, g)| (fwd.r.eval(*z) - g).norm())
        .fold(0.0, f64::max);

    // inverse: AAA on swapped pairs, then poles in the closed disk dropped
    // and the rest refitted on the boundary circle
    let inv_fit = aaa_fit(&gvals, &pts, &aaa)?;
    let (poles, dropped): (Vec<Complex64>, Vec<Complex64>) = inv_fit
        .poles
        .poles
        .iter()
        .partition(|p| p.norm() > 1.0 + 1e-12 && p.re.is_finite() && p.im.is_finite());
    let w_b: Vec<Complex64> = gvals[..boundary.len()].to_vec();
    let (basis, q) = va_orthog(&w_b, opts.inverse_degree, CenterMap::Identity)?;
    let scaling: Vec<f64> = poles
        .iter()
        .map(|p| w_b.iter().map(|w| (w - p).norm()).fold(f64::INFINITY, f64::min))
        .collect();
    let np = q.ncols();
    let n = np + poles.len();
    let col = |i: usize, j: usize| -> Complex64 {
        if j < np {
            q[(i, j)]
        } else {
            scaling[j - np] / (w_b[i] - poles[j - np])
        }
    };
    let m = w_b.len();
    // complex least squares in real form [[Re A, -Im A], [Im A, Re A]]
    let a = Mat::<f64>::from_fn(2 * m, 2 * n, |i, j| {
        let c = col(i % m, j % n);
        match (i < m, j < n) {
            (true, true) => c.re,
            (true, false) => -c.im,
            (false, true) => c.im,
            (false, false) => c.re,
        }
    });
    let rhs: Vec<f64> = boundary.iter().map(|z| z.re).chain(boundary.iter().map(|z| z.im)).collect();
    let ls = lstsq_regularized(a.as_ref(), &rhs)?;
    let inverse = InverseMap {
        poles,
        scaling,
        polynomial: basis,
        coefficients: (0..n).map(|j| Complex64::new(ls.x[j], ls.x[n + j])).collect(),
    };
    let inverse_fit_error = inverse
        .eval_many(&w_b)
        .iter()
        .zip(&boundary)
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max);

    let mut map = ConformalMap {
        forward: fwd.r,
        inverse,
        diagnostics: ConformalDiagnostics {
            laplace_error: sol.diagnostics.boundary_error,
            forward_fit_error,
            inverse_fit_error,
            inverse_poles_discarded: dropped.len(),
            roundtrip_error: 0.0,
            roundtrip_points: opts.test_points,
            warnings,
        },
    };
    let test = random_disk_points(opts.test_points, opts.seed);
    let rt = map.roundtrip_error(&test);
    map.diagnostics.roundtrip_error = rt;
    if !(rt <= 1e-5) {
        map.diagnostics.warnings.push(format!("round-trip error {rt:.3e} exceeds 1e-5"));
    }
    Ok(map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{BoundaryComponent, Segment};

    fn disk(radius: f64) -> Domain {
        let c = Segment::circle(Complex64::new(0.0, 0.0), radius, true).unwrap();
        Domain::simple(BoundaryComponent::new(vec![c], vec![]).unwrap()).unwrap()
    }

    fn quick() -> ConformalOptions {
        ConformalOptions {
            solver: SolverOptions {
                variant: Variant::Global,
                samples_per_segment: 200,
                ..Default::default()
            },
            test_points: 500,
            ..Default::default()
        }
    }

    #[test]
    fn unit_disk_maps_to_itself() {
        let m = conformal_map(&disk(1.0), &quick()).unwrap();
        for w in random_disk_points(100, 3) {
            assert!((m.forward(w) - w).norm() < 1e-12);
            assert!((m.inverse(w) - w).norm() < 1e-12);
        }
        assert!(m.diagnostics.roundtrip_error < 1e-12);
    }

    #[test]
    fn disk_of_radius_two_is_halved() {
        let m = conformal_map(&disk(2.0), &quick()).unwrap();
        for z in random_disk_points(100, 4) {
            let z = 2.0 * z;
            assert!((m.forward(z) - z / 2.0).norm() < 1e-10, "{z}");
        }
    }

    #[test]
    fn origin_must_be_inside() {
        let c = Segment::circle(Complex64::new(5.0, 0.0), 1.0, true).unwrap();
        let d = Domain::simple(BoundaryComponent::new(vec![c], vec![]).unwrap()).unwrap();
        assert!(matches!(conformal_map(&d, &quick()), Err(Error::OriginOutside)));
    }
}
