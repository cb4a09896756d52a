//! Barycentric rational functions `r(z) = N(z) / D(z)` with
//! `N = sum w_j f_j / (z - z_j)` and `D = sum w_j / (z - z_j)`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::eig_arrowhead_pencil;

/// Pole pairs closer than this multiple of the support scale are reported
/// as a possible double pole.
pub const NEAR_DOUBLE_POLE: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BarycentricRational {
    support: Vec<Complex64>,
    values: Vec<Complex64>,
    weights: Vec<Complex64>,
}

/// Poles with their residues.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct PoleSet {
    pub poles: Vec<Complex64>,
    pub residues: Vec<Complex64>,
    /// Set when two poles are closer than [`NEAR_DOUBLE_POLE`] times the
    /// support scale; residues from `N/D'` are unreliable there.
    #[serde(default)]
    pub near_double: bool,
}

impl PoleSet {
    pub fn len(&self) -> usize {
        self.poles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.poles.is_empty()
    }

    /// Evaluates `sum_k res_k / (z - p_k)`.
    pub fn partial_fractions(&self, z: Complex64) -> Complex64 {
        self.poles
            .iter()
            .zip(&self.residues)
            .map(|(p, a)| a / (z - p))
            .sum()
    }
}

impl BarycentricRational {
    pub fn new(support: Vec<Complex64>, values: Vec<Complex64>, weights: Vec<Complex64>) -> Result<Self> {
        if support.len() != values.len() || support.len() != weights.len() {
            return Err(Error::DimensionMismatch(format!(
                "support {}, values {}, weights {}",
                support.len(),
                values.len(),
                weights.len()
            )));
        }
        if support.is_empty() || weights.iter().all(|w| w.norm() == 0.0) {
            return Err(Error::InvalidInput("at least one nonzero weight is required".into()));
        }
        for i in 0..support.len() {
            for j in 0..i {
                if support[i] == support[j] {
                    return Err(Error::InvalidInput(format!(
                        "support points {j} and {i} coincide"
                    )));
                }
            }
        }
        Ok(Self {
            support,
            values,
            weights,
        })
    }

    pub fn support(&self) -> &[Complex64] {
        &self.support
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn weights(&self) -> &[Complex64] {
        &self.weights
    }

    /// Number of support points minus one.
    pub fn degree(&self) -> usize {
        self.support.len() - 1
    }

    fn scale(&self) -> f64 {
        self.support.iter().map(|z| z.norm()).fold(0.0, f64::max).max(1.0)
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        if self.support.len() == 1 {
            // N/D is the constant f_0; avoid its rounding
            return self.values[0];
        }
        let mut num = Complex64::new(0.0, 0.0);
        let mut den = Complex64::new(0.0, 0.0);
        for ((zj, fj), wj) in self.support.iter().zip(&self.values).zip(&self.weights) {
            if z == *zj {
                return *fj;
            }
            let c = wj / (z - zj);
            num += c * fj;
            den += c;
        }
        if den.norm() == 0.0 {
            return signed_infinity(num);
        }
        num / den
    }

    pub fn eval_many(&self, z: &[Complex64]) -> Vec<Complex64> {
        z.iter().map(|&x| self.eval(x)).collect()
    }

    /// Zeros of the denominator via the arrowhead pencil.
    pub fn poles(&self) -> Result<Vec<Complex64>> {
        if self.support.len() < 2 {
            return Ok(Vec::new());
        }
        eig_arrowhead_pencil(&self.support, &self.weights)
    }

    /// Poles and residues `N(p) / D'(p)`.
    pub fn poles_and_residues(&self) -> Result<PoleSet> {
        let poles = self.poles()?;
        let residues = poles
            .iter()
            .map(|&p| {
                let mut num = Complex64::new(0.0, 0.0);
                let mut dprime = Complex64::new(0.0, 0.0);
                for ((zj, fj), wj) in self.support.iter().zip(&self.values).zip(&self.weights) {
                    let inv = (p - zj).inv();
                    num += wj * fj * inv;
                    dprime -= wj * inv * inv;
                }
                num / dprime
            })
            .collect();
        let tol = NEAR_DOUBLE_POLE * self.scale();
        let mut near_double = false;
        'outer: for i in 0..poles.len() {
            for j in 0..i {
                if (poles[i] - poles[j]).norm() < tol {
                    near_double = true;
                    break 'outer;
                }
            }
        }
        Ok(PoleSet {
            poles,
            residues,
            near_double,
        })
    }
}

fn signed_infinity(num: Complex64) -> Complex64 {
    let part = |x: f64| {
        if x == 0.0 {
            0.0
        } else {
            f64::INFINITY.copysign(x)
        }
    };
    if num.re == 0.0 && num.im == 0.0 {
        Complex64::new(f64::NAN, f64::NAN)
    } else {
        Complex64::new(part(num.re), part(num.im))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn identity_map() -> BarycentricRational {
        BarycentricRational::new(
            vec![c(0.0, 0.0), c(1.0, 0.0)],
            vec![c(0.0, 0.0), c(1.0, 0.0)],
            vec![c(1.0, 0.0), c(-1.0, 0.0)],
        )
        .unwrap()
    }

    #[test]
    fn identity_map_evaluates_to_z() {
        let r = identity_map();
        assert!((r.eval(c(0.5, 0.0)) - c(0.5, 0.0)).norm() < 1e-15);
        assert!((r.eval(c(3.0, -2.0)) - c(3.0, -2.0)).norm() < 1e-14);
        assert!(r.poles_and_residues().unwrap().is_empty());
    }

    #[test]
    fn support_point_hit_returns_value_exactly() {
        let r = BarycentricRational::new(
            vec![c(0.0, 0.0), c(1.0, 0.0), c(0.0, 2.0)],
            vec![c(1.5, 0.0), c(-2.0, 1.0), c(0.25, 0.0)],
            vec![c(0.3, 0.1), c(-0.7, 0.0), c(0.2, 0.5)],
        )
        .unwrap();
        assert_eq!(r.eval(c(1.0, 0.0)), c(-2.0, 1.0));
        assert_eq!(r.eval(c(0.0, 2.0)), c(0.25, 0.0));
    }

    #[test]
    fn pole_evaluates_to_infinity() {
        // 1/(z+1) + 1/(z-1) vanishes at 0, so r has a pole there
        let r = BarycentricRational::new(
            vec![c(-1.0, 0.0), c(1.0, 0.0)],
            vec![c(1.0, 0.0), c(2.0, 0.0)],
            vec![c(1.0, 0.0), c(1.0, 0.0)],
        )
        .unwrap();
        let v = r.eval(c(0.0, 0.0));
        assert!(v.re.is_infinite());
    }

    #[test]
    fn rejects_invalid() {
        assert!(BarycentricRational::new(vec![c(0.0, 0.0)], vec![], vec![c(1.0, 0.0)]).is_err());
        assert!(BarycentricRational::new(
            vec![c(0.0, 0.0), c(0.0, 0.0)],
            vec![c(0.0, 0.0); 2],
            vec![c(1.0, 0.0); 2]
        )
        .is_err());
        assert!(BarycentricRational::new(vec![c(0.0, 0.0)], vec![c(0.0, 0.0)], vec![c(0.0, 0.0)]).is_err());
    }
}
