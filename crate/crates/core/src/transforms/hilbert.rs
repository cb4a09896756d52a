use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::aaa::{aaa_fit, AaaOptions};
use crate::error::{Error, Result};
use crate::linalg::lstsq_regularized;
use crate::special::{exp_e1, exp_ei};

/// Built-in test functions on the real line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum HilbertFunction {
    /// `1 / (1 + x^2)`
    Runge,
    /// `1 / (1 + x^4)`
    Quartic,
    /// `sin x / (1 + x^2)`
    Sinc2,
    /// `sin x / (1 + x^4)`
    Sinc4,
    /// `exp(-x^2)`
    Gauss,
    /// `sech x`
    Sech,
    /// `exp(-|x|)`
    AbsExp,
}

impl HilbertFunction {
    pub const ALL: [HilbertFunction; 7] = [
        HilbertFunction::Runge,
        HilbertFunction::Quartic,
        HilbertFunction::Sinc2,
        HilbertFunction::Sinc4,
        HilbertFunction::Gauss,
        HilbertFunction::Sech,
        HilbertFunction::AbsExp,
    ];

    pub fn id(self) -> &'static str {
        match self {
            HilbertFunction::Runge => "runge",
            HilbertFunction::Quartic => "quartic",
            HilbertFunction::Sinc2 => "sinc2",
            HilbertFunction::Sinc4 => "sinc4",
            HilbertFunction::Gauss => "gauss",
            HilbertFunction::Sech => "sech",
            HilbertFunction::AbsExp => "abs-exp",
        }
    }

    pub fn parse(id: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|f| f.id() == id.trim())
            .ok_or_else(|| {
                let known: Vec<&str> = Self::ALL.iter().map(|f| f.id()).collect();
                Error::Parse(format!("unknown function {id:?}; expected one of {}", known.join(", ")))
            })
    }

    pub fn eval(self, x: f64) -> f64 {
        match self {
            HilbertFunction::Runge => 1.0 / (1.0 + x * x),
            HilbertFunction::Quartic => 1.0 / (1.0 + x.powi(4)),
            HilbertFunction::Sinc2 => x.sin() / (1.0 + x * x),
            HilbertFunction::Sinc4 => x.sin() / (1.0 + x.powi(4)),
            HilbertFunction::Gauss => (-x * x).exp(),
            HilbertFunction::Sech => 1.0 / x.cosh(),
            HilbertFunction::AbsExp => (-x.abs()).exp(),
        }
    }

    /// Published `v(2)` and the error reported alongside it.
    pub fn reference_at_two(self) -> (f64, f64) {
        match self {
            HilbertFunction::Runge => (0.400000000000000, -1.3e-12),
            HilbertFunction::Quartic => (0.415945165403851, -4.3e-14),
            HilbertFunction::Sinc2 => (0.156805255543717, 3.4e-6),
            HilbertFunction::Sinc4 => (0.121897775700258, -1.7e-7),
            HilbertFunction::Gauss => (0.340026217066066, 1.0e-13),
            HilbertFunction::Sech => (0.506584586167368, 1.3e-10),
            HilbertFunction::AbsExp => (0.328435745958114, -1.4e-12),
        }
    }
}

/// Exact conjugate of `exp(-|x|)`:
/// `sign(y) (e^|y| E1(|y|) + e^-|y| Ei(|y|)) / pi`.
pub fn abs_exp_conjugate(y: f64) -> f64 {
    if y == 0.0 {
        return 0.0;
    }
    let a = y.abs();
    y.signum() * (a.exp() * exp_e1(a) + (-a).exp() * exp_ei(a)) / PI
}

/// `n` points spaced geometrically over `10^a ..= 10^b`, with their negatives.
pub fn symmetric_log_grid(a: f64, b: f64, n: usize) -> Vec<f64> {
    let pos: Vec<f64> = (0..n)
        .map(|k| {
            let t = if n == 1 { 1.0 } else { k as f64 / (n - 1) as f64 };
            10f64.powf(a + (b - a) * t)
        })
        .collect();
    let mut out: Vec<f64> = pos.iter().rev().map(|x| -x).collect();
    out.extend(pos);
    out
}

/// 300 points from `1e-10` to `1e10` and their negatives.
pub fn default_grid() -> Vec<f64> {
    symmetric_log_grid(-10.0, 10.0, 300)
}

/// Grade-`l` grid: `30 l` points from `10^-l` to `10^l` and their negatives.
pub fn graded_grid(l: usize) -> Vec<f64> {
    symmetric_log_grid(-(l as f64), l as f64, 30 * l)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HilbertOptions {
    pub aaa: AaaOptions,
}

impl Default for HilbertOptions {
    fn default() -> Self {
        Self {
            aaa: AaaOptions::default(),
        }
    }
}

/// `f = c0 + sum c_k d_k / (z - p_k)`, analytic in the upper half-plane,
/// with `Re f ~ u` on the real line.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HilbertTransform {
    pub constant: f64,
    pub poles: Vec<Complex64>,
    pub scaling: Vec<f64>,
    pub coefficients: Vec<Complex64>,
    pub poles_discarded: usize,
    pub aaa_support_points: usize,
    /// `max |Re f - u|` on the samples.
    pub boundary_error: f64,
}

impl HilbertTransform {
    pub fn eval_f(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(self.constant, 0.0);
        for ((p, d), c) in self.poles.iter().zip(&self.scaling).zip(&self.coefficients) {
            acc += c * d / (z - p);
        }
        acc
    }

    pub fn eval_u(&self, y: f64) -> f64 {
        self.eval_f(Complex64::new(y, 0.0)).re
    }

    /// The conjugate `v = H[u]` at a real point.
    pub fn eval_v(&self, y: f64) -> f64 {
        self.eval_f(Complex64::new(y, 0.0)).im
    }
}

/// Hilbert transform of samples `u(y)` on the real line.
pub fn hilbert_transform(y: &[f64], u: &[f64], opts: &HilbertOptions) -> Result<HilbertTransform> {
    if y.len() != u.len() {
        return Err(Error::DimensionMismatch(format!("{} points but {} values", y.len(), u.len())));
    }
    if let Some(i) = y.iter().zip(u).position(|(a, b)| !a.is_finite() || !b.is_finite()) {
        return Err(Error::InvalidInput(format!("sample {i} is not finite")));
    }
    let z: Vec<Complex64> = y.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    let f: Vec<Complex64> = u.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    let fit = aaa_fit(&z, &f, &opts.aaa)?;
    let (poles, rejected): (Vec<Complex64>, Vec<Complex64>) =
        fit.poles.poles.iter().partition(|p| p.im < 0.0 && p.re.is_finite());
    if poles.is_empty() {
        return Err(Error::NoPolesRetained);
    }
    let scaling: Vec<f64> = poles
        .iter()
        .map(|p| y.iter().map(|&x| (Complex64::new(x, 0.0) - p).norm()).fold(f64::INFINITY, f64::min))
        .collect();
    let np = poles.len();
    // [1, Re Q, -Im Q]
    let a = faer::Mat::<f64>::from_fn(y.len(), 1 + 2 * np, |i, j| {
        if j == 0 {
            return 1.0;
        }
        let k = (j - 1) % np;
        let q = scaling[k] / (z[i] - poles[k]);
        if j <= np {
            q.re
        } else {
            -q.im
        }
    });
    let sol = lstsq_regularized(a.as_ref(), u)?;
    let coefficients: Vec<Complex64> = (0..np).map(|k| Complex64::new(sol.x[1 + k], sol.x[1 + np + k])).collect();
    let mut out = HilbertTransform {
        constant: sol.x[0],
        poles,
        scaling,
        coefficients,
        poles_discarded: rejected.len(),
        aaa_support_points: fit.r.support().len(),
        boundary_error: 0.0,
    };
    out.boundary_error = y
        .iter()
        .zip(u)
        .map(|(&x, &v)| (out.eval_u(x) - v).abs())
        .fold(0.0, f64::max);
    Ok(out)
}

/// Transform of a built-in function on the default grid.
pub fn hilbert_builtin(func: HilbertFunction, opts: &HilbertOptions) -> Result<HilbertTransform> {
    let y = default_grid();
    let u: Vec<f64> = y.iter().map(|&x| func.eval(x)).collect();
    hilbert_transform(&y, &u, opts)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_form_matches_published_value() {
        let (v, _) = HilbertFunction::AbsExp.reference_at_two();
        assert!((abs_exp_conjugate(2.0) - v).abs() < 1e-15);
        assert_eq!(abs_exp_conjugate(-2.0), -abs_exp_conjugate(2.0));
    }

    #[test]
    fn runge_conjugate_is_x_over_one_plus_x2() {
        // f = i / (x + i) has Re f = 1 / (1 + x^2) and Im f = x / (1 + x^2)
        let h = hilbert_builtin(HilbertFunction::Runge, &HilbertOptions::default()).unwrap();
        for y in [-3.0, -0.5, 0.0, 0.7, 2.0, 10.0] {
            assert!((h.eval_v(y) - y / (1.0 + y * y)).abs() < 1e-10, "y = {y}");
        }
        assert!(h.poles.iter().all(|p| p.im < 0.0));
    }

    #[test]
    fn grids_have_expected_size() {
        let g = default_grid();
        assert_eq!(g.len(), 600);
        assert!((g[599] - 1e10).abs() < 1e-3 && (g[300] - 1e-10).abs() < 1e-24);
        assert_eq!(graded_grid(3).len(), 180);
    }

    #[test]
    fn parses_ids() {
        for f in HilbertFunction::ALL {
            assert_eq!(HilbertFunction::parse(f.id()).unwrap(), f);
        }
        assert!(HilbertFunction::parse("cosine").is_err());
    }
}
