use num_complex::Complex64;

use super::{Domain, Segment};
use crate::error::{Error, Result};

/// Exponent ranges of the clustered ladders.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Clustering {
    /// One singular end: fractions `10^-one_sided ..= 1`.
    pub one_sided: f64,
    /// Two singular ends: `tanh` over `-two_sided ..= two_sided`.
    pub two_sided: f64,
}

impl Default for Clustering {
    fn default() -> Self {
        Self {
            one_sided: 14.0,
            two_sided: 16.0,
        }
    }
}

/// Boundary samples with their provenance on the curve.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct SampleSet {
    pub z: Vec<Complex64>,
    pub h: Vec<f64>,
    pub component: Vec<usize>,
    pub segment: Vec<usize>,
    /// Nearest corner on the same component, when it has any.
    pub corner: Vec<Option<usize>>,
    /// Outward unit normal.
    pub normal: Vec<Complex64>,
}

impl SampleSet {
    pub fn len(&self) -> usize {
        self.z.len()
    }

    pub fn is_empty(&self) -> bool {
        self.z.is_empty()
    }

    /// Corner index of every sample, failing on corner-free components.
    pub fn corner_indices(&self) -> Result<Vec<usize>> {
        self.corner
            .iter()
            .zip(&self.component)
            .map(|(c, &comp)| c.ok_or(Error::NoCorners { component: comp }))
            .collect()
    }
}

enum Ladder {
    FromStart(f64),
    FromEnd(f64),
    Param(f64),
}

fn logspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![10f64.powf(b)];
    }
    (0..n)
        .map(|k| {
            if k == n - 1 {
                10f64.powf(b)
            } else {
                10f64.powf(a + (b - a) * k as f64 / (n - 1) as f64)
            }
        })
        .collect()
}

fn ladder(n: usize, start_corner: bool, end_corner: bool, cl: &Clustering) -> Vec<Ladder> {
    match (start_corner, end_corner) {
        (true, true) => (0..n)
            .map(|k| {
                let x = if n == 1 {
                    0.0
                } else {
                    cl.two_sided * (2.0 * k as f64 - (n - 1) as f64) / (n - 1) as f64
                };
                // (1 + tanh x) / 2 measured from the nearer end
                let s = 1.0 / (1.0 + (2.0 * x.abs()).exp());
                if x < 0.0 {
                    Ladder::FromStart(s)
                } else if x > 0.0 {
                    Ladder::FromEnd(s)
                } else {
                    Ladder::Param(0.5)
                }
            })
            .collect(),
        (true, false) => logspace(-cl.one_sided, 0.0, n).into_iter().map(Ladder::FromStart).collect(),
        (false, true) => logspace(-cl.one_sided, 0.0, n).into_iter().map(Ladder::FromEnd).collect(),
        (false, false) => (0..n).map(|k| Ladder::Param(k as f64 / n as f64)).collect(),
    }
}

fn place(seg: &Segment, l: &Ladder) -> (Complex64, f64) {
    match *l {
        Ladder::FromStart(s) if s == 1.0 => (seg.end(), 1.0),
        Ladder::FromStart(s) => (seg.point_from_start(s), s),
        Ladder::FromEnd(s) if s == 1.0 => (seg.start(), 0.0),
        Ladder::FromEnd(s) => (seg.point_from_end(s), 1.0 - s),
        Ladder::Param(t) => (seg.point(t), t),
    }
}

/// Clustered samples on every segment of every component.
///
/// Points repeated at segment junctions are kept once.
pub fn sample_boundary(d: &Domain, per_segment: usize, clustering: &Clustering) -> Result<SampleSet> {
    if per_segment < 8 {
        return Err(Error::InvalidInput(format!(
            "at least 8 samples per segment are needed, got {per_segment}"
        )));
    }
    let tol = 1e-12 * d.scale();
    let mut out = SampleSet::default();
    for (ci, comp) in d.components().iter().enumerate() {
        let is_corner = |p: Complex64| comp.corners().iter().any(|c| (c - p).norm() <= tol);
        let left = d.domain_on_left(ci);
        // ladders hit segment endpoints exactly, so junction repeats are exact
        let mut endpoints: Vec<Complex64> = Vec::new();
        for (si, seg) in comp.segments().iter().enumerate() {
            let sc = is_corner(seg.start());
            let ec = is_corner(seg.end());
            for l in ladder(per_segment, sc, ec, clustering) {
                let (p, t) = place(seg, &l);
                if p == seg.start() || p == seg.end() {
                    if endpoints.contains(&p) {
                        continue;
                    }
                    endpoints.push(p);
                }
                let tangent = seg.derivative(t);
                let inward = Complex64::i() * tangent / tangent.norm();
                out.z.push(p);
                out.component.push(ci);
                out.segment.push(si);
                out.normal.push(if left { -inward } else { inward });
            }
        }
    }
    out.h = vec![0.0; out.z.len()];
    out.corner = nearest_corner(d, &out.z, &out.component);
    Ok(out)
}

/// Samples at given boundary points, e.g. tabulated data. Each point is
/// attributed to the nearest segment and its normal is left at zero. Points
/// farther than `1e-6` times the domain scale from the boundary are rejected.
pub fn samples_at(d: &Domain, z: &[Complex64]) -> Result<SampleSet> {
    let tol = 1e-6 * d.scale();
    let mut out = SampleSet::default();
    for (i, &p) in z.iter().enumerate() {
        let (mut best, mut ci, mut si) = (f64::INFINITY, 0, 0);
        for (c, comp) in d.components().iter().enumerate() {
            for (s, seg) in comp.segments().iter().enumerate() {
                let dist = seg.distance(p);
                if dist < best {
                    (best, ci, si) = (dist, c, s);
                }
            }
        }
        if !(best <= tol) {
            return Err(Error::InvalidInput(format!("point {i} at {p} is not on the boundary")));
        }
        out.z.push(p);
        out.component.push(ci);
        out.segment.push(si);
        out.normal.push(Complex64::new(0.0, 0.0));
    }
    out.h = vec![0.0; out.z.len()];
    out.corner = nearest_corner(d, &out.z, &out.component);
    Ok(out)
}

fn nearest_corner(d: &Domain, z: &[Complex64], component: &[usize]) -> Vec<Option<usize>> {
    let corners = d.corners();
    z.iter()
        .zip(component)
        .map(|(&p, &comp)| {
            let mut best: Option<(usize, f64)> = None;
            for (k, &(cc, w)) in corners.iter().enumerate() {
                if cc == comp {
                    let dist = (p - w).norm();
                    if best.map_or(true, |(_, bd)| dist < bd) {
                        best = Some((k, dist));
                    }
                }
            }
            best.map(|b| b.0)
        })
        .collect()
}
