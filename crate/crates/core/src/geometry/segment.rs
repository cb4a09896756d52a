use std::f64::consts::{PI, TAU};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// One smooth piece of a boundary curve, parametrized by `t` in `[0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub enum Segment {
    Line {
        from: Complex64,
        to: Complex64,
    },
    /// `center + radius * exp(i (start_angle + t * span))`; `span` is signed.
    /// `from` and `to` are the declared endpoints, kept exactly so that
    /// neighbouring segments meet bit-for-bit.
    Arc {
        from: Complex64,
        to: Complex64,
        center: Complex64,
        radius: f64,
        start_angle: f64,
        span: f64,
    },
    /// Closed trigonometric interpolant through `nodes` at `t = j / N`.
    Spline {
        nodes: Vec<Complex64>,
        /// Fourier coefficients for frequencies `-(N-1)/2 ..= N/2`.
        coeffs: Vec<(i64, Complex64)>,
    },
}

impl Segment {
    pub fn line(from: Complex64, to: Complex64) -> Result<Self> {
        if from == to {
            return Err(Error::InvalidInput("line segment has zero length".into()));
        }
        Ok(Segment::Line { from, to })
    }

    /// Arc from `from` to `to` around `center`, counterclockwise when `ccw`.
    /// Equal endpoints give a full circle.
    pub fn arc(center: Complex64, from: Complex64, to: Complex64, ccw: bool) -> Result<Self> {
        let radius = (from - center).norm();
        if radius == 0.0 {
            return Err(Error::InvalidInput("arc has zero radius".into()));
        }
        let r_to = (to - center).norm();
        if (r_to - radius).abs() > 1e-9 * radius {
            return Err(Error::InvalidInput(format!(
                "arc endpoints are at different distances from the center ({radius} vs {r_to})"
            )));
        }
        let start_angle = (from - center).arg();
        let end_angle = (to - center).arg();
        let mut ccw_span = (end_angle - start_angle).rem_euclid(TAU);
        if ccw_span == 0.0 {
            ccw_span = TAU;
        }
        let span = if ccw {
            ccw_span
        } else if ccw_span == TAU {
            -TAU
        } else {
            -(TAU - ccw_span)
        };
        Ok(Segment::Arc {
            from,
            to: if span.abs() == TAU { from } else { to },
            center,
            radius,
            start_angle,
            span,
        })
    }

    pub fn circle(center: Complex64, radius: f64, ccw: bool) -> Result<Self> {
        if !(radius > 0.0) {
            return Err(Error::InvalidInput("circle radius must be positive".into()));
        }
        let from = center + radius;
        Ok(Segment::Arc {
            from,
            to: from,
            center,
            radius,
            start_angle: 0.0,
            span: if ccw { TAU } else { -TAU },
        })
    }

    pub fn spline(nodes: Vec<Complex64>) -> Result<Self> {
        let n = nodes.len();
        if n < 3 {
            return Err(Error::InvalidInput("periodic spline needs at least 3 nodes".into()));
        }
        let kmin = -((n as i64 - 1) / 2);
        let kmax = n as i64 / 2;
        let coeffs = (kmin..=kmax)
            .map(|k| {
                let c = nodes
                    .iter()
                    .enumerate()
                    .map(|(j, zj)| zj * Complex64::from_polar(1.0, -TAU * (k * j as i64) as f64 / n as f64))
                    .sum::<Complex64>()
                    / n as f64;
                (k, c)
            })
            .collect();
        Ok(Segment::Spline { nodes, coeffs })
    }

    fn nyquist(&self, k: i64) -> bool {
        matches!(self, Segment::Spline { nodes, .. } if nodes.len() % 2 == 0 && k == nodes.len() as i64 / 2)
    }

    pub fn point(&self, t: f64) -> Complex64 {
        match self {
            Segment::Line { from, to } => from + (to - from) * t,
            Segment::Arc {
                center,
                radius,
                start_angle,
                span,
                ..
            } => center + Complex64::from_polar(*radius, start_angle + t * span),
            Segment::Spline { coeffs, .. } => coeffs
                .iter()
                .map(|&(k, c)| {
                    if self.nyquist(k) {
                        c * (PI * 2.0 * k as f64 * t).cos()
                    } else {
                        c * Complex64::from_polar(1.0, TAU * k as f64 * t)
                    }
                })
                .sum(),
        }
    }

    /// `dz/dt`.
    pub fn derivative(&self, t: f64) -> Complex64 {
        match self {
            Segment::Line { from, to } => to - from,
            Segment::Arc {
                radius,
                start_angle,
                span,
                ..
            } => Complex64::i() * span * Complex64::from_polar(*radius, start_angle + t * span),
            Segment::Spline { coeffs, .. } => coeffs
                .iter()
                .map(|&(k, c)| {
                    let w = TAU * k as f64;
                    if self.nyquist(k) {
                        -c * w * (w * t).sin()
                    } else {
                        c * Complex64::i() * w * Complex64::from_polar(1.0, w * t)
                    }
                })
                .sum(),
        }
    }

    /// Point at arclength fraction `s` from the start, accurate for tiny `s`.
    pub fn point_from_start(&self, s: f64) -> Complex64 {
        match self {
            Segment::Line { from, to } => from + (to - from) * s,
            Segment::Arc {
                from, center, span, ..
            } => from + (from - center) * expm1_i(s * span),
            Segment::Spline { .. } => self.point(s),
        }
    }

    /// Point at arclength fraction `s` back from the end.
    pub fn point_from_end(&self, s: f64) -> Complex64 {
        match self {
            Segment::Line { from, to } => to + (from - to) * s,
            Segment::Arc { to, center, span, .. } => to + (to - center) * expm1_i(-s * span),
            Segment::Spline { .. } => self.point(1.0 - s),
        }
    }

    pub fn start(&self) -> Complex64 {
        match self {
            Segment::Line { from, .. } | Segment::Arc { from, .. } => *from,
            Segment::Spline { .. } => self.point(0.0),
        }
    }

    pub fn end(&self) -> Complex64 {
        match self {
            Segment::Line { to, .. } | Segment::Arc { to, .. } => *to,
            Segment::Spline { .. } => self.start(),
        }
    }

    pub fn is_closed(&self) -> bool {
        match self {
            Segment::Line { .. } => false,
            Segment::Arc { span, .. } => span.abs() == TAU,
            Segment::Spline { .. } => true,
        }
    }

    pub fn length(&self) -> f64 {
        match self {
            Segment::Line { from, to } => (to - from).norm(),
            Segment::Arc { radius, span, .. } => radius * span.abs(),
            Segment::Spline { .. } => {
                // trapezoid rule is spectrally accurate for periodic integrands
                let n = 2048;
                (0..n).map(|k| self.derivative(k as f64 / n as f64).norm()).sum::<f64>() / n as f64
            }
        }
    }

    /// Number of chords used when a polyline stand-in is needed.
    pub fn flatten_count(&self) -> usize {
        match self {
            Segment::Line { .. } => 1,
            Segment::Arc { span, .. } => ((span.abs() / TAU) * 1024.0).ceil().max(64.0) as usize,
            Segment::Spline { nodes, .. } => (nodes.len() * 256).max(4096),
        }
    }

    pub fn flatten(&self) -> Vec<Complex64> {
        let n = self.flatten_count();
        let mut pts: Vec<Complex64> = (0..n).map(|k| self.point(k as f64 / n as f64)).collect();
        pts.push(self.end());
        pts
    }

    /// Signed crossings of the rightward horizontal ray from `z`, using the
    /// half-open rule on the `y` coordinate.
    pub(crate) fn ray_crossings(&self, z: Complex64) -> usize {
        match self {
            Segment::Line { from, to } => edge_crossing(*from, *to, z) as usize,
            Segment::Arc {
                center,
                radius,
                start_angle,
                span,
                ..
            } => {
                // split into pieces monotone in y at the top/bottom points
                let (a0, a1) = if *span > 0.0 {
                    (*start_angle, start_angle + span)
                } else {
                    (start_angle + span, *start_angle)
                };
                let mut cuts = vec![a0];
                let mut k = ((a0 - PI / 2.0) / PI).floor() + 1.0;
                loop {
                    let c = PI / 2.0 + k * PI;
                    if c >= a1 {
                        break;
                    }
                    cuts.push(c);
                    k += 1.0;
                }
                cuts.push(a1);
                let at = |a: f64| {
                    if a == a0 || a == a1 {
                        // endpoints from the exact parametrization keep junctions consistent
                        if (a == *start_angle) == (*span > 0.0) {
                            self.start()
                        } else {
                            self.end()
                        }
                    } else {
                        center + Complex64::from_polar(*radius, a)
                    }
                };
                let mut count = 0;
                for w in cuts.windows(2) {
                    let (p, q) = (at(w[0]), at(w[1]));
                    if (p.im > z.im) != (q.im > z.im) {
                        let dy = z.im - center.im;
                        let dx = (radius * radius - dy * dy).max(0.0).sqrt();
                        let mid = (w[0] + w[1]) / 2.0;
                        let x = if mid.cos() >= 0.0 { center.re + dx } else { center.re - dx };
                        if x > z.re {
                            count += 1;
                        }
                    }
                }
                count
            }
            Segment::Spline { .. } => {
                let pts = self.flatten();
                pts.windows(2).filter(|w| edge_crossing(w[0], w[1], z)).count()
            }
        }
    }

    pub(crate) fn distance(&self, z: Complex64) -> f64 {
        match self {
            Segment::Line { from, to } => point_segment_distance(z, *from, *to),
            Segment::Arc {
                center,
                radius,
                start_angle,
                span,
                ..
            } => {
                let d = z - center;
                let ang = d.arg();
                let rel = if *span > 0.0 {
                    (ang - start_angle).rem_euclid(TAU)
                } else {
                    (start_angle - ang).rem_euclid(TAU)
                };
                let ends = (z - self.start()).norm().min((z - self.end()).norm());
                if rel <= span.abs() {
                    (d.norm() - radius).abs().min(ends)
                } else {
                    ends
                }
            }
            Segment::Spline { .. } => {
                let pts = self.flatten();
                pts.windows(2)
                    .map(|w| point_segment_distance(z, w[0], w[1]))
                    .fold(f64::INFINITY, f64::min)
            }
        }
    }
}

/// `exp(i x) - 1` without cancellation for small `x`.
fn expm1_i(x: f64) -> Complex64 {
    let h = x / 2.0;
    Complex64::new(0.0, 2.0 * h.sin()) * Complex64::from_polar(1.0, h)
}

pub(crate) fn edge_crossing(a: Complex64, b: Complex64, z: Complex64) -> bool {
    if (a.im > z.im) != (b.im > z.im) {
        let x = a.re + (z.im - a.im) * (b.re - a.re) / (b.im - a.im);
        x > z.re
    } else {
        false
    }
}

pub(crate) fn point_segment_distance(z: Complex64, a: Complex64, b: Complex64) -> f64 {
    let ab = b - a;
    let len2 = ab.norm_sqr();
    if len2 == 0.0 {
        return (z - a).norm();
    }
    let t = ((z - a) * ab.conj()).re / len2;
    let t = t.clamp(0.0, 1.0);
    (z - (a + ab * t)).norm()
}
