//! Planar domains bounded by lines, circular arcs and periodic splines.

mod description;
mod sampling;
mod segment;

pub use description::{ComponentDescription, DomainDescription, SegmentDescription};
pub use sampling::{sample_boundary, samples_at, Clustering, SampleSet};
pub use segment::Segment;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Relative distance below which a point counts as lying on the boundary.
pub const BOUNDARY_BUFFER: f64 = 1e-12;

/// A closed boundary curve made of segments joined end to end.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryComponent {
    segments: Vec<Segment>,
    corners: Vec<Complex64>,
}

impl BoundaryComponent {
    pub fn new(segments: Vec<Segment>, corners: Vec<Complex64>) -> Result<Self> {
        if segments.is_empty() {
            return Err(Error::InvalidInput("boundary component has no segments".into()));
        }
        let scale = segments.iter().map(Segment::length).fold(0.0, f64::max);
        let tol = 1e-12 * scale.max(1.0);
        let n = segments.len();
        for k in 0..n {
            let a = segments[k].end();
            let b = segments[(k + 1) % n].start();
            if (a - b).norm() > tol {
                return Err(Error::InvalidInput(format!(
                    "segment {k} ends at {a} but segment {} starts at {b}",
                    (k + 1) % n
                )));
            }
        }
        for c in &corners {
            let on_junction = segments.iter().any(|s| (s.start() - c).norm() <= tol);
            if !on_junction {
                return Err(Error::InvalidInput(format!("corner {c} is not a segment junction")));
            }
        }
        Ok(Self { segments, corners })
    }

    /// Closed polygon through the given vertices with every vertex a corner.
    pub fn polygon(vertices: &[Complex64]) -> Result<Self> {
        let n = vertices.len();
        if n < 3 {
            return Err(Error::InvalidInput("a polygon needs at least 3 vertices".into()));
        }
        let segments = (0..n)
            .map(|k| Segment::line(vertices[k], vertices[(k + 1) % n]))
            .collect::<Result<Vec<_>>>()?;
        Self::new(segments, vertices.to_vec())
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn corners(&self) -> &[Complex64] {
        &self.corners
    }

    /// Twice the signed enclosed area; positive for counterclockwise loops.
    fn signed_area2(&self) -> f64 {
        let mut pts = Vec::new();
        for s in &self.segments {
            let mut p = s.flatten();
            p.pop();
            pts.extend(p);
        }
        let n = pts.len();
        (0..n).map(|k| (pts[k].conj() * pts[(k + 1) % n]).im).sum()
    }

    pub fn is_counterclockwise(&self) -> bool {
        self.signed_area2() > 0.0
    }

    fn crossings(&self, z: Complex64) -> usize {
        self.segments.iter().map(|s| s.ray_crossings(z)).sum()
    }

    /// Whether `z` lies in the region this curve encloses.
    pub fn encloses(&self, z: Complex64) -> bool {
        self.crossings(z) % 2 == 1
    }

    pub fn distance(&self, z: Complex64) -> f64 {
        self.segments.iter().map(|s| s.distance(z)).fold(f64::INFINITY, f64::min)
    }
}

/// Point classification relative to a domain.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Location {
    Inside,
    Boundary,
    Outside,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Domain {
    components: Vec<BoundaryComponent>,
    bounded: bool,
    /// One point per hole, in hole order.
    hole_centers: Vec<Complex64>,
    /// Component bounding each hole, parallel to `hole_centers`.
    hole_components: Vec<usize>,
    exterior_center: Option<Complex64>,
    outer: Option<usize>,
    scale: f64,
    centroid: Complex64,
}

impl Domain {
    /// Bounded domain: one outer component, the others bound holes.
    pub fn bounded(components: Vec<BoundaryComponent>, hole_centers: Vec<Complex64>) -> Result<Self> {
        Self::build(components, true, hole_centers, None)
    }

    /// Exterior of the holes bounded by every component.
    pub fn unbounded(
        components: Vec<BoundaryComponent>,
        hole_centers: Vec<Complex64>,
        exterior_center: Option<Complex64>,
    ) -> Result<Self> {
        Self::build(components, false, hole_centers, exterior_center)
    }

    /// Simply connected bounded domain.
    pub fn simple(component: BoundaryComponent) -> Result<Self> {
        Self::bounded(vec![component], Vec::new())
    }

    fn build(
        components: Vec<BoundaryComponent>,
        bounded: bool,
        hole_centers: Vec<Complex64>,
        exterior_center: Option<Complex64>,
    ) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::InvalidInput("domain has no boundary components".into()));
        }
        let pts: Vec<Complex64> = components
            .iter()
            .flat_map(|c| c.segments.iter().flat_map(|s| s.flatten()))
            .collect();
        let (mut xmin, mut xmax, mut ymin, mut ymax) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
        for p in &pts {
            xmin = xmin.min(p.re);
            xmax = xmax.max(p.re);
            ymin = ymin.min(p.im);
            ymax = ymax.max(p.im);
        }
        let scale = (xmax - xmin).max(ymax - ymin);
        let centroid = Complex64::new((xmin + xmax) / 2.0, (ymin + ymax) / 2.0);

        let outer = if bounded {
            // the outer component encloses a point of every other one
            let idx = (0..components.len()).find(|&i| {
                (0..components.len())
                    .filter(|&j| j != i)
                    .all(|j| components[i].encloses(components[j].segments[0].point(0.3)))
            });
            match idx {
                Some(i) => Some(i),
                None => return Err(Error::InvalidInput("no component encloses all the others".into())),
            }
        } else {
            None
        };
        let hole_list: Vec<usize> = (0..components.len()).filter(|&i| Some(i) != outer).collect();
        let hole_centers = match (hole_centers.is_empty(), exterior_center) {
            (true, Some(zc)) if hole_list.len() == 1 => vec![zc],
            _ => hole_centers,
        };
        if hole_centers.len() != hole_list.len() {
            return Err(Error::InvalidInput(format!(
                "{} holes but {} hole centers",
                hole_list.len(),
                hole_centers.len()
            )));
        }
        // match each center to the hole that contains it
        let mut hole_components = Vec::with_capacity(hole_centers.len());
        for (k, c) in hole_centers.iter().enumerate() {
            let inside: Vec<usize> = hole_list.iter().copied().filter(|&i| components[i].encloses(*c)).collect();
            match inside.as_slice() {
                [i] if !hole_components.contains(i) => hole_components.push(*i),
                _ => {
                    return Err(Error::InvalidInput(format!(
                        "hole center {k} at {c} does not lie in exactly one unclaimed hole"
                    )))
                }
            }
        }
        if let Some(zc) = exterior_center {
            if !hole_list.iter().any(|&i| components[i].encloses(zc)) {
                return Err(Error::InvalidInput(format!("exterior center {zc} is not inside a hole")));
            }
        }
        Ok(Self {
            components,
            bounded,
            hole_centers,
            hole_components,
            exterior_center,
            outer,
            scale,
            centroid,
        })
    }

    pub fn components(&self) -> &[BoundaryComponent] {
        &self.components
    }

    pub fn is_bounded(&self) -> bool {
        self.bounded
    }

    pub fn hole_centers(&self) -> &[Complex64] {
        &self.hole_centers
    }

    pub fn hole_components(&self) -> &[usize] {
        &self.hole_components
    }

    pub fn exterior_center(&self) -> Option<Complex64> {
        self.exterior_center
    }

    pub fn outer_component(&self) -> Option<usize> {
        self.outer
    }

    pub fn is_simply_connected(&self) -> bool {
        self.bounded && self.components.len() == 1
    }

    /// Side of the bounding box.
    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn centroid(&self) -> Complex64 {
        self.centroid
    }

    /// All corners as `(component, point)`, indexed globally in this order.
    pub fn corners(&self) -> Vec<(usize, Complex64)> {
        self.components
            .iter()
            .enumerate()
            .flat_map(|(i, c)| c.corners.iter().map(move |&z| (i, z)))
            .collect()
    }

    pub fn distance_to_boundary(&self, z: Complex64) -> f64 {
        self.components.iter().map(|c| c.distance(z)).fold(f64::INFINITY, f64::min)
    }

    pub fn classify(&self, z: Complex64) -> Location {
        if !(z.re.is_finite() && z.im.is_finite()) {
            return if self.bounded { Location::Outside } else { Location::Inside };
        }
        // cheap rejection before the distance computation
        let far = (z - self.centroid).norm() > 2.0 * self.scale;
        if !far && self.distance_to_boundary(z) <= BOUNDARY_BUFFER * self.scale {
            return Location::Boundary;
        }
        let parity = self.components.iter().map(|c| c.crossings(z)).sum::<usize>() % 2;
        let inside = if self.bounded { parity == 1 } else { parity == 0 };
        if inside {
            Location::Inside
        } else {
            Location::Outside
        }
    }

    /// Membership in the open domain.
    pub fn contains(&self, z: Complex64) -> bool {
        self.classify(z) == Location::Inside
    }

    /// Membership in the closed domain; points near the boundary count as in.
    pub fn in_closure(&self, z: Complex64) -> bool {
        self.classify(z) != Location::Outside
    }

    /// Nearest corner on the sample's own component; ties go to the lower index.
    pub fn assign_to_corner(&self, z: &[Complex64], component: &[usize]) -> Result<Vec<usize>> {
        if z.len() != component.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} points but {} component labels",
                z.len(),
                component.len()
            )));
        }
        let corners = self.corners();
        z.iter()
            .zip(component)
            .map(|(&p, &comp)| {
                let mut best: Option<(usize, f64)> = None;
                for (k, &(cc, w)) in corners.iter().enumerate() {
                    if cc != comp {
                        continue;
                    }
                    let d = (p - w).norm();
                    if best.map_or(true, |(_, bd)| d < bd) {
                        best = Some((k, d));
                    }
                }
                best.map(|(k, _)| k).ok_or(Error::NoCorners { component: comp })
            })
            .collect()
    }

    /// `sqrt(prod_k |z - w_k|)` over all corners `w_k`.
    pub fn artificial_corner_data(&self, z: &[Complex64]) -> Result<Vec<f64>> {
        artificial_corner_data(&self.corners().iter().map(|c| c.1).collect::<Vec<_>>(), z)
    }

    /// Whether the domain lies to the left of component `i` as traversed.
    pub(crate) fn domain_on_left(&self, i: usize) -> bool {
        let ccw = self.components[i].is_counterclockwise();
        let is_outer = self.outer == Some(i);
        is_outer == ccw
    }
}

pub fn artificial_corner_data(corners: &[Complex64], z: &[Complex64]) -> Result<Vec<f64>> {
    if corners.is_empty() {
        return Err(Error::InvalidInput("artificial corner data needs at least one corner".into()));
    }
    Ok(z.iter()
        .map(|&p| {
            let prod: f64 = corners.iter().map(|w| (p - w).norm()).product();
            if prod.is_finite() {
                prod.sqrt()
            } else {
                // fall back to logs when the product overflows
                (0.5 * corners.iter().map(|w| (p - w).norm().ln()).sum::<f64>()).exp()
            }
        })
        .collect())
}
