//! Fixed test problems: domains, data and solver settings used by the
//! demos, the examples and the acceptance tests.

use std::f64::consts::{PI, SQRT_2};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::aaa::AaaOptions;
use crate::geometry::{BoundaryComponent, Domain, Segment};
use crate::laplace::{ArtificialData, BoundaryData, DataFn, SolverOptions, Variant};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Evaluation point and reference value for the L-shape with `h = (Re z)^2`.
pub const L_SHAPE_POINT: Complex64 = Complex64::new(0.99, 0.99);
pub const L_SHAPE_VALUE: f64 = 1.0267919261073;

/// `[0, 2]^2` without `[1, 2] x [1, 2]`; the reentrant corner is at `1 + i`.
pub fn l_shape() -> Domain {
    let v = [c(0.0, 0.0), c(2.0, 0.0), c(2.0, 1.0), c(1.0, 1.0), c(1.0, 2.0), c(0.0, 2.0)];
    Domain::simple(BoundaryComponent::polygon(&v).expect("valid polygon")).expect("valid domain")
}

/// 600 clustered samples per side; the global fit needs close to 300
/// support points, so the degree cap is raised to 400.
pub fn l_shape_options(variant: Variant) -> SolverOptions {
    SolverOptions {
        variant,
        samples_per_segment: 600,
        aaa: AaaOptions {
            tol: 1e-8,
            max_degree: 400,
        },
        ..Default::default()
    }
}

fn rectangle(x0: f64, x1: f64, y0: f64, y1: f64) -> BoundaryComponent {
    // clockwise, so the unbounded domain lies on the left
    BoundaryComponent::polygon(&[c(x0, y0), c(x0, y1), c(x1, y1), c(x1, y0)]).expect("valid rectangle")
}

/// Exterior of three rectangles: `[-2, 0] x [-1, 1]` on the left and two
/// unit squares stacked on the right at `x in [2, 3]`, so that `z = 1` is
/// midway between the left one and the others.
pub fn three_rectangles() -> Domain {
    let rects = [
        (-2.0, 0.0, -1.0, 1.0),
        (2.0, 3.0, 0.5, 1.5),
        (2.0, 3.0, -1.5, -0.5),
    ];
    let comps = rects.iter().map(|&(a, b, p, q)| rectangle(a, b, p, q)).collect();
    let centers = rects.iter().map(|&(a, b, p, q)| c((a + b) / 2.0, (p + q) / 2.0)).collect();
    Domain::unbounded(comps, centers, None).expect("valid domain")
}

/// `u = 1` on the left rectangle, `0` on the other two.
pub fn three_rectangles_data(d: &Domain) -> BoundaryData {
    BoundaryData::per_component(vec![DataFn::Const(1.0), DataFn::Const(0.0), DataFn::Const(0.0)], d)
}

pub fn three_rectangles_options() -> SolverOptions {
    SolverOptions {
        samples_per_segment: 400,
        ..Default::default()
    }
}

pub const SMOOTH_SEED: u64 = 2021;
pub const SMOOTH_NODES: usize = 15;

/// Trigonometric interpolant through 15 points at equispaced angles with
/// seeded random radii in `[0.7, 1.3]`.
pub fn smooth_domain(seed: u64) -> Domain {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let nodes: Vec<Complex64> = (0..SMOOTH_NODES)
        .map(|k| {
            let r = 0.7 + 0.6 * rng.gen::<f64>();
            Complex64::from_polar(r, 2.0 * PI * k as f64 / SMOOTH_NODES as f64)
        })
        .collect();
    let s = Segment::spline(nodes).expect("enough nodes");
    Domain::simple(BoundaryComponent::new(vec![s], vec![]).expect("closed curve")).expect("valid domain")
}

/// Global variant, 1000 samples, `h = -log|z|`.
pub fn smooth_options() -> SolverOptions {
    SolverOptions {
        variant: Variant::Global,
        samples_per_segment: 1000,
        ..Default::default()
    }
}

pub fn smooth_data() -> BoundaryData {
    BoundaryData::Uniform(DataFn::NegLogAbs)
}

/// Square `[-1, 1]^2` with circular bites of radius 1/2 taken out around
/// the corners `1 + i` and `-1 - i`.
pub fn square_with_bites() -> Domain {
    let r = 0.5;
    let segs = vec![
        Segment::line(c(-1.0 + r, -1.0), c(1.0, -1.0)),
        Segment::line(c(1.0, -1.0), c(1.0, 1.0 - r)),
        Segment::arc(c(1.0, 1.0), c(1.0, 1.0 - r), c(1.0 - r, 1.0), false),
        Segment::line(c(1.0 - r, 1.0), c(-1.0, 1.0)),
        Segment::line(c(-1.0, 1.0), c(-1.0, -1.0 + r)),
        Segment::arc(c(-1.0, -1.0), c(-1.0, -1.0 + r), c(-1.0 + r, -1.0), false),
    ]
    .into_iter()
    .collect::<crate::Result<Vec<_>>>()
    .expect("valid segments");
    let corners = segs.iter().map(Segment::start).collect();
    Domain::simple(BoundaryComponent::new(segs, corners).expect("closed curve")).expect("valid domain")
}

/// Hole center used for the reciprocal polynomial and log term.
pub const SQUARE_HOLE_CENTER: Complex64 = Complex64::new(-0.25, -0.25);

/// `[-1, 1]^2` with the square `[-0.5, 0] x [-0.5, 0]` removed.
pub fn square_with_hole() -> Domain {
    let outer = BoundaryComponent::polygon(&[c(-1.0, -1.0), c(1.0, -1.0), c(1.0, 1.0), c(-1.0, 1.0)]).expect("square");
    let inner = rectangle(-0.5, 0.0, -0.5, 0.0);
    Domain::bounded(vec![outer, inner], vec![SQUARE_HOLE_CENTER]).expect("valid domain")
}

/// `u = 0` outside, `1` on the hole.
pub fn square_with_hole_data(d: &Domain) -> BoundaryData {
    BoundaryData::per_component(vec![DataFn::Const(0.0), DataFn::Const(1.0)], d)
}

pub fn square_with_hole_options() -> SolverOptions {
    SolverOptions {
        degree: Some(40),
        artificial_data: ArtificialData::SqrtProduct,
        ..Default::default()
    }
}

/// Lens bounded by two circular arcs meeting at right angles at `-1` and `1`.
pub fn lens() -> Domain {
    let lower = Segment::arc(c(0.0, 1.0), c(-1.0, 0.0), c(1.0, 0.0), true).expect("arc");
    let upper = Segment::arc(c(0.0, -1.0), c(1.0, 0.0), c(-1.0, 0.0), true).expect("arc");
    let corners = vec![c(-1.0, 0.0), c(1.0, 0.0)];
    Domain::simple(BoundaryComponent::new(vec![lower, upper], corners).expect("closed curve")).expect("valid domain")
}

/// Radius of the lens arcs; their centers are `i` and `-i`.
pub const LENS_RADIUS: f64 = SQRT_2;

/// Map of the lens exterior onto the exterior of the slit `[-1, 1]`,
/// `f = (1 + v^2) / (1 - v^2)` with `v = -((z - 1) / (z + 1))^(2/3)`.
pub fn lens_slit_map(z: Complex64) -> Complex64 {
    let v = -((z - 1.0) / (z + 1.0)).powf(2.0 / 3.0);
    let v2 = v * v;
    (1.0 + v2) / (1.0 - v2)
}

/// Outer circle `|z| = 2` around a larger hole at `-0.8` (radius 0.5) and a
/// smaller one at `0.9` (radius 0.3).
pub fn triple_circles() -> Domain {
    let outer = Segment::circle(c(0.0, 0.0), 2.0, true).expect("circle");
    let big = Segment::circle(c(-0.8, 0.0), 0.5, false).expect("circle");
    let small = Segment::circle(c(0.9, 0.0), 0.3, false).expect("circle");
    let comps = [outer, big, small]
        .into_iter()
        .map(|s| BoundaryComponent::new(vec![s], vec![]).expect("closed curve"))
        .collect();
    Domain::bounded(comps, vec![c(-0.8, 0.0), c(0.9, 0.0)]).expect("valid domain")
}

/// Data 2 on the outer circle, 1 on the larger hole, 0 on the smaller.
pub fn triple_circles_data(d: &Domain) -> BoundaryData {
    BoundaryData::per_component(vec![DataFn::Const(2.0), DataFn::Const(1.0), DataFn::Const(0.0)], d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn domains_build_and_contain_reference_points() {
        assert!(l_shape().contains(L_SHAPE_POINT));
        assert!(three_rectangles().contains(c(1.0, 0.0)));
        assert!(smooth_domain(SMOOTH_SEED).contains(c(0.0, 0.0)));
        assert!(square_with_bites().contains(c(0.0, 0.0)));
        assert!(!square_with_hole().contains(SQUARE_HOLE_CENTER));
        assert!(lens().contains(c(0.0, 0.0)) && !lens().contains(c(0.0, 0.5)));
        assert!(triple_circles().contains(c(0.0, 1.0)));
    }

    #[test]
    fn lens_arcs_meet_at_right_angles() {
        let d = lens();
        let s = d.components()[0].segments();
        let t0 = s[0].derivative(1.0);
        let t1 = s[1].derivative(0.0);
        assert!((t0.re * t1.re + t0.im * t1.im).abs() < 1e-12 * t0.norm() * t1.norm());
        assert!(((s[0].point(0.5) - c(0.0, 1.0)).norm() - LENS_RADIUS).abs() < 1e-14);
    }

    #[test]
    fn slit_map_fixes_the_tips() {
        assert!((lens_slit_map(c(1.0, 0.0)) - 1.0).norm() < 1e-15);
        assert!((lens_slit_map(c(-1.0 + 1e-12, 1e-12)) + 1.0).norm() < 1e-6);
        let f = lens_slit_map(c(3.0, 0.0));
        assert!(f.im.abs() < 1e-12 && f.re > 1.0);
    }
}
