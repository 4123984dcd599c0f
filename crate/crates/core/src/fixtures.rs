//! Named test polygons shared by tests, benchmarks and the CLI.

use std::f64::consts::PI;

use crate::geometry::{Point, Polygon};
use crate::scalar::Scalar;

fn build(coords: &[(i64, i64)]) -> Polygon {
    Polygon::new(coords.iter().map(|&(x, y)| Point::from_ints(x, y)).collect()).expect("fixture is simple")
}

/// The square `[0, 4] x [0, 4]`.
pub fn square() -> Polygon {
    build(&[(0, 0), (4, 0), (4, 4), (0, 4)])
}

/// An L of area 12 with its reflex corner at `(2, 2)`.
pub fn fix_l() -> Polygon {
    build(&[(0, 0), (4, 0), (4, 2), (2, 2), (2, 4), (0, 4)])
}

/// A U of width 6 and height 4: two arms of width 2 above a strip of height 2,
/// with reflex corners at `(2, 2)` and `(4, 2)`.
pub fn fix_u() -> Polygon {
    build(&[(0, 0), (6, 0), (6, 4), (4, 4), (4, 2), (2, 2), (2, 4), (0, 4)])
}

const SPIRAL_TURNS: f64 = 1.5;
const SPIRAL_WIDTH: f64 = 1.5;

fn round4(v: f64) -> Scalar {
    Scalar::parse(&format!("{v:.4}")).expect("formatted decimal parses")
}

fn spiral_point(theta: f64, radius: f64) -> Point {
    Point::new(round4(radius * theta.cos()), round4(radius * theta.sin()))
}

fn inner_radius(theta: f64) -> f64 {
    1.0 + 0.5 * theta
}

fn spiral_angle(k: usize, per_chain: usize) -> f64 {
    2.0 * PI * SPIRAL_TURNS * k as f64 / (per_chain - 1) as f64
}

/// A spiral corridor with `n` vertices (`n` even, at least 20): the outer wall
/// and inner wall each get `n / 2` samples over one and a half turns.
pub fn spiral(n: usize) -> Polygon {
    assert!(n >= 20 && n.is_multiple_of(2), "spiral needs an even vertex count >= 20");
    let m = n / 2;
    let mut vertices = Vec::with_capacity(n);
    for k in 0..m {
        let theta = spiral_angle(k, m);
        vertices.push(spiral_point(theta, inner_radius(theta) + SPIRAL_WIDTH));
    }
    for k in (0..m).rev() {
        let theta = spiral_angle(k, m);
        vertices.push(spiral_point(theta, inner_radius(theta)));
    }
    Polygon::new(vertices).expect("spiral is simple")
}

/// Query points on the corridor center line of [`spiral`]: `s` and `t` near
/// the inner end, `q` at the outer end.
pub fn spiral_points(n: usize) -> (Point, Point, Point) {
    let m = n / 2;
    let center = |k: usize| {
        let theta = spiral_angle(k, m);
        spiral_point(theta, inner_radius(theta) + SPIRAL_WIDTH / 2.0)
    };
    (center(1), center(2), center(m - 2))
}
