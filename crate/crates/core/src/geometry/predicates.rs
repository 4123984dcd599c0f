//! Orientation and incidence predicates.
//!
//! All predicates are exact. A floating-point evaluation is tried first and
//! accepted only when its magnitude clears a conservative error bound.

use std::cmp::Ordering;

use super::point::Point;
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Orientation {
    ClockWise,
    CoLinear,
    CounterClockWise,
}

impl Orientation {
    pub fn sign(self) -> i8 {
        match self {
            Orientation::ClockWise => -1,
            Orientation::CoLinear => 0,
            Orientation::CounterClockWise => 1,
        }
    }

    pub fn reverse(self) -> Orientation {
        match self {
            Orientation::ClockWise => Orientation::CounterClockWise,
            Orientation::CoLinear => Orientation::CoLinear,
            Orientation::CounterClockWise => Orientation::ClockWise,
        }
    }

    pub fn is_colinear(self) -> bool {
        self == Orientation::CoLinear
    }

    fn from_sign(s: i8) -> Orientation {
        match s.cmp(&0) {
            Ordering::Less => Orientation::ClockWise,
            Ordering::Equal => Orientation::CoLinear,
            Ordering::Greater => Orientation::CounterClockWise,
        }
    }
}

// Covers rounding of the cached coordinates plus the arithmetic below, with a
// wide margin.
const ORIENT_BOUND: f64 = 1e-13;

/// Sign of `(b - a) x (c - a)`.
pub fn orient(a: &Point, b: &Point, c: &Point) -> Orientation {
    let [ax, ay] = a.approx();
    let [bx, by] = b.approx();
    let [cx, cy] = c.approx();
    let det = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax);
    let m = ax
        .abs()
        .max(ay.abs())
        .max(bx.abs())
        .max(by.abs())
        .max(cx.abs())
        .max(cy.abs());
    if det.is_finite() && det.abs() > ORIENT_BOUND * m * m {
        return if det > 0.0 {
            Orientation::CounterClockWise
        } else {
            Orientation::ClockWise
        };
    }
    Orientation::from_sign(cross_exact(a, b, c).signum())
}

/// Exact value of `(b - a) x (c - a)`.
pub fn cross_exact(a: &Point, b: &Point, c: &Point) -> Scalar {
    let (ux, uy) = b.sub(a);
    let (vx, vy) = c.sub(a);
    &ux * &vy - &uy * &vx
}

/// Exact dot product `(b - a) . (c - a)`.
pub fn dot_exact(a: &Point, b: &Point, c: &Point) -> Scalar {
    let (ux, uy) = b.sub(a);
    let (vx, vy) = c.sub(a);
    &ux * &vx + &uy * &vy
}

/// Whether `p` lies on the closed segment `a b`.
pub fn on_segment(p: &Point, a: &Point, b: &Point) -> bool {
    orient(a, b, p).is_colinear() && between(p, a, b)
}

/// For `p` collinear with `a b`: whether `p` lies within the closed segment.
pub fn between(p: &Point, a: &Point, b: &Point) -> bool {
    let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
    lo <= p && p <= hi
}

/// Whether `p` lies on the open segment `a b` (endpoints excluded).
pub fn on_open_segment(p: &Point, a: &Point, b: &Point) -> bool {
    p != a && p != b && on_segment(p, a, b)
}

/// Orders points that are collinear with the ray `origin -> dir_to` by their
/// position along it.
pub fn cmp_along(origin: &Point, dir_to: &Point, p: &Point, q: &Point) -> Ordering {
    // For collinear points the lexicographic order agrees with the parameter
    // order up to the direction of the ray.
    let forward = origin <= dir_to;
    let ord = p.cmp(q);
    if forward {
        ord
    } else {
        ord.reverse()
    }
}
