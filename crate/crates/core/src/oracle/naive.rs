use std::cmp::Ordering;

use crate::geometry::{cross_exact, dot_exact, orient, Location, Orientation, Point, Polygon};
use crate::scalar::Scalar;
use crate::{Error, Result};

/// Visibility polygon of an interior point by rotational ray casting.
///
/// Rays are cast toward every vertex direction in angular order. For each
/// direction the first hits of the rays turned infinitesimally clockwise and
/// counterclockwise are both boundary vertices of the result; between two
/// consecutive directions the boundary follows a single edge.
pub fn naive_visibility_polygon(poly: &Polygon, x: &Point) -> Result<Polygon> {
    match poly.locate(x) {
        Location::Interior => {}
        Location::Boundary => {
            return Err(Error::ConstructionFailure("ray casting needs an interior source".into()));
        }
        Location::Exterior => return Err(Error::PointOutside(Box::new(x.clone()))),
    }
    let mut dirs: Vec<&Point> = poly.vertices().iter().collect();
    dirs.sort_by(|a, b| angle_cmp(x, a, b));
    dirs.dedup_by(|a, b| angle_cmp(x, a, b) == Ordering::Equal);

    let mut ring: Vec<Point> = Vec::with_capacity(2 * dirs.len());
    for v in dirs {
        for side in [Orientation::ClockWise, Orientation::CounterClockWise] {
            let hit = limit_hit(poly, x, v, side);
            if ring.last() != Some(&hit) {
                ring.push(hit);
            }
        }
    }
    while ring.len() > 1 && ring.first() == ring.last() {
        ring.pop();
    }
    Polygon::new(ring)
}

/// Counterclockwise angular order of directions `a - x` and `b - x`, starting
/// from the positive x axis.
fn angle_cmp(x: &Point, a: &Point, b: &Point) -> Ordering {
    let upper = |p: &Point| match p.cmp_y(x) {
        Ordering::Greater => true,
        Ordering::Less => false,
        Ordering::Equal => p.x() > x.x(),
    };
    match (upper(a), upper(b)) {
        (true, false) => Ordering::Less,
        (false, true) => Ordering::Greater,
        _ => match orient(x, a, b) {
            Orientation::CounterClockWise => Ordering::Less,
            Orientation::ClockWise => Ordering::Greater,
            Orientation::CoLinear => Ordering::Equal,
        },
    }
}

/// First boundary point met by the ray from `x` through `v` after turning it
/// by an infinitesimal angle toward `side`.
fn limit_hit(poly: &Polygon, x: &Point, v: &Point, side: Orientation) -> Point {
    let (dx, dy) = v.sub(x);
    let dd = dot_exact(x, v, v);
    let mut best: Option<(Scalar, Point)> = None;
    let mut offer = |t: Scalar, p: &dyn Fn(&Scalar) -> Point| {
        if t.is_positive() && best.as_ref().is_none_or(|(bt, _)| &t < bt) {
            let point = p(&t);
            best = Some((t, point));
        }
    };
    for (a, b) in poly.edges() {
        let (oa, ob) = (orient(x, v, a), orient(x, v, b));
        if !oa.is_colinear() && !ob.is_colinear() {
            if oa != ob {
                let (ex, ey) = b.sub(a);
                let denom = &dx * &ey - &dy * &ex;
                let t = &cross_exact(x, a, b) / &denom;
                offer(t, &|t| x.lerp(v, t));
            }
            continue;
        }
        // An endpoint on the ray blocks the turned ray when the edge leaves
        // the ray toward the turn.
        for (on, o_on, o_off) in [(a, oa, ob), (b, ob, oa)] {
            if o_on.is_colinear() && o_off == side {
                let t = &dot_exact(x, v, on) / &dd;
                offer(t, &|_| on.clone());
            }
        }
    }
    best.expect("every ray from an interior point hits the boundary").1
}
