use super::point::Point;
use super::predicates::{between, orient};
use crate::{Error, Result};

/// A non-degenerate closed line segment.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Segment {
    a: Point,
    b: Point,
}

impl Segment {
    pub fn new(a: Point, b: Point) -> Result<Self> {
        if a == b {
            return Err(Error::DegenerateSegment);
        }
        Ok(Segment { a, b })
    }

    pub(crate) fn new_unchecked(a: Point, b: Point) -> Self {
        debug_assert!(a != b);
        Segment { a, b }
    }

    pub fn a(&self) -> &Point {
        &self.a
    }

    pub fn b(&self) -> &Point {
        &self.b
    }

    pub fn reversed(&self) -> Segment {
        Segment { a: self.b.clone(), b: self.a.clone() }
    }

    pub fn midpoint(&self) -> Point {
        self.a.midpoint(&self.b)
    }

    pub fn contains(&self, p: &Point) -> bool {
        super::predicates::on_segment(p, &self.a, &self.b)
    }

    /// Same segment regardless of direction.
    pub fn same_as(&self, other: &Segment) -> bool {
        (self.a == other.a && self.b == other.b) || (self.a == other.b && self.b == other.a)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Intersection {
    None,
    Point(Point),
    Overlap(Segment),
}

/// Exact classification of the intersection of two closed segments.
pub fn segment_intersection(s1: &Segment, s2: &Segment) -> Intersection {
    intersect_points(&s1.a, &s1.b, &s2.a, &s2.b)
}

pub(crate) fn intersect_points(a: &Point, b: &Point, c: &Point, d: &Point) -> Intersection {
    if !bbox_overlap(a, b, c, d) {
        return Intersection::None;
    }
    let o1 = orient(a, b, c);
    let o2 = orient(a, b, d);
    if o1.is_colinear() && o2.is_colinear() {
        let (lo1, hi1) = if a <= b { (a, b) } else { (b, a) };
        let (lo2, hi2) = if c <= d { (c, d) } else { (d, c) };
        let lo = if lo1 >= lo2 { lo1 } else { lo2 };
        let hi = if hi1 <= hi2 { hi1 } else { hi2 };
        return match lo.cmp(hi) {
            std::cmp::Ordering::Greater => Intersection::None,
            std::cmp::Ordering::Equal => Intersection::Point(lo.clone()),
            std::cmp::Ordering::Less => {
                Intersection::Overlap(Segment::new_unchecked(lo.clone(), hi.clone()))
            }
        };
    }
    if o1 == o2 {
        return Intersection::None;
    }
    let o3 = orient(c, d, a);
    let o4 = orient(c, d, b);
    if o3 == o4 && !o3.is_colinear() {
        return Intersection::None;
    }
    if o1.is_colinear() {
        return if between(c, a, b) { Intersection::Point(c.clone()) } else { Intersection::None };
    }
    if o2.is_colinear() {
        return if between(d, a, b) { Intersection::Point(d.clone()) } else { Intersection::None };
    }
    if o3.is_colinear() {
        return Intersection::Point(a.clone());
    }
    if o4.is_colinear() {
        return Intersection::Point(b.clone());
    }
    Intersection::Point(line_intersection(a, b, c, d))
}

/// Whether the two segments cross at a single point interior to both.
pub(crate) fn properly_cross(a: &Point, b: &Point, c: &Point, d: &Point) -> bool {
    if !bbox_overlap(a, b, c, d) {
        return false;
    }
    let o1 = orient(a, b, c);
    let o2 = orient(a, b, d);
    if o1.is_colinear() || o2.is_colinear() || o1 == o2 {
        return false;
    }
    let o3 = orient(c, d, a);
    let o4 = orient(c, d, b);
    !o3.is_colinear() && !o4.is_colinear() && o3 != o4
}

/// Intersection of the supporting lines of `a b` and `c d` (must not be parallel).
pub(crate) fn line_intersection(a: &Point, b: &Point, c: &Point, d: &Point) -> Point {
    // a + t (b - a) with t = ((c - a) x (d - c)) / ((b - a) x (d - c))
    let (ex, ey) = b.sub(a);
    let (fx, fy) = d.sub(c);
    let (gx, gy) = c.sub(a);
    let denom = &ex * &fy - &ey * &fx;
    assert!(!denom.is_zero(), "parallel lines have no unique intersection");
    let num = &gx * &fy - &gy * &fx;
    a.lerp(b, &(&num / &denom))
}

pub(crate) fn bbox_overlap(a: &Point, b: &Point, c: &Point, d: &Point) -> bool {
    let [ax, ay] = a.approx();
    let [bx, by] = b.approx();
    let [cx, cy] = c.approx();
    let [dx, dy] = d.approx();
    let tol = 1e-9 * (1.0 + ax.abs().max(ay.abs()).max(bx.abs()).max(by.abs()).max(cx.abs()).max(cy.abs()).max(dx.abs()).max(dy.abs()));
    !(ax.max(bx) + tol < cx.min(dx)
        || cx.max(dx) + tol < ax.min(bx)
        || ay.max(by) + tol < cy.min(dy)
        || cy.max(dy) + tol < ay.min(by))
}
