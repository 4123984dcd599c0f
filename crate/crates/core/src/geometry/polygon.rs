use std::cmp::Ordering;

use super::point::Point;
use super::predicates::{cmp_along, on_open_segment, on_segment, orient, Orientation};
use super::segment::{bbox_overlap, intersect_points, properly_cross, Intersection, Segment};
use crate::scalar::Scalar;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Location {
    Interior,
    Boundary,
    Exterior,
}

impl Location {
    /// Interior or boundary: inside the closed polygon.
    pub fn is_inside(self) -> bool {
        self != Location::Exterior
    }
}

/// A simple polygon with counterclockwise vertex order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polygon {
    vertices: Vec<Point>,
}

/// Validates a raw vertex list and normalizes it to counterclockwise order.
pub fn validate_polygon(raw: Vec<Point>) -> Result<Polygon> {
    Polygon::new(raw)
}

pub fn point_in_polygon(poly: &Polygon, p: &Point) -> Location {
    poly.locate(p)
}

/// Whether every point of `s` lies in the closed polygon.
pub fn segment_in_polygon(poly: &Polygon, s: &Segment) -> Result<bool> {
    poly.contains_segment(s.a(), s.b())
}

impl Polygon {
    pub fn new(mut raw: Vec<Point>) -> Result<Self> {
        let n = raw.len();
        if n < 3 {
            return Err(Error::TooFewVertices(n));
        }
        for i in 0..n {
            if raw[i] == raw[(i + 1) % n] {
                return Err(Error::DuplicateVertex((i + 1) % n));
            }
        }
        for i in 0..n {
            let (a, b) = (&raw[i], &raw[(i + 1) % n]);
            for j in (i + 1)..n {
                let (c, d) = (&raw[j], &raw[(j + 1) % n]);
                if !bbox_overlap(a, b, c, d) {
                    continue;
                }
                let hit = intersect_points(a, b, c, d);
                let adjacent_at = if j == i + 1 {
                    Some(b)
                } else if i == 0 && j == n - 1 {
                    Some(a)
                } else {
                    None
                };
                let bad = match (&hit, adjacent_at) {
                    (Intersection::None, _) => false,
                    (Intersection::Point(p), Some(shared)) => p != shared,
                    _ => true,
                };
                if bad {
                    return Err(Error::SelfIntersecting(i, j));
                }
            }
        }
        let area2 = twice_signed_area(&raw);
        if area2.is_zero() {
            return Err(Error::ZeroArea);
        }
        if area2.is_negative() {
            raw.reverse();
        }
        Ok(Polygon { vertices: raw })
    }

    /// Wraps a vertex list that is already known to be simple and counterclockwise.
    pub(crate) fn from_ccw_unchecked(vertices: Vec<Point>) -> Self {
        debug_assert!(vertices.len() >= 3);
        Polygon { vertices }
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertex(&self, i: usize) -> &Point {
        &self.vertices[i % self.vertices.len()]
    }

    pub fn next(&self, i: usize) -> usize {
        (i + 1) % self.vertices.len()
    }

    pub fn prev(&self, i: usize) -> usize {
        (i + self.vertices.len() - 1) % self.vertices.len()
    }

    /// Edge `i` runs from vertex `i` to vertex `i + 1`.
    pub fn edge(&self, i: usize) -> (&Point, &Point) {
        (&self.vertices[i], &self.vertices[self.next(i)])
    }

    pub fn edges(&self) -> impl Iterator<Item = (&Point, &Point)> + '_ {
        (0..self.len()).map(move |i| self.edge(i))
    }

    pub fn area(&self) -> Scalar {
        twice_signed_area(&self.vertices).half()
    }

    /// Interior angle greater than pi.
    pub fn is_reflex(&self, i: usize) -> bool {
        orient(self.vertex(self.prev(i)), &self.vertices[i], self.vertex(self.next(i)))
            == Orientation::ClockWise
    }

    pub fn index_of(&self, p: &Point) -> Option<usize> {
        self.vertices.iter().position(|v| v == p)
    }

    /// Exact point classification by winding number.
    pub fn locate(&self, p: &Point) -> Location {
        let [px, py] = p.approx();
        let mut winding = 0i64;
        for (a, b) in self.edges() {
            let [ax, ay] = a.approx();
            let [bx, by] = b.approx();
            let tol = 1e-9 * (1.0 + px.abs().max(py.abs()).max(ax.abs()).max(bx.abs()));
            let near = px >= ax.min(bx) - tol
                && px <= ax.max(bx) + tol
                && py >= ay.min(by) - tol
                && py <= ay.max(by) + tol;
            let mut side = None;
            if near {
                let o = orient(a, b, p);
                if o.is_colinear() && on_segment(p, a, b) {
                    return Location::Boundary;
                }
                side = Some(o);
            }
            let a_below = a.cmp_y(p) != Ordering::Greater;
            let b_below = b.cmp_y(p) != Ordering::Greater;
            if a_below && !b_below {
                if side.unwrap_or_else(|| orient(a, b, p)) == Orientation::CounterClockWise {
                    winding += 1;
                }
            } else if !a_below && b_below
                && side.unwrap_or_else(|| orient(a, b, p)) == Orientation::ClockWise
            {
                winding -= 1;
            }
        }
        if winding != 0 {
            Location::Interior
        } else {
            Location::Exterior
        }
    }

    /// Whether the closed segment `a b` lies in the closed polygon. Segments
    /// may slide along edges and touch reflex vertices.
    pub fn contains_segment(&self, a: &Point, b: &Point) -> Result<bool> {
        if !self.locate(a).is_inside() || !self.locate(b).is_inside() {
            return Err(Error::EndpointOutside);
        }
        Ok(self.contains_segment_unchecked(a, b))
    }

    /// [`Polygon::contains_segment`] for endpoints already known to be inside.
    pub(crate) fn contains_segment_unchecked(&self, a: &Point, b: &Point) -> bool {
        if a == b {
            return true;
        }
        for (u, v) in self.edges() {
            if properly_cross(a, b, u, v) {
                return false;
            }
        }
        let mut stops: Vec<&Point> = vec![a, b];
        for v in &self.vertices {
            if on_open_segment(v, a, b) {
                stops.push(v);
            }
        }
        stops.sort_by(|p, q| cmp_along(a, b, p, q));
        stops.dedup();
        stops
            .windows(2)
            .all(|w| self.locate(&w[0].midpoint(w[1])).is_inside())
    }

    /// Pieces of the segment `a b` whose relative interior lies in the open
    /// interior of the polygon, in order from `a` to `b`.
    pub fn interior_pieces(&self, a: &Point, b: &Point) -> Vec<(Point, Point)> {
        let mut stops: Vec<Point> = vec![a.clone(), b.clone()];
        for (u, v) in self.edges() {
            match intersect_points(a, b, u, v) {
                Intersection::None => {}
                Intersection::Point(p) => stops.push(p),
                Intersection::Overlap(s) => {
                    stops.push(s.a().clone());
                    stops.push(s.b().clone());
                }
            }
        }
        stops.sort_by(|p, q| cmp_along(a, b, p, q));
        stops.dedup();
        stops
            .windows(2)
            .filter(|w| self.locate(&w[0].midpoint(&w[1])) == Location::Interior)
            .map(|w| (w[0].clone(), w[1].clone()))
            .collect()
    }

    /// Inserts boundary points as vertices. Returns the refined polygon and
    /// the vertex index of every requested point.
    pub fn insert_boundary_points(&self, points: &[Point]) -> Result<(Polygon, Vec<usize>)> {
        let n = self.len();
        let mut per_edge: Vec<Vec<Point>> = vec![Vec::new(); n];
        for p in points {
            if self.index_of(p).is_some() {
                continue;
            }
            let edge = (0..n)
                .find(|&i| {
                    let (u, v) = self.edge(i);
                    on_open_segment(p, u, v)
                })
                .ok_or_else(|| Error::ChordEndpointNotOnBoundary(Box::new(p.clone())))?;
            per_edge[edge].push(p.clone());
        }
        let mut out = Vec::with_capacity(n + points.len());
        for (i, extra) in per_edge.iter_mut().enumerate() {
            let (u, v) = self.edge(i);
            out.push(u.clone());
            extra.sort_by(|p, q| cmp_along(u, v, p, q));
            extra.dedup();
            out.append(extra);
        }
        let refined = Polygon::from_ccw_unchecked(out);
        let indices = points
            .iter()
            .map(|p| refined.index_of(p).expect("inserted point present"))
            .collect();
        Ok((refined, indices))
    }

    /// Vertices `from, from + 1, ..., to` (cyclic, inclusive).
    pub(crate) fn arc(&self, from: usize, to: usize) -> Vec<Point> {
        let n = self.len();
        let mut out = Vec::new();
        let mut i = from;
        loop {
            out.push(self.vertices[i].clone());
            if i == to {
                break;
            }
            i = (i + 1) % n;
        }
        out
    }

    /// Splits the polygon along a chord whose endpoints are on the boundary
    /// and whose relative interior is strictly inside. The first polygon runs
    /// counterclockwise from `chord.a()` to `chord.b()`, the second from
    /// `chord.b()` back to `chord.a()`.
    pub fn split_by_chord(&self, chord: &Segment) -> Result<(Polygon, Polygon)> {
        let (a, b) = (chord.a(), chord.b());
        for p in [a, b] {
            if self.locate(p) != Location::Boundary {
                return Err(Error::ChordEndpointNotOnBoundary(Box::new(p.clone())));
            }
        }
        if self.vertices.iter().any(|v| on_open_segment(v, a, b))
            || self.edges().any(|(u, v)| properly_cross(a, b, u, v))
            || self.locate(&chord.midpoint()) != Location::Interior
        {
            return Err(Error::ChordNotInterior);
        }
        let (refined, idx) = self.insert_boundary_points(&[a.clone(), b.clone()])?;
        let first = refined.arc(idx[0], idx[1]);
        let second = refined.arc(idx[1], idx[0]);
        if first.len() < 3 || second.len() < 3 {
            return Err(Error::ChordNotInterior);
        }
        Ok((Polygon::from_ccw_unchecked(first), Polygon::from_ccw_unchecked(second)))
    }

    /// Drops vertices whose interior angle is exactly pi.
    pub fn without_collinear(&self) -> Polygon {
        let n = self.len();
        let kept: Vec<Point> = (0..n)
            .filter(|&i| {
                !orient(self.vertex(self.prev(i)), &self.vertices[i], self.vertex(self.next(i)))
                    .is_colinear()
            })
            .map(|i| self.vertices[i].clone())
            .collect();
        Polygon::from_ccw_unchecked(kept)
    }

    /// Re-runs the full simplicity and orientation check.
    pub fn check(&self) -> Result<()> {
        let v = Polygon::new(self.vertices.clone())?;
        if v.vertices != self.vertices {
            return Err(Error::ConstructionFailure("polygon is clockwise".into()));
        }
        Ok(())
    }

    pub fn bbox(&self) -> (f64, f64, f64, f64) {
        let mut b = (f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY);
        for v in &self.vertices {
            let (x, y) = v.to_f64();
            b = (b.0.min(x), b.1.min(y), b.2.max(x), b.3.max(y));
        }
        b
    }
}

pub(crate) fn twice_signed_area(vertices: &[Point]) -> Scalar {
    let n = vertices.len();
    let mut sum = Scalar::zero();
    for i in 0..n {
        let (p, q) = (&vertices[i], &vertices[(i + 1) % n]);
        sum = sum + (p.x() * q.y() - q.x() * p.y());
    }
    sum
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn p(x: i64, y: i64) -> Point {
        Point::from_ints(x, y)
    }

    fn d(x: &str, y: &str) -> Point {
        Point::parse(x, y).unwrap()
    }

    fn square() -> Polygon {
        Polygon::new(vec![p(0, 0), p(4, 0), p(4, 4), p(0, 4)]).unwrap()
    }

    #[test]
    fn validates_square() {
        let sq = square();
        assert_eq!(sq.area(), Scalar::from_int(16));
        assert_eq!(sq.vertices()[1], p(4, 0));
    }

    #[test]
    fn rejects_bowtie_and_duplicates() {
        let r = Polygon::new(vec![p(0, 0), p(4, 4), p(4, 0), p(0, 4)]);
        assert!(matches!(r, Err(Error::SelfIntersecting(_, _))));
        let r = Polygon::new(vec![p(0, 0), p(4, 0), p(4, 0), p(0, 4)]);
        assert!(matches!(r, Err(Error::DuplicateVertex(2))));
        assert!(matches!(Polygon::new(vec![p(0, 0), p(1, 0)]), Err(Error::TooFewVertices(2))));
        let r = Polygon::new(vec![p(0, 0), p(1, 0), p(2, 0)]);
        assert!(r.is_err());
    }

    #[test]
    fn normalizes_clockwise_input() {
        let cw = Polygon::new(vec![p(0, 0), p(0, 4), p(4, 4), p(4, 0)]).unwrap();
        assert!(cw.area().is_positive());
        assert_eq!(cw.vertices()[0], p(4, 0));
        let mut rev = square().vertices().to_vec();
        rev.reverse();
        assert_eq!(Polygon::new(rev).unwrap(), square());
    }

    #[test]
    fn locates_points() {
        let sq = square();
        assert_eq!(sq.locate(&p(2, 2)), Location::Interior);
        assert_eq!(sq.locate(&p(4, 2)), Location::Boundary);
        assert_eq!(sq.locate(&p(5, 2)), Location::Exterior);
        assert_eq!(sq.locate(&p(0, 0)), Location::Boundary);
        let u = fixtures::fix_u();
        assert_eq!(u.locate(&p(3, 3)), Location::Exterior);
        assert_eq!(u.locate(&d("3", "2")), Location::Boundary);
        assert_eq!(u.locate(&d("1", "3")), Location::Interior);
    }

    #[test]
    fn segments_in_l() {
        let l = fixtures::fix_l();
        assert!(!l.contains_segment(&d("3.5", "1"), &d("1", "3.5")).unwrap());
        assert!(l.contains_segment(&d("3.5", "1"), &d("1.5", "1.5")).unwrap());
        // Grazing the reflex corner is allowed.
        assert!(l.contains_segment(&d("3", "1"), &d("1", "3")).unwrap());
        // Sliding along an edge is allowed.
        assert!(l.contains_segment(&p(4, 2), &p(0, 2)).unwrap());
        assert!(matches!(
            l.contains_segment(&p(3, 3), &p(1, 1)),
            Err(Error::EndpointOutside)
        ));
        let sq = square();
        assert!(sq.contains_segment(&d("0.5", "0.1"), &d("3.9", "3.7")).unwrap());
    }

    #[test]
    fn chord_between_boundary_points_outside_is_rejected() {
        let u = fixtures::fix_u();
        // Both endpoints on the boundary, the segment crosses the gap between the arms.
        assert!(!u.contains_segment(&p(2, 3), &p(4, 3)).unwrap());
    }

    #[test]
    fn splits_square() {
        let sq = square();
        let (a, b) = sq.split_by_chord(&Segment::new(p(0, 2), p(4, 2)).unwrap()).unwrap();
        assert_eq!(a.area(), Scalar::from_int(8));
        assert_eq!(b.area(), Scalar::from_int(8));
        let (a, b) = sq.split_by_chord(&Segment::new(p(0, 2), p(2, 0)).unwrap()).unwrap();
        let mut areas = [a.area(), b.area()];
        areas.sort();
        assert_eq!(areas, [Scalar::from_int(2), Scalar::from_int(14)]);
        a.check().unwrap();
        b.check().unwrap();
    }

    #[test]
    fn splits_u_along_window() {
        let u = fixtures::fix_u();
        let chord = Segment::new(p(4, 2), d("8/3", "0")).unwrap();
        let (a, b) = u.split_by_chord(&chord).unwrap();
        assert_eq!(a.area() + b.area(), u.area());
        let q = d("5", "3.5");
        let s = d("0.5", "3.5");
        let (q_side, s_side) = if a.locate(&q).is_inside() { (a, b) } else { (b, a) };
        assert_eq!(q_side.locate(&q), Location::Interior);
        assert_eq!(s_side.locate(&s), Location::Interior);
        assert_eq!(q_side.locate(&s), Location::Exterior);
    }

    #[test]
    fn split_errors() {
        let sq = square();
        let r = sq.split_by_chord(&Segment::new(p(1, 1), p(4, 2)).unwrap());
        assert!(matches!(r, Err(Error::ChordEndpointNotOnBoundary(_))));
        let r = sq.split_by_chord(&Segment::new(p(0, 0), p(4, 0)).unwrap());
        assert!(matches!(r, Err(Error::ChordNotInterior)));
        let u = fixtures::fix_u();
        let r = u.split_by_chord(&Segment::new(p(2, 3), p(4, 3)).unwrap());
        assert!(matches!(r, Err(Error::ChordNotInterior)));
    }

    #[test]
    fn interior_pieces_of_segment() {
        let u = fixtures::fix_u();
        let pieces = u.interior_pieces(&d("1", "3"), &d("5", "3"));
        assert_eq!(pieces, vec![(d("1", "3"), p(2, 3)), (p(4, 3), d("5", "3"))]);
    }
}
