//! Minimum link paths from `s` to `t` that meet the visibility polygon of `q`.
//!
//! If an endpoint sees `q`, any minimum link path works. If `s` and `t` sit in
//! different pockets of `q`, every path between them passes through the
//! visible region, so again any minimum link path works. Otherwise both sit
//! behind the same window `e`: the path has to bend somewhere in the side `p`
//! of `e` holding `q`, and the best bend lies in the overlay cell of `p` with
//! the least combined link distance from `s` and `t`.

use std::fmt;

use crate::geometry::{on_segment, segment_intersection, Intersection, Point, Polygon, Segment};
use crate::overlay::{build_cells, min_cell, CellComplex};
use crate::spm::Spm;
use crate::visibility::{sees, visibility_polygon, VisibilityPolygon};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Case {
    EndpointSeesQ,
    DifferentPockets,
    SamePocket,
}

impl Case {
    pub fn as_str(self) -> &'static str {
        match self {
            Case::EndpointSeesQ => "EndpointSeesQ",
            Case::DifferentPockets => "DifferentPockets",
            Case::SamePocket => "SamePocket",
        }
    }
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A polyline given by its vertices; a single vertex is a path of no links.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Path {
    vertices: Vec<Point>,
}

impl Path {
    pub fn new(vertices: Vec<Point>) -> Self {
        assert!(!vertices.is_empty(), "a path has at least one vertex");
        Path { vertices }
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn link_count(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn start(&self) -> &Point {
        &self.vertices[0]
    }

    pub fn end(&self) -> &Point {
        &self.vertices[self.vertices.len() - 1]
    }

    pub fn reversed(&self) -> Path {
        Path { vertices: self.vertices.iter().rev().cloned().collect() }
    }

    /// `self` followed by `other`, which must start where `self` ends.
    pub fn join(&self, other: &Path) -> Path {
        assert_eq!(self.end(), other.start(), "joined paths must share an endpoint");
        let mut vertices = self.vertices.clone();
        vertices.extend(other.vertices[1..].iter().cloned());
        Path { vertices }
    }

    /// Whether `p` lies on some link (or is the only vertex).
    pub fn contains(&self, p: &Point) -> bool {
        if self.vertices.len() == 1 {
            return &self.vertices[0] == p;
        }
        self.vertices.windows(2).any(|w| on_segment(p, &w[0], &w[1]))
    }

    /// First point of the path on `chord`, walking from the start.
    pub fn first_hit(&self, chord: &Segment) -> Option<Point> {
        if self.vertices.len() == 1 {
            return chord.contains(&self.vertices[0]).then(|| self.vertices[0].clone());
        }
        for w in self.vertices.windows(2) {
            let link = Segment::new_unchecked(w[0].clone(), w[1].clone());
            match segment_intersection(&link, chord) {
                Intersection::None => {}
                Intersection::Point(p) => return Some(p),
                Intersection::Overlap(o) => {
                    let a_first = crate::geometry::cmp_along(&w[0], &w[1], o.a(), o.b()).is_le();
                    return Some(if a_first { o.a().clone() } else { o.b().clone() });
                }
            }
        }
        None
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QVisibleResult {
    pub s: Point,
    pub t: Point,
    pub case: Case,
    pub distance: u32,
    pub path: Path,
    /// A point of `path` that sees `q`.
    pub witness: Point,
    /// Value of the chosen overlay cell, only for [`Case::SamePocket`].
    pub cell_value: Option<u32>,
}

/// Everything computed while answering one query.
#[derive(Debug, Clone)]
pub struct Plan {
    pub visibility_q: VisibilityPolygon,
    /// Pocket of `q` holding `s` and `t`, when they share one.
    pub pocket: Option<usize>,
    pub spm_s: Spm,
    /// `None` when `t` equals `s`.
    pub spm_t: Option<Spm>,
    pub complex: Option<CellComplex>,
    pub result: QVisibleResult,
}

impl Plan {
    pub fn spm_t(&self) -> &Spm {
        self.spm_t.as_ref().unwrap_or(&self.spm_s)
    }
}

fn check_inside(poly: &Polygon, points: [&Point; 3]) -> Result<()> {
    for p in points {
        if !poly.locate(p).is_inside() {
            return Err(Error::PointOutside(Box::new(p.clone())));
        }
    }
    Ok(())
}

struct Classification {
    case: Case,
    vis: VisibilityPolygon,
    pocket_s: Option<usize>,
}

fn classify_with(poly: &Polygon, s: &Point, t: &Point, q: &Point) -> Result<Classification> {
    check_inside(poly, [s, t, q])?;
    let vis = visibility_polygon(poly, q)?;
    if sees(poly, s, q) || sees(poly, t, q) {
        return Ok(Classification { case: Case::EndpointSeesQ, vis, pocket_s: None });
    }
    let pocket_of = |p: &Point| vis.pockets.iter().position(|k| k.region.locate(p).is_inside());
    let (ps, pt) = (pocket_of(s), pocket_of(t));
    let case = match (ps, pt) {
        (Some(a), Some(b)) if a == b => Case::SamePocket,
        (Some(_), Some(_)) => Case::DifferentPockets,
        _ => {
            return Err(Error::ConstructionFailure("a point hidden from q lies in no pocket".into()));
        }
    };
    Ok(Classification { case, vis, pocket_s: ps })
}

pub fn classify(poly: &Polygon, s: &Point, t: &Point, q: &Point) -> Result<Case> {
    Ok(classify_with(poly, s, t, q)?.case)
}

pub fn q_visible_path(poly: &Polygon, s: &Point, t: &Point, q: &Point) -> Result<QVisibleResult> {
    Ok(plan(poly, s, t, q)?.result)
}

pub fn plan(poly: &Polygon, s: &Point, t: &Point, q: &Point) -> Result<Plan> {
    let Classification { case, vis, pocket_s } = classify_with(poly, s, t, q)?;
    let spm_s = Spm::build(poly, s)?;
    let spm_t = if s == t { None } else { Some(Spm::build(poly, t)?) };
    let spm_t_ref = spm_t.as_ref().unwrap_or(&spm_s);

    let (path, witness, complex, cell_value) = match case {
        Case::EndpointSeesQ => {
            let path = spm_s.min_link_path(t)?;
            let witness = if sees(poly, s, q) { s.clone() } else { t.clone() };
            (path, witness, None, None)
        }
        Case::DifferentPockets => {
            let path = spm_s.min_link_path(t)?;
            let window = &vis.pockets[pocket_s.expect("hidden s has a pocket")].window.chord;
            let witness = path
                .first_hit(window)
                .ok_or_else(|| Error::ConstructionFailure("path between pockets misses the window".into()))?;
            (path, witness, None, None)
        }
        Case::SamePocket => {
            let pocket = &vis.pockets[pocket_s.expect("hidden s has a pocket")];
            let e = &pocket.window.chord;
            let (one, other) = poly.split_by_chord(e)?;
            let p = if one.locate(q).is_inside() { one } else { other };
            let complex = build_cells(&spm_s, spm_t_ref, &p)?;
            let (id, value) =
                min_cell(&complex).ok_or_else(|| Error::ConstructionFailure("empty cell complex".into()))?;
            let x = complex.cells[id].representative.clone();
            let path = spm_s.min_link_path(&x)?.join(&spm_t_ref.min_link_path(&x)?.reversed());
            let witness = path
                .first_hit(e)
                .ok_or_else(|| Error::ConstructionFailure("path never reaches the window of its pocket".into()))?;
            (path, witness, Some(complex), Some(value))
        }
    };

    let distance = u32::try_from(path.link_count()).expect("link count fits in u32");
    if let Some(value) = cell_value {
        if value != distance {
            return Err(Error::ConstructionFailure(format!(
                "path has {distance} links but its cell value is {value}"
            )));
        }
    }
    let result = QVisibleResult { s: s.clone(), t: t.clone(), case, distance, path, witness, cell_value };
    Ok(Plan { visibility_q: vis, pocket: pocket_s.filter(|_| case == Case::SamePocket), spm_s, spm_t, complex, result })
}

/// Re-checks a result from scratch: endpoints, link count, every link inside
/// the polygon, and a witness on the path that sees `q`.
pub fn verify(poly: &Polygon, q: &Point, result: &QVisibleResult) -> bool {
    let path = &result.path;
    if path.start() != &result.s || path.end() != &result.t {
        return false;
    }
    if path.link_count() != result.distance as usize {
        return false;
    }
    if path.vertices().windows(2).any(|w| w[0] == w[1]) {
        return false;
    }
    if !path.vertices().iter().all(|v| poly.locate(v).is_inside()) {
        return false;
    }
    if !path.vertices().windows(2).all(|w| poly.contains_segment_unchecked(&w[0], &w[1])) {
        return false;
    }
    if result.case == Case::SamePocket && result.cell_value != Some(result.distance) {
        return false;
    }
    path.contains(&result.witness) && poly.locate(&result.witness).is_inside() && sees(poly, &result.witness, q)
}
