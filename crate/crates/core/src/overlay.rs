//! Overlay of two window partitions inside a subpolygon.
//!
//! Window chords of both partitions are clipped to the subpolygon and inserted
//! one at a time; every insertion splits the cells it passes through. Each
//! resulting cell is labeled with its depth in both partitions.

use std::collections::{BTreeMap, BTreeSet};

use crate::geometry::{orient, segment_intersection, Intersection, Location, Orientation, Point, Polygon, Segment};
use crate::scalar::Scalar;
use crate::spm::Spm;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cell {
    pub id: usize,
    pub polygon: Polygon,
    pub s_depth: u32,
    pub t_depth: u32,
    /// `s_depth + t_depth`.
    pub value: u32,
    /// Strictly interior to `polygon`.
    pub representative: Point,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellComplex {
    pub p: Polygon,
    pub cells: Vec<Cell>,
    /// Windows of the first partition meeting the interior of `p`.
    pub k1: usize,
    /// Windows of the second partition meeting the interior of `p`.
    pub k2: usize,
    /// Distinct crossings between windows of different partitions inside `p`.
    pub crossing_count: usize,
    /// Largest number of windows of the other partition crossed by a single
    /// window inside `p`.
    pub max_window_crossings: usize,
    /// Clipped window pieces of the first partition.
    pub s_chords: Vec<Segment>,
    /// Clipped window pieces of the second partition.
    pub t_chords: Vec<Segment>,
}

impl CellComplex {
    /// `1 + k1 + k2 + crossing_count`: each inserted chord adds one cell plus
    /// one per crossing it passes.
    pub fn euler_bound(&self) -> usize {
        1 + self.k1 + self.k2 + self.crossing_count
    }

    /// `9/4 (k1 + k2)`, kept for comparison only.
    pub fn nine_quarters_bound(&self) -> f64 {
        2.25 * (self.k1 + self.k2) as f64
    }

    pub fn area(&self) -> Scalar {
        self.cells.iter().fold(Scalar::zero(), |acc, c| acc + c.polygon.area())
    }
}

/// Pieces of every face of `spm` inside `p`, with the face depth.
pub fn clip_to_subpolygon(spm: &Spm, p: &Polygon) -> Result<Vec<(Polygon, u32)>> {
    let mut out = Vec::new();
    for face in spm.faces() {
        let mut parts = vec![face.polygon.clone()];
        for (a, b) in p.edges() {
            let mut next = Vec::with_capacity(parts.len());
            for part in parts {
                next.extend(split_polygon_by_segment(&part, a, b)?);
            }
            parts = next;
        }
        for part in parts {
            if p.locate(&representative_point(&part)?) == Location::Interior {
                out.push((part, face.depth));
            }
        }
    }
    Ok(out)
}

/// Splits `poly` along every piece of the segment `a b` that crosses its
/// interior.
pub fn split_polygon_by_segment(poly: &Polygon, a: &Point, b: &Point) -> Result<Vec<Polygon>> {
    let pieces = poly.interior_pieces(a, b);
    let mut parts = vec![poly.clone()];
    for (c, d) in pieces {
        let mid = c.midpoint(&d);
        let Some(k) = parts.iter().position(|part| part.locate(&mid) == Location::Interior) else {
            continue;
        };
        let (left, right) = parts[k].split_by_chord(&Segment::new_unchecked(c, d))?;
        parts[k] = left;
        parts.push(right);
    }
    Ok(parts)
}

pub fn build_cells(spm_s: &Spm, spm_t: &Spm, p: &Polygon) -> Result<CellComplex> {
    let clip = |spm: &Spm| -> (Vec<Segment>, Vec<usize>) {
        let mut chords = Vec::new();
        let mut owner = Vec::new();
        for (k, w) in spm.windows().enumerate() {
            for (c, d) in p.interior_pieces(&w.anchor, &w.far_end) {
                chords.push(Segment::new_unchecked(c, d));
                owner.push(k);
            }
        }
        (chords, owner)
    };
    let (s_chords, s_owner) = clip(spm_s);
    let (t_chords, t_owner) = clip(spm_t);
    let distinct = |owner: &[usize]| owner.iter().collect::<BTreeSet<_>>().len();
    let (k1, k2) = (distinct(&s_owner), distinct(&t_owner));

    let mut crossings: BTreeSet<Point> = BTreeSet::new();
    let mut s_hits: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
    let mut t_hits: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
    for (i, sc) in s_chords.iter().enumerate() {
        for (j, tc) in t_chords.iter().enumerate() {
            if let Intersection::Point(x) = segment_intersection(sc, tc) {
                if p.locate(&x) == Location::Interior {
                    crossings.insert(x);
                    s_hits.entry(s_owner[i]).or_default().insert(t_owner[j]);
                    t_hits.entry(t_owner[j]).or_default().insert(s_owner[i]);
                }
            }
        }
    }
    let max_window_crossings = s_hits.values().chain(t_hits.values()).map(BTreeSet::len).max().unwrap_or(0);

    let mut polygons = vec![p.clone()];
    for chord in s_chords.iter().chain(t_chords.iter()) {
        let mut next = Vec::with_capacity(polygons.len() + 2);
        for cell in polygons {
            next.extend(split_polygon_by_segment(&cell, chord.a(), chord.b())?);
        }
        polygons = next;
    }

    let mut cells = Vec::with_capacity(polygons.len());
    for (id, polygon) in polygons.into_iter().enumerate() {
        let representative = representative_point(&polygon)?;
        let s_depth = spm_s.face(spm_s.locate(&representative)?).depth;
        let t_depth = spm_t.face(spm_t.locate(&representative)?).depth;
        cells.push(Cell { id, polygon, s_depth, t_depth, value: s_depth + t_depth, representative });
    }
    Ok(CellComplex {
        p: p.clone(),
        cells,
        k1,
        k2,
        crossing_count: crossings.len(),
        max_window_crossings,
        s_chords,
        t_chords,
    })
}

/// The cell of least value, smallest id first.
pub fn min_cell(complex: &CellComplex) -> Option<(usize, u32)> {
    complex.cells.iter().min_by_key(|c| (c.value, c.id)).map(|c| (c.id, c.value))
}

/// A point strictly inside `poly`: the centroid of the largest ear of an ear
/// clipping triangulation.
pub fn representative_point(poly: &Polygon) -> Result<Point> {
    let mut ring: Vec<Point> = poly.without_collinear().vertices().to_vec();
    if ring.len() < 3 {
        return Err(Error::DegenerateCell);
    }
    let mut best: Option<(Scalar, [Point; 3])> = None;
    let mut stalled = 0;
    let mut i = 0;
    while ring.len() > 3 {
        let n = ring.len();
        if stalled > n {
            return Err(Error::DegenerateCell);
        }
        let (ip, inx) = ((i + n - 1) % n, (i + 1) % n);
        let (a, b, c) = (&ring[ip], &ring[i], &ring[inx]);
        match orient(a, b, c) {
            Orientation::CoLinear => {
                ring.remove(i);
                stalled = 0;
            }
            Orientation::ClockWise => {
                i = (i + 1) % n;
                stalled += 1;
            }
            Orientation::CounterClockWise => {
                let blocked = ring.iter().enumerate().any(|(k, v)| {
                    k != ip && k != i && k != inx && v != a && v != b && v != c && in_closed_triangle(v, a, b, c)
                });
                if blocked {
                    i = (i + 1) % n;
                    stalled += 1;
                } else {
                    keep_largest(&mut best, a, b, c);
                    ring.remove(i);
                    stalled = 0;
                }
            }
        }
        if i >= ring.len() {
            i = 0;
        }
    }
    if orient(&ring[0], &ring[1], &ring[2]) == Orientation::CounterClockWise {
        keep_largest(&mut best, &ring[0], &ring[1], &ring[2]);
    }
    let (_, [a, b, c]) = best.ok_or(Error::DegenerateCell)?;
    let third = Scalar::from_ratio(1, 3);
    Ok(Point::new(&(&(a.x() + b.x()) + c.x()) * &third, &(&(a.y() + b.y()) + c.y()) * &third))
}

fn keep_largest(best: &mut Option<(Scalar, [Point; 3])>, a: &Point, b: &Point, c: &Point) {
    let area = crate::geometry::cross_exact(a, b, c);
    if best.as_ref().is_none_or(|(ba, _)| &area > ba) {
        *best = Some((area, [a.clone(), b.clone(), c.clone()]));
    }
}

fn in_closed_triangle(p: &Point, a: &Point, b: &Point, c: &Point) -> bool {
    orient(a, b, p) != Orientation::ClockWise
        && orient(b, c, p) != Orientation::ClockWise
        && orient(c, a, p) != Orientation::ClockWise
}
