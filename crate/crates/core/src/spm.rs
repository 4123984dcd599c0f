//! Window partitions: faces of constant link distance from a source point.

use std::collections::VecDeque;

use crate::geometry::{cmp_along, intersect_points, line_intersection, orient, Intersection, Point, Polygon, Segment};
use crate::planner::Path;
use crate::scalar::Scalar;
use crate::visibility::{visibility_polygon, weak_visibility_from_chord, Pocket, Window};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpmFace {
    pub id: usize,
    pub polygon: Polygon,
    /// Link distance from the source to every point of the face except the
    /// source itself.
    pub depth: u32,
    /// `None` exactly for the depth 1 face.
    pub parent_window: Option<Window>,
    pub parent_face: Option<usize>,
}

/// The partition of a polygon into faces of equal link distance from a
/// source. Faces are closed and listed in breadth-first order, so depths are
/// non-decreasing with id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Spm {
    polygon: Polygon,
    source: Point,
    faces: Vec<SpmFace>,
}

pub fn build_spm(poly: &Polygon, x: &Point) -> Result<Spm> {
    Spm::build(poly, x)
}

pub fn locate(spm: &Spm, p: &Point) -> Result<usize> {
    spm.locate(p)
}

pub fn link_distance(spm: &Spm, p: &Point) -> Result<u32> {
    spm.link_distance(p)
}

pub fn min_link_path(spm: &Spm, p: &Point) -> Result<Path> {
    spm.min_link_path(p)
}

pub fn faces_crossed(spm: &Spm, segment: &Segment) -> Result<usize> {
    spm.faces_crossed(segment)
}

impl Spm {
    pub fn build(poly: &Polygon, x: &Point) -> Result<Spm> {
        let vis = visibility_polygon(poly, x)?;
        let mut faces = vec![SpmFace {
            id: 0,
            polygon: vis.region,
            depth: 1,
            parent_window: None,
            parent_face: None,
        }];
        let mut queue: VecDeque<(Pocket, usize)> = vis.pockets.into_iter().map(|p| (p, 0)).collect();
        while let Some((pocket, parent)) = queue.pop_front() {
            let weak = weak_visibility_from_chord(&pocket.region, &pocket.window.chord)?;
            let id = faces.len();
            faces.push(SpmFace {
                id,
                polygon: weak.region,
                depth: faces[parent].depth + 1,
                parent_window: Some(pocket.window),
                parent_face: Some(parent),
            });
            queue.extend(weak.pockets.into_iter().map(|p| (p, id)));
        }
        Ok(Spm { polygon: poly.clone(), source: x.clone(), faces })
    }

    pub fn polygon(&self) -> &Polygon {
        &self.polygon
    }

    pub fn source(&self) -> &Point {
        &self.source
    }

    pub fn faces(&self) -> &[SpmFace] {
        &self.faces
    }

    pub fn face(&self, id: usize) -> &SpmFace {
        &self.faces[id]
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn max_depth(&self) -> u32 {
        self.faces.iter().map(|f| f.depth).max().unwrap_or(1)
    }

    /// All window chords, one per face of depth at least 2.
    pub fn windows(&self) -> impl Iterator<Item = &Window> + '_ {
        self.faces.iter().filter_map(|f| f.parent_window.as_ref())
    }

    /// The face of smallest depth (then smallest id) whose closure holds `p`.
    pub fn locate(&self, p: &Point) -> Result<usize> {
        if !self.polygon.locate(p).is_inside() {
            return Err(Error::PointOutside(Box::new(p.clone())));
        }
        self.faces
            .iter()
            .filter(|f| f.polygon.locate(p).is_inside())
            .min_by_key(|f| (f.depth, f.id))
            .map(|f| f.id)
            .ok_or_else(|| Error::ConstructionFailure(format!("no face contains {p}")))
    }

    pub fn link_distance(&self, p: &Point) -> Result<u32> {
        let face = self.locate(p)?;
        if p == &self.source {
            return Ok(0);
        }
        Ok(self.faces[face].depth)
    }

    /// A minimum link path from the source to `p`. Each bend sits at the
    /// midpoint of the longest part of the next parent window seen from the
    /// previous bend.
    pub fn min_link_path(&self, p: &Point) -> Result<Path> {
        let mut face = self.locate(p)?;
        if p == &self.source {
            return Ok(Path::new(vec![p.clone()]));
        }
        let mut points = vec![p.clone()];
        let mut current = p.clone();
        while let (Some(window), Some(parent)) = (&self.faces[face].parent_window, self.faces[face].parent_face) {
            let bend = visible_midpoint(&self.faces[face].polygon, &current, &window.chord).ok_or_else(|| {
                Error::ConstructionFailure(format!("{current} sees no point of its parent window"))
            })?;
            points.push(bend.clone());
            current = bend;
            face = parent;
        }
        points.push(self.source.clone());
        points.reverse();
        Ok(Path::new(points))
    }

    /// Number of faces whose closure meets the segment.
    pub fn faces_crossed(&self, segment: &Segment) -> Result<usize> {
        if !self.polygon.contains_segment(segment.a(), segment.b()).unwrap_or(false) {
            return Err(Error::SegmentOutside);
        }
        Ok(self.faces.iter().filter(|f| segment_meets_polygon(&f.polygon, segment)).count())
    }
}

pub(crate) fn segment_meets_polygon(poly: &Polygon, segment: &Segment) -> bool {
    poly.locate(segment.a()).is_inside()
        || poly.edges().any(|(u, v)| intersect_points(segment.a(), segment.b(), u, v) != Intersection::None)
}

/// Midpoint of the longest run of `chord` seen from `from` inside `poly`. A
/// run may degenerate to a single point.
pub(crate) fn visible_midpoint(poly: &Polygon, from: &Point, chord: &Segment) -> Option<Point> {
    let (a, b) = (chord.a(), chord.b());
    let mut stops = vec![a.clone(), b.clone()];
    for v in poly.vertices() {
        if v == from {
            continue;
        }
        let (oa, ob) = (orient(from, v, a), orient(from, v, b));
        if oa.is_colinear() || ob.is_colinear() || oa == ob {
            continue;
        }
        stops.push(line_intersection(from, v, a, b));
    }
    stops.sort_by(|p, q| cmp_along(a, b, p, q));
    stops.dedup();

    let sees = |p: &Point| poly.contains_segment_unchecked(from, p);
    let point_ok: Vec<bool> = stops.iter().map(&sees).collect();
    let gap_ok: Vec<bool> = stops.windows(2).map(|w| sees(&w[0].midpoint(&w[1]))).collect();

    // Runs of consecutive visible stops joined by visible gaps.
    let mut best: Option<(Scalar, Point)> = None;
    let mut i = 0;
    while i < stops.len() {
        if !point_ok[i] {
            i += 1;
            continue;
        }
        let mut j = i;
        while j + 1 < stops.len() && gap_ok[j] && point_ok[j + 1] {
            j += 1;
        }
        let (dx, dy) = stops[j].sub(&stops[i]);
        let len2 = &dx * &dx + &dy * &dy;
        if best.as_ref().is_none_or(|(l, _)| &len2 > l) {
            best = Some((len2, stops[i].midpoint(&stops[j])));
        }
        i = j + 1;
    }
    best.map(|(_, p)| p)
}
