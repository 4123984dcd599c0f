//! Visibility polygons, their windows and pockets, and weak visibility from a
//! chord.
//!
//! Both constructions work the same way. Every window is a chord of the
//! polygon that starts at a reflex vertex and ends at the first boundary
//! contact of a ray through that vertex. The region behind each window (its
//! pocket) is a contiguous run of boundary vertices; carving all pockets off
//! leaves the visible region.

use crate::geometry::{cross_exact, dot_exact, line_intersection, orient, Location, Orientation, Point, Polygon, Segment};
use crate::scalar::Scalar;
use crate::{Error, Result};

/// What a visibility region is seen from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Source {
    Point(Point),
    Chord(Segment),
}

/// A chord of the polygon bounding a visible region, anchored at a reflex
/// vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Window {
    /// Runs from `anchor` to `far_end`.
    pub chord: Segment,
    pub anchor: Point,
    pub far_end: Point,
}

/// A region hidden from the source, cut off by exactly one window.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pocket {
    pub id: usize,
    /// Counterclockwise; the window chord is one of its edges.
    pub region: Polygon,
    pub window: Window,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VisibilityPolygon {
    pub region: Polygon,
    pub source: Source,
    /// In counterclockwise boundary order.
    pub windows: Vec<Window>,
    /// `pockets[i]` lies behind `windows[i]`.
    pub pockets: Vec<Pocket>,
}

/// Whether the closed segment `a b` lies in the closed polygon.
pub fn sees(poly: &Polygon, a: &Point, b: &Point) -> bool {
    poly.contains_segment(a, b).unwrap_or(false)
}

pub fn visibility_polygon(poly: &Polygon, x: &Point) -> Result<VisibilityPolygon> {
    if !poly.locate(x).is_inside() {
        return Err(Error::PointOutside(Box::new(x.clone())));
    }
    let mut cuts = Vec::new();
    for i in 0..poly.len() {
        let v = poly.vertex(i);
        if v == x || !poly.is_reflex(i) {
            continue;
        }
        let Some(tangent) = tangency(poly, i, x, v) else {
            continue;
        };
        if !poly.contains_segment_unchecked(x, v) {
            continue;
        }
        cuts.push(Cut { anchor: i, far_end: first_hit_beyond(poly, x, v), forward_next: tangent.forward_next });
    }
    carve(poly, cuts, Source::Point(x.clone()), None)
}

pub fn pockets(poly: &Polygon, x: &Point) -> Result<Vec<Pocket>> {
    Ok(visibility_polygon(poly, x)?.pockets)
}

/// The region of `sub` seen from at least one point of `chord`, which must be
/// an edge of `sub` (either direction).
pub fn weak_visibility_from_chord(sub: &Polygon, chord: &Segment) -> Result<VisibilityPolygon> {
    let n = sub.len();
    let (a, b) = (0..n)
        .find_map(|i| {
            let (u, v) = sub.edge(i);
            if u == chord.a() && v == chord.b() {
                Some((chord.a(), chord.b()))
            } else if u == chord.b() && v == chord.a() {
                Some((chord.b(), chord.a()))
            } else {
                None
            }
        })
        .ok_or(Error::ChordNotEdge)?;

    let reflex: Vec<usize> = (0..n)
        .filter(|&i| sub.vertex(i) != a && sub.vertex(i) != b && sub.is_reflex(i))
        .collect();
    let mut cuts = Vec::new();

    // Shadow lines from the chord endpoints. The window through `v` seen from
    // one endpoint is only a boundary of the weak region when the other
    // endpoint is strictly on the obstacle side.
    for (y, other) in [(a, b), (b, a)] {
        for &i in &reflex {
            let v = sub.vertex(i);
            let Some(tangent) = tangency(sub, i, y, v) else {
                continue;
            };
            if orient(y, v, other) != tangent.side || !sub.contains_segment_unchecked(y, v) {
                continue;
            }
            cuts.push(Cut { anchor: i, far_end: first_hit_beyond(sub, y, v), forward_next: tangent.forward_next });
        }
    }

    // Separating tangents: the line through `u` and `v` crosses the open chord
    // at `y` in the order y, u, v, with the obstacles of `u` and `v` on
    // opposite sides.
    let height = |w: &Point| cross_exact(a, b, w);
    for &iu in &reflex {
        let u = sub.vertex(iu);
        for &iv in &reflex {
            if iu == iv {
                continue;
            }
            let v = sub.vertex(iv);
            let (oa, ob) = (orient(u, v, a), orient(u, v, b));
            if oa.is_colinear() || ob.is_colinear() || oa == ob {
                continue;
            }
            let Some(tu) = tangency(sub, iu, u, v) else {
                continue;
            };
            let Some(tv) = tangency(sub, iv, u, v) else {
                continue;
            };
            if tu.side == tv.side || height(u) >= height(v) {
                continue;
            }
            let y = line_intersection(u, v, a, b);
            if !sub.contains_segment_unchecked(&y, v) {
                continue;
            }
            cuts.push(Cut { anchor: iv, far_end: first_hit_beyond(sub, u, v), forward_next: tv.forward_next });
        }
    }

    carve(sub, cuts, Source::Chord(Segment::new_unchecked(a.clone(), b.clone())), Some((a, b)))
}

struct Tangent {
    side: Orientation,
    forward_next: bool,
}

/// Classifies the line `from -> to` (which passes through vertex `i`) at
/// vertex `i`. Returns the side holding the obstacle when the line only
/// touches the boundary there and continues into the interior, and whether
/// the next edge is the one leading into the shadow.
fn tangency(poly: &Polygon, i: usize, from: &Point, to: &Point) -> Option<Tangent> {
    let v = poly.vertex(i);
    let u = poly.vertex(poly.prev(i));
    let w = poly.vertex(poly.next(i));
    let ou = orient(from, to, u);
    let ow = orient(from, to, w);
    let ahead = |p: &Point| {
        let (dx, dy) = to.sub(from);
        let (px, py) = p.sub(v);
        (&dx * &px + &dy * &py).is_positive()
    };
    match (ou.is_colinear(), ow.is_colinear()) {
        (false, false) if ou == ow => {
            let turn = orient(v, w, u);
            let forward_next = match ou {
                Orientation::CounterClockWise => turn == Orientation::CounterClockWise,
                _ => turn == Orientation::ClockWise,
            };
            Some(Tangent { side: ou, forward_next })
        }
        (false, false) => None,
        (true, false) if !ahead(u) => Some(Tangent { side: ow, forward_next: true }),
        (false, true) if !ahead(w) => Some(Tangent { side: ou, forward_next: false }),
        _ => None,
    }
}

/// First boundary point strictly beyond `through` on the ray from `origin`.
pub(crate) fn first_hit_beyond(poly: &Polygon, origin: &Point, through: &Point) -> Point {
    let (dx, dy) = through.sub(origin);
    let [ox, oy] = origin.approx();
    let [tx, ty] = through.approx();
    let (fdx, fdy) = (tx - ox, ty - oy);
    let dd = dot_exact(origin, through, through);
    let fdd = fdx * fdx + fdy * fdy;

    let mut best: Option<(Scalar, f64, Point)> = None;
    let mut consider = |t_approx: f64, exact: &dyn Fn() -> Scalar, point: &dyn Fn(&Scalar) -> Point| {
        if t_approx < 1.0 - 1e-9 {
            return;
        }
        if let Some((_, bf, _)) = &best {
            if t_approx > bf + 1e-9 * bf.abs().max(1.0) {
                return;
            }
        }
        let t = exact();
        if t <= Scalar::one() {
            return;
        }
        if best.as_ref().is_none_or(|(bt, _, _)| &t < bt) {
            let p = point(&t);
            best = Some((t, t_approx, p));
        }
    };

    let sides: Vec<Orientation> = poly.vertices().iter().map(|p| orient(origin, through, p)).collect();
    for (i, p) in poly.vertices().iter().enumerate() {
        if sides[i].is_colinear() {
            let [px, py] = p.approx();
            let ta = ((px - ox) * fdx + (py - oy) * fdy) / fdd;
            consider(ta, &|| &dot_exact(origin, through, p) / &dd, &|_| p.clone());
        }
    }
    for i in 0..poly.len() {
        let j = poly.next(i);
        let (si, sj) = (sides[i], sides[j]);
        if si.is_colinear() || sj.is_colinear() || si == sj {
            continue;
        }
        let (a, b) = poly.edge(i);
        let [ax, ay] = a.approx();
        let [bx, by] = b.approx();
        let (ex, ey) = (bx - ax, by - ay);
        let ta = ((ax - ox) * ey - (ay - oy) * ex) / (fdx * ey - fdy * ex);
        let exact = || {
            let (ex, ey) = b.sub(a);
            let (gx, gy) = a.sub(origin);
            (&gx * &ey - &gy * &ex) / (&dx * &ey - &dy * &ex)
        };
        consider(ta, &exact, &|t| origin.lerp(through, t));
    }
    best.expect("a ray from inside a bounded polygon leaves it").2
}

struct Cut {
    anchor: usize,
    far_end: Point,
    forward_next: bool,
}

/// Removes the pocket behind every cut and assembles the visible region.
/// Cuts whose pocket would contain the edge `keep` are discarded.
fn carve(poly: &Polygon, cuts: Vec<Cut>, source: Source, keep: Option<(&Point, &Point)>) -> Result<VisibilityPolygon> {
    let far_ends: Vec<Point> = cuts.iter().map(|c| c.far_end.clone()).collect();
    let (refined, far_idx) = poly.insert_boundary_points(&far_ends)?;
    let n = refined.len();
    let span = |s: usize, e: usize| (e + n - s) % n;
    let keep_idx = keep.map(|(a, _)| refined.index_of(a).expect("chord endpoint is a vertex"));

    let mut arcs: Vec<(usize, usize, usize)> = Vec::new();
    for (k, cut) in cuts.iter().enumerate() {
        let anchor = refined.index_of(poly.vertex(cut.anchor)).expect("anchor survives refinement");
        let (s, e) = if cut.forward_next { (anchor, far_idx[k]) } else { (far_idx[k], anchor) };
        if span(s, e) < 2 {
            continue;
        }
        if let Some(ka) = keep_idx {
            if span(s, ka) < span(s, e) {
                continue;
            }
        }
        arcs.push((s, e, k));
    }

    // Keep only maximal arcs; among equal arcs keep the first.
    let inside = |a: &(usize, usize, usize), b: &(usize, usize, usize)| {
        let off = span(b.0, a.0);
        off + span(a.0, a.1) <= span(b.0, b.1)
    };
    let maximal: Vec<(usize, usize, usize)> = arcs
        .iter()
        .enumerate()
        .filter(|(i, a)| {
            !arcs.iter().enumerate().any(|(j, b)| {
                j != *i && inside(a, b) && (!inside(b, a) || j < *i)
            })
        })
        .map(|(_, a)| *a)
        .collect();

    let strictly_inside = |i: usize, arc: &(usize, usize, usize)| {
        let off = span(arc.0, i);
        off > 0 && off < span(arc.0, arc.1)
    };
    let start = (0..n)
        .find(|&i| !maximal.iter().any(|arc| strictly_inside(i, arc)))
        .ok_or_else(|| Error::ConstructionFailure("visible region is empty".into()))?;

    let mut skip_to: Vec<Option<usize>> = vec![None; n];
    for arc in &maximal {
        skip_to[arc.0] = Some(arc.1);
    }
    let mut boundary = Vec::new();
    let mut i = start;
    for _ in 0..=n {
        boundary.push(refined.vertex(i).clone());
        i = skip_to[i].unwrap_or((i + 1) % n);
        if i == start {
            break;
        }
    }
    if i != start || boundary.len() < 3 {
        return Err(Error::ConstructionFailure("pocket arcs overlap".into()));
    }

    let mut ordered = maximal;
    ordered.sort_by_key(|arc| span(start, arc.0));
    let mut windows = Vec::with_capacity(ordered.len());
    let mut pockets = Vec::with_capacity(ordered.len());
    for (id, &(s, e, k)) in ordered.iter().enumerate() {
        let anchor = poly.vertex(cuts[k].anchor).clone();
        let far_end = cuts[k].far_end.clone();
        let window = Window { chord: Segment::new_unchecked(anchor.clone(), far_end.clone()), anchor, far_end };
        pockets.push(Pocket { id, region: Polygon::from_ccw_unchecked(refined.arc(s, e)), window: window.clone() });
        windows.push(window);
    }
    Ok(VisibilityPolygon { region: Polygon::from_ccw_unchecked(boundary), source, windows, pockets })
}

impl VisibilityPolygon {
    /// Whether `p` lies in the closed visible region.
    pub fn contains(&self, p: &Point) -> bool {
        self.region.locate(p) != Location::Exterior
    }
}
