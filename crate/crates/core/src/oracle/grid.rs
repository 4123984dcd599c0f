use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::naive::naive_visibility_polygon;
use crate::geometry::{between, orient, Location, Point, Polygon};
use crate::scalar::Scalar;
use crate::{Error, Result};

type IPoint = (i128, i128);

/// Scaled coordinates stay below this so every product of two differences
/// fits comfortably in an `i128`.
const COORD_LIMIT: i128 = 1 << 40;

fn cross(o: IPoint, a: IPoint, b: IPoint) -> i128 {
    (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
}

fn dot(o: IPoint, a: IPoint, b: IPoint) -> i128 {
    (a.0 - o.0) * (b.0 - o.0) + (a.1 - o.1) * (b.1 - o.1)
}

/// The polygon in integer coordinates, with exact point and segment tests.
struct Kernel {
    verts: Vec<IPoint>,
    boxes: Vec<(i128, i128, i128, i128)>,
}

impl Kernel {
    fn new(verts: Vec<IPoint>) -> Self {
        let n = verts.len();
        let boxes = (0..n)
            .map(|i| {
                let (a, b) = (verts[i], verts[(i + 1) % n]);
                (a.0.min(b.0), a.1.min(b.1), a.0.max(b.0), a.1.max(b.1))
            })
            .collect();
        Kernel { verts, boxes }
    }

    fn edge(&self, i: usize) -> (IPoint, IPoint) {
        (self.verts[i], self.verts[(i + 1) % self.verts.len()])
    }

    /// Locates `p` against the polygon scaled by `k`.
    fn locate(&self, p: IPoint, k: i128) -> Location {
        let mut winding = 0i32;
        for i in 0..self.verts.len() {
            let (a, b) = self.edge(i);
            let (a, b) = ((a.0 * k, a.1 * k), (b.0 * k, b.1 * k));
            let c = cross(a, b, p);
            if c == 0 && p.0 >= a.0.min(b.0) && p.0 <= a.0.max(b.0) && p.1 >= a.1.min(b.1) && p.1 <= a.1.max(b.1) {
                return Location::Boundary;
            }
            if a.1 <= p.1 {
                if b.1 > p.1 && c > 0 {
                    winding += 1;
                }
            } else if b.1 <= p.1 && c < 0 {
                winding -= 1;
            }
        }
        if winding != 0 {
            Location::Interior
        } else {
            Location::Exterior
        }
    }

    /// Whether the closed segment lies in the closed polygon. Both endpoints
    /// must already be inside.
    fn sees(&self, a: IPoint, b: IPoint) -> bool {
        if a == b {
            return true;
        }
        let (lx, ly, hx, hy) = (a.0.min(b.0), a.1.min(b.1), a.0.max(b.0), a.1.max(b.1));
        let mut stops: Vec<IPoint> = Vec::new();
        for i in 0..self.verts.len() {
            let bx = self.boxes[i];
            if bx.2 < lx || bx.0 > hx || bx.3 < ly || bx.1 > hy {
                continue;
            }
            let (c, d) = self.edge(i);
            let (o1, o2) = (cross(a, b, c).signum(), cross(a, b, d).signum());
            if o1 * o2 < 0 {
                let (o3, o4) = (cross(c, d, a).signum(), cross(c, d, b).signum());
                if o3 * o4 < 0 {
                    return false;
                }
            }
            if o1 == 0 && c != a && c != b && dot(a, b, c) > 0 && dot(b, a, c) > 0 {
                stops.push(c);
            }
        }
        if stops.is_empty() {
            return self.locate((a.0 + b.0, a.1 + b.1), 2) != Location::Exterior;
        }
        stops.push(a);
        stops.push(b);
        stops.sort_by_key(|&p| dot(a, b, p));
        stops.dedup();
        stops.windows(2).all(|w| self.locate((w[0].0 + w[1].0, w[0].1 + w[1].1), 2) != Location::Exterior)
    }
}

/// Sample points strictly inside a polygon on a square grid, plus extra
/// points, joined when they see each other. Adjacency is evaluated on demand.
pub struct GridGraph {
    kernel: Kernel,
    resolution: Scalar,
    nodes: Vec<Point>,
    scaled: Vec<IPoint>,
    grid_len: usize,
}

impl GridGraph {
    /// Grid points at multiples of `resolution` strictly inside `poly`,
    /// followed by `extras` in order.
    pub fn new(poly: &Polygon, resolution: &Scalar, extras: &[Point]) -> Result<Self> {
        assert!(resolution.is_positive(), "resolution must be positive");
        for p in extras {
            if !poly.locate(p).is_inside() {
                return Err(Error::PointOutside(Box::new(p.clone())));
            }
        }
        let coords = poly.vertices().iter().chain(extras).flat_map(|p| [p.x(), p.y()]);
        let scale = coords.fold(resolution.denom().clone(), |acc, c| acc.lcm(c.denom()));
        let to_int = |s: &Scalar| -> Result<i128> {
            let v = s.numer() * (&scale / s.denom());
            match v.to_i128() {
                Some(v) if v.abs() < COORD_LIMIT => Ok(v),
                _ => Err(Error::OracleOverflow),
            }
        };
        let to_ipoint = |p: &Point| -> Result<IPoint> { Ok((to_int(p.x())?, to_int(p.y())?)) };

        let verts = poly.vertices().iter().map(to_ipoint).collect::<Result<Vec<_>>>()?;
        let kernel = Kernel::new(verts);
        let step = to_int(resolution)?;
        let (mut lx, mut ly, mut hx, mut hy) = (i128::MAX, i128::MAX, i128::MIN, i128::MIN);
        for &(x, y) in &kernel.verts {
            (lx, ly, hx, hy) = (lx.min(x), ly.min(y), hx.max(x), hy.max(y));
        }
        let mut nodes = Vec::new();
        let mut scaled = Vec::new();
        for i in Integer::div_ceil(&lx, &step)..=Integer::div_floor(&hx, &step) {
            for j in Integer::div_ceil(&ly, &step)..=Integer::div_floor(&hy, &step) {
                let p = (i * step, j * step);
                if kernel.locate(p, 1) == Location::Interior {
                    scaled.push(p);
                    nodes.push(Point::new(
                        Scalar::from_big(BigInt::from(p.0), scale.clone()),
                        Scalar::from_big(BigInt::from(p.1), scale.clone()),
                    ));
                }
            }
        }
        let grid_len = nodes.len();
        for p in extras {
            scaled.push(to_ipoint(p)?);
            nodes.push(p.clone());
        }
        Ok(GridGraph { kernel, resolution: resolution.clone(), nodes, scaled, grid_len })
    }

    pub fn resolution(&self) -> &Scalar {
        &self.resolution
    }

    pub fn nodes(&self) -> &[Point] {
        &self.nodes
    }

    /// Number of grid samples; extra points follow them.
    pub fn grid_len(&self) -> usize {
        self.grid_len
    }

    pub fn extra(&self, k: usize) -> usize {
        self.grid_len + k
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        self.kernel.sees(self.scaled[i], self.scaled[j])
    }

    /// Hop counts from `from`, stopping once `stop_at` is reached.
    pub fn bfs(&self, from: usize, stop_at: Option<usize>) -> Vec<Option<u32>> {
        let n = self.nodes.len();
        let mut dist = vec![None; n];
        dist[from] = Some(0);
        let mut unvisited: Vec<usize> = (0..n).filter(|&i| i != from).collect();
        let mut frontier = vec![from];
        let mut depth = 0;
        while !frontier.is_empty() && !unvisited.is_empty() {
            if stop_at.is_some_and(|t| dist[t].is_some()) {
                break;
            }
            depth += 1;
            let mut next = Vec::new();
            for &u in &frontier {
                unvisited.retain(|&w| {
                    if self.adjacent(u, w) {
                        dist[w] = Some(depth);
                        next.push(w);
                        false
                    } else {
                        true
                    }
                });
            }
            frontier = next;
        }
        dist
    }

    /// Fewest hops from `from` to `to` along a walk that touches the region
    /// seen from node `q`. `windows` are the chords bounding that region.
    fn q_visible_bfs(&self, from: usize, to: usize, q: usize, windows: &[(Point, Point)]) -> Option<u32> {
        let n = self.nodes.len();
        let sees_q: Vec<bool> = (0..n).map(|i| self.adjacent(i, q)).collect();
        let hits = |u: usize, w: usize| {
            windows.iter().any(|(a, b)| segments_meet(&self.nodes[u], &self.nodes[w], a, b))
        };
        let mut seen = [vec![false; n], vec![false; n]];
        let start = (from, sees_q[from]);
        seen[start.1 as usize][from] = true;
        if start == (to, true) {
            return Some(0);
        }
        let mut frontier = vec![start];
        let mut depth = 0;
        while !frontier.is_empty() {
            depth += 1;
            let mut next = Vec::new();
            for &(u, flag) in &frontier {
                for w in 0..n {
                    if seen[1][w] && (flag || sees_q[w] || seen[0][w]) {
                        continue;
                    }
                    if !self.adjacent(u, w) {
                        continue;
                    }
                    let f = flag || sees_q[w] || hits(u, w);
                    if seen[f as usize][w] {
                        continue;
                    }
                    if (w, f) == (to, true) {
                        return Some(depth);
                    }
                    seen[f as usize][w] = true;
                    next.push((w, f));
                }
            }
            frontier = next;
        }
        None
    }
}

/// Whether two closed segments share a point.
fn segments_meet(a: &Point, b: &Point, c: &Point, d: &Point) -> bool {
    let (o1, o2) = (orient(a, b, c), orient(a, b, d));
    let (o3, o4) = (orient(c, d, a), orient(c, d, b));
    if o1 != o2 && o3 != o4 {
        return true;
    }
    (o1.is_colinear() && between(c, a, b))
        || (o2.is_colinear() && between(d, a, b))
        || (o3.is_colinear() && between(a, c, d))
        || (o4.is_colinear() && between(b, c, d))
}

/// Grid link distance between `s` and `t`; `None` if the grid leaves them
/// disconnected.
pub fn oracle_link_distance(poly: &Polygon, s: &Point, t: &Point, resolution: &Scalar) -> Result<Option<u32>> {
    let graph = GridGraph::new(poly, resolution, &[s.clone(), t.clone()])?;
    if s == t {
        return Ok(Some(0));
    }
    let (from, to) = (graph.extra(0), graph.extra(1));
    Ok(graph.bfs(from, Some(to))[to])
}

/// Grid link distance from `source` to every target.
pub fn oracle_distances_from(
    poly: &Polygon,
    source: &Point,
    targets: &[Point],
    resolution: &Scalar,
) -> Result<Vec<Option<u32>>> {
    let mut extras = vec![source.clone()];
    extras.extend_from_slice(targets);
    let graph = GridGraph::new(poly, resolution, &extras)?;
    let dist = graph.bfs(graph.extra(0), None);
    Ok(targets
        .iter()
        .enumerate()
        .map(|(k, p)| if p == source { Some(0) } else { dist[graph.extra(k + 1)] })
        .collect())
}

/// Grid link distance between `s` and `t` over walks that meet the closed
/// visibility polygon of `q`.
pub fn oracle_q_visible_distance(
    poly: &Polygon,
    s: &Point,
    t: &Point,
    q: &Point,
    resolution: &Scalar,
) -> Result<Option<u32>> {
    let graph = GridGraph::new(poly, resolution, &[s.clone(), t.clone(), q.clone()])?;
    let region = naive_visibility_polygon(poly, q)?;
    let windows: Vec<(Point, Point)> = region
        .edges()
        .filter(|(a, b)| poly.locate(&a.midpoint(b)) != Location::Boundary)
        .map(|(a, b)| (a.clone(), b.clone()))
        .collect();
    let unique: BTreeSet<(Point, Point)> = windows.iter().cloned().collect();
    let windows: Vec<(Point, Point)> = unique.into_iter().collect();
    Ok(graph.q_visible_bfs(graph.extra(0), graph.extra(1), graph.extra(2), &windows))
}
