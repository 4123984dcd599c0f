use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::geometry::{orient, properly_cross, Location, Point, Polygon};
use crate::scalar::Scalar;
use crate::{Error, Result};

const GRID: i64 = 100;
const MAX_SWEEPS: usize = 10_000;

/// Deterministic random simple polygon with `n` vertices on the 0.1 lattice
/// of `[0, 10]^2`.
///
/// Vertices are distinct with no three collinear; a random tour is untangled
/// by 2-opt moves until no two edges cross.
pub fn random_simple_polygon(seed: u64, n: usize) -> Result<Polygon> {
    if n < 3 {
        return Err(Error::TooFewVertices(n));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pts: Vec<Point> = Vec::with_capacity(n);
    let mut attempts = 0usize;
    while pts.len() < n {
        attempts += 1;
        if attempts > 1000 * n {
            return Err(Error::GenerationFailure(seed));
        }
        let p = Point::new(
            Scalar::from_ratio(rng.gen_range(0..=GRID), 10),
            Scalar::from_ratio(rng.gen_range(0..=GRID), 10),
        );
        if pts.contains(&p) || collinear_with_any(&pts, &p) {
            continue;
        }
        pts.push(p);
    }
    pts.shuffle(&mut rng);
    untangle(&mut pts).ok_or(Error::GenerationFailure(seed))?;
    Polygon::new(pts).map_err(|_| Error::GenerationFailure(seed))
}

fn collinear_with_any(pts: &[Point], p: &Point) -> bool {
    pts.iter()
        .enumerate()
        .any(|(i, a)| pts[i + 1..].iter().any(|b| orient(a, b, p).is_colinear()))
}

/// Reverses tour sections until the closed tour has no crossing edges. Each
/// move strictly shortens the tour, so the loop terminates.
fn untangle(pts: &mut [Point]) -> Option<()> {
    let n = pts.len();
    for _ in 0..MAX_SWEEPS {
        let mut changed = false;
        for i in 0..n {
            for j in i + 2..n {
                if i == 0 && j == n - 1 {
                    continue;
                }
                let (a, b) = (&pts[i], &pts[i + 1]);
                let (c, d) = (&pts[j], &pts[(j + 1) % n]);
                if properly_cross(a, b, c, d) {
                    pts[i + 1..=j].reverse();
                    changed = true;
                }
            }
        }
        if !changed {
            return Some(());
        }
    }
    None
}

/// Uniform point strictly inside `poly`, by rejection from its bounding box.
pub fn random_interior_point<R: Rng>(rng: &mut R, poly: &Polygon) -> Point {
    let (x0, y0, x1, y1) = poly.bbox();
    loop {
        let x = x0 + (x1 - x0) * rng.gen::<f64>();
        let y = y0 + (y1 - y0) * rng.gen::<f64>();
        // Snap to a 1e-6 lattice so the point has a short exact form.
        let p = Point::new(snap(x), snap(y));
        if poly.locate(&p) == Location::Interior {
            return p;
        }
    }
}

fn snap(v: f64) -> Scalar {
    Scalar::from_ratio((v * 1e6).round() as i64, 1_000_000)
}
