#![allow(dead_code)]

use qlink::oracle::{random_interior_point, random_simple_polygon};
use qlink::{Error, Point, Polygon};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn d(x: &str, y: &str) -> Point {
    Point::parse(x, y).unwrap()
}

/// Random simple polygon, moving on to later seeds when generation gives up.
pub fn polygon(seed: u64, n: usize) -> Polygon {
    (0..100)
        .find_map(|k| match random_simple_polygon(seed.wrapping_add(k * 7919), n) {
            Ok(p) => Some(p),
            Err(Error::GenerationFailure(_)) => None,
            Err(e) => panic!("unexpected generator error {e}"),
        })
        .expect("some seed yields a polygon")
}

/// Random polygon with `count` interior points, all from one seed.
pub fn instance(seed: u64, n: usize, count: usize) -> (Polygon, Vec<Point>) {
    let poly = polygon(seed, n);
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let points = (0..count).map(|_| random_interior_point(&mut rng, &poly)).collect();
    (poly, points)
}

pub fn points(seed: u64, poly: &Polygon, count: usize) -> Vec<Point> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_interior_point(&mut rng, poly)).collect()
}

/// Named fixtures used across suites.
pub fn fixtures() -> Vec<(&'static str, Polygon)> {
    use qlink::fixtures::*;
    vec![("square", square()), ("L", fix_l()), ("U", fix_u())]
}
