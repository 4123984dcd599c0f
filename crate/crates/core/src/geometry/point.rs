use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

use crate::scalar::{ParseScalarError, Scalar};

/// A point with exact rational coordinates.
///
/// A rounded `f64` copy of each coordinate is cached next to the exact value
/// so that predicates can take a floating-point fast path and fall back to
/// exact arithmetic only when the filter cannot certify the sign.
#[derive(Clone)]
pub struct Point {
    x: Scalar,
    y: Scalar,
    approx: [f64; 2],
}

impl Point {
    pub fn new(x: Scalar, y: Scalar) -> Self {
        let approx = [x.to_f64(), y.to_f64()];
        Point { x, y, approx }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Point::new(Scalar::from_int(x), Scalar::from_int(y))
    }

    /// Parses both coordinates with [`Scalar::parse`].
    pub fn parse(x: &str, y: &str) -> Result<Self, ParseScalarError> {
        Ok(Point::new(Scalar::parse(x)?, Scalar::parse(y)?))
    }

    pub fn x(&self) -> &Scalar {
        &self.x
    }

    pub fn y(&self) -> &Scalar {
        &self.y
    }

    pub(crate) fn approx(&self) -> [f64; 2] {
        self.approx
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.approx[0], self.approx[1])
    }

    pub fn midpoint(&self, other: &Point) -> Point {
        Point::new((&self.x + &other.x).half(), (&self.y + &other.y).half())
    }

    /// `self + (other - self) * t`.
    pub fn lerp(&self, other: &Point, t: &Scalar) -> Point {
        Point::new(
            &self.x + &(&(&other.x - &self.x) * t),
            &self.y + &(&(&other.y - &self.y) * t),
        )
    }

    pub fn sub(&self, other: &Point) -> (Scalar, Scalar) {
        (&self.x - &other.x, &self.y - &other.y)
    }

    pub fn cmp_y(&self, other: &Point) -> Ordering {
        filtered_cmp(&self.y, self.approx[1], &other.y, other.approx[1])
    }

    /// Lexicographic order on `(x, y)` with a floating-point fast path.
    pub fn cmp_xy(&self, other: &Point) -> Ordering {
        match filtered_cmp(&self.x, self.approx[0], &other.x, other.approx[0]) {
            Ordering::Equal => filtered_cmp(&self.y, self.approx[1], &other.y, other.approx[1]),
            ord => ord,
        }
    }
}

fn filtered_cmp(a: &Scalar, fa: f64, b: &Scalar, fb: f64) -> Ordering {
    let gap = fa - fb;
    if gap.abs() > 1e-12 * (fa.abs() + fb.abs()) {
        if gap > 0.0 {
            Ordering::Greater
        } else {
            Ordering::Less
        }
    } else {
        a.cmp(b)
    }
}

impl PartialEq for Point {
    fn eq(&self, other: &Self) -> bool {
        self.cmp_xy(other) == Ordering::Equal
    }
}

impl Eq for Point {}

impl Hash for Point {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.x.hash(state);
        self.y.hash(state);
    }
}

impl PartialOrd for Point {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Point {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cmp_xy(other)
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}, {:?})", self.x, self.y)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}
