//! Minimum link paths inside a simple polygon that must see a target point.
//!
//! Given a simple polygon `P` and three points `s`, `t`, `q` in it, the
//! [`planner`] computes a path from `s` to `t` with the fewest straight links
//! among all paths that pass through the visibility polygon of `q`.
//!
//! The pipeline is built from exact pieces:
//!
//! * [`geometry`]: rational points, segments, simple polygons and predicates.
//! * [`visibility`]: visibility polygons from a point, pockets, and weak
//!   visibility from a chord.
//! * [`spm`]: the window partition of `P` into faces of equal link distance
//!   from a source, with point location and path extraction.
//! * [`overlay`]: the overlay of two window partitions inside a subpolygon.
//! * [`planner`]: case analysis and the end-to-end query.
//! * [`oracle`]: brute-force grid search used to check all of the above.

pub mod fixtures;
pub mod geometry;
pub mod oracle;
pub mod overlay;
pub mod planner;
pub mod scalar;
pub mod spm;
pub mod visibility;

pub use geometry::{
    orient, point_in_polygon, segment_in_polygon, segment_intersection, validate_polygon,
    Intersection, Location, Orientation, Point, Polygon, Segment,
};
pub use planner::{q_visible_path, verify, Case, Path, QVisibleResult};
pub use scalar::Scalar;
pub use spm::Spm;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("polygon needs at least 3 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("vertex {0} repeats its predecessor")]
    DuplicateVertex(usize),
    #[error("edges {0} and {1} intersect")]
    SelfIntersecting(usize, usize),
    #[error("polygon has zero area")]
    ZeroArea,
    #[error("segment endpoints coincide")]
    DegenerateSegment,
    #[error("point {0} lies outside the polygon")]
    PointOutside(Box<Point>),
    #[error("segment endpoint lies outside the polygon")]
    EndpointOutside,
    #[error("segment leaves the polygon")]
    SegmentOutside,
    #[error("chord endpoint {0} is not on the polygon boundary")]
    ChordEndpointNotOnBoundary(Box<Point>),
    #[error("chord interior is not strictly inside the polygon")]
    ChordNotInterior,
    #[error("chord is not an edge of the polygon")]
    ChordNotEdge,
    #[error("cell polygon is degenerate")]
    DegenerateCell,
    #[error("internal consistency failure: {0}")]
    ConstructionFailure(String),
    #[error("no simple polygon found for seed {0}")]
    GenerationFailure(u64),
    #[error("coordinates too large for the integer oracle")]
    OracleOverflow,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
