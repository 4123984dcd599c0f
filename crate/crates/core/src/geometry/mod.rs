//! Exact planar geometry over rationals.

mod point;
mod polygon;
mod predicates;
mod segment;

pub use point::Point;
pub use polygon::{point_in_polygon, segment_in_polygon, validate_polygon, Location, Polygon};
pub use predicates::{
    between, cmp_along, cross_exact, dot_exact, on_open_segment, on_segment, orient, Orientation,
};
pub use segment::{segment_intersection, Intersection, Segment};

pub(crate) use segment::{intersect_points, line_intersection, properly_cross};
