//! Brute-force references for checking the main pipeline.
//!
//! Nothing here uses the visibility, partition or overlay modules. Link
//! distances come from breadth-first search over a grid of sample points
//! joined when they see each other; every grid path is a real path, so the
//! results are upper bounds that tighten as the grid is refined.

mod grid;
mod naive;
mod random;

pub use grid::{oracle_distances_from, oracle_link_distance, oracle_q_visible_distance, GridGraph};
pub use naive::naive_visibility_polygon;
pub use random::{random_interior_point, random_simple_polygon};
