//! Minimum r-guard placement in orthogonal path polygons.
//!
//! The pipeline validates a polygon, cuts it into vertical slabs that form a
//! path, splits that path into balanced parts and places guards on the
//! teeth of each part. An exact set-cover oracle over the pixel grid and a
//! coverage verifier check the results.

pub mod balanced;
pub mod decompose;
pub mod fixtures;
pub mod format;
pub mod generator;
pub mod geom;
pub mod guard;
pub mod oracle;
pub mod pixel;
pub mod visibility;

pub use balanced::{split_balanced, BalancedPart, BalancedSplit};
pub use decompose::{is_path, vertical_decompose, DecomposeError, Slab, VerticalDecomposition};
pub use generator::{generate, GenConfig, GenError};
pub use geom::{
    validate_polygon, AxisRect, Coord, DoubledPoint, OrthoPolygon, Point, PolygonError,
};
pub use guard::{guard_path_polygon, GuardSolution};
pub use oracle::{min_rguards_exact, refine_and_recheck, OracleConfig, OracleError};
pub use pixel::{pixel_decompose, PixelGrid};
pub use visibility::{coverage_check, r_visible, Coverage};
