//! Library half of the `pathguard` command-line tool: JSON views, SVG
//! rendering, the scaling benchmark and batch corpus runs.

pub mod bench;
pub mod corpus;
pub mod input;
pub mod json;
pub mod render;
