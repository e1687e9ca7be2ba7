//! Stable JSON shapes for command output.
//!
//! Rectangles are `{"lo":{"x":..,"y":..},"hi":{..}}`. Guards use doubled
//! coordinates `{"x2":..,"y2":..}` so half-integer positions stay exact.

use pathguard::balanced::{BalancedSplit, CutReport, Orientation};
use pathguard::decompose::Seam;
use pathguard::geom::{AxisRect, DoubledPoint};
use pathguard::oracle::OracleSolution;
use pathguard::{GuardSolution, OrthoPolygon, VerticalDecomposition};
use serde::Serialize;

#[derive(Serialize)]
pub struct PartJson {
    /// First and last slab index, inclusive.
    pub slabs: [usize; 2],
    pub corridor: AxisRect,
    pub positions: Vec<AxisRect>,
}

#[derive(Serialize)]
pub struct SolutionJson {
    pub guard_number: usize,
    pub guards: Vec<DoubledPoint>,
    pub parts: Vec<PartJson>,
}

impl From<&GuardSolution> for SolutionJson {
    fn from(sol: &GuardSolution) -> Self {
        SolutionJson {
            guard_number: sol.guard_number,
            guards: sol.guards.clone(),
            parts: sol
                .parts
                .iter()
                .map(|p| PartJson {
                    slabs: [p.part.first, p.part.last],
                    corridor: p.part.corridor,
                    positions: p.positions.iter().map(|pos| pos.rect).collect(),
                })
                .collect(),
        }
    }
}

#[derive(Serialize)]
pub struct ValidateJson {
    pub n: usize,
    pub reflex: usize,
    pub convex: usize,
    pub reoriented: bool,
    pub orthoconvex: bool,
    pub path: bool,
}

impl ValidateJson {
    pub fn new(poly: &OrthoPolygon) -> Self {
        ValidateJson {
            n: poly.len(),
            reflex: poly.reflex_count(),
            convex: poly.convex_count(),
            reoriented: poly.was_reoriented(),
            orthoconvex: poly.is_orthoconvex(),
            path: pathguard::is_path(poly),
        }
    }
}

#[derive(Serialize)]
pub struct DecompositionJson {
    pub slabs: Vec<AxisRect>,
    pub seams: Vec<Seam>,
}

impl From<&VerticalDecomposition> for DecompositionJson {
    fn from(vd: &VerticalDecomposition) -> Self {
        DecompositionJson {
            slabs: vd.slabs().iter().map(|s| s.rect).collect(),
            seams: vd.seams.clone(),
        }
    }
}

#[derive(Serialize)]
pub struct BalancedPartJson {
    pub slabs: [usize; 2],
    pub corridor: AxisRect,
    pub orientation: Orientation,
}

#[derive(Serialize)]
pub struct BalancedJson {
    pub slabs: Vec<AxisRect>,
    pub parts: Vec<BalancedPartJson>,
    pub cuts: Vec<CutReport>,
}

impl BalancedJson {
    pub fn new(vd: &VerticalDecomposition, split: &BalancedSplit) -> Self {
        BalancedJson {
            slabs: vd.slabs().iter().map(|s| s.rect).collect(),
            parts: split
                .parts
                .iter()
                .map(|p| BalancedPartJson {
                    slabs: [p.first, p.last],
                    corridor: p.corridor,
                    orientation: p.orientation,
                })
                .collect(),
            cuts: split.cuts.clone(),
        }
    }
}

#[derive(Serialize)]
pub struct OracleJson {
    pub count: usize,
    pub pixels: usize,
    pub guards: Vec<DoubledPoint>,
}

impl OracleJson {
    pub fn new(sol: &OracleSolution, pixels: usize) -> Self {
        OracleJson {
            count: sol.count,
            pixels,
            guards: sol.guards.clone(),
        }
    }
}

#[derive(Serialize)]
pub struct CheckJson {
    pub covered: bool,
    pub uncovered: Vec<AxisRect>,
}
