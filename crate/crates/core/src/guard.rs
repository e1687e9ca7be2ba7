//! Guard placement inside the corridors of balanced parts.
//!
//! Every tooth of a part needs a guard somewhere in its orthogonal shadow,
//! and inside the corridor that shadow is the tooth's x-range times the
//! corridor band. Upper and lower candidate rectangles are merged in x order;
//! each overlapping upper/lower pair is replaced by its intersection.

use serde::{Deserialize, Serialize};

use crate::balanced::{split_balanced_with, BalancedPart, BalancedSplit, CutPolicy, LocalMinRule};
use crate::decompose::{vertical_decompose, DecomposeError, Slab, VerticalDecomposition};
use crate::geom::{AxisRect, Chain, Coord, DoubledPoint, OrthoPolygon};
use crate::pixel::PixelGrid;

/// A tooth of a part's boundary: a maximal horizontal run of the upper
/// (lower) chain whose neighbours on both sides are lower (higher) or absent.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartTooth {
    pub chain: Chain,
    pub x0: Coord,
    pub x1: Coord,
    pub y: Coord,
}

impl PartTooth {
    pub fn segment(&self) -> AxisRect {
        AxisRect::from_coords(self.x0, self.y, self.x1, self.y)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GuardPosition {
    pub rect: AxisRect,
    /// One tooth, or an upper and a lower tooth whose shadows were merged.
    pub sources: Vec<PartTooth>,
    pub guard: DoubledPoint,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartSolution {
    pub part: BalancedPart,
    pub positions: Vec<GuardPosition>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GuardSolution {
    pub parts: Vec<PartSolution>,
    pub guards: Vec<DoubledPoint>,
    pub guard_number: usize,
}

/// Maximal runs of equal height along one chain, left to right, keeping
/// those that stick out on both sides.
fn chain_teeth(slabs: &[Slab], chain: Chain, out: &mut Vec<PartTooth>) {
    let level = |s: &Slab| match chain {
        Chain::Upper => s.upper_y(),
        Chain::Lower => s.lower_y(),
    };
    // Positive when `a` sticks out further than `b`.
    let beyond = |a: Coord, b: Coord| match chain {
        Chain::Upper => a > b,
        Chain::Lower => a < b,
    };
    let mut runs: Vec<(Coord, Coord, Coord)> = Vec::new();
    for s in slabs {
        let y = level(s);
        match runs.last_mut() {
            Some(run) if run.2 == y => run.1 = s.rect.hi.x,
            _ => runs.push((s.rect.lo.x, s.rect.hi.x, y)),
        }
    }
    for (k, &(x0, x1, y)) in runs.iter().enumerate() {
        let left_ok = k == 0 || beyond(y, runs[k - 1].2);
        let right_ok = k + 1 == runs.len() || beyond(y, runs[k + 1].2);
        if left_ok && right_ok {
            out.push(PartTooth { chain, x0, x1, y });
        }
    }
}

/// Teeth of the sub-polygon formed by one balanced part. Part ends count as
/// convex corners.
pub fn part_teeth(part: &BalancedPart, slabs: &[Slab]) -> Vec<PartTooth> {
    let ordered = part.slabs_left_to_right(slabs);
    let mut out = Vec::new();
    chain_teeth(&ordered, Chain::Lower, &mut out);
    chain_teeth(&ordered, Chain::Upper, &mut out);
    out
}

/// Guard positions for one balanced part, left to right.
///
/// Panics if a merged position still meets the following candidate (three
/// shadows sharing a point) or if two candidates from the same chain
/// overlap; both contradict the structure of a balanced monotone part.
pub fn tooth_positions(part: &BalancedPart, slabs: &[Slab]) -> Vec<GuardPosition> {
    let band = part.corridor;
    let teeth = part_teeth(part, slabs);
    let candidate = |t: &PartTooth| AxisRect::from_coords(t.x0, band.lo.y, t.x1, band.hi.y);

    // Lower teeth come first, so a stable sort keeps them ahead of upper
    // teeth starting at the same x.
    let mut order: Vec<&PartTooth> = teeth.iter().collect();
    order.sort_by_key(|t| t.x0);

    let mut out = Vec::with_capacity(order.len());
    let mut i = 0;
    while i < order.len() {
        let cur = order[i];
        let rect = candidate(cur);
        let merged = order
            .get(i + 1)
            .and_then(|next| rect.intersection(&candidate(next)).map(|r| (next, r)));
        match merged {
            Some((next, both)) => {
                assert_ne!(
                    cur.chain, next.chain,
                    "teeth of one chain overlap: {:?} {:?}",
                    cur, next
                );
                if let Some(third) = order.get(i + 2) {
                    assert!(
                        both.intersection(&candidate(third)).is_none(),
                        "three tooth shadows share a point near x = {}",
                        both.lo.x
                    );
                }
                out.push(GuardPosition {
                    rect: both,
                    sources: vec![*cur, **next],
                    guard: both.center2(),
                });
                i += 2;
            }
            None => {
                out.push(GuardPosition {
                    rect,
                    sources: vec![*cur],
                    guard: rect.center2(),
                });
                i += 1;
            }
        }
    }
    out
}

/// Places guards for an already decomposed and split polygon.
pub fn place_guards(vd: &VerticalDecomposition, split: &BalancedSplit) -> GuardSolution {
    let parts: Vec<PartSolution> = split
        .parts
        .iter()
        .map(|part| PartSolution {
            part: *part,
            positions: tooth_positions(part, vd.slabs()),
        })
        .collect();
    let guards: Vec<DoubledPoint> = parts
        .iter()
        .flat_map(|p| p.positions.iter().map(|pos| pos.guard))
        .collect();
    GuardSolution {
        guard_number: guards.len(),
        parts,
        guards,
    }
}

/// Minimum r-guard placement for an orthogonal path polygon.
pub fn guard_path_polygon(poly: &OrthoPolygon) -> Result<GuardSolution, DecomposeError> {
    guard_path_polygon_with(poly, &mut LocalMinRule)
}

/// As [`guard_path_polygon`], with a caller-supplied cut rule.
pub fn guard_path_polygon_with(
    poly: &OrthoPolygon,
    policy: &mut dyn CutPolicy,
) -> Result<GuardSolution, DecomposeError> {
    let vd = vertical_decompose(poly)?;
    let split = split_balanced_with(&vd, policy);
    Ok(place_guards(&vd, &split))
}

/// Whether `g` lies in the orthogonal shadow of horizontal edge `edge`:
/// directly above or below it, joined to it by a vertical segment inside
/// the polygon.
pub fn in_shadow(poly: &OrthoPolygon, grid: &PixelGrid, edge: usize, g: DoubledPoint) -> bool {
    let e = poly.edge(edge);
    assert!(e.is_horizontal(), "edge {edge} is not horizontal");
    let s = grid.scale();
    let seg = e.bounds();
    let (x0, x1, y) = (2 * seg.lo.x * s, 2 * seg.hi.x * s, 2 * seg.lo.y * s);
    if g.x2 < x0 || g.x2 > x1 {
        return false;
    }
    let foot = DoubledPoint::new(g.x2, y);
    let (lo, hi) = if g.y2 <= y { (g, foot) } else { (foot, g) };
    grid.contains_rect2(lo, hi)
}

/// True iff some guard lies in the orthogonal shadow of `tooth`.
pub fn shadow_necessity_witness(
    poly: &OrthoPolygon,
    grid: &PixelGrid,
    tooth: usize,
    guards: &[DoubledPoint],
) -> bool {
    guards.iter().any(|&g| in_shadow(poly, grid, tooth, g))
}

impl GuardSolution {
    /// Guard positions of every part in order.
    pub fn positions(&self) -> impl Iterator<Item = &GuardPosition> {
        self.parts.iter().flat_map(|p| p.positions.iter())
    }

    pub fn guard_points_f64(&self) -> Vec<(f64, f64)> {
        self.guards.iter().map(|g| g.to_f64()).collect()
    }
}

/// Sub-polygon formed by one balanced part, as a validated polygon.
pub fn part_polygon(part: &BalancedPart, slabs: &[Slab]) -> OrthoPolygon {
    let ordered = part.slabs_left_to_right(slabs);
    let mut xs: Vec<Coord> = ordered.iter().map(|s| s.rect.lo.x).collect();
    xs.push(ordered.last().unwrap().rect.hi.x);
    let spans: Vec<(Coord, Coord)> = ordered.iter().map(|s| (s.lower_y(), s.upper_y())).collect();
    crate::fixtures::columns(&xs, &spans)
}
