//! Vertical decomposition of an orthogonal polygon into slabs, and the
//! path ordering of those slabs.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geom::{AxisRect, Coord, OrthoPolygon, Point};

/// One rectangle of the vertical decomposition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Slab {
    pub rect: AxisRect,
    /// Polygon edge containing the top side.
    pub upper_edge: usize,
    /// Polygon edge containing the bottom side.
    pub lower_edge: usize,
}

impl Slab {
    pub fn upper_y(&self) -> Coord {
        self.rect.hi.y
    }

    pub fn lower_y(&self) -> Coord {
        self.rect.lo.y
    }

    pub fn height(&self) -> Coord {
        self.rect.height()
    }

    pub fn upper_segment(&self) -> AxisRect {
        AxisRect::from_coords(
            self.rect.lo.x,
            self.rect.hi.y,
            self.rect.hi.x,
            self.rect.hi.y,
        )
    }

    pub fn lower_segment(&self) -> AxisRect {
        AxisRect::from_coords(
            self.rect.lo.x,
            self.rect.lo.y,
            self.rect.hi.x,
            self.rect.lo.y,
        )
    }
}

/// Vertical segment shared by two consecutive slabs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Seam {
    pub x: Coord,
    pub y_lo: Coord,
    pub y_hi: Coord,
}

impl Seam {
    pub fn length(&self) -> Coord {
        self.y_hi - self.y_lo
    }

    pub fn as_rect(&self) -> AxisRect {
        AxisRect::from_coords(self.x, self.y_lo, self.x, self.y_hi)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecomposeError {
    #[error("NotPathPolygon: {0}")]
    NotPathPolygon(String),
}

/// Slabs in dual-path order, `seams[i]` joining `slabs[i]` and `slabs[i + 1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerticalDecomposition {
    pub slabs: Vec<Slab>,
    pub seams: Vec<Seam>,
}

impl VerticalDecomposition {
    pub fn len(&self) -> usize {
        self.slabs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slabs.is_empty()
    }

    pub fn slabs(&self) -> &[Slab] {
        &self.slabs
    }
}

/// Unordered vertical decomposition together with its dual graph.
#[derive(Clone, Debug)]
pub struct SlabGraph {
    pub slabs: Vec<Slab>,
    /// Pairs of slab indices sharing a vertical segment of positive length.
    pub adjacency: Vec<(usize, usize)>,
}

impl SlabGraph {
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.slabs.len()];
        for &(a, b) in &self.adjacency {
            deg[a] += 1;
            deg[b] += 1;
        }
        deg
    }
}

#[derive(Clone, Copy, Debug)]
struct Interval {
    hi: Coord,
    lo_edge: usize,
    hi_edge: usize,
    start_x: Coord,
    slab: usize,
}

/// Sweeps the vertical edges left to right. The cross-section of the
/// polygon just right of the sweep line is a set of disjoint intervals; an
/// interval touched by a vertical edge ends its slab and the cross-section
/// on the other side starts new ones.
pub fn slab_graph(poly: &OrthoPolygon) -> SlabGraph {
    let n = poly.len();
    let expected = (n - 2) / 2;
    let mut slabs: Vec<Option<Slab>> = Vec::with_capacity(expected);
    let mut adjacency = Vec::with_capacity(expected.saturating_sub(1));
    let mut active: BTreeMap<Coord, Interval> = BTreeMap::new();
    let mut closed: Vec<(Coord, Interval)> = Vec::with_capacity(2);
    let mut opened: Vec<(Coord, Interval)> = Vec::with_capacity(2);

    for &e in poly.vertical_edges_by_x() {
        let edge = poly.edge(e);
        let x = edge.a.x;
        let (a, b) = (edge.a.y.min(edge.b.y), edge.a.y.max(edge.b.y));
        let (va, vb) = if edge.a.y < edge.b.y {
            (e, e + 1)
        } else {
            (e + 1, e)
        };
        let h_a = poly.horizontal_edge_at(va % n);
        let h_b = poly.horizontal_edge_at(vb % n);
        // Downward edges have the interior on their right.
        let opens_right = edge.b.y < edge.a.y;

        closed.clear();
        opened.clear();
        let touching: Vec<Coord> = active
            .range(..=b)
            .rev()
            .take_while(|(_, iv)| iv.hi >= a)
            .map(|(lo, _)| *lo)
            .collect();
        for lo in touching {
            let iv = active.remove(&lo).unwrap();
            closed.push((lo, iv));
        }

        let mut fresh = |lo: Coord, hi: Coord, lo_edge: usize, hi_edge: usize| {
            let slab = slabs.len();
            slabs.push(None);
            (
                lo,
                Interval {
                    hi,
                    lo_edge,
                    hi_edge,
                    start_x: x,
                    slab,
                },
            )
        };

        if opens_right {
            let below = closed.iter().find(|(_, iv)| iv.hi == a);
            let above = closed.iter().find(|(lo, _)| *lo == b);
            let (lo, lo_edge) = below.map_or((a, h_a), |(lo, iv)| (*lo, iv.lo_edge));
            let (hi, hi_edge) = above.map_or((b, h_b), |(_, iv)| (iv.hi, iv.hi_edge));
            opened.push(fresh(lo, hi, lo_edge, hi_edge));
        } else {
            debug_assert_eq!(closed.len(), 1, "right wall must sit inside one interval");
            let (lo, iv) = closed[0];
            if lo < a {
                opened.push(fresh(lo, a, iv.lo_edge, h_a));
            }
            if b < iv.hi {
                opened.push(fresh(b, iv.hi, h_b, iv.hi_edge));
            }
        }

        for (lo, iv) in &closed {
            slabs[iv.slab] = Some(Slab {
                rect: AxisRect::new(Point::new(iv.start_x, *lo), Point::new(x, iv.hi)),
                upper_edge: iv.hi_edge,
                lower_edge: iv.lo_edge,
            });
            for (nlo, niv) in &opened {
                if (*lo).max(*nlo) < iv.hi.min(niv.hi) {
                    adjacency.push((iv.slab, niv.slab));
                }
            }
        }
        for (lo, iv) in opened.drain(..) {
            active.insert(lo, iv);
        }
    }
    debug_assert!(active.is_empty());
    let slabs: Vec<Slab> = slabs
        .into_iter()
        .map(|s| s.expect("unclosed slab"))
        .collect();
    assert_eq!(
        slabs.len(),
        expected,
        "slab count must be (n-2)/2 for distinct vertical x-coordinates"
    );
    SlabGraph { slabs, adjacency }
}

/// Vertical decomposition ordered along its dual path.
///
/// The walk starts at the end slab whose lower-left corner is
/// lexicographically smallest.
pub fn vertical_decompose(poly: &OrthoPolygon) -> Result<VerticalDecomposition, DecomposeError> {
    let graph = slab_graph(poly);
    let m = graph.slabs.len();
    if graph.adjacency.len() + 1 != m {
        return Err(DecomposeError::NotPathPolygon(format!(
            "{} adjacencies among {m} slabs",
            graph.adjacency.len()
        )));
    }
    const NONE: usize = usize::MAX;
    let mut nbr = vec![[NONE; 2]; m];
    for &(a, b) in &graph.adjacency {
        for (s, t) in [(a, b), (b, a)] {
            let slot = nbr[s].iter_mut().find(|v| **v == NONE).ok_or_else(|| {
                DecomposeError::NotPathPolygon(format!(
                    "slab {} has more than two neighbours",
                    graph.slabs[s].rect
                ))
            })?;
            *slot = t;
        }
    }
    let start = (0..m)
        .filter(|&i| nbr[i][1] == NONE)
        .min_by_key(|&i| graph.slabs[i].rect.lo)
        .ok_or_else(|| DecomposeError::NotPathPolygon("no end slab".into()))?;

    let mut order = Vec::with_capacity(m);
    let (mut prev, mut cur) = (NONE, start);
    while cur != NONE {
        order.push(cur);
        let next = if nbr[cur][0] != prev {
            nbr[cur][0]
        } else {
            nbr[cur][1]
        };
        prev = cur;
        cur = next;
        if order.len() > m {
            break;
        }
    }
    if order.len() != m {
        return Err(DecomposeError::NotPathPolygon(format!(
            "dual graph walk reached {} of {m} slabs",
            order.len()
        )));
    }

    let slabs: Vec<Slab> = order.iter().map(|&i| graph.slabs[i]).collect();
    let seams = slabs
        .windows(2)
        .map(|w| {
            let (r, s) = (w[0].rect, w[1].rect);
            let x = if r.hi.x == s.lo.x { r.hi.x } else { r.lo.x };
            Seam {
                x,
                y_lo: r.lo.y.max(s.lo.y),
                y_hi: r.hi.y.min(s.hi.y),
            }
        })
        .collect();
    Ok(VerticalDecomposition { slabs, seams })
}

/// Whether the dual graph of the vertical decomposition is a simple path.
pub fn is_path(poly: &OrthoPolygon) -> bool {
    vertical_decompose(poly).is_ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn rectangle_is_one_slab() {
        let vd = vertical_decompose(&fixtures::rectangle()).unwrap();
        assert_eq!(vd.len(), 1);
        assert!(vd.seams.is_empty());
    }

    #[test]
    fn l_shape_slabs() {
        let vd = vertical_decompose(&fixtures::l_shape()).unwrap();
        let rects: Vec<AxisRect> = vd.slabs.iter().map(|s| s.rect).collect();
        assert_eq!(
            rects,
            vec![
                AxisRect::from_coords(0, 0, 2, 2),
                AxisRect::from_coords(2, 0, 4, 4)
            ]
        );
        assert_eq!(
            vd.seams,
            vec![Seam {
                x: 2,
                y_lo: 0,
                y_hi: 2
            }]
        );
    }

    #[test]
    fn comb_has_five_slabs() {
        let poly = fixtures::comb();
        let vd = vertical_decompose(&poly).unwrap();
        assert_eq!(vd.len(), (poly.len() - 2) / 2);
        let breaks: Vec<Coord> = vd.seams.iter().map(|s| s.x).collect();
        assert_eq!(breaks, vec![2, 4, 6, 8]);
        let heights: Vec<Coord> = vd.slabs.iter().map(Slab::height).collect();
        assert_eq!(heights, vec![4, 2, 4, 2, 4]);
    }

    #[test]
    fn staggered_c_winds() {
        let vd = vertical_decompose(&fixtures::staggered_c()).unwrap();
        let rects: Vec<AxisRect> = vd.slabs.iter().map(|s| s.rect).collect();
        assert_eq!(
            rects,
            vec![
                AxisRect::from_coords(2, 0, 6, 2),
                AxisRect::from_coords(0, 0, 2, 6),
                AxisRect::from_coords(2, 4, 5, 6),
            ]
        );
        let seam_x: Vec<Coord> = vd.seams.iter().map(|s| s.x).collect();
        assert_eq!(seam_x, vec![2, 2]);
    }

    #[test]
    fn three_armed_polygon_is_not_a_path() {
        let poly = fixtures::three_arms();
        let graph = slab_graph(&poly);
        assert_eq!(graph.slabs.len(), 4);
        assert_eq!(graph.degrees().iter().max(), Some(&3));
        assert!(!is_path(&poly));
        let err = vertical_decompose(&poly).unwrap_err();
        assert!(err.to_string().starts_with("NotPathPolygon"));
    }

    #[test]
    fn owner_edges_contain_slab_sides() {
        for poly in [
            fixtures::comb(),
            fixtures::staggered_c(),
            fixtures::zigzag(),
        ] {
            let vd = vertical_decompose(&poly).unwrap();
            for s in &vd.slabs {
                let up = poly.edge(s.upper_edge).bounds();
                let low = poly.edge(s.lower_edge).bounds();
                assert!(up.contains(&s.upper_segment()), "{up} vs {}", s.rect);
                assert!(low.contains(&s.lower_segment()), "{low} vs {}", s.rect);
            }
        }
    }
}
