//! r-visibility queries on a pixel grid.
//!
//! A point `g` sees a whole pixel iff the bounding box of `g` and the pixel
//! lies in the polygon. Inside one fine-lattice element every point sees
//! exactly the same pixels, which makes pixel-level coverage exact.

use thiserror::Error;

use crate::geom::{DoubledPoint, Point};
use crate::pixel::{PixelGrid, PixelId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VisibilityError {
    #[error("PointOutside: {0} is not in the polygon")]
    PointOutside(DoubledPoint),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VisibilityRegion {
    pub guard: DoubledPoint,
    /// Sorted ids of pixels entirely visible from the guard.
    pub covered_pixels: Vec<PixelId>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coverage {
    pub uncovered: Vec<PixelId>,
}

impl Coverage {
    pub fn is_complete(&self) -> bool {
        self.uncovered.is_empty()
    }
}

fn located(grid: &PixelGrid, p: DoubledPoint) -> Result<(usize, usize), VisibilityError> {
    grid.fine_index(p)
        .filter(|&(i, j)| grid.fine_inside(i, j))
        .ok_or(VisibilityError::PointOutside(p))
}

/// Whether the rectangle spanned by `p` and `q` lies in the polygon.
pub fn r_visible2(
    grid: &PixelGrid,
    p: DoubledPoint,
    q: DoubledPoint,
) -> Result<bool, VisibilityError> {
    let (pi, pj) = located(grid, p)?;
    let (qi, qj) = located(grid, q)?;
    Ok(grid.fine_box_inside(pi.min(qi), pi.max(qi), pj.min(qj), pj.max(qj)))
}

pub fn r_visible(grid: &PixelGrid, p: Point, q: Point) -> Result<bool, VisibilityError> {
    r_visible2(grid, p.doubled(), q.doubled())
}

/// Whether a point at lattice element `(gi, gj)` sees all of pixel `id`.
pub fn sees_pixel(grid: &PixelGrid, gi: usize, gj: usize, id: PixelId) -> bool {
    let (i0, i1, j0, j1) = grid.pixel_fine_range(id);
    grid.fine_box_inside(gi.min(i0), gi.max(i1), gj.min(j0), gj.max(j1))
}

pub fn visibility_region(
    grid: &PixelGrid,
    g: DoubledPoint,
) -> Result<VisibilityRegion, VisibilityError> {
    let (gi, gj) = located(grid, g)?;
    let covered_pixels = (0..grid.len())
        .filter(|&id| sees_pixel(grid, gi, gj, id))
        .collect();
    Ok(VisibilityRegion {
        guard: g,
        covered_pixels,
    })
}

/// Pixels not entirely seen by any guard. Guards outside the polygon see
/// nothing.
pub fn coverage_check(grid: &PixelGrid, guards: &[DoubledPoint]) -> Coverage {
    let located: Vec<(usize, usize)> = guards
        .iter()
        .filter_map(|&g| located(grid, g).ok())
        .collect();
    let uncovered = (0..grid.len())
        .filter(|&id| !located.iter().any(|&(gi, gj)| sees_pixel(grid, gi, gj, id)))
        .collect();
    Coverage { uncovered }
}

/// Some point that sees the whole polygon, if one exists.
pub fn kernel_point(grid: &PixelGrid) -> Option<DoubledPoint> {
    let (w, h) = grid.fine_dims();
    // Intersect per-pixel visibility: a lattice element stays a candidate
    // only while it sees every pixel checked so far.
    let mut candidates: Vec<(usize, usize)> = (0..h)
        .flat_map(|j| (0..w).map(move |i| (i, j)))
        .filter(|&(i, j)| grid.fine_inside(i, j))
        .collect();
    for id in 0..grid.len() {
        candidates.retain(|&(i, j)| sees_pixel(grid, i, j, id));
        if candidates.is_empty() {
            return None;
        }
    }
    candidates.first().map(|&(i, j)| grid.fine_point(i, j))
}

/// Whether one guard suffices for the whole polygon.
pub fn is_rstar(grid: &PixelGrid) -> bool {
    kernel_point(grid).is_some()
}

/// The leftmost and rightmost vertical edges are joined by a horizontal
/// segment inside the polygon, and the lowest and highest horizontal edges
/// by a vertical one. Sufficient for an orthoconvex polygon to be an r-star.
/// Lattice index 0 and the last index on each axis are exactly the extreme
/// edges' lines.
pub fn extremes_weakly_visible(grid: &PixelGrid) -> bool {
    let (w, h) = grid.fine_dims();
    let horizontal = (0..h).any(|j| grid.fine_box_inside(0, w - 1, j, j));
    let vertical = (0..w).any(|i| grid.fine_box_inside(i, i, 0, h - 1));
    horizontal && vertical
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::geom::AxisRect;
    use crate::pixel::pixel_decompose;

    #[test]
    fn rectangle_points_see_each_other() {
        let g = pixel_decompose(&fixtures::rectangle());
        assert!(r_visible(&g, Point::new(0, 0), Point::new(4, 2)).unwrap());
        assert!(r_visible(&g, Point::new(1, 1), Point::new(1, 1)).unwrap());
    }

    #[test]
    fn l_shape_notch_blocks() {
        let g = pixel_decompose(&fixtures::l_shape());
        assert!(!r_visible(&g, Point::new(1, 1), Point::new(3, 3)).unwrap());
        assert!(r_visible(&g, Point::new(3, 1), Point::new(3, 3)).unwrap());
        assert_eq!(
            r_visible(&g, Point::new(1, 3), Point::new(3, 3)),
            Err(VisibilityError::PointOutside(DoubledPoint::new(2, 6)))
        );
    }

    #[test]
    fn comb_region_from_lower_left() {
        let g = pixel_decompose(&fixtures::comb());
        let region = visibility_region(&g, DoubledPoint::new(2, 2)).unwrap();
        let seen: Vec<AxisRect> = region
            .covered_pixels
            .iter()
            .map(|&id| g.pixel(id).rect)
            .collect();
        assert_eq!(seen.len(), 6);
        for col in 0..5 {
            let x = 2 * col;
            assert!(seen.contains(&AxisRect::from_coords(x, 0, x + 2, 2)));
        }
        assert!(seen.contains(&AxisRect::from_coords(0, 2, 2, 4)));
        assert!(!seen.contains(&AxisRect::from_coords(4, 2, 6, 4)));
        assert!(!seen.contains(&AxisRect::from_coords(8, 2, 10, 4)));
    }

    #[test]
    fn l_shape_kernel_point_sees_all() {
        let g = pixel_decompose(&fixtures::l_shape());
        assert_eq!(
            visibility_region(&g, DoubledPoint::new(6, 2))
                .unwrap()
                .covered_pixels
                .len(),
            3
        );
        assert!(is_rstar(&g));
    }

    #[test]
    fn comb_coverage() {
        let comb = fixtures::comb();
        let g = pixel_decompose(&comb);
        let guards = [
            DoubledPoint::new(2, 2),
            DoubledPoint::new(10, 2),
            DoubledPoint::new(18, 2),
        ];
        assert!(coverage_check(&g, &guards).is_complete());
        let partial = coverage_check(&g, &guards[..2]);
        assert!(!partial.is_complete());
        let rects: Vec<AxisRect> = partial
            .uncovered
            .iter()
            .map(|&id| g.pixel(id).rect)
            .collect();
        assert!(rects.contains(&AxisRect::from_coords(8, 2, 10, 4)));
        assert!(!is_rstar(&g));
    }

    #[test]
    fn rstar_cases() {
        assert!(is_rstar(&pixel_decompose(&fixtures::rectangle())));
        let r = fixtures::rectangle();
        assert!(coverage_check(&pixel_decompose(&r), &[DoubledPoint::new(4, 2)]).is_complete());
        assert!(extremes_weakly_visible(&pixel_decompose(&r)));
    }
}
