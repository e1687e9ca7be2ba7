//! Pixel grid: the polygon cut along every vertex coordinate, plus an exact
//! containment oracle for closed rectangles.
//!
//! Containment runs on a "fine lattice" that indexes grid lines (even
//! indices) and the open intervals between them (odd indices) on each
//! axis. Every element of the lattice is either wholly inside the closed
//! polygon or wholly outside it, so a closed rectangle is contained iff
//! every lattice element it meets is inside. A 2D prefix sum makes that a
//! constant-time query.

use crate::geom::{AxisRect, Coord, DoubledPoint, OrthoPolygon, Point};

pub type PixelId = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Pixel {
    pub rect: AxisRect,
    pub col: usize,
    pub row: usize,
}

#[derive(Clone, Debug)]
pub struct PixelGrid {
    xs2: Vec<Coord>,
    ys2: Vec<Coord>,
    cell_pixel: Vec<Option<PixelId>>,
    pixels: Vec<Pixel>,
    fine_w: usize,
    fine_h: usize,
    /// Prefix sums of lattice elements lying outside the polygon.
    outside: Vec<u32>,
    scale: Coord,
}

/// Pixel grid induced by all vertex coordinates of `poly`.
pub fn pixel_decompose(poly: &OrthoPolygon) -> PixelGrid {
    PixelGrid::build(poly, 1)
}

/// Pixel grid of `poly` scaled by `factor`, with every pixel split into
/// `factor x factor` equal sub-pixels. All coordinates of the returned grid
/// are in scaled units.
pub fn pixel_decompose_refined(poly: &OrthoPolygon, factor: usize) -> PixelGrid {
    assert!(factor >= 1);
    PixelGrid::build(poly, factor as Coord)
}

fn subdivide(lines: &[Coord], factor: Coord) -> Vec<Coord> {
    let mut out = Vec::with_capacity(lines.len() * factor as usize);
    for w in lines.windows(2) {
        let (a, b) = (w[0] * factor, w[1] * factor);
        for t in 0..factor {
            out.push(a + t * (b - a) / factor);
        }
    }
    out.push(lines[lines.len() - 1] * factor);
    out
}

impl PixelGrid {
    fn build(poly: &OrthoPolygon, factor: Coord) -> PixelGrid {
        let mut xs: Vec<Coord> = poly.vertices().iter().map(|p| p.x).collect();
        let mut ys: Vec<Coord> = poly.vertices().iter().map(|p| p.y).collect();
        xs.sort_unstable();
        xs.dedup();
        ys.sort_unstable();
        ys.dedup();
        let xs = subdivide(&xs, factor);
        let ys = subdivide(&ys, factor);
        let (cols, rows) = (xs.len() - 1, ys.len() - 1);

        // Horizontal edges as (x0, x1, y) in scaled units.
        let horizontal: Vec<(Coord, Coord, Coord)> = poly
            .horizontal_edges()
            .map(|e| {
                let r = e.bounds();
                (r.lo.x * factor, r.hi.x * factor, r.lo.y * factor)
            })
            .collect();

        let mut cell_pixel = vec![None; cols * rows];
        let mut pixels = Vec::new();
        let mut crossing: Vec<Coord> = Vec::new();
        for col in 0..cols {
            let (x0, x1) = (xs[col], xs[col + 1]);
            crossing.clear();
            crossing.extend(
                horizontal
                    .iter()
                    .filter(|h| h.0 <= x0 && x1 <= h.1)
                    .map(|h| h.2),
            );
            crossing.sort_unstable();
            let mut below = 0;
            for row in 0..rows {
                let (y0, y1) = (ys[row], ys[row + 1]);
                while below < crossing.len() && crossing[below] <= y0 {
                    below += 1;
                }
                if below % 2 == 1 {
                    cell_pixel[col + row * cols] = Some(pixels.len());
                    pixels.push(Pixel {
                        rect: AxisRect::from_coords(x0, y0, x1, y1),
                        col,
                        row,
                    });
                }
            }
        }

        let fine_w = 2 * xs.len() - 1;
        let fine_h = 2 * ys.len() - 1;
        let mut outside = vec![0u32; (fine_w + 1) * (fine_h + 1)];
        let stride = fine_w + 1;
        let inside_cell = |c: isize, r: isize| {
            c >= 0
                && r >= 0
                && (c as usize) < cols
                && (r as usize) < rows
                && cell_pixel[c as usize + r as usize * cols].is_some()
        };
        for fj in 0..fine_h {
            let row_span: &[isize] = &if fj % 2 == 1 {
                [(fj / 2) as isize, (fj / 2) as isize]
            } else {
                [fj as isize / 2 - 1, fj as isize / 2]
            };
            for fi in 0..fine_w {
                let col_span: &[isize] = &if fi % 2 == 1 {
                    [(fi / 2) as isize, (fi / 2) as isize]
                } else {
                    [fi as isize / 2 - 1, fi as isize / 2]
                };
                let inside = col_span
                    .iter()
                    .any(|&c| row_span.iter().any(|&r| inside_cell(c, r)));
                let here = u32::from(!inside);
                outside[(fi + 1) + (fj + 1) * stride] =
                    here + outside[fi + (fj + 1) * stride] + outside[(fi + 1) + fj * stride]
                        - outside[fi + fj * stride];
            }
        }

        PixelGrid {
            xs2: xs.iter().map(|x| 2 * x).collect(),
            ys2: ys.iter().map(|y| 2 * y).collect(),
            cell_pixel,
            pixels,
            fine_w,
            fine_h,
            outside,
            scale: factor,
        }
    }

    pub fn len(&self) -> usize {
        self.pixels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pixels.is_empty()
    }

    pub fn pixels(&self) -> &[Pixel] {
        &self.pixels
    }

    pub fn pixel(&self, id: PixelId) -> &Pixel {
        &self.pixels[id]
    }

    /// Factor by which coordinates of this grid exceed the polygon's.
    pub fn scale(&self) -> Coord {
        self.scale
    }

    fn cols(&self) -> usize {
        self.xs2.len() - 1
    }

    fn rows(&self) -> usize {
        self.ys2.len() - 1
    }

    fn cell(&self, col: isize, row: isize) -> Option<PixelId> {
        if col < 0 || row < 0 || col as usize >= self.cols() || row as usize >= self.rows() {
            return None;
        }
        self.cell_pixel[col as usize + row as usize * self.cols()]
    }

    /// Pixels sharing a side of positive length with `id`.
    pub fn neighbors(&self, id: PixelId) -> impl Iterator<Item = PixelId> + '_ {
        let p = self.pixels[id];
        let (c, r) = (p.col as isize, p.row as isize);
        [(c - 1, r), (c + 1, r), (c, r - 1), (c, r + 1)]
            .into_iter()
            .filter_map(move |(c, r)| self.cell(c, r))
    }

    fn fine_coord(lines: &[Coord], v: Coord) -> Option<usize> {
        match lines.binary_search(&v) {
            Ok(i) => Some(2 * i),
            Err(i) if i == 0 || i == lines.len() => None,
            Err(i) => Some(2 * i - 1),
        }
    }

    /// Fine-lattice element containing a doubled point, if it lies inside
    /// the grid's bounding box.
    pub fn fine_index(&self, p: DoubledPoint) -> Option<(usize, usize)> {
        Some((
            Self::fine_coord(&self.xs2, p.x2)?,
            Self::fine_coord(&self.ys2, p.y2)?,
        ))
    }

    pub fn fine_dims(&self) -> (usize, usize) {
        (self.fine_w, self.fine_h)
    }

    /// Representative point (doubled) of a lattice element: the line value
    /// for even indices, the midpoint of the interval for odd ones.
    pub fn fine_point(&self, fi: usize, fj: usize) -> DoubledPoint {
        let pick = |lines: &[Coord], f: usize| {
            if f.is_multiple_of(2) {
                lines[f / 2]
            } else {
                (lines[f / 2] + lines[f / 2 + 1]) / 2
            }
        };
        DoubledPoint::new(pick(&self.xs2, fi), pick(&self.ys2, fj))
    }

    /// Inclusive lattice range of a pixel's closed rectangle.
    pub fn pixel_fine_range(&self, id: PixelId) -> (usize, usize, usize, usize) {
        let p = &self.pixels[id];
        (2 * p.col, 2 * p.col + 2, 2 * p.row, 2 * p.row + 2)
    }

    /// True iff every lattice element in the inclusive index box is inside.
    pub fn fine_box_inside(&self, i0: usize, i1: usize, j0: usize, j1: usize) -> bool {
        debug_assert!(i0 <= i1 && j0 <= j1 && i1 < self.fine_w && j1 < self.fine_h);
        let s = self.fine_w + 1;
        let at = |i: usize, j: usize| self.outside[i + j * s] as i64;
        at(i1 + 1, j1 + 1) - at(i0, j1 + 1) - at(i1 + 1, j0) + at(i0, j0) == 0
    }

    pub fn fine_inside(&self, fi: usize, fj: usize) -> bool {
        self.fine_box_inside(fi, fi, fj, fj)
    }

    /// Closed containment of a rectangle given by doubled corners.
    pub fn contains_rect2(&self, lo: DoubledPoint, hi: DoubledPoint) -> bool {
        match (self.fine_index(lo), self.fine_index(hi)) {
            (Some((i0, j0)), Some((i1, j1))) => self.fine_box_inside(i0, i1, j0, j1),
            _ => false,
        }
    }

    /// Closed containment `r ⊆ P` for a rectangle in grid units.
    pub fn contains_rect(&self, r: &AxisRect) -> bool {
        self.contains_rect2(r.lo.doubled(), r.hi.doubled())
    }

    pub fn contains_point2(&self, p: DoubledPoint) -> bool {
        self.contains_rect2(p, p)
    }

    pub fn contains_point(&self, p: Point) -> bool {
        self.contains_point2(p.doubled())
    }

    /// A pixel whose closed rectangle contains `p`.
    pub fn locate(&self, p: DoubledPoint) -> Option<PixelId> {
        let (fi, fj) = self.fine_index(p)?;
        let cols: &[isize] = &if fi % 2 == 1 {
            [(fi / 2) as isize, (fi / 2) as isize]
        } else {
            [fi as isize / 2 - 1, fi as isize / 2]
        };
        let rows: &[isize] = &if fj % 2 == 1 {
            [(fj / 2) as isize, (fj / 2) as isize]
        } else {
            [fj as isize / 2 - 1, fj as isize / 2]
        };
        cols.iter()
            .flat_map(|&c| rows.iter().map(move |&r| (c, r)))
            .find_map(|(c, r)| self.cell(c, r))
    }

    pub fn total_area(&self) -> i128 {
        self.pixels.iter().map(|p| p.rect.area()).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn rectangle_is_one_pixel() {
        let g = pixel_decompose(&fixtures::rectangle());
        assert_eq!(g.len(), 1);
        assert_eq!(g.pixel(0).rect, AxisRect::from_coords(0, 0, 4, 2));
    }

    #[test]
    fn l_shape_pixels() {
        let g = pixel_decompose(&fixtures::l_shape());
        let mut rects: Vec<AxisRect> = g.pixels().iter().map(|p| p.rect).collect();
        rects.sort_by_key(|r| (r.lo.x, r.lo.y));
        assert_eq!(
            rects,
            vec![
                AxisRect::from_coords(0, 0, 2, 2),
                AxisRect::from_coords(2, 0, 4, 2),
                AxisRect::from_coords(2, 2, 4, 4),
            ]
        );
    }

    #[test]
    fn comb_pixels_by_column() {
        let g = pixel_decompose(&fixtures::comb());
        assert_eq!(g.len(), 8);
        let mut per_col = [0; 5];
        for p in g.pixels() {
            per_col[p.col] += 1;
        }
        assert_eq!(per_col, [2, 1, 2, 1, 2]);
        assert_eq!(g.total_area(), fixtures::comb().area());
    }

    #[test]
    fn l_shape_containment() {
        let g = pixel_decompose(&fixtures::l_shape());
        assert!(g.contains_rect(&AxisRect::from_coords(0, 0, 3, 1)));
        assert!(!g.contains_rect(&AxisRect::from_coords(1, 1, 3, 3)));
        assert!(g.contains_rect(&AxisRect::from_coords(1, 1, 1, 1)));
        // Boundary segments and corners count as inside.
        assert!(g.contains_rect(&AxisRect::from_coords(0, 2, 2, 2)));
        assert!(g.contains_rect(&AxisRect::from_coords(2, 2, 2, 4)));
        assert!(g.contains_rect(&AxisRect::from_coords(0, 2, 4, 2)));
        assert!(!g.contains_rect(&AxisRect::from_coords(0, 2, 2, 3)));
        assert!(!g.contains_rect(&AxisRect::from_coords(-1, 0, 1, 1)));
        assert!(!g.contains_point(Point::new(1, 3)));
    }

    #[test]
    fn adjacency_and_location() {
        let g = pixel_decompose(&fixtures::l_shape());
        let corner = g.locate(DoubledPoint::new(6, 2)).unwrap();
        assert_eq!(g.pixel(corner).rect, AxisRect::from_coords(2, 0, 4, 2));
        assert_eq!(g.neighbors(corner).count(), 2);
        assert!(g.locate(DoubledPoint::new(2, 6)).is_none());
        assert!(g.locate(DoubledPoint::new(4, 4)).is_some());
    }

    #[test]
    fn refined_grid_splits_every_pixel() {
        let comb = fixtures::comb();
        let g = pixel_decompose_refined(&comb, 2);
        assert_eq!(g.len(), 8 * 4);
        assert_eq!(g.scale(), 2);
        assert_eq!(g.total_area(), comb.area() * 4);
    }
}
