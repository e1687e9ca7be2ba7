//! Small named polygons shared by tests, examples and the CLI.

use crate::geom::{validate_polygon, Coord, OrthoPolygon, Point};

fn poly(raw: &[(Coord, Coord)]) -> OrthoPolygon {
    let pts: Vec<Point> = raw.iter().map(|&(x, y)| Point::new(x, y)).collect();
    validate_polygon(&pts).expect("fixture must be valid")
}

pub fn rectangle() -> OrthoPolygon {
    poly(&[(0, 0), (4, 0), (4, 2), (0, 2)])
}

pub fn l_shape() -> OrthoPolygon {
    poly(&[(0, 0), (4, 0), (4, 4), (2, 4), (2, 2), (0, 2)])
}

/// Three teeth on top, one long tooth at the bottom.
pub fn comb() -> OrthoPolygon {
    poly(&[
        (0, 0),
        (10, 0),
        (10, 4),
        (8, 4),
        (8, 2),
        (6, 2),
        (6, 4),
        (4, 4),
        (4, 2),
        (2, 2),
        (2, 4),
        (0, 4),
    ])
}

/// Slabs [0,2]x[4,6], [2,4]x[0,6], [4,6]x[0,2].
pub fn zigzag() -> OrthoPolygon {
    poly(&[
        (0, 4),
        (2, 4),
        (2, 0),
        (6, 0),
        (6, 2),
        (4, 2),
        (4, 6),
        (0, 6),
    ])
}

/// Path polygon whose slab order is not monotone in x.
pub fn staggered_c() -> OrthoPolygon {
    poly(&[
        (0, 0),
        (6, 0),
        (6, 2),
        (2, 2),
        (2, 4),
        (5, 4),
        (5, 6),
        (0, 6),
    ])
}

/// A central slab with one arm on the left and two on the right, so its
/// dual graph is not a path.
pub fn three_arms() -> OrthoPolygon {
    poly(&[
        (0, 0),
        (8, 0),
        (8, 3),
        (4, 3),
        (4, 7),
        (6, 7),
        (6, 10),
        (2, 10),
        (2, 4),
        (0, 4),
    ])
}

/// Builds an x-monotone polygon from column boundaries `xs` (one more than
/// the number of columns) and per-column `(bottom, top)` pairs. Consecutive
/// columns must differ in exactly one of bottom/top.
pub fn columns(xs: &[Coord], spans: &[(Coord, Coord)]) -> OrthoPolygon {
    validate_polygon(&column_vertices(xs, spans)).expect("column polygon must be valid")
}

pub(crate) fn column_vertices(xs: &[Coord], spans: &[(Coord, Coord)]) -> Vec<Point> {
    assert_eq!(xs.len(), spans.len() + 1);
    let m = spans.len();
    let mut out = Vec::with_capacity(2 * m + 2);
    out.push(Point::new(xs[0], spans[0].0));
    for k in 1..m {
        if spans[k].0 != spans[k - 1].0 {
            out.push(Point::new(xs[k], spans[k - 1].0));
            out.push(Point::new(xs[k], spans[k].0));
        }
    }
    out.push(Point::new(xs[m], spans[m - 1].0));
    out.push(Point::new(xs[m], spans[m - 1].1));
    for k in (1..m).rev() {
        if spans[k].1 != spans[k - 1].1 {
            out.push(Point::new(xs[k], spans[k].1));
            out.push(Point::new(xs[k], spans[k - 1].1));
        }
    }
    out.push(Point::new(xs[0], spans[0].1));
    out
}
