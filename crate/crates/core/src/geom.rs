//! Exact integer geometry: points, axis-aligned rectangles and validated
//! orthogonal polygons.
//!
//! Everything in here is integer arithmetic. Guard locations may fall on
//! half-integer coordinates; those are carried as [`DoubledPoint`]s, i.e.
//! points on the lattice scaled by two.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type Coord = i64;

/// Coordinates are limited so that doubled values and pairwise differences
/// never overflow.
pub const MAX_COORD: Coord = 1 << 40;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Point {
    pub x: Coord,
    pub y: Coord,
}

impl Point {
    pub const fn new(x: Coord, y: Coord) -> Self {
        Point { x, y }
    }

    pub fn doubled(self) -> DoubledPoint {
        DoubledPoint {
            x2: 2 * self.x,
            y2: 2 * self.y,
        }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// A point stored at twice its real coordinates, so that rectangle centres
/// stay on the integer lattice.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DoubledPoint {
    pub x2: Coord,
    pub y2: Coord,
}

impl DoubledPoint {
    pub const fn new(x2: Coord, y2: Coord) -> Self {
        DoubledPoint { x2, y2 }
    }

    /// Real coordinates as floats. Only for display and rendering.
    pub fn to_f64(self) -> (f64, f64) {
        (self.x2 as f64 / 2.0, self.y2 as f64 / 2.0)
    }
}

impl fmt::Display for DoubledPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (x, y) = self.to_f64();
        write!(f, "({x}, {y})")
    }
}

/// Closed axis-aligned rectangle. Zero width or height is allowed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AxisRect {
    pub lo: Point,
    pub hi: Point,
}

impl AxisRect {
    /// Builds the rectangle with the given corners. Panics if `lo` is not
    /// below and to the left of `hi`.
    pub fn new(lo: Point, hi: Point) -> Self {
        assert!(lo.x <= hi.x && lo.y <= hi.y, "inverted rectangle {lo} {hi}");
        AxisRect { lo, hi }
    }

    pub fn from_coords(x0: Coord, y0: Coord, x1: Coord, y1: Coord) -> Self {
        AxisRect::new(Point::new(x0, y0), Point::new(x1, y1))
    }

    pub fn width(&self) -> Coord {
        self.hi.x - self.lo.x
    }

    pub fn height(&self) -> Coord {
        self.hi.y - self.lo.y
    }

    pub fn area(&self) -> i128 {
        self.width() as i128 * self.height() as i128
    }

    pub fn is_degenerate(&self) -> bool {
        self.width() == 0 || self.height() == 0
    }

    pub fn contains_point(&self, p: Point) -> bool {
        self.lo.x <= p.x && p.x <= self.hi.x && self.lo.y <= p.y && p.y <= self.hi.y
    }

    pub fn contains_doubled(&self, p: DoubledPoint) -> bool {
        2 * self.lo.x <= p.x2
            && p.x2 <= 2 * self.hi.x
            && 2 * self.lo.y <= p.y2
            && p.y2 <= 2 * self.hi.y
    }

    pub fn contains(&self, other: &AxisRect) -> bool {
        self.contains_point(other.lo) && self.contains_point(other.hi)
    }

    /// Closed intersection, `None` when the rectangles are disjoint.
    pub fn intersection(&self, other: &AxisRect) -> Option<AxisRect> {
        let lo = Point::new(self.lo.x.max(other.lo.x), self.lo.y.max(other.lo.y));
        let hi = Point::new(self.hi.x.min(other.hi.x), self.hi.y.min(other.hi.y));
        (lo.x <= hi.x && lo.y <= hi.y).then_some(AxisRect { lo, hi })
    }

    /// True when the open interiors overlap.
    pub fn interiors_overlap(&self, other: &AxisRect) -> bool {
        self.lo.x.max(other.lo.x) < self.hi.x.min(other.hi.x)
            && self.lo.y.max(other.lo.y) < self.hi.y.min(other.hi.y)
    }

    /// Centre in doubled coordinates.
    pub fn center2(&self) -> DoubledPoint {
        DoubledPoint::new(self.lo.x + self.hi.x, self.lo.y + self.hi.y)
    }
}

impl fmt::Display for AxisRect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{},{}]x[{},{}]",
            self.lo.x, self.hi.x, self.lo.y, self.hi.y
        )
    }
}

/// Smallest axis-aligned rectangle containing both points.
pub fn spanned_rect(p: Point, q: Point) -> AxisRect {
    AxisRect {
        lo: Point::new(p.x.min(q.x), p.y.min(q.y)),
        hi: Point::new(p.x.max(q.x), p.y.max(q.y)),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VertexKind {
    /// Interior angle of a quarter turn.
    Convex,
    /// Interior angle of three quarter turns.
    Reflex,
}

/// Outward normal of an edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Up,
    Down,
    Left,
    Right,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Chain {
    Upper,
    Lower,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EdgeClass {
    /// Both endpoints convex.
    Tooth,
    /// Both endpoints reflex.
    Dent,
    Neither,
}

/// Edge `index` runs from vertex `index` to vertex `index + 1` (cyclically).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Edge {
    pub index: usize,
    pub a: Point,
    pub b: Point,
}

impl Edge {
    pub fn is_horizontal(&self) -> bool {
        self.a.y == self.b.y
    }

    /// Outward normal for a counterclockwise boundary.
    pub fn normal(&self) -> Direction {
        if self.is_horizontal() {
            if self.b.x > self.a.x {
                Direction::Down
            } else {
                Direction::Up
            }
        } else if self.b.y > self.a.y {
            Direction::Right
        } else {
            Direction::Left
        }
    }

    pub fn bounds(&self) -> AxisRect {
        spanned_rect(self.a, self.b)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HorzEdgeClass {
    pub edge: usize,
    pub class: EdgeClass,
    pub chain: Chain,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolygonError {
    #[error("NonOrthogonal: {0}")]
    NonOrthogonal(String),
    #[error("SelfIntersecting: edges {0} and {1} intersect")]
    SelfIntersecting(usize, usize),
    #[error("DuplicateVerticalX: vertical edges {0} and {1} share x = {2}")]
    DuplicateVerticalX(usize, usize, Coord),
    #[error("Degenerate: {0}")]
    Degenerate(String),
}

/// A simple orthogonal polygon in counterclockwise order, starting at its
/// lexicographically smallest vertex, with all vertical edges at distinct
/// x-coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrthoPolygon {
    vertices: Vec<Point>,
    kinds: Vec<VertexKind>,
    /// Vertical edge indices sorted by x.
    vertical_by_x: Vec<usize>,
    reoriented: bool,
}

/// Validates and normalises a raw vertex cycle.
///
/// Clockwise input is reversed and flagged through
/// [`OrthoPolygon::was_reoriented`] rather than rejected.
pub fn validate_polygon(raw: &[Point]) -> Result<OrthoPolygon, PolygonError> {
    let n = raw.len();
    if n < 2 {
        return Err(PolygonError::Degenerate(format!("{n} vertices")));
    }
    for (i, p) in raw.iter().enumerate() {
        if p.x.abs() > MAX_COORD || p.y.abs() > MAX_COORD {
            return Err(PolygonError::Degenerate(format!(
                "vertex {i} {p} exceeds coordinate limit"
            )));
        }
        let q = raw[(i + 1) % n];
        if *p == q {
            return Err(PolygonError::Degenerate(format!(
                "repeated vertex {p} at {i}"
            )));
        }
        if p.x != q.x && p.y != q.y {
            return Err(PolygonError::NonOrthogonal(format!(
                "edge {i} from {p} to {q} is not axis-parallel"
            )));
        }
    }
    for i in 0..n {
        let (p, q, r) = (raw[i], raw[(i + 1) % n], raw[(i + 2) % n]);
        let first_horizontal = p.y == q.y;
        let second_horizontal = q.y == r.y;
        if first_horizontal == second_horizontal {
            let d1 = (q.x - p.x).signum() + (q.y - p.y).signum();
            let d2 = (r.x - q.x).signum() + (r.y - q.y).signum();
            return if d1 == d2 {
                Err(PolygonError::Degenerate(format!("collinear vertex {q}")))
            } else {
                Err(PolygonError::NonOrthogonal(format!(
                    "edges meeting at {q} do not alternate"
                )))
            };
        }
    }
    if n < 4 {
        return Err(PolygonError::Degenerate(format!("{n} vertices")));
    }

    let area2 = signed_area2(raw);
    if area2 == 0 {
        return Err(PolygonError::Degenerate("zero area".into()));
    }
    let reoriented = area2 < 0;
    let mut vertices: Vec<Point> = raw.to_vec();
    if reoriented {
        vertices.reverse();
    }
    let start = (0..n).min_by_key(|&i| vertices[i]).unwrap();
    vertices.rotate_left(start);

    let vertical_by_x = sorted_vertical_edges(&vertices)?;
    check_simple(&vertices, &vertical_by_x)?;

    let kinds = (0..n)
        .map(|i| {
            let prev = vertices[(i + n - 1) % n];
            let cur = vertices[i];
            let next = vertices[(i + 1) % n];
            let cross = (cur.x - prev.x) as i128 * (next.y - cur.y) as i128
                - (cur.y - prev.y) as i128 * (next.x - cur.x) as i128;
            if cross > 0 {
                VertexKind::Convex
            } else {
                VertexKind::Reflex
            }
        })
        .collect::<Vec<_>>();

    let poly = OrthoPolygon {
        vertices,
        kinds,
        vertical_by_x,
        reoriented,
    };
    debug_assert_eq!(poly.reflex_count() * 2 + 4, n);
    Ok(poly)
}

fn signed_area2(vertices: &[Point]) -> i128 {
    let n = vertices.len();
    (0..n)
        .map(|i| {
            let p = vertices[i];
            let q = vertices[(i + 1) % n];
            p.x as i128 * q.y as i128 - q.x as i128 * p.y as i128
        })
        .sum()
}

fn sorted_vertical_edges(vertices: &[Point]) -> Result<Vec<usize>, PolygonError> {
    let n = vertices.len();
    let mut vertical: Vec<usize> = (0..n)
        .filter(|&i| vertices[i].x == vertices[(i + 1) % n].x)
        .collect();
    vertical.sort_unstable_by_key(|&i| vertices[i].x);
    for pair in vertical.windows(2) {
        let x = vertices[pair[0]].x;
        if x == vertices[pair[1]].x {
            return Err(PolygonError::DuplicateVerticalX(pair[0], pair[1], x));
        }
    }
    Ok(vertical)
}

/// Sweep over x. Each vertical edge may only touch the two horizontal edges
/// adjacent to it; with distinct vertical x-coordinates this rules out every
/// other kind of contact as well.
fn check_simple(vertices: &[Point], vertical_by_x: &[usize]) -> Result<(), PolygonError> {
    let n = vertices.len();
    let next = |i: usize| (i + 1) % n;
    let mut horizontal: Vec<(Coord, Coord, Coord, usize)> = (0..n)
        .filter(|&i| vertices[i].y == vertices[next(i)].y)
        .map(|i| {
            let (a, b) = (vertices[i], vertices[next(i)]);
            (a.x.min(b.x), a.x.max(b.x), a.y, i)
        })
        .collect();
    let mut by_end: Vec<(Coord, usize)> = horizontal.iter().map(|h| (h.1, h.3)).collect();
    let ys: Vec<Coord> = vertices.iter().map(|p| p.y).collect();
    horizontal.sort_unstable_by_key(|h| h.0);
    by_end.sort_unstable();

    let mut active: BTreeSet<(Coord, usize)> = BTreeSet::new();
    let (mut ins, mut del) = (0, 0);
    for &v in vertical_by_x {
        let x = vertices[v].x;
        while ins < horizontal.len() && horizontal[ins].0 <= x {
            active.insert((horizontal[ins].2, horizontal[ins].3));
            ins += 1;
        }
        while del < by_end.len() && by_end[del].0 < x {
            let e = by_end[del].1;
            active.remove(&(ys[e], e));
            del += 1;
        }
        let (y0, y1) = {
            let (a, b) = (vertices[v].y, vertices[next(v)].y);
            (a.min(b), a.max(b))
        };
        let before = (v + n - 1) % n;
        let after = next(v);
        for &(_, e) in active.range((y0, 0)..=(y1, usize::MAX)) {
            if e != before && e != after {
                return Err(PolygonError::SelfIntersecting(v.min(e), v.max(e)));
            }
        }
    }
    Ok(())
}

impl OrthoPolygon {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn vertex(&self, i: usize) -> Point {
        self.vertices[i % self.len()]
    }

    pub fn kind(&self, i: usize) -> VertexKind {
        self.kinds[i % self.len()]
    }

    pub fn kinds(&self) -> &[VertexKind] {
        &self.kinds
    }

    /// True when the input was clockwise and has been reversed.
    pub fn was_reoriented(&self) -> bool {
        self.reoriented
    }

    pub fn edge(&self, i: usize) -> Edge {
        let n = self.len();
        Edge {
            index: i % n,
            a: self.vertices[i % n],
            b: self.vertices[(i + 1) % n],
        }
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        (0..self.len()).map(move |i| self.edge(i))
    }

    pub fn horizontal_edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.edges().filter(Edge::is_horizontal)
    }

    pub fn vertical_edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.edges().filter(|e| !e.is_horizontal())
    }

    /// Vertical edge indices in increasing x order.
    pub fn vertical_edges_by_x(&self) -> &[usize] {
        &self.vertical_by_x
    }

    /// Index of the horizontal edge incident to vertex `v`.
    pub fn horizontal_edge_at(&self, v: usize) -> usize {
        let n = self.len();
        if self.edge(v).is_horizontal() {
            v % n
        } else {
            (v + n - 1) % n
        }
    }

    pub fn reflex_count(&self) -> usize {
        self.kinds
            .iter()
            .filter(|k| **k == VertexKind::Reflex)
            .count()
    }

    pub fn convex_count(&self) -> usize {
        self.len() - self.reflex_count()
    }

    pub fn area(&self) -> i128 {
        signed_area2(&self.vertices) / 2
    }

    pub fn bounding_box(&self) -> AxisRect {
        let mut lo = self.vertices[0];
        let mut hi = self.vertices[0];
        for p in &self.vertices {
            lo = Point::new(lo.x.min(p.x), lo.y.min(p.y));
            hi = Point::new(hi.x.max(p.x), hi.y.max(p.y));
        }
        AxisRect::new(lo, hi)
    }

    pub fn edge_class(&self, i: usize) -> EdgeClass {
        match (self.kind(i), self.kind(i + 1)) {
            (VertexKind::Convex, VertexKind::Convex) => EdgeClass::Tooth,
            (VertexKind::Reflex, VertexKind::Reflex) => EdgeClass::Dent,
            _ => EdgeClass::Neither,
        }
    }

    /// No dent edges in any direction.
    pub fn is_orthoconvex(&self) -> bool {
        (0..self.len()).all(|i| self.edge_class(i) != EdgeClass::Dent)
    }

    /// The same polygon with every coordinate multiplied by `factor`.
    pub fn scaled(&self, factor: Coord) -> OrthoPolygon {
        assert!(factor > 0);
        OrthoPolygon {
            vertices: self
                .vertices
                .iter()
                .map(|p| Point::new(p.x * factor, p.y * factor))
                .collect(),
            kinds: self.kinds.clone(),
            vertical_by_x: self.vertical_by_x.clone(),
            reoriented: self.reoriented,
        }
    }
}

/// Labels every horizontal edge as tooth, dent or neither and assigns it to
/// the upper or lower chain by its outward normal.
pub fn classify_horizontal_edges(poly: &OrthoPolygon) -> Vec<HorzEdgeClass> {
    poly.horizontal_edges()
        .map(|e| HorzEdgeClass {
            edge: e.index,
            class: poly.edge_class(e.index),
            chain: if e.normal() == Direction::Up {
                Chain::Upper
            } else {
                Chain::Lower
            },
        })
        .collect()
}
