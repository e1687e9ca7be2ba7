//! Plain-text polygon and guard files.
//!
//! A polygon file holds the vertex count on the first line followed by one
//! `x y` line per vertex. A guard file has the same layout, but coordinates
//! may be half-integers written with a `.5` suffix. Lines starting with `#`
//! are ignored.

use std::fmt::Write as _;

use thiserror::Error;

use crate::geom::{Coord, DoubledPoint, Point};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("Parse: line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("Parse: expected {expected} points, found {found}")]
    Count { expected: usize, found: usize },
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_pairs<T>(
    text: &str,
    coord: impl Fn(&str) -> Option<T>,
) -> Result<Vec<(T, T)>, FormatError> {
    let mut lines = content_lines(text);
    let (line, head) = lines.next().ok_or(FormatError::Parse {
        line: 1,
        msg: "missing vertex count".into(),
    })?;
    let expected: usize = head.parse().map_err(|_| FormatError::Parse {
        line,
        msg: format!("bad count {head:?}"),
    })?;
    let mut out = Vec::with_capacity(expected);
    for (line, l) in lines {
        let mut it = l.split_whitespace();
        let (Some(a), Some(b), None) = (it.next(), it.next(), it.next()) else {
            return Err(FormatError::Parse {
                line,
                msg: format!("expected two coordinates, got {l:?}"),
            });
        };
        let parsed = coord(a).zip(coord(b)).ok_or_else(|| FormatError::Parse {
            line,
            msg: format!("bad coordinates {l:?}"),
        })?;
        out.push(parsed);
    }
    if out.len() != expected {
        return Err(FormatError::Count {
            expected,
            found: out.len(),
        });
    }
    Ok(out)
}

pub fn parse_polygon(text: &str) -> Result<Vec<Point>, FormatError> {
    let pairs = parse_pairs(text, |s| s.parse::<Coord>().ok())?;
    Ok(pairs.into_iter().map(|(x, y)| Point::new(x, y)).collect())
}

pub fn write_polygon(points: &[Point]) -> String {
    let mut s = String::with_capacity(points.len() * 16);
    writeln!(s, "{}", points.len()).unwrap();
    for p in points {
        writeln!(s, "{} {}", p.x, p.y).unwrap();
    }
    s
}

/// Doubled value of an integer or `.5` half-integer.
fn parse_half(s: &str) -> Option<Coord> {
    match s.split_once('.') {
        None => s.parse::<Coord>().ok()?.checked_mul(2),
        Some((whole, "5")) => {
            let w = whole.parse::<Coord>().ok()?.checked_mul(2)?;
            if whole.starts_with('-') {
                Some(w - 1)
            } else {
                Some(w + 1)
            }
        }
        Some((whole, "0")) => whole.parse::<Coord>().ok()?.checked_mul(2),
        Some(_) => None,
    }
}

pub fn format_half(v2: Coord) -> String {
    let whole = v2.div_euclid(2);
    if v2.rem_euclid(2) == 0 {
        whole.to_string()
    } else if v2 < 0 {
        // -3 / 2 = -1.5
        format!("-{}.5", -(v2 + 1) / 2)
    } else {
        format!("{whole}.5")
    }
}

pub fn parse_guards(text: &str) -> Result<Vec<DoubledPoint>, FormatError> {
    let pairs = parse_pairs(text, parse_half)?;
    Ok(pairs
        .into_iter()
        .map(|(x2, y2)| DoubledPoint::new(x2, y2))
        .collect())
}

pub fn write_guards(guards: &[DoubledPoint]) -> String {
    let mut s = String::new();
    writeln!(s, "{}", guards.len()).unwrap();
    for g in guards {
        writeln!(s, "{} {}", format_half(g.x2), format_half(g.y2)).unwrap();
    }
    s
}
