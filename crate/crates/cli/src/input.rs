use std::fs;
use std::io::{self, Read};

use anyhow::{Context, Result};
use pathguard::format::{parse_guards, parse_polygon};
use pathguard::{validate_polygon, DoubledPoint, OrthoPolygon};

/// Reads `path`, or standard input for `-`.
pub fn read_text(path: &str) -> Result<String> {
    if path == "-" {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .context("reading standard input")?;
        Ok(s)
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {path}"))
    }
}

/// Parses and validates a polygon file. A clockwise input is reversed and
/// reported on standard error.
pub fn load_polygon(path: &str) -> Result<OrthoPolygon> {
    let text = read_text(path)?;
    let points = parse_polygon(&text)?;
    let poly = validate_polygon(&points)?;
    if poly.was_reoriented() {
        eprintln!("warning: ClockwiseFixed: {path} was clockwise and has been reversed");
    }
    Ok(poly)
}

pub fn load_guards(path: &str) -> Result<Vec<DoubledPoint>> {
    Ok(parse_guards(&read_text(path)?)?)
}
