//! Deterministic SVG drawings of polygons, decompositions and guards.
//!
//! Output is drawn in polygon coordinates with the y-axis flipped by a
//! group transform. Element classes: `polygon`, `seam`, `corridor`,
//! `position`, `guard`.

use std::fmt::Write as _;

use pathguard::balanced::BalancedSplit;
use pathguard::format::format_half;
use pathguard::geom::{AxisRect, DoubledPoint};
use pathguard::{GuardSolution, OrthoPolygon, VerticalDecomposition};

#[derive(Default)]
pub struct Overlay<'a> {
    pub decomposition: Option<(&'a VerticalDecomposition, &'a BalancedSplit)>,
    pub solution: Option<&'a GuardSolution>,
    pub guards: &'a [DoubledPoint],
}

const STYLE: &str = ".polygon{fill:#f4f4f4;stroke:#222}\
.seam{stroke:#888;stroke-dasharray:4 3}\
.corridor{fill:#9bc4e2;fill-opacity:0.5;stroke:none}\
.position{fill:none;stroke:#c0392b;stroke-width:2}\
.guard{fill:#c0392b}";

fn rect_element(out: &mut String, class: &str, r: &AxisRect) {
    writeln!(
        out,
        r#"<rect class="{class}" x="{}" y="{}" width="{}" height="{}" vector-effect="non-scaling-stroke"/>"#,
        r.lo.x,
        r.lo.y,
        r.width(),
        r.height()
    )
    .unwrap();
}

pub fn render_svg(poly: &OrthoPolygon, overlay: &Overlay) -> String {
    let bb = poly.bounding_box();
    let span = bb.width().max(bb.height()).max(1);
    let pad = (span / 20).max(1);
    let radius = format_half((span / 40).max(1));
    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{} {} {} {}">"#,
        bb.lo.x - pad,
        -bb.hi.y - pad,
        bb.width() + 2 * pad,
        bb.height() + 2 * pad
    )
    .unwrap();
    writeln!(out, "<style>{STYLE}</style>").unwrap();
    out.push_str("<g transform=\"scale(1 -1)\">\n");

    let mut d = String::new();
    for (k, v) in poly.vertices().iter().enumerate() {
        let cmd = if k == 0 { 'M' } else { 'L' };
        write!(d, "{cmd}{} {} ", v.x, v.y).unwrap();
    }
    d.push('Z');
    writeln!(
        out,
        r#"<path class="polygon" d="{d}" vector-effect="non-scaling-stroke"/>"#
    )
    .unwrap();

    if let Some((vd, split)) = overlay.decomposition {
        for part in &split.parts {
            rect_element(&mut out, "corridor", &part.corridor);
        }
        for s in &vd.seams {
            writeln!(
                out,
                r#"<line class="seam" x1="{}" y1="{}" x2="{}" y2="{}" vector-effect="non-scaling-stroke"/>"#,
                s.x, s.y_lo, s.x, s.y_hi
            )
            .unwrap();
        }
    }

    let mut guards: Vec<DoubledPoint> = overlay.guards.to_vec();
    if let Some(sol) = overlay.solution {
        for pos in sol.positions() {
            rect_element(&mut out, "position", &pos.rect);
        }
        guards.extend(&sol.guards);
    }
    for g in guards {
        writeln!(
            out,
            r#"<circle class="guard" cx="{}" cy="{}" r="{radius}"/>"#,
            format_half(g.x2),
            format_half(g.y2)
        )
        .unwrap();
    }
    out.push_str("</g>\n</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use pathguard::fixtures;

    #[test]
    fn rectangle_has_one_path() {
        let svg = render_svg(&fixtures::rectangle(), &Overlay::default());
        assert_eq!(svg.matches("<path").count(), 1);
        assert!(svg.contains(r#"d="M0 0 L4 0 L4 2 L0 2 Z""#));
    }

    #[test]
    fn rendering_is_deterministic() {
        let comb = fixtures::comb();
        let sol = pathguard::guard_path_polygon(&comb).unwrap();
        let overlay = Overlay {
            solution: Some(&sol),
            ..Overlay::default()
        };
        let a = render_svg(&comb, &overlay);
        assert_eq!(a, render_svg(&comb, &overlay));
        assert_eq!(a.matches(r#"class="guard""#).count(), 3);
    }
}
