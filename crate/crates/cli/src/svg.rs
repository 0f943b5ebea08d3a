//! Peel diagrams for planar data: every point plus one outline per peel.

use std::fmt::Write;

use morderstats::{PeelResult, PointSet};

const SIZE: f64 = 600.0;
const MARGIN: f64 = 20.0;

/// Vertices of a planar convex region in counterclockwise order.
pub fn polygon_order(vertices: &[Vec<f64>]) -> Vec<[f64; 2]> {
    let n = vertices.len() as f64;
    let cx = vertices.iter().map(|v| v[0]).sum::<f64>() / n;
    let cy = vertices.iter().map(|v| v[1]).sum::<f64>() / n;
    let mut out: Vec<[f64; 2]> = vertices.iter().map(|v| [v[0], v[1]]).collect();
    out.sort_by(|a, b| (a[1] - cy).atan2(a[0] - cx).total_cmp(&(b[1] - cy).atan2(b[0] - cx)));
    out
}

/// Renders `points` and the peels of `result`. The output contains one
/// `<g>` for the points and one per peel; the chosen peel is drawn in red.
pub fn render(points: &PointSet, result: &PeelResult) -> String {
    assert_eq!(points.dim(), 2, "peel diagrams are planar");
    let (mut lo, mut hi) = ([f64::INFINITY; 2], [f64::NEG_INFINITY; 2]);
    for x in points.iter() {
        for d in 0..2 {
            lo[d] = lo[d].min(x[d]);
            hi[d] = hi[d].max(x[d]);
        }
    }
    let span = (hi[0] - lo[0]).max(hi[1] - lo[1]).max(f64::MIN_POSITIVE);
    let scale = (SIZE - 2.0 * MARGIN) / span;
    let map = |x: &[f64]| (MARGIN + (x[0] - lo[0]) * scale, SIZE - MARGIN - (x[1] - lo[1]) * scale);

    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(s, r#"<g class="points" fill="black">"#);
    for x in points.iter() {
        let (u, v) = map(x);
        let _ = writeln!(s, r#"<circle cx="{u:.3}" cy="{v:.3}" r="2"/>"#);
    }
    let _ = writeln!(s, "</g>");

    for (i, peel) in result.peels.iter().enumerate() {
        let color = if i == result.chosen { "red" } else { "steelblue" };
        let _ = writeln!(
            s,
            r#"<g class="peel" data-k="{}" data-alpha-hat="{:.6}" fill="none" stroke="{color}" stroke-width="1.5">"#,
            peel.k, peel.alpha_hat
        );
        let verts = polygon_order(peel.region.vertices());
        let coords: Vec<String> = verts
            .iter()
            .map(|v| {
                let (u, w) = map(v);
                format!("{u:.3},{w:.3}")
            })
            .collect();
        match verts.len() {
            0 => {}
            1 => {
                let (u, v) = map(&verts[0]);
                let _ = writeln!(s, r#"<circle cx="{u:.3}" cy="{v:.3}" r="4"/>"#);
            }
            2 => {
                let _ = writeln!(s, r#"<polyline points="{}"/>"#, coords.join(" "));
            }
            _ => {
                let _ = writeln!(s, r#"<polygon points="{}"/>"#, coords.join(" "));
            }
        }
        let _ = writeln!(s, "</g>");
    }
    s.push_str("</svg>\n");
    s
}
