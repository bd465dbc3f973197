//! Deterministic SVG rendering of a 2D drawing with optional covering lines.

use std::fmt::Write as _;

use super::{rat_to_f64, Drawing2, Line2};
use crate::graph::Graph;

pub const VIEWPORT: f64 = 800.0;
const MARGIN: f64 = 40.0;

struct Frame {
    min_x: f64,
    min_y: f64,
    scale: f64,
}

impl Frame {
    fn fit(d: &Drawing2) -> Self {
        let xs: Vec<f64> = d.positions.iter().map(|p| rat_to_f64(&p.x)).collect();
        let ys: Vec<f64> = d.positions.iter().map(|p| rat_to_f64(&p.y)).collect();
        let fold = |v: &[f64], f: fn(f64, f64) -> f64, init: f64| v.iter().copied().fold(init, f);
        let (min_x, max_x) = (fold(&xs, f64::min, 0.0), fold(&xs, f64::max, 0.0));
        let (min_y, max_y) = (fold(&ys, f64::min, 0.0), fold(&ys, f64::max, 0.0));
        let span = (max_x - min_x).max(max_y - min_y).max(1.0);
        Frame {
            min_x,
            min_y,
            scale: (VIEWPORT - 2.0 * MARGIN) / span,
        }
    }

    fn map(&self, x: f64, y: f64) -> (f64, f64) {
        (
            MARGIN + (x - self.min_x) * self.scale,
            VIEWPORT - MARGIN - (y - self.min_y) * self.scale,
        )
    }

    fn unmap(&self, sx: f64, sy: f64) -> (f64, f64) {
        (
            (sx - MARGIN) / self.scale + self.min_x,
            (VIEWPORT - MARGIN - sy) / self.scale + self.min_y,
        )
    }
}

/// Endpoints of `l` clipped to the viewport, in screen coordinates.
fn clip_line(frame: &Frame, l: &Line2) -> Option<((f64, f64), (f64, f64))> {
    let (a, b, c) = (rat_to_f64(&l.a), rat_to_f64(&l.b), rat_to_f64(&l.c));
    let (x0, y1) = frame.unmap(0.0, 0.0);
    let (x1, y0) = frame.unmap(VIEWPORT, VIEWPORT);
    let mut hits = Vec::new();
    if b != 0.0 {
        for x in [x0, x1] {
            let y = (c - a * x) / b;
            if (y0..=y1).contains(&y) {
                hits.push((x, y));
            }
        }
    }
    if a != 0.0 {
        for y in [y0, y1] {
            let x = (c - b * y) / a;
            if (x0..=x1).contains(&x) {
                hits.push((x, y));
            }
        }
    }
    hits.dedup();
    match hits.as_slice() {
        [p, .., q] if p != q => Some((frame.map(p.0, p.1), frame.map(q.0, q.1))),
        _ => None,
    }
}

/// Renders `g` drawn by `d`, with `lines` in the background. Output bytes
/// depend only on the inputs.
pub fn render(g: &Graph, d: &Drawing2, lines: &[Line2]) -> String {
    let frame = Frame::fit(d);
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{v}" height="{v}" viewBox="0 0 {v} {v}">"#,
        v = VIEWPORT
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        out,
        r##"<g stroke="#c33" stroke-width="1" stroke-dasharray="4 3">"##
    );
    for l in lines {
        if let Some(((x1, y1), (x2, y2))) = clip_line(&frame, l) {
            let _ = writeln!(
                out,
                r#"<line x1="{x1:.3}" y1="{y1:.3}" x2="{x2:.3}" y2="{y2:.3}"/>"#
            );
        }
    }
    let _ = writeln!(out, "</g>");
    let screen: Vec<(f64, f64)> = d
        .positions
        .iter()
        .map(|p| frame.map(rat_to_f64(&p.x), rat_to_f64(&p.y)))
        .collect();
    let _ = writeln!(out, r##"<g stroke="#222" stroke-width="1.5">"##);
    for (u, v) in g.edges() {
        let ((x1, y1), (x2, y2)) = (screen[u], screen[v]);
        let _ = writeln!(
            out,
            r#"<line x1="{x1:.3}" y1="{y1:.3}" x2="{x2:.3}" y2="{y2:.3}"/>"#
        );
    }
    let _ = writeln!(out, "</g>");
    let _ = writeln!(
        out,
        r##"<g fill="#36c" font-size="10" font-family="monospace">"##
    );
    for (v, &(x, y)) in screen.iter().enumerate().take(g.vertex_count()) {
        let _ = writeln!(out, r#"<circle cx="{x:.3}" cy="{y:.3}" r="3"/>"#);
        let _ = writeln!(
            out,
            r#"<text x="{:.3}" y="{:.3}">{v}</text>"#,
            x + 4.0,
            y - 4.0
        );
    }
    let _ = writeln!(out, "</g>");
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::Point2;

    #[test]
    fn deterministic_and_well_formed() {
        let g = Graph::complete(3);
        let d = Drawing2::new(vec![
            Point2::int(0, 0),
            Point2::int(4, 0),
            Point2::int(0, 3),
        ]);
        let lines = [Line2::x_axis(), Line2::y_axis()];
        let a = render(&g, &d, &lines);
        assert_eq!(a, render(&g, &d, &lines));
        assert!(a.starts_with("<svg") && a.ends_with("</svg>\n"));
        assert_eq!(a.matches("<circle").count(), 3);
        assert_eq!(a.matches("<line").count(), 5);
    }
}
