//! SVG rendering of embedded graphs, with BIG angles marked by arcs.

use std::fmt::Write as _;

use num_traits::ToPrimitive;

use crate::cpt::{CptLabelling, Label};
use crate::geometry::Scalar;
use crate::stretch::EmbeddedGraph;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SvgOptions {
    /// Width and height of the image in pixels.
    pub size: f64,
    pub margin: f64,
    pub vertex_radius: f64,
    pub arc_radius: f64,
    pub show_labels: bool,
}

impl Default for SvgOptions {
    fn default() -> Self {
        SvgOptions { size: 600.0, margin: 30.0, vertex_radius: 4.0, arc_radius: 14.0, show_labels: true }
    }
}

/// Renders the drawing. When a labelling is given, every BIG angle of a
/// bounded face is marked by an arc; outer-face angles are BIG by
/// definition and left unmarked.
pub fn render_svg<T: Scalar + ToPrimitive>(
    emb: &EmbeddedGraph<T>,
    labelling: Option<&CptLabelling>,
    opts: &SvgOptions,
) -> String {
    let g = &emb.graph;
    let pts: Vec<(f64, f64)> =
        emb.coords.iter().map(|p| (p.x.to_f64().unwrap_or(0.0), p.y.to_f64().unwrap_or(0.0))).collect();
    let (mut lo_x, mut lo_y, mut hi_x, mut hi_y) = (f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY);
    for &(x, y) in &pts {
        lo_x = lo_x.min(x);
        lo_y = lo_y.min(y);
        hi_x = hi_x.max(x);
        hi_y = hi_y.max(y);
    }
    let span = (hi_x - lo_x).max(hi_y - lo_y).max(f64::MIN_POSITIVE);
    let scale = (opts.size - 2.0 * opts.margin) / span;
    let screen = |(x, y): (f64, f64)| (opts.margin + (x - lo_x) * scale, opts.size - opts.margin - (y - lo_y) * scale);
    let s: Vec<(f64, f64)> = pts.iter().map(|&p| screen(p)).collect();

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{0}" height="{0}" viewBox="0 0 {0} {0}">"#,
        opts.size
    );
    let _ = writeln!(out, "<!-- cptkit {} -->", env!("CARGO_PKG_VERSION"));
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(out, r#"<g stroke="black" stroke-width="1.5">"#);
    for &(u, v) in g.edges() {
        let _ = writeln!(out, r#"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}"/>"#, s[u].0, s[u].1, s[v].0, s[v].1);
    }
    let _ = writeln!(out, "</g>");
    if let Some(l) = labelling {
        let _ = writeln!(out, r#"<g stroke="crimson" stroke-width="2" fill="none">"#);
        for f in 1..g.face_count() {
            for d in g.face(f) {
                let a = g.angle_at(*d);
                if l.label(&a) != Label::Big {
                    continue;
                }
                let _ = writeln!(out, "{}", arc(pts[a.vertex], pts[a.out_dart.head], pts[a.in_dart.tail], scale, opts.arc_radius, &screen));
            }
        }
        let _ = writeln!(out, "</g>");
    }
    let _ = writeln!(out, r#"<g fill="black">"#);
    for (v, &(x, y)) in s.iter().enumerate() {
        let _ = writeln!(out, r#"<circle cx="{x:.2}" cy="{y:.2}" r="{}"/>"#, opts.vertex_radius);
        if opts.show_labels {
            let _ = writeln!(out, r#"<text x="{:.2}" y="{:.2}" font-size="11" font-family="sans-serif">{v}</text>"#, x + 5.0, y - 5.0);
        }
    }
    let _ = writeln!(out, "</g>\n</svg>");
    out
}

/// Arc around `c` sweeping counterclockwise from the ray towards `from` to
/// the ray towards `to`, in drawing coordinates.
fn arc(
    c: (f64, f64),
    from: (f64, f64),
    to: (f64, f64),
    scale: f64,
    radius: f64,
    screen: &impl Fn((f64, f64)) -> (f64, f64),
) -> String {
    let r = radius / scale;
    let t0 = (from.1 - c.1).atan2(from.0 - c.0);
    let mut t1 = (to.1 - c.1).atan2(to.0 - c.0);
    if t1 <= t0 {
        t1 += std::f64::consts::TAU;
    }
    let on = |t: f64| screen((c.0 + r * t.cos(), c.1 + r * t.sin()));
    let (p, q) = (on(t0), on(t1));
    let large = u8::from(t1 - t0 > std::f64::consts::PI);
    format!(r#"<path d="M {:.2} {:.2} A {radius} {radius} 0 {large} 0 {:.2} {:.2}"/>"#, p.0, p.1, q.0, q.1)
}
