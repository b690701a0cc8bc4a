//! SVG pictures of rank-2 scattering diagrams and broken lines, y-up.

use std::fmt::Write as _;

use anyhow::{ensure, Result};
use qca_core::scatter::ScatteringDiagram;
use qca_core::theta::BrokenLine;
use qca_core::Rational;

/// Terms kept in a wall label.
pub const LABEL_TERMS: usize = 3;

#[derive(Clone, Copy, Debug)]
pub struct Viewport {
    /// Width and height in pixels.
    pub size: u32,
}

impl Default for Viewport {
    fn default() -> Self {
        Viewport { size: 480 }
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

fn f(r: &Rational) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

struct Frame {
    c: f64,
    radius: f64,
    /// Pixels per lattice unit for broken lines.
    unit: f64,
}

impl Frame {
    fn px(&self, x: f64, y: f64) -> (f64, f64) {
        (self.c + x * self.unit, self.c - y * self.unit)
    }

    /// Endpoint of a ray of direction (x, y) at `frac` of the radius.
    fn ray(&self, x: f64, y: f64, frac: f64) -> (f64, f64) {
        let n = (x * x + y * y).sqrt();
        (self.c + frac * self.radius * x / n, self.c - frac * self.radius * y / n)
    }
}

/// Draws every wall support as rays from the origin (a line is two rays),
/// each labelled with its function at 0.8 of the ray length, and overlays
/// broken lines as polylines.
pub fn render(dg: &ScatteringDiagram, lines: &[BrokenLine], view: Viewport) -> Result<String> {
    ensure!(dg.torus().rank() == 2, "SVG output needs a rank-2 diagram, this one has rank {}", dg.torus().rank());
    let size = view.size as f64;
    let radius = 0.45 * size;
    // vertices of broken lines set the lattice scale
    let mut extent = 1.0f64;
    for l in lines {
        for s in &l.segments {
            extent = extent.max(f(&s.end[0]).abs()).max(f(&s.end[1]).abs());
        }
    }
    let frame = Frame { c: size / 2.0, radius, unit: radius / (2.0 * extent) };

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{0}" height="{0}" viewBox="0 0 {0} {0}" font-family="monospace" font-size="11">"#,
        view.size
    );
    let _ = writeln!(out, r#"<rect x="0" y="0" width="{0}" height="{0}" fill="white"/>"#, view.size);
    for (x, y) in [(1.0, 0.0), (0.0, 1.0), (-1.0, 0.0), (0.0, -1.0)] {
        let (x2, y2) = frame.ray(x, y, 1.0);
        let _ = writeln!(
            out,
            r##"<line class="axis" x1="{:.3}" y1="{:.3}" x2="{x2:.3}" y2="{y2:.3}" stroke="#bbbbbb" stroke-width="1"/>"##,
            frame.c, frame.c
        );
    }
    for (i, w) in dg.walls().iter().enumerate() {
        let label = escape(&dg.render_wall_truncated(i, LABEL_TERMS));
        let colour = if w.incoming { "#1f4e9c" } else { "#b23a2a" };
        for r in w.rays() {
            let (x, y) = (r[0] as f64, r[1] as f64);
            let (x2, y2) = frame.ray(x, y, 1.0);
            let (lx, ly) = frame.ray(x, y, 0.8);
            let _ = writeln!(
                out,
                r#"<line class="wall" data-wall="{i}" x1="{:.3}" y1="{:.3}" x2="{x2:.3}" y2="{y2:.3}" stroke="{colour}" stroke-width="2"/>"#,
                frame.c, frame.c
            );
            let _ = writeln!(
                out,
                r#"<text class="wall-label" data-wall="{i}" x="{lx:.3}" y="{ly:.3}" fill="{colour}">{label}</text>"#
            );
        }
    }
    for (n, l) in lines.iter().enumerate() {
        let first = &l.segments[0];
        let (ex, ey) = (f(&first.end[0]), f(&first.end[1]));
        // the first segment comes in from infinity along +m
        let m = &first.exponent;
        let norm = ((m[0] * m[0] + m[1] * m[1]) as f64).sqrt().max(1.0);
        let tail = 2.0 * extent;
        let mut pts = vec![frame.px(ex + tail * m[0] as f64 / norm, ey + tail * m[1] as f64 / norm)];
        for s in &l.segments {
            pts.push(frame.px(f(&s.end[0]), f(&s.end[1])));
        }
        let points: Vec<String> = pts.iter().map(|(x, y)| format!("{x:.3},{y:.3}")).collect();
        let _ = writeln!(
            out,
            r##"<polyline class="broken-line" data-line="{n}" data-segments="{}" points="{}" fill="none" stroke="#2a8c3a" stroke-width="2"/>"##,
            l.segments.len(),
            points.join(" ")
        );
        let (qx, qy) = frame.px(f(&l.endpoint[0]), f(&l.endpoint[1]));
        let _ = writeln!(out, r##"<circle class="basepoint" cx="{qx:.3}" cy="{qy:.3}" r="3" fill="#2a8c3a"/>"##);
    }
    out.push_str("</svg>\n");
    Ok(out)
}
