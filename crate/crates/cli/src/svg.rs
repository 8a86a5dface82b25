//! Static SVG drawing of a wiring diagram in its combinatorial layout: one
//! column per event, one row per strand position.

use std::fmt::Write;

use arrpi1_core::wiring::{EventKind, Sign, WiringDiagram};

const DX: f64 = 48.0;
const DY: f64 = 32.0;
const MARGIN: f64 = 40.0;
const GAP: f64 = 0.18;
const PALETTE: [&str; 8] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf", "#8c564b", "#e377c2"];

struct Layout {
    n: usize,
}

impl Layout {
    fn y(&self, pos: f64) -> f64 {
        MARGIN + (self.n as f64 - 1.0 - pos) * DY
    }
}

/// Open polylines, one per strand, split wherever the strand passes under another.
struct Strands {
    open: Vec<Vec<(f64, f64)>>,
    done: Vec<(usize, Vec<(f64, f64)>)>,
}

impl Strands {
    fn to(&mut self, line: usize, p: (f64, f64)) {
        let pts = &mut self.open[line];
        if pts.last() != Some(&p) {
            pts.push(p);
        }
    }

    fn lift(&mut self, line: usize) {
        let pts = std::mem::take(&mut self.open[line]);
        if pts.len() > 1 {
            self.done.push((line, pts));
        }
    }

    fn emit(mut self, out: &mut String) {
        for line in 0..self.open.len() {
            self.lift(line);
        }
        for (line, pts) in self.done {
            let colour = PALETTE[line % PALETTE.len()];
            let points: Vec<String> = pts.iter().map(|(x, y)| format!("{x:.1},{y:.1}")).collect();
            let _ = writeln!(
                out,
                r#"  <polyline points="{}" fill="none" stroke="{colour}" stroke-width="2"/>"#,
                points.join(" ")
            );
        }
    }
}

fn lerp(a: (f64, f64), b: (f64, f64), s: f64) -> (f64, f64) {
    (a.0 + (b.0 - a.0) * s, a.1 + (b.1 - a.1) * s)
}

/// Strands are straight between columns. At an actual vertex the reversed
/// block meets in a dot; at a virtual crossing the strand with smaller `y2`
/// is interrupted.
pub fn render(d: &WiringDiagram) -> String {
    let n = d.n().max(1);
    let layout = Layout { n };
    let cols = d.events.len() as f64 + 1.0;
    let width = 2.0 * MARGIN + cols * DX;
    let height = 2.0 * MARGIN + (n as f64 - 1.0) * DY;
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0}" height="{height:.0}" viewBox="0 0 {width:.0} {height:.0}">"#
    );
    let _ = writeln!(out, r#"  <rect width="100%" height="100%" fill="white"/>"#);
    let mut dots = Vec::new();
    let mut strands = Strands { open: vec![Vec::new(); d.n()], done: Vec::new() };
    let mut order = d.initial_order.clone();
    for (p, line) in order.iter().enumerate() {
        let y = layout.y(p as f64);
        let _ = writeln!(out, r#"  <text x="{:.1}" y="{:.1}" font-family="sans-serif" font-size="12" text-anchor="end">L{}</text>"#, MARGIN - 8.0, y + 4.0, line.0 + 1);
        strands.to(line.0, (MARGIN, y));
    }
    for (i, e) in d.events.iter().enumerate() {
        let x0 = MARGIN + DX / 2.0 + i as f64 * DX;
        let x1 = x0 + DX;
        let mut next = order.clone();
        let moved: Vec<(usize, usize)> = match &e.kind {
            EventKind::Actual { lo, hi, .. } => {
                let (j, k) = (lo.0, hi.0);
                next[j..=k].reverse();
                dots.push((x0 + DX / 2.0, layout.y((j + k) as f64 / 2.0)));
                (j..=k).map(|p| (p, j + k - p)).collect()
            }
            EventKind::Virtual { pos, .. } => {
                next.swap(pos.0, pos.0 + 1);
                vec![(pos.0, pos.0 + 1), (pos.0 + 1, pos.0)]
            }
        };
        for (p, line) in order.iter().enumerate() {
            let Some(&(_, q)) = moved.iter().find(|(from, _)| *from == p) else {
                strands.to(line.0, (x0, layout.y(p as f64)));
                strands.to(line.0, (x1, layout.y(p as f64)));
                continue;
            };
            let a = (x0, layout.y(p as f64));
            let b = (x1, layout.y(q as f64));
            let under = match &e.kind {
                EventKind::Virtual { pos, sign } => {
                    let ascending = p == pos.0;
                    matches!((sign, ascending), (Sign::Positive, false) | (Sign::Negative, true))
                }
                EventKind::Actual { .. } => false,
            };
            strands.to(line.0, a);
            if under {
                strands.to(line.0, lerp(a, b, 0.5 - GAP));
                strands.lift(line.0);
                strands.to(line.0, lerp(a, b, 0.5 + GAP));
            }
            strands.to(line.0, b);
        }
        order = next;
    }
    let x_end = MARGIN + DX / 2.0 + d.events.len() as f64 * DX;
    for (p, line) in order.iter().enumerate() {
        let y = layout.y(p as f64);
        strands.to(line.0, (x_end, y));
        strands.to(line.0, (x_end + DX / 2.0, y));
    }
    strands.emit(&mut out);
    for (x, y) in dots {
        let _ = writeln!(out, r#"  <circle cx="{x:.1}" cy="{y:.1}" r="4" fill="black"/>"#);
    }
    out.push_str("</svg>\n");
    out
}
