//! Minimal SVG line plots: one panel per series, stacked vertically.

use std::fmt::Write;

const WIDTH: f64 = 640.0;
const PANEL: f64 = 220.0;
const MARGIN: f64 = 48.0;

pub struct Series<'a> {
    pub name: &'a str,
    pub points: Vec<(f64, f64)>,
}

fn bounds(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let (lo, hi) = values
        .filter(|v| v.is_finite())
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), v| (a.min(v), b.max(v)));
    if !lo.is_finite() {
        return (0.0, 1.0);
    }
    if hi - lo < 1e-12 {
        (lo - 0.5, hi + 0.5)
    } else {
        (lo, hi)
    }
}

pub fn plot(title: &str, series: &[Series<'_>]) -> String {
    let height = MARGIN + series.len() as f64 * (PANEL + MARGIN);
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{height}" font-family="monospace" font-size="11">"#
    );
    let _ = writeln!(out, r#"<text x="{MARGIN}" y="20">{}</text>"#, escape(title));
    for (i, s) in series.iter().enumerate() {
        let top = MARGIN + i as f64 * (PANEL + MARGIN);
        let (x0, x1) = bounds(s.points.iter().map(|p| p.0));
        let (y0, y1) = bounds(s.points.iter().map(|p| p.1));
        let inner = WIDTH - 2.0 * MARGIN;
        let sx = |x: f64| MARGIN + (x - x0) / (x1 - x0) * inner;
        let sy = |y: f64| top + PANEL - (y - y0) / (y1 - y0) * PANEL;
        let _ = writeln!(
            out,
            r#"<rect x="{MARGIN}" y="{top}" width="{inner}" height="{PANEL}" fill="none" stroke="gray"/>"#
        );
        let _ = writeln!(out, r#"<text x="{MARGIN}" y="{}">{} vs time</text>"#, top - 6.0, escape(s.name));
        let _ = writeln!(out, r#"<text x="4" y="{}">{y1:.4}</text>"#, top + 10.0);
        let _ = writeln!(out, r#"<text x="4" y="{}">{y0:.4}</text>"#, top + PANEL);
        let _ = writeln!(out, r#"<text x="{MARGIN}" y="{}">{x0}</text>"#, top + PANEL + 14.0);
        let _ = writeln!(out, r#"<text x="{}" y="{}">{x1}</text>"#, WIDTH - MARGIN - 30.0, top + PANEL + 14.0);
        let pts: Vec<String> = s
            .points
            .iter()
            .filter(|p| p.1.is_finite())
            .map(|&(x, y)| format!("{:.2},{:.2}", sx(x), sy(y)))
            .collect();
        let _ = writeln!(out, r#"<polyline fill="none" stroke="steelblue" points="{}"/>"#, pts.join(" "));
    }
    out.push_str("</svg>\n");
    out
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
