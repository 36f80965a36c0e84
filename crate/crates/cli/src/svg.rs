//! Polyline figures with fixed-precision coordinates, so equal inputs give equal bytes.

use std::fmt::Write;

use serde_json::Value;

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 480.0;
const MARGIN: f64 = 48.0;

pub struct Figure<'a> {
    pub title: &'a str,
    pub x_label: &'a str,
    pub y_label: &'a str,
    /// Keep one unit the same length on both axes (plane curves).
    pub equal_aspect: bool,
}

fn escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            c => out.push(c),
        }
    }
    out
}

/// Number with a fixed number of decimals and no negative zero.
fn num(x: f64, decimals: usize) -> String {
    let s = format!("{x:.decimals$}");
    if s.starts_with('-') && s[1..].chars().all(|c| c == '0' || c == '.') {
        s[1..].to_string()
    } else {
        s
    }
}

struct Bounds {
    x0: f64,
    x1: f64,
    y0: f64,
    y1: f64,
}

impl Bounds {
    fn of(points: &[(f64, f64)], equal_aspect: bool) -> Self {
        let fin = points.iter().filter(|(x, y)| x.is_finite() && y.is_finite());
        let (mut x0, mut x1, mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
        for &(x, y) in fin {
            x0 = x0.min(x);
            x1 = x1.max(x);
            y0 = y0.min(y);
            y1 = y1.max(y);
        }
        if x0 > x1 {
            (x0, x1, y0, y1) = (0.0, 1.0, 0.0, 1.0);
        }
        let pad = |lo: f64, hi: f64| {
            let span = hi - lo;
            let p = if span > 0.0 { 0.05 * span } else { 0.5 * lo.abs().max(1.0) };
            (lo - p, hi + p)
        };
        let (mut x0, mut x1) = pad(x0, x1);
        let (mut y0, mut y1) = pad(y0, y1);
        if equal_aspect {
            let (pw, ph) = (WIDTH - 2.0 * MARGIN, HEIGHT - 2.0 * MARGIN);
            let scale = ((x1 - x0) / pw).max((y1 - y0) / ph);
            let (cx, cy) = (0.5 * (x0 + x1), 0.5 * (y0 + y1));
            (x0, x1) = (cx - 0.5 * scale * pw, cx + 0.5 * scale * pw);
            (y0, y1) = (cy - 0.5 * scale * ph, cy + 0.5 * scale * ph);
        }
        Bounds { x0, x1, y0, y1 }
    }

    fn px(&self, x: f64) -> f64 {
        MARGIN + (x - self.x0) / (self.x1 - self.x0) * (WIDTH - 2.0 * MARGIN)
    }

    fn py(&self, y: f64) -> f64 {
        HEIGHT - MARGIN - (y - self.y0) / (self.y1 - self.y0) * (HEIGHT - 2.0 * MARGIN)
    }
}

/// SVG document with the run configuration in `<metadata>`.
pub fn polyline(fig: &Figure, points: &[(f64, f64)], run_config: &Value) -> String {
    let b = Bounds::of(points, fig.equal_aspect);
    let mut s = String::new();
    let config = serde_json::to_string(run_config).expect("JSON values serialize");
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#,
        w = WIDTH,
        h = HEIGHT
    );
    let _ = writeln!(s, "<title>{}</title>", escape(fig.title));
    let _ = writeln!(s, "<metadata>{}</metadata>", escape(&config));
    let _ = writeln!(s, r#"<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);

    // frame, then the coordinate axes where they cross the plot
    let (left, right, top, bottom) = (MARGIN, WIDTH - MARGIN, MARGIN, HEIGHT - MARGIN);
    let _ = writeln!(
        s,
        r##"<rect x="{left}" y="{top}" width="{}" height="{}" fill="none" stroke="#999" stroke-width="1"/>"##,
        right - left,
        bottom - top
    );
    if b.y0 < 0.0 && b.y1 > 0.0 {
        let y = num(b.py(0.0), 2);
        let _ = writeln!(s, r##"<line x1="{left}" y1="{y}" x2="{right}" y2="{y}" stroke="#ccc"/>"##);
    }
    if b.x0 < 0.0 && b.x1 > 0.0 {
        let x = num(b.px(0.0), 2);
        let _ = writeln!(s, r##"<line x1="{x}" y1="{top}" x2="{x}" y2="{bottom}" stroke="#ccc"/>"##);
    }
    let label = |s: &mut String, x: f64, y: f64, anchor: &str, text: &str| {
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{}" font-family="monospace" font-size="11" text-anchor="{anchor}">{}</text>"#,
            num(x, 2),
            num(y, 2),
            escape(text)
        );
    };
    label(&mut s, left, bottom + 16.0, "start", &num(b.x0, 3));
    label(&mut s, right, bottom + 16.0, "end", &num(b.x1, 3));
    label(&mut s, 0.5 * (left + right), bottom + 32.0, "middle", fig.x_label);
    label(&mut s, left - 4.0, bottom, "end", &num(b.y0, 3));
    label(&mut s, left - 4.0, top + 4.0, "end", &num(b.y1, 3));
    label(&mut s, left, top - 8.0, "start", fig.y_label);
    label(&mut s, right, top - 8.0, "end", fig.title);

    s.push_str(r##"<polyline fill="none" stroke="#1f4e99" stroke-width="1.2" points=""##);
    let mut first = true;
    for &(x, y) in points.iter().filter(|(x, y)| x.is_finite() && y.is_finite()) {
        if !first {
            s.push(' ');
        }
        first = false;
        let _ = write!(s, "{},{}", num(b.px(x), 3), num(b.py(y), 3));
    }
    s.push_str("\"/>\n</svg>\n");
    s
}
