//! Minimal line charts written straight to SVG text.

use std::fmt::Write;

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 440.0;
const LEFT: f64 = 80.0;
const RIGHT: f64 = 24.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 56.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Stroke {
    Solid,
    Dashed,
    /// Markers only, no connecting line.
    Points,
}

#[derive(Clone, Debug)]
pub struct Series {
    pub name: String,
    pub color: &'static str,
    pub stroke: Stroke,
    pub points: Vec<(f64, f64)>,
}

#[derive(Clone, Debug, Default)]
pub struct Chart {
    pub title: String,
    pub x_label: String,
    pub y_label: String,
    pub log_x: bool,
    pub log_y: bool,
    /// Fixed y range; derived from the data when `None`.
    pub y_range: Option<(f64, f64)>,
    pub series: Vec<Series>,
    /// Vertical markers `(x, label)`.
    pub markers: Vec<(f64, String)>,
    /// Free-text comment emitted at the top of the document.
    pub comment: Option<String>,
}

struct Axis {
    lo: f64,
    hi: f64,
    log: bool,
}

impl Axis {
    fn map(&self, v: f64) -> f64 {
        let t = if self.log { v.log10() } else { v };
        (t - self.lo) / (self.hi - self.lo)
    }

    fn ticks(&self) -> Vec<f64> {
        if self.log {
            let first = self.lo.floor() as i32;
            let last = self.hi.ceil() as i32;
            return (first..=last)
                .map(|e| 10f64.powi(e))
                .filter(|v| (self.lo - 1e-9..=self.hi + 1e-9).contains(&v.log10()))
                .collect();
        }
        let span = self.hi - self.lo;
        let raw = span / 5.0;
        let mag = 10f64.powf(raw.log10().floor());
        let step = [1.0, 2.0, 5.0, 10.0]
            .iter()
            .map(|m| m * mag)
            .find(|s| span / s <= 6.0)
            .unwrap_or(10.0 * mag);
        let mut v = (self.lo / step).ceil() * step;
        let mut out = Vec::new();
        while v <= self.hi + 1e-9 * step {
            out.push(if v.abs() < 1e-12 * step { 0.0 } else { v });
            v += step;
        }
        out
    }
}

fn axis_for(values: impl Iterator<Item = f64>, log: bool, fixed: Option<(f64, f64)>) -> Axis {
    let (mut lo, mut hi) = match fixed {
        Some(r) => r,
        None => values
            .filter(|v| v.is_finite() && (!log || *v > 0.0))
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), v| {
                (a.min(v), b.max(v))
            }),
    };
    if !lo.is_finite() || !hi.is_finite() {
        (lo, hi) = (if log { 1.0 } else { 0.0 }, if log { 10.0 } else { 1.0 });
    }
    if log {
        lo = lo.log10();
        hi = hi.log10();
        let pad = 0.05 * (hi - lo).max(0.5);
        lo -= pad;
        hi += pad;
    } else if hi - lo <= 0.0 {
        hi = lo + 1.0;
    }
    Axis { lo, hi, log }
}

fn label(v: f64, log: bool) -> String {
    if log {
        format!("1e{}", v.log10().round() as i32)
    } else if v != 0.0 && (v.abs() < 1e-2 || v.abs() >= 1e4) {
        format!("{v:.1e}")
    } else {
        let s = format!("{v:.3}");
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

impl Chart {
    pub fn render(&self) -> String {
        let xs = self
            .series
            .iter()
            .flat_map(|s| s.points.iter().map(|p| p.0));
        let xs = xs.chain(self.markers.iter().map(|m| m.0));
        let x = axis_for(xs, self.log_x, None);
        let ys = self
            .series
            .iter()
            .flat_map(|s| s.points.iter().map(|p| p.1));
        let y = axis_for(ys, self.log_y, self.y_range);
        let pw = WIDTH - LEFT - RIGHT;
        let ph = HEIGHT - TOP - BOTTOM;
        let px = |v: f64| LEFT + x.map(v) * pw;
        let py = |v: f64| TOP + (1.0 - y.map(v)) * ph;

        let mut out = String::new();
        let _ = writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
        );
        if let Some(c) = &self.comment {
            let _ = writeln!(out, "<!-- {} -->", c.replace("--", "- -"));
        }
        let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
        let _ = writeln!(
            out,
            r#"<defs><clipPath id="plot"><rect x="{LEFT}" y="{TOP}" width="{pw}" height="{ph}"/></clipPath></defs>"#
        );
        let _ = writeln!(
            out,
            r#"<text x="{}" y="24" text-anchor="middle" font-size="15">{}</text>"#,
            WIDTH / 2.0,
            escape(&self.title)
        );

        for t in x.ticks() {
            let gx = px(t);
            let _ = writeln!(
                out,
                r##"<line x1="{gx:.2}" y1="{TOP}" x2="{gx:.2}" y2="{:.2}" stroke="#e4e4e4"/><text x="{gx:.2}" y="{:.2}" text-anchor="middle">{}</text>"##,
                TOP + ph,
                TOP + ph + 18.0,
                label(t, x.log)
            );
        }
        for t in y.ticks() {
            let gy = py(t);
            let _ = writeln!(
                out,
                r##"<line x1="{LEFT}" y1="{gy:.2}" x2="{:.2}" y2="{gy:.2}" stroke="#e4e4e4"/><text x="{:.2}" y="{:.2}" text-anchor="end">{}</text>"##,
                LEFT + pw,
                LEFT - 6.0,
                gy + 4.0,
                label(t, y.log)
            );
        }
        let _ = writeln!(
            out,
            r#"<rect x="{LEFT}" y="{TOP}" width="{pw}" height="{ph}" fill="none" stroke="black"/>"#
        );
        let _ = writeln!(
            out,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
            LEFT + pw / 2.0,
            HEIGHT - 14.0,
            escape(&self.x_label)
        );
        let _ = writeln!(
            out,
            r#"<text transform="translate(20 {:.2}) rotate(-90)" text-anchor="middle">{}</text>"#,
            TOP + ph / 2.0,
            escape(&self.y_label)
        );

        let _ = writeln!(out, r#"<g clip-path="url(#plot)">"#);
        for (mx, text) in &self.markers {
            let gx = px(*mx);
            let _ = writeln!(
                out,
                r##"<line x1="{gx:.2}" y1="{TOP}" x2="{gx:.2}" y2="{:.2}" stroke="#555" stroke-dasharray="2 3"/><text x="{:.2}" y="{:.2}" fill="#555">{}</text>"##,
                TOP + ph,
                gx + 4.0,
                TOP + 14.0,
                escape(text)
            );
        }
        for s in &self.series {
            let pts: Vec<(f64, f64)> = s
                .points
                .iter()
                .filter(|(a, b)| {
                    a.is_finite() && b.is_finite() && (!x.log || *a > 0.0) && (!y.log || *b > 0.0)
                })
                .map(|&(a, b)| (px(a), py(b)))
                .collect();
            match s.stroke {
                Stroke::Points => {
                    for (a, b) in pts {
                        let _ = writeln!(
                            out,
                            r#"<circle cx="{a:.2}" cy="{b:.2}" r="4" fill="{}"/>"#,
                            s.color
                        );
                    }
                }
                stroke => {
                    let path: Vec<String> =
                        pts.iter().map(|(a, b)| format!("{a:.2},{b:.2}")).collect();
                    let dash = if stroke == Stroke::Dashed {
                        r#" stroke-dasharray="8 5""#
                    } else {
                        ""
                    };
                    let _ = writeln!(
                        out,
                        r#"<polyline fill="none" stroke="{}" stroke-width="2"{dash} points="{}"/>"#,
                        s.color,
                        path.join(" ")
                    );
                }
            }
        }
        let _ = writeln!(out, "</g>");

        for (i, s) in self.series.iter().enumerate() {
            let ly = TOP + 16.0 + 18.0 * i as f64;
            let lx = LEFT + pw - 200.0;
            let glyph = match s.stroke {
                Stroke::Points => format!(
                    r#"<circle cx="{:.2}" cy="{:.2}" r="4" fill="{}"/>"#,
                    lx + 14.0,
                    ly - 4.0,
                    s.color
                ),
                stroke => format!(
                    r#"<line x1="{lx:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="{}" stroke-width="2"{}/>"#,
                    ly - 4.0,
                    lx + 28.0,
                    ly - 4.0,
                    s.color,
                    if stroke == Stroke::Dashed {
                        r#" stroke-dasharray="8 5""#
                    } else {
                        ""
                    }
                ),
            };
            let _ = writeln!(
                out,
                r#"{glyph}<text x="{:.2}" y="{ly:.2}">{}</text>"#,
                lx + 36.0,
                escape(&s.name)
            );
        }
        out.push_str("</svg>\n");
        out
    }
}
