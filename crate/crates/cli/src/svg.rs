//! Minimal static SVG 1.1 line charts.

use std::fmt::Write;

const WIDTH: f64 = 720.0;
const PANEL_HEIGHT: f64 = 360.0;
const MARGIN_LEFT: f64 = 90.0;
const MARGIN_RIGHT: f64 = 170.0;
const MARGIN_TOP: f64 = 40.0;
const MARGIN_BOTTOM: f64 = 55.0;

const PALETTE: [&str; 6] = [
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scale {
    Linear,
    Log,
}

#[derive(Debug, Clone)]
pub struct Series {
    pub label: String,
    pub points: Vec<(f64, f64)>,
}

#[derive(Debug, Clone)]
pub struct Panel {
    pub title: String,
    pub x_label: String,
    pub y_label: String,
    pub x_scale: Scale,
    pub y_scale: Scale,
    pub series: Vec<Series>,
}

#[derive(Debug, Clone, Copy)]
struct Axis {
    scale: Scale,
    lo: f64,
    hi: f64,
}

impl Axis {
    fn fit(scale: Scale, values: impl Iterator<Item = f64>) -> Option<Self> {
        let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
        for v in values {
            let v = match scale {
                Scale::Log => v.log10(),
                Scale::Linear => v,
            };
            lo = lo.min(v);
            hi = hi.max(v);
        }
        if !lo.is_finite() || !hi.is_finite() {
            return None;
        }
        if scale == Scale::Log {
            lo = lo.floor();
            hi = hi.ceil();
        }
        if hi <= lo {
            hi = lo + 1.0;
        }
        Some(Self { scale, lo, hi })
    }

    /// Fraction in [0, 1] along the axis.
    fn frac(&self, v: f64) -> f64 {
        let v = match self.scale {
            Scale::Log => v.log10(),
            Scale::Linear => v,
        };
        (v - self.lo) / (self.hi - self.lo)
    }

    fn ticks(&self) -> Vec<(f64, String)> {
        match self.scale {
            Scale::Log => {
                let step = ((self.hi - self.lo) / 8.0).ceil().max(1.0) as i64;
                (self.lo as i64..=self.hi as i64)
                    .step_by(step as usize)
                    .map(|e| (10f64.powi(e as i32), format!("1e{e}")))
                    .collect()
            }
            Scale::Linear => (0..=4)
                .map(|i| {
                    let v = self.lo + (self.hi - self.lo) * i as f64 / 4.0;
                    (v, format!("{v:.3}"))
                })
                .collect(),
        }
    }
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

fn usable(scale: Scale, v: f64) -> bool {
    v.is_finite() && (scale == Scale::Linear || v > 0.0)
}

fn render_panel(out: &mut String, panel: &Panel, top: f64) {
    let plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT;
    let plot_h = PANEL_HEIGHT - MARGIN_TOP - MARGIN_BOTTOM;
    let x0 = MARGIN_LEFT;
    let y0 = top + MARGIN_TOP;

    let visible = |&(x, y): &(f64, f64)| usable(panel.x_scale, x) && usable(panel.y_scale, y);
    let all = || {
        panel
            .series
            .iter()
            .flat_map(|s| s.points.iter().filter(|p| visible(p)))
    };
    let (Some(xa), Some(ya)) = (
        Axis::fit(panel.x_scale, all().map(|p| p.0)),
        Axis::fit(panel.y_scale, all().map(|p| p.1)),
    ) else {
        return;
    };
    let px = |x: f64| x0 + xa.frac(x) * plot_w;
    let py = |y: f64| y0 + (1.0 - ya.frac(y)) * plot_h;

    let _ = writeln!(
        out,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle" font-size="15">{}</text>"#,
        x0 + plot_w / 2.0,
        top + 24.0,
        escape(&panel.title)
    );
    let _ = writeln!(
        out,
        r##"<rect x="{x0:.2}" y="{y0:.2}" width="{plot_w:.2}" height="{plot_h:.2}" fill="none" stroke="#000"/>"##
    );

    for (v, label) in xa.ticks() {
        let x = px(v);
        let _ = writeln!(
            out,
            r##"<line x1="{x:.2}" y1="{:.2}" x2="{x:.2}" y2="{:.2}" stroke="#000"/><text x="{x:.2}" y="{:.2}" text-anchor="middle" font-size="11">{label}</text>"##,
            y0 + plot_h,
            y0 + plot_h + 5.0,
            y0 + plot_h + 18.0
        );
    }
    for (v, label) in ya.ticks() {
        let y = py(v);
        let _ = writeln!(
            out,
            r##"<line x1="{:.2}" y1="{y:.2}" x2="{x0:.2}" y2="{y:.2}" stroke="#000"/><text x="{:.2}" y="{:.2}" text-anchor="end" font-size="11">{label}</text>"##,
            x0 - 5.0,
            x0 - 8.0,
            y + 4.0
        );
    }
    let _ = writeln!(
        out,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle" font-size="13">{}</text>"#,
        x0 + plot_w / 2.0,
        y0 + plot_h + 40.0,
        escape(&panel.x_label)
    );
    let ly = y0 + plot_h / 2.0;
    let _ = writeln!(
        out,
        r#"<text x="20.00" y="{ly:.2}" text-anchor="middle" font-size="13" transform="rotate(-90 20.00 {ly:.2})">{}</text>"#,
        escape(&panel.y_label)
    );

    for (i, s) in panel.series.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let pts: Vec<String> = s
            .points
            .iter()
            .filter(|p| visible(p))
            .map(|&(x, y)| format!("{:.2},{:.2}", px(x), py(y)))
            .collect();
        if pts.len() >= 2 {
            let _ = writeln!(
                out,
                r#"<polyline fill="none" stroke="{color}" stroke-width="1.8" points="{}"/>"#,
                pts.join(" ")
            );
        }
        let lx = x0 + plot_w + 12.0;
        let ly = y0 + 12.0 + 18.0 * i as f64;
        let _ = writeln!(
            out,
            r#"<line x1="{lx:.2}" y1="{ly:.2}" x2="{:.2}" y2="{ly:.2}" stroke="{color}" stroke-width="2"/><text x="{:.2}" y="{:.2}" font-size="11">{}</text>"#,
            lx + 22.0,
            lx + 27.0,
            ly + 4.0,
            escape(&s.label)
        );
    }
}

/// Renders panels stacked vertically into one SVG document.
pub fn render(panels: &[Panel]) -> String {
    let height = PANEL_HEIGHT * panels.len().max(1) as f64;
    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" height="{height}" viewBox="0 0 {WIDTH} {height}" font-family="sans-serif">"#
    );
    let _ = writeln!(
        out,
        r##"<rect x="0" y="0" width="{WIDTH}" height="{height}" fill="#fff"/>"##
    );
    for (i, p) in panels.iter().enumerate() {
        render_panel(&mut out, p, PANEL_HEIGHT * i as f64);
    }
    out.push_str("</svg>\n");
    out
}
