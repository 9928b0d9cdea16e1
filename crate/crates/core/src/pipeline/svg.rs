use std::fmt::Write as _;
use std::path::Path;

use super::{PipelineError, TopicReport};
use crate::fuzzy::Tfn;

const WIDTH: f64 = 760.0;
const HEIGHT: f64 = 420.0;
const LEFT: f64 = 56.0;
const RIGHT: f64 = 24.0;
const TOP: f64 = 24.0;
const BOTTOM: f64 = 48.0;
const LEGEND_ROW: f64 = 18.0;

const PALETTE: [&str; 10] = [
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf",
];

/// A labeled triangle to draw.
#[derive(Debug, Clone, PartialEq)]
pub struct TfnSeries {
    pub label: String,
    pub tfn: Tfn,
}

impl TfnSeries {
    /// Labels a report with its topic id and up to three top terms.
    pub fn from_report(r: &TopicReport) -> Self {
        let terms: Vec<&str> = r.top_terms.iter().take(3).map(|t| t.term.as_str()).collect();
        let label = if terms.is_empty() {
            format!("topic {}", r.topic)
        } else {
            format!("topic {}: {}", r.topic, terms.join(", "))
        };
        Self { label, tfn: r.tfn }
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

/// Renders the membership functions of `series` on a shared polarity axis.
///
/// The x-axis spans `[min(-1, min a), max(1, max b)]`; dashed guides mark
/// `-ramp`, `0` and `+ramp`. Each series becomes exactly one `<polyline>`.
pub fn render_tfn_svg(series: &[TfnSeries], ramp: f64) -> String {
    let x_min = series.iter().map(|s| s.tfn.a).fold(-1.0, f64::min);
    let x_max = series.iter().map(|s| s.tfn.b).fold(1.0, f64::max);
    let legend_h = LEGEND_ROW * series.len() as f64 + 8.0;
    let height = HEIGHT + legend_h;
    let plot_w = WIDTH - LEFT - RIGHT;
    let plot_h = HEIGHT - TOP - BOTTOM;
    let px = |x: f64| LEFT + (x - x_min) / (x_max - x_min) * plot_w;
    let py = |y: f64| TOP + (1.0 - y) * plot_h;

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{height}" viewBox="0 0 {WIDTH} {height}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(
        s,
        r#"<rect x="0" y="0" width="{WIDTH}" height="{height}" fill="white"/>"#
    );

    // axes
    let (x0, x1, y0, y1) = (px(x_min), px(x_max), py(0.0), py(1.0));
    let _ = writeln!(
        s,
        r#"<line x1="{x0:.2}" y1="{y0:.2}" x2="{x1:.2}" y2="{y0:.2}" stroke="black"/>"#
    );
    let _ = writeln!(
        s,
        r#"<line x1="{x0:.2}" y1="{y0:.2}" x2="{x0:.2}" y2="{y1:.2}" stroke="black"/>"#
    );
    for y in [0.0, 0.25, 0.5, 0.75, 1.0] {
        let yy = py(y);
        let _ = writeln!(
            s,
            r#"<line x1="{:.2}" y1="{yy:.2}" x2="{x0:.2}" y2="{yy:.2}" stroke="black"/><text x="{:.2}" y="{:.2}" text-anchor="end">{y}</text>"#,
            x0 - 4.0,
            x0 - 6.0,
            yy + 4.0
        );
    }
    let first_tick = (x_min / 0.5).ceil() as i64;
    let last_tick = (x_max / 0.5).floor() as i64;
    for i in first_tick..=last_tick {
        let x = i as f64 * 0.5;
        let xx = px(x);
        let _ = writeln!(
            s,
            r#"<line x1="{xx:.2}" y1="{y0:.2}" x2="{xx:.2}" y2="{:.2}" stroke="black"/><text x="{xx:.2}" y="{:.2}" text-anchor="middle">{x}</text>"#,
            y0 + 4.0,
            y0 + 18.0
        );
    }
    let _ = writeln!(
        s,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">polarity</text>"#,
        LEFT + plot_w / 2.0,
        y0 + 36.0
    );

    for g in [-ramp, 0.0, ramp] {
        let xx = px(g);
        let _ = writeln!(
            s,
            r##"<line x1="{xx:.2}" y1="{y0:.2}" x2="{xx:.2}" y2="{y1:.2}" stroke="#999999" stroke-dasharray="4 3"/>"##
        );
    }

    for (i, series) in series.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let t = series.tfn;
        let _ = writeln!(
            s,
            r#"<polyline fill="none" stroke="{color}" stroke-width="2" points="{:.2},{y0:.2} {:.2},{y1:.2} {:.2},{y0:.2}"><title>{}</title></polyline>"#,
            px(t.a),
            px(t.m),
            px(t.b),
            escape(&series.label)
        );
        let ly = HEIGHT + LEGEND_ROW * i as f64 + 4.0;
        let _ = writeln!(
            s,
            r#"<rect x="{LEFT}" y="{ly:.2}" width="14" height="10" fill="{color}"/><text x="{:.2}" y="{:.2}">{}</text>"#,
            LEFT + 20.0,
            ly + 9.0,
            escape(&series.label)
        );
    }
    s.push_str("</svg>\n");
    s
}

/// Picks the reports named in `selection` (topic ids, in the given order).
pub fn select_series(reports: &[TopicReport], selection: &[usize]) -> Result<Vec<TfnSeries>, PipelineError> {
    if selection.is_empty() {
        return Err(PipelineError::Config("SVG topic selection is empty".into()));
    }
    selection
        .iter()
        .map(|&topic| {
            reports
                .iter()
                .find(|r| r.topic == topic)
                .map(TfnSeries::from_report)
                .ok_or_else(|| PipelineError::Config(format!("topic {topic} is not in the report")))
        })
        .collect()
}

/// Writes the selected topics' membership functions to an SVG file.
pub fn emit_tfn_svg(
    reports: &[TopicReport],
    path: impl AsRef<Path>,
    selection: &[usize],
    ramp: f64,
) -> Result<(), PipelineError> {
    let series = select_series(reports, selection)?;
    let path = path.as_ref();
    std::fs::write(path, render_tfn_svg(&series, ramp)).map_err(|source| PipelineError::Io {
        path: path.to_path_buf(),
        source,
    })
}
