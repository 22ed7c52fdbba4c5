//! CSV and SVG renderers. Both return strings so nothing touches the disk
//! until a run has finished.

use std::fmt::Write as _;

use lrbsim::curve::SurvivalCurve;
use lrbsim::fit::DecayFit;

use crate::error::CliError;

pub const CURVE_HEADER: [&str; 5] = ["m", "p_hat", "stderr", "n_sequences", "seed"];

/// Fixed-point decimal with 15 significant digits.
pub fn fmt_num(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return if x == 0.0 { "0.000000000000000".into() } else { x.to_string() };
    }
    let mag = x.abs().log10().floor() as i32;
    let decimals = (14 - mag).clamp(0, 340) as usize;
    format!("{x:.decimals$}")
}

fn csv_err(e: csv::Error) -> CliError {
    CliError::Io(e.to_string())
}

fn finish(w: csv::Writer<Vec<u8>>) -> Result<String, CliError> {
    let bytes = w.into_inner().map_err(|e| CliError::Io(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CliError::Io(e.to_string()))
}

fn curve_record(curve: &SurvivalCurve, i: usize) -> [String; 5] {
    let p = &curve.points[i];
    [
        p.m.to_string(),
        fmt_num(p.p_hat),
        fmt_num(p.stderr),
        p.n.to_string(),
        curve.seed.to_string(),
    ]
}

pub fn emit_csv(curve: &SurvivalCurve) -> Result<String, CliError> {
    if curve.points.is_empty() {
        return Err(CliError::Config("cannot write an empty curve".into()));
    }
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CURVE_HEADER).map_err(csv_err)?;
    for i in 0..curve.points.len() {
        w.write_record(curve_record(curve, i)).map_err(csv_err)?;
    }
    finish(w)
}

/// One block of rows per swept value, prefixed by the parameter name and value.
pub fn emit_sweep_csv(parameter: &str, rows: &[(f64, SurvivalCurve)]) -> Result<String, CliError> {
    if rows.iter().all(|(_, c)| c.points.is_empty()) {
        return Err(CliError::Config("cannot write an empty sweep".into()));
    }
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec!["parameter", "value"];
    header.extend(CURVE_HEADER);
    w.write_record(&header).map_err(csv_err)?;
    for (value, curve) in rows {
        for i in 0..curve.points.len() {
            let mut rec = vec![parameter.to_string(), fmt_num(*value)];
            rec.extend(curve_record(curve, i));
            w.write_record(&rec).map_err(csv_err)?;
        }
    }
    finish(w)
}

pub fn emit_fit_csv(fit: &DecayFit) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["component", "amplitude", "lambda"]).map_err(csv_err)?;
    for (i, (a, l)) in fit.components.iter().enumerate() {
        w.write_record([i.to_string(), fmt_num(*a), fmt_num(*l)])
            .map_err(csv_err)?;
    }
    finish(w)
}

#[derive(Clone, Debug)]
pub struct Series {
    pub label: String,
    /// `(x, y, stderr)`.
    pub points: Vec<(f64, f64, f64)>,
    /// Draw markers; otherwise only the line.
    pub markers: bool,
}

impl Series {
    pub fn from_curve(curve: &SurvivalCurve) -> Self {
        Self {
            label: curve.label.clone(),
            points: curve
                .points
                .iter()
                .map(|p| (p.m as f64, p.p_hat, p.stderr))
                .collect(),
            markers: true,
        }
    }
}

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 420.0;
const LEFT: f64 = 70.0;
const RIGHT: f64 = 20.0;
const TOP: f64 = 20.0;
const BOTTOM: f64 = 60.0;
const COLORS: [&str; 6] = ["#1f5fa8", "#c0392b", "#27863b", "#8e44ad", "#d68910", "#566573"];

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Survival plot against sequence length.
pub fn emit_plot(curve: &SurvivalCurve) -> Result<String, CliError> {
    render_plot(&[Series::from_curve(curve)], "sequence length m")
}

/// The y axis is always survival probability on `[0, 1]`.
pub fn render_plot(series: &[Series], x_label: &str) -> Result<String, CliError> {
    if series.iter().all(|s| s.points.is_empty()) {
        return Err(CliError::Config("cannot plot an empty curve".into()));
    }
    let xs = series.iter().flat_map(|s| s.points.iter().map(|p| p.0));
    let (mut x0, mut x1) = xs.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), x| {
        (lo.min(x), hi.max(x))
    });
    if x1 - x0 < 1e-12 {
        x0 -= 1.0;
        x1 += 1.0;
    }
    let plot_w = WIDTH - LEFT - RIGHT;
    let plot_h = HEIGHT - TOP - BOTTOM;
    let sx = |x: f64| LEFT + (x - x0) / (x1 - x0) * plot_w;
    let sy = |y: f64| TOP + (1.0 - y.clamp(-0.05, 1.05)) * plot_h;

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(s, r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<rect x="{LEFT}" y="{TOP}" width="{plot_w}" height="{plot_h}" fill="none" stroke="black"/>"#
    );
    for i in 0..=5 {
        let y = i as f64 / 5.0;
        let py = sy(y);
        let _ = writeln!(
            s,
            r##"<line x1="{LEFT}" y1="{py:.2}" x2="{:.2}" y2="{py:.2}" stroke="#dddddd"/><text x="{:.2}" y="{:.2}" text-anchor="end">{y:.1}</text>"##,
            LEFT + plot_w,
            LEFT - 6.0,
            py + 4.0
        );
    }
    for x in x_ticks(x0, x1) {
        let px = sx(x);
        let _ = writeln!(
            s,
            r#"<line x1="{px:.2}" y1="{:.2}" x2="{px:.2}" y2="{:.2}" stroke="black"/><text x="{px:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
            TOP + plot_h,
            TOP + plot_h + 5.0,
            TOP + plot_h + 18.0,
            trim_tick(x)
        );
    }
    let _ = writeln!(
        s,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
        LEFT + plot_w / 2.0,
        HEIGHT - 18.0,
        escape(x_label)
    );
    let _ = writeln!(
        s,
        r#"<text transform="translate(18 {:.2}) rotate(-90)" text-anchor="middle">survival probability</text>"#,
        TOP + plot_h / 2.0
    );
    for (i, series) in series.iter().enumerate() {
        let color = COLORS[i % COLORS.len()];
        if series.points.len() > 1 {
            let path: Vec<String> = series
                .points
                .iter()
                .map(|&(x, y, _)| format!("{:.2},{:.2}", sx(x), sy(y)))
                .collect();
            let _ = writeln!(
                s,
                r#"<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{}"/>"#,
                path.join(" ")
            );
        }
        if series.markers || series.points.len() == 1 {
            for &(x, y, e) in &series.points {
                let (px, py) = (sx(x), sy(y));
                if e > 0.0 {
                    let _ = writeln!(
                        s,
                        r#"<line x1="{px:.2}" y1="{:.2}" x2="{px:.2}" y2="{:.2}" stroke="{color}"/>"#,
                        sy(y - e),
                        sy(y + e)
                    );
                }
                let _ = writeln!(
                    s,
                    r#"<circle cx="{px:.2}" cy="{py:.2}" r="3" fill="{color}"/>"#
                );
            }
        }
        let ly = TOP + 14.0 + 16.0 * i as f64;
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{ly:.2}" text-anchor="end" fill="{color}">{}</text>"#,
            LEFT + plot_w - 8.0,
            escape(&series.label)
        );
    }
    s.push_str("</svg>\n");
    Ok(s)
}

fn x_ticks(x0: f64, x1: f64) -> Vec<f64> {
    let raw = (x1 - x0) / 6.0;
    let mag = 10f64.powf(raw.log10().floor());
    let step = [1.0, 2.0, 5.0, 10.0]
        .iter()
        .map(|f| f * mag)
        .find(|&s| s >= raw)
        .unwrap_or(10.0 * mag);
    let mut t = (x0 / step).ceil() * step;
    let mut out = Vec::new();
    while t <= x1 + 1e-9 * step {
        out.push(t);
        t += step;
    }
    out
}

fn trim_tick(x: f64) -> String {
    if (x - x.round()).abs() < 1e-9 {
        format!("{}", x.round() as i64)
    } else {
        format!("{x:.2}")
    }
}
