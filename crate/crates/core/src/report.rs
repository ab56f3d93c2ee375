//! CSV, SVG and JSON writers.

use serde::Serialize;
use std::f64::consts::PI;
use std::fmt::Write as _;
use std::io::{self, Write};

use crate::analysis::{CaseReport, ExtremumResult};
use crate::bloch::{CartesianVector, EulerAngles};
use crate::propagation::ErrorSeries;

pub const SCHEMA_VERSION: u32 = 1;

/// Values below this print as `≈0`.
pub const DISPLAY_ZERO: f64 = 1e-6;

pub const AZIMUTH_COLOR: &str = "#1f77b4";
pub const ELEVATION_COLOR: &str = "#ff7f0e";

/// Seventeen significant digits in scientific notation.
pub fn format_float(v: f64) -> String {
    format!("{v:.16e}")
}

/// Human-readable radians.
pub fn display_radians(v: f64) -> String {
    if v.abs() < DISPLAY_ZERO {
        "≈0".to_string()
    } else {
        format!("{v:.10}")
    }
}

pub fn write_series_csv(mut w: impl Write, series: &ErrorSeries) -> io::Result<()> {
    w.write_all(b"t,delta_az,delta_el\n")?;
    for s in series.samples() {
        writeln!(
            w,
            "{},{},{}",
            format_float(s.t),
            format_float(s.delta_az),
            format_float(s.delta_el)
        )?;
    }
    w.flush()
}

/// Both discrepancy curves on a `[0, pi]` axis.
pub fn write_series_svg(mut w: impl Write, series: &ErrorSeries, title: &str) -> io::Result<()> {
    const WIDTH: f64 = 800.0;
    const HEIGHT: f64 = 420.0;
    const LEFT: f64 = 60.0;
    const RIGHT: f64 = 20.0;
    const TOP: f64 = 40.0;
    const BOTTOM: f64 = 50.0;
    let plot_w = WIDTH - LEFT - RIGHT;
    let plot_h = HEIGHT - TOP - BOTTOM;

    let (t0, t1) = match (series.first(), series.last()) {
        (Some(a), Some(b)) if b.t > a.t => (a.t, b.t),
        (Some(a), _) => (a.t, a.t + 1.0),
        _ => (0.0, 1.0),
    };
    let x = |t: f64| LEFT + (t - t0) / (t1 - t0) * plot_w;
    let y = |d: f64| TOP + (1.0 - d / PI) * plot_h;
    let polyline = |pick: fn(&crate::propagation::Sample) -> f64| {
        let mut pts = String::new();
        for s in series.samples() {
            let _ = write!(pts, "{:.2},{:.2} ", x(s.t), y(pick(s)));
        }
        pts.trim_end().to_string()
    };

    writeln!(
        w,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    )?;
    writeln!(w, r#"<rect width="100%" height="100%" fill="white"/>"#)?;
    writeln!(
        w,
        r#"<text x="{}" y="24" text-anchor="middle" font-family="sans-serif" font-size="16">{}</text>"#,
        WIDTH / 2.0,
        escape(title)
    )?;
    writeln!(
        w,
        r#"<g stroke="black" stroke-width="1"><line x1="{LEFT}" y1="{b}" x2="{r}" y2="{b}"/><line x1="{LEFT}" y1="{TOP}" x2="{LEFT}" y2="{b}"/></g>"#,
        b = TOP + plot_h,
        r = LEFT + plot_w
    )?;
    writeln!(w, r#"<g font-family="sans-serif" font-size="12">"#)?;
    for (d, label) in [(0.0, "0"), (PI / 2.0, "π/2"), (PI, "π")] {
        writeln!(
            w,
            r#"<text x="{}" y="{:.2}" text-anchor="end">{label}</text>"#,
            LEFT - 6.0,
            y(d) + 4.0
        )?;
    }
    for t in [t0, 0.5 * (t0 + t1), t1] {
        writeln!(
            w,
            r#"<text x="{:.2}" y="{}" text-anchor="middle">{}</text>"#,
            x(t),
            TOP + plot_h + 18.0,
            trim_number(t)
        )?;
    }
    writeln!(
        w,
        r#"<text x="{}" y="{}" text-anchor="middle">t</text>"#,
        LEFT + plot_w / 2.0,
        HEIGHT - 8.0
    )?;
    writeln!(
        w,
        r#"<text x="{}" y="{}" fill="{AZIMUTH_COLOR}">Δ azimuth</text><text x="{}" y="{}" fill="{ELEVATION_COLOR}">Δ elevation</text>"#,
        LEFT + 10.0,
        TOP - 6.0,
        LEFT + 110.0,
        TOP - 6.0
    )?;
    writeln!(w, "</g>")?;
    writeln!(
        w,
        r#"<polyline fill="none" stroke="{AZIMUTH_COLOR}" stroke-width="1.5" points="{}"/>"#,
        polyline(|s| s.delta_az)
    )?;
    writeln!(
        w,
        r#"<polyline fill="none" stroke="{ELEVATION_COLOR}" stroke-width="1.5" points="{}"/>"#,
        polyline(|s| s.delta_el)
    )?;
    writeln!(w, "</svg>")?;
    w.flush()
}

fn trim_number(v: f64) -> String {
    let s = format!("{v:.3}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s.is_empty() || s == "-" {
        "0".into()
    } else {
        s.into()
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

#[derive(Debug, Clone, Serialize)]
pub struct SeriesReport<'a> {
    pub schema_version: u32,
    pub samples: &'a ErrorSeries,
}

impl<'a> SeriesReport<'a> {
    pub fn new(samples: &'a ErrorSeries) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            samples,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ExtremaReport {
    pub schema_version: u32,
    pub base_vector: CartesianVector,
    pub angles: EulerAngles,
    pub seed: u64,
    pub num_starts: usize,
    pub extrema: Vec<ExtremumResult>,
}

impl ExtremaReport {
    pub fn new(
        base_vector: CartesianVector,
        angles: EulerAngles,
        seed: u64,
        num_starts: usize,
        extrema: Vec<ExtremumResult>,
    ) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            base_vector,
            angles,
            seed,
            num_starts,
            extrema,
        }
    }
}

pub fn write_extrema_csv(mut w: impl Write, extrema: &[ExtremumResult]) -> io::Result<()> {
    w.write_all(b"mode,target,value,eps_x,eps_y,eps_z,t\n")?;
    for e in extrema {
        writeln!(
            w,
            "{},{},{},{},{},{},{}",
            match e.kind.mode {
                crate::analysis::Mode::Max => "max",
                crate::analysis::Mode::Min => "min",
            },
            e.kind.target.label(),
            format_float(e.value),
            format_float(e.at.err.eps_x),
            format_float(e.at.err.eps_y),
            format_float(e.at.err.eps_z),
            format_float(e.at.t)
        )?;
    }
    w.flush()
}

/// One row of the case-study summary.
#[derive(Debug, Clone, Serialize)]
pub struct CaseSummary {
    pub label: String,
    pub angles: EulerAngles,
    pub stated_period: Option<f64>,
    pub analytic_period: f64,
    pub numeric_period: f64,
    pub max_az: f64,
    pub max_el: f64,
    pub min_az: f64,
    pub min_el: f64,
}

impl From<&CaseReport> for CaseSummary {
    fn from(r: &CaseReport) -> Self {
        Self {
            label: r.label.clone(),
            angles: r.angles,
            stated_period: r.stated_period,
            analytic_period: r.analytic_period,
            numeric_period: r.numeric_period,
            max_az: r.max_az.value,
            max_el: r.max_el.value,
            min_az: r.min_az.value,
            min_el: r.min_el.value,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CasesReport {
    pub schema_version: u32,
    pub seed: u64,
    pub num_starts: usize,
    pub cases: Vec<CaseSummary>,
}

pub fn write_cases_csv(mut w: impl Write, cases: &[CaseSummary]) -> io::Result<()> {
    w.write_all(
        b"label,phi,theta,psi,analytic_period,numeric_period,max_az,max_el,min_az,min_el\n",
    )?;
    for c in cases {
        let cols = [
            c.angles.phi,
            c.angles.theta,
            c.angles.psi,
            c.analytic_period,
            c.numeric_period,
            c.max_az,
            c.max_el,
            c.min_az,
            c.min_el,
        ];
        let cols: Vec<String> = cols.iter().map(|v| format_float(*v)).collect();
        writeln!(w, "{},{}", c.label, cols.join(","))?;
    }
    w.flush()
}

pub fn write_json(mut w: impl Write, value: &impl Serialize) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut w, value)?;
    w.write_all(b"\n")?;
    w.flush()
}
