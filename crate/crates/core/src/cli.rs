//! Command-line front end.
//!
//! Exit status is 0 on success, 1 for invalid input or degenerate maths and
//! 2 when output cannot be written.

use clap::{Args, Parser, Subcommand, ValueEnum};
use std::ffi::OsString;
use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use crate::analysis::{
    builtin_cases, estimate_period, find_extremum_in, full_box, run_case_study,
    time_averaged_error_with, Mode, SearchOptions,
};
use crate::bloch::{CartesianVector, EulerAngles, VALIDATION_TOL};
use crate::expr::parse_triple;
use crate::propagation::{period, simulate_with, ClosedForm, ErrorAngles, Pipeline, Target};
use crate::quadrature::QuadratureOptions;
use crate::report::{
    display_radians, write_cases_csv, write_extrema_csv, write_json, write_series_csv,
    write_series_svg, CaseSummary, CasesReport, ExtremaReport, SeriesReport, SCHEMA_VERSION,
};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Triple(pub [f64; 3]);

fn triple(s: &str) -> Result<Triple, String> {
    parse_triple(s).map(Triple).map_err(|e| e.to_string())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Svg,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PipelineArg {
    Su2,
    Euler,
    Closed,
}

impl From<PipelineArg> for Pipeline {
    fn from(p: PipelineArg) -> Self {
        match p {
            PipelineArg::Su2 => Pipeline::Su2,
            PipelineArg::Euler => Pipeline::Euler,
            PipelineArg::Closed => Pipeline::ClosedForm,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TargetArg {
    Az,
    El,
}

impl From<TargetArg> for Target {
    fn from(t: TargetArg) -> Self {
        match t {
            TargetArg::Az => Target::Azimuth,
            TargetArg::El => Target::Elevation,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "blochprop",
    version,
    about = "Error propagation under repeated Bloch-sphere rotations"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Rotate a vector and its perturbed copy step by step.
    Simulate(SimulateArgs),
    /// Search for the extreme discrepancies over error angles and time.
    Extrema(ExtremaArgs),
    /// Analytic and numeric period of the discrepancy.
    Period(PeriodArgs),
    /// Run the built-in fixed-rate case studies.
    Cases(CasesArgs),
    /// Time-averaged discrepancy over one period.
    Average(AverageArgs),
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    /// Base unit vector `x,y,z`.
    #[arg(long = "vec", value_parser = triple, default_value = "1,0,0", allow_hyphen_values = true)]
    pub vec: Triple,
    /// Error angles `eps_x,eps_y,eps_z`.
    #[arg(long, value_parser = triple, default_value = "0,0.2,0", allow_hyphen_values = true)]
    pub err: Triple,
    /// Euler angles `phi,theta,psi` of one step.
    #[arg(long, value_parser = triple, default_value = "pi/100,pi/100,pi/100", allow_hyphen_values = true)]
    pub step: Triple,
    #[arg(long, default_value_t = 200)]
    pub steps: usize,
    #[arg(long, value_enum, default_value = "euler")]
    pub pipeline: PipelineArg,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    /// Output file; standard output when absent.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..))]
    pub starts: u64,
}

impl SearchArgs {
    fn options(&self) -> SearchOptions {
        SearchOptions::default().with_starts(self.starts as usize, self.seed)
    }
}

#[derive(Debug, Args)]
pub struct ExtremaArgs {
    #[arg(long = "vec", value_parser = triple, default_value = "1,0,0", allow_hyphen_values = true)]
    pub vec: Triple,
    /// Rotation rates `phi,theta,psi`.
    #[arg(long, value_parser = triple, default_value = "1,1,1", allow_hyphen_values = true)]
    pub angles: Triple,
    #[command(flatten)]
    pub search: SearchArgs,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct PeriodArgs {
    #[arg(long, value_parser = triple, default_value = "1,1,1", allow_hyphen_values = true)]
    pub angles: Triple,
    /// Error angles of the probe signal.
    #[arg(long, value_parser = triple, default_value = "0,0.2,0", allow_hyphen_values = true)]
    pub err: Triple,
    #[arg(long = "vec", value_parser = triple, default_value = "1,0,0", allow_hyphen_values = true)]
    pub vec: Triple,
    #[arg(long, value_enum, default_value = "el")]
    pub target: TargetArg,
}

#[derive(Debug, Args)]
pub struct CasesArgs {
    /// Directory for per-case series and the summary.
    #[arg(long, default_value = "cases")]
    pub output: PathBuf,
    #[command(flatten)]
    pub search: SearchArgs,
    /// Summary format.
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct AverageArgs {
    #[arg(long = "vec", value_parser = triple, default_value = "1,0,0", allow_hyphen_values = true)]
    pub vec: Triple,
    #[arg(long, value_parser = triple, default_value = "0,0.2,0", allow_hyphen_values = true)]
    pub err: Triple,
    #[arg(long, value_parser = triple, default_value = "1,1,1", allow_hyphen_values = true)]
    pub angles: Triple,
    /// Absolute quadrature tolerance.
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
}

#[derive(Debug)]
pub enum Failure {
    Input(String),
    Io(String),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Input(_) => 1,
            Failure::Io(_) => 2,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Input(m) | Failure::Io(m) => m,
        }
    }
}

impl From<crate::Error> for Failure {
    fn from(e: crate::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

fn io_failure(what: &Path) -> impl Fn(io::Error) -> Failure + '_ {
    move |e| Failure::Io(format!("cannot write {}: {e}", what.display()))
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    0
                }
                _ => {
                    let _ = write!(err, "{}", e.render());
                    1
                }
            };
        }
    };
    match execute(&cli.command, out) {
        Ok(()) => 0,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message());
            f.exit_code()
        }
    }
}

pub fn execute(command: &Command, out: &mut dyn Write) -> Result<(), Failure> {
    match command {
        Command::Simulate(a) => simulate(a, out),
        Command::Extrema(a) => extrema(a, out),
        Command::Period(a) => period_cmd(a, out),
        Command::Cases(a) => cases(a, out),
        Command::Average(a) => average(a, out),
    }
}

fn unit_vector(t: Triple) -> Result<CartesianVector, Failure> {
    let v = CartesianVector::from_array(t.0);
    v.ensure_unit(VALIDATION_TOL)?;
    Ok(v)
}

fn euler(t: Triple) -> EulerAngles {
    EulerAngles::new(t.0[0], t.0[1], t.0[2])
}

fn error_angles(t: Triple) -> ErrorAngles {
    ErrorAngles::new(t.0[0], t.0[1], t.0[2])
}

/// Runs `body` against the output file, or standard output when `path` is
/// `None`.
fn emit(
    path: Option<&Path>,
    out: &mut dyn Write,
    body: impl FnOnce(&mut dyn Write) -> io::Result<()>,
) -> Result<(), Failure> {
    match path {
        Some(p) => {
            let file = File::create(p).map_err(io_failure(p))?;
            let mut w = BufWriter::new(file);
            body(&mut w).map_err(io_failure(p))
        }
        None => body(out).map_err(io_failure(Path::new("standard output"))),
    }
}

fn simulate(a: &SimulateArgs, out: &mut dyn Write) -> Result<(), Failure> {
    let v = unit_vector(a.vec)?;
    let v_err = error_angles(a.err).perturb(v);
    let series = simulate_with(a.pipeline.into(), v, v_err, euler(a.step), a.steps)?;
    emit(a.output.as_deref(), out, |w| match a.format {
        Format::Csv => write_series_csv(w, &series),
        Format::Svg => write_series_svg(w, &series, "Δ azimuth and Δ elevation per step"),
        Format::Json => write_json(w, &SeriesReport::new(&series)),
    })
}

fn extrema(a: &ExtremaArgs, out: &mut dyn Write) -> Result<(), Failure> {
    if a.format == Format::Svg {
        return Err(Failure::Input(
            "extrema reports support csv and json only".into(),
        ));
    }
    let base = unit_vector(a.vec)?;
    let angles = euler(a.angles);
    let opts = a.search.options();
    let mut results = Vec::with_capacity(4);
    for (mode, target) in [
        (Mode::Max, Target::Elevation),
        (Mode::Max, Target::Azimuth),
        (Mode::Min, Target::Elevation),
        (Mode::Min, Target::Azimuth),
    ] {
        results.push(find_extremum_in(
            target,
            mode,
            base,
            angles,
            &full_box(),
            &opts,
        )?);
    }
    if a.output.is_some() {
        for r in &results {
            let mode = if r.kind.mode == Mode::Max {
                "max"
            } else {
                "min"
            };
            writeln!(
                out,
                "{mode} {} {}",
                r.kind.target.label(),
                display_radians(r.value)
            )
            .map_err(io_failure(Path::new("standard output")))?;
        }
    }
    let report = ExtremaReport::new(base, angles, opts.seed, opts.num_starts, results);
    emit(a.output.as_deref(), out, |w| match a.format {
        Format::Json => write_json(w, &report),
        _ => write_extrema_csv(w, &report.extrema),
    })
}

fn period_cmd(a: &PeriodArgs, out: &mut dyn Write) -> Result<(), Failure> {
    let angles = euler(a.angles);
    let analytic = period(angles)?;
    let model = ClosedForm::new(unit_vector(a.vec)?, error_angles(a.err), angles)?;
    let est = estimate_period(&model, a.target.into())?;
    let note = if est.degenerate {
        " (constant signal)"
    } else {
        ""
    };
    let stdout = Path::new("standard output");
    writeln!(out, "analytic_period {analytic:.16}").map_err(io_failure(stdout))?;
    writeln!(out, "numeric_period {:.16}{note}", est.period).map_err(io_failure(stdout))?;
    writeln!(out, "difference {:.3e}", (est.period - analytic).abs())
        .map_err(io_failure(stdout))?;
    Ok(())
}

fn cases(a: &CasesArgs, out: &mut dyn Write) -> Result<(), Failure> {
    if a.format == Format::Svg {
        return Err(Failure::Input(
            "case summaries support csv and json only".into(),
        ));
    }
    let opts = a.search.options();
    fs::create_dir_all(&a.output).map_err(io_failure(&a.output))?;
    let stdout = Path::new("standard output");
    writeln!(
        out,
        "{:<11} {:>27} {:>12} {:>12} {:>12} {:>12} {:>12} {:>12}",
        "case", "phi,theta,psi", "period", "numeric", "max_az", "max_el", "min_az", "min_el"
    )
    .map_err(io_failure(stdout))?;
    let mut summaries = Vec::new();
    for spec in builtin_cases() {
        let report = run_case_study(&spec, &opts)?;
        let csv = a.output.join(format!("{}.csv", report.label));
        emit(Some(&csv), out, |w| write_series_csv(w, &report.series))?;
        let svg = a.output.join(format!("{}.svg", report.label));
        emit(Some(&svg), out, |w| {
            write_series_svg(w, &report.series, &report.label)
        })?;
        let s = CaseSummary::from(&report);
        writeln!(
            out,
            "{:<11} {:>27} {:>12.10} {:>12.10} {:>12} {:>12} {:>12} {:>12}",
            s.label,
            format!(
                "{:.6},{:.6},{:.6}",
                s.angles.phi, s.angles.theta, s.angles.psi
            ),
            s.analytic_period,
            s.numeric_period,
            display_radians(s.max_az),
            display_radians(s.max_el),
            display_radians(s.min_az),
            display_radians(s.min_el)
        )
        .map_err(io_failure(stdout))?;
        summaries.push(s);
    }
    match a.format {
        Format::Json => {
            let report = CasesReport {
                schema_version: SCHEMA_VERSION,
                seed: opts.seed,
                num_starts: opts.num_starts,
                cases: summaries,
            };
            emit(Some(&a.output.join("summary.json")), out, |w| {
                write_json(w, &report)
            })
        }
        _ => emit(Some(&a.output.join("summary.csv")), out, |w| {
            write_cases_csv(w, &summaries)
        }),
    }
}

fn average(a: &AverageArgs, out: &mut dyn Write) -> Result<(), Failure> {
    if !(a.tol.is_finite() && a.tol > 0.0) {
        return Err(Failure::Input(format!(
            "tolerance must be positive, got {}",
            a.tol
        )));
    }
    let model = ClosedForm::new(unit_vector(a.vec)?, error_angles(a.err), euler(a.angles))?;
    let opts = QuadratureOptions {
        abs_tol: a.tol,
        ..Default::default()
    };
    let stdout = Path::new("standard output");
    for target in [Target::Azimuth, Target::Elevation] {
        let avg = time_averaged_error_with(&model, target, &opts)?;
        writeln!(out, "{} {:.15}", target.label(), avg.value).map_err(io_failure(stdout))?;
    }
    Ok(())
}
