//! The `sabban` command-line surface.
//!
//! ```text
//! sabban <frame|generate|verify|plot> [--fixture NAME | --expr "fx;fy;fz"]
//!        [--domain A:B] [--n INT] [--kind gt|td|gtd] [--format csv|json|svg]
//!        [--out PATH] [--fd-step REAL] [--tol REAL] [--plane xy|xz|yz]
//! ```
//!
//! Exit codes: 0 success, 2 configuration error, 3 numerical failure.

mod config;
mod output;
mod plot;

use std::ffi::OsString;
use std::io::Write;

use clap::Parser;
use serde::Serialize;
use thiserror::Error;

use crate::curves::{is_unit_speed, CurveSource, SPHERE_TOL};
use crate::frame::{
    frame_sample, geodesic_curvature, kappa_prime, sabban_frame, verify_sabban_odes, FRAME_TOL,
    UNIT_SPEED_TOL,
};
use crate::numerics::uniform_grid;
use crate::smarandache::{
    erratum_report, kappa_beta_closed_paper, report_grid, smarandache_point, speed_ratio,
    DefinitionalPipeline, ErratumReport, PipelineOptions, ReportOptions, SmarandacheKind,
};

pub use config::{parse_domain, Cli, Command, CommonArgs, CurveSelector, Format, Plane, RunConfig};
pub use output::{csv_table, FRAME_COLUMNS, GENERATE_COLUMNS};
pub use plot::render_svg;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

/// Largest Sabban ODE residual accepted by `verify`.
pub const ODE_RESIDUAL_TOL: f64 = 1e-4;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("numerical failure: {0}")]
    Numerical(#[from] crate::Error),
    #[error("cannot write output: {0}")]
    Io(#[from] std::io::Error),
    /// The report was written but a definitional-vs-derived check failed.
    #[error("verification failed: {0}")]
    Verification(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) | CliError::Io(_) => EXIT_CONFIG,
            CliError::Numerical(_) | CliError::Verification(_) => EXIT_NUMERICAL,
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
/// Output without `--out` goes to `stdout`; diagnostics to `stderr`.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(stderr, "{rendered}")
            } else {
                write!(stdout, "{rendered}")
            };
            return code;
        }
    };
    match execute(&cli.command, stdout, stderr) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(stderr, "sabban: {e}");
            e.exit_code()
        }
    }
}

pub fn execute(cmd: &Command, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<(), CliError> {
    let config = RunConfig::from_command(cmd)?;
    let (body, outcome) = match cmd {
        Command::Frame(_) => (cmd_frame(&config, stderr)?, Ok(())),
        Command::Generate(_) => (cmd_generate(&config)?, Ok(())),
        Command::Verify(_) => cmd_verify(&config)?,
        Command::Plot(_) => (cmd_plot(&config)?, Ok(())),
    };
    match &config.out {
        Some(path) => std::fs::write(path, body.as_bytes())?,
        None => stdout.write_all(body.as_bytes())?,
    }
    outcome
}

#[derive(Debug, Clone, Serialize)]
pub struct Tolerances {
    pub schema: u32,
    pub consistency: f64,
    pub unit_speed: f64,
    pub frame_orthogonality: f64,
    pub sphere: f64,
    pub ode_residual: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct Meta {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'static str,
    pub curve: CurveSelector,
    pub domain: [f64; 2],
    pub n: usize,
    pub kind: Option<SmarandacheKind>,
    pub fd_step: f64,
    pub tolerances: Tolerances,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degraded_stencils: Option<usize>,
}

fn meta(command: &'static str, config: &RunConfig) -> Meta {
    let d = config.curve.domain();
    Meta {
        tool: "sabban",
        version: env!("CARGO_PKG_VERSION"),
        command,
        curve: config.selector.clone(),
        domain: [d.start, d.end],
        n: config.samples,
        kind: config.kind,
        fd_step: config.curve.fd_step(),
        tolerances: Tolerances {
            schema: 1,
            consistency: config.tolerance,
            unit_speed: UNIT_SPEED_TOL,
            frame_orthogonality: FRAME_TOL,
            sphere: SPHERE_TOL,
            ode_residual: ODE_RESIDUAL_TOL,
        },
        degraded_stencils: None,
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data serializes");
    s.push('\n');
    s
}

#[derive(Serialize)]
struct Document<'a, T: Serialize> {
    meta: &'a Meta,
    rows: &'a [T],
}

/// `s, gx, gy, gz, tx, ty, tz, dx, dy, dz, kappa_g, kappa_g_prime`
pub fn cmd_frame(config: &RunConfig, stderr: &mut dyn Write) -> Result<String, CliError> {
    let curve = &config.curve;
    let mut rows = Vec::with_capacity(config.samples);
    let mut degraded = 0;
    for s in curve.domain().grid(config.samples) {
        let sample = frame_sample(curve, s)?;
        if sample.stencil.is_degraded() {
            degraded += 1;
        }
        let f = sample.frame;
        let (g, t, d) = (f.gamma().get(), f.tangent().get(), f.normal().get());
        rows.push([
            s,
            g.x,
            g.y,
            g.z,
            t.x,
            t.y,
            t.z,
            d.x,
            d.y,
            d.z,
            sample.kappa_g,
            sample.kappa_g_prime,
        ]);
    }
    if degraded > 0 {
        let _ = writeln!(
            stderr,
            "sabban: note: kappa_g_prime used a shortened stencil at {degraded} sample(s) near the domain ends"
        );
    }
    let mut meta = meta("frame", config);
    meta.degraded_stencils = Some(degraded);
    Ok(match config.format {
        Format::Json => to_json(&Document {
            meta: &meta,
            rows: &output::records(&FRAME_COLUMNS, &rows),
        }),
        _ => csv_table(&FRAME_COLUMNS, &rows),
    })
}

/// `s, s_star, bx, by, bz, speed_ratio, kappa_beta_definitional, kappa_beta_paper`
pub fn cmd_generate(config: &RunConfig) -> Result<String, CliError> {
    let kind = config
        .kind
        .ok_or_else(|| CliError::Config("`generate` requires --kind".into()))?;
    let curve = &config.curve;
    let pipeline = DefinitionalPipeline::new(kind, curve, PipelineOptions::default())?;
    let grid = curve.domain().interior_grid(config.samples, 2.0 * curve.fd_step());
    let mut rows = Vec::with_capacity(grid.len());
    for s in grid {
        let frame = sabban_frame(curve, s)?;
        let k = geodesic_curvature(curve, s)?;
        let kp = kappa_prime(curve, s)?;
        let beta = smarandache_point(kind, &frame).get();
        rows.push([
            s,
            pipeline.s_star(s)?,
            beta.x,
            beta.y,
            beta.z,
            speed_ratio(kind, k),
            pipeline.kappa_beta(s)?,
            kappa_beta_closed_paper(kind, k, kp),
        ]);
    }
    let meta = meta("generate", config);
    Ok(match config.format {
        Format::Json => to_json(&Document {
            meta: &meta,
            rows: &output::records(&GENERATE_COLUMNS, &rows),
        }),
        _ => csv_table(&GENERATE_COLUMNS, &rows),
    })
}

/// Definitional checks on the source curve itself.
#[derive(Debug, Clone, Serialize)]
pub struct SabbanSuite {
    pub max_unit_speed_defect: f64,
    pub max_frame_defect: f64,
    pub max_ode_residual: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub curve: String,
    pub samples: Vec<f64>,
    pub sabban: SabbanSuite,
    pub kinds: Vec<ErratumReport>,
    /// Every definitional-vs-derived check passed; decides the exit status.
    pub derived_checks_pass: bool,
    /// Every published form was found consistent. Informational only.
    pub paper_forms_consistent: bool,
}

fn sabban_suite(curve: &CurveSource, grid: &[f64]) -> Result<SabbanSuite, CliError> {
    let speed = is_unit_speed(curve, grid.len().max(2), UNIT_SPEED_TOL)?;
    let mut frame_defect: f64 = 0.0;
    for &s in grid {
        let f = sabban_frame(curve, s)?;
        frame_defect = frame_defect
            .max(f.orthogonality_defect())
            .max((f.handedness() - 1.0).abs());
    }
    let residual = verify_sabban_odes(curve, grid)?.max();
    Ok(SabbanSuite {
        max_unit_speed_defect: speed.max_defect,
        max_frame_defect: frame_defect,
        max_ode_residual: residual,
        pass: speed.unit_speed && frame_defect <= FRAME_TOL && residual <= ODE_RESIDUAL_TOL,
    })
}

pub fn verify_report(config: &RunConfig) -> Result<VerifyReport, CliError> {
    let curve = &config.curve;
    let grid = report_grid(curve, config.samples);
    let kinds: Vec<SmarandacheKind> = match config.kind {
        Some(k) => vec![k],
        None => SmarandacheKind::ALL.to_vec(),
    };
    let options = ReportOptions {
        tolerance: config.tolerance,
        pipeline: PipelineOptions::default(),
    };
    let sabban = sabban_suite(curve, &grid)?;
    let reports = kinds
        .into_iter()
        .map(|kind| erratum_report(kind, curve, &grid, options))
        .collect::<Result<Vec<_>, _>>()?;
    let derived = sabban.pass && reports.iter().all(ErratumReport::derived_checks_pass);
    let paper = reports.iter().all(|r| {
        r.checks
            .iter()
            .all(|c| c.verdict == crate::smarandache::Verdict::Consistent)
    });
    Ok(VerifyReport {
        curve: curve.name().to_string(),
        samples: grid,
        sabban,
        kinds: reports,
        derived_checks_pass: derived,
        paper_forms_consistent: paper,
    })
}

/// Returns the JSON body and whether the definitional checks passed.
pub fn cmd_verify(config: &RunConfig) -> Result<(String, Result<(), CliError>), CliError> {
    #[derive(Serialize)]
    struct VerifyDocument<'a> {
        meta: &'a Meta,
        report: &'a VerifyReport,
    }
    let report = verify_report(config)?;
    let meta = meta("verify", config);
    let body = to_json(&VerifyDocument {
        meta: &meta,
        report: &report,
    });
    let outcome = if report.derived_checks_pass {
        Ok(())
    } else {
        Err(CliError::Verification(
            "a definitional-vs-derived check exceeded its tolerance".into(),
        ))
    };
    Ok((body, outcome))
}

pub fn cmd_plot(config: &RunConfig) -> Result<String, CliError> {
    let curve = &config.curve;
    let d = curve.domain();
    let params = uniform_grid(d.start, d.end, config.samples);
    let (target, title) = match config.kind {
        Some(kind) => (
            crate::smarandache::generate(kind, curve)?,
            format!("{kind} Smarandache curve of {}", curve.name()),
        ),
        None => (curve.clone(), curve.name().to_string()),
    };
    let points = params
        .iter()
        .map(|&s| target.point(s).map(|p| config.plane.project(p)))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(render_svg(&title, config.plane, &points))
}

pub fn main_with_env() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}
