use std::f64::consts::FRAC_1_SQRT_2;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::curves::{
    fixture_great_circle, fixture_latitude_circle, fixture_paper_example, CurveSource, Domain,
};
use crate::expr::parse_triple;
use crate::linalg3::Vec3;
use crate::smarandache::SmarandacheKind;

use super::CliError;

#[derive(Debug, Parser)]
#[command(
    name = "sabban",
    version,
    about = "Sabban frames, geodesic curvature and Smarandache curves on the unit sphere"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, PartialEq, Subcommand)]
pub enum Command {
    /// Sample the Sabban frame and geodesic curvature
    Frame(#[command(flatten)] CommonArgs),
    /// Sample a Smarandache curve and its invariants
    Generate(#[command(flatten)] CommonArgs),
    /// Compare closed forms against the definitional computation
    Verify(#[command(flatten)] CommonArgs),
    /// Render an orthographic SVG projection
    Plot(#[command(flatten)] CommonArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Frame(_) => "frame",
            Command::Generate(_) => "generate",
            Command::Verify(_) => "verify",
            Command::Plot(_) => "plot",
        }
    }

    pub fn args(&self) -> &CommonArgs {
        match self {
            Command::Frame(a) | Command::Generate(a) | Command::Verify(a) | Command::Plot(a) => a,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
    Svg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Plane {
    #[default]
    Xy,
    Xz,
    Yz,
}

impl Plane {
    pub fn project(self, v: Vec3) -> (f64, f64) {
        match self {
            Plane::Xy => (v.x, v.y),
            Plane::Xz => (v.x, v.z),
            Plane::Yz => (v.y, v.z),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Args)]
pub struct CommonArgs {
    /// Built-in curve: great-circle, latitude[:R], paper-example
    #[arg(long, conflicts_with = "expr")]
    pub fixture: Option<String>,
    /// Curve as "fx;fy;fz" in the parameter s
    #[arg(long)]
    pub expr: Option<String>,
    /// Parameter domain A:B
    #[arg(long, allow_hyphen_values = true)]
    pub domain: Option<String>,
    /// Number of samples
    #[arg(long)]
    pub n: Option<usize>,
    /// Smarandache kind
    #[arg(long, value_parser = parse_kind)]
    pub kind: Option<SmarandacheKind>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Output path (standard output when omitted)
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Finite-difference step (default 1e-4 × domain length)
    #[arg(long)]
    pub fd_step: Option<f64>,
    /// Verdict tolerance
    #[arg(long)]
    pub tol: Option<f64>,
    /// Projection plane for plots
    #[arg(long, value_enum)]
    pub plane: Option<Plane>,
}

fn parse_kind(s: &str) -> Result<SmarandacheKind, String> {
    s.parse()
}

/// Where the curve came from, echoed into output metadata.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CurveSelector {
    Fixture(String),
    Expr(String),
}

/// Validated invocation settings.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub selector: CurveSelector,
    pub curve: CurveSource,
    pub samples: usize,
    pub kind: Option<SmarandacheKind>,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub tolerance: f64,
    pub plane: Plane,
}

impl RunConfig {
    pub fn from_command(cmd: &Command) -> Result<Self, CliError> {
        let args = cmd.args();
        let (default_n, default_format, allowed): (usize, Format, &[Format]) = match cmd {
            Command::Frame(_) => (101, Format::Csv, &[Format::Csv, Format::Json]),
            Command::Generate(_) => (101, Format::Csv, &[Format::Csv, Format::Json]),
            Command::Verify(_) => (64, Format::Json, &[Format::Json]),
            Command::Plot(_) => (400, Format::Svg, &[Format::Svg]),
        };
        let format = args.format.unwrap_or(default_format);
        if !allowed.contains(&format) {
            return Err(CliError::Config(format!(
                "`{}` does not support --format {:?}",
                cmd.name(),
                format
            )));
        }
        let samples = args.n.unwrap_or(default_n);
        if samples < 2 {
            return Err(CliError::Config(format!(
                "--n must be at least 2, got {samples}"
            )));
        }
        if matches!(cmd, Command::Generate(_)) && args.kind.is_none() {
            return Err(CliError::Config("`generate` requires --kind".into()));
        }
        let tolerance = match args.tol {
            Some(t) if !(t > 0.0 && t.is_finite()) => {
                return Err(CliError::Config(format!("--tol must be positive, got {t}")))
            }
            Some(t) => t,
            None => crate::smarandache::CONSISTENCY_TOL,
        };
        let domain = args.domain.as_deref().map(parse_domain).transpose()?;
        let (selector, mut curve) = match (&args.fixture, &args.expr) {
            (_, Some(expr)) => {
                let domain = domain.ok_or_else(|| CliError::Config("--expr requires --domain".into()))?;
                (CurveSelector::Expr(expr.clone()), expr_curve(expr, domain)?)
            }
            (Some(name), None) => (CurveSelector::Fixture(name.clone()), fixture(name)?),
            (None, None) => return Err(CliError::Config("one of --fixture or --expr is required".into())),
        };
        if let (Some(d), CurveSelector::Fixture(_)) = (domain, &selector) {
            curve = curve.with_domain(d);
        }
        if let Some(h) = args.fd_step {
            curve = curve
                .with_fd_step(h)
                .map_err(|e| CliError::Config(e.to_string()))?;
        }
        Ok(RunConfig {
            selector,
            curve,
            samples,
            kind: args.kind,
            format,
            out: args.out.clone(),
            tolerance,
            plane: args.plane.unwrap_or_default(),
        })
    }
}

pub fn parse_domain(text: &str) -> Result<Domain, CliError> {
    let bad = || CliError::Config(format!("invalid --domain `{text}` (expected A:B with A < B)"));
    let (a, b) = text.split_once(':').ok_or_else(bad)?;
    let a: f64 = a.trim().parse().map_err(|_| bad())?;
    let b: f64 = b.trim().parse().map_err(|_| bad())?;
    Domain::new(a, b).map_err(|_| bad())
}

pub fn fixture(name: &str) -> Result<CurveSource, CliError> {
    match name {
        "great-circle" => Ok(fixture_great_circle()),
        "paper-example" => Ok(fixture_paper_example()),
        "latitude" => Ok(fixture_latitude_circle(FRAC_1_SQRT_2).expect("valid radius")),
        other => {
            if let Some(r) = other.strip_prefix("latitude:") {
                let r: f64 = r
                    .parse()
                    .map_err(|_| CliError::Config(format!("invalid latitude radius `{r}`")))?;
                return fixture_latitude_circle(r).map_err(|e| CliError::Config(e.to_string()));
            }
            Err(CliError::Config(format!(
                "unknown fixture `{other}` (expected great-circle, latitude[:R] or paper-example)"
            )))
        }
    }
}

pub fn expr_curve(text: &str, domain: Domain) -> Result<CurveSource, CliError> {
    let [fx, fy, fz] = parse_triple(text).map_err(|e| CliError::Config(format!("--expr: {e}")))?;
    let curve = CurveSource::new("expr", domain, move |s| {
        Ok(Vec3::new(fx.eval(s), fy.eval(s), fz.eval(s)))
    });
    curve
        .check_on_sphere(1000)
        .map_err(|e| CliError::Config(format!("--expr: {e}")))?;
    Ok(curve)
}
