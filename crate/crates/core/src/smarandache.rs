//! `γt`, `td` and `γtd` Smarandache curves of a unit-speed spherical curve.
//!
//! A Smarandache curve `β` is a fixed unit-weight combination of the Sabban
//! frame of `γ`. Its own Sabban invariants are available three ways:
//!
//! * the printed closed forms ([`LambdaTriple::printed`],
//!   [`d_beta_printed`], [`kappa_beta_closed_paper`]), evaluated verbatim;
//! * closed forms re-derived with the product rule and the frame equations
//!   ([`LambdaTriple::derived`], [`d_beta_derived`], [`kappa_beta_derived`]);
//! * the definitional pipeline ([`DefinitionalPipeline`]): build `β`,
//!   reparameterize it by arc length and apply the Sabban definitions to it.
//!
//! [`erratum_report`] compares the first two against the third.

use std::f64::consts::{FRAC_1_SQRT_2, SQRT_2};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::curves::{ArcLengthReparam, CurveSource, DEFAULT_TABLE_NODES};
use crate::frame::{geodesic_curvature, kappa_prime, sabban_frame, SabbanFrame};
use crate::linalg3::{cross, normalize, UnitVec3, Vec3};
use crate::numerics::{default_step, guarded_difference, Domain};
use crate::{Error, Result};

const SQRT_3: f64 = 1.732_050_807_568_877_2;

/// Default verdict tolerance: a formula is CONSISTENT iff its max gap is
/// at most this.
pub const CONSISTENCY_TOL: f64 = 1e-5;

/// Number of interior samples in an erratum report.
pub const REPORT_SAMPLES: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SmarandacheKind {
    /// `β = (γ + t)/√2`
    Gt,
    /// `β = (t + d)/√2`
    Td,
    /// `β = (γ + t + d)/√3`
    Gtd,
}

impl SmarandacheKind {
    pub const ALL: [SmarandacheKind; 3] = [SmarandacheKind::Gt, SmarandacheKind::Td, SmarandacheKind::Gtd];

    /// Weights over `(γ, t, d)`; always of unit norm.
    pub fn weights(self) -> [f64; 3] {
        let r = FRAC_1_SQRT_2;
        let q = 1.0 / SQRT_3;
        match self {
            SmarandacheKind::Gt => [r, r, 0.0],
            SmarandacheKind::Td => [0.0, r, r],
            SmarandacheKind::Gtd => [q, q, q],
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            SmarandacheKind::Gt => "gt",
            SmarandacheKind::Td => "td",
            SmarandacheKind::Gtd => "gtd",
        }
    }
}

impl fmt::Display for SmarandacheKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for SmarandacheKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "gt" => Ok(SmarandacheKind::Gt),
            "td" => Ok(SmarandacheKind::Td),
            "gtd" => Ok(SmarandacheKind::Gtd),
            other => Err(format!("unknown Smarandache kind `{other}` (expected gt, td or gtd)")),
        }
    }
}

/// Point of the Smarandache curve for a given frame.
pub fn smarandache_point(kind: SmarandacheKind, frame: &SabbanFrame) -> UnitVec3 {
    let v = frame.combine(kind.weights());
    UnitVec3::new(v).unwrap_or_else(|_| normalize(v, 0.5).expect("unit weights on an orthonormal frame"))
}

/// The Smarandache curve `s ↦ β(s)` over `c`'s domain, in `c`'s parameter.
///
/// `β` is generally not unit speed; reparameterize it with
/// [`crate::curves::reparameterize_unit_speed`] before taking its frame.
pub fn generate(kind: SmarandacheKind, c: &CurveSource) -> Result<CurveSource> {
    for s in c.domain().grid(65) {
        sabban_frame(c, s)?;
    }
    let w = kind.weights();
    let src = c.clone();
    let beta = CurveSource::new(format!("{kind}({})", c.name()), c.domain(), move |s| {
        Ok(sabban_frame(&src, s)?.combine(w))
    })
    .with_fd_step(c.fd_step())?;
    if !c.has_analytic_first() {
        return Ok(beta);
    }
    let src = c.clone();
    // β′ = w₀ t + w₁ t′ + w₂ d′ with t′ = γ″ and d′ = γ ∧ γ″.
    Ok(beta.with_derivative(move |s| {
        let frame = sabban_frame(&src, s)?;
        let acc = src.acceleration(s)?;
        Ok(frame.tangent().get() * w[0] + acc * w[1] + cross(frame.gamma().get(), acc) * w[2])
    }))
}

/// Squared norm of the unnormalized tangent combination, `N²(κ_g)`.
fn tangent_norm_sq(kind: SmarandacheKind, k: f64) -> f64 {
    match kind {
        SmarandacheKind::Gt => 2.0 + k * k,
        SmarandacheKind::Td => 1.0 + 2.0 * k * k,
        SmarandacheKind::Gtd => 2.0 * (1.0 - k + k * k),
    }
}

/// `ds*/ds` as a function of `κ_g`.
pub fn speed_ratio(kind: SmarandacheKind, kappa_g: f64) -> f64 {
    let k = kappa_g;
    match kind {
        SmarandacheKind::Gt => ((2.0 + k * k) / 2.0).sqrt(),
        SmarandacheKind::Td => ((1.0 + 2.0 * k * k) / 2.0).sqrt(),
        SmarandacheKind::Gtd => (2.0 * (1.0 - k + k * k) / 3.0).sqrt(),
    }
}

/// Unnormalized tangent coefficients over `(γ, t, d)`.
fn tangent_coeffs(kind: SmarandacheKind, k: f64) -> [f64; 3] {
    match kind {
        SmarandacheKind::Gt => [-1.0, 1.0, k],
        SmarandacheKind::Td => [-1.0, -k, k],
        SmarandacheKind::Gtd => [-1.0, 1.0 - k, k],
    }
}

/// `t_β` from the closed form in terms of the frame of `γ` and `κ_g`.
pub fn tangent_beta(kind: SmarandacheKind, frame: &SabbanFrame, kappa_g: f64) -> UnitVec3 {
    let v = frame.combine(tangent_coeffs(kind, kappa_g)) / tangent_norm_sq(kind, kappa_g).sqrt();
    UnitVec3::new(v).unwrap_or_else(|_| normalize(v, 0.5).expect("closed-form tangent is unit"))
}

/// `d_β = β ∧ t_β`, always by the cross product.
pub fn d_beta(kind: SmarandacheKind, frame: &SabbanFrame, kappa_g: f64) -> UnitVec3 {
    let beta = smarandache_point(kind, frame);
    let t = tangent_beta(kind, frame, kappa_g);
    let v = beta.cross(t);
    UnitVec3::new(v).unwrap_or_else(|_| normalize(v, 0.5).expect("cross of orthonormal pair"))
}

/// Coefficients `(λ₁, λ₂, λ₃)` of `dt_β/ds` over `(γ, t, d)`, up to the
/// factor `N⁻³` (see [`tangent_derivative_scale`]).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LambdaTriple {
    pub lambda1: f64,
    pub lambda2: f64,
    pub lambda3: f64,
}

impl LambdaTriple {
    pub fn as_array(&self) -> [f64; 3] {
        [self.lambda1, self.lambda2, self.lambda3]
    }

    /// The published polynomials, verbatim.
    pub fn printed(kind: SmarandacheKind, k: f64, kp: f64) -> Self {
        let (k2, k3, k4) = (k * k, k * k * k, k * k * k * k);
        let (lambda1, lambda2, lambda3) = match kind {
            SmarandacheKind::Gt => (
                k * kp - k2 - 2.0,
                -k * kp - 2.0 - 2.0 * k2 - k4,
                2.0 * k + 2.0 * kp + k3,
            ),
            SmarandacheKind::Td => (
                2.0 * k * kp + k + 2.0 * k3,
                -1.0 - kp - 3.0 * k2 - 2.0 * k4,
                -k2 + kp - 2.0 * k4,
            ),
            SmarandacheKind::Gtd => (
                -kp + 2.0 * k * kp - 2.0 + 4.0 * k - 4.0 * k2 + 2.0 * k3,
                -kp - k * kp - 2.0 - 4.0 * k2 + 2.0 * k + 2.0 * k3 - 2.0 * k4,
                -k * kp + 2.0 * k - 4.0 * k2 + 2.0 * kp + 4.0 * k3 - 2.0 * k4,
            ),
        };
        LambdaTriple {
            lambda1,
            lambda2,
            lambda3,
        }
    }

    /// Re-derived coefficients: differentiate `N · t_β` with the product
    /// rule, substitute `γ′ = t`, `t′ = −γ + κ_g d`, `d′ = −κ_g t`, and
    /// collect `N² V′ − N N′ V` over the frame.
    pub fn derived(kind: SmarandacheKind, k: f64, kp: f64) -> Self {
        let v = tangent_coeffs(kind, k);
        // V′ in the frame basis; V = a γ + b t + c d.
        let dv = {
            let (a, b, c) = (v[0], v[1], v[2]);
            let (da, db, dc) = match kind {
                SmarandacheKind::Gt => (0.0, 0.0, kp),
                SmarandacheKind::Td => (0.0, -kp, kp),
                SmarandacheKind::Gtd => (0.0, -kp, kp),
            };
            [da - b, db + a - c * k, dc + b * k]
        };
        let n2 = tangent_norm_sq(kind, k);
        // N N′ = (N²)′ / 2
        let n_dn = 0.5
            * match kind {
                SmarandacheKind::Gt => 2.0 * k * kp,
                SmarandacheKind::Td => 4.0 * k * kp,
                SmarandacheKind::Gtd => 2.0 * (2.0 * k - 1.0) * kp,
            };
        let l = |i: usize| n2 * dv[i] - n_dn * v[i];
        LambdaTriple {
            lambda1: l(0),
            lambda2: l(1),
            lambda3: l(2),
        }
    }
}

/// The printed `λ` polynomials; see [`LambdaTriple::derived`] for the
/// re-derived variant.
pub fn lambda_triple(kind: SmarandacheKind, kappa_g: f64, kappa_g_prime: f64) -> LambdaTriple {
    LambdaTriple::printed(kind, kappa_g, kappa_g_prime)
}

/// Factor `N⁻³` with `dt_β/ds = N⁻³ (λ₁ γ + λ₂ t + λ₃ d)`.
pub fn tangent_derivative_scale(kind: SmarandacheKind, k: f64) -> f64 {
    tangent_norm_sq(kind, k).powf(-1.5)
}

/// `dt_β/ds` from a λ triple.
pub fn tangent_beta_rate(kind: SmarandacheKind, frame: &SabbanFrame, k: f64, lambda: &LambdaTriple) -> Vec3 {
    frame.combine(lambda.as_array()) * tangent_derivative_scale(kind, k)
}

/// `d_β` coefficients over `(γ, t, d)` and normalizer, from the cross product.
pub fn d_beta_derived_coeffs(kind: SmarandacheKind, k: f64) -> ([f64; 3], f64) {
    match kind {
        SmarandacheKind::Gt => ([k, -k, 2.0], (4.0 + 2.0 * k * k).sqrt()),
        SmarandacheKind::Td => ([2.0 * k, -1.0, 1.0], (2.0 + 4.0 * k * k).sqrt()),
        SmarandacheKind::Gtd => (
            [2.0 * k - 1.0, -1.0 - k, 2.0 - k],
            6f64.sqrt() * (1.0 - k + k * k).sqrt(),
        ),
    }
}

/// The published `d_β` coefficients and normalizer, verbatim.
pub fn d_beta_printed_coeffs(kind: SmarandacheKind, k: f64) -> ([f64; 3], f64) {
    match kind {
        SmarandacheKind::Gt => ([k, -1.0 - k, 2.0], (4.0 + 2.0 * k * k).sqrt()),
        SmarandacheKind::Td => ([k, -1.0, 1.0 + k], (2.0 + 4.0 * k * k).sqrt()),
        SmarandacheKind::Gtd => (
            [2.0 * k - 1.0, -1.0 - k, 2.0 - k],
            6f64.sqrt() * (1.0 - k + k * k).sqrt(),
        ),
    }
}

pub fn d_beta_derived(kind: SmarandacheKind, frame: &SabbanFrame, k: f64) -> Vec3 {
    let (c, n) = d_beta_derived_coeffs(kind, k);
    frame.combine(c) / n
}

/// The published `d_β` expansion; not necessarily of unit norm.
pub fn d_beta_printed(kind: SmarandacheKind, frame: &SabbanFrame, k: f64) -> Vec3 {
    let (c, n) = d_beta_printed_coeffs(kind, k);
    frame.combine(c) / n
}

/// `κ_g^β` from the re-derived λ triple and `d_β` coefficients:
/// `⟨t_β′, d_β⟩` with `t_β′ = (dt_β/ds) / (ds*/ds)`.
pub fn kappa_beta_derived(kind: SmarandacheKind, kappa_g: f64, kappa_g_prime: f64) -> f64 {
    let k = kappa_g;
    let lambda = LambdaTriple::derived(kind, k, kappa_g_prime).as_array();
    let (c, n) = d_beta_derived_coeffs(kind, k);
    let inner: f64 = lambda.iter().zip(c).map(|(l, c)| l * c).sum();
    tangent_derivative_scale(kind, k) / speed_ratio(kind, k) * inner / n
}

/// The published final `κ_g^β` expression, verbatim, with printed λ.
pub fn kappa_beta_closed_paper(kind: SmarandacheKind, kappa_g: f64, kappa_g_prime: f64) -> f64 {
    let k = kappa_g;
    let LambdaTriple {
        lambda1: l1,
        lambda2: l2,
        lambda3: l3,
    } = LambdaTriple::printed(kind, k, kappa_g_prime);
    match kind {
        SmarandacheKind::Gt => (l1 * k + l2 * (-1.0 - k) + 2.0 * l3) / (2.0 + k * k).powf(1.5),
        SmarandacheKind::Td => (l1 * k - l2 + l3 * (1.0 + k)) / (1.0 + 2.0 * k * k).powf(1.5),
        SmarandacheKind::Gtd => {
            (l1 * (2.0 * k - 1.0) + l2 * (-1.0 - k) + l3 * (2.0 - k))
                / (4.0 * SQRT_2 * (1.0 - k + k * k).powf(1.5))
        }
    }
}

/// Frame of `β` at one parameter of `γ`, from the closed forms.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DerivedFrameSet {
    pub beta: UnitVec3,
    pub t_beta: UnitVec3,
    pub d_beta: UnitVec3,
    /// `ds*/ds`
    pub speed_ratio: f64,
    /// `κ_g^β` from [`kappa_beta_derived`].
    pub kappa_beta: f64,
}

pub fn derived_frame_set(
    kind: SmarandacheKind,
    frame: &SabbanFrame,
    kappa_g: f64,
    kappa_g_prime: f64,
) -> DerivedFrameSet {
    DerivedFrameSet {
        beta: smarandache_point(kind, frame),
        t_beta: tangent_beta(kind, frame, kappa_g),
        d_beta: d_beta(kind, frame, kappa_g),
        speed_ratio: speed_ratio(kind, kappa_g),
        kappa_beta: kappa_beta_derived(kind, kappa_g, kappa_g_prime),
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PipelineOptions {
    /// Nodes of the arc-length table of `β`.
    pub table_nodes: usize,
    /// Multiplier on the default finite-difference step of `β̂`.
    pub fd_scale: f64,
}

impl Default for PipelineOptions {
    fn default() -> Self {
        PipelineOptions {
            table_nodes: DEFAULT_TABLE_NODES,
            fd_scale: 1.0,
        }
    }
}

/// `κ_g^β` straight from the definitions: `β` is generated, reparameterized
/// by its own arc length `s*`, and its geodesic curvature is taken as
/// `⟨t̂′, d̂⟩` of the resulting unit-speed curve. No closed form is used.
#[derive(Debug, Clone)]
pub struct DefinitionalPipeline {
    kind: SmarandacheKind,
    reparam: ArcLengthReparam,
    beta_hat: CurveSource,
}

impl DefinitionalPipeline {
    pub fn new(kind: SmarandacheKind, c: &CurveSource, options: PipelineOptions) -> Result<Self> {
        let beta = generate(kind, c)?;
        let reparam = ArcLengthReparam::new(beta, options.table_nodes)?;
        let beta_hat = reparam.curve()?;
        let step = options.fd_scale * default_step(&beta_hat.domain());
        let beta_hat = beta_hat.with_fd_step(step)?;
        Ok(DefinitionalPipeline {
            kind,
            reparam,
            beta_hat,
        })
    }

    pub fn kind(&self) -> SmarandacheKind {
        self.kind
    }

    /// `β(s)` in the parameter of `γ`.
    pub fn beta(&self) -> &CurveSource {
        self.reparam.source()
    }

    /// `β̂(s*)`, unit speed.
    pub fn beta_unit_speed(&self) -> &CurveSource {
        &self.beta_hat
    }

    pub fn total_length(&self) -> f64 {
        self.reparam.total_length()
    }

    pub fn s_star(&self, s: f64) -> Result<f64> {
        self.reparam.arc_length_at(s)
    }

    /// Definitional `κ_g^β` at the image of parameter `s` of `γ`.
    pub fn kappa_beta(&self, s: f64) -> Result<f64> {
        let s_star = self.s_star(s)?.clamp(0.0, self.total_length());
        geodesic_curvature(&self.beta_hat, s_star)
    }
}

pub fn kappa_beta_definitional(kind: SmarandacheKind, c: &CurveSource, s: f64) -> Result<f64> {
    DefinitionalPipeline::new(kind, c, PipelineOptions::default())?.kappa_beta(s)
}

/// `64` uniform samples excluding `2h` margins at both ends.
pub fn report_grid(c: &CurveSource, n: usize) -> Vec<f64> {
    c.domain().interior_grid(n, 2.0 * c.fd_step())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Formula {
    SpeedRatio,
    Tangent,
    Lambda,
    DBeta,
    KappaBeta,
}

impl Formula {
    pub fn label(self) -> &'static str {
        match self {
            Formula::SpeedRatio => "speed_ratio",
            Formula::Tangent => "tangent",
            Formula::Lambda => "lambda",
            Formula::DBeta => "d_beta",
            Formula::KappaBeta => "kappa_beta",
        }
    }
}

/// Which closed form a check evaluates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FormSource {
    /// Published expression, verbatim.
    Paper,
    /// Re-derived expression.
    Derived,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Consistent,
    Inconsistent,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GapRecord {
    pub s: f64,
    pub kappa_g: f64,
    pub kappa_g_prime: f64,
    /// Closed-form value (scalar or vector components).
    pub closed_form: Vec<f64>,
    /// Definitional value.
    pub definitional: Vec<f64>,
    /// Max-abs componentwise difference.
    pub gap: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FormulaCheck {
    pub formula: Formula,
    pub source: FormSource,
    pub tolerance: f64,
    pub max_gap: f64,
    pub verdict: Verdict,
    /// Largest `| ‖v‖ − 1 |` of the closed-form vector, for unit-vector formulas.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_unit_norm_defect: Option<f64>,
    pub records: Vec<GapRecord>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ErratumReport {
    pub kind: SmarandacheKind,
    pub curve: String,
    pub samples: usize,
    pub checks: Vec<FormulaCheck>,
}

impl ErratumReport {
    pub fn check(&self, formula: Formula, source: FormSource) -> Option<&FormulaCheck> {
        self.checks
            .iter()
            .find(|c| c.formula == formula && c.source == source)
    }

    /// Whether every re-derived closed form agrees with the definitional
    /// computation. Published-form verdicts do not enter.
    pub fn derived_checks_pass(&self) -> bool {
        self.checks
            .iter()
            .filter(|c| c.source == FormSource::Derived)
            .all(|c| c.verdict == Verdict::Consistent)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReportOptions {
    pub tolerance: f64,
    pub pipeline: PipelineOptions,
}

impl Default for ReportOptions {
    fn default() -> Self {
        ReportOptions {
            tolerance: CONSISTENCY_TOL,
            pipeline: PipelineOptions::default(),
        }
    }
}

struct CheckBuilder {
    formula: Formula,
    source: FormSource,
    records: Vec<GapRecord>,
    norm_defect: Option<f64>,
}

impl CheckBuilder {
    fn new(formula: Formula, source: FormSource) -> Self {
        CheckBuilder {
            formula,
            source,
            records: Vec::new(),
            norm_defect: None,
        }
    }

    fn track_norm(&mut self, v: Vec3) {
        let d = (v.norm() - 1.0).abs();
        self.norm_defect = Some(self.norm_defect.map_or(d, |m| m.max(d)));
    }

    fn push(&mut self, at: (f64, f64, f64), closed_form: Vec<f64>, definitional: Vec<f64>) {
        let gap = closed_form
            .iter()
            .zip(&definitional)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        self.records.push(GapRecord {
            s: at.0,
            kappa_g: at.1,
            kappa_g_prime: at.2,
            closed_form,
            definitional,
            gap,
        });
    }

    fn finish(self, tolerance: f64) -> FormulaCheck {
        let max_gap = self.records.iter().map(|r| r.gap).fold(0.0, f64::max);
        FormulaCheck {
            formula: self.formula,
            source: self.source,
            tolerance,
            max_gap,
            verdict: if max_gap <= tolerance {
                Verdict::Consistent
            } else {
                Verdict::Inconsistent
            },
            max_unit_norm_defect: self.norm_defect,
            records: self.records,
        }
    }
}

fn vec(v: Vec3) -> Vec<f64> {
    v.to_array().to_vec()
}

/// Tabulates every closed form of `kind` against the definitional
/// computation at `sample_params` and emits one verdict per formula and
/// source.
pub fn erratum_report(
    kind: SmarandacheKind,
    c: &CurveSource,
    sample_params: &[f64],
    options: ReportOptions,
) -> Result<ErratumReport> {
    if sample_params.is_empty() {
        return Err(Error::TooFewSamples { got: 0, min: 1 });
    }
    let pipeline = DefinitionalPipeline::new(kind, c, options.pipeline)?;
    let beta_fd = pipeline.beta().finite_difference_only().with_fd_step(c.fd_step())?;
    let domain: Domain = c.domain();
    let h = c.fd_step();

    use FormSource::{Derived, Paper};
    let mut speed = CheckBuilder::new(Formula::SpeedRatio, Derived);
    let mut tangent = CheckBuilder::new(Formula::Tangent, Derived);
    let mut lambda_derived = CheckBuilder::new(Formula::Lambda, Derived);
    let mut lambda_paper = CheckBuilder::new(Formula::Lambda, Paper);
    let mut d_derived = CheckBuilder::new(Formula::DBeta, Derived);
    let mut d_paper = CheckBuilder::new(Formula::DBeta, Paper);
    let mut kappa_derived = CheckBuilder::new(Formula::KappaBeta, Derived);
    let mut kappa_paper = CheckBuilder::new(Formula::KappaBeta, Paper);

    for &s in sample_params {
        let frame = sabban_frame(c, s)?;
        let k = geodesic_curvature(c, s)?;
        let kp = kappa_prime(c, s)?;
        let at = (s, k, kp);

        // Numerical velocity of β from positions only.
        let velocity = beta_fd.velocity(s)?;
        let beta = smarandache_point(kind, &frame).get();
        speed.push(at, vec![speed_ratio(kind, k)], vec![velocity.norm()]);
        let t_num = normalize(velocity, 1e-12)?.get();
        tangent.push(at, vec(tangent_beta(kind, &frame, k).get()), vec(t_num));

        let (rate, _) = guarded_difference(
            |u| {
                let f = sabban_frame(c, u)?;
                Ok(tangent_beta(kind, &f, geodesic_curvature(c, u)?).get())
            },
            s,
            h,
            &domain,
        )?;
        let derived_rate = tangent_beta_rate(kind, &frame, k, &LambdaTriple::derived(kind, k, kp));
        let printed_rate = tangent_beta_rate(kind, &frame, k, &LambdaTriple::printed(kind, k, kp));
        lambda_derived.push(at, vec(derived_rate), vec(rate));
        lambda_paper.push(at, vec(printed_rate), vec(rate));

        let d_def = cross(beta, t_num);
        let d_der = d_beta_derived(kind, &frame, k);
        let d_pr = d_beta_printed(kind, &frame, k);
        d_derived.track_norm(d_der);
        d_paper.track_norm(d_pr);
        d_derived.push(at, vec(d_der), vec(d_def));
        d_paper.push(at, vec(d_pr), vec(d_def));

        let kb = pipeline.kappa_beta(s)?;
        kappa_derived.push(at, vec![kappa_beta_derived(kind, k, kp)], vec![kb]);
        kappa_paper.push(at, vec![kappa_beta_closed_paper(kind, k, kp)], vec![kb]);
    }

    let tol = options.tolerance;
    Ok(ErratumReport {
        kind,
        curve: c.name().to_string(),
        samples: sample_params.len(),
        checks: [
            speed,
            tangent,
            lambda_derived,
            lambda_paper,
            d_derived,
            d_paper,
            kappa_derived,
            kappa_paper,
        ]
        .into_iter()
        .map(|b| b.finish(tol))
        .collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::{fixture_great_circle, fixture_latitude_default, fixture_paper_example};
    use std::f64::consts::{FRAC_1_SQRT_2, PI};

    fn close(a: Vec3, b: Vec3, tol: f64) -> bool {
        (a - b).max_abs() <= tol
    }

    fn gc_frame() -> SabbanFrame {
        sabban_frame(&fixture_great_circle(), 0.0).unwrap()
    }

    fn pe_frame() -> SabbanFrame {
        sabban_frame(&fixture_paper_example(), 0.0).unwrap()
    }

    #[test]
    fn weights_have_unit_norm() {
        for kind in SmarandacheKind::ALL {
            let w = kind.weights();
            assert!((Vec3::from_array(w).norm() - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn kind_parsing() {
        assert_eq!("GT".parse::<SmarandacheKind>().unwrap(), SmarandacheKind::Gt);
        assert_eq!("gtd".parse::<SmarandacheKind>().unwrap(), SmarandacheKind::Gtd);
        assert!("tg".parse::<SmarandacheKind>().is_err());
    }

    #[test]
    fn point_examples() {
        let r = FRAC_1_SQRT_2;
        assert!(close(smarandache_point(SmarandacheKind::Gt, &gc_frame()).get(), Vec3::new(r, r, 0.0), 1e-15));
        assert!(close(smarandache_point(SmarandacheKind::Gt, &pe_frame()).get(), Vec3::new(r, 0.0, r), 1e-15));
        let q = 1.0 / SQRT_3;
        assert!(close(smarandache_point(SmarandacheKind::Gtd, &gc_frame()).get(), Vec3::new(q, q, q), 1e-15));
    }

    #[test]
    fn generate_great_circle_images() {
        let gc = fixture_great_circle();
        let gt = generate(SmarandacheKind::Gt, &gc).unwrap();
        let td = generate(SmarandacheKind::Td, &gc).unwrap();
        let gtd = generate(SmarandacheKind::Gtd, &gc).unwrap();
        let r = FRAC_1_SQRT_2;
        for s in [0.0f64, 0.7, 2.0, 5.0] {
            let (c, sn) = (s.cos(), s.sin());
            assert!(close(gt.point(s).unwrap(), Vec3::new((c - sn) * r, (sn + c) * r, 0.0), 1e-15));
            let p = td.point(s).unwrap();
            assert!((p.z - r).abs() < 1e-15 && (p.x.hypot(p.y) - r).abs() < 1e-15);
            let p = gtd.point(s).unwrap();
            assert!((p.z - 1.0 / SQRT_3).abs() < 1e-15);
            assert!((p.x.hypot(p.y) - (2.0f64 / 3.0).sqrt()).abs() < 1e-15);
        }
    }

    #[test]
    fn speed_ratio_examples() {
        assert_eq!(speed_ratio(SmarandacheKind::Gt, 0.0), 1.0);
        assert!((speed_ratio(SmarandacheKind::Gt, 2.0) - 3f64.sqrt()).abs() < 1e-15);
        assert!((speed_ratio(SmarandacheKind::Gtd, 1.0) - (2.0f64 / 3.0).sqrt()).abs() < 1e-15);
        for kind in SmarandacheKind::ALL {
            for k in [-10.0, -1.0, 0.0, 0.5, 1.0, 3.0] {
                assert!(speed_ratio(kind, k) > 0.0);
            }
        }
    }

    #[test]
    fn tangent_examples() {
        let t = tangent_beta(SmarandacheKind::Gt, &gc_frame(), 0.0).get();
        assert!(close(t, Vec3::new(-1.0, 1.0, 0.0) / SQRT_2, 1e-15));
        let t = tangent_beta(SmarandacheKind::Td, &gc_frame(), 0.0).get();
        assert!(close(t, -Vec3::X, 1e-15));
        let t = tangent_beta(SmarandacheKind::Gt, &pe_frame(), 2.0).get();
        assert!(close(t, Vec3::new(1.0, 2.0, -1.0) / 6f64.sqrt(), 1e-15));
    }

    #[test]
    fn d_beta_examples() {
        let d = d_beta(SmarandacheKind::Gt, &gc_frame(), 0.0).get();
        assert!(close(d, Vec3::Z, 1e-15));
        let d = d_beta(SmarandacheKind::Gt, &pe_frame(), 2.0).get();
        assert!(close(d, Vec3::new(-1.0, 1.0, 1.0) / SQRT_3, 1e-15));
        let d = d_beta(SmarandacheKind::Td, &gc_frame(), 0.0).get();
        assert!(close(d, Vec3::new(0.0, -1.0, 1.0) / SQRT_2, 1e-15));
    }

    #[test]
    fn lambda_printed_at_zero() {
        assert_eq!(lambda_triple(SmarandacheKind::Gt, 0.0, 0.0).as_array(), [-2.0, -2.0, 0.0]);
        assert_eq!(lambda_triple(SmarandacheKind::Td, 0.0, 0.0).as_array(), [0.0, -1.0, 0.0]);
        assert_eq!(lambda_triple(SmarandacheKind::Gtd, 0.0, 0.0).as_array(), [-2.0, -2.0, 0.0]);
    }

    #[test]
    fn lambda_derived_vs_printed() {
        // TD and GTD re-derive exactly; GT differs only in the κ² term of λ₂.
        for (k, kp) in [(0.0, 0.0), (0.3, -1.2), (2.0, 0.5), (-1.5, 3.0)] {
            for kind in [SmarandacheKind::Td, SmarandacheKind::Gtd] {
                let a = LambdaTriple::printed(kind, k, kp).as_array();
                let b = LambdaTriple::derived(kind, k, kp).as_array();
                for i in 0..3 {
                    assert!((a[i] - b[i]).abs() <= 1e-12 * (1.0 + a[i].abs()));
                }
            }
            let a = LambdaTriple::printed(SmarandacheKind::Gt, k, kp);
            let b = LambdaTriple::derived(SmarandacheKind::Gt, k, kp);
            assert!((a.lambda1 - b.lambda1).abs() < 1e-12);
            assert!((a.lambda3 - b.lambda3).abs() < 1e-12);
            assert!(((a.lambda2 - b.lambda2) - k * k).abs() < 1e-12);
        }
    }

    #[test]
    fn d_beta_derived_coefficients_are_unit_and_match_cross() {
        let c = fixture_paper_example();
        for s in [-3.0, -0.4, 0.0, 1.1, 4.0] {
            let f = sabban_frame(&c, s).unwrap();
            let k = geodesic_curvature(&c, s).unwrap();
            for kind in SmarandacheKind::ALL {
                let derived = d_beta_derived(kind, &f, k);
                assert!((derived.norm() - 1.0).abs() < 1e-12);
                assert!(close(derived, d_beta(kind, &f, k).get(), 1e-12));
            }
        }
    }

    #[test]
    fn printed_d_beta_norms() {
        // TD printed form is unit only where κ² + 1 + (1+κ)² = 2 + 4κ² (κ = 0, 1); GT never.
        let f = gc_frame();
        assert!((d_beta_printed(SmarandacheKind::Td, &f, 0.0).norm() - 1.0).abs() < 1e-15);
        assert!((d_beta_printed(SmarandacheKind::Gt, &f, 0.0).norm() - 5f64.sqrt() / 2.0).abs() < 1e-15);
        assert!((d_beta_printed(SmarandacheKind::Td, &f, 2.0).norm() - 1.0).abs() > 1e-3);
        for k in [-2.0, 0.0, 0.7, 3.0] {
            assert!((d_beta_printed(SmarandacheKind::Gtd, &f, k).norm() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn published_kappa_at_zero() {
        assert!((kappa_beta_closed_paper(SmarandacheKind::Gtd, 0.0, 0.0) - FRAC_1_SQRT_2).abs() < 1e-15);
        assert!((kappa_beta_closed_paper(SmarandacheKind::Td, 0.0, 0.0) - 1.0).abs() < 1e-15);
        assert!((kappa_beta_closed_paper(SmarandacheKind::Gt, 0.0, 0.0) - FRAC_1_SQRT_2).abs() < 1e-15);
    }

    #[test]
    fn derived_kappa_simplified_forms() {
        // Independent simplified expressions of the same composition.
        for (k, kp) in [(0.0f64, 0.0f64), (1.0, 0.0), (2.0, -0.7), (-0.6, 1.3)] {
            let gt = (k * k * k + 2.0 * k + 2.0 * kp) / (2.0 + k * k).powf(1.5);
            let td = (1.0 + 2.0 * k * k + 2.0 * kp) / (1.0 + 2.0 * k * k).powf(1.5);
            let gtd = SQRT_2 * (2.0 * k * k * k + 3.0 * kp + 2.0) / (4.0 * (1.0 - k + k * k).powf(1.5));
            assert!((kappa_beta_derived(SmarandacheKind::Gt, k, kp) - gt).abs() < 1e-12);
            assert!((kappa_beta_derived(SmarandacheKind::Td, k, kp) - td).abs() < 1e-12);
            assert!((kappa_beta_derived(SmarandacheKind::Gtd, k, kp) - gtd).abs() < 1e-12);
        }
    }

    #[test]
    fn definitional_great_circle() {
        let gc = fixture_great_circle();
        let expected = [(SmarandacheKind::Gt, 0.0), (SmarandacheKind::Td, 1.0), (SmarandacheKind::Gtd, FRAC_1_SQRT_2)];
        for (kind, want) in expected {
            let p = DefinitionalPipeline::new(kind, &gc, PipelineOptions::default()).unwrap();
            for s in [0.5, 2.0, PI, 5.0] {
                let k = p.kappa_beta(s).unwrap();
                assert!((k - want).abs() <= 1e-5, "{kind} at {s}: {k}");
            }
        }
        assert!(kappa_beta_definitional(SmarandacheKind::Td, &gc, 1.0).is_ok());
    }

    #[test]
    fn derived_frame_orthonormal() {
        let c = fixture_paper_example();
        for s in c.domain().grid(41) {
            let f = sabban_frame(&c, s).unwrap();
            let k = geodesic_curvature(&c, s).unwrap();
            for kind in SmarandacheKind::ALL {
                let set = derived_frame_set(kind, &f, k, 0.0);
                let defect = crate::frame::orthogonality_defect(set.beta.get(), set.t_beta.get(), set.d_beta.get());
                assert!(defect <= 1e-6);
                assert!((cross(set.beta.get(), set.t_beta.get()).dot(set.d_beta.get()) - 1.0).abs() <= 1e-6);
            }
        }
    }

    #[test]
    fn erratum_great_circle() {
        let gc = fixture_great_circle();
        let grid = report_grid(&gc, 16);
        let gt = erratum_report(SmarandacheKind::Gt, &gc, &grid, ReportOptions::default()).unwrap();
        let kp = gt.check(Formula::KappaBeta, FormSource::Paper).unwrap();
        assert_eq!(kp.verdict, Verdict::Inconsistent);
        assert!((kp.max_gap - FRAC_1_SQRT_2).abs() <= 1e-4);
        assert!(gt.derived_checks_pass(), "{:#?}", gt.checks.iter().map(|c| (c.formula, c.source, c.max_gap)).collect::<Vec<_>>());
        let td = erratum_report(SmarandacheKind::Td, &gc, &grid, ReportOptions::default()).unwrap();
        assert_eq!(td.check(Formula::KappaBeta, FormSource::Paper).unwrap().verdict, Verdict::Consistent);
    }

    #[test]
    fn erratum_latitude_td_populated() {
        let lat = fixture_latitude_default();
        let grid = report_grid(&lat, 8);
        let r = erratum_report(SmarandacheKind::Td, &lat, &grid, ReportOptions::default()).unwrap();
        assert_eq!(r.samples, 8);
        for c in &r.checks {
            assert_eq!(c.records.len(), 8);
            assert!(c.records.iter().all(|rec| (rec.kappa_g - 1.0).abs() < 1e-6));
        }
        assert!(r.derived_checks_pass());
    }
}
