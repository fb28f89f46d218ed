//! Parametric curves on S², the built-in fixtures, and arc-length
//! reparameterization.

use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::fmt;
use std::sync::Arc;

use crate::linalg3::Vec3;
use crate::numerics::{
    bracket, guarded_difference, guarded_second_difference, integrate, invert_monotone,
    MonotoneCubic, QuadratureSpec,
};
use crate::{Error, Result};

pub use crate::numerics::Domain;

/// Maximum `| ‖γ(s)‖ − 1 |` accepted for a curve on the sphere.
pub const SPHERE_TOL: f64 = 1e-6;

/// Simpson panels used inside each arc-length table interval.
const TABLE_SUBPANELS: usize = 8;

/// Default number of arc-length table nodes.
pub const DEFAULT_TABLE_NODES: usize = 2048;

pub type CurveFn = Arc<dyn Fn(f64) -> Result<Vec3> + Send + Sync>;

#[derive(Clone)]
pub enum DerivativeStrategy {
    /// User-supplied `γ′` and optionally `γ″`.
    Analytic { first: CurveFn, second: Option<CurveFn> },
    /// Guarded five-point differences of positions.
    FiniteDifference,
}

/// A parametric curve `s ↦ γ(s)` on a closed domain together with the way
/// its derivatives are obtained.
#[derive(Clone)]
pub struct CurveSource {
    name: String,
    domain: Domain,
    eval: CurveFn,
    derivative: DerivativeStrategy,
    fd_step: f64,
}

impl fmt::Debug for CurveSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CurveSource")
            .field("name", &self.name)
            .field("domain", &self.domain)
            .field("analytic_first", &self.has_analytic_first())
            .field("analytic_second", &self.has_analytic_second())
            .field("fd_step", &self.fd_step)
            .finish()
    }
}

impl CurveSource {
    /// A curve with the finite-difference derivative strategy and the
    /// default step `1e-4 × domain length`.
    pub fn new<F>(name: impl Into<String>, domain: Domain, eval: F) -> Self
    where
        F: Fn(f64) -> Result<Vec3> + Send + Sync + 'static,
    {
        CurveSource {
            name: name.into(),
            domain,
            eval: Arc::new(eval),
            derivative: DerivativeStrategy::FiniteDifference,
            fd_step: crate::numerics::default_step(&domain),
        }
    }

    pub fn with_derivative<F>(mut self, first: F) -> Self
    where
        F: Fn(f64) -> Result<Vec3> + Send + Sync + 'static,
    {
        let second = match self.derivative {
            DerivativeStrategy::Analytic { second, .. } => second,
            DerivativeStrategy::FiniteDifference => None,
        };
        self.derivative = DerivativeStrategy::Analytic {
            first: Arc::new(first),
            second,
        };
        self
    }

    /// Attaches `γ″`. Ignored unless an analytic first derivative is present.
    pub fn with_second_derivative<F>(mut self, second: F) -> Self
    where
        F: Fn(f64) -> Result<Vec3> + Send + Sync + 'static,
    {
        if let DerivativeStrategy::Analytic { second: slot, .. } = &mut self.derivative {
            *slot = Some(Arc::new(second));
        }
        self
    }

    /// The same curve with analytic derivatives dropped.
    pub fn finite_difference_only(&self) -> Self {
        CurveSource {
            derivative: DerivativeStrategy::FiniteDifference,
            name: format!("{} (fd)", self.name),
            ..self.clone()
        }
    }

    pub fn with_fd_step(mut self, step: f64) -> Result<Self> {
        if !(step > 0.0 && step.is_finite()) {
            return Err(Error::InvalidStep(step));
        }
        self.fd_step = step;
        Ok(self)
    }

    /// Restricts or extends the parameter domain. The finite-difference
    /// step is rescaled to the new length.
    pub fn with_domain(mut self, domain: Domain) -> Self {
        self.fd_step = crate::numerics::default_step(&domain);
        self.domain = domain;
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn fd_step(&self) -> f64 {
        self.fd_step
    }

    pub fn derivative_strategy(&self) -> &DerivativeStrategy {
        &self.derivative
    }

    pub fn has_analytic_first(&self) -> bool {
        matches!(self.derivative, DerivativeStrategy::Analytic { .. })
    }

    pub fn has_analytic_second(&self) -> bool {
        matches!(
            self.derivative,
            DerivativeStrategy::Analytic {
                second: Some(_),
                ..
            }
        )
    }

    fn checked(&self, f: &CurveFn, s: f64) -> Result<Vec3> {
        if !self.domain.contains(s) {
            return Err(Error::OutOfDomain {
                s,
                start: self.domain.start,
                end: self.domain.end,
            });
        }
        let v = f(s)?;
        if !v.is_finite() {
            return Err(Error::NonFinite { s });
        }
        Ok(v)
    }

    /// `γ(s)`.
    pub fn point(&self, s: f64) -> Result<Vec3> {
        self.checked(&self.eval, s)
    }

    /// `γ′(s)`.
    pub fn velocity(&self, s: f64) -> Result<Vec3> {
        match &self.derivative {
            DerivativeStrategy::Analytic { first, .. } => self.checked(first, s),
            DerivativeStrategy::FiniteDifference => {
                guarded_difference(|u| self.point(u), s, self.fd_step, &self.domain).map(|(v, _)| v)
            }
        }
    }

    /// `γ″(s)`: analytic if available, else a difference of the analytic
    /// first derivative, else a second difference of positions.
    pub fn acceleration(&self, s: f64) -> Result<Vec3> {
        match &self.derivative {
            DerivativeStrategy::Analytic {
                second: Some(second),
                ..
            } => self.checked(second, s),
            DerivativeStrategy::Analytic { first, second: None } => {
                guarded_difference(|u| self.checked(first, u), s, self.fd_step, &self.domain)
                    .map(|(v, _)| v)
            }
            DerivativeStrategy::FiniteDifference => {
                guarded_second_difference(|u| self.point(u), s, self.fd_step, &self.domain)
                    .map(|(v, _)| v)
            }
        }
    }

    pub fn speed(&self, s: f64) -> Result<f64> {
        Ok(self.velocity(s)?.norm())
    }

    /// Largest norm defect over `samples` uniform points; errors with
    /// [`Error::OffSphere`] if it exceeds [`SPHERE_TOL`].
    pub fn check_on_sphere(&self, samples: usize) -> Result<f64> {
        if samples < 2 {
            return Err(Error::TooFewSamples { got: samples, min: 2 });
        }
        let mut worst: f64 = 0.0;
        for s in self.domain.grid(samples) {
            let defect = (self.point(s)?.norm() - 1.0).abs();
            if defect > SPHERE_TOL {
                return Err(Error::OffSphere { s, defect });
            }
            worst = worst.max(defect);
        }
        Ok(worst)
    }
}

/// `s ↦ (cos s, sin s, 0)` on `[0, 2π]`; `κ_g ≡ 0`.
pub fn fixture_great_circle() -> CurveSource {
    let domain = Domain::new(0.0, 2.0 * PI).expect("static domain");
    CurveSource::new("great-circle", domain, |s: f64| Ok(Vec3::new(s.cos(), s.sin(), 0.0)))
        .with_derivative(|s: f64| Ok(Vec3::new(-s.sin(), s.cos(), 0.0)))
        .with_second_derivative(|s: f64| Ok(Vec3::new(-s.cos(), -s.sin(), 0.0)))
}

/// Unit-speed circle of Euclidean radius `r` at height `√(1 − r²)`:
/// `s ↦ (r cos(s/r), r sin(s/r), √(1−r²))` on `[0, 2πr]`.
pub fn fixture_latitude_circle(r: f64) -> Result<CurveSource> {
    if !(r > 0.0 && r < 1.0) {
        return Err(Error::InvalidRadius(r));
    }
    let height = (1.0 - r * r).sqrt();
    let domain = Domain::new(0.0, 2.0 * PI * r)?;
    Ok(CurveSource::new(format!("latitude:{r}"), domain, move |s: f64| {
        let a = s / r;
        Ok(Vec3::new(r * a.cos(), r * a.sin(), height))
    })
    .with_derivative(move |s: f64| {
        let a = s / r;
        Ok(Vec3::new(-a.sin(), a.cos(), 0.0))
    })
    .with_second_derivative(move |s: f64| {
        let a = s / r;
        Ok(Vec3::new(-a.cos() / r, -a.sin() / r, 0.0))
    }))
}

/// The latitude circle of radius `1/√2`, which has `κ_g = 1`.
pub fn fixture_latitude_default() -> CurveSource {
    fixture_latitude_circle(FRAC_1_SQRT_2).expect("radius in (0, 1)")
}

/// `s ↦ (cos s · tanh s, sin s · tanh s, sech s)` on `[−5, 5]`.
pub fn fixture_paper_example() -> CurveSource {
    let domain = Domain::new(-5.0, 5.0).expect("static domain");
    CurveSource::new("paper-example", domain, |s: f64| {
        let (th, sh) = (s.tanh(), 1.0 / s.cosh());
        Ok(Vec3::new(s.cos() * th, s.sin() * th, sh))
    })
    .with_derivative(|s: f64| {
        let (th, sh) = (s.tanh(), 1.0 / s.cosh());
        let sh2 = sh * sh;
        let (c, sn) = (s.cos(), s.sin());
        Ok(Vec3::new(-sn * th + c * sh2, c * th + sn * sh2, -sh * th))
    })
    .with_second_derivative(|s: f64| {
        let (th, sh) = (s.tanh(), 1.0 / s.cosh());
        let sh2 = sh * sh;
        let (c, sn) = (s.cos(), s.sin());
        Ok(Vec3::new(
            -c * th - 2.0 * sn * sh2 - 2.0 * c * sh2 * th,
            -sn * th + 2.0 * c * sh2 - 2.0 * sn * sh2 * th,
            sh * th * th - sh2 * sh,
        ))
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitSpeedCheck {
    pub unit_speed: bool,
    pub max_defect: f64,
}

/// Checks `| ‖γ′(s_i)‖ − 1 | ≤ tol` on `samples` uniform points.
pub fn is_unit_speed(c: &CurveSource, samples: usize, tol: f64) -> Result<UnitSpeedCheck> {
    if samples < 2 {
        return Err(Error::TooFewSamples { got: samples, min: 2 });
    }
    let mut max_defect: f64 = 0.0;
    for s in c.domain().grid(samples) {
        let speed = c.speed(s)?;
        if !(speed > f64::EPSILON) {
            return Err(Error::DegenerateVector {
                norm: speed,
                tol: f64::EPSILON,
            });
        }
        max_defect = max_defect.max((speed - 1.0).abs());
    }
    Ok(UnitSpeedCheck {
        unit_speed: max_defect <= tol,
        max_defect,
    })
}

/// Cumulative arc length `s*(s_i)` at table nodes `s_i`, with the speeds at
/// the nodes used as Hermite slopes.
#[derive(Debug, Clone, PartialEq)]
pub struct ArcLengthTable {
    interp: MonotoneCubic,
}

impl ArcLengthTable {
    /// A table from raw samples; slopes are estimated.
    pub fn from_samples(params: Vec<f64>, lengths: Vec<f64>) -> Result<Self> {
        Self::build(params, lengths, None)
    }

    fn build(params: Vec<f64>, lengths: Vec<f64>, speeds: Option<Vec<f64>>) -> Result<Self> {
        if lengths.first() != Some(&0.0) {
            return Err(Error::InvalidTable);
        }
        Ok(ArcLengthTable {
            interp: MonotoneCubic::new(params, lengths, speeds)?,
        })
    }

    pub fn params(&self) -> &[f64] {
        self.interp.xs()
    }

    pub fn lengths(&self) -> &[f64] {
        self.interp.ys()
    }

    pub fn total_length(&self) -> f64 {
        *self.lengths().last().unwrap()
    }

    /// Interpolated `s*(s)` from the table alone.
    pub fn length_at(&self, s: f64) -> f64 {
        self.interp.eval(s)
    }

    pub(crate) fn interpolant(&self) -> &MonotoneCubic {
        &self.interp
    }
}

/// Builds an [`ArcLengthTable`] with `n` uniform nodes over the curve's domain.
pub fn arclength_table(c: &CurveSource, n: usize) -> Result<ArcLengthTable> {
    if n < 2 {
        return Err(Error::TooFewSamples { got: n, min: 2 });
    }
    let params = c.domain().grid(n);
    let speeds = params
        .iter()
        .map(|&s| {
            let v = c.speed(s)?;
            if !(v > 0.0) {
                return Err(Error::NonMonotoneArcLength { s, speed: v });
            }
            Ok(v)
        })
        .collect::<Result<Vec<_>>>()?;
    let spec = QuadratureSpec::simpson(TABLE_SUBPANELS)?;
    let mut lengths = Vec::with_capacity(n);
    lengths.push(0.0);
    let mut acc = 0.0;
    for w in params.windows(2) {
        let piece = integrate(|u| c.speed(u), w[0], w[1], spec)?;
        if !(piece > 0.0) {
            return Err(Error::NonMonotoneArcLength { s: w[0], speed: 0.0 });
        }
        acc += piece;
        lengths.push(acc);
    }
    ArcLengthTable::build(params, lengths, Some(speeds))
}

/// A curve together with its arc-length table; maps `s ↔ s*` in both
/// directions to quadrature accuracy (not just table accuracy).
#[derive(Debug, Clone)]
pub struct ArcLengthReparam {
    source: CurveSource,
    table: ArcLengthTable,
}

impl ArcLengthReparam {
    pub fn new(source: CurveSource, n: usize) -> Result<Self> {
        let table = arclength_table(&source, n)?;
        Ok(ArcLengthReparam { source, table })
    }

    pub fn source(&self) -> &CurveSource {
        &self.source
    }

    pub fn table(&self) -> &ArcLengthTable {
        &self.table
    }

    pub fn total_length(&self) -> f64 {
        self.table.total_length()
    }

    /// `s*(s) = ∫_{s_0}^{s} ‖γ′‖`, from the nearest table node below `s`.
    pub fn arc_length_at(&self, s: f64) -> Result<f64> {
        let domain = self.source.domain();
        if !domain.contains(s) {
            return Err(Error::OutOfDomain {
                s,
                start: domain.start,
                end: domain.end,
            });
        }
        let params = self.table.params();
        let i = bracket(params, s);
        let piece = integrate(
            |u| self.source.speed(u),
            params[i],
            s,
            QuadratureSpec::simpson(TABLE_SUBPANELS)?,
        )?;
        Ok(self.table.lengths()[i] + piece)
    }

    /// Inverse of [`Self::arc_length_at`]: table inversion for the initial
    /// guess, then safeguarded Newton on the quadrature.
    pub fn parameter_at(&self, s_star: f64) -> Result<f64> {
        let guess = invert_monotone(&self.table, s_star)?;
        let lengths = self.table.lengths();
        let params = self.table.params();
        let i = bracket(lengths, s_star);
        let (mut lo, mut hi) = (params[i], params[i + 1]);
        let tol = 4.0 * f64::EPSILON * self.total_length().max(1.0);
        let mut s = guess.clamp(lo, hi);
        for _ in 0..50 {
            let r = self.arc_length_at(s)? - s_star;
            if r.abs() <= tol {
                break;
            }
            if r > 0.0 {
                hi = s;
            } else {
                lo = s;
            }
            let speed = self.source.speed(s)?;
            let newton = s - r / speed;
            let next = if speed > 0.0 && newton > lo && newton < hi {
                newton
            } else {
                0.5 * (lo + hi)
            };
            if (next - s).abs() <= f64::EPSILON * s.abs().max(1.0) {
                s = next;
                break;
            }
            s = next;
        }
        Ok(s)
    }

    /// The curve re-expressed in its own arc length on `[0, L]`. Derivatives
    /// use finite differences of positions.
    pub fn curve(&self) -> Result<CurveSource> {
        let domain = Domain::new(0.0, self.total_length())?;
        let name = format!("{} (arc length)", self.source.name());
        let me = Arc::new(self.clone());
        Ok(CurveSource::new(name, domain, move |s_star: f64| {
            // stencil nodes may overshoot the ends by rounding
            let s_star = if domain.contains(s_star) {
                s_star.clamp(domain.start, domain.end)
            } else {
                s_star
            };
            me.source.point(me.parameter_at(s_star)?)
        }))
    }
}

/// `β̂(s*)` with `‖β̂′‖ = 1`, via monotone inversion of the arc-length table.
pub fn reparameterize_unit_speed(c: &CurveSource, n: usize) -> Result<CurveSource> {
    ArcLengthReparam::new(c.clone(), n)?.curve()
}
