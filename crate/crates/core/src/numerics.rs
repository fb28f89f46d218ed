//! Finite differences, composite Simpson quadrature and monotone inversion.
//!
//! These routines double as the numerical oracles that the closed forms in
//! [`crate::smarandache`] are checked against, so they stay deliberately
//! plain: fixed stencils, fixed panel counts, no adaptivity.

use std::ops::{Add, Mul, Sub};

use serde::Serialize;

use crate::curves::ArcLengthTable;
use crate::linalg3::Vec3;
use crate::{Error, Result};

/// Relative slack when testing whether a stencil node lies in the domain.
const EDGE_SLACK: f64 = 1e-12;

/// Values a difference stencil can combine.
pub trait Linear: Copy + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self> {}

impl Linear for f64 {}
impl Linear for Vec3 {}

/// Closed parameter interval `[start, end]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Domain {
    pub start: f64,
    pub end: f64,
}

impl Domain {
    pub fn new(start: f64, end: f64) -> Result<Self> {
        if !(start.is_finite() && end.is_finite() && start < end) {
            return Err(Error::InvalidDomain { start, end });
        }
        Ok(Domain { start, end })
    }

    pub fn len(&self) -> f64 {
        self.end - self.start
    }

    fn slack(&self) -> f64 {
        EDGE_SLACK * self.len().max(1.0)
    }

    pub fn contains(&self, s: f64) -> bool {
        s >= self.start - self.slack() && s <= self.end + self.slack()
    }

    /// Whether `[s - reach, s + reach]` fits in the domain.
    pub fn fits(&self, s: f64, reach: f64) -> bool {
        self.contains(s - reach) && self.contains(s + reach)
    }

    /// `n ≥ 2` uniformly spaced points including both ends.
    pub fn grid(&self, n: usize) -> Vec<f64> {
        uniform_grid(self.start, self.end, n)
    }

    /// `n` uniform points on `[start + margin, end - margin]`.
    pub fn interior_grid(&self, n: usize, margin: f64) -> Vec<f64> {
        uniform_grid(self.start + margin, self.end - margin, n)
    }
}

pub(crate) fn uniform_grid(a: f64, b: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![0.5 * (a + b)],
        _ => {
            let last = (n - 1) as f64;
            (0..n)
                .map(|i| {
                    if i == n - 1 {
                        b
                    } else {
                        a + (b - a) * (i as f64 / last)
                    }
                })
                .collect()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Stencil {
    /// Second-order central, three points.
    ThreePoint,
    /// Fourth-order central, five points.
    FivePoint,
}

impl Stencil {
    fn reach(self) -> f64 {
        match self {
            Stencil::ThreePoint => 1.0,
            Stencil::FivePoint => 2.0,
        }
    }
}

/// Stencil actually applied by the guarded differences.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AppliedStencil {
    Central5,
    Central3,
    Forward,
    Backward,
}

impl AppliedStencil {
    pub fn is_degraded(self) -> bool {
        self != AppliedStencil::Central5
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DifferenceScheme {
    pub stencil: Stencil,
    step: f64,
}

impl DifferenceScheme {
    pub fn new(stencil: Stencil, step: f64) -> Result<Self> {
        if !(step > 0.0 && step.is_finite()) {
            return Err(Error::InvalidStep(step));
        }
        Ok(DifferenceScheme { stencil, step })
    }

    pub fn five_point(step: f64) -> Result<Self> {
        Self::new(Stencil::FivePoint, step)
    }

    pub fn three_point(step: f64) -> Result<Self> {
        Self::new(Stencil::ThreePoint, step)
    }

    pub fn step(&self) -> f64 {
        self.step
    }
}

/// Default finite-difference step for a domain: `1e-4 × length`.
pub fn default_step(domain: &Domain) -> f64 {
    1e-4 * domain.len()
}

fn edge_error(s: f64, step: f64, domain: &Domain) -> Error {
    Error::DomainEdge {
        s,
        step,
        start: domain.start,
        end: domain.end,
    }
}

/// Central first derivative of `f` at `s`.
///
/// Fails with [`Error::DomainEdge`] when the stencil leaves `domain`.
pub fn central_difference<T, F>(f: F, s: f64, scheme: DifferenceScheme, domain: &Domain) -> Result<T>
where
    T: Linear,
    F: Fn(f64) -> Result<T>,
{
    let h = scheme.step;
    if !domain.fits(s, scheme.stencil.reach() * h) {
        return Err(edge_error(s, h, domain));
    }
    match scheme.stencil {
        Stencil::ThreePoint => Ok((f(s + h)? - f(s - h)?) * (0.5 / h)),
        Stencil::FivePoint => Ok(five_point_first(&f, s, h)?),
    }
}

/// Central second derivative of `f` at `s`.
pub fn central_second_difference<T, F>(
    f: F,
    s: f64,
    scheme: DifferenceScheme,
    domain: &Domain,
) -> Result<T>
where
    T: Linear,
    F: Fn(f64) -> Result<T>,
{
    let h = scheme.step;
    if !domain.fits(s, scheme.stencil.reach() * h) {
        return Err(edge_error(s, h, domain));
    }
    match scheme.stencil {
        Stencil::ThreePoint => Ok((f(s + h)? - f(s)? * 2.0 + f(s - h)?) * (1.0 / (h * h))),
        Stencil::FivePoint => five_point_second(&f, s, h),
    }
}

fn five_point_first<T: Linear>(f: &impl Fn(f64) -> Result<T>, s: f64, h: f64) -> Result<T> {
    let near = f(s + h)? - f(s - h)?;
    let far = f(s + 2.0 * h)? - f(s - 2.0 * h)?;
    Ok((near * 8.0 - far) * (1.0 / (12.0 * h)))
}

fn five_point_second<T: Linear>(f: &impl Fn(f64) -> Result<T>, s: f64, h: f64) -> Result<T> {
    let near = f(s + h)? + f(s - h)?;
    let far = f(s + 2.0 * h)? + f(s - 2.0 * h)?;
    Ok((near * 16.0 - far - f(s)? * 30.0) * (1.0 / (12.0 * h * h)))
}

/// First derivative that degrades near the domain ends instead of failing:
/// five-point central, then three-point central, then a second-order
/// one-sided stencil.
pub fn guarded_difference<T, F>(f: F, s: f64, step: f64, domain: &Domain) -> Result<(T, AppliedStencil)>
where
    T: Linear,
    F: Fn(f64) -> Result<T>,
{
    let h = step;
    if domain.fits(s, 2.0 * h) {
        return Ok((five_point_first(&f, s, h)?, AppliedStencil::Central5));
    }
    if domain.fits(s, h) {
        return Ok(((f(s + h)? - f(s - h)?) * (0.5 / h), AppliedStencil::Central3));
    }
    if domain.contains(s) && domain.contains(s + 2.0 * h) {
        let v = (f(s + h)? * 4.0 - f(s)? * 3.0 - f(s + 2.0 * h)?) * (0.5 / h);
        return Ok((v, AppliedStencil::Forward));
    }
    if domain.contains(s) && domain.contains(s - 2.0 * h) {
        let v = (f(s)? * 3.0 - f(s - h)? * 4.0 + f(s - 2.0 * h)?) * (0.5 / h);
        return Ok((v, AppliedStencil::Backward));
    }
    Err(edge_error(s, h, domain))
}

/// Second derivative with the same degradation order as [`guarded_difference`].
pub fn guarded_second_difference<T, F>(
    f: F,
    s: f64,
    step: f64,
    domain: &Domain,
) -> Result<(T, AppliedStencil)>
where
    T: Linear,
    F: Fn(f64) -> Result<T>,
{
    let h = step;
    let inv_h2 = 1.0 / (h * h);
    if domain.fits(s, 2.0 * h) {
        return Ok((five_point_second(&f, s, h)?, AppliedStencil::Central5));
    }
    if domain.fits(s, h) {
        let v = (f(s + h)? - f(s)? * 2.0 + f(s - h)?) * inv_h2;
        return Ok((v, AppliedStencil::Central3));
    }
    if domain.contains(s) && domain.contains(s + 3.0 * h) {
        let v = (f(s)? * 2.0 - f(s + h)? * 5.0 + f(s + 2.0 * h)? * 4.0 - f(s + 3.0 * h)?) * inv_h2;
        return Ok((v, AppliedStencil::Forward));
    }
    if domain.contains(s) && domain.contains(s - 3.0 * h) {
        let v = (f(s)? * 2.0 - f(s - h)? * 5.0 + f(s - 2.0 * h)? * 4.0 - f(s - 3.0 * h)?) * inv_h2;
        return Ok((v, AppliedStencil::Backward));
    }
    Err(edge_error(s, h, domain))
}

/// Composite Simpson rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuadratureSpec {
    panels: usize,
}

impl QuadratureSpec {
    pub const DEFAULT_PANELS: usize = 2048;

    pub fn simpson(panels: usize) -> Result<Self> {
        if panels < 2 || !panels.is_multiple_of(2) {
            return Err(Error::InvalidPanels(panels));
        }
        Ok(QuadratureSpec { panels })
    }

    pub fn panels(&self) -> usize {
        self.panels
    }
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            panels: Self::DEFAULT_PANELS,
        }
    }
}

/// Composite Simpson estimate of `∫_a^b f`.
pub fn integrate<F>(f: F, a: f64, b: f64, spec: QuadratureSpec) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    let n = spec.panels;
    let h = (b - a) / n as f64;
    if h == 0.0 {
        return Ok(0.0);
    }
    let mut odd = 0.0;
    let mut even = 0.0;
    for i in 1..n {
        let x = a + h * i as f64;
        if i % 2 == 1 {
            odd += f(x)?;
        } else {
            even += f(x)?;
        }
    }
    Ok(h / 3.0 * (f(a)? + 4.0 * odd + 2.0 * even + f(b)?))
}

/// Shape-preserving cubic Hermite interpolant of increasing data.
///
/// Node slopes are either supplied (e.g. exact speeds for an arc-length
/// table) or estimated with the Fritsch–Butland harmonic mean; either way
/// they are then limited with the Fritsch–Carlson condition so that the
/// interpolant is monotone on every interval.
#[derive(Debug, Clone, PartialEq)]
pub struct MonotoneCubic {
    xs: Vec<f64>,
    ys: Vec<f64>,
    slopes: Vec<f64>,
}

impl MonotoneCubic {
    pub fn new(xs: Vec<f64>, ys: Vec<f64>, slopes: Option<Vec<f64>>) -> Result<Self> {
        let n = xs.len();
        if n < 2 || ys.len() != n || slopes.as_ref().is_some_and(|m| m.len() != n) {
            return Err(Error::InvalidTable);
        }
        let strictly_increasing = |v: &[f64]| v.windows(2).all(|w| w[1] > w[0]);
        if !strictly_increasing(&xs) || !strictly_increasing(&ys) {
            return Err(Error::InvalidTable);
        }
        let secants: Vec<f64> = (0..n - 1)
            .map(|i| (ys[i + 1] - ys[i]) / (xs[i + 1] - xs[i]))
            .collect();
        let mut slopes = slopes.unwrap_or_else(|| estimate_slopes(&xs, &secants));
        for m in slopes.iter_mut() {
            *m = m.max(0.0);
        }
        for (i, &delta) in secants.iter().enumerate() {
            let a = slopes[i] / delta;
            let b = slopes[i + 1] / delta;
            let r = a.hypot(b);
            if r > 3.0 {
                let tau = 3.0 / r;
                slopes[i] = tau * a * delta;
                slopes[i + 1] = tau * b * delta;
            }
        }
        Ok(MonotoneCubic { xs, ys, slopes })
    }

    pub fn xs(&self) -> &[f64] {
        &self.xs
    }

    pub fn ys(&self) -> &[f64] {
        &self.ys
    }

    pub fn slopes(&self) -> &[f64] {
        &self.slopes
    }

    /// Index `i` of the interval `[xs[i], xs[i+1]]` containing `x` (clamped).
    pub fn interval_of(&self, x: f64) -> usize {
        bracket(&self.xs, x)
    }

    pub fn eval(&self, x: f64) -> f64 {
        let i = self.interval_of(x);
        self.hermite(i, x).0
    }

    /// Hermite value and derivative on interval `i`.
    fn hermite(&self, i: usize, x: f64) -> (f64, f64) {
        let (x0, x1) = (self.xs[i], self.xs[i + 1]);
        let (y0, y1) = (self.ys[i], self.ys[i + 1]);
        let w = x1 - x0;
        let (m0, m1) = (self.slopes[i] * w, self.slopes[i + 1] * w);
        let t = (x - x0) / w;
        let t2 = t * t;
        let t3 = t2 * t;
        let value = (2.0 * t3 - 3.0 * t2 + 1.0) * y0
            + (t3 - 2.0 * t2 + t) * m0
            + (-2.0 * t3 + 3.0 * t2) * y1
            + (t3 - t2) * m1;
        let deriv = ((6.0 * t2 - 6.0 * t) * y0
            + (3.0 * t2 - 4.0 * t + 1.0) * m0
            + (-6.0 * t2 + 6.0 * t) * y1
            + (3.0 * t2 - 2.0 * t) * m1)
            / w;
        (value, deriv)
    }

    /// Solves `eval(x) = y` by Newton steps safeguarded with bisection.
    pub fn invert(&self, y: f64) -> Result<f64> {
        let (lo_y, hi_y) = (self.ys[0], *self.ys.last().unwrap());
        if !(y >= lo_y && y <= hi_y) {
            return Err(Error::OutOfRange {
                target: y,
                min: lo_y,
                max: hi_y,
            });
        }
        let i = bracket(&self.ys, y);
        if y == self.ys[i] {
            return Ok(self.xs[i]);
        }
        if y == self.ys[i + 1] {
            return Ok(self.xs[i + 1]);
        }
        let (mut lo, mut hi) = (self.xs[i], self.xs[i + 1]);
        let span = self.ys[i + 1] - self.ys[i];
        let mut x = lo + (hi - lo) * (y - self.ys[i]) / span;
        let tol = 1e-15 * y.abs().max(hi_y - lo_y).max(1.0);
        for _ in 0..100 {
            let (v, dv) = self.hermite(i, x);
            let r = v - y;
            if r.abs() <= tol {
                break;
            }
            if r > 0.0 {
                hi = x;
            } else {
                lo = x;
            }
            let newton = x - r / dv;
            x = if dv > 0.0 && newton > lo && newton < hi {
                newton
            } else {
                0.5 * (lo + hi)
            };
            if hi - lo <= f64::EPSILON * hi.abs().max(1.0) {
                break;
            }
        }
        Ok(x)
    }
}

/// Largest `i` with `v[i] ≤ x`, clamped to `[0, len - 2]`.
pub(crate) fn bracket(v: &[f64], x: f64) -> usize {
    let idx = v.partition_point(|&e| e <= x);
    idx.saturating_sub(1).min(v.len() - 2)
}

fn estimate_slopes(xs: &[f64], secants: &[f64]) -> Vec<f64> {
    let n = xs.len();
    let mut m = vec![0.0; n];
    m[0] = secants[0];
    m[n - 1] = secants[n - 2];
    for i in 1..n - 1 {
        let (d0, d1) = (secants[i - 1], secants[i]);
        if d0 * d1 <= 0.0 {
            continue;
        }
        let (h0, h1) = (xs[i] - xs[i - 1], xs[i + 1] - xs[i]);
        let w1 = 2.0 * h1 + h0;
        let w2 = h1 + 2.0 * h0;
        m[i] = (w1 + w2) / (w1 / d0 + w2 / d1);
    }
    m
}

/// Parameter `s` at which the table's monotone interpolant reaches arc
/// length `target`.
pub fn invert_monotone(table: &ArcLengthTable, target: f64) -> Result<f64> {
    table.interpolant().invert(target)
}
