//! The Sabban frame `{γ, t, d}` of a unit-speed spherical curve, with
//! `t = γ′`, `d = γ ∧ t`, and the geodesic curvature `κ_g = ⟨t′, d⟩`.
//!
//! Along the curve the frame obeys
//!
//! ```text
//! γ′ = t,    t′ = −γ + κ_g d,    d′ = −κ_g t
//! ```
//!
//! which [`verify_sabban_odes`] checks numerically.

use serde::Serialize;

use crate::curves::{CurveSource, SPHERE_TOL};
use crate::linalg3::{cross, dot, normalize, UnitVec3, Vec3};
use crate::numerics::{central_difference, guarded_difference, AppliedStencil, DifferenceScheme};
use crate::{Error, Result};

/// Largest `| ‖γ′‖ − 1 |` accepted before a curve is rejected as not unit speed.
pub const UNIT_SPEED_TOL: f64 = 1e-4;
/// Orthogonality defect above which `t` is re-orthogonalized against `γ`.
pub const REPAIR_TOL: f64 = 1e-8;
/// Orthogonality defect above which a frame is rejected.
pub const FRAME_TOL: f64 = 1e-6;

const DEGENERATE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SabbanFrame {
    gamma: UnitVec3,
    tangent: UnitVec3,
    normal: UnitVec3,
}

impl SabbanFrame {
    /// Builds the frame from a position and a velocity at parameter `s`.
    ///
    /// The velocity must have unit norm within [`UNIT_SPEED_TOL`]. A tangent
    /// whose angle defect against `γ` lies in `(REPAIR_TOL, FRAME_TOL]` is
    /// Gram–Schmidt corrected; larger defects are errors.
    pub fn from_position_velocity(position: Vec3, velocity: Vec3, s: f64) -> Result<Self> {
        let radius_defect = (position.norm() - 1.0).abs();
        if radius_defect > SPHERE_TOL {
            return Err(Error::OffSphere {
                s,
                defect: radius_defect,
            });
        }
        let speed_defect = (velocity.norm() - 1.0).abs();
        if !(speed_defect <= UNIT_SPEED_TOL) {
            return Err(Error::NotUnitSpeed {
                s,
                defect: speed_defect,
            });
        }
        let gamma = normalize(position, DEGENERATE_TOL)?;
        let mut tangent = normalize(velocity, DEGENERATE_TOL)?;
        let overlap = gamma.dot(tangent);
        if overlap.abs() > FRAME_TOL {
            return Err(Error::FrameDefect {
                s,
                defect: overlap.abs(),
            });
        }
        if overlap.abs() > REPAIR_TOL {
            tangent = normalize(tangent.get() - gamma.get() * overlap, DEGENERATE_TOL)?;
        }
        let normal = normalize(gamma.cross(tangent), DEGENERATE_TOL)?;
        Ok(SabbanFrame {
            gamma,
            tangent,
            normal,
        })
    }

    pub fn gamma(&self) -> UnitVec3 {
        self.gamma
    }

    pub fn tangent(&self) -> UnitVec3 {
        self.tangent
    }

    pub fn normal(&self) -> UnitVec3 {
        self.normal
    }

    /// `w₀ γ + w₁ t + w₂ d`.
    pub fn combine(&self, [a, b, c]: [f64; 3]) -> Vec3 {
        self.gamma.get() * a + self.tangent.get() * b + self.normal.get() * c
    }

    /// Largest pairwise `|⟨·,·⟩|` among the three vectors.
    pub fn orthogonality_defect(&self) -> f64 {
        orthogonality_defect(self.gamma.get(), self.tangent.get(), self.normal.get())
    }

    /// `⟨γ ∧ t, d⟩`; `+1` for a right-handed orthonormal frame.
    pub fn handedness(&self) -> f64 {
        dot(self.gamma.cross(self.tangent), self.normal.get())
    }
}

/// Largest pairwise absolute dot product and unit-norm defect of a triple.
pub fn orthogonality_defect(a: Vec3, b: Vec3, c: Vec3) -> f64 {
    [
        dot(a, b).abs(),
        dot(a, c).abs(),
        dot(b, c).abs(),
        (a.norm() - 1.0).abs(),
        (b.norm() - 1.0).abs(),
        (c.norm() - 1.0).abs(),
    ]
    .into_iter()
    .fold(0.0, f64::max)
}

pub fn sabban_frame(c: &CurveSource, s: f64) -> Result<SabbanFrame> {
    SabbanFrame::from_position_velocity(c.point(s)?, c.velocity(s)?, s)
}

/// `κ_g(s) = ⟨t′(s), d(s)⟩`.
pub fn geodesic_curvature(c: &CurveSource, s: f64) -> Result<f64> {
    let frame = sabban_frame(c, s)?;
    Ok(dot(c.acceleration(s)?, frame.normal().get()))
}

/// `κ_g′(s)` by a five-point central difference of [`geodesic_curvature`]
/// with the curve's finite-difference step.
pub fn kappa_prime(c: &CurveSource, s: f64) -> Result<f64> {
    let scheme = DifferenceScheme::five_point(c.fd_step())?;
    central_difference(|u| geodesic_curvature(c, u), s, scheme, &c.domain())
}

/// Like [`kappa_prime`] but degrades to shorter or one-sided stencils near
/// the domain ends. The applied stencil is returned so callers can flag it.
pub fn kappa_prime_guarded(c: &CurveSource, s: f64) -> Result<(f64, AppliedStencil)> {
    guarded_difference(|u| geodesic_curvature(c, u), s, c.fd_step(), &c.domain())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FrameSample {
    pub s: f64,
    pub frame: SabbanFrame,
    pub kappa_g: f64,
    pub kappa_g_prime: f64,
    /// `ds*/ds` when the sample belongs to a derived curve.
    pub speed_ratio: Option<f64>,
    /// Stencil used for `κ_g′`.
    pub stencil: AppliedStencil,
}

/// Frame, `κ_g` and (guarded) `κ_g′` at `s`.
pub fn frame_sample(c: &CurveSource, s: f64) -> Result<FrameSample> {
    let frame = sabban_frame(c, s)?;
    let kappa_g = dot(c.acceleration(s)?, frame.normal().get());
    let (kappa_g_prime, stencil) = kappa_prime_guarded(c, s)?;
    Ok(FrameSample {
        s,
        frame,
        kappa_g,
        kappa_g_prime,
        speed_ratio: None,
        stencil,
    })
}

/// Largest residuals of the three frame equations.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct OdeResidual {
    /// `‖γ′ − t‖`
    pub position: f64,
    /// `‖t′ + γ − κ_g d‖`
    pub tangent: f64,
    /// `‖d′ + κ_g t‖`
    pub normal: f64,
}

impl OdeResidual {
    pub fn max(&self) -> f64 {
        self.position.max(self.tangent).max(self.normal)
    }
}

/// Differentiates the frame vectors numerically along the curve and reports
/// the worst residual of each frame equation over `samples`.
pub fn verify_sabban_odes(c: &CurveSource, samples: &[f64]) -> Result<OdeResidual> {
    let h = c.fd_step();
    let domain = c.domain();
    let mut worst = OdeResidual::default();
    for &s in samples {
        let frame = sabban_frame(c, s)?;
        let kappa = geodesic_curvature(c, s)?;
        let (g, t, d) = (
            frame.gamma().get(),
            frame.tangent().get(),
            frame.normal().get(),
        );
        let diff = |pick: fn(&SabbanFrame) -> Vec3| {
            guarded_difference(|u| sabban_frame(c, u).map(|f| pick(&f)), s, h, &domain).map(|(v, _)| v)
        };
        let dg = diff(|f| f.gamma().get())?;
        let dt = diff(|f| f.tangent().get())?;
        let dd = diff(|f| f.normal().get())?;
        worst.position = worst.position.max((dg - t).norm());
        worst.tangent = worst.tangent.max((dt + g - d * kappa).norm());
        worst.normal = worst.normal.max((dd + t * kappa).norm());
    }
    Ok(worst)
}

/// `⟨γ, t⟩`-free check that `d` really is `γ ∧ t`.
pub fn normal_matches_cross(frame: &SabbanFrame) -> f64 {
    (cross(frame.gamma().get(), frame.tangent().get()) - frame.normal().get()).max_abs()
}
