//! Exact-arity 3-vector algebra.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Norm defect above which a vector is refused as a [`UnitVec3`].
pub const UNIT_ADMISSION_TOL: f64 = 1e-9;
/// Norm defect above which [`UnitVec3`] construction re-normalizes.
pub const UNIT_RENORMALIZE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Vec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Vec3 {
    pub const ZERO: Vec3 = Vec3::new(0.0, 0.0, 0.0);
    pub const X: Vec3 = Vec3::new(1.0, 0.0, 0.0);
    pub const Y: Vec3 = Vec3::new(0.0, 1.0, 0.0);
    pub const Z: Vec3 = Vec3::new(0.0, 0.0, 1.0);

    #[inline]
    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Vec3 { x, y, z }
    }

    pub fn from_array([x, y, z]: [f64; 3]) -> Self {
        Vec3 { x, y, z }
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    #[inline]
    pub fn dot(self, other: Vec3) -> f64 {
        dot(self, other)
    }

    #[inline]
    pub fn cross(self, other: Vec3) -> Vec3 {
        cross(self, other)
    }

    #[inline]
    pub fn norm_squared(self) -> f64 {
        self.dot(self)
    }

    #[inline]
    pub fn norm(self) -> f64 {
        self.norm_squared().sqrt()
    }

    /// Largest absolute component.
    pub fn max_abs(self) -> f64 {
        self.x.abs().max(self.y.abs()).max(self.z.abs())
    }
}

impl fmt::Display for Vec3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.x, self.y, self.z)
    }
}

impl Add for Vec3 {
    type Output = Vec3;
    #[inline]
    fn add(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl AddAssign for Vec3 {
    #[inline]
    fn add_assign(&mut self, o: Vec3) {
        *self = *self + o;
    }
}

impl Sub for Vec3 {
    type Output = Vec3;
    #[inline]
    fn sub(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Neg for Vec3 {
    type Output = Vec3;
    #[inline]
    fn neg(self) -> Vec3 {
        Vec3::new(-self.x, -self.y, -self.z)
    }
}

impl Mul<f64> for Vec3 {
    type Output = Vec3;
    #[inline]
    fn mul(self, k: f64) -> Vec3 {
        Vec3::new(self.x * k, self.y * k, self.z * k)
    }
}

impl Mul<Vec3> for f64 {
    type Output = Vec3;
    #[inline]
    fn mul(self, v: Vec3) -> Vec3 {
        v * self
    }
}

impl Div<f64> for Vec3 {
    type Output = Vec3;
    #[inline]
    fn div(self, k: f64) -> Vec3 {
        Vec3::new(self.x / k, self.y / k, self.z / k)
    }
}

#[inline]
pub fn dot(a: Vec3, b: Vec3) -> f64 {
    a.x * b.x + a.y * b.y + a.z * b.z
}

/// Right-handed cross product `a ∧ b`.
#[inline]
pub fn cross(a: Vec3, b: Vec3) -> Vec3 {
    Vec3::new(
        a.y * b.z - a.z * b.y,
        a.z * b.x - a.x * b.z,
        a.x * b.y - a.y * b.x,
    )
}

/// Scales `a` to unit length, failing when `‖a‖ ≤ tol`.
pub fn normalize(a: Vec3, tol: f64) -> Result<UnitVec3> {
    let norm = a.norm();
    if !(norm > tol) || !norm.is_finite() {
        return Err(Error::DegenerateVector { norm, tol });
    }
    Ok(UnitVec3(a / norm))
}

/// A vector of unit Euclidean norm: a point of S² or a direction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(transparent)]
pub struct UnitVec3(Vec3);

impl UnitVec3 {
    /// Admits `v` when its norm is within [`UNIT_ADMISSION_TOL`] of one.
    ///
    /// Small defects (above [`UNIT_RENORMALIZE_TOL`]) are absorbed by
    /// re-normalizing, so drift from upstream arithmetic does not accumulate.
    pub fn new(v: Vec3) -> Result<Self> {
        let norm = v.norm();
        let defect = (norm - 1.0).abs();
        if !(defect <= UNIT_ADMISSION_TOL) {
            return Err(Error::NotUnitVector { defect });
        }
        if defect > UNIT_RENORMALIZE_TOL {
            Ok(UnitVec3(v / norm))
        } else {
            Ok(UnitVec3(v))
        }
    }

    #[inline]
    pub fn get(self) -> Vec3 {
        self.0
    }

    #[inline]
    pub fn dot(self, other: UnitVec3) -> f64 {
        dot(self.0, other.0)
    }

    #[inline]
    pub fn cross(self, other: UnitVec3) -> Vec3 {
        cross(self.0, other.0)
    }
}

impl From<UnitVec3> for Vec3 {
    fn from(u: UnitVec3) -> Vec3 {
        u.0
    }
}

impl fmt::Display for UnitVec3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}
