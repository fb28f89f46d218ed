use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("degenerate vector: norm {norm:e} is not above tolerance {tol:e}")]
    DegenerateVector { norm: f64, tol: f64 },

    #[error("vector is not unit length (norm defect {defect:e})")]
    NotUnitVector { defect: f64 },

    #[error("latitude radius {0} is outside (0, 1)")]
    InvalidRadius(f64),

    #[error("curve is not unit speed at s = {s}: speed defect {defect:e}")]
    NotUnitSpeed { s: f64, defect: f64 },

    #[error("frame orthogonality defect {defect:e} at s = {s} exceeds the repair limit")]
    FrameDefect { s: f64, defect: f64 },

    #[error("stencil around s = {s} with step {step:e} leaves the domain [{start}, {end}]")]
    DomainEdge {
        s: f64,
        step: f64,
        start: f64,
        end: f64,
    },

    #[error("parameter {s} is outside the domain [{start}, {end}]")]
    OutOfDomain { s: f64, start: f64, end: f64 },

    #[error("target {target} is outside the table range [{min}, {max}]")]
    OutOfRange { target: f64, min: f64, max: f64 },

    #[error("arc length is not strictly increasing near s = {s} (speed {speed:e})")]
    NonMonotoneArcLength { s: f64, speed: f64 },

    #[error("curve evaluation produced a non-finite value at s = {s}")]
    NonFinite { s: f64 },

    #[error("curve leaves the unit sphere at s = {s} (norm defect {defect:e})")]
    OffSphere { s: f64, defect: f64 },

    #[error("invalid domain [{start}, {end}]")]
    InvalidDomain { start: f64, end: f64 },

    #[error("at least {min} samples are required, got {got}")]
    TooFewSamples { got: usize, min: usize },

    #[error("finite-difference step must be positive and finite, got {0}")]
    InvalidStep(f64),

    #[error("Simpson quadrature needs an even panel count >= 2, got {0}")]
    InvalidPanels(usize),

    #[error("table must hold at least two strictly increasing entries")]
    InvalidTable,
}
