//! Sabban frames, geodesic curvature and Smarandache curves for unit-speed
//! curves on the unit sphere S².
//!
//! The crate is organised bottom-up:
//!
//! * [`linalg3`]: fixed-arity 3-vector algebra and unit vectors.
//! * [`numerics`]: finite differences, Simpson quadrature, monotone inversion.
//! * [`curves`]: parametric curve sources, fixtures, arc-length tables.
//! * [`frame`]: the Sabban frame `{γ, t, d}`, `κ_g` and `κ_g′`.
//! * [`smarandache`]: the `γt`, `td`, `γtd` curves, their closed forms and the
//!   definitional pipeline that adjudicates them.
//! * [`cli`]: the `sabban` command-line surface.

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod curves;
mod error;
pub mod expr;
pub mod frame;
pub mod linalg3;
pub mod numerics;
pub mod smarandache;

pub use error::{Error, Result};
