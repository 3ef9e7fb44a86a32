//! Steady-state quantum correlations of a linearized five-mode
//! optomagnomechanical system (atom ensemble, two cavity polarizations,
//! magnon, phonon).
//!
//! The pipeline for one operating point is
//! [`model::EffectiveParams`] → [`dynamics::build_drift`] /
//! [`dynamics::build_diffusion`] → [`dynamics::stability`] →
//! [`dynamics::steady_covariance`] → [`measures::full_report`].
//! [`sweep`] maps that pipeline over 1D/2D grids, in parallel when the
//! `parallel` feature is enabled.

pub mod cli;
pub mod dynamics;
pub mod error;
pub mod measures;
pub mod model;
pub mod sweep;

pub use error::{Error, Result};

/// Threshold above which a measure is considered present.
pub const EPS_POS: f64 = 1e-5;
