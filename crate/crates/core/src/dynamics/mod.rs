//! Drift and diffusion matrices of the linearized quadrature dynamics,
//! stability of the drift, and the stationary covariance matrix from the
//! Lyapunov equation `AV + VAᵀ = −D`.

mod covariance;
mod drift;
mod lyapunov;
mod stability;

pub use covariance::CovarianceMatrix;
pub use drift::{build_diffusion, build_drift, DiffusionMatrix, DriftMatrix, DIM};
pub use lyapunov::{lyapunov_residual, solve_lyapunov, steady_covariance};
pub use stability::{stability, StabilityReport, MARGINAL_FRACTION};
