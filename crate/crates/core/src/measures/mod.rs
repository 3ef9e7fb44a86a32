//! Entanglement and steering measures of Gaussian covariance matrices.

mod entanglement;
mod modes;
mod report;
mod steering;
mod symplectic;

pub use entanglement::{
    log_negativity, log_negativity_split, residual_contangle_min, residual_contangles, MONOGAMY_FLOOR,
};
pub use modes::{partial_transpose, reduce, ModeSet};
pub use report::{default_measures, full_report, full_report_with, Measure, MeasureReport, ReportOptions};
pub use steering::{collective_steering, collective_steering_with, steering, steering_with, SteeringForm};
pub use symplectic::{symplectic_eigenvalues, symplectic_spectrum};

/// Two-mode squeezed vacuum on `(x, y)` embedded in the vacuum of all modes.
#[cfg(test)]
pub(crate) fn tmsv(r: f64, x: crate::model::Mode, y: crate::model::Mode) -> crate::dynamics::CovarianceMatrix {
    let mut m = nalgebra::DMatrix::identity(10, 10) * 0.5;
    let (c, s) = ((2.0 * r).cosh() / 2.0, (2.0 * r).sinh() / 2.0);
    let (i, j) = (2 * x.index(), 2 * y.index());
    for k in 0..2 {
        m[(i + k, i + k)] = c;
        m[(j + k, j + k)] = c;
    }
    m[(i, j)] = s;
    m[(j, i)] = s;
    m[(i + 1, j + 1)] = -s;
    m[(j + 1, i + 1)] = -s;
    crate::dynamics::CovarianceMatrix::full(m).unwrap()
}
