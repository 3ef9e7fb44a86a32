use nalgebra::{Complex, Schur};

use super::DriftMatrix;
use crate::error::{Error, Result};

/// Points with `|max Re λ| < MARGINAL_FRACTION · ω_b` are flagged marginal.
pub const MARGINAL_FRACTION: f64 = 1e-6;

const MAX_SCHUR_ITERATIONS: usize = 10_000;

#[derive(Clone, Debug, PartialEq)]
pub struct StabilityReport {
    /// All eigenvalues strictly in the open left half plane.
    pub stable: bool,
    pub marginal: bool,
    /// Largest real part of the drift spectrum (angular rate).
    pub max_re: f64,
    /// Eigenvalues sorted by decreasing real part.
    pub spectrum: Vec<Complex<f64>>,
}

/// Full complex spectrum of the drift via the real Schur form.
pub fn stability(a: &DriftMatrix) -> Result<StabilityReport> {
    let m = a.matrix();
    if m.iter().any(|x| !x.is_finite()) {
        return Err(Error::EigenFailure("drift matrix with non-finite entries"));
    }
    let schur = Schur::try_new(m.clone(), f64::EPSILON, MAX_SCHUR_ITERATIONS)
        .ok_or(Error::EigenFailure("drift spectrum"))?;
    let mut spectrum: Vec<Complex<f64>> = schur.complex_eigenvalues().iter().copied().collect();
    if spectrum.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::EigenFailure("drift spectrum"));
    }
    spectrum.sort_by(|x, y| y.re.total_cmp(&x.re).then(x.im.total_cmp(&y.im)));
    let max_re = spectrum.first().map_or(f64::NEG_INFINITY, |z| z.re);
    Ok(StabilityReport {
        stable: max_re < 0.0,
        marginal: max_re.abs() < MARGINAL_FRACTION * a.rate_scale(),
        max_re,
        spectrum,
    })
}
