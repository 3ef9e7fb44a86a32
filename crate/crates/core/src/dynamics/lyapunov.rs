use nalgebra::{DMatrix, DVector};

use super::{stability, CovarianceMatrix, DiffusionMatrix, DriftMatrix};
use crate::error::{Error, Result};

/// Solves `A X + X Aᵀ = −D` through the Kronecker form
/// `(I⊗A + A⊗I) vec X = −vec D` with one dense LU factorization and a
/// single refinement step. `A` and `D` are rescaled by `scale` first; the
/// solution is invariant under that rescaling.
pub fn solve_lyapunov(a: &DMatrix<f64>, d: &DMatrix<f64>, scale: f64) -> Result<DMatrix<f64>> {
    let n = a.nrows();
    assert!(a.is_square() && d.shape() == (n, n), "dimension mismatch");
    let a = a / scale;
    let rhs = DVector::from_iterator(n * n, d.iter().map(|x| -x / scale));

    // Column-major vec: X(i, j) ↦ i + j·n.
    let mut k = DMatrix::zeros(n * n, n * n);
    for j in 0..n {
        for i in 0..n {
            let row = i + j * n;
            for l in 0..n {
                k[(row, l + j * n)] += a[(i, l)];
                k[(row, i + l * n)] += a[(j, l)];
            }
        }
    }
    let lu = k.clone().lu();
    let mut x = lu.solve(&rhs).ok_or(Error::Singular("Lyapunov operator"))?;
    let residual = &rhs - &k * &x;
    if let Some(dx) = lu.solve(&residual) {
        x += dx;
    }
    if x.iter().any(|v| !v.is_finite()) {
        return Err(Error::Singular("Lyapunov operator"));
    }
    Ok(DMatrix::from_column_slice(n, n, x.as_slice()))
}

/// `‖AV + VAᵀ + D‖_F / ‖D‖_F`.
pub fn lyapunov_residual(a: &DMatrix<f64>, v: &DMatrix<f64>, d: &DMatrix<f64>) -> f64 {
    let r = a * v + v * a.transpose() + d;
    r.norm() / d.norm()
}

/// Stationary covariance of a stable drift. Unstable drifts are rejected.
pub fn steady_covariance(a: &DriftMatrix, d: &DiffusionMatrix) -> Result<CovarianceMatrix> {
    let report = stability(a)?;
    if !report.stable {
        return Err(Error::Unstable { max_re: report.max_re });
    }
    let v = solve_lyapunov(a.matrix(), &d.to_matrix(), a.rate_scale())?;
    Ok(CovarianceMatrix::from_symmetrized(v, crate::measures::ModeSet::all()))
}
