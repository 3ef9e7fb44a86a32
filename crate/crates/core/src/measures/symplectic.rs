use nalgebra::{DMatrix, Schur, SymmetricEigen};

use crate::dynamics::CovarianceMatrix;
use crate::error::{Error, Result};

const IMAG_TOL: f64 = 1e-8;

fn omega(n_modes: usize) -> DMatrix<f64> {
    let mut w = DMatrix::zeros(2 * n_modes, 2 * n_modes);
    for k in 0..n_modes {
        w[(2 * k, 2 * k + 1)] = 1.0;
        w[(2 * k + 1, 2 * k)] = -1.0;
    }
    w
}

/// Symplectic eigenvalues `|eig(iΩV)|` of a `2n × 2n` matrix, ascending.
///
/// The squares ν² are the doubly degenerate eigenvalues of `−(ΩV)²`, paired
/// by sorted adjacency. For positive-definite `V` they are obtained as the
/// squared singular values of the antisymmetric `V^½ Ω V^½`, which keeps the
/// error at `ε‖V‖` instead of `ε‖V‖²`. Other inputs go through a general
/// eigenvalue solve, where a complex spectrum is an error.
pub fn symplectic_eigenvalues(v: &DMatrix<f64>) -> Result<Vec<f64>> {
    let dim = v.nrows();
    if !dim.is_multiple_of(2) || !v.is_square() {
        return Err(Error::OddDimension(dim));
    }
    let n = dim / 2;
    let sym = (v + v.transpose()) * 0.5;
    let eig = SymmetricEigen::try_new(sym, f64::EPSILON, 10_000).ok_or(Error::EigenFailure("covariance matrix"))?;
    let squares = if eig.eigenvalues.min() > 0.0 {
        let root = &eig.eigenvectors
            * DMatrix::from_diagonal(&eig.eigenvalues.map(f64::sqrt))
            * eig.eigenvectors.transpose();
        let a = &root * omega(n) * &root;
        let sv = a
            .try_svd(false, false, f64::EPSILON, 10_000)
            .ok_or(Error::EigenFailure("symplectic spectrum"))?
            .singular_values;
        sv.iter().map(|s| s * s).collect()
    } else {
        general_squares(v, n)?
    };
    let mut squares: Vec<f64> = squares;
    squares.sort_by(f64::total_cmp);
    Ok(squares
        .chunks_exact(2)
        .map(|pair| (0.5 * (pair[0] + pair[1])).max(0.0).sqrt())
        .collect())
}

fn general_squares(v: &DMatrix<f64>, n: usize) -> Result<Vec<f64>> {
    let ov = omega(n) * v;
    let m = -(&ov * &ov);
    let schur = Schur::try_new(m, f64::EPSILON, 10_000).ok_or(Error::EigenFailure("symplectic spectrum"))?;
    let eig = schur.complex_eigenvalues();
    let norm = v.norm();
    let tol = IMAG_TOL * (norm * norm).max(1.0);
    let residue = eig.iter().map(|z| z.im.abs()).fold(0.0, f64::max);
    if residue > tol || !residue.is_finite() {
        return Err(Error::ComplexSymplectic { residue });
    }
    Ok(eig.iter().map(|z| z.re).collect())
}

/// Symplectic spectrum of a covariance matrix, ascending.
pub fn symplectic_spectrum(v: &CovarianceMatrix) -> Result<Vec<f64>> {
    symplectic_eigenvalues(v.matrix())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measures::ModeSet;

    #[test]
    fn vacuum_spectrum() {
        let v = CovarianceMatrix::vacuum(ModeSet::all());
        let s = symplectic_spectrum(&v).unwrap();
        assert_eq!(s.len(), 5);
        for nu in s {
            assert!((nu - 0.5).abs() < 1e-14);
        }
    }

    #[test]
    fn thermal_mode() {
        let v = DMatrix::identity(2, 2) * 3.7;
        let s = symplectic_eigenvalues(&v).unwrap();
        assert!((s[0] - 3.7).abs() < 1e-13);
    }

    #[test]
    fn squeezed_mode_is_pure() {
        let r: f64 = 0.8;
        let v = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![
            0.5 * (2.0 * r).exp(),
            0.5 * (-2.0 * r).exp(),
        ]));
        let s = symplectic_eigenvalues(&v).unwrap();
        assert!((s[0] - 0.5).abs() < 1e-13);
    }

    #[test]
    fn odd_dimension_rejected() {
        assert!(matches!(
            symplectic_eigenvalues(&DMatrix::identity(3, 3)),
            Err(Error::OddDimension(3))
        ));
    }

    #[test]
    fn sorted_ascending() {
        let v = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![4.0, 4.0, 0.7, 0.7, 2.0, 2.0]));
        let s = symplectic_eigenvalues(&v).unwrap();
        assert!((s[0] - 0.7).abs() < 1e-13 && (s[1] - 2.0).abs() < 1e-13 && (s[2] - 4.0).abs() < 1e-13);
    }

    #[test]
    fn both_paths_agree_on_standard_form() {
        // Standard form (a, b, c): ν∓ = (√((a+b)² − 4c²) ∓ |a−b|)/2 = 0.4, 1.4.
        let (a, b, c) = (2.0, 1.0, 1.2);
        let v = DMatrix::from_row_slice(
            4,
            4,
            &[a, 0.0, c, 0.0, 0.0, a, 0.0, -c, c, 0.0, b, 0.0, 0.0, -c, 0.0, b],
        );
        let fast = symplectic_eigenvalues(&v).unwrap();
        assert!((fast[0] - 0.4).abs() < 1e-13 && (fast[1] - 1.4).abs() < 1e-13, "{fast:?}");
        let mut general = general_squares(&v, 2).unwrap();
        general.sort_by(f64::total_cmp);
        assert!((general[0].sqrt() - 0.4).abs() < 1e-12 && (general[3].sqrt() - 1.4).abs() < 1e-12);
    }

    #[test]
    fn indefinite_input_uses_general_solver() {
        let v = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![1.0, -1.0]));
        assert_eq!(symplectic_eigenvalues(&v).unwrap(), vec![0.0]);
    }
}
