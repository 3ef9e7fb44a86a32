use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::measures::ModeSet;
use crate::model::{Mode, VACUUM_VARIANCE};

/// Symmetric quadrature covariance matrix `V_ij = ⟨{u_i, u_j}⟩/2`, with the
/// mode order of its rows recorded.
#[derive(Clone, Debug, PartialEq)]
pub struct CovarianceMatrix {
    matrix: DMatrix<f64>,
    modes: ModeSet,
}

const SYMMETRY_TOL: f64 = 1e-12;

impl CovarianceMatrix {
    /// Checks shape and symmetry (relative tolerance 1e-12), then symmetrizes.
    pub fn new(matrix: DMatrix<f64>, modes: ModeSet) -> Result<Self> {
        let n = 2 * modes.len();
        if matrix.nrows() != n || matrix.ncols() != n {
            return Err(Error::InvalidModeSet(format!(
                "{}×{} matrix for {} modes",
                matrix.nrows(),
                matrix.ncols(),
                modes.len()
            )));
        }
        let scale = matrix.amax().max(f64::MIN_POSITIVE);
        let asym = (&matrix - matrix.transpose()).amax();
        if asym > SYMMETRY_TOL * scale {
            return Err(Error::invalid(
                "covariance",
                format!("not symmetric (max asymmetry {asym:e})"),
            ));
        }
        Ok(Self::from_symmetrized(matrix, modes))
    }

    pub(crate) fn from_symmetrized(matrix: DMatrix<f64>, modes: ModeSet) -> Self {
        let matrix = (&matrix + matrix.transpose()) * 0.5;
        CovarianceMatrix { matrix, modes }
    }

    /// Full five-mode matrix in `(a, c1, c2, m, b)` order.
    pub fn full(matrix: DMatrix<f64>) -> Result<Self> {
        Self::new(matrix, ModeSet::all())
    }

    pub fn vacuum(modes: ModeSet) -> Self {
        let n = 2 * modes.len();
        CovarianceMatrix {
            matrix: DMatrix::identity(n, n) * VACUUM_VARIANCE,
            modes,
        }
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn modes(&self) -> &ModeSet {
        &self.modes
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    /// Position of `mode` in this matrix's mode order.
    pub fn position(&self, mode: Mode) -> Option<usize> {
        self.modes.iter().position(|&m| m == mode)
    }

    /// Applies `(X, Y) → (−X, −Y)` to one mode.
    pub fn flip_mode(&self, mode: Mode) -> Result<Self> {
        let k = self
            .position(mode)
            .ok_or_else(|| Error::UnknownMode(mode.label().into()))?;
        let mut m = self.matrix.clone();
        for r in [2 * k, 2 * k + 1] {
            m.row_mut(r).neg_mut();
            m.column_mut(r).neg_mut();
        }
        Ok(CovarianceMatrix {
            matrix: m,
            modes: self.modes.clone(),
        })
    }
}
