use nalgebra::{DMatrix, DVector};

use crate::model::{thermal_occupation, EffectiveParams, Mode};

/// Number of quadratures of the full system.
pub const DIM: usize = 10;

/// Linear generator of the quadrature fluctuations, in the interleaved
/// layout `(X_a, Y_a, X_c1, Y_c1, X_c2, Y_c2, X_m, Y_m, q, p)`.
#[derive(Clone, Debug, PartialEq)]
pub struct DriftMatrix {
    matrix: DMatrix<f64>,
    rate_scale: f64,
}

impl DriftMatrix {
    /// Wraps an arbitrary square matrix. The rate scale used for the
    /// marginal-stability flag is the largest absolute entry.
    pub fn from_matrix(matrix: DMatrix<f64>) -> Self {
        assert!(matrix.is_square(), "drift matrix must be square");
        let rate_scale = matrix.amax().max(f64::MIN_POSITIVE);
        DriftMatrix { matrix, rate_scale }
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    /// Characteristic rate (ω_b for physical drifts).
    pub fn rate_scale(&self) -> f64 {
        self.rate_scale
    }

    /// 2×2 block between two modes.
    pub fn block(&self, row: Mode, col: Mode) -> [[f64; 2]; 2] {
        let (r, c) = (2 * row.index(), 2 * col.index());
        [
            [self.matrix[(r, c)], self.matrix[(r, c + 1)]],
            [self.matrix[(r + 1, c)], self.matrix[(r + 1, c + 1)]],
        ]
    }
}

/// Diagonal noise correlation matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct DiffusionMatrix {
    diagonal: DVector<f64>,
}

impl DiffusionMatrix {
    pub fn from_diagonal(diagonal: DVector<f64>) -> Self {
        assert!(diagonal.iter().all(|d| *d >= 0.0), "diffusion must be non-negative");
        DiffusionMatrix { diagonal }
    }

    pub fn diagonal(&self) -> &DVector<f64> {
        &self.diagonal
    }

    pub fn to_matrix(&self) -> DMatrix<f64> {
        DMatrix::from_diagonal(&self.diagonal)
    }
}

fn set_block(a: &mut DMatrix<f64>, row: Mode, col: Mode, b: [[f64; 2]; 2]) {
    let (r, c) = (2 * row.index(), 2 * col.index());
    a[(r, c)] = b[0][0];
    a[(r, c + 1)] = b[0][1];
    a[(r + 1, c)] = b[1][0];
    a[(r + 1, c + 1)] = b[1][1];
}

fn damped_rotation(decay: f64, detuning: f64) -> [[f64; 2]; 2] {
    [[-decay, detuning], [-detuning, -decay]]
}

/// Builds the drift matrix block by block. Optomechanical blocks carry the
/// signed `cos θ`, `sin θ`; the Tavis–Cummings exchange uses `|sin θ|`.
pub fn build_drift(p: &EffectiveParams) -> DriftMatrix {
    use Mode::*;
    let (sin, cos) = p.theta.sin_cos();
    let tc = p.g_ac2 * sin.abs();
    let mut a = DMatrix::zeros(DIM, DIM);

    set_block(&mut a, Atom, Atom, damped_rotation(p.gamma_a, p.delta_a));
    set_block(&mut a, Cavity1, Cavity1, damped_rotation(p.kappa_c1, p.delta_c));
    set_block(&mut a, Cavity2, Cavity2, damped_rotation(p.kappa_c2, p.delta_c));
    set_block(&mut a, Magnon, Magnon, damped_rotation(p.kappa_m, p.delta_m));
    set_block(&mut a, Phonon, Phonon, [[0.0, p.omega_b], [-p.omega_b, -p.gamma_b]]);

    // The same block appears above and below the diagonal.
    let exchange = [[0.0, tc], [-tc, 0.0]];
    set_block(&mut a, Atom, Cavity2, exchange);
    set_block(&mut a, Cavity2, Atom, exchange);

    let g1 = p.g_eff_c * cos;
    let g2 = p.g_eff_c * sin;
    set_block(&mut a, Cavity1, Phonon, [[-g1, 0.0], [0.0, 0.0]]);
    set_block(&mut a, Phonon, Cavity1, [[0.0, 0.0], [0.0, g1]]);
    set_block(&mut a, Cavity2, Phonon, [[-g2, 0.0], [0.0, 0.0]]);
    set_block(&mut a, Phonon, Cavity2, [[0.0, 0.0], [0.0, g2]]);
    set_block(&mut a, Magnon, Phonon, [[p.g_eff_m, 0.0], [0.0, 0.0]]);
    set_block(&mut a, Phonon, Magnon, [[0.0, 0.0], [0.0, -p.g_eff_m]]);

    DriftMatrix {
        matrix: a,
        rate_scale: p.omega_b,
    }
}

/// `Diag(γ_a, γ_a, κ_c1, κ_c1, κ_c2, κ_c2, κ_m(2n̄_m+1), κ_m(2n̄_m+1), 0, γ_b(2n̄_b+1))`.
pub fn build_diffusion(p: &EffectiveParams) -> DiffusionMatrix {
    let n_m = thermal_occupation(p.omega_m, p.temperature);
    let n_b = thermal_occupation(p.omega_b, p.temperature);
    let magnon = p.kappa_m * (2.0 * n_m + 1.0);
    DiffusionMatrix {
        diagonal: DVector::from_vec(vec![
            p.gamma_a,
            p.gamma_a,
            p.kappa_c1,
            p.kappa_c1,
            p.kappa_c2,
            p.kappa_c2,
            magnon,
            magnon,
            0.0,
            p.gamma_b * (2.0 * n_b + 1.0),
        ]),
    }
}
