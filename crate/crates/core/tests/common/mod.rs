//! Helpers shared by the integration tests.
#![allow(dead_code)]

use std::f64::consts::TAU;

use nalgebra::{DMatrix, Matrix4};
use omm_qcorr::dynamics::{
    build_diffusion, build_drift, lyapunov_residual, stability, steady_covariance, CovarianceMatrix, StabilityReport,
};
use omm_qcorr::model::{angular, EffectiveParams, Mode};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// Stationary CM and stability at `p`; `None` when unstable.
pub fn solve(p: &EffectiveParams) -> (StabilityReport, Option<CovarianceMatrix>) {
    let a = build_drift(p);
    let s = stability(&a).expect("finite drift");
    let v = s.stable.then(|| steady_covariance(&a, &build_diffusion(p)).expect("stable point solves"));
    (s, v)
}

pub fn relative_residual(p: &EffectiveParams, v: &CovarianceMatrix) -> f64 {
    let d = build_diffusion(p).to_matrix();
    lyapunov_residual(build_drift(p).matrix(), v.matrix(), &d) / d.norm()
}

/// Uniform point of the (θ, g_ac2) manipulation plane.
pub fn random_manipulation_point(rng: &mut StdRng) -> EffectiveParams {
    let mut p = EffectiveParams::manipulation_baseline();
    p.theta = rng.random_range(0.0..TAU);
    p.g_ac2 = angular(rng.random_range(0.0..10e6));
    p
}

/// Stable points of the manipulation plane with their CMs.
pub fn stable_manipulation_points(seed: u64, n: usize) -> Vec<(EffectiveParams, CovarianceMatrix)> {
    let mut rng = rng(seed);
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let p = random_manipulation_point(&mut rng);
        if let (_, Some(v)) = solve(&p) {
            out.push((p, v));
        }
    }
    out
}

/// Negates both quadratures of each listed mode.
pub fn flip(v: &CovarianceMatrix, modes: &[Mode]) -> CovarianceMatrix {
    modes.iter().fold(v.clone(), |acc, &m| acc.flip_mode(m).unwrap())
}

fn single_mode(r: f64, phi: f64) -> nalgebra::Matrix2<f64> {
    let (s, c) = phi.sin_cos();
    let rot = nalgebra::Matrix2::new(c, -s, s, c);
    rot * nalgebra::Matrix2::new(r.exp(), 0.0, 0.0, (-r).exp()) * rot.transpose()
}

/// Random two-mode symplectic matrix: local squeezers, a beam splitter and
/// a two-mode squeezer.
pub fn random_symplectic(rng: &mut StdRng) -> Matrix4<f64> {
    let local = |rng: &mut StdRng| {
        let mut m = Matrix4::zeros();
        m.fixed_view_mut::<2, 2>(0, 0)
            .copy_from(&single_mode(rng.random_range(-1.0..1.0), rng.random_range(0.0..TAU)));
        m.fixed_view_mut::<2, 2>(2, 2)
            .copy_from(&single_mode(rng.random_range(-1.0..1.0), rng.random_range(0.0..TAU)));
        m
    };
    let t: f64 = rng.random_range(0.0..TAU);
    let (s, c) = t.sin_cos();
    let bs = Matrix4::new(
        c, 0.0, s, 0.0, //
        0.0, c, 0.0, s, //
        -s, 0.0, c, 0.0, //
        0.0, -s, 0.0, c,
    );
    let r: f64 = rng.random_range(0.0..1.2);
    let (ch, sh) = (r.cosh(), r.sinh());
    let tms = Matrix4::new(
        ch, 0.0, sh, 0.0, //
        0.0, ch, 0.0, -sh, //
        sh, 0.0, ch, 0.0, //
        0.0, -sh, 0.0, ch,
    );
    local(rng) * bs * local(rng) * tms * local(rng)
}

/// Random physical two-mode CM `S · diag(ν₁, ν₁, ν₂, ν₂) · Sᵀ`, ν ≥ 1/2.
pub fn random_two_mode_cm(rng: &mut StdRng) -> DMatrix<f64> {
    let s = random_symplectic(rng);
    let n1 = 0.5 + rng.random_range(0.0..2.0);
    let n2 = 0.5 + rng.random_range(0.0..2.0);
    let d = Matrix4::from_diagonal(&nalgebra::Vector4::new(n1, n1, n2, n2));
    let v = s * d * s.transpose();
    let v = (v + v.transpose()) * 0.5;
    DMatrix::from_iterator(4, 4, v.iter().copied())
}

/// Two-mode symplectic eigenvalues from the invariant
/// Δ = det A + det B + 2 det C: ν∓² = (Δ ∓ √(Δ² − 4 det V)) / 2, with the
/// smaller root taken as det V / ν₊² to avoid cancellation.
pub fn two_mode_closed_form(v: &DMatrix<f64>) -> (f64, f64) {
    let det2 = |r: usize, c: usize| v[(r, c)] * v[(r + 1, c + 1)] - v[(r, c + 1)] * v[(r + 1, c)];
    let delta = det2(0, 0) + det2(2, 2) + 2.0 * det2(0, 2);
    let det = v.determinant();
    let disc = (delta * delta - 4.0 * det).max(0.0).sqrt();
    let hi2 = (delta + disc) / 2.0;
    ((det / hi2).sqrt(), hi2.sqrt())
}

/// Two-mode squeezed vacuum with squeezing `r`.
pub fn tmsv(r: f64) -> DMatrix<f64> {
    let (c, s) = ((2.0 * r).cosh() / 2.0, (2.0 * r).sinh() / 2.0);
    DMatrix::from_row_slice(
        4,
        4,
        &[
            c, 0.0, s, 0.0, //
            0.0, c, 0.0, -s, //
            s, 0.0, c, 0.0, //
            0.0, -s, 0.0, c,
        ],
    )
}
