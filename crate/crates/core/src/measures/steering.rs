use serde::{Deserialize, Serialize};

use crate::dynamics::CovarianceMatrix;
use crate::error::{Error, Result};
use crate::model::Mode;
use crate::EPS_POS;

use super::{reduce, symplectic::symplectic_eigenvalues, ModeSet};

/// Evaluation of Gaussian steerability when the steered party has several modes.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum SteeringForm {
    /// `½ ln(det V_A / (4^{n_B} det V_AB))`.
    #[default]
    Det,
    /// `Σ_j max(0, −ln 2ν̄_j)` over the symplectic eigenvalues of the
    /// Schur complement `V_B − V_BA V_A⁻¹ V_AB`.
    Symplectic,
}

/// Steerability `S_{A→B}` with the determinant form.
pub fn steering(v: &CovarianceMatrix, steering_party: &ModeSet, steered_party: &ModeSet) -> Result<f64> {
    steering_with(v, steering_party, steered_party, SteeringForm::Det)
}

pub fn steering_with(
    v: &CovarianceMatrix,
    steering_party: &ModeSet,
    steered_party: &ModeSet,
    form: SteeringForm,
) -> Result<f64> {
    if !steering_party.is_disjoint(steered_party) {
        return Err(Error::InvalidModeSet(format!(
            "steering parties {steering_party} and {steered_party} overlap"
        )));
    }
    let joint = reduce(v, &steering_party.union(steered_party)?)?;
    let na = 2 * steering_party.len();
    let nb = 2 * steered_party.len();
    let m = joint.matrix();
    let va = m.view((0, 0), (na, na)).into_owned();
    match form {
        SteeringForm::Det => {
            let det_a = va.determinant();
            let det_ab = m.determinant();
            if !(det_a > 0.0 && det_ab > 0.0) {
                return Err(Error::Singular("steering determinant"));
            }
            let ratio = det_a / (4f64.powi(steered_party.len() as i32) * det_ab);
            Ok((0.5 * ratio.ln()).max(0.0))
        }
        SteeringForm::Symplectic => {
            let va_inv = va.try_inverse().ok_or(Error::Singular("steering party block"))?;
            let vb = m.view((na, na), (nb, nb));
            let vab = m.view((0, na), (na, nb));
            let cond = vb - vab.transpose() * va_inv * vab;
            let cond = (&cond + cond.transpose()) * 0.5;
            let nu = symplectic_eigenvalues(&cond)?;
            Ok(nu.iter().map(|n| (-(2.0 * n).ln()).max(0.0)).sum())
        }
    }
}

/// Collective steering of `steered` by all other modes of `v`: the joint
/// steerability when no subset missing one party steers it, else 0.
pub fn collective_steering(v: &CovarianceMatrix, steered: Mode) -> Result<f64> {
    collective_steering_with(v, steered, SteeringForm::Det)
}

pub fn collective_steering_with(v: &CovarianceMatrix, steered: Mode, form: SteeringForm) -> Result<f64> {
    let target = ModeSet::single(steered);
    if v.position(steered).is_none() {
        return Err(Error::UnknownMode(steered.label().into()));
    }
    let pool: Vec<Mode> = v.modes().iter().copied().filter(|&m| m != steered).collect();
    if pool.len() < 2 {
        return Err(Error::InvalidModeSet("collective steering needs at least two steering modes".into()));
    }
    for skip in 0..pool.len() {
        let subset: Vec<Mode> = pool
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != skip)
            .map(|(_, &m)| m)
            .collect();
        if steering_with(v, &ModeSet::new(subset)?, &target, form)? > EPS_POS {
            return Ok(0.0);
        }
    }
    steering_with(v, &ModeSet::new(pool)?, &target, form)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measures::tmsv;
    use Mode::*;

    fn set(s: &str) -> ModeSet {
        ModeSet::parse(s).unwrap()
    }

    #[test]
    fn vacuum_steering_is_zero() {
        let v = CovarianceMatrix::vacuum(ModeSet::all());
        for (a, b) in [("m", "a"), ("a", "m"), ("mb", "c1c2"), ("ac1c2b", "m")] {
            assert_eq!(steering(&v, &set(a), &set(b)).unwrap(), 0.0);
            assert_eq!(steering_with(&v, &set(a), &set(b), SteeringForm::Symplectic).unwrap(), 0.0);
        }
        assert_eq!(collective_steering(&v, Magnon).unwrap(), 0.0);
    }

    #[test]
    fn vacuum_ratio_is_one() {
        let v = CovarianceMatrix::vacuum(ModeSet::all());
        let va = reduce(&v, &set("ac1")).unwrap().matrix().determinant();
        let vab = reduce(&v, &set("ac1m")).unwrap().matrix().determinant();
        assert!((va / (4.0 * vab) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn tmsv_steering() {
        let v = tmsv(0.5, Cavity1, Magnon);
        let expected = 1f64.cosh().ln();
        for (a, b) in [("c1", "m"), ("m", "c1")] {
            let s = steering(&v, &set(a), &set(b)).unwrap();
            assert!((s - expected).abs() < 1e-10, "{s}");
            let s2 = steering_with(&v, &set(a), &set(b), SteeringForm::Symplectic).unwrap();
            assert!((s2 - expected).abs() < 1e-10, "{s2}");
        }
        assert_eq!(steering(&v, &set("a"), &set("m")).unwrap(), 0.0);
    }

    #[test]
    fn overlapping_parties_rejected() {
        let v = CovarianceMatrix::vacuum(ModeSet::all());
        assert!(steering(&v, &set("am"), &set("m")).is_err());
    }

    #[test]
    fn subset_steering_blocks_collective() {
        // c1 alone steers m, so the collective condition fails.
        let v = tmsv(0.5, Cavity1, Magnon);
        assert_eq!(collective_steering(&v, Magnon).unwrap(), 0.0);
    }
}
