use crate::dynamics::CovarianceMatrix;
use crate::error::{Error, Result};
use crate::model::Mode;

use super::{partial_transpose, reduce, symplectic_spectrum, ModeSet};

/// Residual contangles in `(−MONOGAMY_FLOOR, 0)` are treated as rounding noise.
pub const MONOGAMY_FLOOR: f64 = 1e-9;

fn neg_log(nu_min: f64) -> f64 {
    (-(2.0 * nu_min).ln()).max(0.0)
}

/// `E_N = max[0, −ln 2ν₋]` for the pair `(x, y)`, transposing `y`.
pub fn log_negativity(v: &CovarianceMatrix, x: Mode, y: Mode) -> Result<f64> {
    let pair = ModeSet::new(vec![x, y])?;
    let sub = reduce(v, &pair)?;
    let pt = partial_transpose(&sub, &ModeSet::single(y))?;
    let nu = symplectic_spectrum(&pt)?;
    Ok(neg_log(nu[0]))
}

/// Log-negativity of the split `focus | rest`, transposing the focus mode.
pub fn log_negativity_split(v: &CovarianceMatrix, focus: Mode, rest: &ModeSet) -> Result<f64> {
    let modes = ModeSet::single(focus).union(rest)?;
    let sub = reduce(v, &modes)?;
    let pt = partial_transpose(&sub, &ModeSet::single(focus))?;
    let nu = symplectic_spectrum(&pt)?;
    Ok(neg_log(nu[0]))
}

/// Raw residual contangles `R_i|jk = C_i|jk − C_i|j − C_i|k` for each
/// focus `i` of the triple, in triple order. Contangle = squared log-negativity.
pub fn residual_contangles(v: &CovarianceMatrix, triple: [Mode; 3]) -> Result<[f64; 3]> {
    ModeSet::new(triple.to_vec())?;
    let mut out = [0.0; 3];
    for (slot, k) in out.iter_mut().zip(0..3) {
        let focus = triple[k];
        let j = triple[(k + 1) % 3];
        let l = triple[(k + 2) % 3];
        let whole = log_negativity_split(v, focus, &ModeSet::new(vec![j, l])?)?;
        let ej = log_negativity(v, focus, j)?;
        let el = log_negativity(v, focus, l)?;
        *slot = whole * whole - ej * ej - el * el;
    }
    Ok(out)
}

/// Minimum residual contangle over the three foci.
///
/// Values within `MONOGAMY_FLOOR` below zero are reported as 0; anything
/// more negative is a [`Error::MonogamyViolation`].
pub fn residual_contangle_min(v: &CovarianceMatrix, triple: [Mode; 3]) -> Result<f64> {
    let r = residual_contangles(v, triple)?;
    let (k, &min) = r
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))
        .expect("three foci");
    if min < -MONOGAMY_FLOOR {
        return Err(Error::MonogamyViolation {
            focus: triple[k].label().into(),
            value: min,
        });
    }
    Ok(min.max(0.0))
}
