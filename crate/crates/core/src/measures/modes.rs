use nalgebra::DMatrix;

use crate::dynamics::CovarianceMatrix;
use crate::error::{Error, Result};
use crate::model::Mode;

/// Ordered, non-empty set of distinct modes.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModeSet(Vec<Mode>);

impl ModeSet {
    pub fn new(modes: Vec<Mode>) -> Result<Self> {
        if modes.is_empty() {
            return Err(Error::InvalidModeSet("empty".into()));
        }
        for (i, m) in modes.iter().enumerate() {
            if modes[..i].contains(m) {
                return Err(Error::InvalidModeSet(format!("duplicate mode {m}")));
            }
        }
        Ok(ModeSet(modes))
    }

    pub fn all() -> Self {
        ModeSet(Mode::ALL.to_vec())
    }

    pub fn single(mode: Mode) -> Self {
        ModeSet(vec![mode])
    }

    /// Parses concatenated labels such as `"c1c2"` or `"amb"`.
    pub fn parse(s: &str) -> Result<Self> {
        let mut modes = Vec::new();
        let mut rest = s;
        while !rest.is_empty() {
            let take = if rest.starts_with('c') { 2 } else { 1 };
            let Some(label) = rest.get(..take) else {
                return Err(Error::UnknownMode(rest.into()));
            };
            modes.push(Mode::from_label(label).ok_or_else(|| Error::UnknownMode(label.into()))?);
            rest = &rest[take..];
        }
        ModeSet::new(modes)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Mode> {
        self.0.iter()
    }

    pub fn contains(&self, mode: Mode) -> bool {
        self.0.contains(&mode)
    }

    pub fn as_slice(&self) -> &[Mode] {
        &self.0
    }

    pub fn is_disjoint(&self, other: &ModeSet) -> bool {
        self.0.iter().all(|m| !other.contains(*m))
    }

    /// Concatenation; fails on overlap.
    pub fn union(&self, other: &ModeSet) -> Result<ModeSet> {
        ModeSet::new(self.0.iter().chain(other.0.iter()).copied().collect())
    }
}

impl std::fmt::Display for ModeSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for m in &self.0 {
            f.write_str(m.label())?;
        }
        Ok(())
    }
}

impl<'a> IntoIterator for &'a ModeSet {
    type Item = &'a Mode;
    type IntoIter = std::slice::Iter<'a, Mode>;
    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

/// Extracts the quadrature rows/columns of `modes`, in that order.
pub fn reduce(v: &CovarianceMatrix, modes: &ModeSet) -> Result<CovarianceMatrix> {
    let idx: Vec<usize> = modes
        .iter()
        .map(|&m| {
            v.position(m)
                .map(|k| [2 * k, 2 * k + 1])
                .ok_or_else(|| Error::UnknownMode(m.label().into()))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    let src = v.matrix();
    let sub = DMatrix::from_fn(idx.len(), idx.len(), |r, c| src[(idx[r], idx[c])]);
    Ok(CovarianceMatrix::from_symmetrized(sub, modes.clone()))
}

/// `PVP` with `P` flipping the Y quadrature of every transposed mode.
pub fn partial_transpose(v: &CovarianceMatrix, transposed: &ModeSet) -> Result<CovarianceMatrix> {
    let mut m = v.matrix().clone();
    for &mode in transposed {
        let k = v
            .position(mode)
            .ok_or_else(|| Error::UnknownMode(mode.label().into()))?;
        let y = 2 * k + 1;
        m.row_mut(y).neg_mut();
        m.column_mut(y).neg_mut();
    }
    Ok(CovarianceMatrix::from_symmetrized(m, v.modes().clone()))
}
