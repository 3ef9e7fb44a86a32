use crate::measures::{Measure, MeasureReport};
use crate::model::Mode;
use crate::EPS_POS;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    NoWay,
    /// First party steers the second only.
    OneWay,
    /// Second party steers the first only.
    ReverseOneWay,
    TwoWay,
}

impl Direction {
    pub fn label(self) -> &'static str {
        match self {
            Direction::NoWay => "no-way",
            Direction::OneWay => "one-way",
            Direction::ReverseOneWay => "reverse-one-way",
            Direction::TwoWay => "two-way",
        }
    }
}

/// Directionality from `S_{A→B}` and `S_{B→A}`.
pub fn classify_direction(s_ab: f64, s_ba: f64) -> Direction {
    match (s_ab > EPS_POS, s_ba > EPS_POS) {
        (false, false) => Direction::NoWay,
        (true, false) => Direction::OneWay,
        (false, true) => Direction::ReverseOneWay,
        (true, true) => Direction::TwoWay,
    }
}

/// Subset of a fixed list of measures that exceed `EPS_POS`, as a bitmask
/// (bit k ↔ k-th measure) and a `+`-joined label (`none` when empty).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresenceCode {
    pub bits: u32,
    pub label: String,
}

fn presence(report: &MeasureReport, measures: &[Measure]) -> PresenceCode {
    let mut bits = 0;
    let mut names = Vec::new();
    for (k, m) in measures.iter().enumerate() {
        if report.get(m).is_some_and(|v| v > EPS_POS) {
            bits |= 1 << k;
            names.push(m.name());
        }
    }
    PresenceCode {
        bits,
        label: if names.is_empty() { "none".into() } else { names.join("+") },
    }
}

/// Bits: `E_am` = 1, `E_c1m` = 2, `E_c2m` = 4.
pub fn classify_entanglement(report: &MeasureReport) -> PresenceCode {
    use Mode::*;
    presence(
        report,
        &[
            Measure::LogNeg(Atom, Magnon),
            Measure::LogNeg(Cavity1, Magnon),
            Measure::LogNeg(Cavity2, Magnon),
        ],
    )
}

/// Bits: `R_ac2m` = 1, `R_ac1m` = 2, `R_c1c2m` = 4.
pub fn classify_tripartite(report: &MeasureReport) -> PresenceCode {
    use Mode::*;
    presence(
        report,
        &[
            Measure::Contangle([Atom, Cavity2, Magnon]),
            Measure::Contangle([Atom, Cavity1, Magnon]),
            Measure::Contangle([Cavity1, Cavity2, Magnon]),
        ],
    )
}

/// Bits: `S_m→a` = 1, `S_m→c1` = 2, `S_m→c2` = 4, `S_m→b` = 8.
pub fn classify_steering(report: &MeasureReport) -> PresenceCode {
    presence(
        report,
        &["a", "c1", "c2", "b"].map(|x| Measure::steer("m", x)),
    )
}

/// Party pairs `(A, B)` whose directionality is reported as `dir_A_B`.
pub const DIRECTION_PAIRS: [(&str, &str); 8] = [
    ("m", "a"),
    ("m", "c1"),
    ("m", "c2"),
    ("m", "b"),
    ("c1", "mb"),
    ("c2", "mb"),
    ("mb", "c1c2"),
    ("am", "c1c2"),
];

#[derive(Clone, Debug, PartialEq)]
pub struct RegionCodes {
    pub entanglement: PresenceCode,
    pub tripartite: PresenceCode,
    pub steering: PresenceCode,
    /// One entry per [`DIRECTION_PAIRS`] element.
    pub directions: Vec<Direction>,
}

/// Region codes of a stable report; `None` at unstable points.
pub fn classify(report: &MeasureReport) -> Option<RegionCodes> {
    if !report.stable {
        return None;
    }
    let value = |m: Measure| report.get(&m).unwrap_or(0.0);
    let directions = DIRECTION_PAIRS
        .iter()
        .map(|(a, b)| classify_direction(value(Measure::steer(a, b)), value(Measure::steer(b, a))))
        .collect();
    Some(RegionCodes {
        entanglement: classify_entanglement(report),
        tripartite: classify_tripartite(report),
        steering: classify_steering(report),
        directions,
    })
}

/// 4-connected components of `mask` on a row-major `rows × cols` grid
/// (no wrap-around). Each component lists its flat indices in ascending
/// order; components are ordered by their smallest index.
pub fn connected_regions(mask: &[bool], rows: usize, cols: usize) -> Vec<Vec<usize>> {
    assert_eq!(mask.len(), rows * cols, "mask size must match the grid");
    let mut seen = vec![false; mask.len()];
    let mut regions = Vec::new();
    for start in 0..mask.len() {
        if !mask[start] || seen[start] {
            continue;
        }
        seen[start] = true;
        let mut stack = vec![start];
        let mut region = Vec::new();
        while let Some(k) = stack.pop() {
            region.push(k);
            let (r, c) = (k / cols, k % cols);
            let mut visit = |n: usize| {
                if mask[n] && !seen[n] {
                    seen[n] = true;
                    stack.push(n);
                }
            };
            if r > 0 {
                visit(k - cols);
            }
            if r + 1 < rows {
                visit(k + cols);
            }
            if c > 0 {
                visit(k - 1);
            }
            if c + 1 < cols {
                visit(k + 1);
            }
        }
        region.sort_unstable();
        regions.push(region);
    }
    regions
}
