use std::f64::consts::TAU;

use crate::error::{Error, Result};
use crate::measures::{Measure, SteeringForm};
use crate::model::{EffectiveParams, ParamField};

use super::{Axis, SweepSpec};

/// Every id accepted by [`preset`].
pub const FIGURE_IDS: [&str; 17] = [
    "fig2a", "fig2b", "fig2c", "fig2d", "fig3a", "fig3b", "fig3c", "fig3d", "fig3e", "fig3f", "fig3g", "fig3h",
    "fig4", "fig5", "fig6", "fig7", "fig8",
];

/// Every id accepted by [`reproduction`].
pub const FIGURE_GROUPS: [&str; 7] = ["fig2", "fig3", "fig4", "fig5", "fig6", "fig7", "fig8"];

const GRID_2D: usize = 101;
const GRID_1D: usize = 201;

fn measures(names: &[&str]) -> Vec<Measure> {
    names.iter().map(|n| Measure::parse(n).expect("preset measure names are valid")).collect()
}

const ENTANGLEMENTS: [&str; 3] = ["E_am", "E_c1m", "E_c2m"];
const CONTANGLES: [&str; 3] = ["R_ac2m", "R_ac1m", "R_c1c2m"];
const MAGNON_STEERINGS: [&str; 8] = [
    "S_m_to_a", "S_m_to_c1", "S_m_to_c2", "S_m_to_b", "S_a_to_m", "S_c1_to_m", "S_c2_to_m", "S_b_to_m",
];
const COLLECTIVE: [&str; 5] = ["Sc_ac1c2b_to_m", "S_ac1c2_to_m", "S_c1c2b_to_m", "S_ac1b_to_m", "S_ac2b_to_m"];

fn grid_2d(a: ParamField, a_range: (f64, f64), b: ParamField, b_range: (f64, f64)) -> Vec<Axis> {
    vec![
        Axis::linear(a, a_range.0, a_range.1, GRID_2D),
        Axis::linear(b, b_range.0, b_range.1, GRID_2D),
    ]
}

/// Built-in sweep for one figure panel (or one (θ, g_ac2) map for figs 4–8).
pub fn preset(id: &str) -> Result<SweepSpec> {
    use ParamField::*;
    let fig2 = EffectiveParams::baseline();
    let wb = fig2.omega_b / TAU;
    let detuning = (-2.0 * wb, 2.0 * wb);
    let kappa = (1e5, 1e7);
    let manipulation = grid_2d(Theta, (0.0, TAU), GAc2, (0.0, 10e6));

    let (base, axes, names): (EffectiveParams, Vec<Axis>, Vec<&str>) = match id {
        "fig2a" => (fig2, grid_2d(DeltaA, detuning, DeltaM, detuning), vec!["E_am"]),
        "fig2b" => (fig2, grid_2d(DeltaA, detuning, DeltaM, detuning), vec!["E_c1m"]),
        "fig2c" => (fig2, grid_2d(DeltaA, detuning, DeltaM, detuning), vec!["E_c2m"]),
        "fig2d" => (fig2, vec![Axis::linear(DeltaC, 0.0, 2.0 * wb, GRID_1D)], ENTANGLEMENTS.to_vec()),
        "fig3a" => (fig2, vec![Axis::linear(GEffM, 0.0, 5e6, GRID_1D)], ENTANGLEMENTS.to_vec()),
        "fig3b" => (fig2, vec![Axis::linear(GEffC, 0.0, 20e6, GRID_1D)], ENTANGLEMENTS.to_vec()),
        "fig3c" => (fig2, grid_2d(KappaC1, kappa, KappaC2, kappa), vec!["E_am"]),
        "fig3d" => (fig2, grid_2d(KappaC1, kappa, KappaC2, kappa), vec!["E_c1m"]),
        "fig3e" => (fig2, grid_2d(KappaC1, kappa, KappaC2, kappa), vec!["E_c2m"]),
        "fig3f" => (fig2, vec![Axis::linear(KappaM, kappa.0, kappa.1, GRID_1D)], ENTANGLEMENTS.to_vec()),
        "fig3g" => (fig2, vec![Axis::log(GammaB, 10.0, 1e6, GRID_1D)], ENTANGLEMENTS.to_vec()),
        "fig3h" => (fig2, vec![Axis::log(Temperature, 1e-3, 5.0, GRID_1D)], ENTANGLEMENTS.to_vec()),
        "fig4" => {
            let mut m = ENTANGLEMENTS.to_vec();
            m.extend(CONTANGLES);
            (EffectiveParams::manipulation_baseline(), manipulation, m)
        }
        "fig5" => (EffectiveParams::manipulation_baseline(), manipulation, MAGNON_STEERINGS.to_vec()),
        "fig6" => (
            EffectiveParams::manipulation_baseline(),
            manipulation,
            vec!["S_c1_to_mb", "S_mb_to_c1", "S_c2_to_mb", "S_mb_to_c2"],
        ),
        "fig7" => (
            EffectiveParams::manipulation_baseline(),
            manipulation,
            vec!["S_mb_to_c1c2", "S_c1c2_to_mb", "S_am_to_c1c2", "S_c1c2_to_am"],
        ),
        "fig8" => (EffectiveParams::manipulation_baseline(), manipulation, COLLECTIVE.to_vec()),
        _ => {
            return Err(Error::UnknownFigure {
                id: id.into(),
                valid: FIGURE_IDS.join(", "),
            })
        }
    };
    Ok(SweepSpec {
        base,
        axes,
        measures: measures(&names),
        output: None,
        steering_form: SteeringForm::Det,
    })
}

/// One output file of a figure reproduction.
#[derive(Clone, Debug, PartialEq)]
pub struct Panel {
    /// File stem, `<fig>_<panel>`.
    pub name: String,
    /// Grid and columns. Panels sharing base, axes and steering form share
    /// one sweep.
    pub spec: SweepSpec,
}

impl Panel {
    pub fn file_name(&self) -> String {
        format!("{}.csv", self.name)
    }

    /// True when both panels can be served by the same sweep.
    pub fn same_grid(&self, other: &Panel) -> bool {
        self.spec.base == other.spec.base
            && self.spec.axes == other.spec.axes
            && self.spec.steering_form == other.spec.steering_form
    }
}

/// All panels of a figure. Panels without their own preset id (summary
/// maps) reuse the figure's grid with the listed columns; region codes are
/// in every file.
pub fn reproduction(group: &str) -> Result<Vec<Panel>> {
    let panel = |name: &str, id: &str, cols: Option<&[&str]>| -> Result<Panel> {
        let mut spec = preset(id)?;
        if let Some(cols) = cols {
            spec.measures = measures(cols);
        }
        Ok(Panel { name: format!("{group}_{name}"), spec })
    };
    let singles = |id: &str, cols: &[(&str, &[&str])]| -> Result<Vec<Panel>> {
        cols.iter().map(|(name, c)| panel(name, id, Some(c))).collect()
    };
    match group {
        "fig2" => ["a", "b", "c", "d"].iter().map(|p| panel(p, &format!("fig2{p}"), None)).collect(),
        "fig3" => ["a", "b", "c", "d", "e", "f", "g", "h"]
            .iter()
            .map(|p| panel(p, &format!("fig3{p}"), None))
            .collect(),
        "fig4" => singles(
            "fig4",
            &[
                ("a", &["E_am"]),
                ("b", &["E_c1m"]),
                ("c", &["E_c2m"]),
                ("d", &["R_ac2m"]),
                ("e", &["R_ac1m"]),
                ("f", &["R_c1c2m"]),
                ("g", &ENTANGLEMENTS),
                ("h", &CONTANGLES),
            ],
        ),
        "fig5" => singles(
            "fig5",
            &[
                ("a", &["S_m_to_a", "S_a_to_m"]),
                ("b", &["S_m_to_c1", "S_c1_to_m"]),
                ("c", &["S_m_to_c2", "S_c2_to_m"]),
                ("d", &["S_m_to_b", "S_b_to_m"]),
                ("e", &MAGNON_STEERINGS),
            ],
        ),
        "fig6" => singles(
            "fig6",
            &[
                ("a", &["S_c1_to_mb"]),
                ("b", &["S_mb_to_c1", "S_m_to_c1"]),
                ("c", &["S_c1_to_mb", "S_mb_to_c1"]),
                ("d", &["S_c2_to_mb"]),
                ("e", &["S_mb_to_c2", "S_m_to_c2"]),
                ("f", &["S_c2_to_mb", "S_mb_to_c2"]),
            ],
        ),
        "fig7" => singles(
            "fig7",
            &[
                ("a", &["S_mb_to_c1c2"]),
                ("b", &["S_c1c2_to_mb"]),
                ("c", &["S_mb_to_c1c2", "S_c1c2_to_mb"]),
                ("d", &["S_am_to_c1c2"]),
                ("e", &["S_c1c2_to_am"]),
                ("f", &["S_am_to_c1c2", "S_c1c2_to_am"]),
            ],
        ),
        "fig8" => Ok(vec![panel("a", "fig8", None)?]),
        _ => Err(Error::UnknownFigure {
            id: group.into(),
            valid: FIGURE_GROUPS.join(", "),
        }),
    }
}

/// Groups panels that share a grid, preserving first-appearance order.
pub fn grid_groups(panels: &[Panel]) -> Vec<Vec<&Panel>> {
    let mut groups: Vec<Vec<&Panel>> = Vec::new();
    for p in panels {
        match groups.iter_mut().find(|g| g[0].same_grid(p)) {
            Some(g) => g.push(p),
            None => groups.push(vec![p]),
        }
    }
    groups
}
