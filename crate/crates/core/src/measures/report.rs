use serde::ser::{SerializeMap, SerializeStruct};
use serde::{Serialize, Serializer};

use crate::dynamics::{CovarianceMatrix, StabilityReport};
use crate::error::{Error, Result};
use crate::model::Mode;

use super::{
    collective_steering_with, log_negativity, residual_contangle_min, steering_with, ModeSet, SteeringForm,
};

/// A named quantity evaluated on the stationary covariance matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Measure {
    /// Log-negativity of a mode pair, `E_xy`.
    LogNeg(Mode, Mode),
    /// Minimum residual contangle of a triple, `R_xyz`.
    Contangle([Mode; 3]),
    /// Steerability `S_{A→B}`.
    Steering { from: ModeSet, to: ModeSet },
    /// Collective steering of one mode by all others.
    Collective(Mode),
}

impl Measure {
    pub fn steer(from: &str, to: &str) -> Measure {
        Measure::Steering {
            from: ModeSet::parse(from).expect("valid mode labels"),
            to: ModeSet::parse(to).expect("valid mode labels"),
        }
    }

    /// Column name, e.g. `E_am`, `R_ac2m`, `S_mb_to_c1`, `Sc_ac1c2b_to_m`.
    pub fn name(&self) -> String {
        match self {
            Measure::LogNeg(x, y) => format!("E_{x}{y}"),
            Measure::Contangle(t) => format!("R_{}{}{}", t[0], t[1], t[2]),
            Measure::Steering { from, to } => format!("S_{from}_to_{to}"),
            Measure::Collective(target) => {
                let pool: String = Mode::ALL
                    .iter()
                    .filter(|m| *m != target)
                    .map(|m| m.label())
                    .collect();
                format!("Sc_{pool}_to_{target}")
            }
        }
    }

    pub fn parse(name: &str) -> Result<Measure> {
        let unknown = || Error::UnknownMeasure(name.into());
        let parsed = if let Some(rest) = name.strip_prefix("Sc_") {
            let (pool, target) = rest.split_once("_to_").ok_or_else(unknown)?;
            let target = ModeSet::parse(target)?;
            if target.len() != 1 {
                return Err(unknown());
            }
            let m = Measure::Collective(target.as_slice()[0]);
            if m.name() != name {
                let _ = ModeSet::parse(pool)?;
                return Err(unknown());
            }
            m
        } else if let Some(rest) = name.strip_prefix("S_") {
            let (from, to) = rest.split_once("_to_").ok_or_else(unknown)?;
            let (from, to) = (ModeSet::parse(from)?, ModeSet::parse(to)?);
            if !from.is_disjoint(&to) {
                return Err(unknown());
            }
            Measure::Steering { from, to }
        } else if let Some(rest) = name.strip_prefix("E_") {
            let s = ModeSet::parse(rest)?;
            match s.as_slice() {
                &[x, y] => Measure::LogNeg(x, y),
                _ => return Err(unknown()),
            }
        } else if let Some(rest) = name.strip_prefix("R_") {
            let s = ModeSet::parse(rest)?;
            match s.as_slice() {
                &[x, y, z] => Measure::Contangle([x, y, z]),
                _ => return Err(unknown()),
            }
        } else {
            return Err(unknown());
        };
        Ok(parsed)
    }

    fn evaluate(&self, v: &CovarianceMatrix, form: SteeringForm) -> Result<f64> {
        match self {
            Measure::LogNeg(x, y) => log_negativity(v, *x, *y),
            Measure::Contangle(t) => residual_contangle_min(v, *t),
            Measure::Steering { from, to } => steering_with(v, from, to, form),
            Measure::Collective(target) => collective_steering_with(v, *target, form),
        }
    }
}

impl std::fmt::Display for Measure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.name())
    }
}

/// Measures evaluated by default at every point.
pub fn default_measures() -> Vec<Measure> {
    use Mode::*;
    let mut v = vec![
        Measure::LogNeg(Atom, Magnon),
        Measure::LogNeg(Cavity1, Magnon),
        Measure::LogNeg(Cavity2, Magnon),
        Measure::Contangle([Atom, Cavity2, Magnon]),
        Measure::Contangle([Atom, Cavity1, Magnon]),
        Measure::Contangle([Cavity1, Cavity2, Magnon]),
    ];
    for x in ["a", "c1", "c2", "b"] {
        v.push(Measure::steer("m", x));
    }
    for x in ["a", "c1", "c2", "b"] {
        v.push(Measure::steer(x, "m"));
    }
    for (a, b) in [
        ("c1", "mb"),
        ("mb", "c1"),
        ("c2", "mb"),
        ("mb", "c2"),
        ("mb", "c1c2"),
        ("c1c2", "mb"),
        ("am", "c1c2"),
        ("c1c2", "am"),
    ] {
        v.push(Measure::steer(a, b));
    }
    v.push(Measure::Collective(Magnon));
    v
}

#[derive(Clone, Debug, PartialEq)]
pub struct ReportOptions {
    pub measures: Vec<Measure>,
    pub steering_form: SteeringForm,
}

impl Default for ReportOptions {
    fn default() -> Self {
        ReportOptions {
            measures: default_measures(),
            steering_form: SteeringForm::Det,
        }
    }
}

/// All requested measures at one point. `None` is the sentinel for
/// unstable or undefined values.
#[derive(Clone, Debug, PartialEq)]
pub struct MeasureReport {
    pub stable: bool,
    pub marginal: bool,
    pub max_re_lambda: f64,
    pub values: Vec<(Measure, Option<f64>)>,
    /// Some residual contangle fell below `−MONOGAMY_FLOOR` and was reported as 0.
    pub monogamy_violation: bool,
    /// First evaluation error at this point, if any.
    pub error: Option<String>,
}

impl MeasureReport {
    pub fn get(&self, m: &Measure) -> Option<f64> {
        self.values.iter().find(|(k, _)| k == m).and_then(|(_, v)| *v)
    }

    pub fn get_by_name(&self, name: &str) -> Option<f64> {
        self.values.iter().find(|(k, _)| k.name() == name).and_then(|(_, v)| *v)
    }

    /// Report with every measure at the sentinel.
    pub fn sentinel(stability: Option<&StabilityReport>, measures: &[Measure], error: Option<String>) -> Self {
        MeasureReport {
            stable: stability.is_some_and(|s| s.stable),
            marginal: stability.is_some_and(|s| s.marginal),
            max_re_lambda: stability.map_or(f64::NAN, |s| s.max_re),
            values: measures.iter().map(|m| (m.clone(), None)).collect(),
            monogamy_violation: false,
            error,
        }
    }
}

struct Values<'a>(&'a [(Measure, Option<f64>)]);

impl Serialize for Values<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (m, v) in self.0 {
            map.serialize_entry(&m.name(), v)?;
        }
        map.end()
    }
}

impl Serialize for MeasureReport {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("MeasureReport", 6)?;
        st.serialize_field("stable", &self.stable)?;
        st.serialize_field("marginal", &self.marginal)?;
        st.serialize_field("max_re_lambda", &self.max_re_lambda)?;
        st.serialize_field("monogamy_violation", &self.monogamy_violation)?;
        st.serialize_field("error", &self.error)?;
        st.serialize_field("measures", &Values(&self.values))?;
        st.end()
    }
}

/// Evaluates the default measure list.
pub fn full_report(v: Option<&CovarianceMatrix>, stability: &StabilityReport) -> MeasureReport {
    full_report_with(v, stability, &ReportOptions::default())
}

/// Evaluates `options.measures`. Without a covariance matrix (unstable
/// point) every value is the sentinel.
pub fn full_report_with(
    v: Option<&CovarianceMatrix>,
    stability: &StabilityReport,
    options: &ReportOptions,
) -> MeasureReport {
    let Some(v) = v.filter(|_| stability.stable) else {
        return MeasureReport::sentinel(Some(stability), &options.measures, None);
    };
    let mut report = MeasureReport::sentinel(Some(stability), &options.measures, None);
    for (m, slot) in report.values.iter_mut() {
        match m.evaluate(v, options.steering_form) {
            Ok(x) => *slot = Some(x),
            Err(Error::MonogamyViolation { .. }) => {
                report.monogamy_violation = true;
                *slot = Some(0.0);
            }
            Err(e) => {
                if report.error.is_none() {
                    report.error = Some(format!("{m}: {e}"));
                }
            }
        }
    }
    report
}
