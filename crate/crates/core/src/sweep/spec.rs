use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::measures::{default_measures, Measure, SteeringForm};
use crate::model::config::{parse_text, read_file, EffectiveFile};
use crate::model::{EffectiveParams, ParamField};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scale {
    #[default]
    Linear,
    Log,
}

/// One swept parameter. Bounds are in parameter-file units (Hz, rad, K).
#[derive(Clone, Debug, PartialEq)]
pub struct Axis {
    pub field: ParamField,
    pub min: f64,
    pub max: f64,
    pub count: usize,
    pub scale: Scale,
}

impl Axis {
    pub fn linear(field: ParamField, min: f64, max: f64, count: usize) -> Self {
        Axis { field, min, max, count, scale: Scale::Linear }
    }

    pub fn log(field: ParamField, min: f64, max: f64, count: usize) -> Self {
        Axis { field, min, max, count, scale: Scale::Log }
    }

    /// Grid values with exact endpoints.
    pub fn values(&self) -> Vec<f64> {
        let n = self.count;
        (0..n)
            .map(|i| {
                if i == 0 {
                    return self.min;
                }
                if i == n - 1 {
                    return self.max;
                }
                let t = i as f64 / (n - 1) as f64;
                match self.scale {
                    Scale::Linear => self.min + (self.max - self.min) * t,
                    Scale::Log => (self.min.ln() + (self.max.ln() - self.min.ln()) * t).exp(),
                }
            })
            .collect()
    }

    fn validate(&self) -> Result<()> {
        let name = self.field.key();
        if !(self.min.is_finite() && self.max.is_finite()) {
            return Err(Error::InvalidSweep(format!("axis {name}: bounds must be finite")));
        }
        if self.min >= self.max {
            return Err(Error::InvalidSweep(format!("axis {name}: min must be < max")));
        }
        if self.count < 2 {
            return Err(Error::InvalidSweep(format!("axis {name}: count must be ≥ 2")));
        }
        if self.scale == Scale::Log && self.min <= 0.0 {
            return Err(Error::InvalidSweep(format!("axis {name}: log scale needs min > 0")));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepSpec {
    pub base: EffectiveParams,
    /// One or two axes; two-axis grids are row-major over `axes[0]`.
    pub axes: Vec<Axis>,
    /// Output columns.
    pub measures: Vec<Measure>,
    pub output: Option<PathBuf>,
    pub steering_form: SteeringForm,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        if self.axes.is_empty() || self.axes.len() > 2 {
            return Err(Error::InvalidSweep(format!("expected 1 or 2 axes, got {}", self.axes.len())));
        }
        if self.axes.len() == 2 && self.axes[0].field == self.axes[1].field {
            return Err(Error::InvalidSweep("both axes sweep the same field".into()));
        }
        for a in &self.axes {
            a.validate()?;
        }
        self.base.clone().validated()?;
        Ok(())
    }

    pub fn grid_size(&self) -> usize {
        self.axes.iter().map(|a| a.count).product()
    }

    /// Axis values of every grid point, row-major.
    pub fn points(&self) -> Vec<Vec<f64>> {
        let values: Vec<Vec<f64>> = self.axes.iter().map(Axis::values).collect();
        let mut out = vec![Vec::new()];
        for axis in &values {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    axis.iter().map(move |&v| {
                        let mut p = prefix.clone();
                        p.push(v);
                        p
                    })
                })
                .collect();
        }
        out
    }

    /// Parameters at one grid point.
    pub fn params_at(&self, values: &[f64]) -> Result<EffectiveParams> {
        let mut p = self.base.clone();
        for (axis, &v) in self.axes.iter().zip(values) {
            axis.field.set_file_units(&mut p, v);
        }
        p.validated()
    }

    /// Replaces every axis count.
    pub fn with_grid(mut self, count: usize) -> Self {
        for a in &mut self.axes {
            a.count = count;
        }
        self
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        Self::parse(path, &read_file(path)?)
    }

    /// Parses a sweep file (TOML, or JSON by extension). With `preset`,
    /// `base` keys override the preset's base and omitted sections are
    /// taken from the preset.
    pub fn parse(path: &Path, text: &str) -> Result<Self> {
        let file: SweepFile = parse_text(path, text)?;
        let config_err = |message: String| Error::Config {
            path: path.to_path_buf(),
            message,
        };
        let preset = file.preset.as_deref().map(super::preset).transpose()?;

        let mut base = match &preset {
            Some(p) => serde_json::to_value(EffectiveFile::from(&p.base)).expect("serializable"),
            None => serde_json::Value::Object(Default::default()),
        };
        if let Some(overrides) = file.base {
            let serde_json::Value::Object(over) = overrides else {
                return Err(config_err("`base` must be a table".into()));
            };
            let obj = base.as_object_mut().expect("object");
            for (k, v) in over {
                obj.insert(k, v);
            }
        }
        let base: EffectiveFile =
            serde_json::from_value(base).map_err(|e| config_err(format!("in `base`: {e}")))?;
        let base = base
            .into_params()
            .map_err(|e| config_err(format!("in `base`: {e}")))?;

        let axes = match file.axes {
            Some(axes) => axes
                .into_iter()
                .map(|a| {
                    let field = ParamField::from_key(&a.field)
                        .ok_or_else(|| config_err(format!("unknown axis field `{}`", a.field)))?;
                    Ok(Axis { field, min: a.min, max: a.max, count: a.count, scale: a.scale })
                })
                .collect::<Result<Vec<_>>>()?,
            None => match &preset {
                Some(p) => p.axes.clone(),
                None => return Err(config_err("missing `axes`".into())),
            },
        };
        let measures = match file.measures {
            Some(names) => names.iter().map(|n| Measure::parse(n)).collect::<Result<Vec<_>>>()?,
            None => match &preset {
                Some(p) => p.measures.clone(),
                None => default_measures(),
            },
        };
        let spec = SweepSpec {
            base,
            axes,
            measures,
            output: file.output.or_else(|| preset.as_ref().and_then(|p| p.output.clone())),
            steering_form: file.steering_form.unwrap_or_default(),
        };
        spec.validate()?;
        Ok(spec)
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct AxisFile {
    field: String,
    min: f64,
    max: f64,
    count: usize,
    #[serde(default)]
    scale: Scale,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SweepFile {
    preset: Option<String>,
    base: Option<serde_json::Value>,
    axes: Option<Vec<AxisFile>>,
    measures: Option<Vec<String>>,
    output: Option<PathBuf>,
    steering_form: Option<SteeringForm>,
}
