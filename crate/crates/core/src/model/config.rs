//! Parameter files (TOML, or JSON when the extension is `.json`).
//!
//! Frequencies are written as cyclic values in Hz with an `_hz` suffix,
//! `theta` in radians and `T` in kelvin:
//!
//! ```toml
//! omega_b_hz = 40e6
//! theta = 0.7853981634
//! G_c_hz = 10e6
//! ```

use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use super::{angular, cyclic, CavityLaser, EffectiveParams, MagnonMicrowave, MicroscopicParams};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum ParamMode {
    Effective,
    Microscopic,
}

#[allow(non_snake_case)]
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EffectiveFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mode: Option<ParamMode>,
    pub omega_b_hz: f64,
    pub omega_m_hz: f64,
    pub delta_a_hz: f64,
    pub delta_c_hz: f64,
    pub delta_m_hz: f64,
    pub gamma_a_hz: f64,
    pub kappa_c1_hz: f64,
    pub kappa_c2_hz: f64,
    pub kappa_m_hz: f64,
    pub gamma_b_hz: f64,
    pub g_ac2_hz: f64,
    pub theta: f64,
    pub G_c_hz: f64,
    pub G_m_hz: f64,
    pub T: f64,
}

impl From<&EffectiveParams> for EffectiveFile {
    fn from(p: &EffectiveParams) -> Self {
        EffectiveFile {
            mode: None,
            omega_b_hz: cyclic(p.omega_b),
            omega_m_hz: cyclic(p.omega_m),
            delta_a_hz: cyclic(p.delta_a),
            delta_c_hz: cyclic(p.delta_c),
            delta_m_hz: cyclic(p.delta_m),
            gamma_a_hz: cyclic(p.gamma_a),
            kappa_c1_hz: cyclic(p.kappa_c1),
            kappa_c2_hz: cyclic(p.kappa_c2),
            kappa_m_hz: cyclic(p.kappa_m),
            gamma_b_hz: cyclic(p.gamma_b),
            g_ac2_hz: cyclic(p.g_ac2),
            theta: p.theta,
            G_c_hz: cyclic(p.g_eff_c),
            G_m_hz: cyclic(p.g_eff_m),
            T: p.temperature,
        }
    }
}

impl EffectiveFile {
    pub fn into_params(self) -> Result<EffectiveParams> {
        EffectiveParams {
            omega_b: angular(self.omega_b_hz),
            omega_m: angular(self.omega_m_hz),
            delta_a: angular(self.delta_a_hz),
            delta_c: angular(self.delta_c_hz),
            delta_m: angular(self.delta_m_hz),
            gamma_a: angular(self.gamma_a_hz),
            kappa_c1: angular(self.kappa_c1_hz),
            kappa_c2: angular(self.kappa_c2_hz),
            kappa_m: angular(self.kappa_m_hz),
            gamma_b: angular(self.gamma_b_hz),
            g_ac2: angular(self.g_ac2_hz),
            theta: self.theta,
            g_eff_c: angular(self.G_c_hz),
            g_eff_m: angular(self.G_m_hz),
            temperature: self.T,
        }
        .validated()
    }
}

#[allow(non_snake_case)]
#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MicroscopicFile {
    #[serde(default)]
    pub mode: Option<ParamMode>,
    pub omega_b_hz: f64,
    pub omega_m_hz: f64,
    pub gamma_a_hz: f64,
    pub kappa_c1_hz: f64,
    pub kappa_c2_hz: f64,
    pub kappa_m_hz: f64,
    pub gamma_b_hz: f64,
    pub g_ac2_hz: f64,
    pub theta: f64,
    pub T: f64,
    pub g_c_hz: f64,
    pub g_m_hz: f64,
    pub delta_a_hz: f64,
    pub delta_c0_hz: f64,
    pub delta_m0_hz: f64,
    pub eta_c_hz: Option<f64>,
    pub power_w: Option<f64>,
    pub omega_c_hz: Option<f64>,
    pub kappa_c_hz: Option<f64>,
    pub rabi_m_hz: Option<f64>,
    /// Gyromagnetic ratio in rad/(s·T).
    pub gamma_gyro: Option<f64>,
    pub spin_number: Option<f64>,
    pub drive_amplitude_t: Option<f64>,
    #[serde(default)]
    pub rabi_a_hz: f64,
}

impl MicroscopicFile {
    pub fn into_params(self) -> Result<MicroscopicParams> {
        let laser = match (self.power_w, self.omega_c_hz) {
            (None, None) => None,
            (Some(power), Some(omega_c)) => Some(CavityLaser {
                power,
                omega_c: angular(omega_c),
                kappa_c: self.kappa_c_hz.map(angular),
            }),
            _ => return Err(Error::invalid("power_w", "laser drive needs both power_w and omega_c_hz")),
        };
        let microwave = match (self.gamma_gyro, self.spin_number, self.drive_amplitude_t) {
            (None, None, None) => None,
            (Some(gamma_gyro), Some(spin_number), Some(amplitude)) => Some(MagnonMicrowave {
                gamma_gyro,
                spin_number,
                amplitude,
            }),
            _ => {
                return Err(Error::invalid(
                    "gamma_gyro",
                    "microwave drive needs gamma_gyro, spin_number and drive_amplitude_t",
                ))
            }
        };
        let p = MicroscopicParams {
            omega_b: angular(self.omega_b_hz),
            omega_m: angular(self.omega_m_hz),
            gamma_a: angular(self.gamma_a_hz),
            kappa_c1: angular(self.kappa_c1_hz),
            kappa_c2: angular(self.kappa_c2_hz),
            kappa_m: angular(self.kappa_m_hz),
            gamma_b: angular(self.gamma_b_hz),
            g_ac2: angular(self.g_ac2_hz),
            theta: self.theta,
            temperature: self.T,
            g_c: angular(self.g_c_hz),
            g_m: angular(self.g_m_hz),
            delta_a: angular(self.delta_a_hz),
            delta_c0: angular(self.delta_c0_hz),
            delta_m0: angular(self.delta_m0_hz),
            eta_c: self.eta_c_hz.map(angular),
            laser,
            rabi_m: self.rabi_m_hz.map(angular),
            microwave,
            rabi_a: angular(self.rabi_a_hz),
        };
        p.validate()?;
        Ok(p)
    }
}

/// A parsed single-point configuration.
#[derive(Clone, Debug, PartialEq)]
pub enum PointParams {
    Effective(EffectiveParams),
    Microscopic(MicroscopicParams),
}

impl PointParams {
    /// Effective parameters, solving the steady state in microscopic mode.
    pub fn effective(&self) -> Result<EffectiveParams> {
        match self {
            PointParams::Effective(p) => Ok(p.clone()),
            PointParams::Microscopic(m) => super::effective_from_micro(m),
        }
    }
}

fn is_json(path: &Path) -> bool {
    path.extension().is_some_and(|e| e.eq_ignore_ascii_case("json"))
}

/// Deserializes `text` as JSON or TOML depending on the extension of `path`.
pub(crate) fn parse_text<T: DeserializeOwned>(path: &Path, text: &str) -> Result<T> {
    let parsed = if is_json(path) {
        serde_json::from_str(text).map_err(|e| e.to_string())
    } else {
        toml::from_str(text).map_err(|e| e.to_string())
    };
    parsed.map_err(|message| Error::Config {
        path: path.to_path_buf(),
        message: message.trim_end().to_string(),
    })
}

pub(crate) fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

#[derive(Deserialize)]
struct ModeProbe {
    #[serde(default)]
    mode: Option<ParamMode>,
}

fn with_path<T>(path: &Path, r: Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        Error::InvalidParameter { field, reason } => Error::Config {
            path: path.to_path_buf(),
            message: format!("field `{field}`: {reason}"),
        },
        other => other,
    })
}

/// Parses a point configuration from text. `mode_override` wins over the
/// file's `mode` key; the default is effective.
pub fn parse_point(path: &Path, text: &str, mode_override: Option<ParamMode>) -> Result<PointParams> {
    let mode = match mode_override {
        Some(m) => m,
        None => {
            let probe: serde_json::Value = parse_text(path, text)?;
            serde_json::from_value::<ModeProbe>(probe)
                .map_err(|e| Error::Config {
                    path: path.to_path_buf(),
                    message: format!("field `mode`: {e}"),
                })?
                .mode
                .unwrap_or(ParamMode::Effective)
        }
    };
    match mode {
        ParamMode::Effective => {
            let f: EffectiveFile = parse_text(path, text)?;
            with_path(path, f.into_params()).map(PointParams::Effective)
        }
        ParamMode::Microscopic => {
            let f: MicroscopicFile = parse_text(path, text)?;
            with_path(path, f.into_params()).map(PointParams::Microscopic)
        }
    }
}

pub fn load_point(path: &Path, mode_override: Option<ParamMode>) -> Result<PointParams> {
    parse_point(path, &read_file(path)?, mode_override)
}

/// Serializes effective parameters in the parameter-file format.
pub fn effective_to_toml(p: &EffectiveParams) -> String {
    toml::to_string(&EffectiveFile::from(p)).expect("flat record of floats always serializes")
}

#[cfg(test)]
mod tests {
    use super::*;

    const BASELINE: &str = r#"
omega_b_hz = 40e6
omega_m_hz = 10e9
delta_a_hz = 40e6
delta_c_hz = 40e6
delta_m_hz = -40e6
gamma_a_hz = 1e6
kappa_c1_hz = 3e6
kappa_c2_hz = 1e6
kappa_m_hz = 1e6
gamma_b_hz = 100
g_ac2_hz = 3e6
theta = 0.7853981633974483
G_c_hz = 10e6
G_m_hz = 2e6
T = 0.01
"#;

    #[test]
    fn baseline_file_matches_builtin() {
        let p = parse_point(Path::new("p.toml"), BASELINE, None).unwrap();
        let PointParams::Effective(p) = p else { panic!() };
        let b = EffectiveParams::baseline();
        for f in super::super::ParamField::ALL {
            let (x, y) = (f.get(&p), f.get(&b));
            assert!((x - y).abs() <= 1e-12 * y.abs(), "{f}: {x} vs {y}");
        }
    }

    #[test]
    fn toml_round_trip() {
        let b = EffectiveParams::baseline();
        let text = effective_to_toml(&b);
        let PointParams::Effective(p) = parse_point(Path::new("x.toml"), &text, None).unwrap() else {
            panic!()
        };
        assert!((p.g_eff_c - b.g_eff_c).abs() < 1e-6);
    }

    #[test]
    fn json_is_accepted() {
        let json = serde_json::to_string(&EffectiveFile::from(&EffectiveParams::baseline())).unwrap();
        assert!(parse_point(Path::new("x.json"), &json, None).is_ok());
    }

    #[test]
    fn diagnostics_name_the_key() {
        let bad = BASELINE.replace("kappa_m_hz", "kapa_m_hz");
        let err = parse_point(Path::new("p.toml"), &bad, None).unwrap_err().to_string();
        assert!(err.contains("kapa_m_hz"), "{err}");

        let bad = BASELINE.replace("gamma_b_hz = 100", "gamma_b_hz = \"fast\"");
        let err = parse_point(Path::new("p.toml"), &bad, None).unwrap_err().to_string();
        assert!(err.contains("gamma_b_hz"), "{err}");

        let bad = BASELINE.replace("gamma_b_hz = 100", "gamma_b_hz = -100");
        let err = parse_point(Path::new("p.toml"), &bad, None).unwrap_err().to_string();
        assert!(err.contains("gamma_b_hz"), "{err}");
    }

    #[test]
    fn microscopic_mode_from_key() {
        let text = r#"
mode = "microscopic"
omega_b_hz = 40e6
omega_m_hz = 10e9
gamma_a_hz = 1e6
kappa_c1_hz = 3e6
kappa_c2_hz = 1e6
kappa_m_hz = 1e6
gamma_b_hz = 100
g_ac2_hz = 3e6
theta = 0.7853981633974483
T = 0.01
g_c_hz = 0
g_m_hz = 0
delta_a_hz = 40e6
delta_c0_hz = 40e6
delta_m0_hz = -40e6
eta_c_hz = 1e6
rabi_m_hz = 1e6
"#;
        let p = parse_point(Path::new("m.toml"), text, None).unwrap();
        assert!(matches!(p, PointParams::Microscopic(_)));
        let eff = p.effective().unwrap();
        assert_eq!(eff.g_eff_c, 0.0);

        let both = format!("{text}power_w = 1e-3\nomega_c_hz = 2e14\n");
        let p = parse_point(Path::new("m.toml"), &both, None).unwrap();
        assert!(matches!(p.effective(), Err(Error::ConflictingDriveInput(_))));
    }
}
