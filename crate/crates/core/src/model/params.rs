use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use super::{angular, cyclic};
use crate::error::{Error, Result};

/// One operating point of the linearized system. Angular units throughout.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EffectiveParams {
    /// Phonon frequency ω_b.
    pub omega_b: f64,
    /// Magnon frequency ω_m; only enters the magnon thermal occupation.
    pub omega_m: f64,
    pub delta_a: f64,
    /// Effective detuning shared by both cavity polarizations.
    pub delta_c: f64,
    pub delta_m: f64,
    pub gamma_a: f64,
    pub kappa_c1: f64,
    pub kappa_c2: f64,
    pub kappa_m: f64,
    pub gamma_b: f64,
    /// Bare Tavis–Cummings strength; the effective coupling is `g_ac2·|sin θ|`.
    pub g_ac2: f64,
    /// Polarizer angle in `[0, 2π)`.
    pub theta: f64,
    /// Total effective optomechanical coupling G_c.
    pub g_eff_c: f64,
    /// Effective magnomechanical coupling G_m.
    pub g_eff_m: f64,
    /// Bath temperature in kelvin.
    pub temperature: f64,
}

impl EffectiveParams {
    /// Baseline operating point of the detuning and decoherence studies:
    /// ω_m/2π = 10 GHz, ω_b/2π = 40 MHz, γ_a/2π = 1 MHz, κ_c1/2π = 3 MHz,
    /// κ_c2/2π = κ_m/2π = 1 MHz, γ_b/2π = 100 Hz, g_ac2/2π = 3 MHz, θ = π/4,
    /// T = 10 mK, G_c/2π = 10 MHz, G_m/2π = 2 MHz, Δ_a = −Δ_m = Δ_c = ω_b.
    pub fn baseline() -> Self {
        let omega_b = angular(40e6);
        EffectiveParams {
            omega_b,
            omega_m: angular(10e9),
            delta_a: omega_b,
            delta_c: omega_b,
            delta_m: -omega_b,
            gamma_a: angular(1e6),
            kappa_c1: angular(3e6),
            kappa_c2: angular(1e6),
            kappa_m: angular(1e6),
            gamma_b: angular(100.0),
            g_ac2: angular(3e6),
            theta: PI / 4.0,
            g_eff_c: angular(10e6),
            g_eff_m: angular(2e6),
            temperature: 0.01,
        }
    }

    /// Baseline with G_m/2π = 3 MHz, used for the (θ, g_ac2) manipulation maps.
    pub fn manipulation_baseline() -> Self {
        EffectiveParams {
            g_eff_m: angular(3e6),
            ..Self::baseline()
        }
    }

    /// Checks positivity invariants and normalizes θ into `[0, 2π)`.
    pub fn validated(mut self) -> Result<Self> {
        for field in ParamField::ALL {
            let v = field.get(&self);
            if !v.is_finite() {
                return Err(Error::invalid(field.key(), "must be finite"));
            }
            match field {
                ParamField::DeltaA | ParamField::DeltaC | ParamField::DeltaM | ParamField::Theta => {}
                ParamField::GAc2 | ParamField::GEffC | ParamField::GEffM | ParamField::Temperature => {
                    if v < 0.0 {
                        return Err(Error::invalid(field.key(), "must be non-negative"));
                    }
                }
                _ => {
                    if v <= 0.0 {
                        return Err(Error::invalid(field.key(), "must be strictly positive"));
                    }
                }
            }
        }
        self.theta = normalize_angle(self.theta);
        Ok(self)
    }
}

/// Wraps an angle into `[0, 2π)`.
pub(crate) fn normalize_angle(theta: f64) -> f64 {
    let t = theta.rem_euclid(TAU);
    if t >= TAU {
        0.0
    } else {
        t
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Unit {
    /// Stored angular, written in Hz.
    Frequency,
    Radian,
    Kelvin,
}

/// Addressable fields of [`EffectiveParams`], named by their parameter-file key.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ParamField {
    OmegaB,
    OmegaM,
    DeltaA,
    DeltaC,
    DeltaM,
    GammaA,
    KappaC1,
    KappaC2,
    KappaM,
    GammaB,
    GAc2,
    Theta,
    GEffC,
    GEffM,
    Temperature,
}

impl ParamField {
    pub const ALL: [ParamField; 15] = [
        ParamField::OmegaB,
        ParamField::OmegaM,
        ParamField::DeltaA,
        ParamField::DeltaC,
        ParamField::DeltaM,
        ParamField::GammaA,
        ParamField::KappaC1,
        ParamField::KappaC2,
        ParamField::KappaM,
        ParamField::GammaB,
        ParamField::GAc2,
        ParamField::Theta,
        ParamField::GEffC,
        ParamField::GEffM,
        ParamField::Temperature,
    ];

    pub fn key(self) -> &'static str {
        match self {
            ParamField::OmegaB => "omega_b_hz",
            ParamField::OmegaM => "omega_m_hz",
            ParamField::DeltaA => "delta_a_hz",
            ParamField::DeltaC => "delta_c_hz",
            ParamField::DeltaM => "delta_m_hz",
            ParamField::GammaA => "gamma_a_hz",
            ParamField::KappaC1 => "kappa_c1_hz",
            ParamField::KappaC2 => "kappa_c2_hz",
            ParamField::KappaM => "kappa_m_hz",
            ParamField::GammaB => "gamma_b_hz",
            ParamField::GAc2 => "g_ac2_hz",
            ParamField::Theta => "theta",
            ParamField::GEffC => "G_c_hz",
            ParamField::GEffM => "G_m_hz",
            ParamField::Temperature => "T",
        }
    }

    pub fn from_key(key: &str) -> Option<ParamField> {
        ParamField::ALL.into_iter().find(|f| f.key() == key)
    }

    pub fn unit(self) -> Unit {
        match self {
            ParamField::Theta => Unit::Radian,
            ParamField::Temperature => Unit::Kelvin,
            _ => Unit::Frequency,
        }
    }

    fn slot(self, p: &mut EffectiveParams) -> &mut f64 {
        match self {
            ParamField::OmegaB => &mut p.omega_b,
            ParamField::OmegaM => &mut p.omega_m,
            ParamField::DeltaA => &mut p.delta_a,
            ParamField::DeltaC => &mut p.delta_c,
            ParamField::DeltaM => &mut p.delta_m,
            ParamField::GammaA => &mut p.gamma_a,
            ParamField::KappaC1 => &mut p.kappa_c1,
            ParamField::KappaC2 => &mut p.kappa_c2,
            ParamField::KappaM => &mut p.kappa_m,
            ParamField::GammaB => &mut p.gamma_b,
            ParamField::GAc2 => &mut p.g_ac2,
            ParamField::Theta => &mut p.theta,
            ParamField::GEffC => &mut p.g_eff_c,
            ParamField::GEffM => &mut p.g_eff_m,
            ParamField::Temperature => &mut p.temperature,
        }
    }

    /// Internal (angular) value.
    pub fn get(self, p: &EffectiveParams) -> f64 {
        match self {
            ParamField::OmegaB => p.omega_b,
            ParamField::OmegaM => p.omega_m,
            ParamField::DeltaA => p.delta_a,
            ParamField::DeltaC => p.delta_c,
            ParamField::DeltaM => p.delta_m,
            ParamField::GammaA => p.gamma_a,
            ParamField::KappaC1 => p.kappa_c1,
            ParamField::KappaC2 => p.kappa_c2,
            ParamField::KappaM => p.kappa_m,
            ParamField::GammaB => p.gamma_b,
            ParamField::GAc2 => p.g_ac2,
            ParamField::Theta => p.theta,
            ParamField::GEffC => p.g_eff_c,
            ParamField::GEffM => p.g_eff_m,
            ParamField::Temperature => p.temperature,
        }
    }

    /// Value in file units (Hz for frequencies).
    pub fn get_file_units(self, p: &EffectiveParams) -> f64 {
        let v = self.get(p);
        match self.unit() {
            Unit::Frequency => cyclic(v),
            _ => v,
        }
    }

    /// Sets the field from a value in file units.
    pub fn set_file_units(self, p: &mut EffectiveParams, value: f64) {
        let v = match self.unit() {
            Unit::Frequency => angular(value),
            _ => value,
        };
        *self.slot(p) = v;
    }
}

impl std::fmt::Display for ParamField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.key())
    }
}

/// Laser inputs from which the cavity drive `η_c = √(2Pκ_c/ħω_c)` is derived.
#[derive(Clone, Debug, PartialEq)]
pub struct CavityLaser {
    /// Input power in watts.
    pub power: f64,
    /// Cavity frequency ω_c (angular).
    pub omega_c: f64,
    /// Input-coupling rate κ_c; `None` uses κ_c1.
    pub kappa_c: Option<f64>,
}

/// Microwave inputs from which `Ω_m = (√5/4)·γ·√N_d·B_d` is derived.
#[derive(Clone, Debug, PartialEq)]
pub struct MagnonMicrowave {
    /// Gyromagnetic ratio γ in rad/(s·T).
    pub gamma_gyro: f64,
    /// Total spin number N_d.
    pub spin_number: f64,
    /// Drive amplitude B_d in tesla.
    pub amplitude: f64,
}

/// Bare couplings and drives; the effective parameters follow from the
/// self-consistent steady state.
#[derive(Clone, Debug, PartialEq)]
pub struct MicroscopicParams {
    pub omega_b: f64,
    pub omega_m: f64,
    pub gamma_a: f64,
    pub kappa_c1: f64,
    pub kappa_c2: f64,
    pub kappa_m: f64,
    pub gamma_b: f64,
    pub g_ac2: f64,
    pub theta: f64,
    pub temperature: f64,
    /// Single-photon optomechanical coupling g_c.
    pub g_c: f64,
    /// Single-magnon magnomechanical coupling g_m.
    pub g_m: f64,
    pub delta_a: f64,
    /// Bare cavity detuning Δ_c⁰.
    pub delta_c0: f64,
    /// Bare magnon detuning Δ_m⁰.
    pub delta_m0: f64,
    /// Direct cavity drive η_c.
    pub eta_c: Option<f64>,
    pub laser: Option<CavityLaser>,
    /// Direct magnon Rabi frequency Ω_m.
    pub rabi_m: Option<f64>,
    pub microwave: Option<MagnonMicrowave>,
    /// Atom Rabi frequency Ω_a; only shifts the c2 amplitude.
    pub rabi_a: f64,
}

impl MicroscopicParams {
    /// Undriven, uncoupled record sharing the baseline rates.
    pub fn undriven() -> Self {
        let b = EffectiveParams::baseline();
        MicroscopicParams {
            omega_b: b.omega_b,
            omega_m: b.omega_m,
            gamma_a: b.gamma_a,
            kappa_c1: b.kappa_c1,
            kappa_c2: b.kappa_c2,
            kappa_m: b.kappa_m,
            gamma_b: b.gamma_b,
            g_ac2: b.g_ac2,
            theta: b.theta,
            temperature: b.temperature,
            g_c: 0.0,
            g_m: 0.0,
            delta_a: b.delta_a,
            delta_c0: b.delta_c,
            delta_m0: b.delta_m,
            eta_c: Some(0.0),
            laser: None,
            rabi_m: Some(0.0),
            microwave: None,
            rabi_a: 0.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("omega_b_hz", self.omega_b),
            ("omega_m_hz", self.omega_m),
            ("gamma_a_hz", self.gamma_a),
            ("kappa_c1_hz", self.kappa_c1),
            ("kappa_c2_hz", self.kappa_c2),
            ("kappa_m_hz", self.kappa_m),
            ("gamma_b_hz", self.gamma_b),
        ];
        for (k, v) in positive {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::invalid(k, "must be strictly positive"));
            }
        }
        let non_negative = [
            ("g_ac2_hz", self.g_ac2),
            ("T", self.temperature),
            ("g_c_hz", self.g_c),
            ("g_m_hz", self.g_m),
            ("eta_c_hz", self.eta_c.unwrap_or(0.0)),
            ("rabi_m_hz", self.rabi_m.unwrap_or(0.0)),
        ];
        for (k, v) in non_negative {
            if !(v.is_finite() && v >= 0.0) {
                return Err(Error::invalid(k, "must be non-negative"));
            }
        }
        for (k, v) in [
            ("theta", self.theta),
            ("delta_a_hz", self.delta_a),
            ("delta_c0_hz", self.delta_c0),
            ("delta_m0_hz", self.delta_m0),
            ("rabi_a_hz", self.rabi_a),
        ] {
            if !v.is_finite() {
                return Err(Error::invalid(k, "must be finite"));
            }
        }
        Ok(())
    }
}
