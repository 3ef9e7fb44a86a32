//! Parameter records, unit conventions, thermal occupations and the map
//! from microscopic drives to effective linearized couplings.
//!
//! All frequencies and rates are stored as angular values (rad/s).
//! Parameter files use cyclic frequencies in Hz; see [`config`].

pub mod config;
mod params;
mod steady;

pub use params::{
    CavityLaser, EffectiveParams, MagnonMicrowave, MicroscopicParams, ParamField, Unit,
};
pub use steady::{drive_strengths, effective_from_micro, steady_state, SteadyState};

use std::f64::consts::TAU;

/// Reduced Planck constant (J·s), CODATA 2018.
pub const HBAR: f64 = 1.054_571_817e-34;
/// Boltzmann constant (J/K), CODATA 2018.
pub const K_B: f64 = 1.380_649e-23;

/// Mode labels in the fixed quadrature order used throughout the crate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Mode {
    Atom,
    Cavity1,
    Cavity2,
    Magnon,
    Phonon,
}

impl Mode {
    pub const ALL: [Mode; 5] = [
        Mode::Atom,
        Mode::Cavity1,
        Mode::Cavity2,
        Mode::Magnon,
        Mode::Phonon,
    ];

    /// Position of the mode in `(a, c1, c2, m, b)`.
    pub fn index(self) -> usize {
        self as usize
    }

    pub fn label(self) -> &'static str {
        match self {
            Mode::Atom => "a",
            Mode::Cavity1 => "c1",
            Mode::Cavity2 => "c2",
            Mode::Magnon => "m",
            Mode::Phonon => "b",
        }
    }

    pub fn from_label(s: &str) -> Option<Mode> {
        Mode::ALL.into_iter().find(|m| m.label() == s)
    }
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

/// Quadrature layout: interleaved `(X_a, Y_a, X_c1, Y_c1, …, q, p)`,
/// vacuum variance 1/2.
pub const VACUUM_VARIANCE: f64 = 0.5;

/// Converts a cyclic frequency in Hz to angular frequency.
pub fn angular(hz: f64) -> f64 {
    TAU * hz
}

/// Converts an angular frequency to a cyclic frequency in Hz.
pub fn cyclic(omega: f64) -> f64 {
    omega / TAU
}

/// Bose–Einstein occupation `1/(exp(ħω/k_B T) − 1)`; zero at `T = 0`.
pub fn thermal_occupation(omega: f64, temperature: f64) -> f64 {
    if temperature <= 0.0 {
        return 0.0;
    }
    let x = HBAR * omega / (K_B * temperature);
    1.0 / x.exp_m1()
}
