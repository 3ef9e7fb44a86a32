use std::f64::consts::SQRT_2;

use nalgebra::Complex;

use super::{EffectiveParams, MicroscopicParams, HBAR};
use crate::error::{Error, Result};

type C64 = Complex<f64>;

const RELAXATION: f64 = 0.5;
const TOLERANCE: f64 = 1e-12;
const MAX_ITERATIONS: usize = 1000;
const TRACE_LEN: usize = 8;

/// Mean-field amplitudes at the self-consistent fixed point.
#[derive(Clone, Debug, PartialEq)]
pub struct SteadyState {
    pub c1: C64,
    pub c2: C64,
    /// Total optical amplitude `√(c1s² + c2s²)` on complex values.
    pub c_total: C64,
    pub m: C64,
    /// Dimensionless phonon displacement q_s.
    pub q: f64,
    pub delta_c: f64,
    pub delta_m: f64,
    pub iterations: usize,
}

/// Returns `(η_c, Ω_m)`, either passed through or derived from the
/// physical drive inputs.
pub fn drive_strengths(micro: &MicroscopicParams) -> Result<(f64, f64)> {
    let eta = match (micro.eta_c, &micro.laser) {
        (Some(_), Some(_)) => return Err(Error::ConflictingDriveInput("eta_c")),
        (Some(eta), None) => eta,
        (None, Some(l)) => {
            let kappa = l.kappa_c.unwrap_or(micro.kappa_c1);
            if l.power < 0.0 || l.omega_c <= 0.0 || kappa <= 0.0 {
                return Err(Error::invalid("laser", "power must be ≥ 0 and ω_c, κ_c > 0"));
            }
            (2.0 * l.power * kappa / (HBAR * l.omega_c)).sqrt()
        }
        (None, None) => return Err(Error::MissingDriveInput("eta_c or laser power inputs")),
    };
    let rabi = match (micro.rabi_m, &micro.microwave) {
        (Some(_), Some(_)) => return Err(Error::ConflictingDriveInput("rabi_m")),
        (Some(r), None) => r,
        (None, Some(mw)) => {
            if mw.spin_number < 0.0 {
                return Err(Error::invalid("spin_number", "must be non-negative"));
            }
            5f64.sqrt() / 4.0 * mw.gamma_gyro * mw.spin_number.sqrt() * mw.amplitude
        }
        (None, None) => return Err(Error::MissingDriveInput("rabi_m or microwave inputs")),
    };
    Ok((eta, rabi))
}

struct Amplitudes {
    c1: C64,
    c2: C64,
    m: C64,
}

fn amplitudes(micro: &MicroscopicParams, eta: f64, rabi_m: f64, delta_c: f64, delta_m: f64) -> Amplitudes {
    let i = C64::i();
    let (s, c) = micro.theta.sin_cos();
    let cav1 = C64::new(micro.kappa_c1, delta_c);
    let cav2 = C64::new(micro.kappa_c2, delta_c);
    let atom = C64::new(micro.gamma_a, micro.delta_a);
    let c1 = eta * c.abs() / cav1;
    let c2 = (eta * s.abs() * atom - i * micro.g_ac2 * micro.rabi_a)
        / (micro.g_ac2 * micro.g_ac2 + atom * cav2);
    let m = rabi_m / C64::new(micro.kappa_m, delta_m);
    Amplitudes { c1, c2, m }
}

/// Solves the mean-field amplitudes together with the radiation-pressure
/// displacement q_s by relaxed fixed-point iteration.
pub fn steady_state(micro: &MicroscopicParams) -> Result<SteadyState> {
    micro.validate()?;
    let (eta, rabi_m) = drive_strengths(micro)?;
    let detunings = |q: f64| (micro.delta_c0 - micro.g_c * q, micro.delta_m0 - micro.g_m * q);
    let displacement = |a: &Amplitudes| {
        (micro.g_c * (a.c1.norm_sqr() + a.c2.norm_sqr()) - micro.g_m * a.m.norm_sqr()) / micro.omega_b
    };

    let mut q = 0.0;
    let mut trace = Vec::with_capacity(TRACE_LEN);
    for iteration in 1..=MAX_ITERATIONS {
        let (dc, dm) = detunings(q);
        let amps = amplitudes(micro, eta, rabi_m, dc, dm);
        let next = (1.0 - RELAXATION) * q + RELAXATION * displacement(&amps);
        let step = (next - q).abs();
        if trace.len() == TRACE_LEN {
            trace.remove(0);
        }
        trace.push(step);
        if !next.is_finite() {
            return Err(Error::SteadyStateNotConverged { iterations: iteration, trace });
        }
        q = next;
        if step <= TOLERANCE * q.abs().max(1.0) {
            let (delta_c, delta_m) = detunings(q);
            let a = amplitudes(micro, eta, rabi_m, delta_c, delta_m);
            return Ok(SteadyState {
                c_total: (a.c1 * a.c1 + a.c2 * a.c2).sqrt(),
                c1: a.c1,
                c2: a.c2,
                m: a.m,
                q,
                delta_c,
                delta_m,
                iterations: iteration,
            });
        }
    }
    Err(Error::SteadyStateNotConverged {
        iterations: MAX_ITERATIONS,
        trace,
    })
}

/// Effective detunings `Δ_j = Δ_j⁰ − g_j q_s` and couplings `G_j = √2 g_j |j_s|`.
pub fn effective_from_micro(micro: &MicroscopicParams) -> Result<EffectiveParams> {
    let ss = steady_state(micro)?;
    EffectiveParams {
        omega_b: micro.omega_b,
        omega_m: micro.omega_m,
        delta_a: micro.delta_a,
        delta_c: ss.delta_c,
        delta_m: ss.delta_m,
        gamma_a: micro.gamma_a,
        kappa_c1: micro.kappa_c1,
        kappa_c2: micro.kappa_c2,
        kappa_m: micro.kappa_m,
        gamma_b: micro.gamma_b,
        g_ac2: micro.g_ac2,
        theta: micro.theta,
        g_eff_c: SQRT_2 * micro.g_c * ss.c_total.norm(),
        g_eff_m: SQRT_2 * micro.g_m * ss.m.norm(),
        temperature: micro.temperature,
    }
    .validated()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{angular, CavityLaser, MagnonMicrowave};

    fn close(a: C64, b: C64) -> bool {
        (a - b).norm() <= 1e-12 * (1.0 + b.norm())
    }

    #[test]
    fn undriven_fixed_point_is_zero() {
        let ss = steady_state(&MicroscopicParams::undriven()).unwrap();
        assert_eq!(ss.c1, C64::new(0.0, 0.0));
        assert_eq!(ss.c2, C64::new(0.0, 0.0));
        assert_eq!(ss.m, C64::new(0.0, 0.0));
        assert_eq!(ss.q, 0.0);
    }

    #[test]
    fn resonant_magnon_amplitude_is_one() {
        let mut p = MicroscopicParams::undriven();
        p.delta_m0 = 0.0;
        p.rabi_m = Some(p.kappa_m);
        let ss = steady_state(&p).unwrap();
        assert!(close(ss.m, C64::new(1.0, 0.0)));
    }

    #[test]
    fn decoupled_atom_limit() {
        let mut p = MicroscopicParams::undriven();
        p.g_ac2 = 0.0;
        p.eta_c = Some(angular(5e6));
        p.rabi_a = angular(1e6);
        let ss = steady_state(&p).unwrap();
        let expected = angular(5e6) * p.theta.sin().abs() / C64::new(p.kappa_c2, p.delta_c0);
        assert!(close(ss.c2, expected));
    }

    #[test]
    fn amplitudes_scale_linearly_without_radiation_pressure() {
        let mut p = MicroscopicParams::undriven();
        p.eta_c = Some(angular(2e6));
        p.rabi_m = Some(angular(1e6));
        p.rabi_a = angular(0.3e6);
        let a = steady_state(&p).unwrap();
        p.eta_c = Some(angular(6e6));
        p.rabi_m = Some(angular(3e6));
        p.rabi_a = angular(0.9e6);
        let b = steady_state(&p).unwrap();
        assert!(close(b.c1, a.c1 * 3.0));
        assert!(close(b.c2, a.c2 * 3.0));
        assert!(close(b.m, a.m * 3.0));
    }

    #[test]
    fn drive_strength_formulas() {
        let mut p = MicroscopicParams::undriven();
        p.eta_c = None;
        p.rabi_m = None;
        p.laser = Some(CavityLaser { power: 0.0, omega_c: angular(2e14), kappa_c: None });
        p.microwave = Some(MagnonMicrowave { gamma_gyro: angular(28e9), spin_number: 3.5e16, amplitude: 0.0 });
        assert_eq!(drive_strengths(&p).unwrap(), (0.0, 0.0));

        p.laser.as_mut().unwrap().power = 1e-3;
        let (e1, _) = drive_strengths(&p).unwrap();
        p.laser.as_mut().unwrap().power = 2e-3;
        let (e2, _) = drive_strengths(&p).unwrap();
        assert!((e2 / e1 - 2f64.sqrt()).abs() < 1e-12);
        let expected = (2.0 * 1e-3 * p.kappa_c1 / (HBAR * angular(2e14))).sqrt();
        assert!((e1 - expected).abs() < 1e-9 * expected);

        p.microwave.as_mut().unwrap().amplitude = 1e-4;
        let (_, r) = drive_strengths(&p).unwrap();
        let expected = 5f64.sqrt() / 4.0 * angular(28e9) * 3.5e16f64.sqrt() * 1e-4;
        assert!((r - expected).abs() < 1e-9 * expected);
    }

    #[test]
    fn drive_inputs_missing_or_conflicting() {
        let mut p = MicroscopicParams::undriven();
        p.eta_c = None;
        assert!(matches!(drive_strengths(&p), Err(Error::MissingDriveInput(_))));
        p.eta_c = Some(1.0);
        p.laser = Some(CavityLaser { power: 1.0, omega_c: 1.0, kappa_c: None });
        assert!(matches!(drive_strengths(&p), Err(Error::ConflictingDriveInput(_))));
    }

    #[test]
    fn no_radiation_pressure_keeps_bare_detunings() {
        let mut p = MicroscopicParams::undriven();
        p.eta_c = Some(angular(50e6));
        p.rabi_m = Some(angular(20e6));
        let eff = effective_from_micro(&p).unwrap();
        assert_eq!(eff.delta_c, p.delta_c0);
        assert_eq!(eff.delta_m, p.delta_m0);
        assert_eq!(eff.g_eff_c, 0.0);
        assert_eq!(eff.g_eff_m, 0.0);
    }

    #[test]
    fn self_consistent_shift_satisfies_fixed_point() {
        let mut p = MicroscopicParams::undriven();
        p.g_c = 2.0;
        p.g_m = 1.0;
        p.eta_c = Some(angular(3e9));
        p.rabi_m = Some(angular(5e9));
        let ss = steady_state(&p).unwrap();
        assert!(ss.q != 0.0);
        let residual = ss.q
            - (p.g_c * (ss.c1.norm_sqr() + ss.c2.norm_sqr()) - p.g_m * ss.m.norm_sqr()) / p.omega_b;
        assert!(residual.abs() < 1e-9 * ss.q.abs().max(1.0));
        assert!((ss.delta_c - (p.delta_c0 - p.g_c * ss.q)).abs() < 1e-6);

        let eff = effective_from_micro(&p).unwrap();
        assert!((eff.g_eff_c - SQRT_2 * p.g_c * ss.c_total.norm()).abs() < 1e-9 * eff.g_eff_c);
        assert!((eff.g_eff_m - SQRT_2 * p.g_m * ss.m.norm()).abs() < 1e-9 * eff.g_eff_m);
        // Copied fields are untouched.
        assert_eq!(eff.gamma_a, p.gamma_a);
        assert_eq!(eff.kappa_c1, p.kappa_c1);
        assert_eq!(eff.omega_m, p.omega_m);
        assert_eq!(eff.theta, p.theta);
    }

    #[test]
    fn oscillating_fixed_point_reports_trace() {
        // Single cavity driven into its bistable region: in units of κ the
        // map is q ↦ B / (1 + (2 − q)²) with B = 15, which relaxed
        // iteration never settles.
        let mut p = MicroscopicParams::undriven();
        p.theta = 0.0;
        p.g_c = 1.0;
        let kappa = p.kappa_c1;
        p.delta_c0 = 2.0 * kappa;
        p.eta_c = Some((15.0 * p.omega_b * kappa.powi(3) / (p.g_c * p.g_c)).sqrt());
        match steady_state(&p) {
            Err(Error::SteadyStateNotConverged { iterations, trace }) => {
                assert_eq!(iterations, MAX_ITERATIONS);
                assert_eq!(trace.len(), TRACE_LEN);
                assert!(trace.iter().all(|s| *s > 1e-6 * kappa));
            }
            other => panic!("expected non-convergence, got {other:?}"),
        }
    }
}
