mod common;

use std::f64::consts::{PI, TAU};

use common::{flip, relative_residual, solve};
use omm_qcorr::measures::{full_report, symplectic_spectrum, MONOGAMY_FLOOR};
use omm_qcorr::model::{angular, EffectiveParams, Mode};
use proptest::prelude::*;

fn manipulation(theta: f64, g_mhz: f64) -> EffectiveParams {
    let mut p = EffectiveParams::manipulation_baseline();
    p.theta = theta;
    p.g_ac2 = angular(g_mhz * 1e6);
    p.validated().unwrap()
}

fn max_abs(m: &nalgebra::DMatrix<f64>) -> f64 {
    m.amax()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn stable_points_give_physical_states(theta in 0.0..TAU, g in 0.0..10.0f64) {
        let p = manipulation(theta, g);
        let (s, v) = solve(&p);
        prop_assert_eq!(s.stable, s.max_re < 0.0);
        if let Some(v) = v {
            let m = v.matrix();
            prop_assert!((m - m.transpose()).amax() <= 1e-12 * max_abs(m));
            prop_assert!(relative_residual(&p, &v) < 1e-10);
            for nu in symplectic_spectrum(&v).unwrap() {
                prop_assert!(nu >= 0.5 - 1e-9, "ν = {}", nu);
            }
            let r = full_report(Some(&v), &s);
            for (m, x) in &r.values {
                let x = x.unwrap();
                prop_assert!(x >= 0.0 && x.is_finite(), "{} = {}", m, x);
            }
        }
    }

    #[test]
    fn mirror_angle_is_a_local_flip(theta in 0.0..TAU, g in 0.0..10.0f64) {
        let (_, v1) = solve(&manipulation(theta, g));
        let (_, v2) = solve(&manipulation(PI - theta, g));
        let (_, v3) = solve(&manipulation(PI + theta, g));
        prop_assert_eq!(v1.is_some(), v2.is_some());
        prop_assert_eq!(v1.is_some(), v3.is_some());
        if let (Some(v1), Some(v2), Some(v3)) = (v1, v2, v3) {
            let scale = max_abs(v1.matrix());
            let d2 = (flip(&v2, &[Mode::Cavity1]).matrix() - v1.matrix()).amax();
            let d3 = (flip(&v3, &[Mode::Atom, Mode::Cavity1, Mode::Cavity2]).matrix() - v1.matrix()).amax();
            prop_assert!(d2 <= 1e-9 * scale, "π−θ: {}", d2 / scale);
            prop_assert!(d3 <= 1e-9 * scale, "π+θ: {}", d3 / scale);
        }
    }

    #[test]
    fn local_flips_leave_measures_unchanged(theta in 0.0..TAU, g in 0.0..8.0f64, k in 0usize..5) {
        let p = manipulation(theta, g);
        let (s, v) = solve(&p);
        if let Some(v) = v {
            let before = full_report(Some(&v), &s);
            let after = full_report(Some(&flip(&v, &[Mode::ALL[k]])), &s);
            for ((m, x), (_, y)) in before.values.iter().zip(&after.values) {
                prop_assert!((x.unwrap() - y.unwrap()).abs() < 1e-9, "{}", m);
            }
        }
    }

    #[test]
    fn detuning_plane_is_stable_and_physical(da in -2.0..2.0f64, dm in -2.0..2.0f64, t in 0.0..0.2f64) {
        let mut p = EffectiveParams::baseline();
        p.delta_a = da * p.omega_b;
        p.delta_m = dm * p.omega_b;
        p.temperature = t;
        let (s, v) = solve(&p);
        prop_assert!(s.stable);
        let v = v.unwrap();
        prop_assert!(relative_residual(&p, &v) < 1e-10);
        let r = full_report(Some(&v), &s);
        prop_assert!(r.error.is_none(), "{:?}", r.error);
    }
}

const _: () = assert!(MONOGAMY_FLOOR <= 1e-9);

#[test]
fn baseline_entanglements_are_all_present() {
    let p = EffectiveParams::baseline();
    let (s, v) = solve(&p);
    let r = full_report(v.as_ref(), &s);
    for name in ["E_am", "E_c1m", "E_c2m"] {
        assert!(r.get_by_name(name).unwrap() > 0.05, "{name}");
    }
}

#[test]
fn only_cavity_one_is_entangled_at_zero_angle() {
    let p = manipulation(0.0, 3.0);
    let (s, v) = solve(&p);
    let r = full_report(v.as_ref(), &s);
    assert!(r.get_by_name("E_c1m").unwrap() > 0.1);
    assert!(r.get_by_name("E_am").unwrap() < 1e-12);
    assert!(r.get_by_name("E_c2m").unwrap() < 1e-12);
}
