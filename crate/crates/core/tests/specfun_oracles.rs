mod common;

use common::*;
use radmom::specfun::{ci, j0, j1, j1_zero, si};

#[test]
fn reference_values() {
    let pi = std::f64::consts::PI;
    assert!((si(pi).unwrap() - si_series(pi)).abs() < 1e-13);
    assert!((si(pi).unwrap() - 1.851_937_0).abs() < 1e-7);
    assert!((ci(1.0).unwrap() - ci_series(1.0)).abs() < 1e-13);
    assert!((ci(1.0).unwrap() - 0.337_403_9).abs() < 1e-7);
    assert!((j1(1.0).unwrap() - jn_series(1, 1.0)).abs() < 1e-14);
    assert!((j1(1.0).unwrap() - 0.440_050_6).abs() < 1e-7);
}

#[test]
fn series_region_matches_series_oracles() {
    for i in 1..=80 {
        let x = 0.1 * i as f64;
        assert!((si(x).unwrap() - si_series(x)).abs() < 1e-12, "Si({x})");
        assert!((ci(x).unwrap() - ci_series(x)).abs() < 1e-12, "Ci({x})");
        assert!((j0(x).unwrap() - jn_series(0, x)).abs() < 1e-12, "J0({x})");
        assert!((j1(x).unwrap() - jn_series(1, x)).abs() < 1e-12, "J1({x})");
    }
}

#[test]
fn large_arguments_match_integral_oracles() {
    for x in [9.0, 13.7, 20.0, 31.4, 47.0] {
        assert!((si(x).unwrap() - si_integral(x)).abs() < 1e-10, "Si({x})");
        assert!((ci(x).unwrap() - ci_integral(x)).abs() < 1e-10, "Ci({x})");
        assert!(
            (j0(x).unwrap() - jn_integral(0, x)).abs() < 1e-12,
            "J0({x})"
        );
        assert!(
            (j1(x).unwrap() - jn_integral(1, x)).abs() < 1e-12,
            "J1({x})"
        );
    }
}

#[test]
fn asymptotic_regime() {
    // Si → π/2, Ci → 0 with sin/x and cos/x leading corrections
    let x: f64 = 1000.0;
    let si_lead = std::f64::consts::FRAC_PI_2 - x.cos() / x - x.sin() / (x * x);
    let ci_lead = x.sin() / x - x.cos() / (x * x);
    assert!((si(x).unwrap() - si_lead).abs() < 3e-9);
    assert!((ci(x).unwrap() - ci_lead).abs() < 3e-9);
    assert!((si(x).unwrap() - 1.570_233_121_968_771).abs() < 1e-12);
    assert!((ci(x).unwrap() - 0.000_826_315_511_090_682).abs() < 1e-12);
}

#[test]
fn derivatives_by_finite_differences() {
    let h = 1e-5;
    for x in [0.7, 3.0, 5.5, 17.0, 40.0] {
        let d_si = (si(x + h).unwrap() - si(x - h).unwrap()) / (2.0 * h);
        let d_ci = (ci(x + h).unwrap() - ci(x - h).unwrap()) / (2.0 * h);
        let d_j0 = (j0(x + h).unwrap() - j0(x - h).unwrap()) / (2.0 * h);
        assert!((d_si - x.sin() / x).abs() < 1e-8, "Si' at {x}");
        assert!((d_ci - x.cos() / x).abs() < 1e-8, "Ci' at {x}");
        assert!((d_j0 + j1(x).unwrap()).abs() < 1e-8, "J0' at {x}");
    }
}

#[test]
fn bessel_zeros_are_zeros() {
    for n in 1..=6 {
        let z = j1_zero(n);
        assert!(jn_integral(1, z).abs() < 1e-12, "zero {n}");
    }
    assert!((j1_zero(1) - 3.831_705_970_207_512).abs() < 1e-12);
}
