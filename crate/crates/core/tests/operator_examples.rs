mod common;

use std::f64::consts::PI;

use common::*;
use radmom::fracint::{ek_k_apply, i_image};
use radmom::radialops::{
    pplus_apply, zinv_apply, zinv_kernel, zinv_kernel_cell, zinv_quad, zplus_discrete, zplus_quad,
};
use radmom::tabulate::Tabulated;
use radmom::transforms::{dst_apply, fs_quad};
use radmom::{FunctionDescriptor as Fd, QuadratureSettings, RadialGrid};

#[test]
fn discrete_sine_transform_tracks_the_continuous_one() {
    let g = RadialGrid::new(40.0, 4095).unwrap();
    let f = Fd::exp(1.0);
    let s = QuadratureSettings::default();
    let image = dst_apply(&g.sample(&f));
    let scale = (g.spacing() * g.radius() / PI).sqrt();
    let mut m = 1;
    while g.wavenumber(m) <= 5.0 {
        let k = g.wavenumber(m);
        let expect = fs_quad(&f, k, &s).unwrap();
        // closed form: √(2/π) k/(1+k²)
        assert!((expect - (2.0 / PI).sqrt() * k / (1.0 + k * k)).abs() < 1e-10);
        assert!(
            (scale * image.values()[m - 1] - expect).abs() < 2e-3,
            "k={k}"
        );
        m += 25;
    }
}

#[test]
fn discrete_zplus_on_cosine_carries_the_boundary_term() {
    let g = RadialGrid::new(20.0, 2047).unwrap();
    let z = zplus_discrete(&g.sample(&Fd::cos(1.0))).unwrap();
    for (j, v) in z.values().iter().enumerate().step_by(16) {
        let r = g.node(j + 1);
        if !(1.0..=15.0).contains(&r) {
            continue;
        }
        let expect = 2.0 / PI * (1.0 / r - (r.sin() * ci_integral(r) - r.cos() * si_integral(r)));
        assert!((v - expect).abs() < 2e-2, "r={r}: {v} vs {expect}");
    }
}

#[test]
fn discrete_and_quadrature_zplus_agree_in_the_interior() {
    let s = QuadratureSettings::default();
    let g = RadialGrid::new(20.0, 2047).unwrap();
    for f in [Fd::t_exp(1.0), Fd::t_gauss()] {
        let z = zplus_discrete(&g.sample(&f)).unwrap();
        for (j, v) in z.values().iter().enumerate().step_by(64) {
            let r = g.node(j + 1);
            if (2.0..=14.0).contains(&r) {
                let q = zplus_quad(&f, r, &s).unwrap();
                assert!((v - q).abs() < 1e-3, "{f} at r={r}: {v} vs {q}");
            }
        }
    }
}

#[test]
fn quadrature_zplus_matches_momentum_space_weighting() {
    // F_s of t e^{-t²/2} is k e^{-k²/2}, so z⁺ f = F_s(k² e^{-k²/2})
    let s = QuadratureSettings::default();
    for r in [0.5, 1.0, 2.0] {
        let oracle = (2.0 / PI).sqrt()
            * simpson(0.0, 14.0, 4000, |k| {
                (k * r).sin() * k * k * (-0.5 * k * k).exp()
            });
        let got = zplus_quad(&Fd::t_gauss(), r, &s).unwrap();
        assert!((got - oracle).abs() < 1e-6, "r={r}: {got} vs {oracle}");
    }
}

#[test]
fn pplus_has_spherical_sine_eigenfunctions() {
    let g = RadialGrid::new(8.0, 255).unwrap();
    let k1 = g.wavenumber(3);
    let phi = g.sample_with(|r| (k1 * r).sin() / r);
    let out = pplus_apply(&phi).unwrap();
    let scale = phi.max_abs();
    for (a, b) in out.values().iter().zip(phi.values()) {
        assert!((a - k1 * b).abs() <= 1e-10 * k1 * scale);
    }
}

#[test]
fn log_kernel_examples() {
    assert!((zinv_kernel(2.0, 1.0).unwrap() - 0.5 * 3f64.ln()).abs() < 1e-15);
    assert_eq!(
        zinv_kernel(0.7, 2.3).unwrap(),
        zinv_kernel(2.3, 0.7).unwrap()
    );
    assert!(zinv_kernel(1.0, 1.0).is_err());
    // cell average of the log singularity against a fine midpoint sum
    let (r, h) = (1.5, 0.01);
    let n = 200_000;
    let step = 2.0 * h / n as f64;
    let mean: f64 = (0..n)
        .map(|i| zinv_kernel(r, r - h + (i as f64 + 0.5) * step).unwrap())
        .sum::<f64>()
        / n as f64;
    assert!((zinv_kernel_cell(r, h) - mean).abs() < 1e-4);
}

#[test]
fn inverse_paths_agree() {
    let s = QuadratureSettings::default();
    let f = Fd::exp(1.0);
    for r in [0.5, 1.0, 2.0] {
        let kernel = zinv_quad(&f, r, &s).unwrap();
        let tab = Tabulated::new(&i_image(&f, s));
        let rki = r * ek_k_apply(&tab, r, &s).unwrap();
        assert!(
            (rki - 2.0 * kernel).abs() < 1e-5,
            "r={r}: rKI={rki}, kernel={kernel}"
        );
    }
    let g = RadialGrid::new(20.0, 511).unwrap();
    let chi = g.sample(&f);
    let back = zplus_discrete(&zinv_apply(&chi).unwrap()).unwrap();
    assert!(back.max_abs_diff(&chi).unwrap() < 1e-10);
}
