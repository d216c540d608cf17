use proptest::prelude::*;
use radmom::fracint::{ek_i_apply, ek_k_apply};
use radmom::grid::{inner_product_half_line, inner_product_spherical};
use radmom::radialops::{pplus_apply, pr2_apply, zinv_apply, zplus_discrete};
use radmom::transforms::dst_apply;
use radmom::{FunctionDescriptor, QuadratureSettings, RadialGrid, SampledFunction, Space};

fn samples(radius: f64, values: Vec<f64>) -> SampledFunction {
    let grid = RadialGrid::new(radius, values.len()).unwrap();
    SampledFunction::new(grid, values, Space::Position).unwrap()
}

fn vectors(n: std::ops::Range<usize>) -> impl Strategy<Value = Vec<f64>> {
    n.prop_flat_map(|len| proptest::collection::vec(-1.0..1.0f64, len))
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn dst_is_an_involution(v in vectors(1..200), radius in 0.5..50.0f64) {
        let chi = samples(radius, v);
        let back = dst_apply(&dst_apply(&chi));
        prop_assert!(back.max_abs_diff(&chi).unwrap() <= 1e-12 * chi.max_abs().max(1.0));
        prop_assert_eq!(back.space(), Space::Position);
    }

    #[test]
    fn dst_preserves_inner_products(pair in (1..150usize).prop_flat_map(|n| (
        proptest::collection::vec(-1.0..1.0f64, n),
        proptest::collection::vec(-1.0..1.0f64, n),
    ))) {
        let (a, b) = pair;
        let dot: f64 = a.iter().zip(&b).map(|(x, y)| x * y).sum();
        let sa = dst_apply(&samples(1.0, a.clone()));
        let sb = dst_apply(&samples(1.0, b.clone()));
        let after: f64 = sa.values().iter().zip(sb.values()).map(|(x, y)| x * y).sum();
        prop_assert!((after - dot).abs() <= 1e-10 * norm(&a) * norm(&b) + 1e-300);
    }

    #[test]
    fn zplus_is_positive(v in vectors(1..120), radius in 0.5..30.0f64) {
        let chi = samples(radius, v);
        let z = zplus_discrete(&chi).unwrap();
        let form = inner_product_half_line(&chi, &z).unwrap();
        prop_assert!(form >= -1e-12 * chi.max_abs().powi(2));
    }

    #[test]
    fn zinv_inverts_zplus(v in vectors(1..120), radius in 0.5..30.0f64) {
        let chi = samples(radius, v);
        let back = zinv_apply(&zplus_discrete(&chi).unwrap()).unwrap();
        prop_assert!(back.max_abs_diff(&chi).unwrap() <= 1e-10 * chi.max_abs().max(1e-300));
    }

    #[test]
    fn pplus_squares_to_pr2(v in vectors(2..100), radius in 0.5..20.0f64) {
        let phi = samples(radius, v);
        let twice = pplus_apply(&pplus_apply(&phi).unwrap()).unwrap();
        let direct = pr2_apply(&phi).unwrap();
        prop_assert!(twice.max_abs_diff(&direct).unwrap() <= 1e-10 * direct.max_abs().max(1.0));
    }

    #[test]
    fn pplus_form_matches_zplus_form(v in vectors(2..100), radius in 0.5..20.0f64) {
        let phi = samples(radius, v);
        let chi = phi.map(|r, x| r * x);
        let lhs = inner_product_spherical(&phi, &pplus_apply(&phi).unwrap()).unwrap();
        let rhs = inner_product_half_line(&chi, &zplus_discrete(&chi).unwrap()).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-12 * lhs.abs().max(1.0));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn fractional_integrals_are_linear_and_positive(
        a in 0.2..3.0f64,
        c in -2.0..2.0f64,
        r in 0.05..8.0f64,
    ) {
        let s = QuadratureSettings::default();
        let f = FunctionDescriptor::exp(a);
        let g = FunctionDescriptor::t_gauss();
        let combo = f.plus(&g.scaled(c)).unwrap();
        for apply in [ek_i_apply::<FunctionDescriptor>, ek_k_apply::<FunctionDescriptor>] {
            let lhs = apply(&combo, r, &s).unwrap();
            let rhs = apply(&f, r, &s).unwrap() + c * apply(&g, r, &s).unwrap();
            prop_assert!((lhs - rhs).abs() <= 1e-12 * (1.0 + lhs.abs()));
            prop_assert!(apply(&f, r, &s).unwrap() >= 0.0);
            prop_assert!(apply(&g, r, &s).unwrap() >= 0.0);
        }
    }
}
