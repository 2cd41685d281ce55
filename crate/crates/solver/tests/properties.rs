use proptest::prelude::*;
use quantarea_core::{QuantizationMode, UnitSystem};
use quantarea_potentials::{Family, Potential};
use quantarea_solver::{potential_areas, solve_bound_state};

fn mode_strategy() -> impl Strategy<Value = QuantizationMode> {
    prop_oneof![
        Just(QuantizationMode::Ground),
        (1u32..6).prop_map(QuantizationMode::General),
        (1u32..4).prop_map(QuantizationMode::Symmetric),
        (1u32..4).prop_map(QuantizationMode::Antisymmetric),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn oscillator_q_over_four(m in 0.2f64..5.0, w in 0.2f64..5.0, mode in mode_strategy()) {
        let p = Potential::new(Family::PowerLaw { a: m * w * w / 2.0, p: 2.0 }, UnitSystem::Natural, m).unwrap();
        let s = solve_bound_state(&p, mode).unwrap();
        let want = mode.q().unwrap() * w / 4.0;
        prop_assert!((s.energy / want - 1.0).abs() < 1e-12, "{} vs {}", s.energy, want);
    }

    #[test]
    fn area_identities(a in 0.1f64..3.0, b in 0.0f64..3.0, mode in mode_strategy()) {
        let p = Potential::natural(Family::QuadraticPlusInverse { a, b });
        let s = solve_bound_state(&p, mode).unwrap();
        let q = s.q;
        let ar = potential_areas(&s);
        prop_assert!((ar.sp - 2.0 * s.mh * q / s.d).abs() <= 1e-12 * ar.sp);
        prop_assert!((ar.se - (ar.sp + ar.sk)).abs() <= 1e-12 * ar.se);
        prop_assert!((ar.se - s.mh * q * q / s.d).abs() <= 1e-12 * ar.se);
        if mode == QuantizationMode::Ground {
            prop_assert_eq!(ar.sk, 0.0);
        }
    }

    #[test]
    fn fixed_point_residual(u0 in 0.2f64..5.0, a in 0.3f64..3.0, mode in mode_strategy()) {
        let p = Potential::natural(Family::CotSquared { u0, a });
        let s = solve_bound_state(&p, mode).unwrap();
        prop_assert!(s.residual < 1e-10);
        prop_assert!((s.k * s.d - s.q).abs() < 1e-10 * s.q);
    }
}
