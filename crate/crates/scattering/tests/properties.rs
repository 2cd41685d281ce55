use std::f64::consts::PI;

use proptest::prelude::*;
use quantarea_scattering::*;

fn case(el: f64, r0: f64, v0: f64, ac: f64, l: u32) -> ScatteringCase {
    ScatteringCase::new(Nucleus::helium3(), 0.5, Nucleus::with_mass_u(14, 28, 27.976927), el, WellParams::new(r0, v0, ac))
        .with_lsj(l, 0.5, l as f64 + 0.5)
}

proptest! {
    #[test]
    fn total_is_independent_of_well(r0 in 0.9f64..1.6, v0 in 20.0f64..60.0, ac in 0.40f64..0.60, v1 in 20.0f64..60.0, ac1 in 0.40f64..0.60) {
        let a = cross_sections(&case(100.0, r0, v0, ac, 0), Sign::Lower).unwrap();
        let b = cross_sections(&case(100.0, r0, v1, ac1, 0), Sign::Lower).unwrap();
        prop_assert_eq!(a.sigma_t.to_bits(), b.sigma_t.to_bits());
        prop_assert!(((a.sigma_s + a.sigma_r) / a.sigma_t - 1.0).abs() < 1e-9);
    }

    #[test]
    fn zones_ordered(el in 5.0f64..200.0, r0 in 0.9f64..1.6, l in 0u32..3) {
        let z = zone_radii(&case(el, r0, 40.0, 0.5, l)).unwrap();
        prop_assert!(z.r3 <= z.r2 && z.r2 <= z.r1);
        if l == 0 {
            prop_assert_eq!(z.r3, 0.0);
        }
    }

    #[test]
    fn r0_round_trip(r0 in 0.5f64..1.6, el in 20.0f64..200.0) {
        let c = case(el, r0, 40.0, 0.5, 0);
        let st = cross_sections(&c, Sign::Lower).unwrap().sigma_t;
        prop_assert!((invert_r0(st, &c).unwrap() / r0 - 1.0).abs() < 1e-9);
    }

    #[test]
    fn differential_integrates_to_total(v0 in 20.0f64..60.0, upper in any::<bool>()) {
        let sign = if upper { Sign::Upper } else { Sign::Lower };
        let c = case(96.4, 0.6, v0, 0.5, 0);
        let n = 1000;
        let th: Vec<f64> = (0..=n).map(|i| PI * i as f64 / n as f64).collect();
        let d = differential(&c, sign, &th).unwrap();
        let h = PI / n as f64;
        // composite Simpson
        let s: f64 = d.iter().enumerate().map(|(i, x)| {
            let w = if i == 0 || i == n { 1.0 } else if i % 2 == 1 { 4.0 } else { 2.0 };
            w * x.dsigma_s
        }).sum::<f64>() * h / 3.0;
        let want = cross_sections(&c, sign).unwrap().sigma_s;
        prop_assert!((s - want).abs() <= 1e-6 * want.abs().max(1e-3));
    }
}

#[test]
fn thermal_limit_current_ratio() {
    // incoming |C_g|² = e^{−2Q₀}: r1^{−2√(L0(L0+1))}
    let mut c = case(96.4, 0.6, 40.0, 0.5, 0);
    c.l0 = 2;
    let a = amplitude(&c, Sign::Lower).unwrap();
    let z = zone_radii(&c).unwrap();
    assert!((a.c_g_sq - z.r1.powf(-2.0 * 6f64.sqrt())).abs() < 1e-12);
    c.l0 = 0;
    let b = amplitude(&c, Sign::Lower).unwrap();
    assert!((a.ratio - b.ratio).abs() < 1e-12);
}
