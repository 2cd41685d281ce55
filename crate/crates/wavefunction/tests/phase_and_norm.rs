use quantarea_core::{QuantizationMode, UnitSystem};
use quantarea_oracle::{adaptive_quadrature_endpoints, root_scan};
use quantarea_potentials::{centrifugal_b, Family, Potential, SaxonWoodsParams, Nucleon, SpinOrbitScale};
use quantarea_solver::solve_bound_state;
use quantarea_wavefunction::{
    normalization_residual, psi, radial_psi, AreaFunction, AreaKind, Parity,
};

fn closed_form_cases() -> Vec<Potential> {
    vec![
        Potential::natural(Family::PowerLaw { a: 1.0, p: 2.0 }),
        Potential::natural(Family::PowerLaw { a: 0.7, p: 1.0 }),
        Potential::natural(Family::CotSquared { u0: 2.0, a: 1.5 }),
        Potential::natural(Family::ParabolicWell { u0: 1.2, a: 2.0 }),
        Potential::natural(Family::QuadraticPlusInverse { a: 0.5, b: 1.0 }),
        Potential::natural(Family::IsotropicHO { a: 0.5, b: centrifugal_b(2, 0.5) }),
        Potential::natural(Family::HOSpinOrbit { a: 0.5, b: centrifugal_b(2, 0.5), c_lsj: 0.0075 }),
        Potential::natural(Family::CoulombEffective { a: 1.0, b: 0.3 }),
        Potential::natural(Family::CoulombEffective { a: 1.0, b: 0.0 }),
        Potential::natural(Family::RadialBox { radius: 1.0, b: 1.0 }),
    ]
}

#[test]
fn phase_derivative_law() {
    for p in closed_form_cases() {
        let g = AreaFunction::new(&p);
        assert!(matches!(g.kind(), AreaKind::ClosedForm(_)), "{}", p.name());
        let b = solve_bound_state(&p, QuantizationMode::General(2)).unwrap();
        for i in 1..=50 {
            let x = b.turning.x1 + b.d * i as f64 / 51.0;
            let h = 1e-5 * b.d;
            let num = (g.evaluate(x + h).unwrap() - g.evaluate(x - h).unwrap()) / (2.0 * h);
            let want = g.density(x);
            assert!((num - want).abs() <= 1e-6 * want.abs().max(1e-3), "{} at {x}: {num} vs {want}", p.name());
        }
    }
}

#[test]
fn closed_form_matches_oracle_quadrature() {
    for p in closed_form_cases() {
        let g = AreaFunction::new(&p);
        let b = solve_bound_state(&p, QuantizationMode::General(3)).unwrap();
        let reference = b.x0;
        for i in 0..=10 {
            let x = b.turning.x1 + b.d * (0.02 + 0.96 * i as f64 / 10.0);
            let closed = g.anchored(x, reference).unwrap();
            let (lo, hi, sign) = if x >= reference { (reference, x, 1.0) } else { (x, reference, -1.0) };
            let oracle = sign * adaptive_quadrature_endpoints(|t| g.density(t), lo, hi, 1e-12).unwrap();
            assert!((closed - oracle).abs() < 1e-8, "{} at {x}: {closed} vs {oracle}", p.name());
        }
    }
}

#[test]
fn quadrature_form_matches_closed_form() {
    for p in closed_form_cases() {
        let b = solve_bound_state(&p, QuantizationMode::General(1)).unwrap();
        let g = AreaFunction::new(&p);
        let q = AreaFunction::quadrature(&p, b.x0);
        for i in 1..10 {
            let x = b.turning.x1 + b.d * i as f64 / 10.0;
            let a = g.anchored(x, b.x0).unwrap();
            let c = q.anchored(x, b.x0).unwrap();
            assert!((a - c).abs() < 1e-8, "{} at {x}: {a} vs {c}", p.name());
        }
    }
}

#[test]
fn unit_modulus_phase() {
    for p in closed_form_cases() {
        let b = solve_bound_state(&p, QuantizationMode::General(1)).unwrap();
        let g = AreaFunction::for_state(&p, &b);
        for i in 0..=20 {
            let x = b.turning.x1 + b.d * i as f64 / 20.0;
            let v = psi(&b, &g, x.min(b.turning.x2), Parity::Symmetric).unwrap();
            let env = b.norm * (b.k * (x - b.x0)).cos().abs();
            assert!((v.norm() - env).abs() < 1e-12 * b.norm);
        }
    }
}

#[test]
fn normalization_exact_for_pi_multiples() {
    for p in closed_form_cases() {
        for mode in [QuantizationMode::General(1), QuantizationMode::General(2), QuantizationMode::Antisymmetric(1)] {
            let b = solve_bound_state(&p, mode).unwrap();
            let g = AreaFunction::for_state(&p, &b);
            let r = normalization_residual(&b, &g, Parity::for_mode(mode)).unwrap();
            assert!(r < 1e-8, "{} {mode}: {r}", p.name());
        }
    }
}

#[test]
fn ground_state_normalization_deviation() {
    // ∫cos² over a centred interval is d/2 + sin(q)/(2K): residual |sin 2|/2
    for p in closed_form_cases() {
        let b = solve_bound_state(&p, QuantizationMode::Ground).unwrap();
        let g = AreaFunction::for_state(&p, &b);
        let r = normalization_residual(&b, &g, Parity::Symmetric).unwrap();
        assert!((r - 2f64.sin() / 2.0).abs() < 1e-9, "{}: {r}", p.name());
    }
}

#[test]
fn harmonic_ground_at_turning_point() {
    let p = Potential::natural(Family::PowerLaw { a: 0.5, p: 2.0 });
    let b = solve_bound_state(&p, QuantizationMode::Ground).unwrap();
    let g = AreaFunction::for_state(&p, &b);
    let v = psi(&b, &g, b.turning.x1, Parity::Symmetric).unwrap();
    assert!((v.norm() - (2.0 / b.d).sqrt() * 1f64.cos()).abs() < 1e-13);
}

#[test]
fn node_count_by_parity() {
    let p = Potential::natural(Family::QuadraticPlusInverse { a: 1.0, b: 0.5 });
    for n in 1..=8u32 {
        let mode = QuantizationMode::General(n);
        let b = solve_bound_state(&p, mode).unwrap();
        let g = AreaFunction::for_state(&p, &b);
        let parity = Parity::for_mode(mode);
        let lo = b.turning.x1 + 1e-9 * b.d;
        let hi = b.turning.x2 - 1e-9 * b.d;
        let f = |x: f64| {
            let v = psi(&b, &g, x, parity).unwrap();
            let env = match parity {
                Parity::Symmetric => (b.k * (x - b.x0)).cos(),
                Parity::Antisymmetric => (b.k * (x - b.x0)).sin(),
            };
            env.signum() * v.norm()
        };
        let rep = root_scan(f, lo, hi, b.d / 4000.0).unwrap();
        assert_eq!(rep.roots.len(), n as usize - 1, "n = {n}");
    }
}

#[test]
fn radial_box_1s_midpoint() {
    let p = Potential::new(Family::RadialBox { radius: 1.0, b: 0.0 }, UnitSystem::Natural, 0.5).unwrap();
    let b = solve_bound_state(&p, QuantizationMode::General(1)).unwrap();
    let g = AreaFunction::for_state(&p, &b);
    let r = radial_psi(&b, &g, 0.5, Parity::Symmetric, "Y00").unwrap();
    let f = psi(&b, &g, 0.5, Parity::Symmetric).unwrap();
    assert!((r.value - f / 0.5).norm() < 1e-15);
    assert_eq!(r.angular, "Y00");
    assert!(radial_psi(&b, &g, 1.5, Parity::Symmetric, "Y00").is_err());
}

#[test]
fn quadrature_area_is_shareable_across_threads() {
    let p = Potential::new(
        Family::SaxonWoodsComposite(SaxonWoodsParams {
            v0: 45.655271,
            r0: 5.142885,
            a0: 0.662,
            vso: 28.422020,
            rso: 4.726557,
            aso: 0.662,
            z: 29,
            l: 1,
            j: 1.5,
            r_co: 5.142885,
            nucleon: Nucleon::Neutron,
            spin_orbit_scale: SpinOrbitScale::Relativistic,
        }),
        UnitSystem::NuclearMevFm,
        1.008665 * 931.502,
    )
    .unwrap();
    let g = AreaFunction::quadrature(&p, 3.0);
    let serial: Vec<f64> = (1..40).map(|i| g.evaluate(0.2 * i as f64).unwrap()).collect();
    let fresh = AreaFunction::quadrature(&p, 3.0);
    let parallel: Vec<f64> = std::thread::scope(|s| {
        let handles: Vec<_> = (1..40).map(|i| s.spawn({ let fresh = &fresh; move || fresh.evaluate(0.2 * i as f64).unwrap() })).collect();
        handles.into_iter().map(|h| h.join().unwrap()).collect()
    });
    assert_eq!(serial, parallel);
}
