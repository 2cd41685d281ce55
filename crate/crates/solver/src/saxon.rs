use quantarea_core::{numeric::brent, QuantizationMode};
use quantarea_potentials::{Family, Potential, TurningPair};

use crate::{BoundState, SolverError};

/// Step of the outward scan in d.
pub const SAXON_WOODS_STEP: f64 = 0.02;

/// Level of the composite Saxon-Woods well from the symmetric-sum condition
/// U(−d/2) + U(d/2) + 2M_h q²/d² = 0, with E = −M_h q²/d². The first sign
/// change of the left side on d in (0, 4R_co] is refined.
pub fn saxon_woods_level(p: &Potential, mode: QuantizationMode) -> Result<BoundState, SolverError> {
    let sw = match &p.family {
        Family::SaxonWoodsComposite(sw) => sw,
        _ => return Err(SolverError::Unsupported(p.name())),
    };
    let q = mode.q()?;
    let mh = p.scale().mh;
    let f = |d: f64| {
        let h = 0.5 * d;
        p.evaluate_signed(-h).unwrap_or(f64::NAN) + p.evaluate_signed(h).unwrap_or(f64::NAN) + 2.0 * mh * q * q / (d * d)
    };
    let hi = 4.0 * sw.r_co;
    let steps = (hi / SAXON_WOODS_STEP).floor() as usize;
    let mut prev = (SAXON_WOODS_STEP, f(SAXON_WOODS_STEP));
    for i in 2..=steps {
        let d = SAXON_WOODS_STEP * i as f64;
        let fd = f(d);
        if prev.1.is_finite() && fd.is_finite() && (prev.1 < 0.0) != (fd < 0.0) {
            let d = brent(f, prev.0, d, 1e-13)?;
            let t = TurningPair::new(-0.5 * d, 0.5 * d).expect("d > 0");
            return Ok(BoundState::build(p, mode, q, t, d * d));
        }
        prev = (d, fd);
    }
    Err(SolverError::NoFixedPoint { lo: SAXON_WOODS_STEP, hi })
}

#[cfg(test)]
mod tests {
    use super::*;
    use quantarea_core::{units::AMU_MEV, UnitSystem};
    use quantarea_potentials::{Nucleon, SaxonWoodsParams, SpinOrbitScale};

    fn cu68(v0: f64, nucleon: Nucleon) -> Potential {
        Potential::new(
            Family::SaxonWoodsComposite(SaxonWoodsParams {
                v0,
                r0: 5.142885,
                a0: 0.662,
                vso: 28.422020,
                rso: 4.726557,
                aso: 0.662,
                z: 29,
                l: 0,
                j: 0.5,
                r_co: 5.142885,
                nucleon,
                spin_orbit_scale: SpinOrbitScale::Relativistic,
            }),
            UnitSystem::NuclearMevFm,
            1.008665 * AMU_MEV,
        )
        .unwrap()
    }

    #[test]
    fn neutron_1s() {
        let s = saxon_woods_level(&cu68(45.655271, Nucleon::Neutron), QuantizationMode::Ground).unwrap();
        assert!((s.energy / -45.6256 - 1.0).abs() < 3e-4, "{}", s.energy);
        assert_eq!(s.x0, 0.0);
    }

    #[test]
    fn depth_monotone() {
        let e: Vec<f64> = [40.0, 47.655271, 55.0]
            .iter()
            .map(|&v| saxon_woods_level(&cu68(v, Nucleon::Proton), QuantizationMode::Ground).unwrap().abs_energy)
            .collect();
        assert!(e[0] < e[1] && e[1] < e[2]);
    }

    #[test]
    fn wrong_family() {
        let p = Potential::natural(Family::Box { width: 1.0 });
        assert!(saxon_woods_level(&p, QuantizationMode::Ground).is_err());
    }
}
