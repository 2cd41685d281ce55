use quantarea_core::QuantizationMode;
use quantarea_potentials::{Family, Potential};

use crate::SolverError;

pub fn has_closed_form(p: &Potential) -> bool {
    matches!(
        p.family,
        Family::PowerLaw { .. }
            | Family::Box { .. }
            | Family::ParabolicWell { .. }
            | Family::QuadraticPlusInverse { .. }
            | Family::IsotropicHO { .. }
            | Family::HOSpinOrbit { .. }
            | Family::CoulombEffective { .. }
            | Family::RadialBox { .. }
    )
}

/// Closed-form level energy, signed by the family convention. The radial
/// box uses the + branch (√b + √M_h q)²/a².
pub fn analytic_energy(p: &Potential, mode: QuantizationMode) -> Result<f64, SolverError> {
    let q = mode.q()?;
    let mh = p.scale().mh;
    let mq2 = mh * q * q;
    let e = match p.family {
        Family::PowerLaw { a, p } => (mq2 / 4.0).powf(p / (p + 2.0)) * a.powf(2.0 / (p + 2.0)),
        Family::Box { width } => mq2 / (width * width),
        Family::ParabolicWell { u0, a } => q * (mh * u0).sqrt() / a,
        Family::QuadraticPlusInverse { a, b } | Family::IsotropicHO { a, b } => {
            (a * b).sqrt() + (a * b + a * mq2).sqrt()
        }
        Family::HOSpinOrbit { a, b, c_lsj } => {
            let s = 2.0 * (a * b).sqrt() - c_lsj;
            0.5 * (s + (s * s + 4.0 * a * mq2).sqrt())
        }
        Family::CoulombEffective { a, b } => -(a * a) / (mq2 + 4.0 * b),
        Family::RadialBox { radius, b } => {
            let s = b.sqrt() + mh.sqrt() * q;
            s * s / (radius * radius)
        }
        _ => return Err(SolverError::Unsupported(p.name())),
    };
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use quantarea_potentials::centrifugal_b;
    use std::f64::consts::PI;

    #[test]
    fn oscillator_q_over_4() {
        // m = 2, ω = 3 → a = mω²/2 = 9, M_h = 1/4
        let p = Potential::new(Family::PowerLaw { a: 9.0, p: 2.0 }, quantarea_core::UnitSystem::Natural, 2.0).unwrap();
        let e = analytic_energy(&p, QuantizationMode::General(3)).unwrap();
        assert!((e - 3.0 * PI * 3.0 / 4.0).abs() < 1e-12);
    }

    #[test]
    fn isotropic_ho_1p() {
        let p = Potential::natural(Family::IsotropicHO { a: 0.5, b: centrifugal_b(1, 0.5) });
        let e = analytic_energy(&p, QuantizationMode::General(1)).unwrap();
        assert!((e - 2.430).abs() < 5e-4);
    }

    #[test]
    fn spherical_box_1s() {
        let p = Potential::new(Family::RadialBox { radius: 1.0, b: 0.0 }, quantarea_core::UnitSystem::Natural, 0.5).unwrap();
        let e = analytic_energy(&p, QuantizationMode::General(1)).unwrap();
        assert!((e - 9.870).abs() < 5e-4);
    }

    #[test]
    fn unsupported() {
        let p = Potential::natural(Family::CotSquared { u0: 1.0, a: 1.0 });
        assert!(matches!(analytic_energy(&p, QuantizationMode::Ground), Err(SolverError::Unsupported(_))));
    }
}
