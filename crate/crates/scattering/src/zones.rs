use quantarea_core::{
    numeric::{brent, integrate, scan_brackets},
    UnitSystem,
};
use quantarea_potentials::{Family, Potential};
use serde::Serialize;

use crate::{ScatterError, ScatteringCase};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ZoneRadii {
    pub r3: f64,
    pub r2: f64,
    pub r1: f64,
    /// Saxon-Woods radius
    pub rc: f64,
}

pub fn zone_radii(case: &ScatteringCase) -> Result<ZoneRadii, ScatterError> {
    case.validate()?;
    let r3 = (case.centrifugal_b() / case.e_relative()).sqrt();
    let r2 = case.params.r0 * case.radius_sum();
    if r3 > r2 {
        return Err(ScatterError::ZoneOrdering { r3, r2 });
    }
    Ok(ZoneRadii { r3, r2, r1: r2 + case.tail_length(), rc: case.well_radius() })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct YIntegral {
    /// outer (Coulomb) piece over (r2, r1)
    pub tail: f64,
    /// inner (nuclear) piece over (r3, r2)
    pub well: f64,
    pub total: f64,
}

/// ∫√(C_c/r + b/r²) dr = 2√(b + C_c r) − 2√b·artanh(√b/√(b + C_c r)).
pub fn coulomb_tail_antiderivative(c: f64, b: f64, r: f64) -> f64 {
    let w = (b + c * r).sqrt();
    if b == 0.0 {
        2.0 * w
    } else {
        let sb = b.sqrt();
        2.0 * w + sb * ((w - sb) / (w + sb)).ln()
    }
}

/// Real part of the inner-zone potential: Saxon-Woods, spin-orbit and
/// centrifugal terms.
fn inner_real(case: &ScatteringCase, rc: f64) -> impl Fn(f64) -> f64 + '_ {
    let p = case.params;
    let b = case.centrifugal_b();
    let kso = case.spin_orbit_coefficient();
    move |r: f64| {
        let t = (r - rc) / p.ac;
        let c = (0.5 * t).cosh();
        let dv = p.v0 / (4.0 * p.ac * c * c);
        let so = if kso == 0.0 { 0.0 } else { kso / r * dv };
        let cent = if b == 0.0 { 0.0 } else { b / (r * r) };
        -p.v0 / (1.0 + t.exp()) + so + cent
    }
}

/// √|U₃|, with |U| the modulus of U + iW when an absorptive depth is set.
fn inner_density(case: &ScatteringCase, rc: f64) -> impl Fn(f64) -> f64 + '_ {
    let real = inner_real(case, rc);
    let p = case.params;
    move |r: f64| {
        let u = real(r);
        if p.w0 == 0.0 {
            u.abs().sqrt()
        } else {
            u.hypot(-p.w0 / (1.0 + ((r - rc) / p.ac).exp())).sqrt()
        }
    }
}

const SIGN_PROBES: usize = 256;

/// Piece boundaries at the sign changes of the real inner potential, so
/// each √ cusp sits on an endpoint.
fn inner_cuts(case: &ScatteringCase, rc: f64, lo: f64, hi: f64) -> Vec<f64> {
    let u = inner_real(case, rc);
    let mut cuts = vec![lo];
    if case.params.w0 == 0.0 {
        let probe = |r: f64| if r > 0.0 { u(r) } else { f64::NAN };
        for (a, b) in scan_brackets(probe, lo, hi, SIGN_PROBES) {
            if let Ok(z) = brent(probe, a, b, 1e-15 * hi) {
                if z > *cuts.last().unwrap() && z < hi {
                    cuts.push(z);
                }
            }
        }
    }
    cuts.push(hi);
    cuts
}

/// Y = m₁∫_{r2}^{r1}√|U₂| + m₁∫_{r3}^{r2}√|U₃|; the tail in closed form, the
/// well by quadrature.
pub fn y_integral(case: &ScatteringCase, z: &ZoneRadii) -> Result<YIntegral, ScatterError> {
    let m1 = case.m1();
    let (c, b) = (case.coulomb(), case.centrifugal_b());
    let tail = if z.r1 > z.r2 {
        m1 * (coulomb_tail_antiderivative(c, b, z.r1) - coulomb_tail_antiderivative(c, b, z.r2))
    } else {
        0.0
    };
    let u3 = inner_density(case, z.rc);
    let scale = case.params.v0.abs().max(case.params.w0.abs()).max(1e-300).sqrt();
    let well = if case.params.v0 == 0.0 && case.params.w0 == 0.0 && b == 0.0 {
        0.0
    } else {
        let tol = 1e-13 * scale * (z.r2 - z.r3).max(1e-300);
        let mut sum = 0.0;
        for w in inner_cuts(case, z.rc, z.r3, z.r2).windows(2) {
            sum += integrate(&u3, w[0], w[1], tol).map_err(|source| ScatterError::Quadrature { zone: "well", source })?;
        }
        m1 * sum
    };
    Ok(YIntegral { tail, well, total: tail + well })
}

/// The whole three-zone potential as a single radial family (real part).
pub fn zone_potential(case: &ScatteringCase) -> Result<Potential, ScatterError> {
    let z = zone_radii(case)?;
    Potential::new(
        Family::ScatteringZones {
            c_c: case.coulomb(),
            b: case.centrifugal_b(),
            v0: case.params.v0,
            ac: case.params.ac,
            rc: z.rc,
            r_nuclear: z.r2,
            spin_orbit: case.spin_orbit_coefficient(),
        },
        UnitSystem::NuclearMevFm,
        case.reduced_mass(),
    )
    .map_err(|e| ScatterError::Domain(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{Nucleus, WellParams};

    #[test]
    fn thermal_neutron_radii() {
        let c = ScatteringCase::new(
            Nucleus::neutron(),
            0.5,
            Nucleus::with_mass_u(1, 2, 2.014102),
            0.025e-6,
            WellParams::new(2.29845, 21.3275, 0.40),
        );
        let z = zone_radii(&c).unwrap();
        assert_eq!(z.r3, 0.0);
        assert_eq!(z.r1, z.r2);
        assert!((z.r1 - 5.19431).abs() < 1e-5);
        assert!((z.rc - 2.89586).abs() < 1e-5);
    }

    #[test]
    fn empty_potential_has_no_phase() {
        let c = ScatteringCase::new(Nucleus::neutron(), 0.5, Nucleus::new(6, 12), 1.0, WellParams::new(1.2, 0.0, 0.5));
        let z = zone_radii(&c).unwrap();
        assert_eq!(y_integral(&c, &z).unwrap().total, 0.0);
    }

    #[test]
    fn centrifugal_inner_radius() {
        let c = ScatteringCase::new(Nucleus::neutron(), 0.5, Nucleus::new(20, 40), 10.0, WellParams::new(1.2, 40.0, 0.5))
            .with_lsj(1, 0.5, 1.5);
        let z = zone_radii(&c).unwrap();
        assert!(z.r3 > 0.0 && z.r3 <= z.r2 && z.r2 <= z.r1);
        assert!((z.r3 - (c.centrifugal_b() / c.e_relative()).sqrt()).abs() < 1e-15);
    }
}
