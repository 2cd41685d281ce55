use std::f64::consts::PI;

use quantarea_core::numeric::brent;
use serde::{Deserialize, Serialize};

use crate::{Family, Potential, PotentialError};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TurningPair {
    pub x1: f64,
    pub x2: f64,
    pub x0: f64,
    pub d: f64,
}

impl TurningPair {
    pub fn new(x1: f64, x2: f64) -> Option<Self> {
        if x2 > x1 && x1.is_finite() && x2.is_finite() {
            Some(TurningPair { x1, x2, x0: 0.5 * (x1 + x2), d: x2 - x1 })
        } else {
            None
        }
    }
}

const SAMPLES: usize = 4000;

/// Roots of a u² − s u + b = 0 in u = r², returned as (r_inner, r_outer).
fn quartic_pair(a: f64, s: f64, b: f64) -> Option<(f64, f64)> {
    let disc = s * s - 4.0 * a * b;
    if disc < 0.0 || s <= 0.0 {
        return None;
    }
    let sq = disc.sqrt();
    let hi = (s + sq) / (2.0 * a);
    // b/(a·hi) avoids cancellation in (s − √disc) for small b
    let lo = if hi > 0.0 { b / (a * hi) } else { 0.0 };
    Some((lo.max(0.0).sqrt(), hi.sqrt()))
}

pub(crate) fn turning_points(p: &Potential, e_abs: f64) -> Result<TurningPair, PotentialError> {
    let name = p.name();
    let none = || PotentialError::NoTurningPoints { family: name, energy: e_abs };
    if !(e_abs > 0.0) || !e_abs.is_finite() {
        return Err(none());
    }
    let pair = |x1: f64, x2: f64| TurningPair::new(x1, x2).ok_or_else(none);
    match p.family {
        Family::PowerLaw { a, p } => {
            let x = (e_abs / a).powf(1.0 / p);
            pair(-x, x)
        }
        Family::Box { width } => pair(0.0, width),
        Family::CotSquared { u0, a } => {
            let x1 = a / PI * (u0 / e_abs).sqrt().atan();
            pair(x1, a - x1)
        }
        Family::ParabolicWell { u0, a } => {
            let s = (e_abs / u0).sqrt();
            let r = (s * s + 4.0).sqrt();
            // (r − s)/2 written as 2/(r + s) to keep precision at large s
            pair(a * 2.0 / (r + s), a * (r + s) / 2.0)
        }
        Family::QuadraticPlusInverse { a, b } | Family::IsotropicHO { a, b } => {
            let (r1, r2) = quartic_pair(a, e_abs, b).ok_or_else(none)?;
            pair(r1, r2)
        }
        Family::HOSpinOrbit { a, b, c_lsj } => {
            let (r1, r2) = quartic_pair(a, e_abs + c_lsj, b).ok_or_else(none)?;
            pair(r1, r2)
        }
        Family::CoulombEffective { a, b } => {
            let disc = a * a - 4.0 * b * e_abs;
            if disc < 0.0 {
                return Err(none());
            }
            let r2 = (a + disc.sqrt()) / (2.0 * e_abs);
            let r1 = if b == 0.0 { 0.0 } else { b / (e_abs * r2) };
            pair(r1, r2)
        }
        Family::RadialBox { radius, b } => {
            let r1 = (b / e_abs).sqrt();
            pair(r1, radius)
        }
        Family::AlphaPiecewise { u0, a, b, r_m, .. } => {
            let (r3, r1) = quartic_pair(a, e_abs + u0, b).ok_or_else(none)?;
            if r1 > r_m {
                return Err(none());
            }
            pair(r3, r1)
        }
        Family::Tabulated(ref t) => {
            let target = p.energy_sign() * e_abs;
            let (x1, x2) = t.bracketing_crossings(target).ok_or_else(none)?;
            pair(x1, x2)
        }
        Family::SaxonWoodsComposite(ref sw) => {
            let hi = 4.0 * sw.r0.max(sw.r_co).max(sw.rso) + 20.0 * sw.a0.max(sw.aso);
            numeric_pair(p, 0.0, hi, -e_abs, true)
        }
        Family::ScatteringZones { c_c, b, r_nuclear, .. } => {
            let outer = (c_c + (c_c * c_c + 4.0 * b * e_abs).sqrt()) / (2.0 * e_abs);
            numeric_pair(p, 0.0, (4.0 * r_nuclear).max(2.0 * outer), e_abs, true)
        }
    }
}

/// Scan U − target on (lo, hi], locate the sampled minimum and refine the
/// nearest crossing on each side. With `wall_left`, a missing left crossing
/// means the pair starts at `lo`.
fn numeric_pair(p: &Potential, lo: f64, hi: f64, target: f64, wall_left: bool) -> Result<TurningPair, PotentialError> {
    let name = p.name();
    let none = || PotentialError::NoTurningPoints { family: name, energy: target.abs() };
    let xs: Vec<f64> = (1..=SAMPLES).map(|i| lo + (hi - lo) * i as f64 / SAMPLES as f64).collect();
    let us: Vec<f64> = xs.iter().map(|&x| p.evaluate(x).unwrap_or(f64::NAN)).collect();
    let m = (0..SAMPLES)
        .filter(|&i| us[i].is_finite())
        .min_by(|&i, &j| us[i].total_cmp(&us[j]))
        .ok_or_else(none)?;
    if us[m] >= target {
        return Err(none());
    }
    let g = |x: f64| p.evaluate(x).map(|u| u - target).unwrap_or(f64::NAN);
    let refine = |a: f64, b: f64| brent(g, a, b, 1e-14 * hi).map_err(|_| none());
    let x1 = match (0..m).rev().find(|&i| !(us[i] < target)) {
        Some(i) if us[i].is_finite() => refine(xs[i], xs[i + 1])?,
        Some(_) => return Err(none()),
        None if wall_left => lo,
        None => return Err(none()),
    };
    let x2 = match (m + 1..SAMPLES).find(|&i| !(us[i] < target)) {
        Some(i) if us[i].is_finite() => refine(xs[i - 1], xs[i])?,
        _ => return Err(none()),
    };
    TurningPair::new(x1, x2).ok_or_else(none)
}

pub(crate) fn well_minimum(p: &Potential) -> Option<(f64, f64)> {
    match p.family {
        Family::PowerLaw { .. } => Some((0.0, 0.0)),
        Family::Box { width } => Some((0.5 * width, 0.0)),
        Family::CotSquared { a, .. } => Some((0.5 * a, 0.0)),
        Family::ParabolicWell { a, .. } => Some((a, 0.0)),
        Family::QuadraticPlusInverse { a, b } | Family::IsotropicHO { a, b } => {
            Some(((b / a).powf(0.25), 2.0 * (a * b).sqrt()))
        }
        Family::HOSpinOrbit { a, b, c_lsj } => Some(((b / a).powf(0.25), 2.0 * (a * b).sqrt() - c_lsj)),
        Family::CoulombEffective { a, b } => {
            if b > 0.0 {
                Some((2.0 * b / a, -a * a / (4.0 * b)))
            } else {
                None
            }
        }
        Family::RadialBox { radius, b } => Some((radius, b / (radius * radius))),
        Family::Tabulated(ref t) => Some((t.points[t.min_index()][0], t.min_value())),
        _ => {
            let (_, hi) = p.domain();
            let hi = if hi.is_finite() { hi } else { sample_extent(p) };
            (1..=SAMPLES)
                .map(|i| hi * i as f64 / SAMPLES as f64)
                .filter_map(|x| p.evaluate(x).ok().filter(|u| u.is_finite()).map(|u| (x, u)))
                .min_by(|a, b| a.1.total_cmp(&b.1))
        }
    }
}

fn sample_extent(p: &Potential) -> f64 {
    match p.family {
        Family::SaxonWoodsComposite(ref sw) => 4.0 * sw.r0.max(sw.r_co) + 20.0 * sw.a0,
        Family::AlphaPiecewise { r_m, .. } => 2.0 * r_m,
        Family::ScatteringZones { r_nuclear, .. } => 2.0 * r_nuclear,
        _ => 10.0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Potential;

    fn nat(f: Family) -> Potential {
        Potential::natural(f)
    }

    #[test]
    fn box_walls() {
        let t = nat(Family::Box { width: 1.0 }).turning_points(3.0).unwrap();
        assert_eq!((t.x1, t.x2, t.d), (0.0, 1.0, 1.0));
    }

    #[test]
    fn power_law_symmetric() {
        let t = nat(Family::PowerLaw { a: 1.0, p: 2.0 }).turning_points(1.0).unwrap();
        assert_eq!((t.x1, t.x2, t.d, t.x0), (-1.0, 1.0, 2.0, 0.0));
    }

    #[test]
    fn quadratic_inverse_width_identity() {
        let (a, b, e) = (0.7, 1.3, 5.0);
        let t = nat(Family::QuadraticPlusInverse { a, b }).turning_points(e).unwrap();
        let want = e / a - 2.0 * (b / a).sqrt();
        assert!((t.d * t.d / want - 1.0).abs() < 1e-12);
    }

    #[test]
    fn below_minimum_is_error() {
        let p = nat(Family::IsotropicHO { a: 1.0, b: 1.0 });
        assert!(matches!(p.turning_points(1.5), Err(PotentialError::NoTurningPoints { .. })));
        assert!(nat(Family::CoulombEffective { a: 1.0, b: 1.0 }).turning_points(0.3).is_err());
        assert!(nat(Family::RadialBox { radius: 1.0, b: 2.0 }).turning_points(1.0).is_err());
    }

    #[test]
    fn coulomb_roots_match() {
        let p = nat(Family::CoulombEffective { a: 1.0, b: 0.2 });
        let t = p.turning_points(0.5).unwrap();
        for x in [t.x1, t.x2] {
            assert!((p.evaluate(x).unwrap() + 0.5).abs() < 1e-13);
        }
    }

    #[test]
    fn cot_squared_roots() {
        let p = nat(Family::CotSquared { u0: 2.0, a: 3.0 });
        let t = p.turning_points(0.7).unwrap();
        assert!((p.evaluate(t.x1).unwrap() - 0.7).abs() < 1e-12);
        assert!((p.evaluate(t.x2).unwrap() - 0.7).abs() < 1e-12);
        assert!((t.x0 - 1.5).abs() < 1e-14);
    }
}
