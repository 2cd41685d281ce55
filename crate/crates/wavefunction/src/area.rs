use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::RwLock;

use quantarea_core::numeric::{brent, integrate, scan_brackets};
use quantarea_potentials::{Family, Potential};
use quantarea_solver::BoundState;

use crate::WaveError;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AreaKind {
    ClosedForm(&'static str),
    Quadrature { reference: f64 },
}

/// G(x) for one potential. Closed forms carry their own integration
/// constant; the quadrature form is zero at its reference point. Either
/// way, `anchored` removes the constant.
pub struct AreaFunction {
    potential: Potential,
    m1: f64,
    kind: AreaKind,
    anchor: f64,
    cache: RwLock<HashMap<u64, f64>>,
}

impl std::fmt::Debug for AreaFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("AreaFunction").field("kind", &self.kind).field("anchor", &self.anchor).finish()
    }
}

fn closed_form_available(p: &Potential) -> bool {
    match p.family {
        Family::PowerLaw { .. }
        | Family::Box { .. }
        | Family::CotSquared { .. }
        | Family::ParabolicWell { .. }
        | Family::QuadraticPlusInverse { .. }
        | Family::IsotropicHO { .. }
        | Family::CoulombEffective { .. }
        | Family::RadialBox { .. } => true,
        // the log form needs a r⁴ − C r² + b > 0 for every r
        Family::HOSpinOrbit { a, b, c_lsj } => 2.0 * (a * b).sqrt() - c_lsj > 0.0,
        _ => false,
    }
}

fn default_reference(p: &Potential) -> f64 {
    if let Some((x, _)) = p.well_minimum() {
        if x > 0.0 || !p.is_radial() {
            return x;
        }
    }
    let (lo, hi) = p.domain();
    match (lo.is_finite(), hi.is_finite()) {
        (true, true) => 0.5 * (lo + hi),
        (true, false) => lo + 1.0,
        _ => 0.0,
    }
}

impl AreaFunction {
    /// Closed form where the family has one, otherwise quadrature from
    /// the well minimum.
    pub fn new(p: &Potential) -> Self {
        let reference = default_reference(p);
        Self::with_reference(p, reference, reference)
    }

    /// Anchored where the level needs G = 0 (see `crate::anchor`).
    pub fn for_state(p: &Potential, b: &BoundState) -> Self {
        let a = crate::anchor(p, b);
        Self::with_reference(p, a, a)
    }

    fn with_reference(p: &Potential, reference: f64, anchor: f64) -> Self {
        let kind = if closed_form_available(p) {
            AreaKind::ClosedForm(p.name())
        } else {
            AreaKind::Quadrature { reference }
        };
        AreaFunction { potential: p.clone(), m1: p.scale().m1, kind, anchor, cache: RwLock::new(HashMap::new()) }
    }

    /// Force the quadrature path (used to cross-check closed forms).
    pub fn quadrature(p: &Potential, reference: f64) -> Self {
        AreaFunction {
            potential: p.clone(),
            m1: p.scale().m1,
            kind: AreaKind::Quadrature { reference },
            anchor: reference,
            cache: RwLock::new(HashMap::new()),
        }
    }

    pub fn kind(&self) -> AreaKind {
        self.kind
    }

    pub fn anchor(&self) -> f64 {
        self.anchor
    }

    /// The integrand m₁√|U(x)|.
    pub fn density(&self, x: f64) -> f64 {
        match self.potential.evaluate(x) {
            Ok(u) => self.m1 * u.abs().sqrt(),
            Err(_) => f64::NAN,
        }
    }

    /// G(x) with the form's own constant.
    pub fn evaluate(&self, x: f64) -> Result<f64, WaveError> {
        let v = match self.kind {
            AreaKind::ClosedForm(_) => self.closed_form(x),
            AreaKind::Quadrature { reference } => self.quadrature_value(reference, x)?,
        };
        if v.is_finite() {
            Ok(v)
        } else {
            Err(WaveError::NonFinitePhase(x))
        }
    }

    /// G(x) − G(at).
    pub fn anchored(&self, x: f64, at: f64) -> Result<f64, WaveError> {
        if x == at {
            return Ok(0.0);
        }
        Ok(self.evaluate(x)? - self.evaluate(at)?)
    }

    fn quadrature_value(&self, reference: f64, x: f64) -> Result<f64, WaveError> {
        if x == reference {
            return Ok(0.0);
        }
        let key = x.to_bits();
        if let Some(v) = self.cache.read().expect("cache lock").get(&key) {
            return Ok(*v);
        }
        let v = self.integrate_split(reference, x)?;
        self.cache.write().expect("cache lock").insert(key, v);
        Ok(v)
    }

    /// ∫ density from a to b, split where U changes sign so every √ cusp
    /// sits on a piece boundary.
    fn integrate_split(&self, a: f64, b: f64) -> Result<f64, WaveError> {
        const PROBES: usize = 256;
        let u = |t: f64| self.potential.evaluate(t).unwrap_or(f64::NAN);
        let (lo, hi) = (a.min(b), a.max(b));
        let mut cuts = vec![lo];
        for (s, e) in scan_brackets(u, lo, hi, PROBES) {
            if let Ok(z) = brent(u, s, e, 1e-15 * hi.abs().max(1.0)) {
                if z > *cuts.last().unwrap() && z < hi {
                    cuts.push(z);
                }
            }
        }
        cuts.push(hi);
        let mut total = 0.0;
        for w in cuts.windows(2) {
            total += integrate(|t| self.density(t), w[0], w[1], 1e-10)?;
        }
        Ok(if b >= a { total } else { -total })
    }

    fn closed_form(&self, x: f64) -> f64 {
        let m1 = self.m1;
        match self.potential.family {
            Family::PowerLaw { a, p } => m1 * a.sqrt() * 2.0 / (p + 2.0) * x.signum() * x.abs().powf(0.5 * (p + 2.0)),
            Family::Box { .. } => 0.0,
            Family::CotSquared { u0, a } => {
                let s = (PI * x / a).sin().ln();
                let f = a / PI * s;
                m1 * u0.sqrt() * if x <= 0.5 * a { f } else { -f }
            }
            Family::ParabolicWell { u0, a } => {
                let f = (a * x.ln() - x * x / (2.0 * a)) - (a * a.ln() - 0.5 * a);
                m1 * u0.sqrt() * if x <= a { f } else { -f }
            }
            Family::QuadraticPlusInverse { a, b } | Family::IsotropicHO { a, b } => {
                let r = x.abs();
                let s = (a * r.powi(4) + b).sqrt();
                let log = if b == 0.0 { 0.0 } else { b.sqrt() * ((b.sqrt() + s) / (r * r)).ln() };
                x.signum() * 0.5 * m1 * (s - log)
            }
            Family::HOSpinOrbit { a, b, c_lsj } => {
                let beta = -c_lsj;
                let u = x * x;
                let rr = a * u * u + beta * u + b;
                let mid = beta / (2.0 * a.sqrt()) * (2.0 * (a * rr).sqrt() + 2.0 * a * u + beta).ln();
                let tail = if b == 0.0 { 0.0 } else { b.sqrt() * ((2.0 * (b * rr).sqrt() + beta * u + 2.0 * b) / u).ln() };
                0.5 * m1 * (rr.sqrt() + mid - tail)
            }
            Family::CoulombEffective { a, b } => {
                let r = x;
                let f = if b == 0.0 {
                    2.0 * (a * r).sqrt()
                } else if a * r >= b {
                    let w = (a * r - b).sqrt();
                    2.0 * w - 2.0 * b.sqrt() * (w / b.sqrt()).atan()
                } else {
                    let w = (b - a * r).sqrt();
                    2.0 * w - 2.0 * b.sqrt() * (w / b.sqrt()).atanh()
                };
                m1 * f
            }
            Family::RadialBox { b, .. } => {
                if b == 0.0 {
                    0.0
                } else {
                    m1 * b.sqrt() * x.ln()
                }
            }
            _ => f64::NAN,
        }
    }
}

/// G for the standalone potential, as the operation is named elsewhere.
pub fn area_function(p: &Potential) -> AreaFunction {
    AreaFunction::new(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use quantarea_core::UnitSystem;

    #[test]
    fn box_is_zero() {
        let g = AreaFunction::new(&Potential::natural(Family::Box { width: 2.0 }));
        assert_eq!(g.evaluate(0.7).unwrap(), 0.0);
    }

    #[test]
    fn radial_box_log() {
        // M_h = 1 makes b = ℓ(ℓ+1) and m₁ = 1
        let p = Potential::new(Family::RadialBox { radius: 3.0, b: 2.0 }, UnitSystem::Natural, 0.5).unwrap();
        let g = AreaFunction::new(&p);
        assert!((g.evaluate(2.0).unwrap() - 2f64.sqrt() * 2f64.ln()).abs() < 1e-14);
    }

    #[test]
    fn power_law_vs_quadrature() {
        let p = Potential::natural(Family::PowerLaw { a: 1.0, p: 2.0 });
        let g = AreaFunction::new(&p);
        let q = AreaFunction::quadrature(&p, 0.0);
        let want = 2f64.sqrt() * 0.5;
        assert!((g.evaluate(1.0).unwrap() - want).abs() < 1e-14);
        assert!((q.evaluate(1.0).unwrap() - want).abs() < 1e-10);
    }

    #[test]
    fn spin_orbit_falls_back_when_well_crosses_zero() {
        let p = Potential::natural(Family::HOSpinOrbit { a: 0.5, b: 0.0, c_lsj: 0.1 });
        assert!(matches!(AreaFunction::new(&p).kind(), AreaKind::Quadrature { .. }));
    }
}
