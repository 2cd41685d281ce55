//! Relativistic variant: the effective radial potential
//! U(r) = 2EV − V² + ((j+½)² + L(L+1))/r² ± √((j+½)²/r⁴ − V'²)
//! with turning points at U = E² − m², quantized by d·√(m² − E²) = q.
//! Units with ħ = c = 1.

use quantarea_core::{numeric::brent, QuantizationMode};
use serde::Serialize;

use crate::SolverError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum DiracBranch {
    Plus,
    Minus,
}

impl DiracBranch {
    fn sign(self) -> f64 {
        match self {
            DiracBranch::Plus => 1.0,
            DiracBranch::Minus => -1.0,
        }
    }
}

pub struct DiracProblem<V, D> {
    pub potential: V,
    pub derivative: D,
    pub j: f64,
    pub l: u32,
    pub mass: f64,
    /// Outer end of the radial search.
    pub r_max: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DiracEnergies {
    pub plus: Option<f64>,
    pub minus: Option<f64>,
}

const R_SAMPLES: usize = 3000;
const E_SAMPLES: usize = 800;

impl<V: Fn(f64) -> f64 + Sync, D: Fn(f64) -> f64 + Sync> DiracProblem<V, D> {
    pub fn effective(&self, r: f64, e: f64, branch: DiracBranch) -> f64 {
        let v = (self.potential)(r);
        let dv = (self.derivative)(r);
        let k = self.j + 0.5;
        let l = self.l as f64;
        let rad = k * k / r.powi(4) - dv * dv;
        2.0 * e * v - v * v + (k * k + l * (l + 1.0)) / (r * r) + branch.sign() * rad.sqrt()
    }

    /// Width of the classically allowed region at energy e, or None.
    pub fn width(&self, e: f64, branch: DiracBranch) -> Option<f64> {
        let target = e * e - self.mass * self.mass;
        let h = |r: f64| self.effective(r, e, branch) - target;
        let r_min = self.r_max * 1e-7;
        let ratio = (self.r_max / r_min).powf(1.0 / R_SAMPLES as f64);
        let mut r1: Option<f64> = None;
        let mut prev = (r_min, h(r_min));
        if prev.1 < 0.0 {
            r1 = Some(0.0);
        }
        let mut r = r_min;
        for _ in 0..R_SAMPLES {
            r *= ratio;
            let hr = h(r);
            if !(hr.is_finite() && prev.1.is_finite()) {
                prev = (r, hr);
                continue;
            }
            match r1 {
                None if prev.1 > 0.0 && hr <= 0.0 => r1 = Some(brent(h, prev.0, r, 1e-15 * r).ok()?),
                Some(a) if prev.1 < 0.0 && hr >= 0.0 => {
                    let b = brent(h, prev.0, r, 1e-15 * r).ok()?;
                    return Some(b - a);
                }
                _ => {}
            }
            prev = (r, hr);
        }
        None
    }

    fn condition(&self, e: f64, q: f64, branch: DiracBranch) -> f64 {
        match self.width(e, branch) {
            Some(d) => d * (self.mass * self.mass - e * e).sqrt() - q,
            None => f64::NAN,
        }
    }

    /// Highest root of d(E)·√(m²−E²) = q on −m < E < m.
    pub fn solve_branch(&self, q: f64, branch: DiracBranch) -> Option<f64> {
        let m = self.mass;
        let es: Vec<f64> = (1..E_SAMPLES).map(|i| -m + 2.0 * m * i as f64 / E_SAMPLES as f64).collect();
        let fs: Vec<f64> = es.iter().map(|&e| self.condition(e, q, branch)).collect();
        for i in (1..es.len()).rev() {
            let (a, b) = (fs[i - 1], fs[i]);
            if a.is_finite() && b.is_finite() && (a < 0.0) != (b < 0.0) {
                if let Ok(e) = brent(|e| self.condition(e, q, branch), es[i - 1], es[i], 1e-14 * m) {
                    return Some(e);
                }
            }
        }
        None
    }
}

pub fn dirac_bound_energy<V, D>(problem: &DiracProblem<V, D>, mode: QuantizationMode) -> Result<DiracEnergies, SolverError>
where
    V: Fn(f64) -> f64 + Sync,
    D: Fn(f64) -> f64 + Sync,
{
    if !(problem.mass > 0.0) || !(problem.r_max > 0.0) {
        return Err(SolverError::NoBoundState("mass and r_max must be positive".into()));
    }
    let q = mode.q()?;
    let (plus, minus) = rayon::join(
        || problem.solve_branch(q, DiracBranch::Plus),
        || problem.solve_branch(q, DiracBranch::Minus),
    );
    if plus.is_none() && minus.is_none() {
        return Err(SolverError::NoBoundState(format!("no |E| < m root for q = {q} on either branch")));
    }
    Ok(DiracEnergies { plus, minus })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn free_particle_unbound() {
        let p = DiracProblem { potential: |_| 0.0, derivative: |_| 0.0, j: 0.5, l: 0, mass: 1.0, r_max: 50.0 };
        assert!(matches!(
            dirac_bound_energy(&p, QuantizationMode::Ground),
            Err(SolverError::NoBoundState(_))
        ));
    }

    #[test]
    fn square_well_binds_and_satisfies_condition() {
        let p = DiracProblem {
            potential: |r: f64| if r < 3.0 { -0.8 } else { 0.0 },
            derivative: |_| 0.0,
            j: 0.5,
            l: 0,
            mass: 1.0,
            r_max: 20.0,
        };
        let out = dirac_bound_energy(&p, QuantizationMode::Ground).unwrap();
        for (e, b) in [(out.plus, DiracBranch::Plus), (out.minus, DiracBranch::Minus)] {
            if let Some(e) = e {
                assert!(e.abs() < 1.0);
                let d = p.width(e, b).unwrap();
                assert!((d * (1.0 - e * e).sqrt() - 2.0).abs() < 1e-9);
            }
        }
        assert!(out.plus.is_some() || out.minus.is_some());
    }
}
