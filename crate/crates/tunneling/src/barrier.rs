use quantarea_core::numeric::{brent, integrate};
use quantarea_potentials::{Family, Potential};
use serde::{Deserialize, Serialize};

use crate::{BarrierResult, BranchValue, TunnelError};

const SAMPLES: usize = 4000;
const CHECKS: usize = 256;

/// Search interval for the barrier. Infinite ends of the potential's domain
/// are pushed out until U drops below E.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BarrierWindow {
    pub lo: f64,
    pub hi: f64,
}

fn u(p: &Potential, x: f64) -> f64 {
    p.evaluate_signed(x).unwrap_or(f64::NAN)
}

fn default_window(p: &Potential, energy: f64) -> BarrierWindow {
    let (mut lo, mut hi) = p.domain();
    if hi.is_infinite() {
        hi = 1.0;
        while hi < 1e12 && !(u(p, hi) < energy) {
            hi *= 2.0;
        }
        hi *= 2.0;
    }
    if lo.is_infinite() {
        lo = -1.0;
        while lo > -1e12 && !(u(p, lo) < energy) {
            lo *= 2.0;
        }
        lo *= 2.0;
    }
    BarrierWindow { lo, hi }
}

fn breakpoints(p: &Potential, r1: f64, r2: f64) -> Vec<f64> {
    let inner = match p.family {
        Family::AlphaPiecewise { r_m, .. } => Some(r_m),
        Family::ScatteringZones { r_nuclear, .. } => Some(r_nuclear),
        _ => None,
    };
    let mut cuts = vec![r1];
    if let Some(x) = inner.filter(|&x| x > r1 && x < r2) {
        cuts.push(x);
    }
    cuts.push(r2);
    cuts
}

fn piecewise_integral<F: Fn(f64) -> f64>(f: F, cuts: &[f64], tol: f64) -> Result<f64, TunnelError> {
    let mut total = 0.0;
    for w in cuts.windows(2) {
        total += integrate(&f, w[0], w[1], tol)?;
    }
    Ok(total)
}

/// First interval in the window where U > E, with both ends refined.
fn locate(p: &Potential, energy: f64, w: BarrierWindow) -> Result<(f64, f64), TunnelError> {
    let none = || TunnelError::NoBarrier { energy, lo: w.lo, hi: w.hi };
    let h = |x: f64| u(p, x) - energy;
    let xs: Vec<f64> = (0..=SAMPLES).map(|i| w.lo + (w.hi - w.lo) * i as f64 / SAMPLES as f64).collect();
    let hs: Vec<f64> = xs.iter().map(|&x| h(x)).collect();
    let start = (0..=SAMPLES).find(|&i| hs[i] > 0.0).ok_or_else(none)?;
    let r1 = if start > 0 && hs[start - 1].is_finite() {
        brent(h, xs[start - 1], xs[start], 1e-14 * xs[start].abs().max(1.0))?
    } else {
        xs[start]
    };
    let end = (start + 1..=SAMPLES).find(|&i| !(hs[i] > 0.0)).ok_or_else(none)?;
    let r2 = if hs[end].is_finite() {
        brent(h, xs[end - 1], xs[end], 1e-14 * xs[end].abs().max(1.0))?
    } else {
        xs[end - 1]
    };
    Ok((r1, r2))
}

/// g = m₁∫√(U − E) over [r1, r2] and T = e^{−2g}. Fails if U dips below E
/// inside the interval.
pub fn transmission_wkb(p: &Potential, energy: f64, r1: f64, r2: f64) -> Result<(f64, f64), TunnelError> {
    if r1 == r2 {
        return Ok((0.0, 1.0));
    }
    let (a, b) = (r1.min(r2), r1.max(r2));
    let slack = 1e-9 * energy.abs().max(1.0);
    let mut peak: f64 = 0.0;
    for i in 1..CHECKS {
        let x = a + (b - a) * i as f64 / CHECKS as f64;
        let deficit = u(p, x) - energy;
        if !(deficit >= -slack) {
            return Err(TunnelError::InvalidBarrier { x, deficit });
        }
        peak = peak.max(deficit);
    }
    let m1 = p.scale().m1;
    let tol = 1e-12 * (b - a) * peak.sqrt().max(1e-300);
    let g = m1 * piecewise_integral(|x| (u(p, x) - energy).max(0.0).sqrt(), &breakpoints(p, a, b), tol)?;
    Ok((g, crate::transmission_from_exponent(g)))
}

/// K = m₁√E, d = r2 − r1, P = m₁∫√U and g = m₁∫√(U − E) for the first
/// barrier above E in the window.
pub fn barrier_result(p: &Potential, energy: f64, window: Option<BarrierWindow>) -> Result<BarrierResult, TunnelError> {
    if !energy.is_finite() {
        return Err(TunnelError::Domain(format!("energy must be finite, got {energy}")));
    }
    let w = window.unwrap_or_else(|| default_window(p, energy));
    if !(w.lo < w.hi) {
        return Err(TunnelError::Domain(format!("empty window [{}, {}]", w.lo, w.hi)));
    }
    let (r1, r2) = locate(p, energy, w)?;
    let m1 = p.scale().m1;
    let (mut pos, mut neg) = (false, false);
    let mut peak: f64 = 0.0;
    for i in 1..CHECKS {
        let v = u(p, r1 + (r2 - r1) * i as f64 / CHECKS as f64);
        pos |= v > 0.0;
        neg |= v < 0.0;
        peak = peak.max(v.abs());
    }
    if pos && neg {
        return Err(TunnelError::MixedBranch);
    }
    let tol = 1e-12 * (r2 - r1) * peak.sqrt().max(1e-300);
    let area = m1 * piecewise_integral(|x| u(p, x).abs().sqrt(), &breakpoints(p, r1, r2), tol)?;
    let phase = if neg { BranchValue::imaginary(area) } else { BranchValue::real(area) };
    let k = BranchValue::sqrt_of(energy).scaled(m1);
    let (g, _) = transmission_wkb(p, energy, r1, r2)?;
    BarrierResult::new(k, r2 - r1, phase, g, r1, r2)
}
