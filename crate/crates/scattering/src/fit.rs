use std::f64::consts::PI;

use quantarea_core::{numeric::brent, units::mb_to_fm2};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::{cross_sections, ScatterError, ScatteringCase, Sign, WellParams};

/// R0 giving 4πr1² = σ_t, with r1 = R0(A_p^{1/3} + A_t^{1/3}) + tail.
pub fn invert_r0(sigma_t_mb: f64, case: &ScatteringCase) -> Result<f64, ScatterError> {
    if !(sigma_t_mb > 0.0 && sigma_t_mb.is_finite()) {
        return Err(ScatterError::Domain(format!("sigma_t must be positive, got {sigma_t_mb}")));
    }
    let r1 = (mb_to_fm2(sigma_t_mb) / (4.0 * PI)).sqrt();
    let r0 = (r1 - case.tail_length()) / case.radius_sum();
    if !(r0 > 0.0) {
        return Err(ScatterError::Infeasible(format!(
            "sigma_t = {sigma_t_mb} mb is inside the Coulomb reach ({} fm)",
            case.tail_length()
        )));
    }
    Ok(r0)
}

/// V0 = lo + i·step (inner), a_c = lo + j·step (outer).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FitGrid {
    pub v0_lo: f64,
    pub v0_hi: f64,
    pub v0_step: f64,
    pub ac_lo: f64,
    pub ac_hi: f64,
    pub ac_step: f64,
}

impl Default for FitGrid {
    fn default() -> Self {
        FitGrid { v0_lo: 20.0, v0_hi: 60.0, v0_step: 1e-4, ac_lo: 0.40, ac_hi: 0.60, ac_step: 0.01 }
    }
}

impl FitGrid {
    fn count(lo: f64, hi: f64, step: f64) -> usize {
        ((hi - lo) / step + 1e-9).floor().max(0.0) as usize + 1
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FitResult {
    /// first grid cell passing the gate
    pub v0_grid: f64,
    pub ac: f64,
    /// V0 after solving σ_r = target at that a_c
    pub v0: f64,
    pub sigma_s: f64,
    pub sigma_r: f64,
    pub sigma_t: f64,
}

/// σ_r > 0 and both round and floor agree with the experimental value.
pub fn passes_gate(sigma_r_cal: f64, sigma_r_exp: f64) -> bool {
    sigma_r_cal > 0.0 && sigma_r_cal.round() == sigma_r_exp.round() && sigma_r_cal.floor() == sigma_r_exp.floor()
}

/// The interval [lo, hi) of σ_r values that pass the gate.
fn gate_band(sigma_r_exp: f64) -> (f64, f64) {
    let f = sigma_r_exp.floor();
    let r = sigma_r_exp.round();
    ((r - 0.5).max(f).max(0.0), (r + 0.5).min(f + 1.0))
}

const COARSE: usize = 100;

/// Grid scan then a one-dimensional solve. σ_s + σ_r is fixed at 4πr1² by
/// R0, so matching σ_r also matches σ_s; the second unknown a_c is taken
/// from the first passing cell.
pub fn fit_depth(
    case: &ScatteringCase,
    sigma_s_exp: f64,
    sigma_r_exp: f64,
    sign: Sign,
    grid: &FitGrid,
) -> Result<FitResult, ScatterError> {
    let sigma_t = cross_sections(case, sign)?.sigma_t;
    if ((sigma_s_exp + sigma_r_exp) / sigma_t - 1.0).abs() > 1e-3 {
        return Err(ScatterError::Infeasible(format!(
            "sigma_s + sigma_r = {} mb but 4 pi r1^2 = {sigma_t} mb for R0 = {}",
            sigma_s_exp + sigma_r_exp,
            case.params.r0
        )));
    }
    let nv = FitGrid::count(grid.v0_lo, grid.v0_hi, grid.v0_step);
    let na = FitGrid::count(grid.ac_lo, grid.ac_hi, grid.ac_step);
    let (band_lo, band_hi) = gate_band(sigma_r_exp);
    let mut best = (f64::INFINITY, f64::NAN, f64::NAN, f64::NAN);

    for j in 0..na {
        let ac = grid.ac_lo + grid.ac_step * j as f64;
        let at = |i: usize| {
            let v0 = grid.v0_lo + grid.v0_step * i as f64;
            let p = WellParams { v0, ac, ..case.params };
            cross_sections(&case.with_params(p), sign).map(|c| c.sigma_r).unwrap_or(f64::NAN)
        };
        let coarse_idx: Vec<usize> = (0..nv).step_by(COARSE).chain(std::iter::once(nv - 1)).collect();
        let coarse: Vec<f64> = coarse_idx.par_iter().map(|&i| at(i)).collect();
        for (&i, &s) in coarse_idx.iter().zip(&coarse) {
            let miss = if s < band_lo { band_lo - s } else if s >= band_hi { s - band_hi } else { 0.0 };
            if miss < best.0 {
                best = (miss, s, grid.v0_lo + grid.v0_step * i as f64, ac);
            }
        }
        for w in 0..coarse_idx.len().saturating_sub(1) {
            let (sa, sb) = (coarse[w], coarse[w + 1]);
            if !(sa.is_finite() && sb.is_finite()) {
                continue;
            }
            // a smooth σ_r cannot leave this envelope between two samples
            let margin = 1.0 + 0.5 * (sa - sb).abs();
            if sa.min(sb) - margin >= band_hi || sa.max(sb) + margin < band_lo {
                continue;
            }
            let hit = (coarse_idx[w]..=coarse_idx[w + 1]).find(|&i| passes_gate(at(i), sigma_r_exp));
            if let Some(i) = hit {
                let v0_grid = grid.v0_lo + grid.v0_step * i as f64;
                return refine(case, sign, sigma_r_exp, v0_grid, ac, grid.v0_step);
            }
        }
    }
    Err(ScatterError::FitInfeasible { best_sigma_r: best.1, best_v0: best.2, best_ac: best.3 })
}

fn refine(case: &ScatteringCase, sign: Sign, target: f64, v0_grid: f64, ac: f64, step: f64) -> Result<FitResult, ScatterError> {
    let eval = |v0: f64| cross_sections(&case.with_params(WellParams { v0, ac, ..case.params }), sign);
    let h = |v0: f64| eval(v0).map(|c| c.sigma_r - target).unwrap_or(f64::NAN);
    let h0 = h(v0_grid);
    let mut v0 = v0_grid;
    if h0 != 0.0 {
        let mut width = step;
        let mut found = None;
        while width <= 64.0 * step {
            for (a, b) in [(v0_grid - width, v0_grid), (v0_grid, v0_grid + width)] {
                let (ha, hb) = (h(a), h(b));
                if ha.is_finite() && hb.is_finite() && (ha < 0.0) != (hb < 0.0) {
                    found = Some(brent(h, a, b, 1e-12)?);
                    break;
                }
            }
            if found.is_some() {
                break;
            }
            width *= 2.0;
        }
        v0 = found.unwrap_or(v0_grid);
    }
    let c = eval(v0)?;
    Ok(FitResult { v0_grid, ac, v0, sigma_s: c.sigma_s, sigma_r: c.sigma_r, sigma_t: c.sigma_t })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Nucleus;

    #[test]
    fn gate_examples() {
        assert!(passes_gate(0.6, 0.519));
        assert!(!passes_gate(0.4, 0.519));
        assert!(!passes_gate(1.0, 0.519));
        assert!(passes_gate(177.2, 177.0));
        assert!(!passes_gate(176.7, 177.0));
        assert!(!passes_gate(-0.2, 0.1));
        assert_eq!(gate_band(0.519), (0.5, 1.0));
        assert_eq!(gate_band(177.0), (177.0, 177.5));
        assert_eq!(gate_band(3.53), (3.5, 4.0));
    }

    #[test]
    fn r0_round_trip() {
        let c = ScatteringCase::new(Nucleus::helium3(), 0.5, Nucleus::with_mass_u(4, 9, 9.012182), 96.4, WellParams::new(1.0, 40.0, 0.5));
        let r0 = invert_r0(805.0, &c).unwrap();
        let s = cross_sections(&c.with_params(WellParams::new(r0, 40.0, 0.5)), Sign::Lower).unwrap();
        assert!((s.sigma_t / 805.0 - 1.0).abs() < 1e-9);
    }

    #[test]
    fn tiny_sigma_t_is_infeasible() {
        let c = ScatteringCase::new(Nucleus::helium3(), 0.5, Nucleus::new(20, 40), 20.0, WellParams::new(1.0, 40.0, 0.5));
        assert!(matches!(invert_r0(1.0, &c), Err(ScatterError::Infeasible(_))));
    }
}
