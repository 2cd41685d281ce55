//! Alpha decay through the barrier U(r) = a r² − U0 + b/r² (r < r_m),
//! c/r + b/r² (r ≥ r_m), with the well shape a fixed by continuity at the
//! Coulomb radius R_c.

use quantarea_core::{
    numeric::{brent, integrate},
    units::{reduced_mass, scale_constants, AMU_MEV, C_LIGHT_FM_PER_S, E_SQUARED, LN2_HALF_LIFE, SECONDS_PER_DAY, SECONDS_PER_YEAR},
    UnitSystem,
};
use quantarea_potentials::{Family, Potential};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::{BranchValue, TunnelError};

pub const ALPHA_MASS_U: f64 = 4.002603;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AlphaInputs {
    pub z: u32,
    pub a: u32,
    /// MeV
    pub e_alpha: f64,
    pub ell: u32,
    /// fm
    pub r0: f64,
    /// MeV
    pub u0: f64,
    /// mc² of the alpha particle, MeV
    pub alpha_mass: f64,
    /// mc² of the daughter nucleus, MeV
    pub daughter_mass: f64,
}

impl AlphaInputs {
    /// Daughter mass taken as (A − 4) u when no table value is at hand.
    pub fn new(z: u32, a: u32, e_alpha: f64, ell: u32, r0: f64, u0: f64) -> Self {
        AlphaInputs {
            z,
            a,
            e_alpha,
            ell,
            r0,
            u0,
            alpha_mass: ALPHA_MASS_U * AMU_MEV,
            daughter_mass: a.saturating_sub(4) as f64 * AMU_MEV,
        }
    }

    pub fn with_daughter_mass_u(mut self, u: f64) -> Self {
        self.daughter_mass = u * AMU_MEV;
        self
    }

    pub fn with_radius_depth(mut self, r0: f64, u0: f64) -> Self {
        self.r0 = r0;
        self.u0 = u0;
        self
    }

    fn validate(&self) -> Result<(), TunnelError> {
        let bad = |m: String| Err(TunnelError::Domain(m));
        if self.a <= 4 {
            return bad(format!("mass number must exceed 4, got {}", self.a));
        }
        if self.z <= 2 {
            return bad(format!("charge must exceed 2, got {}", self.z));
        }
        for (name, v) in [
            ("E_alpha", self.e_alpha),
            ("R0", self.r0),
            ("U0", self.u0),
            ("alpha mass", self.alpha_mass),
            ("daughter mass", self.daughter_mass),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return bad(format!("{name} must be positive, got {v}"));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AlphaGeometry {
    /// reduced mass, MeV
    pub mu: f64,
    pub mh: f64,
    pub m1: f64,
    pub b: f64,
    pub c: f64,
    pub rc: f64,
    pub a: f64,
    pub r_m: f64,
    /// outer turning point of the well at E_alpha (barrier entry)
    pub r1: f64,
    /// barrier exit
    pub r2: f64,
    /// inner turning point of the well at E_alpha
    pub r3: f64,
    /// turning points and width of the well at the ground level E0
    pub r11: f64,
    pub r12: f64,
    pub d0: f64,
    pub e0: f64,
}

impl AlphaGeometry {
    pub fn potential(&self, u0: f64) -> Result<Potential, TunnelError> {
        Ok(Potential::new(
            Family::AlphaPiecewise { u0, a: self.a, b: self.b, c: self.c, r_m: self.r_m },
            UnitSystem::NuclearMevFm,
            self.mu,
        )?)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AlphaOutputs {
    #[serde(rename = "K")]
    pub k: f64,
    pub d: f64,
    pub p_new: f64,
    /// WKB exponent g
    pub p_wkb: f64,
    pub t_new: f64,
    pub t_wkb: f64,
    /// assault frequency, 1/s
    pub f: f64,
    pub lambda_new: f64,
    pub lambda_wkb: f64,
    pub t_half_new: f64,
    pub t_half_wkb: f64,
}

impl AlphaOutputs {
    pub fn years(s: f64) -> f64 {
        s / SECONDS_PER_YEAR
    }

    pub fn days(s: f64) -> f64 {
        s / SECONDS_PER_DAY
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AlphaDecayCase {
    pub inputs: AlphaInputs,
    pub geometry: AlphaGeometry,
    pub outputs: AlphaOutputs,
}

/// Largest real root of a r³ − U0 r − c = 0.
fn junction_cardano(a: f64, u0: f64, c: f64) -> f64 {
    let p = -u0 / a;
    let q = -c / a;
    let disc = 0.25 * q * q + p * p * p / 27.0;
    if disc >= 0.0 {
        let s = disc.sqrt();
        (-0.5 * q + s).cbrt() + (-0.5 * q - s).cbrt()
    } else {
        // three real roots: the principal cube root of the complex radicand
        let m = 2.0 * (-p / 3.0).sqrt();
        let arg = (1.5 * q / p * (-3.0 / p).sqrt()).clamp(-1.0, 1.0);
        m * (arg.acos() / 3.0).cos()
    }
}

fn well_roots(a: f64, s: f64, b: f64) -> Option<(f64, f64)> {
    let disc = s * s - 4.0 * a * b;
    if disc < 0.0 {
        return None;
    }
    let r = disc.sqrt();
    Some((((s - r) / (2.0 * a)).max(0.0).sqrt(), ((s + r) / (2.0 * a)).sqrt()))
}

pub fn alpha_geometry(inputs: &AlphaInputs) -> Result<AlphaGeometry, TunnelError> {
    inputs.validate()?;
    let mu = reduced_mass(inputs.alpha_mass, inputs.daughter_mass);
    let sc = scale_constants(mu, UnitSystem::NuclearMevFm).map_err(|e| TunnelError::Domain(e.to_string()))?;
    let (mh, m1) = (sc.mh, sc.m1);
    let l = inputs.ell as f64;
    let b = mh * l * (l + 1.0);
    let c = 2.0 * (inputs.z as f64 - 2.0) * E_SQUARED;
    let rc = inputs.r0 * (4f64.cbrt() + (inputs.a as f64 - 4.0).cbrt());
    let a = (inputs.u0 * rc * rc - b) / rc.powi(4);
    if !(a > 0.0) {
        return Err(TunnelError::Geometry(format!("well curvature a = {a} is not positive")));
    }
    let ea = inputs.e_alpha;
    let s = ea + inputs.u0;
    let (r3, r1) = well_roots(a, s, b).ok_or(TunnelError::NoInnerWell { discriminant: s * s - 4.0 * a * b })?;
    let r2 = (c + (c * c + 4.0 * b * ea).sqrt()) / (2.0 * ea);

    let cubic = |r: f64| a * r * r * r - inputs.u0 * r - c;
    let mut r_m = junction_cardano(a, inputs.u0, c);
    let scale = c + inputs.u0 * r_m.abs();
    if !(r_m > r1 && r_m < r2 && cubic(r_m).abs() <= 1e-8 * scale) {
        if !(cubic(r1) < 0.0 && cubic(r2) > 0.0) {
            return Err(TunnelError::NoJunction { r1, r2 });
        }
        r_m = brent(cubic, r1, r2, 1e-13 * r2)?;
    }
    if !(r3 < r1 && r1 < r_m && r_m < r2) {
        return Err(TunnelError::Geometry(format!("r3 = {r3}, r1 = {r1}, r_m = {r_m}, r2 = {r2}")));
    }

    let sab = (a * b).sqrt();
    let u0 = inputs.u0;
    let rad = u0 * u0 - 4.0 * u0 * sab + 4.0 * a * b - 16.0 * a * mh;
    if rad < 0.0 {
        return Err(TunnelError::NoGroundState(format!("discriminant {rad} < 0")));
    }
    let e0 = sab - 0.5 * (u0 + rad.sqrt());
    if !(e0 < 0.0 && e0 > -u0) {
        return Err(TunnelError::NoGroundState(format!("E0 = {e0} is outside (−U0, 0)")));
    }
    let (r11, r12) = well_roots(a, e0 + u0, b).ok_or(TunnelError::NoGroundState("well too narrow".into()))?;
    Ok(AlphaGeometry { mu, mh, m1, b, c, rc, a, r_m, r1, r2, r3, r11, r12, d0: r12 - r11, e0 })
}

/// ∫√(a r² + b/r²) dr
fn inner_antiderivative(a: f64, b: f64, r: f64) -> f64 {
    let s = (a * r.powi(4) + b).sqrt();
    if b == 0.0 {
        0.5 * s
    } else {
        0.5 * (s - b.sqrt() * ((b.sqrt() + s) / (r * r)).ln())
    }
}

/// ∫√(c/r + b/r²) dr
fn outer_antiderivative(c: f64, b: f64, r: f64) -> f64 {
    let w = (c * r + b).sqrt();
    if b == 0.0 {
        2.0 * w
    } else {
        let sb = b.sqrt();
        2.0 * w + sb * ((w - sb) / (w + sb)).ln()
    }
}

/// m₁∫√U over [r1, r2] with the a r² + b/r² piece below r_m (the −U0 is
/// dropped there, as the phase counts the barrier above the well bottom)
/// and the Coulomb-plus-centrifugal piece above.
pub fn phase_integral(g: &AlphaGeometry) -> f64 {
    let inner = inner_antiderivative(g.a, g.b, g.r_m) - inner_antiderivative(g.a, g.b, g.r1);
    let outer = outer_antiderivative(g.c, g.b, g.r2) - outer_antiderivative(g.c, g.b, g.r_m);
    g.m1 * (inner + outer)
}

/// m₁∫√(U − E_alpha) over [r1, r2] by quadrature, split at r_m, with the
/// same barrier pieces as the phase integral.
pub fn wkb_exponent(g: &AlphaGeometry, e_alpha: f64) -> Result<f64, TunnelError> {
    let inner = |r: f64| (g.a * r * r + g.b / (r * r) - e_alpha).max(0.0).sqrt();
    let outer = |r: f64| (g.c / r + g.b / (r * r) - e_alpha).max(0.0).sqrt();
    let tol = 1e-13 * (g.r2 - g.r1);
    Ok(g.m1 * (integrate(inner, g.r1, g.r_m, tol)? + integrate(outer, g.r_m, g.r2, tol)?))
}

pub fn alpha_half_life(inputs: &AlphaInputs) -> Result<AlphaDecayCase, TunnelError> {
    let g = alpha_geometry(inputs)?;
    let k = g.m1 * inputs.e_alpha.sqrt();
    let d = g.r2 - g.r1;
    let p_new = phase_integral(&g);
    let p_wkb = wkb_exponent(&g, inputs.e_alpha)?;
    let t_new = crate::transmission_new(BranchValue::real(k), d, BranchValue::real(p_new))?;
    let t_wkb = crate::transmission_from_exponent(p_wkb);
    // v/c = √(2(E_alpha − E0)/μc²); one assault per round trip across the well
    let v = C_LIGHT_FM_PER_S * (2.0 * (inputs.e_alpha - g.e0) / g.mu).sqrt();
    let f = v / (2.0 * (g.r1 - g.r3));
    let (lambda_new, lambda_wkb) = (f * t_new, f * t_wkb);
    let outputs = AlphaOutputs {
        k,
        d,
        p_new,
        p_wkb,
        t_new,
        t_wkb,
        f,
        lambda_new,
        lambda_wkb,
        t_half_new: LN2_HALF_LIFE / lambda_new,
        t_half_wkb: LN2_HALF_LIFE / lambda_wkb,
    };
    Ok(AlphaDecayCase { inputs: *inputs, geometry: g, outputs })
}

/// (R0, U0) grid; cells are lo + i·step up to hi inclusive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub r0_lo: f64,
    pub r0_hi: f64,
    pub r0_step: f64,
    pub u0_lo: f64,
    pub u0_hi: f64,
    pub u0_step: f64,
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec { r0_lo: 1.10, r0_hi: 1.60, r0_step: 0.01, u0_lo: 30.0, u0_hi: 50.0, u0_step: 1.0 }
    }
}

fn ladder(lo: f64, hi: f64, step: f64) -> Vec<f64> {
    let n = ((hi - lo) / step + 1e-9).floor().max(0.0) as usize;
    (0..=n).map(|i| lo + step * i as f64).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridFit {
    pub r0: f64,
    pub u0: f64,
    pub t_half_new: f64,
    /// computed / experimental
    pub ratio: f64,
    pub evaluated: usize,
    pub failed: usize,
}

/// Grid cell whose t½ (new transmission) is closest to `t_exp_seconds` in
/// log ratio; ties go to the earlier cell (R0 outer, U0 inner).
pub fn scan_parameters(inputs: &AlphaInputs, t_exp_seconds: f64, grid: &GridSpec) -> Result<GridFit, TunnelError> {
    if !(t_exp_seconds > 0.0) {
        return Err(TunnelError::Domain(format!("experimental half-life must be positive, got {t_exp_seconds}")));
    }
    let cells: Vec<(f64, f64)> = ladder(grid.r0_lo, grid.r0_hi, grid.r0_step)
        .into_iter()
        .flat_map(|r0| ladder(grid.u0_lo, grid.u0_hi, grid.u0_step).into_iter().map(move |u0| (r0, u0)))
        .collect();
    let results: Vec<Option<f64>> = cells
        .par_iter()
        .map(|&(r0, u0)| alpha_half_life(&inputs.with_radius_depth(r0, u0)).ok().map(|c| c.outputs.t_half_new))
        .collect();
    let failed = results.iter().filter(|r| r.is_none()).count();
    let best = results
        .iter()
        .enumerate()
        .filter_map(|(i, t)| t.map(|t| (i, t, (t / t_exp_seconds).ln().abs())))
        .min_by(|x, y| x.2.total_cmp(&y.2).then(x.0.cmp(&y.0)))
        .ok_or_else(|| TunnelError::Domain("no grid cell produced a half-life".into()))?;
    let (r0, u0) = cells[best.0];
    Ok(GridFit { r0, u0, t_half_new: best.1, ratio: best.1 / t_exp_seconds, evaluated: cells.len(), failed })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn po208() -> AlphaInputs {
        AlphaInputs::new(84, 208, 5.215, 0, 1.25, 40.0).with_daughter_mass_u(203.973044)
    }

    #[test]
    fn s_wave_limits() {
        let g = alpha_geometry(&po208()).unwrap();
        assert_eq!(g.b, 0.0);
        assert_eq!(g.r3, 0.0);
        assert!((g.r1 - ((5.215 + 40.0) / g.a).sqrt()).abs() < 1e-12);
        assert!((g.r2 - 2.0 * 82.0 * E_SQUARED / 5.215).abs() < 1e-12);
        assert!((g.r2 - 45.28).abs() < 5e-3);
    }

    #[test]
    fn junction_solves_cubic() {
        let g = alpha_geometry(&po208()).unwrap();
        let res = g.a * g.r_m.powi(3) - 40.0 * g.r_m - g.c;
        assert!(res.abs() < 1e-9 * g.c);
    }

    #[test]
    fn ground_level_width() {
        let g = alpha_geometry(&po208().with_radius_depth(1.3, 45.0)).unwrap();
        assert!(g.e0 < 0.0);
        assert!((-g.e0 * g.d0 * g.d0 / (4.0 * g.mh) - 1.0).abs() < 1e-10);
    }

    #[test]
    fn po208_half_life() {
        let c = alpha_half_life(&po208()).unwrap();
        let y = AlphaOutputs::years(c.outputs.t_half_new);
        assert!((y / 5.6950 - 1.0).abs() < 5e-3, "{y}");
        let w = AlphaOutputs::years(c.outputs.t_half_wkb);
        assert!((w / 0.0463 - 1.0).abs() < 5e-3, "{w}");
    }

    #[test]
    fn domain_checks() {
        assert!(alpha_geometry(&AlphaInputs::new(2, 208, 5.0, 0, 1.2, 40.0)).is_err());
        assert!(alpha_geometry(&AlphaInputs::new(84, 4, 5.0, 0, 1.2, 40.0)).is_err());
        assert!(alpha_geometry(&AlphaInputs::new(84, 208, -1.0, 0, 1.2, 40.0)).is_err());
    }
}
