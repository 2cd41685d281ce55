use std::f64::consts::PI;

use num_complex::Complex64;
use quantarea_core::units::fm2_to_mb;
use serde::{Deserialize, Serialize};

use crate::{y_integral, zone_radii, ScatterError, ScatteringCase, YIntegral, ZoneRadii};

/// Which of the two amplitude coefficients to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Lower,
    Upper,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CrossSections {
    pub sign: Sign,
    pub e_r: f64,
    #[serde(rename = "K")]
    pub k: f64,
    pub zones: ZoneRadii,
    pub y: YIntegral,
    /// σ_s / σ_t
    pub ratio: f64,
    /// mb
    pub sigma_s: f64,
    pub sigma_r: f64,
    pub sigma_t: f64,
}

/// σ_s/σ_t with every e^{4K r} term divided by e^{4K r1}; r3 ≤ r1 keeps all
/// remaining exponents non-positive.
fn ratio(sign: Sign, k: f64, r1: f64, r3: f64, y: f64) -> f64 {
    let e1 = (2.0 * k * (r3 - r1)).exp();
    let e2 = e1 * e1;
    let kr = 2.0 * k * r1;
    let x1 = 3.0 + 5.0 * e2 + 2.0 * (kr.cos() + kr.sin());
    let x2 = -2.0 * e1 * (3.0 * (kr - 2.0 * y).cos() + 2.0 * (2.0 * y).cos() + (kr - 2.0 * y).sin() + (2.0 * y).sin());
    match sign {
        Sign::Lower => 0.5 * (x1 + x2),
        Sign::Upper => {
            let p3 = 1.0 + 5.0 * e2 - 2.0 * e1 * (2.0 * (2.0 * y).cos() + (2.0 * y).sin());
            (x1 + x2) / p3
        }
    }
}

pub fn cross_sections(case: &ScatteringCase, sign: Sign) -> Result<CrossSections, ScatterError> {
    let zones = zone_radii(case)?;
    let y = y_integral(case, &zones)?;
    let k = case.k();
    let ratio = ratio(sign, k, zones.r1, zones.r3, y.total);
    let sigma_t = fm2_to_mb(4.0 * PI * zones.r1 * zones.r1);
    let sigma_s = ratio * sigma_t;
    Ok(CrossSections { sign, e_r: case.e_relative(), k, zones, y, ratio, sigma_s, sigma_r: sigma_t - sigma_s, sigma_t })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Amplitude {
    /// A₁e^{−Q₁(r1)}
    pub a1: Complex64,
    /// C_s(r1)
    pub c_s: Complex64,
    /// |C_g(r1)|² = e^{−2Q₀(r1)}
    pub c_g_sq: f64,
    /// |C_s|²/|C_g|² = σ_s/σ_t
    pub ratio: f64,
}

/// A₁ with the outer-zone phase factored out. The incoming phase
/// Q₀ = √(L0(L0+1))·ln r is zero for L0 = 0 and cancels from the ratio.
pub fn amplitude(case: &ScatteringCase, sign: Sign) -> Result<Amplitude, ScatterError> {
    let z = zone_radii(case)?;
    let y = y_integral(case, &z)?.total;
    let k = case.k();
    let i = Complex64::i();
    let l0 = case.l0 as f64;
    let q0 = (l0 * (l0 + 1.0)).sqrt() * z.r1.ln();
    let g = (-q0).exp();
    let rot = (-2.0 * i * k * z.r1).exp();
    let damp = (2.0 * k * (z.r3 - z.r1)).exp();
    let base = match sign {
        Sign::Lower => 0.5 * (1.0 + i) * rot * (-1.0 + (2.0 - i) * damp * (2.0 * i * y).exp()),
        Sign::Upper => (1.0 + i) * rot / ((2.0 + i) * damp * (-2.0 * i * y).exp() - 1.0),
    };
    let c_s = g * (base - 1.0);
    let c_g_sq = g * g;
    Ok(Amplitude { a1: g * base, c_s, c_g_sq, ratio: c_s.norm_sqr() / c_g_sq })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DifferentialSample {
    pub theta: f64,
    /// mb/rad
    pub dsigma_s: f64,
    pub dsigma_r: f64,
}

/// dσ/dθ = 2π(ratio)r1²sin θ on the given angles.
pub fn differential(case: &ScatteringCase, sign: Sign, thetas: &[f64]) -> Result<Vec<DifferentialSample>, ScatterError> {
    let z = zone_radii(case)?;
    let amp = amplitude(case, sign)?;
    let scale = fm2_to_mb(2.0 * PI * z.r1 * z.r1);
    Ok(thetas
        .iter()
        .map(|&theta| {
            let s = scale * theta.sin();
            DifferentialSample { theta, dsigma_s: s * amp.ratio, dsigma_r: s * (1.0 - amp.ratio) }
        })
        .collect())
}
