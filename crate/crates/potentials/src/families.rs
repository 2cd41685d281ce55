use std::f64::consts::PI;

use quantarea_core::ScaleConstants;
use serde::{Deserialize, Serialize};

use crate::{PotentialError, SaxonWoodsParams, Tabulated};

/// b = M_h ℓ(ℓ+1), the centrifugal coefficient.
pub fn centrifugal_b(l: u32, mh: f64) -> f64 {
    let l = l as f64;
    mh * l * (l + 1.0)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", content = "params", rename_all = "kebab-case")]
pub enum Family {
    /// a|x|^p
    PowerLaw { a: f64, p: f64 },
    /// Infinite walls at 0 and `width`, U = 0 inside.
    Box { width: f64 },
    /// u0·cot²(πx/a) on 0 < x < a
    CotSquared { u0: f64, a: f64 },
    /// u0·(a/x − x/a)² on x > 0
    ParabolicWell { u0: f64, a: f64 },
    /// a x² + b/x²
    QuadraticPlusInverse { a: f64, b: f64 },
    /// −a/r + b/r²
    CoulombEffective { a: f64, b: f64 },
    /// b/r² inside a hard sphere of radius `radius`
    RadialBox { radius: f64, b: f64 },
    /// a r² + b/r²
    #[serde(rename = "isotropic-ho")]
    IsotropicHO { a: f64, b: f64 },
    /// a r² − c_lsj + b/r²
    #[serde(rename = "ho-spin-orbit")]
    HOSpinOrbit { a: f64, b: f64, c_lsj: f64 },
    SaxonWoodsComposite(SaxonWoodsParams),
    /// a r² − u0 + b/r² below r_m, c/r + b/r² above.
    AlphaPiecewise { u0: f64, a: f64, b: f64, c: f64, r_m: f64 },
    /// c_c/r + b/r² outside r_nuclear; inside a Saxon-Woods well of depth v0,
    /// diffuseness ac, radius rc, plus spin_orbit·(1/r)·dV/dr and b/r².
    ScatteringZones { c_c: f64, b: f64, v0: f64, ac: f64, rc: f64, r_nuclear: f64, spin_orbit: f64 },
    Tabulated(Tabulated),
}

fn positive(name: &str, v: f64) -> Result<(), PotentialError> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(PotentialError::Invalid(format!("{name} must be positive, got {v}")))
    }
}

fn non_negative(name: &str, v: f64) -> Result<(), PotentialError> {
    if v >= 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(PotentialError::Invalid(format!("{name} must be >= 0, got {v}")))
    }
}

fn finite(name: &str, v: f64) -> Result<(), PotentialError> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(PotentialError::Invalid(format!("{name} must be finite, got {v}")))
    }
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::PowerLaw { .. } => "power-law",
            Family::Box { .. } => "box",
            Family::CotSquared { .. } => "cot-squared",
            Family::ParabolicWell { .. } => "parabolic-well",
            Family::QuadraticPlusInverse { .. } => "quadratic-plus-inverse",
            Family::CoulombEffective { .. } => "coulomb-effective",
            Family::RadialBox { .. } => "radial-box",
            Family::IsotropicHO { .. } => "isotropic-ho",
            Family::HOSpinOrbit { .. } => "ho-spin-orbit",
            Family::SaxonWoodsComposite(_) => "saxon-woods-composite",
            Family::AlphaPiecewise { .. } => "alpha-piecewise",
            Family::ScatteringZones { .. } => "scattering-zones",
            Family::Tabulated(_) => "tabulated",
        }
    }

    pub fn validate(&self) -> Result<(), PotentialError> {
        match self {
            Family::PowerLaw { a, p } => {
                positive("a", *a)?;
                positive("p", *p)
            }
            Family::Box { width } => positive("width", *width),
            Family::CotSquared { u0, a } | Family::ParabolicWell { u0, a } => {
                positive("u0", *u0)?;
                positive("a", *a)
            }
            Family::QuadraticPlusInverse { a, b } | Family::IsotropicHO { a, b } => {
                positive("a", *a)?;
                non_negative("b", *b)
            }
            Family::CoulombEffective { a, b } => {
                positive("a", *a)?;
                non_negative("b", *b)
            }
            Family::RadialBox { radius, b } => {
                positive("radius", *radius)?;
                non_negative("b", *b)
            }
            Family::HOSpinOrbit { a, b, c_lsj } => {
                positive("a", *a)?;
                non_negative("b", *b)?;
                finite("c_lsj", *c_lsj)
            }
            Family::SaxonWoodsComposite(sw) => sw.validate(),
            Family::AlphaPiecewise { u0, a, b, c, r_m } => {
                positive("u0", *u0)?;
                positive("a", *a)?;
                non_negative("b", *b)?;
                non_negative("c", *c)?;
                positive("r_m", *r_m)
            }
            Family::ScatteringZones { c_c, b, v0, ac, rc, r_nuclear, spin_orbit } => {
                non_negative("c_c", *c_c)?;
                non_negative("b", *b)?;
                finite("v0", *v0)?;
                positive("ac", *ac)?;
                positive("rc", *rc)?;
                positive("r_nuclear", *r_nuclear)?;
                finite("spin_orbit", *spin_orbit)
            }
            Family::Tabulated(t) => t.validate(),
        }
    }

    pub fn is_radial(&self) -> bool {
        matches!(
            self,
            Family::CoulombEffective { .. }
                | Family::RadialBox { .. }
                | Family::IsotropicHO { .. }
                | Family::HOSpinOrbit { .. }
                | Family::SaxonWoodsComposite(_)
                | Family::AlphaPiecewise { .. }
                | Family::ScatteringZones { .. }
        )
    }

    pub fn energy_sign(&self) -> f64 {
        match self {
            Family::CoulombEffective { .. } | Family::SaxonWoodsComposite(_) => -1.0,
            Family::Tabulated(t) if t.min_value() < 0.0 => -1.0,
            _ => 1.0,
        }
    }

    pub fn domain(&self) -> (f64, f64) {
        match self {
            Family::PowerLaw { .. } => (f64::NEG_INFINITY, f64::INFINITY),
            Family::Box { width } => (0.0, *width),
            Family::CotSquared { a, .. } => (0.0, *a),
            Family::RadialBox { radius, .. } => (0.0, *radius),
            Family::Tabulated(t) => t.range(),
            _ => (0.0, f64::INFINITY),
        }
    }

    pub fn evaluate(&self, x: f64, scale: &ScaleConstants) -> Result<f64, PotentialError> {
        let name = self.name();
        let dom = |reason| Err(PotentialError::Domain { family: name, x, reason });
        if !x.is_finite() {
            return dom("non-finite argument");
        }
        if self.is_radial() && x <= 0.0 {
            return dom("radial coordinate must be positive");
        }
        let v = match *self {
            Family::PowerLaw { a, p } => a * x.abs().powf(p),
            Family::Box { width } => {
                if x < 0.0 || x > width {
                    return dom("outside the box walls");
                }
                0.0
            }
            Family::CotSquared { u0, a } => {
                if x <= 0.0 || x >= a {
                    return dom("cot² pole at 0 and a");
                }
                let t = (PI * x / a).tan();
                u0 / (t * t)
            }
            Family::ParabolicWell { u0, a } => {
                if x <= 0.0 {
                    return dom("x must be positive");
                }
                let s = a / x - x / a;
                u0 * s * s
            }
            Family::QuadraticPlusInverse { a, b } => {
                if x == 0.0 {
                    return dom("pole at 0");
                }
                a * x * x + b / (x * x)
            }
            Family::CoulombEffective { a, b } => -a / x + b / (x * x),
            Family::RadialBox { radius, b } => {
                if x > radius {
                    return dom("outside the hard sphere");
                }
                b / (x * x)
            }
            Family::IsotropicHO { a, b } => a * x * x + b / (x * x),
            Family::HOSpinOrbit { a, b, c_lsj } => a * x * x - c_lsj + b / (x * x),
            Family::SaxonWoodsComposite(ref sw) => sw.evaluate_signed(x, scale),
            Family::AlphaPiecewise { u0, a, b, c, r_m } => {
                if x < r_m {
                    a * x * x - u0 + b / (x * x)
                } else {
                    c / x + b / (x * x)
                }
            }
            Family::ScatteringZones { c_c, b, v0, ac, rc, r_nuclear, spin_orbit } => {
                if x >= r_nuclear {
                    c_c / x + b / (x * x)
                } else {
                    let t = (x - rc) / ac;
                    let ws = -v0 / (1.0 + t.exp());
                    let c = (0.5 * t).cosh();
                    let dv = v0 / (ac * 4.0 * c * c);
                    let so = if spin_orbit == 0.0 { 0.0 } else { spin_orbit / x * dv };
                    ws + so + b / (x * x)
                }
            }
            Family::Tabulated(ref t) => match t.interpolate(x) {
                Some(v) => v,
                None => return dom("outside the tabulated range"),
            },
        };
        Ok(v)
    }
}
