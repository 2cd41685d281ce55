use quantarea_core::ScaleConstants;
use serde::{Deserialize, Serialize};

use crate::PotentialError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Nucleon {
    Neutron,
    Proton,
}

/// Prefactor in front of the spin-orbit form factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SpinOrbitScale {
    /// ħ²/(2μ²c²) = M_h/(μc²)
    #[default]
    Relativistic,
    /// M_h alone
    Bare,
}

/// Saxon-Woods central well with spin-orbit, centrifugal and (for protons)
/// uniformly charged sphere Coulomb terms.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SaxonWoodsParams {
    pub v0: f64,
    pub r0: f64,
    pub a0: f64,
    pub vso: f64,
    pub rso: f64,
    pub aso: f64,
    pub z: u32,
    pub l: u32,
    pub j: f64,
    pub r_co: f64,
    pub nucleon: Nucleon,
    #[serde(default)]
    pub spin_orbit_scale: SpinOrbitScale,
}

impl SaxonWoodsParams {
    pub fn validate(&self) -> Result<(), PotentialError> {
        let l = self.l as f64;
        if (self.j - (l + 0.5)).abs() > 1e-12 && ((self.j - (l - 0.5)).abs() > 1e-12 || self.l == 0) {
            return Err(PotentialError::Invalid(format!("j = {} is not l ± 1/2 for l = {}", self.j, self.l)));
        }
        for (n, v) in [("a0", self.a0), ("aso", self.aso), ("r_co", self.r_co), ("r0", self.r0)] {
            if !(v > 0.0) {
                return Err(PotentialError::Invalid(format!("{n} must be positive, got {v}")));
            }
        }
        if !self.v0.is_finite() || !self.vso.is_finite() || !self.rso.is_finite() {
            return Err(PotentialError::Invalid("Saxon-Woods parameters must be finite".into()));
        }
        Ok(())
    }

    /// ½[j(j+1) − ℓ(ℓ+1) − 3/4]
    pub fn spin_orbit_factor(&self) -> f64 {
        let l = self.l as f64;
        0.5 * (self.j * (self.j + 1.0) - l * (l + 1.0) - 0.75)
    }

    pub fn central(&self, r: f64) -> f64 {
        -self.v0 / (1.0 + ((r - self.r0) / self.a0).exp())
    }

    pub fn spin_orbit(&self, r: f64, scale: &ScaleConstants) -> f64 {
        let alpha = self.spin_orbit_factor();
        if alpha == 0.0 || self.vso == 0.0 {
            return 0.0;
        }
        let pref = match self.spin_orbit_scale {
            SpinOrbitScale::Relativistic => scale.mh / scale.mass,
            SpinOrbitScale::Bare => scale.mh,
        };
        let c = (0.5 * (r - self.rso) / self.aso).cosh();
        // eˣ/(1+eˣ)² = 1/(4cosh²(x/2))
        -pref / r * alpha * self.vso / self.aso / (4.0 * c * c)
    }

    pub fn centrifugal(&self, r: f64, scale: &ScaleConstants) -> f64 {
        if self.l == 0 {
            return 0.0;
        }
        crate::centrifugal_b(self.l, scale.mh) / (r * r)
    }

    pub fn coulomb(&self, r: f64, e_squared: f64) -> f64 {
        if self.nucleon == Nucleon::Neutron || self.z == 0 {
            return 0.0;
        }
        let q = (self.z as f64 - 1.0) * e_squared;
        let ra = r.abs();
        if ra <= self.r_co {
            q * (3.0 * self.r_co * self.r_co - r * r) / (2.0 * self.r_co.powi(3))
        } else {
            q / ra
        }
    }

    /// All terms summed at r, taken literally for negative r as well.
    pub fn evaluate_signed(&self, r: f64, scale: &ScaleConstants) -> f64 {
        self.central(r)
            + self.spin_orbit(r, scale)
            + self.centrifugal(r, scale)
            + self.coulomb(r, scale.units.e_squared())
    }
}
