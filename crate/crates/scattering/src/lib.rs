//! Three-zone central-potential scattering: a Coulomb-plus-centrifugal tail
//! outside r2, a Saxon-Woods well inside, and cross sections that depend on
//! the potential only through the phase integral Y.

mod cross;
mod fit;
mod zones;

pub use cross::{amplitude, cross_sections, differential, Amplitude, CrossSections, DifferentialSample, Sign};
pub use fit::{fit_depth, invert_r0, passes_gate, FitGrid, FitResult};
pub use zones::{coulomb_tail_antiderivative, y_integral, zone_potential, zone_radii, ZoneRadii, YIntegral};

use quantarea_core::{
    units::{reduced_mass, scale_constants, AMU_MEV, E_SQUARED, HBAR_C},
    NumericError, UnitSystem,
};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ScatterError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("zone ordering violated: r3 = {r3} > r2 = {r2}")]
    ZoneOrdering { r3: f64, r2: f64 },
    #[error("quadrature failed in the {zone} zone: {source}")]
    Quadrature { zone: &'static str, source: NumericError },
    #[error("infeasible: {0}")]
    Infeasible(String),
    #[error("no grid cell passes the rounding gate (closest sigma_r = {best_sigma_r} mb at V0 = {best_v0}, a_c = {best_ac})")]
    FitInfeasible { best_sigma_r: f64, best_v0: f64, best_ac: f64 },
    #[error(transparent)]
    Numeric(#[from] NumericError),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Nucleus {
    pub z: u32,
    /// mass number
    pub a: u32,
    /// mc² in MeV
    pub mass: f64,
}

impl Nucleus {
    /// Mass taken as A·u.
    pub fn new(z: u32, a: u32) -> Self {
        Nucleus { z, a, mass: a as f64 * AMU_MEV }
    }

    pub fn with_mass_u(z: u32, a: u32, u: f64) -> Self {
        Nucleus { z, a, mass: u * AMU_MEV }
    }

    pub fn neutron() -> Self {
        Self::with_mass_u(0, 1, 1.008665)
    }

    pub fn helium3() -> Self {
        Self::with_mass_u(2, 3, 3.016029)
    }

    fn cbrt_a(&self) -> f64 {
        (self.a as f64).cbrt()
    }
}

/// Well parameters. `w0` is an optional absorptive depth with the same
/// shape; when non-zero the inner zone uses the modulus |U + iW|.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WellParams {
    pub r0: f64,
    pub v0: f64,
    pub ac: f64,
    #[serde(default)]
    pub w0: f64,
}

impl WellParams {
    pub fn new(r0: f64, v0: f64, ac: f64) -> Self {
        WellParams { r0, v0, ac, w0: 0.0 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScatteringCase {
    pub projectile: Nucleus,
    /// projectile spin
    pub s: f64,
    pub target: Nucleus,
    /// lab energy, MeV
    pub e_lab: f64,
    pub l: u32,
    pub j: f64,
    /// incoming-wave angular momentum; 0 drops the incoming phase
    #[serde(default)]
    pub l0: u32,
    pub params: WellParams,
}

impl ScatteringCase {
    pub fn new(projectile: Nucleus, s: f64, target: Nucleus, e_lab: f64, params: WellParams) -> Self {
        ScatteringCase { projectile, s, target, e_lab, l: 0, j: s, l0: 0, params }
    }

    pub fn with_lsj(mut self, l: u32, s: f64, j: f64) -> Self {
        self.l = l;
        self.s = s;
        self.j = j;
        self
    }

    pub fn with_params(mut self, params: WellParams) -> Self {
        self.params = params;
        self
    }

    pub fn validate(&self) -> Result<(), ScatterError> {
        let bad = |m: String| Err(ScatterError::Domain(m));
        if !(self.e_lab > 0.0 && self.e_lab.is_finite()) {
            return bad(format!("lab energy must be positive, got {}", self.e_lab));
        }
        if !(self.params.r0 > 0.0) {
            return bad(format!("R0 must be positive, got {}", self.params.r0));
        }
        if !(self.params.ac > 0.0) {
            return bad(format!("a_c must be positive, got {}", self.params.ac));
        }
        if !self.params.v0.is_finite() || !self.params.w0.is_finite() {
            return bad("V0 and W0 must be finite".into());
        }
        if !(self.projectile.mass > 0.0 && self.target.mass > 0.0) || self.projectile.a == 0 || self.target.a == 0 {
            return bad("masses and mass numbers must be positive".into());
        }
        Ok(())
    }

    /// M_t E_L / (M_p + M_t)
    pub fn e_relative(&self) -> f64 {
        self.target.mass * self.e_lab / (self.projectile.mass + self.target.mass)
    }

    pub fn reduced_mass(&self) -> f64 {
        reduced_mass(self.projectile.mass, self.target.mass)
    }

    pub fn m1(&self) -> f64 {
        scale_constants(self.reduced_mass(), UnitSystem::NuclearMevFm).map(|s| s.m1).unwrap_or(f64::NAN)
    }

    /// ħ²L(L+1)/(2M_i)
    pub fn centrifugal_b(&self) -> f64 {
        let l = self.l as f64;
        HBAR_C * HBAR_C * l * (l + 1.0) / (2.0 * self.reduced_mass())
    }

    pub fn coulomb(&self) -> f64 {
        (self.projectile.z * self.target.z) as f64 * E_SQUARED
    }

    /// ½[J(J+1) − L(L+1) − S(S+1)]
    pub fn ls(&self) -> f64 {
        let l = self.l as f64;
        0.5 * (self.j * (self.j + 1.0) - l * (l + 1.0) - self.s * (self.s + 1.0))
    }

    /// Coefficient of (1/r)dV/dr in the spin-orbit term.
    pub fn spin_orbit_coefficient(&self) -> f64 {
        let mi = self.reduced_mass();
        -HBAR_C * HBAR_C / (2.0 * mi * mi) * self.ls()
    }

    /// Saxon-Woods radius R0·A_t^{1/3}.
    pub fn well_radius(&self) -> f64 {
        self.params.r0 * self.target.cbrt_a()
    }

    /// A_p^{1/3} + A_t^{1/3}
    pub fn radius_sum(&self) -> f64 {
        self.projectile.cbrt_a() + self.target.cbrt_a()
    }

    /// (C_c + √(C_c² + 4bE_r))/(2E_r), the Coulomb-plus-centrifugal reach.
    pub fn tail_length(&self) -> f64 {
        let (c, b, e) = (self.coulomb(), self.centrifugal_b(), self.e_relative());
        (c + (c * c + 4.0 * b * e).sqrt()) / (2.0 * e)
    }

    pub fn k(&self) -> f64 {
        self.m1() * self.e_relative().sqrt()
    }
}
