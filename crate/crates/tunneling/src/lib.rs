//! Barrier transmission T = 2/(cosh 2Kd + cos 2P) and its WKB counterpart
//! e^{−2g}, cold emission from a metal surface, and alpha-decay half-lives.
//!
//! K and P may be imaginary (energy below the reference, or a negative
//! potential under the barrier). They carry an explicit branch flag and the
//! identities cosh(iy) = cos y, cos(iy) = cosh y are applied symbolically, so
//! all arithmetic stays real.

mod alpha;
mod barrier;
mod cold;

pub use alpha::{
    alpha_geometry, alpha_half_life, phase_integral, scan_parameters, wkb_exponent, AlphaDecayCase, AlphaGeometry, AlphaInputs, AlphaOutputs,
    GridFit, GridSpec,
};
pub use barrier::{barrier_result, transmission_wkb, BarrierWindow};
pub use cold::{cold_emission, cold_emission_quadrature_exponent, ELECTRON_MC2_EV, HBAR_C_EV_NM};

use quantarea_core::NumericError;
use quantarea_potentials::PotentialError;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TunnelError {
    #[error("transmission denominator is {denominator} (must be positive)")]
    SingularTransmission { denominator: f64 },
    #[error("U − E = {deficit} < 0 at x = {x}, inside the barrier interval")]
    InvalidBarrier { x: f64, deficit: f64 },
    #[error("potential changes sign under the barrier; the phase integral has no single branch")]
    MixedBranch,
    #[error("no barrier above E = {energy} in [{lo}, {hi}]")]
    NoBarrier { energy: f64, lo: f64, hi: f64 },
    #[error("no inner well: (E + U0)² − 4ab = {discriminant} < 0")]
    NoInnerWell { discriminant: f64 },
    #[error("no real junction radius in ({r1}, {r2})")]
    NoJunction { r1: f64, r2: f64 },
    #[error("geometry violates r3 < r1 < r_m < r2: {0}")]
    Geometry(String),
    #[error("no bound ground state in the inner well ({0})")]
    NoGroundState(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error(transparent)]
    Numeric(#[from] NumericError),
    #[error(transparent)]
    Potential(#[from] PotentialError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    Real,
    Imaginary,
}

/// A real magnitude tagged with the branch it lives on: the value is
/// `magnitude` or `i·magnitude`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BranchValue {
    pub magnitude: f64,
    pub branch: Branch,
}

impl BranchValue {
    pub fn real(x: f64) -> Self {
        BranchValue { magnitude: x, branch: Branch::Real }
    }

    pub fn imaginary(x: f64) -> Self {
        BranchValue { magnitude: x, branch: Branch::Imaginary }
    }

    /// √s with the branch chosen by the sign of s.
    pub fn sqrt_of(s: f64) -> Self {
        if s >= 0.0 {
            Self::real(s.sqrt())
        } else {
            Self::imaginary((-s).sqrt())
        }
    }

    pub fn scaled(self, f: f64) -> Self {
        BranchValue { magnitude: self.magnitude * f, ..self }
    }
}

/// cosh(2x) for x on either branch.
fn cosh_twice(x: BranchValue) -> f64 {
    match x.branch {
        Branch::Real => (2.0 * x.magnitude).cosh(),
        Branch::Imaginary => (2.0 * x.magnitude).cos(),
    }
}

/// cos(2x) for x on either branch.
fn cos_twice(x: BranchValue) -> f64 {
    match x.branch {
        Branch::Real => (2.0 * x.magnitude).cos(),
        Branch::Imaginary => (2.0 * x.magnitude).cosh(),
    }
}

/// T = 2/(cosh 2Kd + cos 2P).
pub fn transmission_new(k: BranchValue, d: f64, p: BranchValue) -> Result<f64, TunnelError> {
    let denominator = cosh_twice(k.scaled(d)) + cos_twice(p);
    if !(denominator > 0.0) {
        return Err(TunnelError::SingularTransmission { denominator });
    }
    Ok(2.0 / denominator)
}

/// e^{−2g}.
pub fn transmission_from_exponent(g: f64) -> f64 {
    (-2.0 * g).exp()
}

/// Both transmission estimates for one barrier.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BarrierResult {
    #[serde(rename = "K")]
    pub k: BranchValue,
    pub d: f64,
    #[serde(rename = "P")]
    pub p: BranchValue,
    #[serde(rename = "T_new")]
    pub t_new: f64,
    #[serde(rename = "T_wkb")]
    pub t_wkb: f64,
    pub g: f64,
    pub r1: f64,
    pub r2: f64,
}

impl BarrierResult {
    pub fn new(k: BranchValue, d: f64, p: BranchValue, g: f64, r1: f64, r2: f64) -> Result<Self, TunnelError> {
        Ok(BarrierResult { k, d, p, t_new: transmission_new(k, d, p)?, t_wkb: transmission_from_exponent(g), g, r1, r2 })
    }

    /// (2/(cosh 2Kd + 1), 2/(cosh 2Kd − 1)) when K and P are real.
    pub fn real_phase_bounds(&self) -> Option<(f64, f64)> {
        if self.k.branch != Branch::Real || self.p.branch != Branch::Real {
            return None;
        }
        let c = cosh_twice(self.k.scaled(self.d));
        Some((2.0 / (c + 1.0), 2.0 / (c - 1.0)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vanishing_barrier() {
        assert_eq!(transmission_new(BranchValue::real(0.0), 0.0, BranchValue::real(0.0)).unwrap(), 1.0);
        assert_eq!(transmission_from_exponent(0.0), 1.0);
    }

    #[test]
    fn imaginary_branches_swap_functions() {
        let t = transmission_new(BranchValue::imaginary(0.3), 2.0, BranchValue::imaginary(0.5)).unwrap();
        assert!((t - 2.0 / (1.2f64.cos() + 1.0f64.cosh())).abs() < 1e-15);
    }

    #[test]
    fn singular_denominator() {
        // cos(2·π/2) + cos(2·π/2) = −2
        let h = std::f64::consts::FRAC_PI_2;
        let e = transmission_new(BranchValue::imaginary(h), 1.0, BranchValue::real(h)).unwrap_err();
        assert!(matches!(e, TunnelError::SingularTransmission { denominator } if denominator < 0.0));
    }

    #[test]
    fn sqrt_branch() {
        assert_eq!(BranchValue::sqrt_of(-4.0), BranchValue::imaginary(2.0));
        assert_eq!(BranchValue::sqrt_of(9.0), BranchValue::real(3.0));
    }
}
