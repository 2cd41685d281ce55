//! Potential families, their evaluation and their classical turning points.

mod families;
mod saxon_woods;
mod tabulated;
mod turning;

pub use families::{centrifugal_b, Family};
pub use saxon_woods::{Nucleon, SaxonWoodsParams, SpinOrbitScale};
pub use tabulated::{parse_tabulated_csv, Tabulated};
pub use turning::TurningPair;

use quantarea_core::{units::scale_constants, CoreError, ScaleConstants, UnitSystem};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PotentialError {
    #[error("{family}: x = {x} is outside the domain ({reason})")]
    Domain { family: &'static str, x: f64, reason: &'static str },
    #[error("{family}: no turning points at |E| = {energy}")]
    NoTurningPoints { family: &'static str, energy: f64 },
    #[error("invalid potential: {0}")]
    Invalid(String),
    #[error(transparent)]
    Core(#[from] CoreError),
}

/// A potential family together with the mass and unit system it lives in.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Potential {
    #[serde(flatten)]
    pub family: Family,
    pub units: UnitSystem,
    pub mass: f64,
}

impl Potential {
    pub fn new(family: Family, units: UnitSystem, mass: f64) -> Result<Self, PotentialError> {
        let p = Potential { family, units, mass };
        p.validate()?;
        Ok(p)
    }

    pub fn natural(family: Family) -> Self {
        Potential { family, units: UnitSystem::Natural, mass: 1.0 }
    }

    pub fn from_json(s: &str) -> Result<Self, PotentialError> {
        let p: Potential = serde_json::from_str(s).map_err(|e| PotentialError::Invalid(e.to_string()))?;
        p.validate()?;
        Ok(p)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("potential serializes")
    }

    pub fn validate(&self) -> Result<(), PotentialError> {
        scale_constants(self.mass, self.units)?;
        self.family.validate()
    }

    pub fn scale(&self) -> ScaleConstants {
        scale_constants(self.mass, self.units).expect("mass validated on construction")
    }

    pub fn name(&self) -> &'static str {
        self.family.name()
    }

    /// U(x) inside the declared domain.
    pub fn evaluate(&self, x: f64) -> Result<f64, PotentialError> {
        self.family.evaluate(x, &self.scale())
    }

    /// The Saxon-Woods composite evaluated at any nonzero argument, negative
    /// ones included, as the symmetric-sum level recipe needs.
    pub fn evaluate_signed(&self, x: f64) -> Result<f64, PotentialError> {
        match &self.family {
            Family::SaxonWoodsComposite(sw) => Ok(sw.evaluate_signed(x, &self.scale())),
            _ => self.evaluate(x),
        }
    }

    pub fn turning_points(&self, e_abs: f64) -> Result<TurningPair, PotentialError> {
        turning::turning_points(self, e_abs)
    }

    /// +1 when levels of this family are reported as positive energies
    /// (confining wells), −1 when they are reported negative.
    pub fn energy_sign(&self) -> f64 {
        self.family.energy_sign()
    }

    pub fn is_radial(&self) -> bool {
        self.family.is_radial()
    }

    /// (lo, hi) bounds of the evaluation domain; endpoints may be excluded.
    pub fn domain(&self) -> (f64, f64) {
        self.family.domain()
    }

    /// Location and value of the well minimum, closed form where available,
    /// otherwise from a dense sample of the domain.
    pub fn well_minimum(&self) -> Option<(f64, f64)> {
        turning::well_minimum(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_roundtrip() {
        let p = Potential::natural(Family::PowerLaw { a: 1.0, p: 2.0 });
        let s = p.to_json();
        assert!(s.contains("\"family\": \"power-law\""));
        assert!(s.contains("\"params\""));
        assert_eq!(Potential::from_json(&s).unwrap(), p);
    }

    #[test]
    fn json_input_format() {
        let s = r#"{"family": "coulomb-effective", "params": {"a": 1.0, "b": 0.0}, "units": "natural", "mass": 1.0}"#;
        let p = Potential::from_json(s).unwrap();
        assert_eq!(p.evaluate(2.0).unwrap(), -0.5);
    }

    #[test]
    fn json_rejects_bad_mass() {
        let s = r#"{"family": "box", "params": {"width": 1.0}, "units": "natural", "mass": -1.0}"#;
        assert!(Potential::from_json(s).is_err());
    }
}
