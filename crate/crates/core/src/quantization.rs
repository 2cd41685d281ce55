use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::CoreError;

/// Which quantization number a state uses. q is computed on demand so
/// modes can be compared exactly.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "mode", content = "n", rename_all = "kebab-case")]
pub enum QuantizationMode {
    Ground,
    General(u32),
    Symmetric(u32),
    Antisymmetric(u32),
}

impl QuantizationMode {
    pub fn q(self) -> Result<f64, CoreError> {
        let n = match self {
            QuantizationMode::Ground => return Ok(2.0),
            QuantizationMode::General(n)
            | QuantizationMode::Symmetric(n)
            | QuantizationMode::Antisymmetric(n) => n,
        };
        if n == 0 {
            return Err(CoreError::Domain(format!("{self}: n must be >= 1")));
        }
        let n = n as f64;
        Ok(match self {
            QuantizationMode::General(_) => n * PI,
            QuantizationMode::Symmetric(_) => (2.0 * n - 1.0) * PI,
            QuantizationMode::Antisymmetric(_) => 2.0 * n * PI,
            QuantizationMode::Ground => unreachable!(),
        })
    }

    /// Number of half-waves q/π for the π-multiples; None for the ground state.
    pub fn half_waves(self) -> Option<u32> {
        match self {
            QuantizationMode::Ground => None,
            QuantizationMode::General(n) => Some(n),
            QuantizationMode::Symmetric(n) => Some(2 * n - 1),
            QuantizationMode::Antisymmetric(n) => Some(2 * n),
        }
    }

    /// Short tag used on the command line: ground, g1, s1, a1.
    pub fn tag(self) -> String {
        match self {
            QuantizationMode::Ground => "ground".into(),
            QuantizationMode::General(n) => format!("g{n}"),
            QuantizationMode::Symmetric(n) => format!("s{n}"),
            QuantizationMode::Antisymmetric(n) => format!("a{n}"),
        }
    }
}

pub fn q_value(mode: QuantizationMode) -> Result<f64, CoreError> {
    mode.q()
}

impl fmt::Display for QuantizationMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.tag())
    }
}

impl FromStr for QuantizationMode {
    type Err = CoreError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "ground" || s == "0" {
            return Ok(QuantizationMode::Ground);
        }
        let bad = || CoreError::Domain(format!("bad quantization mode '{s}' (ground, gN, sN, aN)"));
        let (head, tail) = s.split_at(s.find(|c: char| c.is_ascii_digit()).ok_or_else(bad)?);
        let n: u32 = tail.parse().map_err(|_| bad())?;
        if n == 0 {
            return Err(bad());
        }
        match head {
            "g" | "general" => Ok(QuantizationMode::General(n)),
            "s" | "symmetric" => Ok(QuantizationMode::Symmetric(n)),
            "a" | "antisymmetric" => Ok(QuantizationMode::Antisymmetric(n)),
            _ => Err(bad()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn q_values() {
        assert_eq!(QuantizationMode::Ground.q().unwrap(), 2.0);
        assert_eq!(QuantizationMode::General(1).q().unwrap(), PI);
        assert_eq!(QuantizationMode::Antisymmetric(2).q().unwrap(), 4.0 * PI);
        assert_eq!(QuantizationMode::Symmetric(2).q().unwrap(), 3.0 * PI);
    }

    #[test]
    fn zero_n_is_error() {
        assert!(QuantizationMode::General(0).q().is_err());
        assert!(QuantizationMode::Symmetric(0).q().is_err());
        assert!("g0".parse::<QuantizationMode>().is_err());
    }

    #[test]
    fn parse_roundtrip() {
        for m in [
            QuantizationMode::Ground,
            QuantizationMode::General(3),
            QuantizationMode::Symmetric(1),
            QuantizationMode::Antisymmetric(7),
        ] {
            assert_eq!(m.tag().parse::<QuantizationMode>().unwrap(), m);
        }
        assert!("x1".parse::<QuantizationMode>().is_err());
    }
}
