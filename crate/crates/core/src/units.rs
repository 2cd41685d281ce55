use serde::{Deserialize, Serialize};

use crate::CoreError;

/// ħc in MeV·fm; numerically the same in eV·nm.
pub const HBAR_C: f64 = 197.329;
/// e² in MeV·fm (equivalently eV·nm).
pub const E_SQUARED: f64 = 1.439976;
/// Atomic mass unit in MeV.
pub const AMU_MEV: f64 = 931.502;
/// Electron rest energy in MeV.
pub const ELECTRON_MC2_MEV: f64 = 0.511003;
/// Speed of light in fm/s.
pub const C_LIGHT_FM_PER_S: f64 = 2.99792458e23;
/// The ln 2 value used for half-lives.
pub const LN2_HALF_LIFE: f64 = 0.693;
pub const SECONDS_PER_DAY: f64 = 86_400.0;
pub const DAYS_PER_YEAR: f64 = 365.25;
pub const SECONDS_PER_YEAR: f64 = SECONDS_PER_DAY * DAYS_PER_YEAR;

/// 1 fm² = 10 mb.
pub const MB_PER_FM2: f64 = 10.0;
/// V/cm to V/nm.
pub const V_PER_NM_PER_V_PER_CM: f64 = 1e-7;

pub fn fm2_to_mb(x: f64) -> f64 {
    x * MB_PER_FM2
}

pub fn mb_to_fm2(x: f64) -> f64 {
    x / MB_PER_FM2
}

/// Field in V/cm to the electron potential gradient eε in eV/nm.
pub fn field_v_per_cm_to_ev_per_nm(field: f64) -> f64 {
    field * V_PER_NM_PER_V_PER_CM
}

pub fn ev_per_nm_to_field_v_per_cm(x: f64) -> f64 {
    x / V_PER_NM_PER_V_PER_CM
}

pub fn seconds_to_years(s: f64) -> f64 {
    s / SECONDS_PER_YEAR
}

pub fn seconds_to_days(s: f64) -> f64 {
    s / SECONDS_PER_DAY
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum UnitSystem {
    /// ħ = 1; masses are plain numbers.
    Natural,
    /// Energies in eV, lengths in nm, masses as mc² in eV.
    AtomicEvNm,
    /// Energies in MeV, lengths in fm, masses as mc² in MeV.
    NuclearMevFm,
}

impl UnitSystem {
    pub fn name(self) -> &'static str {
        match self {
            UnitSystem::Natural => "natural",
            UnitSystem::AtomicEvNm => "atomic-ev-nm",
            UnitSystem::NuclearMevFm => "nuclear-mev-fm",
        }
    }

    pub fn hbar_c(self) -> f64 {
        match self {
            UnitSystem::Natural => 1.0,
            UnitSystem::AtomicEvNm | UnitSystem::NuclearMevFm => HBAR_C,
        }
    }

    /// e² in the system's energy·length unit.
    pub fn e_squared(self) -> f64 {
        match self {
            UnitSystem::Natural => 1.0,
            UnitSystem::AtomicEvNm | UnitSystem::NuclearMevFm => E_SQUARED,
        }
    }

    /// Electron rest energy in the system's energy unit.
    pub fn electron_mass(self) -> f64 {
        match self {
            UnitSystem::Natural => 1.0,
            UnitSystem::AtomicEvNm => ELECTRON_MC2_MEV * 1e6,
            UnitSystem::NuclearMevFm => ELECTRON_MC2_MEV,
        }
    }

    pub fn energy_unit(self) -> &'static str {
        match self {
            UnitSystem::Natural => "1",
            UnitSystem::AtomicEvNm => "eV",
            UnitSystem::NuclearMevFm => "MeV",
        }
    }

    pub fn length_unit(self) -> &'static str {
        match self {
            UnitSystem::Natural => "1",
            UnitSystem::AtomicEvNm => "nm",
            UnitSystem::NuclearMevFm => "fm",
        }
    }
}

impl std::str::FromStr for UnitSystem {
    type Err = CoreError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "natural" => Ok(UnitSystem::Natural),
            "atomic-ev-nm" | "atomic" => Ok(UnitSystem::AtomicEvNm),
            "nuclear-mev-fm" | "nuclear" => Ok(UnitSystem::NuclearMevFm),
            _ => Err(CoreError::Domain(format!("unknown unit system '{s}'"))),
        }
    }
}

/// m₁ = √(2m)/ħ and M_h = ħ²/(2m) for one mass in one unit system.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScaleConstants {
    pub mass: f64,
    pub units: UnitSystem,
    pub m1: f64,
    pub mh: f64,
}

/// `mass` is mc² in the system's energy unit (or the bare mass when natural).
pub fn scale_constants(mass: f64, units: UnitSystem) -> Result<ScaleConstants, CoreError> {
    if !(mass > 0.0) || !mass.is_finite() {
        return Err(CoreError::Domain(format!("mass must be positive, got {mass}")));
    }
    let hc = units.hbar_c();
    Ok(ScaleConstants {
        mass,
        units,
        m1: (2.0 * mass).sqrt() / hc,
        mh: hc * hc / (2.0 * mass),
    })
}

pub fn reduced_mass(m_a: f64, m_b: f64) -> f64 {
    m_a * m_b / (m_a + m_b)
}

/// Mass in u to MeV.
pub fn amu_to_mev(u: f64) -> f64 {
    u * AMU_MEV
}

#[derive(Debug, Clone, Serialize)]
pub struct ConstantsDocument {
    pub hbar_c_mev_fm: f64,
    pub hbar_c_ev_nm: f64,
    pub e_squared_mev_fm: f64,
    pub amu_mev: f64,
    pub electron_mc2_mev: f64,
    pub c_light_fm_per_s: f64,
    pub ln2_half_life: f64,
    pub days_per_year: f64,
    pub mb_per_fm2: f64,
    pub v_per_nm_per_v_per_cm: f64,
}

pub fn constants_document() -> ConstantsDocument {
    ConstantsDocument {
        hbar_c_mev_fm: HBAR_C,
        hbar_c_ev_nm: HBAR_C,
        e_squared_mev_fm: E_SQUARED,
        amu_mev: AMU_MEV,
        electron_mc2_mev: ELECTRON_MC2_MEV,
        c_light_fm_per_s: C_LIGHT_FM_PER_S,
        ln2_half_life: LN2_HALF_LIFE,
        days_per_year: DAYS_PER_YEAR,
        mb_per_fm2: MB_PER_FM2,
        v_per_nm_per_v_per_cm: V_PER_NM_PER_V_PER_CM,
    }
}

/// The `constants.json` document shared by the CLI and the tests.
pub fn constants_json() -> String {
    serde_json::to_string_pretty(&constants_document()).expect("constants serialize")
}
