//! Command-line front end. `run` is the whole program; the binary only
//! forwards argv and the exit code.

mod commands;
mod emit;
pub mod reproduce;

use std::{ffi::OsString, io::Write, path::PathBuf};

use clap::{Args, Parser, Subcommand};

pub use reproduce::{
    reproduce, reproduce_with, CellReport, CellStatus, ReproductionReport, Summary, TolerancePolicy,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_COMPUTE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_TOLERANCE: i32 = 3;

/// Environment variable naming a directory of table CSVs that replace the
/// embedded copies.
pub const DATA_DIR_ENV: &str = "QUANTAREA_DATA_DIR";

#[derive(Debug, Parser)]
#[command(name = "quantarea", version, about = "Bound states, tunneling and cross sections from turning points and potential areas")]
pub struct Cli {
    /// Emit JSON instead of CSV
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Quantized levels of a potential
    Spectrum(SpectrumArgs),
    /// Sampled wave function of one level
    Wavefunction(WavefunctionArgs),
    /// Transmission through a barrier given as a potential spec
    Tunnel(TunnelArgs),
    /// Field emission of electrons from a metal surface
    ColdEmission(ColdArgs),
    /// Alpha-decay half-life
    Alpha(AlphaArgs),
    /// Cross sections for a projectile on a target
    Scatter(ScatterArgs),
    /// Fit the well depth to elastic and reaction cross sections
    Fit(FitArgs),
    /// Recompute a reference table and report deviations cell by cell
    ReproduceTable(ReproduceArgs),
    /// Print the physical constants as JSON
    DumpConstants,
}

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    /// Potential spec (JSON: family, params, units, mass). Energies come out
    /// in the spec's energy unit (natural, eV or MeV), lengths in its length
    /// unit (natural, nm or fm)
    #[arg(long, value_name = "FILE")]
    pub potential: PathBuf,
    /// Comma-separated modes: ground (q = 2), gN (q = Nπ), sN (q = (2N−1)π), aN (q = 2Nπ)
    #[arg(long, default_value = "ground,g1,g2,g3", value_name = "LIST")]
    pub modes: String,
    /// Output format (csv or json); --json overrides
    #[arg(long, default_value = "csv", value_name = "FORMAT")]
    pub out: String,
}

#[derive(Debug, Args)]
pub struct WavefunctionArgs {
    /// Potential spec (JSON); x is in the spec's length unit
    #[arg(long, value_name = "FILE")]
    pub potential: PathBuf,
    /// Level: ground, gN, sN or aN (dimensionless)
    #[arg(long, default_value = "g1", value_name = "MODE")]
    pub mode: String,
    /// Number of evenly spaced samples between the turning points (count)
    #[arg(long, default_value_t = 201, value_name = "N")]
    pub samples: usize,
    /// cos or sin envelope: auto, symmetric or antisymmetric
    #[arg(long, default_value = "auto", value_name = "PARITY")]
    pub parity: String,
}

#[derive(Debug, Args)]
pub struct TunnelArgs {
    /// Barrier potential spec (JSON); positions in its length unit
    #[arg(long, value_name = "FILE")]
    pub barrier: PathBuf,
    /// Particle energy in the spec's energy unit (natural, eV or MeV)
    #[arg(long, value_name = "E", allow_hyphen_values = true)]
    pub energy: f64,
    /// Search window LO,HI for the barrier, in the spec's length unit
    #[arg(long, value_name = "LO,HI")]
    pub window: Option<String>,
}

#[derive(Debug, Args)]
pub struct ColdArgs {
    /// Work function in eV
    #[arg(long, value_name = "EV")]
    pub work_function: f64,
    /// Applied field in V/cm
    #[arg(long, value_name = "V_PER_CM")]
    pub field: f64,
}

#[derive(Debug, Args)]
pub struct AlphaArgs {
    /// Parent nucleus as Z,A (proton number, mass number)
    #[arg(long, value_name = "Z,A")]
    pub nuclide: Option<String>,
    /// Alpha energy in MeV
    #[arg(long, value_name = "MEV")]
    pub ealpha: Option<f64>,
    /// Alpha orbital angular momentum (integer, units of ħ)
    #[arg(long, default_value_t = 0, value_name = "L")]
    pub ell: u32,
    /// Radius parameter R0 in fm (well radius R0·A^(1/3))
    #[arg(long, default_value_t = 1.25, value_name = "FM")]
    pub r0: f64,
    /// Well depth U0 in MeV
    #[arg(long, default_value_t = 40.0, value_name = "MEV")]
    pub u0: f64,
    /// Daughter atomic mass in u (default: mass table, else A−4)
    #[arg(long, value_name = "U")]
    pub daughter_mass: Option<f64>,
    /// Experimental half-life with unit suffix s, d or y (e.g. 2.898y); bare numbers are seconds
    #[arg(long, value_name = "TIME")]
    pub t_exp: Option<String>,
    /// Search R0 1.10–1.60 fm and U0 30–50 MeV for the cell closest to --t-exp
    #[arg(long)]
    pub scan: bool,
    /// Batch CSV (header `# units:` line; columns z, a, ealpha [MeV], ell, r0 [fm], u0 [MeV], optional t_exp [y|d|s])
    #[arg(long, value_name = "FILE", conflicts_with_all = ["nuclide", "ealpha"])]
    pub batch: Option<PathBuf>,
    /// Unit for reported half-lives: s, d or y
    #[arg(long, default_value = "y", value_name = "UNIT")]
    pub time_unit: String,
}

#[derive(Debug, Args, Clone)]
pub struct CaseArgs {
    /// Projectile as Z,A (0,1 neutron; 2,3 helium-3)
    #[arg(long, default_value = "0,1", value_name = "Z,A")]
    pub projectile: String,
    /// Target as Z,A
    #[arg(long, value_name = "Z,A")]
    pub target: Option<String>,
    /// Projectile lab energy in MeV
    #[arg(long, value_name = "MEV")]
    pub elab: Option<f64>,
    /// Relative orbital L, projectile spin S and total J (units of ħ)
    #[arg(long, default_value = "0,0.5,0.5", value_name = "L,S,J")]
    pub lsj: String,
    /// Radius parameter R0 in fm
    #[arg(long, value_name = "FM")]
    pub r0: Option<f64>,
    /// Experimental total cross section in mb; sets R0 when --r0 is absent
    #[arg(long, value_name = "MB")]
    pub sigma_t_exp: Option<f64>,
    /// Well depth V0 in MeV
    #[arg(long, default_value_t = 40.0, value_name = "MEV")]
    pub v0: f64,
    /// Diffuseness a_c in fm
    #[arg(long, default_value_t = 0.40, value_name = "FM")]
    pub ac: f64,
    /// Amplitude branch: lower or upper (dimensionless choice)
    #[arg(long, default_value = "lower", value_name = "SIGN")]
    pub sign: String,
}

#[derive(Debug, Args)]
pub struct ScatterArgs {
    #[command(flatten)]
    pub case: CaseArgs,
    /// Also emit dσ/dθ in mb/rad at this many angles on [0, π] (count)
    #[arg(long, value_name = "N")]
    pub angles: Option<usize>,
    /// Batch CSV (header `# units:` line; columns z, a, e_lab [MeV], r0 [fm], optional v0 [MeV], ac [fm], projectile)
    #[arg(long, value_name = "FILE", conflicts_with = "target")]
    pub batch: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct FitArgs {
    #[command(flatten)]
    pub case: CaseArgs,
    /// Target elastic and reaction cross sections in mb, as SIGMA_S,SIGMA_R
    #[arg(long, value_name = "MB,MB")]
    pub targets: String,
}

#[derive(Debug, Args)]
pub struct ReproduceArgs {
    /// Table number 1–9
    #[arg(value_name = "N")]
    pub table: String,
    /// Also write every embedded table (CSV and JSON) into this directory
    #[arg(long, value_name = "DIR")]
    pub dump: Option<PathBuf>,
}

/// Why a run ended without success.
#[derive(Debug)]
pub enum Failure {
    Usage(anyhow::Error),
    Compute(anyhow::Error),
    Tolerance(String),
}

impl Failure {
    pub fn code(&self) -> i32 {
        match self {
            Failure::Usage(_) => EXIT_USAGE,
            Failure::Compute(_) => EXIT_COMPUTE,
            Failure::Tolerance(_) => EXIT_TOLERANCE,
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Usage(e) => write!(f, "usage error: {e:#}"),
            Failure::Compute(e) => write!(f, "computation failed: {e:#}"),
            Failure::Tolerance(s) => write!(f, "reproduction outside tolerance: {s}"),
        }
    }
}

pub(crate) fn usage(e: impl Into<anyhow::Error>) -> Failure {
    Failure::Usage(e.into())
}

pub(crate) fn compute(e: impl Into<anyhow::Error>) -> Failure {
    Failure::Compute(e.into())
}

/// Parse argv and run; results go to `out`, diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            if code == EXIT_OK {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return code;
        }
    };
    match dispatch(&cli, out) {
        Ok(()) => EXIT_OK,
        Err(f) => {
            let _ = writeln!(err, "{f}");
            f.code()
        }
    }
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Result<(), Failure> {
    let json = cli.json;
    match &cli.command {
        Command::Spectrum(a) => commands::spectrum(a, json || a.out == "json", out),
        Command::Wavefunction(a) => commands::wavefunction(a, json, out),
        Command::Tunnel(a) => commands::tunnel(a, json, out),
        Command::ColdEmission(a) => commands::cold_emission(a, json, out),
        Command::Alpha(a) => commands::alpha(a, json, out),
        Command::Scatter(a) => commands::scatter(a, json, out),
        Command::Fit(a) => commands::fit(a, json, out),
        Command::ReproduceTable(a) => commands::reproduce_table(a, json, out),
        Command::DumpConstants => {
            writeln!(out, "{}", quantarea_core::units::constants_json()).map_err(compute)?;
            Ok(())
        }
    }
}
