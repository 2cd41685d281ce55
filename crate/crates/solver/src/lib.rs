//! Bound states from the fixed point y = d²(y), where d is the distance
//! between the turning points at |E| = M_h q²/y.

mod analytic;
mod dirac;
mod saxon;

pub use analytic::{analytic_energy, has_closed_form};
pub use dirac::{dirac_bound_energy, DiracBranch, DiracEnergies, DiracProblem};
pub use saxon::{saxon_woods_level, SAXON_WOODS_STEP};

use quantarea_core::{
    numeric::{brent, integrate, scan_brackets},
    CoreError, NumericError, QuantizationMode,
};
use quantarea_potentials::{Potential, PotentialError, TurningPair};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SolverError {
    #[error(transparent)]
    Potential(#[from] PotentialError),
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error("no positive fixed point of d²(y) = y found on y in [{lo}, {hi}]")]
    NoFixedPoint { lo: f64, hi: f64 },
    #[error(transparent)]
    Numeric(#[from] NumericError),
    #[error("{0} has no closed-form energy")]
    Unsupported(&'static str),
    #[error("no bound state: {0}")]
    NoBoundState(String),
    #[error("every mode failed: {}", .0.iter().map(|(m, e)| format!("{m}: {e}")).collect::<Vec<_>>().join("; "))]
    AllFailed(Vec<(QuantizationMode, SolverError)>),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundState {
    pub mode: QuantizationMode,
    pub q: f64,
    pub d: f64,
    pub x0: f64,
    pub turning: TurningPair,
    /// Signed by the family's convention (see `Potential::energy_sign`).
    pub energy: f64,
    pub abs_energy: f64,
    pub k: f64,
    pub norm: f64,
    pub mh: f64,
    /// |d² − y*|/y* at the returned fixed point.
    pub residual: f64,
}

impl BoundState {
    pub(crate) fn build(p: &Potential, mode: QuantizationMode, q: f64, turning: TurningPair, y: f64) -> Self {
        let s = p.scale();
        let d = turning.d;
        let abs_energy = s.mh * q * q / (d * d);
        BoundState {
            mode,
            q,
            d,
            x0: turning.x0,
            turning,
            energy: p.energy_sign() * abs_energy,
            abs_energy,
            k: s.m1 * abs_energy.sqrt(),
            norm: (2.0 / d).sqrt(),
            mh: s.mh,
            residual: (d * d - y).abs() / y,
        }
    }
}

/// The three quantized potential areas of a solved level.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AreaQuanta {
    pub sp: f64,
    pub sk: f64,
    pub se: f64,
}

pub fn potential_areas(b: &BoundState) -> AreaQuanta {
    let sp = 2.0 * b.mh * b.q / b.d;
    let sk = if b.q == 2.0 { 0.0 } else { b.mh * (b.q / b.d) * (b.q - 2.0) };
    AreaQuanta { sp, sk, se: b.mh * b.q * b.q / b.d }
}

/// ∫U dx between the turning points of a level, by quadrature.
pub fn integrate_potential(p: &Potential, b: &BoundState) -> Result<f64, SolverError> {
    let (x1, x2) = (b.turning.x1, b.turning.x2);
    Ok(integrate(|x| p.evaluate(x).unwrap_or(f64::NAN), x1, x2, 1e-12)?)
}

/// d²(y) for one q; NaN where no turning points exist.
pub fn width_squared(p: &Potential, q: f64, y: f64) -> f64 {
    let e = p.scale().mh * q * q / y;
    match p.turning_points(e) {
        Ok(t) => t.d * t.d,
        Err(_) => f64::NAN,
    }
}

fn seed_y(p: &Potential, mode: QuantizationMode, q: f64) -> f64 {
    let mh = p.scale().mh;
    if let Ok(e) = analytic_energy(p, mode) {
        if e != 0.0 {
            return mh * q * q / e.abs();
        }
    }
    let (lo, hi) = p.domain();
    if lo.is_finite() && hi.is_finite() {
        return (hi - lo) * (hi - lo);
    }
    match p.well_minimum() {
        Some((_, u)) if u != 0.0 => mh * q * q / u.abs(),
        _ => 1.0,
    }
}

const GRID: usize = 400;
const MAX_EXPANSIONS: usize = 8;

/// Solve y = d²(y) for the mode's q and build the level.
pub fn solve_bound_state(p: &Potential, mode: QuantizationMode) -> Result<BoundState, SolverError> {
    let q = mode.q()?;
    let seed = seed_y(p, mode, q);
    let g = |y: f64| width_squared(p, q, y) - y;
    let mut span = 8.0f64;
    let mut last = (seed, seed);
    for _ in 0..MAX_EXPANSIONS {
        let lo = seed * 2f64.powf(-span);
        let hi = seed * 2f64.powf(span);
        last = (lo, hi);
        // log-spaced scan so the smallest root is found first
        let brackets = scan_brackets(|t| g(t.exp()), lo.ln(), hi.ln(), GRID);
        if let Some(&(a, b)) = brackets.first() {
            let (a, b) = (a.exp(), b.exp());
            let y = brent(g, a, b, 1e-13 * b)?;
            let t = p.turning_points(p.scale().mh * q * q / y)?;
            return Ok(BoundState::build(p, mode, q, t, y));
        }
        span *= 2.0;
        if span > 60.0 {
            break;
        }
    }
    // distinguish "never any turning points" from "no crossing"
    let any = (0..=GRID).any(|i| {
        let y = last.0 * (last.1 / last.0).powf(i as f64 / GRID as f64);
        width_squared(p, q, y).is_finite()
    });
    if !any {
        let e = p.scale().mh * q * q / seed;
        p.turning_points(e)?;
    }
    Err(SolverError::NoFixedPoint { lo: last.0, hi: last.1 })
}

#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub states: Vec<BoundState>,
    pub failures: Vec<(QuantizationMode, SolverError)>,
}

/// Solve every mode in parallel; the output order depends only on the
/// energies, not on the input order.
pub fn spectrum(p: &Potential, modes: &[QuantizationMode]) -> Result<Spectrum, SolverError> {
    if modes.is_empty() {
        return Err(SolverError::NoBoundState("no modes requested".into()));
    }
    let results: Vec<(QuantizationMode, Result<BoundState, SolverError>)> =
        modes.par_iter().map(|&m| (m, solve_bound_state(p, m))).collect();
    let mut states = Vec::new();
    let mut failures = Vec::new();
    for (m, r) in results {
        match r {
            Ok(s) => states.push(s),
            Err(e) => failures.push((m, e)),
        }
    }
    states.sort_by(|a, b| a.energy.total_cmp(&b.energy).then(a.q.total_cmp(&b.q)).then(a.mode.tag().cmp(&b.mode.tag())));
    failures.sort_by(|a, b| a.0.tag().cmp(&b.0.tag()));
    if states.is_empty() {
        return Err(SolverError::AllFailed(failures));
    }
    Ok(Spectrum { states, failures })
}
