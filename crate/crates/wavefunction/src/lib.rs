//! Phase integral G(x) = m₁∫√|U| dx and the normalized level wave functions
//! √(2/d)·{cos, sin}(K(x−x0))·e^{iG}.

mod area;

pub use area::{area_function, AreaFunction, AreaKind};

use num_complex::Complex64;
use quantarea_core::{numeric::integrate, NumericError, QuantizationMode};
use quantarea_potentials::{Potential, PotentialError};
use quantarea_solver::BoundState;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum WaveError {
    #[error("x = {x} is outside the bound interval [{lo}, {hi}]")]
    Domain { x: f64, lo: f64, hi: f64 },
    #[error("radial amplitude needs r > 0, got {0}")]
    Origin(f64),
    #[error("phase integral is not finite at x = {0}")]
    NonFinitePhase(f64),
    #[error(transparent)]
    Numeric(#[from] NumericError),
    #[error(transparent)]
    Potential(#[from] PotentialError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    /// cos branch
    Symmetric,
    /// sin branch
    Antisymmetric,
}

impl Parity {
    /// cos for the ground state and odd half-wave counts, sin for even ones.
    pub fn for_mode(mode: QuantizationMode) -> Parity {
        match mode.half_waves() {
            Some(n) if n % 2 == 0 => Parity::Antisymmetric,
            _ => Parity::Symmetric,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Parity::Symmetric => "symmetric",
            Parity::Antisymmetric => "antisymmetric",
        }
    }

    fn envelope(self, phase: f64) -> f64 {
        match self {
            Parity::Symmetric => phase.cos(),
            Parity::Antisymmetric => phase.sin(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaveSample {
    pub x: f64,
    pub value: Complex64,
    pub phase: f64,
    pub parity: Parity,
}

/// Where G is pinned to zero: the centre for 1D wells, the inner turning
/// point for radial ones.
pub fn anchor(p: &Potential, b: &BoundState) -> f64 {
    if p.is_radial() {
        b.turning.x1
    } else {
        b.x0
    }
}

fn check_inside(b: &BoundState, x: f64) -> Result<(), WaveError> {
    let (lo, hi) = (b.turning.x1, b.turning.x2);
    let slack = 1e-12 * b.d;
    if !(x >= lo - slack && x <= hi + slack) {
        return Err(WaveError::Domain { x, lo, hi });
    }
    Ok(())
}

pub fn sample(b: &BoundState, g: &AreaFunction, x: f64, parity: Parity) -> Result<WaveSample, WaveError> {
    check_inside(b, x)?;
    let phase = g.anchored(x, g.anchor())?;
    let amp = b.norm * parity.envelope(b.k * (x - b.x0));
    Ok(WaveSample { x, value: Complex64::from_polar(1.0, phase) * amp, phase, parity })
}

pub fn psi(b: &BoundState, g: &AreaFunction, x: f64, parity: Parity) -> Result<Complex64, WaveError> {
    Ok(sample(b, g, x, parity)?.value)
}

/// |∫|ψ|² dx − 1| over the turning-point interval.
pub fn normalization_residual(b: &BoundState, g: &AreaFunction, parity: Parity) -> Result<f64, WaveError> {
    let total = integrate(
        |x| psi(b, g, x.clamp(b.turning.x1, b.turning.x2), parity).map(|v| v.norm_sqr()).unwrap_or(f64::NAN),
        b.turning.x1,
        b.turning.x2,
        1e-12,
    )?;
    Ok((total - 1.0).abs())
}

/// The radial amplitude F(r)/r; the angular factor travels as a label.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialAmplitude {
    pub r: f64,
    pub value: Complex64,
    pub angular: String,
}

pub fn radial_psi(
    b: &BoundState,
    g: &AreaFunction,
    r: f64,
    parity: Parity,
    angular: &str,
) -> Result<RadialAmplitude, WaveError> {
    if !(r > 0.0) {
        return Err(WaveError::Origin(r));
    }
    let v = psi(b, g, r, parity)?;
    Ok(RadialAmplitude { r, value: v / r, angular: angular.to_string() })
}

/// `n` evenly spaced samples from x1 to x2 inclusive.
pub fn sample_grid(b: &BoundState, g: &AreaFunction, parity: Parity, n: usize) -> Result<Vec<WaveSample>, WaveError> {
    let n = n.max(2);
    (0..n)
        .map(|i| {
            let x = b.turning.x1 + b.d * i as f64 / (n - 1) as f64;
            sample(b, g, x.min(b.turning.x2), parity)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use quantarea_potentials::Family;
    use quantarea_solver::solve_bound_state;

    fn box_state(mode: QuantizationMode) -> (Potential, BoundState) {
        let p = Potential::natural(Family::Box { width: 1.0 });
        let b = solve_bound_state(&p, mode).unwrap();
        (p, b)
    }

    #[test]
    fn box_centre_is_real() {
        let (p, b) = box_state(QuantizationMode::General(1));
        let g = AreaFunction::for_state(&p, &b);
        let v = psi(&b, &g, 0.5, Parity::Symmetric).unwrap();
        assert!((v.re - 2f64.sqrt()).abs() < 1e-14);
        assert_eq!(v.im, 0.0);
    }

    #[test]
    fn box_antisymmetric_node_at_centre() {
        let (p, b) = box_state(QuantizationMode::Antisymmetric(1));
        let g = AreaFunction::for_state(&p, &b);
        assert!(psi(&b, &g, 0.5, Parity::Antisymmetric).unwrap().norm() < 1e-14);
    }

    #[test]
    fn outside_interval_is_error() {
        let (p, b) = box_state(QuantizationMode::General(1));
        let g = AreaFunction::for_state(&p, &b);
        assert!(matches!(psi(&b, &g, 1.5, Parity::Symmetric), Err(WaveError::Domain { .. })));
        assert!(matches!(radial_psi(&b, &g, 0.0, Parity::Symmetric, "Y00"), Err(WaveError::Origin(_))));
    }

    #[test]
    fn box_normalization() {
        let (p, b) = box_state(QuantizationMode::General(1));
        let g = AreaFunction::for_state(&p, &b);
        assert!(normalization_residual(&b, &g, Parity::Symmetric).unwrap() < 1e-10);
    }

    #[test]
    fn parity_rule() {
        assert_eq!(Parity::for_mode(QuantizationMode::Ground), Parity::Symmetric);
        assert_eq!(Parity::for_mode(QuantizationMode::General(2)), Parity::Antisymmetric);
        assert_eq!(Parity::for_mode(QuantizationMode::Symmetric(2)), Parity::Symmetric);
        assert_eq!(Parity::for_mode(QuantizationMode::Antisymmetric(1)), Parity::Antisymmetric);
    }
}
