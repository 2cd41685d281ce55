//! Units, physical constants, quantization numbers and the numeric kernels
//! shared by the rest of the quantarea workspace.

pub mod numeric;
pub mod quantization;
pub mod units;

pub use quantization::QuantizationMode;
pub use units::{ScaleConstants, UnitSystem};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CoreError {
    #[error("domain error: {0}")]
    Domain(String),
}

/// Errors raised by the numeric kernels.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum NumericError {
    #[error("no sign change on [{lo}, {hi}] (f(lo) = {flo}, f(hi) = {fhi})")]
    NoSignChange { lo: f64, hi: f64, flo: f64, fhi: f64 },
    #[error("root search did not converge after {iterations} iterations (bracket [{lo}, {hi}])")]
    NoConvergence { iterations: usize, lo: f64, hi: f64 },
    #[error("quadrature depth exceeded on [{a}, {b}], worst subinterval [{worst_a}, {worst_b}]")]
    QuadratureDepth { a: f64, b: f64, worst_a: f64, worst_b: f64 },
    #[error("non-finite integrand or function value at x = {0}")]
    NonFinite(f64),
}
