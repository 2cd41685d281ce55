use quantarea_core::{
    numeric::integrate,
    units::{field_v_per_cm_to_ev_per_nm, ELECTRON_MC2_MEV, HBAR_C},
};

use crate::{BarrierResult, BranchValue, TunnelError};

/// Electron rest energy in eV.
pub const ELECTRON_MC2_EV: f64 = ELECTRON_MC2_MEV * 1e6;
/// ħc in eV·nm (numerically the same as MeV·fm).
pub const HBAR_C_EV_NM: f64 = HBAR_C;

fn m1() -> f64 {
    (2.0 * ELECTRON_MC2_EV).sqrt() / HBAR_C_EV_NM
}

/// Electron at −W below vacuum under the field potential −eεx. The barrier
/// runs from the surface to d = W/(eε); K = m₁√(−W) and P = m₁∫√(−eεx) are
/// both imaginary, so T = 2/(cos 2x + cosh(4x/3)) with x = m₁W^{3/2}/(eε),
/// and g = 2x/3.
pub fn cold_emission(work_function_ev: f64, field_v_per_cm: f64) -> Result<BarrierResult, TunnelError> {
    if !(work_function_ev > 0.0 && work_function_ev.is_finite()) {
        return Err(TunnelError::Domain(format!("work function must be positive, got {work_function_ev}")));
    }
    if !(field_v_per_cm > 0.0 && field_v_per_cm.is_finite()) {
        return Err(TunnelError::Domain(format!("field must be positive, got {field_v_per_cm}")));
    }
    let ee = field_v_per_cm_to_ev_per_nm(field_v_per_cm);
    let d = work_function_ev / ee;
    let x = m1() * work_function_ev.powf(1.5) / ee;
    let k = BranchValue::imaginary(m1() * work_function_ev.sqrt());
    let p = BranchValue::imaginary(2.0 * x / 3.0);
    BarrierResult::new(k, d, p, 2.0 * x / 3.0, 0.0, d)
}

/// g = m₁∫₀^d √(W − eεx) dx by quadrature, to check the closed form.
pub fn cold_emission_quadrature_exponent(work_function_ev: f64, field_v_per_cm: f64) -> Result<f64, TunnelError> {
    let ee = field_v_per_cm_to_ev_per_nm(field_v_per_cm);
    let d = work_function_ev / ee;
    let v = integrate(|x| (work_function_ev - ee * x).max(0.0).sqrt(), 0.0, d, 1e-13 * d * work_function_ev.sqrt())?;
    Ok(m1() * v)
}
