//! Verification machinery kept deliberately separate from the production
//! solvers: nothing here depends on another quantarea crate.

pub mod baseline;

pub use baseline::{baseline_energy, BaselineEnergy, BaselineQuery, BaselineSource};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OracleError {
    #[error("function is not finite at x = {0}")]
    NonFinite(f64),
    #[error("bad scan arguments: lo = {lo}, hi = {hi}, step = {step}")]
    BadScan { lo: f64, hi: f64, step: f64 },
    #[error("quadrature recursion depth exceeded; worst subinterval [{0}, {1}]")]
    Depth(f64, f64),
    #[error("no fixed point bracket found within {0} geometric expansions")]
    NoBracket(usize),
    #[error("unsupported baseline query: {0}")]
    Unsupported(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct RootScanReport {
    pub roots: Vec<f64>,
    pub brackets: Vec<(f64, f64)>,
    pub evaluations: usize,
}

/// Step through [lo, hi]; every sign change is bisected down to
/// 1e-12·max(1, |r|).
pub fn root_scan<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, step: f64) -> Result<RootScanReport, OracleError> {
    if !(lo < hi) || !(step > 0.0) {
        return Err(OracleError::BadScan { lo, hi, step });
    }
    let mut evaluations = 0;
    let mut call = |x: f64| -> Result<f64, OracleError> {
        evaluations += 1;
        let y = f(x);
        if y.is_finite() { Ok(y) } else { Err(OracleError::NonFinite(x)) }
    };
    let n = ((hi - lo) / step).ceil() as usize;
    let mut roots = Vec::new();
    let mut brackets = Vec::new();
    let mut x0 = lo;
    let mut f0 = call(x0)?;
    for i in 1..=n {
        let x1 = if i == n { hi } else { lo + step * i as f64 };
        let f1 = call(x1)?;
        if f0 == 0.0 {
            roots.push(x0);
            brackets.push((x0, x0));
        } else if f1 != 0.0 && (f0 < 0.0) != (f1 < 0.0) {
            let (mut a, mut b, mut fa) = (x0, x1, f0);
            while (b - a) > 1e-12 * a.abs().max(b.abs()).max(1.0) {
                let m = 0.5 * (a + b);
                let fm = call(m)?;
                if fm == 0.0 {
                    a = m;
                    b = m;
                    break;
                }
                if (fm < 0.0) == (fa < 0.0) {
                    a = m;
                    fa = fm;
                } else {
                    b = m;
                }
            }
            roots.push(0.5 * (a + b));
            brackets.push((x0, x1));
        }
        if i == n && f1 == 0.0 {
            roots.push(x1);
            brackets.push((x1, x1));
        }
        x0 = x1;
        f0 = f1;
    }
    Ok(RootScanReport { roots, brackets, evaluations })
}

fn simpson_rec<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> Result<f64, OracleError> {
    let m = 0.5 * (a + b);
    let l = 0.5 * (a + m);
    let r = 0.5 * (m + b);
    let fl = f(l);
    let fr = f(r);
    if !fl.is_finite() {
        return Err(OracleError::NonFinite(l));
    }
    if !fr.is_finite() {
        return Err(OracleError::NonFinite(r));
    }
    let left = (m - a) / 6.0 * (fa + 4.0 * fl + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * fr + fb);
    let diff = left + right - whole;
    if depth > 3 && diff.abs() <= 15.0 * tol {
        return Ok(left + right + diff / 15.0);
    }
    if depth >= 60 {
        return Err(OracleError::Depth(a, b));
    }
    Ok(simpson_rec(f, a, m, fa, fl, fm, left, 0.5 * tol, depth + 1)?
        + simpson_rec(f, m, b, fm, fr, fb, right, 0.5 * tol, depth + 1)?)
}

/// Recursive adaptive Simpson, absolute tolerance.
pub fn adaptive_quadrature<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> Result<f64, OracleError> {
    if a == b {
        return Ok(0.0);
    }
    let fa = f(a);
    let fb = f(b);
    let m = 0.5 * (a + b);
    let fm = f(m);
    for (x, y) in [(a, fa), (b, fb), (m, fm)] {
        if !y.is_finite() {
            return Err(OracleError::NonFinite(x));
        }
    }
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    simpson_rec(&f, a, b, fa, fm, fb, whole, tol, 0)
}

/// Same quadrature after x = a + (b−a)·u²(3−2u), whose Jacobian vanishes at
/// both ends; suited to √ endpoint behaviour at turning points.
pub fn adaptive_quadrature_endpoints<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> Result<f64, OracleError> {
    let w = b - a;
    adaptive_quadrature(
        |u: f64| {
            let jac = 6.0 * u * (1.0 - u) * w;
            if jac == 0.0 {
                return 0.0;
            }
            f(a + w * u * u * (3.0 - 2.0 * u)) * jac
        },
        0.0,
        1.0,
        tol,
    )
}

/// Smallest positive root of d2(y) − y. `d2` may return NaN where it is
/// undefined (no turning points); such points are skipped.
pub fn fixed_point_bisect<F: Fn(f64) -> f64>(d2: F, seed: f64) -> Result<f64, OracleError> {
    const EXPANSIONS: usize = 60;
    let g = |y: f64| d2(y) - y;
    let seed = if seed > 0.0 && seed.is_finite() { seed } else { 1.0 };
    // Walk a ratio-1.05 ladder from far below the seed upward and stop at the
    // first defined sign change from + to −.
    let lo = seed * 2f64.powi(-(EXPANSIONS as i32) / 2);
    let ratio: f64 = 1.05;
    let steps = ((EXPANSIONS as f64) * 2f64.ln() / ratio.ln()).ceil() as usize;
    let mut prev: Option<(f64, f64)> = None;
    let mut y = lo;
    for _ in 0..=steps {
        let gy = g(y);
        if gy.is_finite() {
            if gy == 0.0 {
                return Ok(y);
            }
            if let Some((py, pg)) = prev {
                if (pg > 0.0) != (gy > 0.0) {
                    let (mut a, mut b, mut ga) = (py, y, pg);
                    while (b - a) > 1e-13 * b {
                        let m = 0.5 * (a + b);
                        let gm = g(m);
                        if !gm.is_finite() {
                            return Err(OracleError::NonFinite(m));
                        }
                        if (gm > 0.0) == (ga > 0.0) {
                            a = m;
                            ga = gm;
                        } else {
                            b = m;
                        }
                    }
                    return Ok(0.5 * (a + b));
                }
            }
            prev = Some((y, gy));
        } else {
            prev = None;
        }
        y *= ratio;
    }
    Err(OracleError::NoBracket(EXPANSIONS))
}
