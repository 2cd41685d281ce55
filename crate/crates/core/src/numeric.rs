//! Bracketed root finding and adaptive quadrature used by the production
//! code paths. The oracle crate carries its own independent versions.

use crate::NumericError;

pub const DEFAULT_MAX_ITER: usize = 200;

/// Bisection refined by secant / inverse quadratic steps (Brent).
/// Terminates when the bracket is narrower than `xtol`.
pub fn brent<F: FnMut(f64) -> f64>(
    mut f: F,
    lo: f64,
    hi: f64,
    xtol: f64,
) -> Result<f64, NumericError> {
    let (mut a, mut b) = (lo, hi);
    let mut fa = f(a);
    let mut fb = f(b);
    if !fa.is_finite() {
        return Err(NumericError::NonFinite(a));
    }
    if !fb.is_finite() {
        return Err(NumericError::NonFinite(b));
    }
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() {
        return Err(NumericError::NoSignChange { lo, hi, flo: fa, fhi: fb });
    }
    let mut c = a;
    let mut fc = fa;
    let mut d = b - a;
    let mut e = d;
    for _ in 0..DEFAULT_MAX_ITER {
        if fb.signum() == fc.signum() {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol = 2.0 * f64::EPSILON * b.abs() + 0.5 * xtol;
        let m = 0.5 * (c - b);
        if m.abs() <= tol || fb == 0.0 {
            return Ok(b);
        }
        if e.abs() >= tol && fa.abs() > fb.abs() {
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = 2.0 * m * s;
                q = 1.0 - s;
            } else {
                let qq = fa / fc;
                let r = fb / fc;
                p = s * (2.0 * m * qq * (qq - r) - (b - a) * (r - 1.0));
                q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            } else {
                p = -p;
            }
            if 2.0 * p < (3.0 * m * q - (tol * q).abs()).min((e * q).abs()) {
                e = d;
                d = p / q;
            } else {
                d = m;
                e = m;
            }
        } else {
            d = m;
            e = m;
        }
        a = b;
        fa = fb;
        b += if d.abs() > tol { d } else { tol.copysign(m) };
        fb = f(b);
        if !fb.is_finite() {
            return Err(NumericError::NonFinite(b));
        }
    }
    Err(NumericError::NoConvergence { iterations: DEFAULT_MAX_ITER, lo, hi })
}

/// Sample `f` on `n` equal steps of [lo, hi] and return every bracket where
/// the sign changes. Non-finite samples break the chain instead of failing.
pub fn scan_brackets<F: FnMut(f64) -> f64>(mut f: F, lo: f64, hi: f64, n: usize) -> Vec<(f64, f64)> {
    let n = n.max(1);
    let h = (hi - lo) / n as f64;
    let mut out = Vec::new();
    let mut prev: Option<(f64, f64)> = None;
    for i in 0..=n {
        let x = if i == n { hi } else { lo + h * i as f64 };
        let fx = f(x);
        if !fx.is_finite() {
            prev = None;
            continue;
        }
        if let Some((px, pf)) = prev {
            if pf == 0.0 {
                // already reported as the end of the previous bracket
            } else if fx == 0.0 || pf.signum() != fx.signum() {
                out.push((px, x));
            }
        }
        prev = Some((x, fx));
    }
    out
}

/// All roots of `f` on [lo, hi] found by scanning with `n` steps and refining.
pub fn scan_roots<F: FnMut(f64) -> f64>(mut f: F, lo: f64, hi: f64, n: usize, xtol: f64) -> Vec<f64> {
    let brackets = scan_brackets(&mut f, lo, hi, n);
    let mut roots = Vec::with_capacity(brackets.len());
    for (a, b) in brackets {
        if let Ok(r) = brent(&mut f, a, b, xtol) {
            roots.push(r);
        }
    }
    roots
}

fn simpson(fa: f64, fm: f64, fb: f64, h: f64) -> f64 {
    h / 6.0 * (fa + 4.0 * fm + fb)
}

/// Adaptive Simpson with Richardson correction; absolute tolerance `tol`.
pub fn adaptive_simpson<F: FnMut(f64) -> f64>(
    mut f: F,
    a: f64,
    b: f64,
    tol: f64,
) -> Result<f64, NumericError> {
    const MAX_DEPTH: u32 = 50;
    const MIN_DEPTH: u32 = 4;
    if a == b {
        return Ok(0.0);
    }
    let eval = |f: &mut F, x: f64| -> Result<f64, NumericError> {
        let y = f(x);
        if y.is_finite() { Ok(y) } else { Err(NumericError::NonFinite(x)) }
    };
    let fa = eval(&mut f, a)?;
    let fb = eval(&mut f, b)?;
    let m = 0.5 * (a + b);
    let fm = eval(&mut f, m)?;
    let whole = simpson(fa, fm, fb, b - a);
    // (a, b, fa, fm, fb, whole, tol, depth)
    let mut stack = vec![(a, b, fa, fm, fb, whole, tol, 0u32)];
    let mut total = 0.0;
    let mut compensation = 0.0;
    while let Some((a0, b0, fa0, fm0, fb0, s, t, depth)) = stack.pop() {
        let m0 = 0.5 * (a0 + b0);
        let lm = 0.5 * (a0 + m0);
        let rm = 0.5 * (m0 + b0);
        let flm = eval(&mut f, lm)?;
        let frm = eval(&mut f, rm)?;
        let left = simpson(fa0, flm, fm0, m0 - a0);
        let right = simpson(fm0, frm, fb0, b0 - m0);
        let delta = left + right - s;
        if depth >= MIN_DEPTH && delta.abs() <= 15.0 * t {
            let piece = left + right + delta / 15.0;
            // Kahan summation keeps many small accepted pieces accurate.
            let y = piece - compensation;
            let sum = total + y;
            compensation = (sum - total) - y;
            total = sum;
        } else if depth >= MAX_DEPTH {
            return Err(NumericError::QuadratureDepth { a, b, worst_a: a0, worst_b: b0 });
        } else {
            stack.push((m0, b0, fm0, frm, fb0, right, 0.5 * t, depth + 1));
            stack.push((a0, m0, fa0, flm, fm0, left, 0.5 * t, depth + 1));
        }
    }
    Ok(total)
}

/// ∫ₐᵇ f with the substitution x = a + (b−a)(1−cos θ)/2, which removes
/// square-root behaviour at both endpoints (turning points), followed by
/// adaptive Simpson in θ.
pub fn integrate<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64, tol: f64) -> Result<f64, NumericError> {
    if a == b {
        return Ok(0.0);
    }
    let half = 0.5 * (b - a);
    adaptive_simpson(
        |t: f64| {
            let x = a + half * (1.0 - t.cos());
            let x = x.clamp(a.min(b), a.max(b));
            let w = half * t.sin();
            if w == 0.0 { 0.0 } else { f(x) * w }
        },
        0.0,
        std::f64::consts::PI,
        tol,
    )
}

/// Central finite difference.
pub fn derivative<F: Fn(f64) -> f64>(f: F, x: f64, h: f64) -> f64 {
    (f(x + h) - f(x - h)) / (2.0 * h)
}
