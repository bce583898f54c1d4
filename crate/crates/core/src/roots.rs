//! Scalar root refinement on sign-change brackets.

use crate::error::{Error, Result};

/// Bisection on `[lo, hi]` until the bracket is narrower than `tol`.
pub fn bisect<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, tol: f64) -> Result<f64> {
    let (mut lo, mut hi) = (lo, hi);
    let mut flo = f(lo);
    let fhi = f(hi);
    if flo == 0.0 {
        return Ok(lo);
    }
    if fhi == 0.0 {
        return Ok(hi);
    }
    if flo.signum() == fhi.signum() {
        return Err(Error::Interlacing { lo, hi });
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if hi - lo <= tol || mid <= lo || mid >= hi {
            return Ok(mid);
        }
        let fm = f(mid);
        if fm == 0.0 {
            return Ok(mid);
        }
        if fm.signum() == flo.signum() {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Newton iteration kept inside a sign-change bracket; falls back to a
/// bisection step whenever the Newton update leaves the bracket.
///
/// `f` returns `(value, derivative)`.
pub fn newton_bisect<F: Fn(f64) -> (f64, f64)>(
    f: F,
    lo: f64,
    hi: f64,
    x0: f64,
    tol: f64,
) -> Result<f64> {
    let (mut lo, mut hi) = (lo, hi);
    let flo = f(lo).0;
    let fhi = f(hi).0;
    if flo == 0.0 {
        return Ok(lo);
    }
    if fhi == 0.0 {
        return Ok(hi);
    }
    if flo.signum() == fhi.signum() {
        return Err(Error::Interlacing { lo, hi });
    }
    let lo_sign = flo.signum();
    let mut x = x0.clamp(lo, hi);
    for _ in 0..200 {
        let (fx, dfx) = f(x);
        if fx == 0.0 {
            return Ok(x);
        }
        if fx.signum() == lo_sign {
            lo = x;
        } else {
            hi = x;
        }
        let newton = x - fx / dfx;
        let next = if dfx != 0.0 && newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
        if (next - x).abs() <= tol || hi - lo <= tol {
            return Ok(next);
        }
        x = next;
    }
    Err(Error::Numerical(format!(
        "newton iteration did not settle in [{lo}, {hi}]"
    )))
}

/// Sign changes of `f` across the sample points `xs`, returned as brackets.
pub fn sign_change_brackets<F: Fn(f64) -> f64>(f: F, xs: &[f64]) -> Vec<(f64, f64)> {
    let vals: Vec<f64> = xs.iter().map(|&x| f(x)).collect();
    let mut out = Vec::new();
    for i in 0..xs.len().saturating_sub(1) {
        let (a, b) = (vals[i], vals[i + 1]);
        if a == 0.0 {
            // exact hit on a sample point: bracket it once
            if i == 0 || vals[i - 1] != 0.0 {
                out.push((xs[i], xs[i]));
            }
        } else if b != 0.0 && a.signum() != b.signum() {
            out.push((xs[i], xs[i + 1]));
        }
    }
    if let (Some(&last), Some(&xl)) = (vals.last(), xs.last()) {
        if last == 0.0 && (vals.len() < 2 || vals[vals.len() - 2] != 0.0) {
            out.push((xl, xl));
        }
    }
    out
}
