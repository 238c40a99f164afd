//! Bracketing root finders.
//!
//! Everything here is plain bisection: slow but guaranteed, which is what we
//! want between the poles of a Stark shift or along a determinant that is
//! only known to change sign.

use crate::error::{Error, Result};

const MAX_ITERATIONS: usize = 400;

/// Bisect `f` on `[lo, hi]` until the bracket is narrower than `tol`.
///
/// Returns the midpoint of the final bracket. `f(lo)` and `f(hi)` must
/// have opposite signs (an exact zero at an endpoint is returned as is).
pub fn bisect<F>(mut f: F, lo: f64, hi: f64, tol: f64) -> Result<f64>
where
    F: FnMut(f64) -> f64,
{
    bisect_until(&mut f, lo, hi, |a, b| (b - a).abs() <= tol)
}

/// Bisection with a caller-supplied stopping rule on the bracket.
pub fn bisect_until<F, S>(mut f: F, lo: f64, hi: f64, mut done: S) -> Result<f64>
where
    F: FnMut(f64) -> f64,
    S: FnMut(f64, f64) -> bool,
{
    let (mut a, mut b) = if lo <= hi { (lo, hi) } else { (hi, lo) };
    let mut fa = f(a);
    let fb = f(b);
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if !(fa.signum() != fb.signum()) || fa.is_nan() || fb.is_nan() {
        return Err(Error::NoSignChange { lo: a, hi: b, f_lo: fa, f_hi: fb });
    }
    for _ in 0..MAX_ITERATIONS {
        if done(a, b) {
            return Ok(0.5 * (a + b));
        }
        let m = 0.5 * (a + b);
        if m <= a || m >= b {
            // bracket exhausted at machine precision
            return Ok(m);
        }
        let fm = f(m);
        if fm == 0.0 {
            return Ok(m);
        }
        if fm.signum() == fa.signum() {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    Err(Error::NoConvergence { lo: a, hi: b, iterations: MAX_ITERATIONS })
}

/// Indices `i` such that `values[i]` and `values[i + 1]` differ in sign.
pub fn sign_changes(values: &[f64]) -> Vec<usize> {
    values
        .windows(2)
        .enumerate()
        .filter(|(_, w)| w[0] != 0.0 && w[0].signum() != w[1].signum() && !w[1].is_nan())
        .map(|(i, _)| i)
        .collect()
}

/// `n` points from `lo` to `hi` inclusive.
pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![lo],
        _ => (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect(),
    }
}
