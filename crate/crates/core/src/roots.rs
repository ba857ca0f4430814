//! Safeguarded Newton iteration on a bracketing interval.

use crate::math::abs;
use crate::{Error, Result};

/// Stopping rules for [`newton_bisect`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootOptions {
    /// Relative step tolerance.
    pub rel_tol: f64,
    /// Absolute step tolerance.
    pub abs_tol: f64,
    /// Iteration cap.
    pub max_iter: usize,
}

impl Default for RootOptions {
    fn default() -> Self {
        Self {
            rel_tol: 4.0 * f64::EPSILON,
            abs_tol: 1e-300,
            max_iter: 200,
        }
    }
}

/// Finds a root of `f` inside `[lo, hi]`.
///
/// `f` returns the value and the derivative. The endpoints must straddle a
/// sign change. Newton steps that leave the current bracket, or that do not
/// shrink it fast enough, are replaced by bisection, so the iteration always
/// converges.
pub fn newton_bisect<F>(
    mut f: F,
    lo: f64,
    hi: f64,
    guess: Option<f64>,
    opts: &RootOptions,
) -> Result<f64>
where
    F: FnMut(f64) -> (f64, f64),
{
    let (mut lo, mut hi) = if lo <= hi { (lo, hi) } else { (hi, lo) };
    let f_lo = f(lo).0;
    let f_hi = f(hi).0;
    if f_lo == 0.0 {
        return Ok(lo);
    }
    if f_hi == 0.0 {
        return Ok(hi);
    }
    if !(f_lo.is_finite() && f_hi.is_finite()) || (f_lo > 0.0) == (f_hi > 0.0) {
        return Err(Error::NoBracket("newton_bisect"));
    }
    // orient so that f(neg) < 0 < f(pos)
    let (mut neg, mut pos) = if f_lo < 0.0 { (lo, hi) } else { (hi, lo) };

    let mut x = match guess {
        Some(g) if g > lo && g < hi => g,
        _ => 0.5 * (lo + hi),
    };
    let mut step_old = hi - lo;
    let mut step = step_old;
    let (mut fx, mut dfx) = f(x);
    for _ in 0..opts.max_iter {
        if fx == 0.0 {
            return Ok(x);
        }
        if fx < 0.0 {
            neg = x;
        } else {
            pos = x;
        }
        lo = neg.min(pos);
        hi = neg.max(pos);

        let newton = x - fx / dfx;
        let newton_ok = newton.is_finite() && newton > lo && newton < hi;
        if !newton_ok || abs(2.0 * fx) > abs(step_old * dfx) {
            step_old = step;
            step = 0.5 * (hi - lo);
            x = lo + step;
        } else {
            step_old = step;
            step = x - newton;
            x = newton;
        }
        let tol = opts.rel_tol * abs(x) + opts.abs_tol;
        if abs(step) <= tol || hi - lo <= tol {
            return Ok(x);
        }
        (fx, dfx) = f(x);
    }
    Err(Error::NotConverged {
        function: "newton_bisect",
        iterations: opts.max_iter,
    })
}
