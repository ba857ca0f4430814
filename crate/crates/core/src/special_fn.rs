//! Lambert W, log-gamma and the regularized upper incomplete gamma function.

use crate::math::{abs, exp, exp_m1, ln, ln_1p, sqrt};
use crate::roots::{newton_bisect, RootOptions};
use crate::{Error, Result};

/// Real branch of the Lambert W function.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Branch {
    /// `W_0`, defined on `[-1/e, ∞)`, values `≥ -1`.
    Principal,
    /// `W_{-1}`, defined on `[-1/e, 0)`, values `≤ -1`.
    Secondary,
}

/// Iteration controls for [`lambert_w_with`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LambertOptions {
    /// Stop when the Halley step is at most this many ulps of the iterate.
    pub step_ulps: f64,
    /// Iteration cap; hitting it is reported as [`Error::NotConverged`].
    pub max_iter: usize,
}

impl Default for LambertOptions {
    fn default() -> Self {
        Self {
            step_ulps: 2.0,
            max_iter: 50,
        }
    }
}

// 1/e split into a double and its rounding error.
const INV_E_HI: f64 = 0.36787944117144233;
const INV_E_LO: f64 = -1.2428753672788363e-17;
const E: f64 = core::f64::consts::E;

// W(p) = Σ μ_k p^k around the branch point, p = ±sqrt(2(1 + e x)).
const BRANCH_SERIES: [f64; 14] = [
    -1.0,
    1.0,
    -0.3333333333333333,
    0.1527777777777778,
    -0.07962962962962962,
    0.04450231481481483,
    -0.025984714873603758,
    0.015635632532333927,
    -0.009616892024299429,
    0.0060145432529561185,
    -0.003811298034892,
    0.002440877991143983,
    -0.001576930344686784,
    0.0010262633205076076,
];

/// Evaluates `W(x)` on the requested real branch with default options.
pub fn lambert_w(branch: Branch, x: f64) -> Result<f64> {
    lambert_w_with(branch, x, &LambertOptions::default())
}

/// Evaluates `W(x)` on the requested real branch.
///
/// The starting point comes from the branch-point series near `-1/e` and
/// from the logarithmic asymptotics elsewhere; it is then refined by Halley
/// iteration on `w - x e^{-w}`, which avoids overflowing `e^w`.
pub fn lambert_w_with(branch: Branch, x: f64, opts: &LambertOptions) -> Result<f64> {
    if x.is_nan() {
        return Err(Error::domain("lambert_w", "argument is NaN"));
    }
    if x < -INV_E_HI {
        return Err(Error::domain("lambert_w", "argument below -1/e"));
    }
    if branch == Branch::Secondary && x >= 0.0 {
        return Err(Error::domain("lambert_w", "secondary branch needs x < 0"));
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    if x == f64::INFINITY {
        return Ok(f64::INFINITY);
    }
    // distance to the branch point, carried in extra precision
    let shift = (x + INV_E_HI) + INV_E_LO;
    if shift <= 0.0 {
        return Ok(-1.0);
    }
    let p = sqrt(2.0 * E * shift);
    let p = match branch {
        Branch::Principal => p,
        Branch::Secondary => -p,
    };
    if p.abs() < 1e-3 {
        // series truncation error below p^14 ~ 1e-42
        return Ok(branch_series(p));
    }
    let guess = match branch {
        Branch::Principal if x < -0.25 => branch_series(p),
        Branch::Principal if x <= 3.0 => {
            let l = ln_1p(x);
            l * (1.0 - ln_1p(l) / (2.0 + l))
        }
        Branch::Principal => {
            let l1 = ln(x);
            let l2 = ln(l1);
            l1 - l2 + l2 / l1
        }
        Branch::Secondary if x < -0.25 => branch_series(p),
        Branch::Secondary => {
            let l1 = ln(-x);
            let l2 = ln(-l1);
            l1 - l2 + l2 / l1
        }
    };
    halley(x, guess, opts)
}

fn branch_series(p: f64) -> f64 {
    BRANCH_SERIES.iter().rev().fold(0.0, |acc, &c| acc * p + c)
}

fn halley(x: f64, mut w: f64, opts: &LambertOptions) -> Result<f64> {
    let mut prev_step = f64::INFINITY;
    for _ in 0..opts.max_iter {
        // r = (w e^w - x) e^{-w}
        let r = w - x * exp(-w);
        let wp1 = w + 1.0;
        if r == 0.0 || wp1 == 0.0 {
            return Ok(w);
        }
        let step = r / (wp1 - 0.5 * (w + 2.0) * r / wp1);
        let size = abs(step);
        // in the roundoff regime a step that no longer shrinks is noise
        if size >= prev_step && size <= 1e-12 * abs(w) {
            return Ok(w);
        }
        w -= step;
        if size <= opts.step_ulps * f64::EPSILON * abs(w) {
            return Ok(w);
        }
        prev_step = size;
    }
    Err(Error::NotConverged {
        function: "lambert_w",
        iterations: opts.max_iter,
    })
}

const EULER_GAMMA: f64 = 0.5772156649015329;

// ζ(k) - 1 for k = 2..=30
const ZETA_MINUS_ONE: [f64; 29] = [
    0.6449340668482264,
    0.2020569031595943,
    0.08232323371113819,
    0.03692775514336993,
    0.01734306198444914,
    0.008349277381922827,
    0.00407735619794434,
    0.0020083928260822143,
    0.0009945751278180853,
    0.0004941886041194645,
    0.0002460865533080483,
    0.00012271334757848915,
    6.124813505870483e-05,
    3.058823630702049e-05,
    1.528225940865187e-05,
    7.637197637899763e-06,
    3.81729326499984e-06,
    1.908212716553939e-06,
    9.539620338727962e-07,
    4.769329867878064e-07,
    2.38450502727733e-07,
    1.1921992596531106e-07,
    5.960818905125948e-08,
    2.980350351465228e-08,
    1.4901554828365043e-08,
    7.45071178983543e-09,
    3.725334024788457e-09,
    1.862659723513049e-09,
    9.313274324196682e-10,
];

// Stirling correction coefficients B_{2k} / (2k (2k-1))
const STIRLING: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
];

const HALF_LN_TWO_PI: f64 = 0.9189385332046728;

/// `ln Γ(a)` for `a > 0`.
///
/// Near the zeros at 1 and 2 a Taylor series around 2 keeps full relative
/// accuracy; elsewhere the argument is shifted past 10 and Stirling's series
/// is used.
pub fn log_gamma(a: f64) -> Result<f64> {
    if !(a > 0.0) {
        return Err(Error::domain("log_gamma", "argument must be positive"));
    }
    if a == f64::INFINITY {
        return Ok(f64::INFINITY);
    }
    if a < 0.5 {
        // Γ(a) = Γ(a + 1) / a
        return Ok(log_gamma(a + 1.0)? - ln(a));
    }
    if a < 1.5 {
        let eps = a - 1.0;
        return Ok(log_gamma_near_two(eps) - ln_1p(eps));
    }
    if a <= 2.5 {
        return Ok(log_gamma_near_two(a - 2.0));
    }
    let mut z = a;
    let mut shift = 1.0;
    while z < 10.0 {
        shift *= z;
        z += 1.0;
    }
    let inv = 1.0 / z;
    let inv2 = inv * inv;
    let corr = STIRLING.iter().rev().fold(0.0, |acc, &c| acc * inv2 + c) * inv;
    Ok((z - 0.5) * ln(z) - z + HALF_LN_TWO_PI + corr - ln(shift))
}

// ln Γ(2 + ε) = (1 - γ) ε + Σ_{k≥2} (-1)^k (ζ(k) - 1) ε^k / k, |ε| ≤ 1/2
fn log_gamma_near_two(eps: f64) -> f64 {
    let mut sum = 0.0;
    for (i, &z) in ZETA_MINUS_ONE.iter().enumerate().rev() {
        let k = (i + 2) as f64;
        let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
        sum = sum * eps + sign * z / k;
    }
    eps * ((1.0 - EULER_GAMMA) + eps * sum)
}

/// Controls for the incomplete gamma kernels.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GammaOptions {
    /// Relative truncation tolerance for series and continued fraction.
    pub rel_tol: f64,
    /// Iteration cap.
    pub max_iter: usize,
}

impl Default for GammaOptions {
    fn default() -> Self {
        Self {
            rel_tol: f64::EPSILON,
            max_iter: 1000,
        }
    }
}

/// Regularized upper incomplete gamma `Q(a, y) = Γ(a, y) / Γ(a)`.
pub fn reg_gamma_q(a: f64, y: f64) -> Result<f64> {
    let (q, ln_q) = reg_gamma_q_impl(a, y, &GammaOptions::default())?;
    Ok(match ln_q {
        Some(l) => exp(l),
        None => q,
    })
}

/// `ln Q(a, y)`, accurate where `Q` underflows.
pub fn ln_reg_gamma_q(a: f64, y: f64) -> Result<f64> {
    let (q, ln_q) = reg_gamma_q_impl(a, y, &GammaOptions::default())?;
    Ok(match ln_q {
        Some(l) => l,
        None => ln(q),
    })
}

/// Regularized lower incomplete gamma `P(a, y) = 1 - Q(a, y)`.
pub fn reg_gamma_p(a: f64, y: f64) -> Result<f64> {
    check_gamma_args("reg_gamma_p", a, y)?;
    if y == 0.0 {
        return Ok(0.0);
    }
    let opts = GammaOptions::default();
    let ln_pre = a * ln(y) - y - log_gamma(a)?;
    if y < a + 1.0 {
        Ok(exp(ln_pre) * lower_series(a, y, &opts)?)
    } else {
        Ok(-exp_m1(ln_pre + ln(upper_fraction(a, y, &opts)?)))
    }
}

fn check_gamma_args(function: &'static str, a: f64, y: f64) -> Result<()> {
    if !(a > 0.0) || !a.is_finite() {
        return Err(Error::domain(function, "shape must be positive"));
    }
    if !(y >= 0.0) {
        return Err(Error::domain(function, "argument must be nonnegative"));
    }
    Ok(())
}

// Returns Q directly (series branch) or ln Q (continued-fraction branch).
fn reg_gamma_q_impl(a: f64, y: f64, opts: &GammaOptions) -> Result<(f64, Option<f64>)> {
    check_gamma_args("reg_gamma_q", a, y)?;
    if y == 0.0 {
        return Ok((1.0, None));
    }
    if y == f64::INFINITY {
        return Ok((0.0, None));
    }
    let ln_pre = a * ln(y) - y - log_gamma(a)?;
    if y < a + 1.0 {
        let p = exp(ln_pre) * lower_series(a, y, opts)?;
        Ok(((1.0 - p).max(0.0), None))
    } else {
        let h = upper_fraction(a, y, opts)?;
        Ok((0.0, Some(ln_pre + ln(h))))
    }
}

// Σ y^n / (a (a+1) ... (a+n)), so that P = y^a e^{-y} / Γ(a) · sum
fn lower_series(a: f64, y: f64, opts: &GammaOptions) -> Result<f64> {
    let mut term = 1.0 / a;
    let mut sum = term;
    let mut denom = a;
    for _ in 0..opts.max_iter {
        denom += 1.0;
        term *= y / denom;
        sum += term;
        if abs(term) <= abs(sum) * opts.rel_tol {
            return Ok(sum);
        }
    }
    Err(Error::NotConverged {
        function: "reg_gamma_q (series)",
        iterations: opts.max_iter,
    })
}

// Continued fraction for Γ(a, y) e^y y^{-a}, modified Lentz.
fn upper_fraction(a: f64, y: f64, opts: &GammaOptions) -> Result<f64> {
    const TINY: f64 = 1e-300;
    let mut b = y + 1.0 - a;
    let mut c = 1.0 / TINY;
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..=opts.max_iter {
        let i = i as f64;
        let an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if abs(d) < TINY {
            d = TINY;
        }
        c = b + an / c;
        if abs(c) < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        let delta = d * c;
        h *= delta;
        if abs(delta - 1.0) <= opts.rel_tol {
            return Ok(h);
        }
    }
    Err(Error::NotConverged {
        function: "reg_gamma_q (continued fraction)",
        iterations: opts.max_iter,
    })
}

/// Inverse of `y ↦ Q(a, y)`: the `y` with `Q(a, y) = q`.
///
/// Safeguarded Newton on `ln Q(a, y) - ln q`, started from a bracket
/// `[max(a - 1, ε), a + 2 √a ln(1/q)]` that is widened geometrically until it
/// straddles the target.
pub fn reg_gamma_q_inv(a: f64, q: f64) -> Result<f64> {
    if !(a > 0.0) || !a.is_finite() {
        return Err(Error::domain("reg_gamma_q_inv", "shape must be positive"));
    }
    if !(q > 0.0 && q < 1.0) {
        return Err(Error::domain(
            "reg_gamma_q_inv",
            "probability must lie in (0, 1)",
        ));
    }
    let ln_q = ln(q);
    let lg = log_gamma(a)?;
    let g = |y: f64| -> (f64, f64) {
        let lq = match ln_reg_gamma_q(a, y) {
            Ok(v) => v,
            Err(_) => return (f64::NAN, f64::NAN),
        };
        let ln_pdf = (a - 1.0) * ln(y) - y - lg;
        (lq - ln_q, -exp(ln_pdf - lq))
    };

    let mut lo = (a - 1.0).max(1e-8);
    while g(lo).0 < 0.0 {
        lo *= 0.25;
        if lo < 1e-300 {
            return Err(Error::NoBracket("reg_gamma_q_inv"));
        }
    }
    let mut hi = a + 2.0 * sqrt(a) * ln(1.0 / q) + 1.0;
    while g(hi).0 > 0.0 {
        hi *= 2.0;
        if !hi.is_finite() {
            return Err(Error::NoBracket("reg_gamma_q_inv"));
        }
    }
    newton_bisect(
        g,
        lo,
        hi,
        None,
        &RootOptions {
            rel_tol: 2.0 * f64::EPSILON,
            abs_tol: 1e-300,
            max_iter: 200,
        },
    )
}
