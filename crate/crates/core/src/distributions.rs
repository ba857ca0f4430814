//! Generalized Weibull and Gamma laws, the Gamma tail-equivalent forms, and
//! the Gumbel law.

use crate::asymptotic::{u_gamma_d_numeric_from_log, Perturbation};
use crate::math::{exp, ln, ln_1p, powf, sqrt};
use crate::roots::{newton_bisect, RootOptions};
use crate::special_fn::{
    lambert_w, ln_reg_gamma_q, log_gamma, reg_gamma_p, reg_gamma_q, reg_gamma_q_inv, Branch,
};
use crate::{Error, Result};

/// `F(x) = 1 - K x^α exp(-C x^τ)` for `x ≥ x0`, zero below.
///
/// The tail must be at most 1 and nonincreasing from `x0` on, so `F` may put
/// an atom of mass `F(x0)` at `x0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeneralizedWeibull {
    k: f64,
    c: f64,
    tau: f64,
    alpha: f64,
    x0: f64,
}

impl GeneralizedWeibull {
    /// Checked constructor.
    pub fn new(k: f64, c: f64, tau: f64, alpha: f64, x0: f64) -> Result<Self> {
        let finite = [k, c, tau, alpha, x0].iter().all(|v| v.is_finite());
        if !finite {
            return Err(Error::InvalidParameters("parameters must be finite"));
        }
        if !(k > 0.0 && c > 0.0 && alpha > 0.0) {
            return Err(Error::InvalidParameters("K, C and alpha must be positive"));
        }
        if !(tau >= 1.0) {
            return Err(Error::InvalidParameters("tau must be at least 1"));
        }
        if !(x0 > 0.0) {
            return Err(Error::InvalidParameters("x0 must be positive"));
        }
        let p = Self {
            k,
            c,
            tau,
            alpha,
            x0,
        };
        if c * tau * powf(x0, tau) < alpha * (1.0 - 1e-12) {
            return Err(Error::InvalidParameters(
                "tail must be nonincreasing from x0",
            ));
        }
        if p.ln_tail(x0) > 1e-12 {
            return Err(Error::InvalidParameters("tail exceeds 1 at x0"));
        }
        Ok(p)
    }

    /// `1 - e x e^{-x}` for `x ≥ 1`.
    pub fn simple() -> Self {
        Self {
            k: core::f64::consts::E,
            c: 1.0,
            tau: 1.0,
            alpha: 1.0,
            x0: 1.0,
        }
    }

    /// Smallest admissible `x0` for the given shape: the tail is decreasing
    /// and at most 1 from there on.
    pub fn support_start(k: f64, c: f64, tau: f64, alpha: f64) -> Result<f64> {
        let x_dec = powf(alpha / (c * tau), 1.0 / tau);
        let ln_tail = |x: f64| ln(k) + alpha * ln(x) - c * powf(x, tau);
        if ln_tail(x_dec) <= 0.0 {
            return Ok(x_dec);
        }
        let mut hi = 2.0 * x_dec;
        while ln_tail(hi) > 0.0 {
            hi *= 2.0;
            if !hi.is_finite() {
                return Err(Error::NoBracket("support_start"));
            }
        }
        let f = |x: f64| (ln_tail(x), alpha / x - c * tau * powf(x, tau - 1.0));
        newton_bisect(f, x_dec, hi, None, &RootOptions::default())
    }

    /// `K`.
    pub fn k(&self) -> f64 {
        self.k
    }
    /// `C`.
    pub fn c(&self) -> f64 {
        self.c
    }
    /// `τ`.
    pub fn tau(&self) -> f64 {
        self.tau
    }
    /// `α`.
    pub fn alpha(&self) -> f64 {
        self.alpha
    }
    /// Left end of the support.
    pub fn x0(&self) -> f64 {
        self.x0
    }

    /// `ln(K x^α e^{-C x^τ})`, the tail formula without the support cut.
    pub fn ln_tail(&self, x: f64) -> f64 {
        ln(self.k) + self.alpha * ln(x) - self.c * powf(x, self.tau)
    }

    /// `1 - F(x)`.
    pub fn sf(&self, x: f64) -> f64 {
        if x < self.x0 {
            1.0
        } else {
            exp(self.ln_tail(x))
        }
    }

    /// `ln F(x)`, accurate when `F(x)` is close to 1.
    pub fn ln_cdf(&self, x: f64) -> f64 {
        if x < self.x0 {
            return f64::NEG_INFINITY;
        }
        ln_1p(-exp(self.ln_tail(x)))
    }

    /// `F(x)`.
    pub fn cdf(&self, x: f64) -> f64 {
        if x < self.x0 {
            0.0
        } else {
            1.0 - exp(self.ln_tail(x))
        }
    }

    /// Density of the continuous part.
    pub fn pdf(&self, x: f64) -> f64 {
        if x < self.x0 {
            return 0.0;
        }
        exp(self.ln_tail(x)) * self.hazard(x)
    }

    fn hazard(&self, x: f64) -> f64 {
        self.c * self.tau * powf(x, self.tau - 1.0) - self.alpha / x
    }

    /// `A(x) = (1 - F(x)) / f(x) = 1 / (Cτ x^{τ-1} - α/x)`.
    pub fn auxiliary(&self, x: f64) -> Result<f64> {
        let h = self.hazard(x);
        if !(x > 0.0 && h > 0.0) {
            return Err(Error::domain("auxiliary", "hazard is not positive"));
        }
        Ok(1.0 / h)
    }

    /// `F^{-1}(u)` for `F(x0) ≤ u < 1`.
    pub fn quantile(&self, u: f64) -> Result<f64> {
        if !(u < 1.0) || !(u >= self.cdf(self.x0)) {
            return Err(Error::domain(
                "gw_quantile",
                "probability outside [F(x0), 1)",
            ));
        }
        if u == self.cdf(self.x0) {
            return Ok(self.x0);
        }
        self.tail_quantile_ln(ln_1p(-u))
    }

    /// Solves `1 - F(x) = q`.
    pub fn tail_quantile(&self, q: f64) -> Result<f64> {
        if !(q > 0.0) {
            return Err(Error::domain(
                "gw_quantile",
                "tail probability must be positive",
            ));
        }
        self.tail_quantile_ln(ln(q))
    }

    /// Solves `ln(1 - F(x)) = ln_q`.
    pub fn tail_quantile_ln(&self, ln_q: f64) -> Result<f64> {
        if !(ln_q <= self.ln_tail(self.x0)) {
            return Err(Error::domain(
                "gw_quantile",
                "tail probability above 1 - F(x0)",
            ));
        }
        // with y = C x^τ and β = α/τ: y^β e^{-y} = q C^β / K
        let beta = self.alpha / self.tau;
        let ln_rhs = ln_q + beta * ln(self.c) - ln(self.k);
        let ln_z = ln_rhs / beta - ln(beta);
        let y = if ln_z > -700.0 {
            -beta * lambert_w(Branch::Secondary, -exp(ln_z))?
        } else {
            u_gamma_d_numeric_from_log(-beta, &Perturbation::One, -ln_rhs)?
        };
        Ok(powf(y / self.c, 1.0 / self.tau).max(self.x0))
    }
}

/// `Gamma(ν, θ)` with shape `ν > 1` and scale `θ > 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GammaParams {
    nu: f64,
    theta: f64,
    ln_gamma_nu: f64,
}

impl GammaParams {
    /// Checked constructor.
    pub fn new(nu: f64, theta: f64) -> Result<Self> {
        if !(nu > 1.0 && nu.is_finite()) {
            return Err(Error::InvalidParameters("shape must exceed 1"));
        }
        if !(theta > 0.0 && theta.is_finite()) {
            return Err(Error::InvalidParameters("scale must be positive"));
        }
        Ok(Self {
            nu,
            theta,
            ln_gamma_nu: log_gamma(nu)?,
        })
    }

    /// Chi-square with `m > 2` degrees of freedom.
    pub fn chi2(m: f64) -> Result<Self> {
        Self::new(0.5 * m, 2.0)
    }

    /// Shape `ν`.
    pub fn nu(&self) -> f64 {
        self.nu
    }
    /// Scale `θ`.
    pub fn theta(&self) -> f64 {
        self.theta
    }
    /// `ln Γ(ν)`.
    pub fn ln_gamma_nu(&self) -> f64 {
        self.ln_gamma_nu
    }

    /// `G(x)`.
    pub fn cdf(&self, x: f64) -> f64 {
        if x <= 0.0 {
            return 0.0;
        }
        reg_gamma_p(self.nu, x / self.theta).unwrap_or(f64::NAN)
    }

    /// `1 - G(x)`.
    pub fn sf(&self, x: f64) -> f64 {
        if x <= 0.0 {
            return 1.0;
        }
        reg_gamma_q(self.nu, x / self.theta).unwrap_or(f64::NAN)
    }

    /// `ln(1 - G(x))`.
    pub fn ln_sf(&self, x: f64) -> f64 {
        if x <= 0.0 {
            return 0.0;
        }
        ln_reg_gamma_q(self.nu, x / self.theta).unwrap_or(f64::NAN)
    }

    /// `ln G(x)`, accurate when `G(x)` is close to 1.
    pub fn ln_cdf(&self, x: f64) -> f64 {
        if x <= 0.0 {
            return f64::NEG_INFINITY;
        }
        let q = self.sf(x);
        if q < 0.5 {
            ln_1p(-q)
        } else {
            ln(self.cdf(x))
        }
    }

    /// Density.
    pub fn pdf(&self, x: f64) -> f64 {
        if x <= 0.0 {
            return 0.0;
        }
        let s = x / self.theta;
        exp((self.nu - 1.0) * ln(s) - s - self.ln_gamma_nu) / self.theta
    }

    /// `G^{-1}(u)` for `0 < u < 1`.
    pub fn quantile(&self, u: f64) -> Result<f64> {
        if !(u > 0.0 && u < 1.0) {
            return Err(Error::domain(
                "gamma_quantile",
                "probability outside (0, 1)",
            ));
        }
        if u >= 0.5 {
            return self.tail_quantile(1.0 - u);
        }
        let median = reg_gamma_q_inv(self.nu, 0.5)?;
        let nu = self.nu;
        let f = |s: f64| {
            let p = reg_gamma_p(nu, s).unwrap_or(f64::NAN);
            (p - u, exp((nu - 1.0) * ln(s) - s - self.ln_gamma_nu))
        };
        let s = newton_bisect(f, 0.0, median, None, &RootOptions::default())?;
        Ok(self.theta * s)
    }

    /// Solves `1 - G(x) = q`.
    pub fn tail_quantile(&self, q: f64) -> Result<f64> {
        if !(q > 0.0 && q < 1.0) {
            return Err(Error::domain(
                "gamma_quantile",
                "tail probability outside (0, 1)",
            ));
        }
        Ok(self.theta * reg_gamma_q_inv(self.nu, q)?)
    }

    /// `A(x) = x / (x/θ - ν + 1)`, the auxiliary function of the first
    /// tail-equivalent form.
    pub fn auxiliary(&self, x: f64) -> Result<f64> {
        GammaTail::new(*self, TailForm::F1)?.auxiliary(x)
    }

    /// `K = 1 / (θ^{ν-1} Γ(ν))`, the tail constant.
    pub fn tail_constant(&self) -> f64 {
        exp(-(self.nu - 1.0) * ln(self.theta) - self.ln_gamma_nu)
    }

    /// The first tail-equivalent form as a generalized Weibull law.
    pub fn as_generalized_weibull(&self) -> Result<GeneralizedWeibull> {
        GammaTail::new(*self, TailForm::F1)?.as_generalized_weibull()
    }
}

/// Which tail-equivalent form of a Gamma law.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TailForm {
    /// `1 - F1 = K x^{ν-1} e^{-x/θ}`.
    F1,
    /// `1 - F2 = K x^{ν-1} e^{-x/θ} (1 + θ(ν-1)/x)`.
    F2,
}

/// A Gamma tail-equivalent distribution, defined from its validity
/// threshold `x0` on.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GammaTail {
    params: GammaParams,
    form: TailForm,
    x0: f64,
}

impl GammaTail {
    /// Builds the form and its validity threshold: the smallest point from
    /// which the tail is decreasing and at most 1.
    pub fn new(params: GammaParams, form: TailForm) -> Result<Self> {
        let mut t = Self {
            params,
            form,
            x0: 0.0,
        };
        let (nu, theta) = (params.nu, params.theta);
        let x_dec = match form {
            TailForm::F1 => theta * (nu - 1.0),
            TailForm::F2 if nu > 2.0 => theta * sqrt((nu - 1.0) * (nu - 2.0)),
            TailForm::F2 => 0.0,
        };
        t.x0 = if x_dec > 0.0 && t.ln_tail(x_dec) <= 0.0 {
            x_dec
        } else {
            let mut lo = x_dec;
            if lo == 0.0 {
                lo = theta * 1e-3;
                while t.ln_tail(lo) <= 0.0 {
                    lo *= 0.5;
                }
            }
            let mut hi = 2.0 * lo + theta;
            while t.ln_tail(hi) > 0.0 {
                hi *= 2.0;
            }
            let f = |x: f64| (t.ln_tail(x), t.d_ln_tail(x));
            newton_bisect(f, lo, hi, None, &RootOptions::default())?
        };
        Ok(t)
    }

    /// The underlying Gamma law.
    pub fn params(&self) -> GammaParams {
        self.params
    }
    /// Which form.
    pub fn form(&self) -> TailForm {
        self.form
    }
    /// Validity threshold.
    pub fn x0(&self) -> f64 {
        self.x0
    }

    fn correction(&self, x: f64) -> f64 {
        match self.form {
            TailForm::F1 => 0.0,
            TailForm::F2 => ln_1p(self.params.theta * (self.params.nu - 1.0) / x),
        }
    }

    /// Log of the tail formula, without the support cut.
    pub fn ln_tail(&self, x: f64) -> f64 {
        let p = &self.params;
        ln(p.tail_constant()) + (p.nu - 1.0) * ln(x) - x / p.theta + self.correction(x)
    }

    fn d_ln_tail(&self, x: f64) -> f64 {
        let p = &self.params;
        let base = (p.nu - 1.0) / x - 1.0 / p.theta;
        match self.form {
            TailForm::F1 => base,
            TailForm::F2 => {
                let m = p.theta * (p.nu - 1.0);
                base - m / (x * (x + m))
            }
        }
    }

    fn check(&self, x: f64) -> Result<()> {
        if !(x >= self.x0) {
            return Err(Error::domain(
                "gamma_tail_equivalent_cdf",
                "below the validity threshold",
            ));
        }
        Ok(())
    }

    /// `F1(x)` or `F2(x)` for `x ≥ x0`.
    pub fn cdf(&self, x: f64) -> Result<f64> {
        self.check(x)?;
        Ok(1.0 - exp(self.ln_tail(x)))
    }

    /// `1 - F(x)` for `x ≥ x0`.
    pub fn sf(&self, x: f64) -> Result<f64> {
        self.check(x)?;
        Ok(exp(self.ln_tail(x)))
    }

    /// Density for `x ≥ x0`.
    pub fn pdf(&self, x: f64) -> Result<f64> {
        self.check(x)?;
        Ok(-exp(self.ln_tail(x)) * self.d_ln_tail(x))
    }

    /// `F^{-1}(u)` for `F(x0) ≤ u < 1`.
    pub fn quantile(&self, u: f64) -> Result<f64> {
        let ln_q = ln_1p(-u);
        let top = self.ln_tail(self.x0);
        if !(u < 1.0) || !(ln_q <= top) {
            return Err(Error::domain(
                "gamma_tail_quantile",
                "probability outside [F(x0), 1)",
            ));
        }
        if ln_q == top {
            return Ok(self.x0);
        }
        let mut hi = 2.0 * self.x0 + self.params.theta;
        while self.ln_tail(hi) > ln_q {
            hi *= 2.0;
        }
        let f = |x: f64| (self.ln_tail(x) - ln_q, self.d_ln_tail(x));
        newton_bisect(f, self.x0, hi, None, &RootOptions::default())
    }

    /// Auxiliary function `(1 - F)/f`: `x/(x/θ - ν + 1)` for F1 and
    /// `θx(x + θ(ν-1)) / (x² - θ²(ν-1)(ν-2))` for F2.
    pub fn auxiliary(&self, x: f64) -> Result<f64> {
        let p = &self.params;
        let (nu, theta) = (p.nu, p.theta);
        let (num, den) = match self.form {
            TailForm::F1 => (x, x / theta - nu + 1.0),
            TailForm::F2 => (
                theta * x * (x + theta * (nu - 1.0)),
                x * x - theta * theta * (nu - 1.0) * (nu - 2.0),
            ),
        };
        if !(x > 0.0 && den > 0.0) {
            return Err(Error::domain("auxiliary", "at or below the pole"));
        }
        Ok(num / den)
    }

    /// The F1 form as a generalized Weibull law; F2 has no such form.
    pub fn as_generalized_weibull(&self) -> Result<GeneralizedWeibull> {
        if self.form != TailForm::F1 {
            return Err(Error::InvalidParameters(
                "only F1 is a generalized Weibull law",
            ));
        }
        let p = &self.params;
        GeneralizedWeibull::new(p.tail_constant(), 1.0 / p.theta, 1.0, p.nu - 1.0, self.x0)
    }
}

/// `Λ(x) = exp(-e^{-x})`.
pub fn gumbel_cdf(x: f64) -> f64 {
    exp(-exp(-x))
}

/// `ln Λ(x) = -e^{-x}`.
pub fn gumbel_ln_cdf(x: f64) -> f64 {
    -exp(-x)
}

/// `Λ'(x) = e^{-x} Λ(x)`.
pub fn gumbel_pdf(x: f64) -> f64 {
    exp(-x - exp(-x))
}

/// `Λ^{-1}(u) = -ln(-ln u)` for `0 < u < 1`.
pub fn gumbel_quantile(u: f64) -> Result<f64> {
    if !(u > 0.0 && u < 1.0) {
        return Err(Error::domain(
            "gumbel_quantile",
            "probability outside (0, 1)",
        ));
    }
    Ok(-ln(-ln(u)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::vec::Vec;

    const E: f64 = core::f64::consts::E;

    // adaptive Simpson, independent of the crate's numerics
    fn simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64, depth: u32) -> f64 {
        let m = 0.5 * (a + b);
        let whole = (b - a) / 6.0 * (f(a) + 4.0 * f(m) + f(b));
        let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
        let left = (m - a) / 6.0 * (f(a) + 4.0 * f(lm) + f(m));
        let right = (b - m) / 6.0 * (f(m) + 4.0 * f(rm) + f(b));
        if depth == 0 || (left + right - whole).abs() <= 15.0 * tol {
            return left + right + (left + right - whole) / 15.0;
        }
        simpson(f, a, m, 0.5 * tol, depth - 1) + simpson(f, m, b, 0.5 * tol, depth - 1)
    }

    fn integrate<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> f64 {
        let h = (b - a) / 64.0;
        (0..64)
            .map(|i| simpson(f, a + i as f64 * h, a + (i + 1) as f64 * h, 1e-14, 30))
            .sum()
    }

    fn bisect<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64) -> f64 {
        for _ in 0..200 {
            let m = 0.5 * (lo + hi);
            if (f(m) > 0.0) == (f(hi) > 0.0) {
                hi = m;
            } else {
                lo = m;
            }
        }
        0.5 * (lo + hi)
    }

    fn grid(n: usize) -> impl Iterator<Item = f64> {
        (1..n).map(move |i| i as f64 / n as f64)
    }

    #[test]
    fn simple_case_values() {
        let d = GeneralizedWeibull::simple();
        assert_eq!(d.cdf(1.0), 0.0);
        assert_eq!(d.cdf(0.5), 0.0);
        assert!((d.cdf(7.6384) - 0.99).abs() < 1e-4);
        assert!((d.cdf(800.0) - 1.0).abs() < 1e-300);
        assert!((d.quantile(0.99).unwrap() - 7.6384).abs() < 1e-4);
        assert_eq!(d.quantile(0.0).unwrap(), 1.0);
        assert!((d.auxiliary(7.6384).unwrap() - 1.1506).abs() < 1e-4);
        assert!(d.quantile(1.0).is_err());
        assert!(d.quantile(-0.1).is_err());
    }

    #[test]
    fn simple_quantile_is_lambert() {
        let d = GeneralizedWeibull::simple();
        for u in grid(1000) {
            let w = -lambert_w(Branch::Secondary, (u - 1.0) / E).unwrap();
            assert!((d.quantile(u).unwrap() - w).abs() <= 1e-10 * w);
        }
    }

    #[test]
    fn general_quantile_matches_bisection() {
        let d = GeneralizedWeibull::new(1.0, 1.0, 2.0, 1.0, 1.0).unwrap();
        let v = d.quantile(0.99).unwrap();
        let oracle = bisect(|x| 1.0 - x * (-x * x).exp() - 0.99, 1.0, 10.0);
        assert!((v - oracle).abs() < 1e-12);
        assert!((d.cdf(v) - 0.99).abs() < 1e-10);
    }

    #[test]
    fn huge_levels_fall_back_to_root_solve() {
        let d = GeneralizedWeibull::simple();
        let x = d.tail_quantile_ln(-1000.0).unwrap();
        assert!((d.ln_tail(x) + 1000.0).abs() < 1e-9);
        let lam = d.tail_quantile_ln(-690.0).unwrap();
        assert!((d.ln_tail(lam) + 690.0).abs() < 1e-9);
    }

    #[test]
    fn rejects_bad_weibull_parameters() {
        assert!(GeneralizedWeibull::new(1.0, 1.0, 0.5, 1.0, 1.0).is_err());
        assert!(GeneralizedWeibull::new(-1.0, 1.0, 1.0, 1.0, 1.0).is_err());
        assert!(GeneralizedWeibull::new(1.0, 1.0, 1.0, 0.0, 1.0).is_err());
        // tail still increasing at x0
        assert!(GeneralizedWeibull::new(1e-3, 1.0, 1.0, 4.0, 1.0).is_err());
        // tail above one at x0
        assert!(GeneralizedWeibull::new(1.0, 1.0, 1.0, 4.0, 4.0).is_err());
        let x0 = GeneralizedWeibull::support_start(1.0, 1.0, 1.0, 4.0).unwrap();
        assert!((4.0 * x0.ln() - x0).abs() < 1e-12 && x0 > 4.0);
        assert!(GeneralizedWeibull::new(1.0, 1.0, 1.0, 4.0, x0).is_ok());
        assert_eq!(
            GeneralizedWeibull::support_start(E, 1.0, 1.0, 1.0).unwrap(),
            1.0
        );
    }

    #[test]
    fn auxiliary_limits() {
        let d = GeneralizedWeibull::new(1.0, 2.0, 1.0, 1e-9, 1.0).unwrap();
        assert!((d.auxiliary(5.0).unwrap() - 0.5).abs() < 1e-9);
        let g = GammaParams::new(5.0, 2.0).unwrap();
        assert_eq!(g.auxiliary(10.0).unwrap(), 10.0);
        assert_eq!(g.auxiliary(20.0).unwrap(), 20.0 / 6.0);
        assert!(g.auxiliary(8.0).is_err());
    }

    #[test]
    fn gamma_values() {
        let g = GammaParams::new(5.0, 2.0).unwrap();
        assert!((g.cdf(15.9872) - 0.9).abs() < 1e-4);
        assert_eq!(g.cdf(0.0), 0.0);
        assert_eq!(GammaParams::chi2(10.0).unwrap(), g);
        let near_exp = GammaParams::new(1.0001, 3.0).unwrap();
        for x in [0.1, 1.0, 5.0, 20.0] {
            assert!((near_exp.cdf(x) - (1.0 - (-x / 3.0).exp())).abs() < 1e-3);
        }
        assert!(GammaParams::new(1.0, 1.0).is_err());
        assert!(GammaParams::new(2.0, 0.0).is_err());
    }

    #[test]
    fn gamma_tail_forms() {
        // ν = 2: F2 is the exact tail
        let g2 = GammaParams::new(2.0, 1.5).unwrap();
        let f2 = GammaTail::new(g2, TailForm::F2).unwrap();
        let x = 40.0 * 1.5;
        assert!((g2.sf(x) / f2.sf(x).unwrap() - 1.0).abs() < 1e-3);

        // ν = 5: closed-form ratio against F1, 1 + 4/s + 12/s² + 24/s³ + 24/s⁴
        let g = GammaParams::new(5.0, 2.0).unwrap();
        let f1 = GammaTail::new(g, TailForm::F1).unwrap();
        let f2 = GammaTail::new(g, TailForm::F2).unwrap();
        for s in [10.0, 40.0, 80.0] {
            let want = 1.0 + 4.0 / s + 12.0 / (s * s) + 24.0 / (s * s * s) + 24.0 / (s * s * s * s);
            let got = g.sf(2.0 * s) / f1.sf(2.0 * s).unwrap();
            assert!((got - want).abs() < 1e-12 * want);
        }
        assert!((g.sf(80.0) / f2.sf(80.0).unwrap() - 1.0).abs() < 1e-2);
        for x in [f2.x0().max(f1.x0()), 15.0, 30.0, 60.0] {
            assert!(f2.cdf(x).unwrap() < f1.cdf(x).unwrap());
        }
        assert!(f1.cdf(f1.x0() * 0.9).is_err());
    }

    #[test]
    fn tail_thresholds() {
        let g = GammaParams::new(5.0, 2.0).unwrap();
        assert_eq!(GammaTail::new(g, TailForm::F1).unwrap().x0(), 8.0);
        assert_eq!(
            GammaTail::new(g, TailForm::F2).unwrap().x0(),
            2.0 * 12f64.sqrt()
        );
        // ν < 2: F2 decreases everywhere and x0 is where its tail reaches 1
        let small = GammaTail::new(GammaParams::new(1.5, 1.0).unwrap(), TailForm::F2).unwrap();
        assert!(small.ln_tail(small.x0()).abs() < 1e-12);
        let w = g.as_generalized_weibull().unwrap();
        assert_eq!((w.alpha(), w.tau(), w.c(), w.x0()), (4.0, 1.0, 0.5, 8.0));
        assert!((w.k() * 384.0 - 1.0).abs() < 1e-14);
    }

    #[test]
    fn f2_closer_than_f1() {
        for nu in [1.5, 5.0, 10.0] {
            let theta = 2.0;
            let g = GammaParams::new(nu, theta).unwrap();
            let f1 = GammaTail::new(g, TailForm::F1).unwrap();
            let f2 = GammaTail::new(g, TailForm::F2).unwrap();
            let mut prev1 = f64::INFINITY;
            for k in 10..=80 {
                let x = k as f64 * theta;
                let r1 = (g.sf(x) / f1.sf(x).unwrap() - 1.0).abs();
                let r2 = (g.sf(x) / f2.sf(x).unwrap() - 1.0).abs();
                assert!(r2 < r1, "nu {nu} x {x}");
                assert!(r1 < prev1);
                prev1 = r1;
            }
        }
    }

    #[test]
    fn quantile_round_trips() {
        let simple = GeneralizedWeibull::simple();
        let general = GeneralizedWeibull::new(1.0, 1.0, 2.0, 1.0, 1.0).unwrap();
        let x0 = GeneralizedWeibull::support_start(1.0, 1.0, 1.0, 4.0).unwrap();
        let large_power = GeneralizedWeibull::new(1.0, 1.0, 1.0, 4.0, x0).unwrap();
        for d in [simple, general, large_power] {
            let start = d.cdf(d.x0());
            for u in grid(1000).filter(|&u| u >= start) {
                let x = d.quantile(u).unwrap();
                assert!((d.cdf(x) - u).abs() <= 1e-9, "{d:?} u {u}");
            }
        }
        for g in [
            GammaParams::chi2(10.0).unwrap(),
            GammaParams::new(1.5, 0.7).unwrap(),
        ] {
            for u in grid(1000) {
                assert!((g.cdf(g.quantile(u).unwrap()) - u).abs() <= 1e-9);
            }
            assert!((g.cdf(g.quantile(1e-30).unwrap()) / 1e-30 - 1.0).abs() < 1e-9);
            for form in [TailForm::F1, TailForm::F2] {
                let t = GammaTail::new(g, form).unwrap();
                let start = t.cdf(t.x0()).unwrap();
                for u in grid(1000).filter(|&u| u >= start) {
                    let x = t.quantile(u).unwrap();
                    assert!((t.cdf(x).unwrap() - u).abs() <= 1e-9);
                }
            }
        }
    }

    #[test]
    fn densities_integrate_to_continuous_mass() {
        let x0 = GeneralizedWeibull::support_start(1.0, 1.0, 1.0, 4.0).unwrap();
        let cases = [
            GeneralizedWeibull::simple(),
            GeneralizedWeibull::new(1.0, 1.0, 2.0, 1.0, 1.0).unwrap(),
            GeneralizedWeibull::new(1.0, 1.0, 1.0, 4.0, x0).unwrap(),
            GeneralizedWeibull::new(3.0, 0.5, 1.5, 2.0, 4.0).unwrap(),
        ];
        for d in cases {
            let upper = d.tail_quantile(1e-18).unwrap();
            let mass = integrate(&|x| d.pdf(x), d.x0(), upper);
            assert!((mass - d.sf(d.x0())).abs() < 1e-6, "{d:?}: {mass}");
        }
        let g = GammaParams::chi2(10.0).unwrap();
        let mass = integrate(&|x| g.pdf(x), 0.0, 200.0);
        assert!((mass - 1.0).abs() < 1e-6);
        let t = GammaTail::new(g, TailForm::F2).unwrap();
        let mass = integrate(&|x| t.pdf(x).unwrap(), t.x0(), 200.0);
        assert!((mass - t.sf(t.x0()).unwrap()).abs() < 1e-6);
    }

    #[test]
    fn gumbel_basics() {
        assert!((gumbel_cdf(0.0) - 0.3678794).abs() < 1e-7);
        assert!(gumbel_quantile(1.0 / E).unwrap().abs() < 1e-15);
        assert!((gumbel_pdf(0.0) - 1.0 / E).abs() < 1e-16);
        assert!(gumbel_pdf(0.01) < gumbel_pdf(0.0) && gumbel_pdf(-0.01) < gumbel_pdf(0.0));
        assert!(gumbel_quantile(0.0).is_err());
        let xs: Vec<f64> = [-2.0, 0.5, 3.0].to_vec();
        for x in xs {
            assert!((gumbel_quantile(gumbel_cdf(x)).unwrap() - x).abs() < 1e-12);
            assert!((gumbel_ln_cdf(x) - gumbel_cdf(x).ln()).abs() < 1e-15);
        }
    }
}
