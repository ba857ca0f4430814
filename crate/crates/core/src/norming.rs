//! Norming constants `a_n`, `b_n` for the maximum of `n` draws.
//!
//! Three tiers are available: exact (`b_n = F^{-1}(1 - 1/n)`,
//! `a_n = A(b_n)`), standard (two-term asymptotics) and improved (one more
//! term of the Lambert or Comtet expansion).

use crate::asymptotic::{
    u_gamma_d_expansion_from_log, w_secondary_d_expansion_from_log, w_secondary_expansion_from_log,
    ExpansionOrder, Perturbation,
};
use crate::distributions::{GammaParams, GeneralizedWeibull};
use crate::math::{ln, powf};
use crate::series::PowerSeries;
use crate::{Error, Result};

/// How the constants were obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    /// Quantile and auxiliary function at that quantile.
    Exact,
    /// Two-term asymptotic constants.
    Standard,
    /// Three-term constants from the Lambert or Comtet expansion.
    Improved,
}

impl Method {
    /// Lower-case name.
    pub const fn name(self) -> &'static str {
        match self {
            Self::Exact => "exact",
            Self::Standard => "standard",
            Self::Improved => "improved",
        }
    }
}

/// Scale `a > 0` and location `b` such that `(M_n - b)/a` is close to Gumbel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormingConstants {
    a: f64,
    b: f64,
    method: Method,
    n: u64,
}

impl NormingConstants {
    /// Checked constructor.
    pub fn new(a: f64, b: f64, method: Method, n: u64) -> Result<Self> {
        if !(a > 0.0 && a.is_finite()) || !b.is_finite() {
            return Err(Error::Validity("norming scale must be positive and finite"));
        }
        Ok(Self { a, b, method, n })
    }

    /// Scale `a_n`.
    pub fn a(&self) -> f64 {
        self.a
    }
    /// Location `b_n`.
    pub fn b(&self) -> f64 {
        self.b
    }
    /// Tier.
    pub fn method(&self) -> Method {
        self.method
    }
    /// Sample size.
    pub fn n(&self) -> u64 {
        self.n
    }

    /// `(x - b) / a`.
    pub fn normalize(&self, x: f64) -> f64 {
        (x - self.b) / self.a
    }

    /// `a z + b`.
    pub fn denormalize(&self, z: f64) -> f64 {
        self.a * z + self.b
    }

    /// Same constants with the scale multiplied by `factor`.
    pub fn with_scale_factor(&self, factor: f64) -> Result<Self> {
        Self::new(self.a * factor, self.b, self.method, self.n)
    }
}

/// A distribution in the Gumbel domain of attraction handled here.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Model {
    /// Generalized Weibull tail.
    Weibull(GeneralizedWeibull),
    /// Gamma law.
    Gamma(GammaParams),
}

impl Model {
    /// `F(x)`.
    pub fn cdf(&self, x: f64) -> f64 {
        match self {
            Self::Weibull(d) => d.cdf(x),
            Self::Gamma(g) => g.cdf(x),
        }
    }

    /// `ln F(x)`.
    pub fn ln_cdf(&self, x: f64) -> f64 {
        match self {
            Self::Weibull(d) => d.ln_cdf(x),
            Self::Gamma(g) => g.ln_cdf(x),
        }
    }

    /// `F^{-1}(u)`.
    pub fn quantile(&self, u: f64) -> Result<f64> {
        match self {
            Self::Weibull(d) => d.quantile(u),
            Self::Gamma(g) => g.quantile(u),
        }
    }

    /// Auxiliary function; the first tail-equivalent form for Gamma.
    pub fn auxiliary(&self, x: f64) -> Result<f64> {
        match self {
            Self::Weibull(d) => d.auxiliary(x),
            Self::Gamma(g) => g.auxiliary(x),
        }
    }

    /// Shape of the tail as generalized Weibull parameters `(K, C, τ, α)`;
    /// for Gamma those of the first tail-equivalent form.
    pub fn tail_shape(&self) -> (f64, f64, f64, f64) {
        match self {
            Self::Weibull(d) => (d.k(), d.c(), d.tau(), d.alpha()),
            Self::Gamma(g) => (g.tail_constant(), 1.0 / g.theta(), 1.0, g.nu() - 1.0),
        }
    }
}

/// Which expansion an improved constant is read from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ExpansionPath {
    /// Secondary Lambert branch `W_{-1}` or `W_{-1,E}`.
    Lambert,
    /// Comtet inverse `U_γ` or `U_{γ,D}`.
    Comtet,
}

impl ExpansionPath {
    /// The path the improved constants use by default: Lambert when
    /// `α > τ` (Gamma: `ν > 2`), Comtet otherwise.
    pub fn preferred(model: &Model) -> Self {
        match model {
            Model::Weibull(d) if d.alpha() > d.tau() => Self::Lambert,
            Model::Gamma(g) if g.nu() > 2.0 => Self::Lambert,
            _ => Self::Comtet,
        }
    }
}

fn ln_n(n: u64, min: u64) -> Result<f64> {
    if n < min {
        return Err(Error::Validity(if min == 2 {
            "sample size must be at least 2"
        } else {
            "sample size must be at least 3"
        }));
    }
    Ok(ln(n as f64))
}

/// Exact constants: `b_n = F^{-1}(1 - 1/n)`, `a_n = A(b_n)`.
///
/// For Gamma `b_n` uses the true Gamma quantile while `a_n` is the first
/// tail-equivalent auxiliary `b/(b/θ - ν + 1)`.
pub fn exact(model: &Model, n: u64) -> Result<NormingConstants> {
    let (a, b) = exact_ln(model, ln_n(n, 2)?)?;
    NormingConstants::new(a, b, Method::Exact, n)
}

pub(crate) fn exact_ln(model: &Model, l: f64) -> Result<(f64, f64)> {
    let b = match model {
        Model::Weibull(d) => d.tail_quantile_ln(-l)?,
        Model::Gamma(g) => g.tail_quantile(crate::math::exp(-l))?,
    };
    Ok((model.auxiliary(b)?, b))
}

/// Standard two-term constants.
///
/// Generalized Weibull, with `ℓ = ln n / C`:
/// `b = ℓ^{1/τ} + τ^{-1} ℓ^{1/τ-1} (α/(Cτ) ln ℓ + ln K / C)`,
/// `a = (Cτ)^{-1} ℓ^{1/τ-1}`.
/// Gamma: `b = θ(ln n + (ν-1) ln ln n - ln Γ(ν))`, `a = θ`.
pub fn standard(model: &Model, n: u64) -> Result<NormingConstants> {
    let (a, b) = standard_ln(model, ln_n(n, 3)?);
    NormingConstants::new(a, b, Method::Standard, n)
}

pub(crate) fn standard_ln(model: &Model, l: f64) -> (f64, f64) {
    match model {
        Model::Weibull(d) => {
            let (k, c, tau, alpha) = (d.k(), d.c(), d.tau(), d.alpha());
            let ell = l / c;
            let lead = powf(ell, 1.0 / tau);
            let slope = powf(ell, 1.0 / tau - 1.0);
            let b = lead + slope / tau * (alpha / (c * tau) * ln(ell) + ln(k) / c);
            (slope / (c * tau), b)
        }
        Model::Gamma(g) => {
            let theta = g.theta();
            let b = theta * (l + (g.nu() - 1.0) * ln(l) - g.ln_gamma_nu());
            (theta, b)
        }
    }
}

/// Improved constants from the closed three-term formulas.
pub fn improved(model: &Model, n: u64) -> Result<NormingConstants> {
    match model {
        Model::Weibull(d) => improved_weibull(d, n),
        Model::Gamma(g) => improved_gamma(g, n),
    }
}

#[cfg(test)]
pub(crate) fn improved_ln(model: &Model, l: f64) -> Result<(f64, f64)> {
    let b = match model {
        Model::Weibull(d) => improved_weibull_location(d, l)?,
        Model::Gamma(g) => improved_gamma_location(g, l)?,
    };
    Ok((model.auxiliary(b)?, b))
}

/// Improved constants for a generalized Weibull law.
///
/// For `α > τ`: `b = (α/(Cτ))^{1/τ} (-M1 + M2 - M2/M1)^{1/τ}` with
/// `M1 = ln(Cτ/α) - (τ/α) ln(Kn)`, `M2 = ln(-M1)`, valid for `M1 < -1`.
/// For `α ≤ τ`: `b = C^{-1/τ} (N1 + (α/τ) N2 + (α/τ)² N2/N1)^{1/τ}` with
/// `N1 = ln(Kn) - (α/τ) ln C`, `N2 = ln N1`, valid for `N1 > 1`.
/// In both cases `a = 1/(Cτ b^{τ-1} - α/b)`.
pub fn improved_weibull(d: &GeneralizedWeibull, n: u64) -> Result<NormingConstants> {
    let b = improved_weibull_location(d, ln_n(n, 2)?)?;
    NormingConstants::new(d.auxiliary(b)?, b, Method::Improved, n)
}

fn improved_weibull_location(d: &GeneralizedWeibull, l: f64) -> Result<f64> {
    let (k, c, tau, alpha) = (d.k(), d.c(), d.tau(), d.alpha());
    let inner = if alpha > tau {
        let m1 = ln(c * tau / alpha) - tau / alpha * (ln(k) + l);
        if !(m1 < -1.0) {
            return Err(Error::Validity("Lambert expansion needs M1 < -1"));
        }
        let m2 = ln(-m1);
        alpha / (c * tau) * (-m1 + m2 - m2 / m1)
    } else {
        let beta = alpha / tau;
        let n1 = ln(k) + l - beta * ln(c);
        if !(n1 > 1.0) {
            return Err(Error::Validity("Comtet expansion needs N1 > 1"));
        }
        let n2 = ln(n1);
        (n1 + beta * n2 + beta * beta * n2 / n1) / c
    };
    Ok(powf(inner, 1.0 / tau))
}

/// Improved constants for a Gamma law.
///
/// For `ν ≤ 2`, with `y = ln n - ln Γ(ν) > 1`:
/// `b = θ(y + (ν-1) ln y + ((ν-1)² ln y + ν - 1)/y)`.
/// For `ν > 2`, with `B = ln n + (ν-1) ln(ν-1) - ln Γ(ν) > ν - 1`:
/// `b = θ(ln n + (ν-1) ln B - ln Γ(ν)
///       + ((ν-1)² ln B - (ν-1)² ln(ν-1) + ν - 1)/B)`.
/// In both cases `a = b/(b/θ - ν + 1)`.
pub fn improved_gamma(g: &GammaParams, n: u64) -> Result<NormingConstants> {
    let b = improved_gamma_location(g, ln_n(n, 3)?)?;
    NormingConstants::new(g.auxiliary(b)?, b, Method::Improved, n)
}

fn improved_gamma_location(g: &GammaParams, l: f64) -> Result<f64> {
    let (nu, theta, lg) = (g.nu(), g.theta(), g.ln_gamma_nu());
    let m = nu - 1.0;
    if nu <= 2.0 {
        let y = l - lg;
        if !(y > 1.0) {
            return Err(Error::Validity(
                "Comtet expansion needs ln(n/Gamma(nu)) > 1",
            ));
        }
        let ly = ln(y);
        Ok(theta * (y + m * ly + (m * m * ly + m) / y))
    } else {
        let big_b = l + m * ln(m) - lg;
        if !(big_b > m) {
            return Err(Error::Validity("Lambert expansion needs B > nu - 1"));
        }
        let lb = ln(big_b);
        Ok(theta * (l + m * lb - lg + (m * m * lb - m * m * ln(m) + m) / big_b))
    }
}

/// Improved-type constants from the expansion truncated at `order`, along
/// the preferred path. Order 1 reproduces [`improved`].
pub fn constants_via_expansion(
    model: &Model,
    n: u64,
    order: ExpansionOrder,
) -> Result<NormingConstants> {
    constants_via_path(model, n, ExpansionPath::preferred(model), order)
}

/// Improved-type constants from the expansion along `path`.
pub fn constants_via_path(
    model: &Model,
    n: u64,
    path: ExpansionPath,
    order: ExpansionOrder,
) -> Result<NormingConstants> {
    if order.get() > 6 {
        return Err(Error::InvalidParameters("expansion order above 6"));
    }
    let l = ln_n(n, 2)?;
    let b = match model {
        Model::Weibull(d) => weibull_location(d, l, path, order)?,
        Model::Gamma(g) => gamma_location(g, l, path, order)?,
    };
    NormingConstants::new(model.auxiliary(b)?, b, Method::Improved, n)
}

fn weibull_location(
    d: &GeneralizedWeibull,
    l: f64,
    path: ExpansionPath,
    order: ExpansionOrder,
) -> Result<f64> {
    let (k, c, tau, alpha) = (d.k(), d.c(), d.tau(), d.alpha());
    let beta = alpha / tau;
    let y = match path {
        // b^τ = (α/(Cτ)) (-W_{-1}(z)), ln(-z) = ln(Cτ/α) - (τ/α) ln(Kn)
        ExpansionPath::Lambert => {
            let m1 = ln(c * tau / alpha) - (ln(k) + l) / beta;
            if !(m1 < -1.0) {
                return Err(Error::Validity("Lambert expansion needs M1 < -1"));
            }
            -beta / c * w_secondary_expansion_from_log(m1, order)?.value
        }
        // b^τ = U_{-α/τ}(Kn / C^{α/τ}) / C
        ExpansionPath::Comtet => {
            let n1 = ln(k) + l - beta * ln(c);
            if !(n1 > 1.0) {
                return Err(Error::Validity("Comtet expansion needs N1 > 1"));
            }
            let one = PowerSeries::one(order.get());
            u_gamma_d_expansion_from_log(-beta, &one, n1, order)?.value / c
        }
    };
    if !(y > 0.0) {
        return Err(Error::Validity("expansion gave a nonpositive location"));
    }
    Ok(powf(y, 1.0 / tau))
}

fn gamma_location(
    g: &GammaParams,
    l: f64,
    path: ExpansionPath,
    order: ExpansionOrder,
) -> Result<f64> {
    let (nu, theta, lg) = (g.nu(), g.theta(), g.ln_gamma_nu());
    let m = nu - 1.0;
    match path {
        // b = θ U_{1-ν,D}(n/Γ(ν)), D(t) = (1 + (ν-1)t)^{-1}
        ExpansionPath::Comtet => {
            let y = l - lg;
            if !(y > 1.0) {
                return Err(Error::Validity(
                    "Comtet expansion needs ln(n/Gamma(nu)) > 1",
                ));
            }
            let d = Perturbation::Power {
                slope: m,
                exponent: -1.0,
            }
            .to_series(order.get())?;
            Ok(theta * u_gamma_d_expansion_from_log(1.0 - nu, &d, y, order)?.value)
        }
        // b = -(ν-1)θ W_{-1,E}(z), E(t) = (1 - t)^{1/(ν-1)}, ln(-z) = -B/(ν-1)
        ExpansionPath::Lambert => {
            let big_b = l + m * ln(m) - lg;
            if !(big_b > m) {
                return Err(Error::Validity("Lambert expansion needs B > nu - 1"));
            }
            let e = Perturbation::Power {
                slope: -1.0,
                exponent: 1.0 / m,
            }
            .to_series(order.get())?;
            Ok(-m * theta * w_secondary_d_expansion_from_log(&e, -big_b / m, order)?.value)
        }
    }
}

/// Constants of the given tier, with improved constants from the closed
/// formulas.
pub fn constants(model: &Model, method: Method, n: u64) -> Result<NormingConstants> {
    match method {
        Method::Exact => exact(model, n),
        Method::Standard => standard(model, n),
        Method::Improved => improved(model, n),
    }
}
