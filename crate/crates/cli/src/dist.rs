//! Distribution specs: `--gw K=e,C=1,tau=1,alpha=1,x0=1`, `--gamma nu=2,theta=1`, `--chi2 10`.

use evt_core::distributions::{GammaParams, GeneralizedWeibull};
use evt_core::norming::Model;

use crate::error::{CliError, Result};
use crate::number::{fmt, parse_real};

/// A parsed parent law plus the text it came from.
#[derive(Debug, Clone, PartialEq)]
pub struct DistSpec {
    /// Parsed model.
    pub model: Model,
    /// Canonical description, echoed in output headers.
    pub label: String,
}

fn key_values<'a>(s: &'a str, allowed: &[&str]) -> Result<Vec<(&'a str, f64)>> {
    let mut out: Vec<(&str, f64)> = Vec::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (k, v) = part
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("expected key=value, got {part:?}")))?;
        let k = k.trim();
        if !allowed.contains(&k) {
            return Err(CliError::Usage(format!(
                "unknown key {k:?}; expected one of {}",
                allowed.join(",")
            )));
        }
        if out.iter().any(|(seen, _)| *seen == k) {
            return Err(CliError::Usage(format!("duplicate key {k:?}")));
        }
        out.push((k, parse_real(v)?));
    }
    Ok(out)
}

fn lookup(kv: &[(&str, f64)], key: &str) -> Option<f64> {
    kv.iter().find(|(k, _)| *k == key).map(|&(_, v)| v)
}

fn require(kv: &[(&str, f64)], key: &str) -> Result<f64> {
    lookup(kv, key).ok_or_else(|| CliError::Usage(format!("missing key {key:?}")))
}

/// `K=..,C=..,tau=..,alpha=..[,x0=..]`; without `x0` the smallest admissible one.
pub fn parse_gw(s: &str) -> Result<DistSpec> {
    let kv = key_values(s, &["K", "C", "tau", "alpha", "x0"])?;
    let (k, c, tau, alpha) = (
        require(&kv, "K")?,
        require(&kv, "C")?,
        require(&kv, "tau")?,
        require(&kv, "alpha")?,
    );
    let x0 = match lookup(&kv, "x0") {
        Some(x0) => x0,
        None => GeneralizedWeibull::support_start(k, c, tau, alpha)?,
    };
    let d = GeneralizedWeibull::new(k, c, tau, alpha, x0)?;
    Ok(DistSpec {
        model: Model::Weibull(d),
        label: format!(
            "gw(K={},C={},tau={},alpha={},x0={})",
            fmt(k),
            fmt(c),
            fmt(tau),
            fmt(alpha),
            fmt(x0)
        ),
    })
}

/// `nu=..,theta=..`.
pub fn parse_gamma(s: &str) -> Result<DistSpec> {
    let kv = key_values(s, &["nu", "theta"])?;
    let (nu, theta) = (require(&kv, "nu")?, require(&kv, "theta")?);
    Ok(DistSpec {
        model: Model::Gamma(GammaParams::new(nu, theta)?),
        label: format!("gamma(nu={},theta={})", fmt(nu), fmt(theta)),
    })
}

/// Degrees of freedom.
pub fn parse_chi2(s: &str) -> Result<DistSpec> {
    let m = parse_real(s)?;
    Ok(DistSpec {
        model: Model::Gamma(GammaParams::chi2(m)?),
        label: format!("chi2({})", fmt(m)),
    })
}

/// Exactly one of the three flags.
pub fn from_flags(gw: Option<&str>, gamma: Option<&str>, chi2: Option<&str>) -> Result<DistSpec> {
    match (gw, gamma, chi2) {
        (Some(s), None, None) => parse_gw(s),
        (None, Some(s), None) => parse_gamma(s),
        (None, None, Some(s)) => parse_chi2(s),
        (None, None, None) => Err(CliError::Usage(
            "one of --gw, --gamma, --chi2 is required".into(),
        )),
        _ => Err(CliError::Usage(
            "give only one of --gw, --gamma, --chi2".into(),
        )),
    }
}

/// The simple law `1 - e x e^{-x}`, `x ≥ 1`.
pub fn simple() -> DistSpec {
    parse_gw("K=e,C=1,tau=1,alpha=1,x0=1").expect("valid literal")
}
