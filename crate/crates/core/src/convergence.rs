//! Distances between the law of normalized maxima and the Gumbel law.

use alloc::vec::Vec;

use crate::distributions::gumbel_cdf;
use crate::math::{abs, exp, ln, ln_1p, powf};
use crate::norming::{constants, exact, Method, Model, NormingConstants};
use crate::{Error, Result};

/// Equally spaced evaluation points on `[lo, hi]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    lo: f64,
    hi: f64,
    points: usize,
}

impl Grid {
    /// Checked constructor; needs `lo < hi` and at least two points.
    pub fn new(lo: f64, hi: f64, points: usize) -> Result<Self> {
        if !(lo < hi) || !lo.is_finite() || !hi.is_finite() || points < 2 {
            return Err(Error::InvalidParameters(
                "grid needs lo < hi and two or more points",
            ));
        }
        Ok(Self { lo, hi, points })
    }

    /// Lower end.
    pub fn lo(&self) -> f64 {
        self.lo
    }
    /// Upper end.
    pub fn hi(&self) -> f64 {
        self.hi
    }
    /// Number of points.
    pub fn len(&self) -> usize {
        self.points
    }
    /// Always false; a grid has at least two points.
    pub fn is_empty(&self) -> bool {
        false
    }

    /// The `i`-th point.
    pub fn point(&self, i: usize) -> f64 {
        if i + 1 == self.points {
            return self.hi;
        }
        self.lo + (self.hi - self.lo) * i as f64 / (self.points - 1) as f64
    }

    /// All points in order.
    pub fn iter(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.points).map(|i| self.point(i))
    }
}

impl Default for Grid {
    /// 201 points on `[-3, 6]`.
    fn default() -> Self {
        Self {
            lo: -3.0,
            hi: 6.0,
            points: 201,
        }
    }
}

/// `F^n(x)` evaluated as `exp(n ln F(x))`.
pub fn cdf_of_maximum(model: &Model, n: u64, x: f64) -> f64 {
    exp(n as f64 * model.ln_cdf(x))
}

/// `max_x |F^n(a x + b) - Λ(x)|` over the grid.
pub fn sup_distance(model: &Model, c: &NormingConstants, grid: &Grid) -> Result<f64> {
    let mut worst = 0.0f64;
    for x in grid.iter() {
        let d = abs(cdf_of_maximum(model, c.n(), c.denormalize(x)) - gumbel_cdf(x));
        if !d.is_finite() {
            return Err(Error::domain("sup_distance", "non-finite distance"));
        }
        worst = worst.max(d);
    }
    Ok(worst)
}

/// One sample size in a [`RateReport`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateRow {
    /// Constants used.
    pub constants: NormingConstants,
    /// Sup-distance over the grid.
    pub sup_err: f64,
    /// `sup_err · ln n`.
    pub scaled_log: f64,
    /// `sup_err · b^τ`.
    pub scaled_b: f64,
}

/// Sup-distances along a sequence of sample sizes.
#[derive(Debug, Clone, PartialEq)]
pub struct RateReport {
    /// Grid the distances were taken on.
    pub grid: Grid,
    /// Constants tier.
    pub method: Method,
    /// One row per sample size, in input order.
    pub rows: Vec<RateRow>,
}

impl RateReport {
    /// `max / min` of `sup_err · ln n` across the rows.
    pub fn band_ratio(&self) -> f64 {
        let (lo, hi) = self
            .rows
            .iter()
            .fold((f64::INFINITY, 0.0f64), |(lo, hi), r| {
                (lo.min(r.scaled_log), hi.max(r.scaled_log))
            });
        hi / lo
    }
}

/// Sup-distances for constants of one tier along `n_grid`.
pub fn rate_check(
    model: &Model,
    method: Method,
    n_grid: &[u64],
    grid: &Grid,
) -> Result<RateReport> {
    let tau = model.tail_shape().2;
    let rows = n_grid
        .iter()
        .map(|&n| {
            let c = constants(model, method, n)?;
            let sup_err = sup_distance(model, &c, grid)?;
            Ok(RateRow {
                constants: c,
                sup_err,
                scaled_log: sup_err * ln(n as f64),
                scaled_b: sup_err * powf(c.b(), tau),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(RateReport {
        grid: *grid,
        method,
        rows,
    })
}

/// How far perturbed constants sit from the exact ones, term by term.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PerturbationRow {
    /// Sample size.
    pub n: u64,
    /// `(b - b̃) / a`.
    pub shift: f64,
    /// `b^τ - b̃^τ`.
    pub power_gap: f64,
    /// `(b̃ / b)^α - 1`.
    pub ratio_gap: f64,
    /// Sup-distance with the perturbed constants.
    pub sup_err: f64,
}

/// Compares `tilde(n)` against the exact constants along `n_grid`.
pub fn perturbation_check<F>(
    model: &Model,
    n_grid: &[u64],
    grid: &Grid,
    mut tilde: F,
) -> Result<Vec<PerturbationRow>>
where
    F: FnMut(u64) -> Result<NormingConstants>,
{
    let (_, _, tau, alpha) = model.tail_shape();
    n_grid
        .iter()
        .map(|&n| {
            let e = exact(model, n)?;
            let t = tilde(n)?;
            Ok(PerturbationRow {
                n,
                shift: (e.b() - t.b()) / e.a(),
                power_gap: powf(e.b(), tau) - powf(t.b(), tau),
                ratio_gap: powf(t.b() / e.b(), alpha) - 1.0,
                sup_err: sup_distance(model, &t, grid)?,
            })
        })
        .collect()
}

/// Sup-distances for `â = 1/C + δ/b` over a grid of `δ`, with exact `b`.
#[derive(Debug, Clone, PartialEq)]
pub struct OptimalityScan {
    /// `(δ, sup-distance)` in input order.
    pub entries: Vec<(f64, f64)>,
    /// The `δ` with the smallest distance.
    pub best_delta: f64,
    /// `α / C²`, where the theory puts the minimum.
    pub predicted_delta: f64,
}

/// Scans `â_n = 1/C + δ/b_n`; needs a tail with `τ = 1`.
pub fn a_optimality_scan(
    model: &Model,
    deltas: &[f64],
    n: u64,
    grid: &Grid,
) -> Result<OptimalityScan> {
    let (_, c, tau, alpha) = model.tail_shape();
    if tau != 1.0 {
        return Err(Error::InvalidParameters("optimality scan needs tau = 1"));
    }
    if deltas.is_empty() {
        return Err(Error::InvalidParameters("empty delta grid"));
    }
    let b = exact(model, n)?.b();
    let mut entries = Vec::with_capacity(deltas.len());
    for &delta in deltas {
        let hat = NormingConstants::new(1.0 / c + delta / b, b, Method::Exact, n)?;
        entries.push((delta, sup_distance(model, &hat, grid)?));
    }
    let best_delta = entries
        .iter()
        .fold((f64::NAN, f64::INFINITY), |best, &(d, s)| {
            if s < best.1 {
                (d, s)
            } else {
                best
            }
        })
        .0;
    Ok(OptimalityScan {
        entries,
        best_delta,
        predicted_delta: alpha / (c * c),
    })
}

/// One-sample Kolmogorov–Smirnov statistic of a sorted sample against `cdf`.
pub fn ks_statistic<F: Fn(f64) -> f64>(sorted: &[f64], cdf: F) -> Result<f64> {
    if sorted.is_empty() {
        return Err(Error::domain("ks_statistic", "empty sample"));
    }
    if sorted.windows(2).any(|w| !(w[0] <= w[1])) {
        return Err(Error::domain("ks_statistic", "sample not sorted"));
    }
    let m = sorted.len() as f64;
    let mut d = 0.0f64;
    for (i, &x) in sorted.iter().enumerate() {
        let f = cdf(x);
        d = d.max(f - i as f64 / m).max((i + 1) as f64 / m - f);
    }
    Ok(d)
}

/// KS statistic against the Gumbel law.
pub fn ks_gumbel(sorted: &[f64]) -> Result<f64> {
    ks_statistic(sorted, gumbel_cdf)
}

/// `(1 + A d (1 + c)/n)^n - e^{A d} (1 + A d c)`, the remainder controlled by
/// the two-sequence lemma behind the rate.
pub fn lemma_residual(a: f64, d: f64, c: f64, n: f64) -> f64 {
    let ad = a * d;
    exp(n * ln_1p(ad * (1.0 + c) / n)) - exp(ad) * (1.0 + ad * c)
}
