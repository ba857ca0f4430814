//! One function per subcommand, each returning an [`OutputRecord`].

use rayon::prelude::*;

use evt_core::asymptotic::{
    lambert_and_comtet, power_exp_root, u_gamma_d_expansion, u_gamma_d_numeric, ExpansionOrder,
    Perturbation,
};
use evt_core::convergence::{a_optimality_scan, ks_gumbel, perturbation_check, rate_check, Grid};
use evt_core::distributions::{gumbel_pdf, GammaParams};
use evt_core::norming::{constants, Method, Model};
use evt_core::series::PowerSeries;
use evt_core::simulate::{normalize_maxima, replicate_maximum};
use evt_core::special_fn::{lambert_w, Branch};

use crate::dist::{simple, DistSpec};
use crate::error::{CliError, Result};
use crate::number::fmt;
use crate::published;
use crate::record::OutputRecord;

/// Parses `exact,standard,improved`.
pub fn parse_methods(s: &str) -> Result<Vec<Method>> {
    s.split(',')
        .map(str::trim)
        .map(|m| match m {
            "exact" => Ok(Method::Exact),
            "standard" => Ok(Method::Standard),
            "improved" => Ok(Method::Improved),
            other => Err(CliError::Usage(format!("unknown method {other:?}"))),
        })
        .collect()
}

fn join_sizes(ns: &[u64]) -> String {
    ns.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
}

fn join_methods(ms: &[Method]) -> String {
    ms.iter().map(|m| m.name()).collect::<Vec<_>>().join(",")
}

/// `b` and `a` per requested method, one row per `n`.
pub fn cmd_constants(dist: &DistSpec, ns: &[u64], methods: &[Method]) -> Result<OutputRecord> {
    let mut cols = vec!["n".to_string()];
    for m in methods {
        cols.push(format!("b_{}", m.name()));
        cols.push(format!("a_{}", m.name()));
    }
    let mut rec = OutputRecord::new("constants", &[]);
    rec.columns = cols;
    rec.param("dist", &dist.label)
        .param("n", join_sizes(ns))
        .param("methods", join_methods(methods));
    for &n in ns {
        let mut row = vec![n as f64];
        for &m in methods {
            let c = constants(&dist.model, m, n)?;
            row.extend([c.b(), c.a()]);
        }
        rec.push(row);
    }
    Ok(rec)
}

/// Which published table to reproduce.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableId {
    /// Location constants of the simple law.
    SimpleB,
    /// Location constants of `χ²(10)`.
    Chi2B,
    /// Scale constants of `χ²(10)`.
    Chi2A,
    /// Numeric root against its Lambert and Comtet approximations.
    Roots,
}

impl TableId {
    /// From the table number `1..=4`.
    pub fn from_number(k: u32) -> Result<Self> {
        match k {
            1 => Ok(Self::SimpleB),
            2 => Ok(Self::Chi2B),
            3 => Ok(Self::Chi2A),
            4 => Ok(Self::Roots),
            _ => Err(CliError::Usage(format!(
                "no table {k}; expected 1, 2, 3 or 4"
            ))),
        }
    }
}

const METHODS: [Method; 3] = [Method::Exact, Method::Standard, Method::Improved];

fn comparison_columns(stems: &[&str]) -> Vec<String> {
    stems
        .iter()
        .flat_map(|s| [s.to_string(), format!("{s}_pub"), format!("{s}_diff")])
        .collect()
}

/// A published table next to our values and the absolute differences.
pub fn cmd_table(id: TableId) -> Result<OutputRecord> {
    let mut rec = OutputRecord::new("table", &[]);
    let mut worst = 0.0f64;
    let mut triple = |row: &mut Vec<f64>, ours: f64, theirs: f64| {
        let diff = (ours - theirs).abs();
        worst = worst.max(diff);
        row.extend([ours, theirs, diff]);
    };
    match id {
        TableId::SimpleB | TableId::Chi2B | TableId::Chi2A => {
            let (model, table, stem, dist) = match id {
                TableId::SimpleB => (
                    simple().model,
                    &published::SIMPLE_B,
                    "b",
                    "gw(K=e,C=1,tau=1,alpha=1,x0=1)",
                ),
                TableId::Chi2B => (
                    Model::Gamma(GammaParams::chi2(10.0)?),
                    &published::CHI2_B,
                    "b",
                    "chi2(10)",
                ),
                _ => (
                    Model::Gamma(GammaParams::chi2(10.0)?),
                    &published::CHI2_A,
                    "a",
                    "chi2(10)",
                ),
            };
            let stems: Vec<String> = METHODS
                .iter()
                .map(|m| format!("{stem}_{}", m.name()))
                .collect();
            let stems: Vec<&str> = stems.iter().map(String::as_str).collect();
            rec.columns = std::iter::once("n".to_string())
                .chain(comparison_columns(&stems))
                .collect();
            rec.param("dist", dist);
            for (j, &n) in published::SIZES.iter().enumerate() {
                let mut row = vec![n as f64];
                for (i, &m) in METHODS.iter().enumerate() {
                    let c = constants(&model, m, n)?;
                    let ours = if stem == "b" { c.b() } else { c.a() };
                    triple(&mut row, ours, table[i][j]);
                }
                rec.push(row);
            }
        }
        TableId::Roots => {
            rec.columns = ["beta", "x"]
                .into_iter()
                .map(String::from)
                .chain(comparison_columns(&["t", "t_w", "t_c"]))
                .collect();
            rec.param("equation", "t^beta exp(-t) = x");
            for (bi, &beta) in published::ROOT_BETA.iter().enumerate() {
                for (j, &x) in published::ROOT_X.iter().enumerate() {
                    let t = power_exp_root(beta, x)?;
                    let (w, c) = lambert_and_comtet(beta, x, ExpansionOrder::ONE)?;
                    let mut row = vec![beta, x];
                    let tab = &published::ROOT_T[bi];
                    triple(&mut row, t, tab[0][j]);
                    triple(&mut row, w.value, tab[1][j]);
                    triple(&mut row, c.value, tab[2][j]);
                    rec.push(row);
                }
            }
        }
    }
    rec.summarize("max_abs_diff", worst);
    Ok(rec)
}

/// Settings of the `simulate` command.
#[derive(Debug, Clone, PartialEq)]
pub struct SimulateArgs {
    /// Parent law.
    pub dist: DistSpec,
    /// Block size.
    pub n: u64,
    /// Number of maxima.
    pub reps: usize,
    /// Generator seed.
    pub seed: u64,
    /// Normalizations applied to the same maxima.
    pub methods: Vec<Method>,
}

/// Histogram range and bin count.
pub const HIST_RANGE: (f64, f64) = (-4.0, 8.0);
/// Bins over [`HIST_RANGE`].
pub const HIST_BINS: usize = 50;

/// Normalized maxima per method, and their histogram.
pub fn cmd_simulate(args: &SimulateArgs) -> Result<(OutputRecord, OutputRecord)> {
    if args.n == 0 || args.reps == 0 || args.methods.is_empty() {
        return Err(CliError::Usage(
            "need n >= 1, reps >= 1 and at least one method".into(),
        ));
    }
    let model = args.dist.model;
    let consts: Vec<_> = args
        .methods
        .iter()
        .map(|&m| constants(&model, m, args.n))
        .collect::<evt_core::Result<_>>()?;
    let raw: Vec<f64> = (0..args.reps as u64)
        .into_par_iter()
        .map(|r| replicate_maximum(&model, args.n, args.seed, r))
        .collect::<evt_core::Result<_>>()?;

    let mut cols = vec!["rep".to_string(), "raw".to_string()];
    cols.extend(args.methods.iter().map(|m| format!("y_{}", m.name())));
    let mut maxima = OutputRecord::new("simulate", &[]);
    maxima.columns = cols;
    maxima
        .param("dist", &args.dist.label)
        .param("n", args.n)
        .param("reps", args.reps)
        .param("seed", args.seed)
        .param("methods", join_methods(&args.methods));

    let outputs: Vec<_> = consts
        .iter()
        .map(|&c| normalize_maxima(raw.clone(), c))
        .collect();
    for (m, (c, o)) in args.methods.iter().zip(consts.iter().zip(&outputs)) {
        let mut sorted = o.normalized.clone();
        sorted.sort_by(f64::total_cmp);
        maxima
            .summarize(&format!("b_{}", m.name()), c.b())
            .summarize(&format!("a_{}", m.name()), c.a())
            .summarize(&format!("ks_{}", m.name()), ks_gumbel(&sorted)?);
    }
    for (i, &x) in raw.iter().enumerate() {
        let mut row = vec![i as f64, x];
        row.extend(outputs.iter().map(|o| o.normalized[i]));
        maxima.push(row);
    }

    let (lo, hi) = HIST_RANGE;
    let width = (hi - lo) / HIST_BINS as f64;
    let mut hcols = vec![
        "bin_lo".to_string(),
        "bin_hi".to_string(),
        "gumbel_density".to_string(),
    ];
    hcols.extend(args.methods.iter().map(|m| format!("density_{}", m.name())));
    let mut hist = OutputRecord::new("simulate --hist", &[]);
    hist.columns = hcols;
    hist.params = maxima.params.clone();
    let counts: Vec<Vec<usize>> = outputs
        .iter()
        .map(|o| {
            let mut c = vec![0usize; HIST_BINS];
            for &y in &o.normalized {
                let k = ((y - lo) / width).floor();
                if k >= 0.0 && (k as usize) < HIST_BINS {
                    c[k as usize] += 1;
                }
            }
            c
        })
        .collect();
    for k in 0..HIST_BINS {
        let a = lo + k as f64 * width;
        let mut row = vec![a, a + width, gumbel_pdf(a + 0.5 * width)];
        row.extend(
            counts
                .iter()
                .map(|c| c[k] as f64 / (args.reps as f64 * width)),
        );
        hist.push(row);
    }
    Ok((maxima, hist))
}

/// What `diagnose` reports.
#[derive(Debug, Clone, PartialEq)]
pub enum Diagnosis {
    /// Sup-distance along `ns` for one method.
    Rate {
        /// Constants tier.
        method: Method,
        /// Sample sizes.
        ns: Vec<u64>,
    },
    /// Gap between the exact constants and `method`.
    Perturbation {
        /// Constants tier compared with the exact one.
        method: Method,
        /// Sample sizes.
        ns: Vec<u64>,
    },
    /// Sup-distance of `â = 1/C + δ/b` over `deltas`.
    OptimalA {
        /// Sample size.
        n: u64,
        /// Scanned offsets.
        deltas: Vec<f64>,
    },
}

/// Convergence diagnostics.
pub fn cmd_diagnose(dist: &DistSpec, what: &Diagnosis, grid: &Grid) -> Result<OutputRecord> {
    let mut rec = OutputRecord::new("diagnose", &[]);
    rec.param("dist", &dist.label).param(
        "xgrid",
        format!("{}:{}:{}", fmt(grid.lo()), fmt(grid.hi()), grid.len()),
    );
    match what {
        Diagnosis::Rate { method, ns } => {
            let report = rate_check(&dist.model, *method, ns, grid)?;
            rec.columns = ["n", "b", "a", "sup_err", "scaled_err", "scaled_b"]
                .into_iter()
                .map(String::from)
                .collect();
            rec.param("method", method.name())
                .param("ngrid", join_sizes(ns));
            for r in &report.rows {
                let c = r.constants;
                rec.push(vec![
                    c.n() as f64,
                    c.b(),
                    c.a(),
                    r.sup_err,
                    r.scaled_log,
                    r.scaled_b,
                ]);
            }
            rec.summarize("band_ratio", report.band_ratio());
        }
        Diagnosis::Perturbation { method, ns } => {
            let rows = perturbation_check(&dist.model, ns, grid, |n| {
                constants(&dist.model, *method, n)
            })?;
            rec.columns = ["n", "shift", "power_gap", "ratio_gap", "sup_err"]
                .into_iter()
                .map(String::from)
                .collect();
            rec.param("against", method.name())
                .param("ngrid", join_sizes(ns));
            for r in rows {
                rec.push(vec![
                    r.n as f64,
                    r.shift,
                    r.power_gap,
                    r.ratio_gap,
                    r.sup_err,
                ]);
            }
        }
        Diagnosis::OptimalA { n, deltas } => {
            let scan = a_optimality_scan(&dist.model, deltas, *n, grid)?;
            rec.columns = vec!["delta".into(), "sup_err".into()];
            rec.param("n", n);
            for &(d, e) in &scan.entries {
                rec.push(vec![d, e]);
            }
            rec.summarize("best_delta", scan.best_delta)
                .summarize("predicted_delta", scan.predicted_delta);
        }
    }
    Ok(rec)
}

/// `W_k(x)` with the relative residual of `w e^w = x`.
pub fn cmd_lambert(branch: Branch, xs: &[f64]) -> Result<OutputRecord> {
    let mut rec = OutputRecord::new("lambert", &["x", "w", "residual"]);
    rec.param(
        "branch",
        match branch {
            Branch::Principal => "0",
            Branch::Secondary => "-1",
        },
    );
    for &x in xs {
        let w = lambert_w(branch, x)?;
        let back = w * w.exp();
        let residual = if x == 0.0 { back } else { (back - x) / x };
        rec.push(vec![x, w, residual]);
    }
    Ok(rec)
}

/// How `cmd_ugamma` evaluates the root.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UgammaMode {
    /// Root finding.
    Numeric,
    /// Truncated expansion.
    Expansion,
}

/// Settings of the `ugamma` command.
#[derive(Debug, Clone, PartialEq)]
pub struct UgammaArgs {
    /// Exponent `γ`.
    pub gamma: f64,
    /// `D(t) = d0 + d1 t`.
    pub d: [f64; 2],
    /// Right-hand sides.
    pub xs: Vec<f64>,
    /// Truncation order of the expansion.
    pub order: usize,
    /// Evaluation mode.
    pub mode: UgammaMode,
}

/// Large root of `t^γ e^t D(1/t) = x`, with the log-equation residual.
pub fn cmd_ugamma(args: &UgammaArgs) -> Result<OutputRecord> {
    let series = PowerSeries::new(args.d);
    let d = Perturbation::Series(&series);
    let mut rec = OutputRecord::new("ugamma", &["x", "u", "residual", "ratio"]);
    rec.param("gamma", fmt(args.gamma))
        .param("d0", fmt(args.d[0]))
        .param("d1", fmt(args.d[1]))
        .param("order", args.order)
        .param(
            "mode",
            match args.mode {
                UgammaMode::Numeric => "numeric",
                UgammaMode::Expansion => "expansion",
            },
        );
    let order = ExpansionOrder::new(args.order)?;
    for &x in &args.xs {
        let (u, ratio) = match args.mode {
            UgammaMode::Numeric => (u_gamma_d_numeric(args.gamma, &d, x)?, f64::NAN),
            UgammaMode::Expansion => {
                let e = u_gamma_d_expansion(args.gamma, &series, x, order)?;
                (e.value, e.ratio)
            }
        };
        let residual = args.gamma * u.ln() + u + d.value(1.0 / u).ln() - x.ln();
        rec.push(vec![x, u, residual, ratio]);
    }
    Ok(rec)
}
