//! Inversion sampling and normalized-maxima experiments.
//!
//! Every replicate draws from its own ChaCha8 stream (stream id = replicate
//! index), so results do not depend on the order replicates are run in.

use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::distributions::{GammaParams, GeneralizedWeibull};
use crate::norming::{constants, Method, Model, NormingConstants};
use crate::{Error, Result};

/// Deterministic source of uniforms on the open interval `(0, 1)`.
#[derive(Debug, Clone)]
pub struct UniformStream(ChaCha8Rng);

impl UniformStream {
    /// Stream `stream` of the generator seeded with `seed`.
    pub fn new(seed: u64, stream: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        Self(rng)
    }

    /// Next uniform, never 0 or 1.
    pub fn next_open(&mut self) -> f64 {
        // midpoint of one of 2^53 equal cells
        ((self.0.next_u64() >> 11) as f64 + 0.5) * (1.0 / (1u64 << 53) as f64)
    }
}

impl Iterator for UniformStream {
    type Item = f64;
    fn next(&mut self) -> Option<f64> {
        Some(self.next_open())
    }
}

/// `count` draws from a generalized Weibull law; uniforms below `F(x0)` map
/// to `x0`.
pub fn sample_gw(p: &GeneralizedWeibull, count: usize, seed: u64) -> Result<Vec<f64>> {
    let floor = p.cdf(p.x0());
    UniformStream::new(seed, 0)
        .take(count)
        .map(|u| {
            if u <= floor {
                Ok(p.x0())
            } else {
                p.quantile(u)
            }
        })
        .collect()
}

/// `count` draws from a Gamma law.
pub fn sample_gamma(g: &GammaParams, count: usize, seed: u64) -> Result<Vec<f64>> {
    UniformStream::new(seed, 0)
        .take(count)
        .map(|u| g.quantile(u))
        .collect()
}

fn from_tail(model: &Model, q: f64) -> Result<f64> {
    match model {
        Model::Weibull(d) => {
            if q >= d.sf(d.x0()) {
                Ok(d.x0())
            } else {
                d.tail_quantile(q)
            }
        }
        Model::Gamma(g) => g.tail_quantile(q),
    }
}

/// Maximum of `n` draws in replicate `rep`.
///
/// The maximum is `F^{-1}(1 - min U_i)`, read from the tail so that
/// precision holds however far out the maximum lies.
pub fn replicate_maximum(model: &Model, n: u64, seed: u64, rep: u64) -> Result<f64> {
    if n == 0 {
        return Err(Error::InvalidParameters("block size must be at least 1"));
    }
    let mut s = UniformStream::new(seed, rep);
    let mut q = 1.0f64;
    for _ in 0..n {
        q = q.min(s.next_open());
    }
    from_tail(model, q)
}

/// Settings of a maxima experiment.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExperimentConfig {
    model: Model,
    n: u64,
    reps: usize,
    seed: u64,
    method: Method,
}

impl ExperimentConfig {
    /// Checked constructor; `n ≥ 1` and `reps ≥ 1`.
    pub fn new(model: Model, n: u64, reps: usize, seed: u64, method: Method) -> Result<Self> {
        if n == 0 || reps == 0 {
            return Err(Error::InvalidParameters(
                "block size and replicate count must be positive",
            ));
        }
        Ok(Self {
            model,
            n,
            reps,
            seed,
            method,
        })
    }

    /// Parent law.
    pub fn model(&self) -> &Model {
        &self.model
    }
    /// Block size.
    pub fn n(&self) -> u64 {
        self.n
    }
    /// Number of maxima.
    pub fn reps(&self) -> usize {
        self.reps
    }
    /// Seed.
    pub fn seed(&self) -> u64 {
        self.seed
    }
    /// Constants tier.
    pub fn method(&self) -> Method {
        self.method
    }

    /// Same experiment with another constants tier, on the same uniforms.
    pub fn with_method(&self, method: Method) -> Self {
        Self { method, ..*self }
    }
}

/// Raw and normalized maxima of an experiment.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentOutput {
    /// Constants used for normalization.
    pub constants: NormingConstants,
    /// `M_n` per replicate, in replicate order.
    pub raw: Vec<f64>,
    /// `(M_n - b)/a` per replicate.
    pub normalized: Vec<f64>,
}

/// Raw maxima for replicates `0..reps`.
pub fn raw_maxima(model: &Model, n: u64, reps: usize, seed: u64) -> Result<Vec<f64>> {
    (0..reps as u64)
        .map(|r| replicate_maximum(model, n, seed, r))
        .collect()
}

/// Runs the experiment described by `cfg`.
pub fn maxima_experiment(cfg: &ExperimentConfig) -> Result<ExperimentOutput> {
    let c = constants(&cfg.model, cfg.method, cfg.n)?;
    let raw = raw_maxima(&cfg.model, cfg.n, cfg.reps, cfg.seed)?;
    Ok(normalize_maxima(raw, c))
}

/// Pairs raw maxima with their normalization by `c`.
pub fn normalize_maxima(raw: Vec<f64>, c: NormingConstants) -> ExperimentOutput {
    let normalized = raw.iter().map(|&m| c.normalize(m)).collect();
    ExperimentOutput {
        constants: c,
        raw,
        normalized,
    }
}
