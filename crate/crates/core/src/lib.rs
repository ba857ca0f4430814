//! Norming constants for maxima of Weibull-like distributions.
//!
//! The centering constant `b_n = F^{-1}(1 - 1/n)` of a generalized Weibull
//! tail `K x^α exp(-C x^τ)` is a value of the secondary real branch of the
//! Lambert W function. Truncating its asymptotic expansion one term later than
//! the textbook constants gives much better constants at practical sample
//! sizes. For Gamma laws the same idea is applied to a refined tail
//! equivalent, which needs the inverses `U_{γ,D}` and `W_{-1,D}` of perturbed
//! equations `t^γ e^t D(1/t) = x`.
//!
//! Modules:
//! * [`special_fn`]: Lambert W branches, `ln Γ`, regularized `Q(a, y)` and
//!   its inverse.
//! * [`series`]: truncated power series and dense polynomials.
//! * [`asymptotic`]: polynomials `P_n`, `Q_n`, `R_n`, truncated
//!   expansions and root-found evaluators of the generalized inverses.
//! * [`distributions`]: generalized Weibull, Gamma, tail equivalents, Gumbel.
//! * [`norming`]: exact, standard and improved norming constants.
//! * [`convergence`]: distance-to-Gumbel diagnostics and the KS statistic.
//! * [`simulate`]: seeded inversion sampling and maxima experiments.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]
#![deny(missing_docs)]
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

#[cfg(test)]
extern crate std;

mod error;
mod math;

pub mod asymptotic;
pub mod convergence;
pub mod distributions;
pub mod norming;
pub mod roots;
pub mod series;
pub mod simulate;
pub mod special_fn;

pub use self::error::{Error, Result};
