//! Exact star numbers for small graphs.
//!
//! [`is_star_k`] decides whether a graph has a witness with at most `k`
//! intervals by exhaustive branch and bound over pair-sum orders with exact
//! linear feasibility pruning; [`star_number`] searches `k = 1, 2, ...`.
//! [`grid_upper_bound`] is an independent, much cheaper upper bound.
//!
//! With the `parallel` feature the top levels of the search run on rayon.
//! The answer is the same as the sequential one: the leftmost witness in a
//! fixed child order.

mod grid;
pub mod lp;
mod search;

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rational::int;
use crate::witness::{IntervalSet, Witness};

pub use grid::{grid_upper_bound, grid_upper_bound_with, GRID_FULL_LIMIT, GRID_SAMPLES};
pub use lp::{lp_feasible, LinearSystem, Row};

/// Default node budget per search.
pub const DEFAULT_BUDGET: u64 = 10_000_000;
/// Environment variable overriding the node budget.
pub const BUDGET_ENV: &str = "STARPCG_BUDGET";

/// Which witnesses count.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    Any,
    /// Every non-edge sum lies above the first interval.
    LeftFree,
    /// Every non-edge sum lies below the last interval.
    RightFree,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Any => "any",
            Mode::LeftFree => "left_free",
            Mode::RightFree => "right_free",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "any" => Ok(Mode::Any),
            "left-free" | "left_free" => Ok(Mode::LeftFree),
            "right-free" | "right_free" => Ok(Mode::RightFree),
            other => Err(Error::Argument(format!("unknown mode {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolverOptions {
    pub budget: u64,
    /// Use the rayon search when the `parallel` feature is enabled.
    pub parallel: bool,
    /// Worker threads; `None` uses the global pool.
    pub threads: Option<usize>,
}

impl Default for SolverOptions {
    /// Budget from `STARPCG_BUDGET` if set and valid, else [`DEFAULT_BUDGET`].
    fn default() -> Self {
        let budget = std::env::var(BUDGET_ENV)
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .unwrap_or(DEFAULT_BUDGET);
        SolverOptions {
            budget,
            parallel: cfg!(feature = "parallel"),
            threads: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Witness(Witness),
    /// The whole search space was exhausted.
    Infeasible,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub outcome: Outcome,
    pub k: usize,
    pub mode: Mode,
    pub nodes_explored: u64,
}

impl Certificate {
    pub fn witness(&self) -> Option<&Witness> {
        match &self.outcome {
            Outcome::Witness(w) => Some(w),
            Outcome::Infeasible => None,
        }
    }

    pub fn is_feasible(&self) -> bool {
        matches!(self.outcome, Outcome::Witness(_))
    }
}

/// Largest graph the exact solver accepts.
pub const SOLVER_MAX_N: usize = 16;

/// Decides whether `g` has a witness with at most `k` intervals in `mode`,
/// with default options.
pub fn is_star_k(g: &Graph, k: usize, mode: Mode) -> Result<Certificate> {
    is_star_k_with(g, k, mode, &SolverOptions::default())
}

/// As [`is_star_k`]. A tripped node budget is an [`Error::Resource`], never
/// an infeasible certificate.
pub fn is_star_k_with(
    g: &Graph,
    k: usize,
    mode: Mode,
    opts: &SolverOptions,
) -> Result<Certificate> {
    if g.n() > SOLVER_MAX_N {
        return Err(Error::Argument(format!(
            "exact solver supports at most {SOLVER_MAX_N} vertices, got {}",
            g.n()
        )));
    }
    let cert = |outcome, nodes_explored| Certificate {
        outcome,
        k,
        mode,
        nodes_explored,
    };
    if g.is_edgeless() {
        let w = Witness::new(g.clone(), vec![int(1); g.n()], IntervalSet::empty())?;
        return Ok(cert(Outcome::Witness(w), 0));
    }
    if k == 0 {
        return Ok(cert(Outcome::Infeasible, 0));
    }
    let search = search::Search::new(g, k, mode, opts.budget, opts.parallel);
    let found = in_pool(opts, || search.run())??;
    let outcome = match found {
        Some(w) => Outcome::Witness(w),
        None => Outcome::Infeasible,
    };
    Ok(cert(outcome, search.nodes_explored()))
}

#[cfg(feature = "parallel")]
fn in_pool<T: Send>(opts: &SolverOptions, f: impl FnOnce() -> T + Send) -> Result<T> {
    match opts.threads {
        Some(t) if opts.parallel => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(t)
                .build()
                .map_err(|e| Error::Resource(format!("cannot start worker threads: {e}")))?;
            Ok(pool.install(f))
        }
        _ => Ok(f()),
    }
}

#[cfg(not(feature = "parallel"))]
fn in_pool<T>(_opts: &SolverOptions, f: impl FnOnce() -> T) -> Result<T> {
    Ok(f())
}

/// Star number with default options. Edgeless graphs give `0` with an
/// interval-free witness.
pub fn star_number(g: &Graph, k_max: Option<usize>) -> Result<(usize, Witness)> {
    star_number_with(g, k_max, &SolverOptions::default())
}

/// Smallest `k <= k_max` (default `|E|`) with a witness, and that witness.
pub fn star_number_with(
    g: &Graph,
    k_max: Option<usize>,
    opts: &SolverOptions,
) -> Result<(usize, Witness)> {
    if g.is_edgeless() {
        let cert = is_star_k_with(g, 0, Mode::Any, opts)?;
        let w = cert
            .witness()
            .expect("edgeless graphs always have a witness")
            .clone();
        return Ok((0, w));
    }
    let k_max = k_max.unwrap_or_else(|| g.edge_count());
    for k in 1..=k_max {
        let cert = is_star_k_with(g, k, Mode::Any, opts)?;
        if let Outcome::Witness(w) = cert.outcome {
            return Ok((k, w));
        }
    }
    Err(Error::Argument(format!(
        "no witness with at most {k_max} intervals"
    )))
}
