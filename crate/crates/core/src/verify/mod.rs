//! Formula-versus-oracle verification suites.
//!
//! Each suite runs a family of cases and records every disagreement
//! between a closed formula and an independent enumeration. The ten
//! acceptance suites are listed in [`ACCEPTANCE_SUITES`] together with
//! their runtime targets; [`EXTRA_SUITES`] holds additional consistency
//! checks.

mod lengths;
mod limits;
mod monoids;
mod products;

use std::fmt;
use std::sync::Arc;
use std::time::{Duration, Instant};

use crate::error::{Error, Result};
use crate::fixtures;
use crate::monoid::FiniteMonoid;

/// Default cap on the number of words stored by coproduct oracles.
pub const DEFAULT_BUDGET: usize = 5_000_000;

/// Acceptance suites in criterion order, with runtime targets in seconds.
pub const ACCEPTANCE_SUITES: [(&str, u64); 10] = [
    ("length-oracle", 10),
    ("coproduct-lengths", 60),
    ("coproduct-unions", 60),
    ("coproduct-units-atoms", 30),
    ("product-unions", 30),
    ("preservation", 60),
    ("universal", 120),
    ("coequalizer", 60),
    ("terminal", 10),
    ("epset-arith", 5),
];

/// Suites beyond the acceptance criteria.
pub const EXTRA_SUITES: [&str; 2] = ["monoid-invariants", "pushout"];

/// Every suite name, acceptance suites first.
pub fn all_suites() -> Vec<&'static str> {
    ACCEPTANCE_SUITES
        .iter()
        .map(|(name, _)| *name)
        .chain(EXTRA_SUITES)
        .collect()
}

/// Runtime target of an acceptance suite.
pub fn runtime_target(suite: &str) -> Option<Duration> {
    ACCEPTANCE_SUITES
        .iter()
        .find(|(name, _)| *name == suite)
        .map(|(_, secs)| Duration::from_secs(*secs))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Seed for random fixtures and random samples.
    pub seed: u64,
    /// Cap on the states stored by bounded searches.
    pub budget: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            seed: 0,
            budget: DEFAULT_BUDGET,
        }
    }
}

/// Outcome of one suite.
#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub suite: String,
    pub cases: usize,
    /// Human-readable description of every failing case, with its inputs.
    pub mismatches: Vec<String>,
    /// Cases not run because a precondition or size cap excluded them.
    pub skipped: usize,
    pub elapsed: Duration,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {} ({} cases, {} mismatches, {} skipped, {:.2}s)",
            self.suite,
            if self.passed() { "PASS" } else { "FAIL" },
            self.cases,
            self.mismatches.len(),
            self.skipped,
            self.elapsed.as_secs_f64()
        )
    }
}

/// Collects case outcomes for a suite.
#[derive(Debug, Default)]
pub(crate) struct Recorder {
    cases: usize,
    skipped: usize,
    mismatches: Vec<String>,
}

impl Recorder {
    pub(crate) fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.mismatches.push(describe());
        }
    }

    pub(crate) fn fail(&mut self, message: String) {
        self.cases += 1;
        self.mismatches.push(message);
    }

    pub(crate) fn skip(&mut self) {
        self.skipped += 1;
    }
}

/// Runs one suite by name.
pub fn run_suite(name: &str, options: &VerifyOptions) -> Result<VerifyReport> {
    let start = Instant::now();
    let mut rec = Recorder::default();
    match name {
        "length-oracle" => lengths::length_oracle(&mut rec, options),
        "coproduct-lengths" => lengths::coproduct_lengths(&mut rec, options),
        "coproduct-unions" => lengths::coproduct_unions(&mut rec, options),
        "coproduct-units-atoms" => lengths::coproduct_units_atoms(&mut rec, options),
        "product-unions" => products::product_unions(&mut rec, options),
        "preservation" => products::preservation(&mut rec, options),
        "universal" => limits::universal(&mut rec, options),
        "coequalizer" => limits::coequalizer(&mut rec, options),
        "terminal" => limits::terminal(&mut rec, options),
        "epset-arith" => lengths::epset_arith(&mut rec, options),
        "monoid-invariants" => monoids::monoid_invariants(&mut rec, options),
        "pushout" => limits::pushout(&mut rec, options),
        _ => return Err(Error::UnknownSuite(name.to_string())),
    }
    Ok(VerifyReport {
        suite: name.to_string(),
        cases: rec.cases,
        mismatches: rec.mismatches,
        skipped: rec.skipped,
        elapsed: start.elapsed(),
    })
}

/// Named fixture by its library name, shared behind an `Arc`.
pub(crate) fn fx(name: &str) -> Arc<FiniteMonoid> {
    Arc::new(fixtures::by_name(name).expect("known fixture"))
}

/// Atomic fixtures with at most four elements, used as diagram objects and
/// as apexes of cones.
pub(crate) fn small_atomic() -> Vec<(&'static str, Arc<FiniteMonoid>)> {
    ["zero", "one", "c2", "c3", "h2", "m31"]
        .into_iter()
        .map(|n| (n, fx(n)))
        .collect()
}

/// All multisets of size `k` over `pool`, as index lists in non-decreasing
/// order.
pub(crate) fn multisets(pool: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for rest in multisets(pool, k - 1) {
        let start = rest.last().copied().unwrap_or(0);
        for i in start..pool {
            let mut v = rest.clone();
            v.push(i);
            out.push(v);
        }
    }
    out
}
