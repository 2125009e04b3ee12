//! Exhaustive search for good colorings and the numbers `g^k_q(p)`.
//!
//! A Gallai `k`-coloring of `K_n` is *good* for `(p, q)` when every `K_p`
//! inside it receives at least `q + 1` colors. `g^k_q(p)` is the least `n`
//! with no good coloring, so the largest good order is `g - 1`.
//!
//! The search grows colorings one vertex at a time, keeping one
//! representative per isomorphism class at each order (see [`canon`]). It
//! prunes with three facts: a rainbow triangle is forbidden; adding a
//! vertex to a Gallai-colored set adds at most one new color; and a `p`-set
//! must end with `q + 1` colors. Together these say that a `t`-set which
//! can still grow into a `p`-set needs at least `q + 1 - (p - t)` colors.

pub mod cache;
pub mod canon;
mod engine;

use std::sync::atomic::Ordering;
use std::time::{Duration, Instant};

use thiserror::Error;

use crate::coloring::{EdgeColoring, MAX_COLORS};
use canon::CanonicalForm;
use engine::{Counters, Engine, Horizon, Level, Rules};

pub use canon::{canonical_form as canonical_key, is_isomorphic};

/// Largest order the search accepts; subset tables have `2^n` entries.
pub const MAX_SEARCH_VERTICES: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("order {0} exceeds the search limit of {MAX_SEARCH_VERTICES}")]
    TooLarge(usize),
    #[error("could not start a thread pool: {0}")]
    ThreadPool(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub max_nodes: u64,
    pub max_time: Duration,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_nodes: 1_000_000_000, max_time: Duration::from_secs(3600) }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Mode {
    /// Single-threaded.
    #[default]
    Deterministic,
    /// Parents of a level are split across a thread pool; `None` uses the
    /// rayon default. Results are the same as in deterministic mode.
    Parallel { jobs: Option<usize> },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchProblem {
    pub n: usize,
    pub k: usize,
    pub p: usize,
    pub q: usize,
    pub budget: Budget,
    pub mode: Mode,
}

impl SearchProblem {
    pub fn new(n: usize, k: usize, p: usize, q: usize) -> Self {
        SearchProblem { n, k, p, q, budget: Budget::default(), mode: Mode::Deterministic }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Prunes {
    pub rainbow: u64,
    pub clique_colors: u64,
    pub isomorph: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SearchStats {
    /// Edge-color assignments tried.
    pub nodes: u64,
    pub prunes: Prunes,
    pub elapsed: Duration,
    /// Isomorphism classes kept at each order `1, 2, ..`.
    pub census: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    /// A good coloring; in every mode the least one in canonical order.
    Sat(EdgeColoring),
    Unsat,
    BudgetExceeded,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOutcome {
    pub verdict: Verdict,
    pub stats: SearchStats,
}

fn validate(n: usize, k: usize, p: usize, q: usize) -> Result<(), SearchError> {
    if n == 0 || k == 0 || k > MAX_COLORS || p < 2 || q == 0 {
        return Err(SearchError::BadParams(format!(
            "need n >= 1, 1 <= k <= 64, p >= 2, q >= 1; got n={n}, k={k}, p={p}, q={q}"
        )));
    }
    if n > MAX_SEARCH_VERTICES {
        return Err(SearchError::TooLarge(n));
    }
    Ok(())
}

struct Run {
    counters: Counters,
    started: Instant,
    budget: Budget,
    pool: Option<rayon::ThreadPool>,
}

impl Run {
    fn new(budget: Budget, mode: Mode) -> Result<Self, SearchError> {
        let pool = match mode {
            Mode::Deterministic => None,
            Mode::Parallel { jobs } => {
                let mut b = rayon::ThreadPoolBuilder::new();
                if let Some(j) = jobs {
                    b = b.num_threads(j);
                }
                Some(b.build().map_err(|e| SearchError::ThreadPool(e.to_string()))?)
            }
        };
        Ok(Run { counters: Counters::default(), started: Instant::now(), budget, pool })
    }

    fn next(&self, rules: Rules, level: &[CanonicalForm], horizon: Horizon) -> Option<Level> {
        let engine = Engine {
            rules,
            budget: &self.budget,
            started: self.started,
            counters: &self.counters,
            parallel: self.pool.is_some(),
        };
        match &self.pool {
            Some(pool) => pool.install(|| engine.next_level(level, horizon)),
            None => engine.next_level(level, horizon),
        }
    }

    fn stats(&self, census: Vec<usize>) -> SearchStats {
        SearchStats {
            nodes: self.counters.nodes.load(Ordering::Relaxed),
            prunes: self.counters.prunes(),
            elapsed: self.started.elapsed(),
            census,
        }
    }
}

fn root() -> Vec<CanonicalForm> {
    vec![canon::canonical_form(&EdgeColoring::monochromatic(1, 1, 1).expect("K_1"))]
}

fn sorted_keys(level: &Level, extendable_only: bool) -> Vec<CanonicalForm> {
    let mut keys: Vec<CanonicalForm> =
        level.iter().filter(|(_, &e)| e || !extendable_only).map(|(k, _)| k.clone()).collect();
    keys.sort();
    keys
}

/// Runs levels `2..=n` under `rules` with full lookahead to `n`; returns
/// the sorted final level and the census, or `None` on budget exhaustion.
fn generate(run: &Run, rules: Rules, n: usize) -> (Option<Vec<CanonicalForm>>, Vec<usize>) {
    let mut level = root();
    let mut census = vec![1];
    for _ in 2..=n {
        let Some(next) = run.next(rules, &level, Horizon::Target(n)) else {
            return (None, census);
        };
        level = sorted_keys(&next, false);
        census.push(level.len());
        if level.is_empty() {
            break;
        }
    }
    if census.len() < n {
        census.resize(n, 0);
        level.clear();
    }
    (Some(level), census)
}

/// Is there a Gallai `k`-coloring of `K_n` in which every `K_p` receives at
/// least `q + 1` colors?
pub fn exists_good_coloring(problem: &SearchProblem) -> Result<SearchOutcome, SearchError> {
    let SearchProblem { n, k, p, q, budget, mode } = *problem;
    validate(n, k, p, q)?;
    let run = Run::new(budget, mode)?;
    if n < p {
        let g = EdgeColoring::monochromatic(n, k, 1).expect("valid order and palette");
        return Ok(SearchOutcome { verdict: Verdict::Sat(g), stats: run.stats(Vec::new()) });
    }
    let rules = Rules { k, gallai: true, clique: Some((p, q)) };
    let (level, census) = generate(&run, rules, n);
    let verdict = match level {
        None => Verdict::BudgetExceeded,
        Some(l) => match l.first() {
            Some(key) => Verdict::Sat(key.decode(k)),
            None => Verdict::Unsat,
        },
    };
    Ok(SearchOutcome { verdict, stats: run.stats(census) })
}

/// Where a value of `g` came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Provenance {
    /// Exhaustive search found the first order with no good coloring.
    Search,
    /// Search reached its order cap with good colorings still present, so
    /// only `g >= value` is known.
    SearchLowerBound,
    /// Decided without search.
    Formula(String),
}

impl Provenance {
    pub fn token(&self) -> &str {
        match self {
            Provenance::Search => "search",
            Provenance::SearchLowerBound => "search-lower-bound",
            Provenance::Formula(_) => "formula",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GValue {
    pub k: usize,
    pub q: usize,
    pub p: usize,
    /// `g^k_q(p)`, or a lower bound on it for [`Provenance::SearchLowerBound`].
    pub value: usize,
    /// A good coloring on `value - 1` vertices.
    pub witness: Option<EdgeColoring>,
    pub provenance: Provenance,
    pub stats: Option<SearchStats>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ComputeOutcome {
    Value(GValue),
    BudgetExceeded(SearchStats),
}

/// `g^k_q(p)` by scanning orders upward from 1 until no good coloring
/// exists, or until `n_cap`.
pub fn compute_g(
    k: usize,
    q: usize,
    p: usize,
    n_cap: usize,
    budget: Budget,
    mode: Mode,
) -> Result<ComputeOutcome, SearchError> {
    validate(n_cap.max(1), k, p, q)?;
    if n_cap < p {
        return Err(SearchError::BadParams(format!("order cap {n_cap} is below p = {p}")));
    }
    if k <= q {
        let witness = EdgeColoring::monochromatic(p - 1, k, 1).ok();
        return Ok(ComputeOutcome::Value(GValue {
            k,
            q,
            p,
            value: p,
            witness,
            provenance: Provenance::Formula("every K_p has at most k <= q colors".into()),
            stats: None,
        }));
    }
    let run = Run::new(budget, mode)?;
    let rules = Rules { k, gallai: true, clique: Some((p, q)) };
    let mut level = root();
    let mut parents = level.clone();
    let mut census = vec![1];
    let mut m = 1;
    loop {
        if m == n_cap {
            let witness = level.first().map(|f| f.decode(k));
            return Ok(ComputeOutcome::Value(GValue {
                k,
                q,
                p,
                value: m + 1,
                witness,
                provenance: Provenance::SearchLowerBound,
                stats: Some(run.stats(census)),
            }));
        }
        let Some(next) = run.next(rules, &parents, Horizon::Open) else {
            return Ok(ComputeOutcome::BudgetExceeded(run.stats(census)));
        };
        let all = sorted_keys(&next, false);
        census.push(all.len());
        if all.is_empty() {
            return Ok(ComputeOutcome::Value(GValue {
                k,
                q,
                p,
                value: m + 1,
                witness: level.first().map(|f| f.decode(k)),
                provenance: Provenance::Search,
                stats: Some(run.stats(census)),
            }));
        }
        parents = sorted_keys(&next, true);
        level = all;
        m += 1;
    }
}

// ====================================================================
// Enumeration
// ====================================================================

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Filter {
    /// No rainbow triangle.
    Gallai,
    /// All `k` colors used.
    Exact,
    /// Every `K_p` receives at least `q + 1` colors.
    Good { p: usize, q: usize },
}

#[derive(Debug, Clone)]
pub struct Enumeration {
    /// One canonical representative per class, in canonical order.
    pub colorings: Vec<EdgeColoring>,
    pub stats: SearchStats,
    pub complete: bool,
}

/// All `k`-colorings of `K_n` passing `filters`, up to vertex permutation
/// and color renaming.
pub fn enumerate_colorings(n: usize, k: usize, filters: &[Filter], budget: Budget) -> Result<Enumeration, SearchError> {
    let mut rules = Rules { k, gallai: false, clique: None };
    let mut exact = false;
    for f in filters {
        match *f {
            Filter::Gallai => rules.gallai = true,
            Filter::Exact => exact = true,
            Filter::Good { p, q } => rules.clique = Some((p, q)),
        }
    }
    let (p, q) = rules.clique.unwrap_or((2, 1));
    validate(n, k, p, q)?;
    let run = Run::new(budget, Mode::Deterministic)?;
    let (level, census) = generate(&run, rules, n);
    let complete = level.is_some();
    let colorings =
        level.unwrap_or_default().into_iter().filter(|f| !exact || f.colors() == k).map(|f| f.decode(k)).collect();
    Ok(Enumeration { colorings, stats: run.stats(census), complete })
}
