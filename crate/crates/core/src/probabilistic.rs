//! Biased random colorings, Local Lemma arithmetic, and a resampling search.
//!
//! In the biased model each edge independently gets one of the colors
//! `1..k-1` with total probability `r` (uniformly among them) and color `k`
//! otherwise. Bad events are a rainbow `K_s` (`A`) and a `K_p` carrying at
//! most `q` colors (`B`).
//!
//! All real-valued quantities are handled in log space so that the huge
//! settings used for large `n` neither overflow nor underflow.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::coloring::{Color, EdgeColoring, VertexSet, MAX_VERTICES};
use crate::search::Verdict;

/// Inequalities count as satisfied only with at least this relative margin.
pub const REL_TOLERANCE: f64 = 1e-9;

/// Default `epsilon` in `y = 1 + epsilon`.
pub const DEFAULT_EPSILON: f64 = 1e-3;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ProbError {
    #[error("probability {0} must lie strictly between 0 and 1")]
    BadProbability(f64),
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("bad parameters: {0}")]
    BadParams(String),
}

fn choose2(s: usize) -> usize {
    s * s.saturating_sub(1) / 2
}

fn ln_binomial(n: usize, r: usize) -> f64 {
    if r > n {
        return f64::NEG_INFINITY;
    }
    (0..r.min(n - r)).map(|i| ((n - i) as f64).ln() - ((i + 1) as f64).ln()).sum()
}

/// `ln L` where `L = C(s,2) (k-1)^(2-C(s,2)) (k-2)(k-3)..(k-C(s,2)+1)`.
pub fn ln_l(s: usize, k: usize) -> Result<f64, ProbError> {
    let m = choose2(s);
    if s < 3 || k < m || k < 2 {
        return Err(ProbError::BadParams(format!("need s >= 3 and k >= C(s,2); got s={s}, k={k}")));
    }
    let falling: f64 = (k + 1 - m..=k - 2).map(|x| (x as f64).ln()).sum();
    Ok((m as f64).ln() + (2.0 - m as f64) * ((k - 1) as f64).ln() + falling)
}

/// A draw from the biased model, reproducible from `seed`.
pub fn biased_random_coloring(n: usize, k: usize, r: f64, seed: u64) -> Result<EdgeColoring, ProbError> {
    check_probability(r)?;
    if k < 2 {
        return Err(ProbError::BadParams(format!("need k >= 2, got {k}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    EdgeColoring::from_fn(n, k, |_, _| draw(&mut rng, k, r) as usize).map_err(|e| ProbError::BadParams(e.to_string()))
}

fn check_probability(r: f64) -> Result<(), ProbError> {
    if r > 0.0 && r < 1.0 {
        Ok(())
    } else {
        Err(ProbError::BadProbability(r))
    }
}

fn draw(rng: &mut ChaCha8Rng, k: usize, r: f64) -> Color {
    if rng.gen_bool(r) {
        rng.gen_range(1..k) as Color
    } else {
        k as Color
    }
}

/// Inputs to the event bounds. `p` is real so that the asymptotic
/// settings can be evaluated without rounding.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EventParams {
    pub s: usize,
    pub k: usize,
    pub q: usize,
    pub p: f64,
    pub r: f64,
}

/// Natural logarithms of the event probability bounds and dependency
/// counts.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EventBounds {
    pub ln_l: f64,
    /// `L r^(C(s,2)-1)`
    pub ln_pr_a: f64,
    /// `-r p^2/4 + r p/4 + ln C(k,q)`
    pub ln_pr_b: f64,
    /// `s^2 n^(s-2)`
    pub ln_n_aa: f64,
    /// `s^2 n^(p-2)`
    pub ln_n_ab: f64,
    /// `p^2 n^(s-2)`
    pub ln_n_ba: f64,
    /// `p^2 n^(p-2)`
    pub ln_n_bb: f64,
}

impl EventBounds {
    pub fn l(&self) -> f64 {
        self.ln_l.exp()
    }
    pub fn pr_a(&self) -> f64 {
        self.ln_pr_a.exp()
    }
    pub fn pr_b(&self) -> f64 {
        self.ln_pr_b.exp()
    }
    pub fn n_aa(&self) -> f64 {
        self.ln_n_aa.exp()
    }
    pub fn n_ab(&self) -> f64 {
        self.ln_n_ab.exp()
    }
    pub fn n_ba(&self) -> f64 {
        self.ln_n_ba.exp()
    }
    pub fn n_bb(&self) -> f64 {
        self.ln_n_bb.exp()
    }
}

pub fn event_bounds(ev: &EventParams, n: f64) -> Result<EventBounds, ProbError> {
    check_probability(ev.r)?;
    if n < 1.0 || ev.p <= 0.0 || ev.q > ev.k {
        return Err(ProbError::BadParams(format!("need n >= 1, p > 0, q <= k; got n={n}, p={}", ev.p)));
    }
    let ln_l = ln_l(ev.s, ev.k)?;
    let m = choose2(ev.s) as f64;
    let (ln_n, ln_s, ln_p) = (n.ln(), (ev.s as f64).ln(), ev.p.ln());
    let s2 = ev.s as f64 - 2.0;
    Ok(EventBounds {
        ln_l,
        ln_pr_a: ln_l + (m - 1.0) * ev.r.ln(),
        ln_pr_b: -ev.r * ev.p * ev.p / 4.0 + ev.r * ev.p / 4.0 + ln_binomial(ev.k, ev.q),
        ln_n_aa: 2.0 * ln_s + s2 * ln_n,
        ln_n_ab: 2.0 * ln_s + (ev.p - 2.0) * ln_n,
        ln_n_ba: 2.0 * ln_p + s2 * ln_n,
        ln_n_bb: 2.0 * ln_p + (ev.p - 2.0) * ln_n,
    })
}

/// Constants for the asymptotic settings
/// `r = c1 n^-a L^-b`, `p = c2 n^a ln(n) L^b`, `y = 1 + epsilon`,
/// `z = exp(c3 n^a ln(n)^2 L^b)` with `a = (s-2)/(C(s,2)-2.1)` and
/// `b = 1/(C(s,2)-1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LllParams {
    pub s: usize,
    pub k: usize,
    pub q: usize,
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
    pub epsilon: f64,
}

impl LllParams {
    /// `c3 - c1 c2^2 / 4 + c2`; the settings can only work when it is negative.
    pub fn margin(&self) -> f64 {
        self.c3 - self.c1 * self.c2 * self.c2 / 4.0 + self.c2
    }

    pub fn exponents(&self) -> (f64, f64) {
        let m = choose2(self.s) as f64;
        ((self.s as f64 - 2.0) / (m - 2.1), 1.0 / (m - 1.0))
    }
}

/// One inequality `lhs < rhs` (or `lhs > rhs`) with its slack.
#[derive(Debug, Clone, PartialEq)]
pub struct Inequality {
    pub name: &'static str,
    pub lhs: f64,
    pub rhs: f64,
    /// Positive when the inequality holds.
    pub slack: f64,
    pub holds: bool,
}

impl Inequality {
    // `small < large` with relative margin.
    fn less(name: &'static str, small: f64, large: f64) -> Self {
        let slack = large - small;
        let scale = small.abs().max(large.abs());
        let holds = slack.is_finite() && slack > REL_TOLERANCE * scale && !small.is_nan();
        Inequality { name, lhs: small, rhs: large, slack, holds }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LllReport {
    pub n: f64,
    pub r: f64,
    pub p: f64,
    pub y: f64,
    pub ln_z: f64,
    pub bounds: EventBounds,
    pub margin: f64,
    pub inequalities: Vec<Inequality>,
    pub holds: bool,
}

// Sum of `exp` over log-space terms.
fn exp_sum(terms: &[f64]) -> f64 {
    terms.iter().map(|t| t.exp()).sum()
}

/// Evaluates the three Local Lemma conditions at order `n` under the
/// asymptotic settings. The `o(1)` terms of the analysis do not appear:
/// everything is computed from the explicit bounds.
pub fn lll_check(params: &LllParams, n: f64) -> Result<LllReport, ProbError> {
    if n < 2.0 || params.epsilon.is_nan() || params.epsilon <= 0.0 {
        return Err(ProbError::BadParams(format!("need n >= 2 and epsilon > 0; got n={n}")));
    }
    let ln_l = ln_l(params.s, params.k)?;
    let (a, b) = params.exponents();
    let ln_n = n.ln();
    let scale = (a * ln_n + b * ln_l).exp();
    let r = params.c1 * (-a * ln_n - b * ln_l).exp();
    let p = params.c2 * scale * ln_n;
    let y = 1.0 + params.epsilon;
    let ln_z = params.c3 * scale * ln_n * ln_n;
    let margin = params.margin();
    let report = |inequalities: Vec<Inequality>, bounds| {
        let holds = inequalities.iter().all(|i| i.holds);
        LllReport { n, r, p, y, ln_z, bounds, margin, inequalities, holds }
    };
    if !(r > 0.0 && r < 1.0) {
        let empty = EventBounds {
            ln_l,
            ln_pr_a: f64::NAN,
            ln_pr_b: f64::NAN,
            ln_n_aa: f64::NAN,
            ln_n_ab: f64::NAN,
            ln_n_ba: f64::NAN,
            ln_n_bb: f64::NAN,
        };
        return Ok(report(vec![Inequality::less("r < 1", r, 1.0)], empty));
    }
    let e = event_bounds(&EventParams { s: params.s, k: params.k, q: params.q, p, r }, n)?;
    let ln_y = y.ln();
    let ineqs = vec![
        Inequality::less("r < 1", r, 1.0),
        Inequality::less("ln(y Pr A) < 0", ln_y + e.ln_pr_a, 0.0),
        Inequality::less("ln(z Pr B) < 0", ln_z + e.ln_pr_b, 0.0),
        Inequality::less(
            "y PrA N_AA + z PrB N_AB < ln y",
            exp_sum(&[ln_y + e.ln_pr_a + e.ln_n_aa, ln_z + e.ln_pr_b + e.ln_n_ab]),
            ln_y,
        ),
        Inequality::less(
            "y PrA N_BA + z PrB N_BB < ln z",
            exp_sum(&[ln_y + e.ln_pr_a + e.ln_n_ba, ln_z + e.ln_pr_b + e.ln_n_bb]),
            ln_z,
        ),
    ];
    Ok(report(ineqs, e))
}

/// The order `n` obtained by solving the settings for `n` in terms of `p`,
/// with the vanishing correction dropped:
/// `n = ((s-2) p L' / (c (C(s,2)-2.1) ln(p L')))^((C(s,2)-2.1)/(s-2))`,
/// `L' = L^(1/(1-C(s,2)))`.
pub fn lll_n_formula(s: usize, p: f64, q: usize, k: usize, c: f64) -> Result<f64, ProbError> {
    let m = choose2(s);
    if s < 4 {
        return Err(ProbError::HypothesisViolated(format!("need s >= 4, got {s}")));
    }
    if k < m.max(2 * q + 1) {
        return Err(ProbError::HypothesisViolated(format!(
            "need k >= max(C(s,2), 2q+1) = {}, got k={k}",
            m.max(2 * q + 1)
        )));
    }
    if c.is_nan() || p.is_nan() || c <= 0.0 || p <= 0.0 {
        return Err(ProbError::BadParams(format!("need c > 0 and p > 0; got c={c}, p={p}")));
    }
    let mf = m as f64;
    let ln_pl = p.ln() + ln_l(s, k)? / (1.0 - mf);
    if ln_pl <= 0.0 {
        return Err(ProbError::BadParams(format!("p L' must exceed 1; ln(p L') = {ln_pl}")));
    }
    let base = (s as f64 - 2.0) * ln_pl.exp() / (c * (mf - 2.1) * ln_pl);
    Ok(base.powf((mf - 2.1) / (s as f64 - 2.0)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BadEvent {
    /// A rainbow `K_s`.
    Rainbow,
    /// A `K_p` with at most `q` colors.
    FewColors,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ResampleStep {
    pub event: BadEvent,
    pub set: VertexSet,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ResampleOutcome {
    pub verdict: Verdict,
    pub rounds: usize,
    pub trace: Vec<ResampleStep>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResampleProblem {
    pub n: usize,
    pub k: usize,
    pub s: usize,
    pub p: usize,
    pub q: usize,
    pub r: f64,
    pub seed: u64,
    pub max_rounds: usize,
}

struct Matrix {
    n: usize,
    cells: Vec<Color>,
}

impl Matrix {
    fn get(&self, u: usize, v: usize) -> Color {
        self.cells[u * self.n + v]
    }
    fn set(&mut self, u: usize, v: usize, c: Color) {
        self.cells[u * self.n + v] = c;
        self.cells[v * self.n + u] = c;
    }
    fn colors(&self, set: &[usize]) -> u64 {
        let mut bits = 0u64;
        for (i, &u) in set.iter().enumerate() {
            for &v in &set[i + 1..] {
                bits |= 1 << (self.get(u, v) - 1);
            }
        }
        bits
    }
}

// First `t`-subset in lexicographic order satisfying `bad`.
fn first_bad(n: usize, t: usize, bad: impl Fn(&[usize]) -> bool) -> Option<Vec<usize>> {
    if t > n || t == 0 {
        return None;
    }
    let mut idx: Vec<usize> = (0..t).collect();
    loop {
        if bad(&idx) {
            return Some(idx);
        }
        let mut i = t;
        loop {
            if i == 0 {
                return None;
            }
            i -= 1;
            if idx[i] < n - t + i {
                break;
            }
        }
        idx[i] += 1;
        for j in i + 1..t {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Moser–Tardos style search: draw from the biased model, then while a
/// bad event holds, redraw every edge inside the first violating set
/// (rainbow sets before few-colored ones, each in lexicographic order).
pub fn resample_search(problem: &ResampleProblem) -> Result<ResampleOutcome, ProbError> {
    let ResampleProblem { n, k, s, p, q, r, seed, max_rounds } = *problem;
    check_probability(r)?;
    if n == 0 || n > MAX_VERTICES || k < 2 || s < 2 || p < 2 || q == 0 {
        return Err(ProbError::BadParams(format!(
            "need 1 <= n <= 64, k >= 2, s >= 2, p >= 2, q >= 1; got n={n}, k={k}, s={s}, p={p}, q={q}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut m = Matrix { n, cells: vec![0; n * n] };
    for u in 0..n {
        for v in u + 1..n {
            let c = draw(&mut rng, k, r);
            m.set(u, v, c);
        }
    }
    let rainbow_size = choose2(s) as u32;
    let mut trace = Vec::new();
    for round in 0..=max_rounds {
        let bad = first_bad(n, s, |set| m.colors(set).count_ones() == rainbow_size)
            .map(|set| (BadEvent::Rainbow, set))
            .or_else(|| {
                first_bad(n, p, |set| m.colors(set).count_ones() as usize <= q).map(|set| (BadEvent::FewColors, set))
            });
        let Some((event, set)) = bad else {
            let g = EdgeColoring::from_fn(n, k, |u, v| m.get(u, v) as usize)
                .map_err(|e| ProbError::BadParams(e.to_string()))?;
            return Ok(ResampleOutcome { verdict: Verdict::Sat(g), rounds: round, trace });
        };
        if round == max_rounds {
            break;
        }
        trace.push(ResampleStep { event, set: set.iter().copied().collect() });
        for (i, &u) in set.iter().enumerate() {
            for &v in &set[i + 1..] {
                let c = draw(&mut rng, k, r);
                m.set(u, v, c);
            }
        }
    }
    Ok(ResampleOutcome { verdict: Verdict::BudgetExceeded, rounds: max_rounds, trace })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn l_for_small_case() {
        // 6 * 5^-4 * (4*3*2*1)
        assert!((ln_l(4, 6).unwrap().exp() - 144.0 / 625.0).abs() < 1e-12);
        assert!(ln_l(4, 5).is_err());
    }

    #[test]
    fn event_bounds_small_case() {
        let e = event_bounds(&EventParams { s: 4, k: 6, q: 2, p: 6.0, r: 0.1 }, 10.0).unwrap();
        assert!((e.pr_a() / 2.304e-6 - 1.0).abs() < 1e-9);
        assert!((e.n_aa() - 1600.0).abs() < 1e-6);
        assert!((e.n_ba() - 3600.0).abs() < 1e-6);
    }

    #[test]
    fn probability_checked() {
        assert_eq!(biased_random_coloring(5, 3, 0.0, 1), Err(ProbError::BadProbability(0.0)));
        assert_eq!(biased_random_coloring(5, 3, 1.0, 1), Err(ProbError::BadProbability(1.0)));
        assert_eq!(biased_random_coloring(5, 3, 0.5, 7), biased_random_coloring(5, 3, 0.5, 7));
    }

    #[test]
    fn n_formula_exponent() {
        let a = lll_n_formula(4, 1e4, 2, 10, 1.0).unwrap();
        let b = lll_n_formula(4, 2e4, 2, 10, 1.0).unwrap();
        assert!(b / a > 2.0);
        assert!(matches!(lll_n_formula(4, 1e4, 2, 5, 1.0), Err(ProbError::HypothesisViolated(_))));
        assert!(matches!(lll_n_formula(4, 1e4, 3, 6, 1.0), Err(ProbError::HypothesisViolated(_))));
    }

    #[test]
    fn lexicographic_scan() {
        assert_eq!(first_bad(5, 3, |s| s[2] == 4 && s[0] == 1), Some(vec![1, 2, 4]));
        assert_eq!(first_bad(3, 4, |_| true), None);
    }

    #[test]
    fn tiny_instance_needs_no_rounds() {
        let prob = ResampleProblem { n: 2, k: 3, s: 3, p: 3, q: 1, r: 0.5, seed: 0, max_rounds: 0 };
        let out = resample_search(&prob).unwrap();
        assert!(matches!(out.verdict, Verdict::Sat(_)));
        assert_eq!(out.rounds, 0);
    }
}
