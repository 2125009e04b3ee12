//! Acceptance checks, one line of output per criterion. Run with
//! `cargo test -p gallai --test acceptance`.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use gallai::constructions::{
    iterated_self_substitution, join_copies, k7_four_colors, k8_two_blocks, k9_five_colors, p5_tower, power_tower,
    staircase, staircase_fill, staircase_tail, substitution_product, Certificate, Property,
};
use gallai::formulas::{exact_g_known, sandwich_violations};
use gallai::partition::{external_color_check, find_gallai_partition, spanning_connected_color, verify_partition};
use gallai::probabilistic::{lll_check, resample_search, LllParams, ResampleProblem, DEFAULT_EPSILON, REL_TOLERANCE};
use gallai::search::cache::{CacheEntry, ResultsCache};
use gallai::search::{
    compute_g, enumerate_colorings, exists_good_coloring, Budget, ComputeOutcome, Filter, Mode, SearchProblem, Verdict,
};
use gallai::stars::{check_star_lower_bound, lemma_n_hypotheses, lemma_n_inequality, peel_star_colors, star_colors};
use gallai::{EdgeColoring, VertexSet};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Criterion = (&'static str, fn() -> Report);

struct Report {
    failures: Vec<String>,
    summary: String,
}

impl Report {
    fn new() -> Self {
        Report { failures: Vec::new(), summary: String::new() }
    }

    fn fail(&mut self, msg: impl Into<String>) {
        self.failures.push(msg.into());
    }
}

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        ("construction certificates", criterion_1),
        ("exact values by search", criterion_2),
        ("oracle equivalence", criterion_3),
        ("structural properties over the corpus", criterion_4),
        ("star colors", criterion_5),
        ("monotonicity and formula sandwiches", criterion_6),
        ("probabilistic", criterion_7),
    ];
    let mut all_ok = true;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let started = Instant::now();
        let report = run();
        let secs = started.elapsed().as_secs_f64();
        let verdict = if report.failures.is_empty() { "PASS" } else { "FAIL" };
        println!("criterion {}: {verdict} {name} ({}; {secs:.1}s)", i + 1, report.summary);
        for f in report.failures.iter().take(10) {
            println!("    {f}");
        }
        if report.failures.len() > 10 {
            println!("    ... {} more", report.failures.len() - 10);
        }
        all_ok &= report.failures.is_empty();
    }
    if all_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

// --------------------------------------------------------------------
// 1
// --------------------------------------------------------------------

fn timed_certificate(
    r: &mut Report,
    label: &str,
    build: impl FnOnce() -> Result<Certificate, gallai::constructions::ConstructionError>,
    required: &[Property],
) -> usize {
    let started = Instant::now();
    let cert = match build() {
        Ok(c) => c,
        Err(e) => {
            r.fail(format!("{label}: {e}"));
            return 0;
        }
    };
    for p in required {
        if !cert.claims_property(p) {
            r.fail(format!("{label}: certificate does not claim {p}"));
        }
        let (ok, detail) = p.check(&cert.coloring);
        if !ok {
            r.fail(format!("{label}: {p} fails: {detail}"));
        }
    }
    let elapsed = started.elapsed();
    if elapsed >= Duration::from_secs(1) {
        r.fail(format!("{label}: took {elapsed:?}"));
    }
    1
}

fn criterion_1() -> Report {
    use Property::*;
    let mut r = Report::new();
    let mut count = 0;
    count +=
        timed_certificate(&mut r, "k7-four-colors", k7_four_colors, &[Gallai, CliqueColorsAtLeast { p: 6, colors: 4 }]);
    count += timed_certificate(
        &mut r,
        "k9-five-colors",
        k9_five_colors,
        &[Gallai, CliqueColorsAtLeast { p: 6, colors: 4 }, PairDeletionsAtLeast { deletions: 4 }],
    );
    count +=
        timed_certificate(&mut r, "k8-two-blocks", k8_two_blocks, &[Gallai, CliqueColorsAtLeast { p: 7, colors: 5 }]);
    for k in 2..=8 {
        let required: Vec<Property> =
            std::iter::once(Gallai).chain((3..=k + 1).map(|p| CliqueColorsExactly { p, colors: p - 1 })).collect();
        count += timed_certificate(&mut r, &format!("staircase({k},{})", k + 1), || staircase(k, k + 1), &required);
    }
    for k in 2..=4 {
        count += timed_certificate(
            &mut r,
            &format!("p5-tower({k})"),
            || p5_tower(k),
            &[Gallai, CliqueColorsAtLeast { p: 5, colors: 3 }, CliqueColorsAtLeast { p: 3, colors: 2 }],
        );
    }
    r.summary = format!("{count} certificates, each under 1s");
    r
}

// --------------------------------------------------------------------
// 2
// --------------------------------------------------------------------

const SEARCH_CAP: usize = 14;

fn criterion_2_targets() -> Vec<(usize, usize, usize, usize)> {
    let mut t = vec![(3, 2, 4, 5), (4, 2, 4, 6)];
    t.extend((2..=6).map(|k| (k, 2, 4, k + 2)));
    t.extend((3..=5).map(|k| (k, 3, 5, k + 2)));
    t.extend([(2, 2, 5, 5), (3, 2, 5, 9), (4, 3, 6, 8)]);
    // extended-budget targets
    t.extend([(5, 3, 6, 10), (5, 5, 8, 8)]);
    t.sort();
    t.dedup();
    t
}

fn criterion_2() -> Report {
    let mut r = Report::new();
    let mut got = Vec::new();
    for (k, q, p, want) in criterion_2_targets() {
        match compute_g(k, q, p, SEARCH_CAP, Budget::default(), Mode::Deterministic) {
            Ok(ComputeOutcome::Value(v)) => {
                if v.value != want || v.provenance.token() == "search-lower-bound" {
                    r.fail(format!("g^{k}_{q}({p}): want {want}, got {} ({})", v.value, v.provenance.token()));
                }
                if let Some(w) = &v.witness {
                    let upper = common::to_upper(w);
                    if w.n() + 1 != v.value || !common::is_good(&upper, w.n(), p, q) {
                        r.fail(format!("g^{k}_{q}({p}): witness on {} vertices is not good", w.n()));
                    }
                }
                got.push(format!("g^{k}_{q}({p})={}", v.value));
            }
            Ok(ComputeOutcome::BudgetExceeded(s)) => {
                r.fail(format!("g^{k}_{q}({p}): budget exhausted after {} nodes", s.nodes))
            }
            Err(e) => r.fail(format!("g^{k}_{q}({p}): {e}")),
        }
    }
    r.summary = got.join(" ");
    r
}

// --------------------------------------------------------------------
// 3
// --------------------------------------------------------------------

fn criterion_3() -> Report {
    let mut r = Report::new();
    let mut cases = 0;
    for n in 1..=5 {
        for k in 1..=3 {
            // per coloring: Gallai flag and min colors for p = 2..=5
            let table: Vec<(bool, [Option<usize>; 4])> = common::all_colorings(n, k)
                .map(|u| {
                    let gallai = !common::has_rainbow_triangle(&u, n);
                    let mins = [2, 3, 4, 5].map(|p| common::min_colors(&u, n, p));
                    (gallai, mins)
                })
                .collect();
            for p in 2..=5 {
                for q in 1..=3 {
                    cases += 1;
                    let oracle = table.iter().any(|(gallai, mins)| *gallai && mins[p - 2].is_none_or(|c| c > q));
                    let outcome = match exists_good_coloring(&SearchProblem::new(n, k, p, q)) {
                        Ok(o) => o,
                        Err(e) => {
                            r.fail(format!("(n={n},k={k},p={p},q={q}): {e}"));
                            continue;
                        }
                    };
                    let sat = match &outcome.verdict {
                        Verdict::Sat(g) => {
                            if g.n() != n || !common::is_good(&common::to_upper(g), n, p, q) {
                                r.fail(format!("(n={n},k={k},p={p},q={q}): witness is not good"));
                            }
                            true
                        }
                        Verdict::Unsat => false,
                        Verdict::BudgetExceeded => {
                            r.fail(format!("(n={n},k={k},p={p},q={q}): budget exceeded"));
                            continue;
                        }
                    };
                    if sat != oracle {
                        r.fail(format!("(n={n},k={k},p={p},q={q}): search says {sat}, oracle says {oracle}"));
                    }
                }
            }
        }
    }
    r.summary = format!("{cases} parameter tuples, {} disagreements", r.failures.len());
    r
}

// --------------------------------------------------------------------
// 4
// --------------------------------------------------------------------

fn construction_corpus() -> Vec<(String, EdgeColoring)> {
    let mut out = Vec::new();
    let mut push = |c: Result<Certificate, _>| {
        let c: Certificate = c.expect("construction");
        out.push((c.name.clone(), c.coloring));
    };
    push(k7_four_colors());
    push(k8_two_blocks());
    push(k9_five_colors());
    for k in 2..=8 {
        push(staircase(k, k + 1));
    }
    for (k, p) in [(3, 5), (4, 6), (5, 7), (6, 8)] {
        push(staircase_tail(k, p));
    }
    for (k, c) in [(3, 2), (4, 3), (6, 4)] {
        push(staircase_fill(k, c));
    }
    for k in 2..=5 {
        push(p5_tower(k));
    }
    for (m, k) in [(2, 3), (3, 2), (2, 5), (4, 2), (4, 3)] {
        push(power_tower(m, k));
    }
    let pentagon =
        EdgeColoring::from_fn(5, 2, |u, v| if (v - u) % 5 == 1 || (v - u) % 5 == 4 { 1 } else { 2 }).expect("pentagon");
    push(iterated_self_substitution(&pentagon, 2));
    let k7 = k7_four_colors().expect("k7").coloring.with_palette(5).expect("palette");
    push(join_copies(&k7, 2, 5));
    let pentagon5 = pentagon.with_palette(5).expect("palette");
    let triangle = EdgeColoring::monochromatic(3, 5, 4).expect("triangle");
    let parts = vec![k7.clone(), pentagon5.clone(), k7, pentagon5.clone(), triangle];
    push(substitution_product(&pentagon5, &parts));
    out
}

// Exhaustive over vertex subsets up to this order, sampled above.
const EXHAUSTIVE_ORDER: usize = 16;
const SAMPLED_SUBSETS: usize = 20_000;

fn structure_violations(name: &str, g: &EdgeColoring, r: &mut Report, rng: &mut ChaCha8Rng) {
    let n = g.n();
    let sets: Vec<VertexSet> = if n <= EXHAUSTIVE_ORDER {
        (1u64..1 << n).map(VertexSet).collect()
    } else {
        let mask = VertexSet::full(n).0;
        (0..SAMPLED_SUBSETS).map(|_| VertexSet(rng.gen::<u64>() & mask)).collect()
    };
    for &s in &sets {
        if s.len() < 2 {
            continue;
        }
        let c = g.colors_on_subset(s).expect("subset").len();
        if c + 1 > s.len() {
            r.fail(format!("{name}: {s:?} carries {c} colors"));
        }
        for v in VertexSet::full(n).difference(s).iter() {
            match external_color_check(g, v, s) {
                Ok(e) if e <= 1 => {}
                Ok(e) => r.fail(format!("{name}: vertex {v} adds {e} new colors to {s:?}")),
                Err(e) => r.fail(format!("{name}: external check: {e}")),
            }
        }
    }
    if n >= 2 {
        if let Err(e) = spanning_connected_color(g) {
            r.fail(format!("{name}: no spanning color: {e}"));
        }
        match find_gallai_partition(g) {
            Ok(p) => match verify_partition(g, &p) {
                Ok(None) => {}
                Ok(Some(v)) => r.fail(format!("{name}: partition rejected: {v:?}")),
                Err(e) => r.fail(format!("{name}: {e}")),
            },
            Err(e) => r.fail(format!("{name}: no partition: {e}")),
        }
    }
    if n >= 4 {
        match g.dense_color_neighborhood() {
            Ok(d) if 4 * d.neighbors.len() > n && d.neighbors.iter().all(|u| g.color(d.vertex, u) == d.color) => {}
            Ok(d) => r.fail(format!("{name}: neighborhood {:?} is not dense", d.neighbors)),
            Err(e) => r.fail(format!("{name}: {e}")),
        }
    }
}

fn criterion_4() -> Report {
    let mut r = Report::new();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let corpus = construction_corpus();
    for (name, g) in &corpus {
        structure_violations(name, g, &mut r, &mut rng);
    }
    let mut enumerated = 0;
    for n in 1..=8 {
        let k = (n - 1).max(1);
        let e = enumerate_colorings(n, k, &[Filter::Gallai], Budget::default()).expect("enumerate");
        if !e.complete {
            r.fail(format!("enumeration n={n} incomplete"));
        }
        for (i, g) in e.colorings.iter().enumerate() {
            structure_violations(&format!("enumerated n={n} #{i}"), g, &mut r, &mut rng);
        }
        enumerated += e.colorings.len();
    }
    r.summary = format!("{} constructions, {enumerated} enumerated classes", corpus.len());
    r
}

// --------------------------------------------------------------------
// 5
// --------------------------------------------------------------------

fn criterion_5() -> Report {
    let mut r = Report::new();
    let mut checked = 0;
    for n in 2..=8 {
        let e = enumerate_colorings(n, n - 1, &[Filter::Gallai, Filter::Exact], Budget::default()).expect("enumerate");
        for g in &e.colorings {
            checked += 1;
            let stars = star_colors(g).len();
            if stars < n.div_ceil(2) {
                r.fail(format!("n={n}: only {stars} star colors"));
            }
            match check_star_lower_bound(g) {
                Ok(rep) if rep.holds && rep.hypotheses_met => {}
                Ok(rep) => r.fail(format!("n={n}: bound report {rep:?}")),
                Err(e) => r.fail(format!("n={n}: {e}")),
            }
            match peel_star_colors(g) {
                Ok(rep) if !rep.hypotheses_met || rep.bound.at_most(rep.stars.len()) => {}
                Ok(rep) => r.fail(format!("n={n}: peel found {} stars, bound {}", rep.stars.len(), rep.bound)),
                Err(e) => r.fail(format!("n={n}: peel: {e}")),
            }
        }
    }
    // Deficit 2: the bound is vacuous at this size but peeling must still run cleanly.
    for n in 4..=8 {
        let e = enumerate_colorings(n, n - 2, &[Filter::Gallai, Filter::Exact], Budget::default()).expect("enumerate");
        for g in &e.colorings {
            if let Err(e) = peel_star_colors(g) {
                r.fail(format!("n={n}, deficit 2: peel: {e}"));
            }
        }
    }
    let mut pairs = 0u64;
    for c in 2..=4usize {
        let base = (7 + c as u64).pow(c as u32);
        let lo = 2 * base;
        let mut ns: Vec<u64> = (lo..lo + 5_000).collect();
        ns.extend((0..40).map(|i| lo * (1 << (i / 4)) + i as u64 * 7919));
        for n in ns {
            let min_big = n - 3 * n / base;
            for big_n in min_big.saturating_sub(1)..=n {
                if !lemma_n_hypotheses(c, n, big_n).expect("hypotheses") {
                    continue;
                }
                pairs += 1;
                if !lemma_n_inequality(c, n, big_n).expect("inequality") {
                    r.fail(format!("c={c}, n={n}, N={big_n}: inequality fails"));
                }
            }
        }
    }
    r.summary = format!("{checked} exact colorings with deficit 1, {pairs} (c, n, N) triples");
    r
}

// --------------------------------------------------------------------
// 6
// --------------------------------------------------------------------

fn insert(cache: &mut ResultsCache, r: &mut Report, (k, q, p): (usize, usize, usize), value: usize, provenance: &str) {
    let entry = CacheEntry { value, provenance: provenance.to_string() };
    if let Some(old) = cache.get(k, q, p) {
        if old.is_exact() && entry.is_exact() && old.value != value {
            r.fail(format!("g^{k}_{q}({p}): {} ({}) vs {value} ({provenance})", old.value, old.provenance));
        }
    }
    cache.insert(k, q, p, entry);
}

fn criterion_6() -> Report {
    let mut r = Report::new();
    let mut cache = ResultsCache::new();
    let mut searched: Vec<(usize, usize, usize)> =
        criterion_2_targets().iter().map(|&(k, q, p, _)| (k, q, p)).collect();
    for k in 1..=4 {
        for q in 1..=3 {
            for p in 3..=6 {
                searched.push((k, q, p));
            }
        }
    }
    searched.sort();
    searched.dedup();
    let budget = Budget { max_nodes: 300_000, max_time: Duration::from_secs(10) };
    for (k, q, p) in searched {
        match compute_g(k, q, p, 10.max(p), budget, Mode::Deterministic) {
            Ok(ComputeOutcome::Value(v)) => insert(&mut cache, &mut r, (k, q, p), v.value, v.provenance.token()),
            Ok(ComputeOutcome::BudgetExceeded(_)) => {}
            Err(e) => r.fail(format!("g^{k}_{q}({p}): {e}")),
        }
    }
    for k in 1..=7 {
        for q in 1..=6 {
            for p in 3..=9 {
                if let Some(v) = exact_g_known(k, q, p).and_then(|b| b.value_u64()) {
                    insert(&mut cache, &mut r, (k, q, p), v as usize, "formula");
                }
            }
        }
    }
    let mono = cache.monotonicity_violations();
    for v in &mono {
        r.fail(format!("monotonicity: {:?}={} above {:?}={}", v.smaller, v.smaller_value, v.larger, v.larger_value));
    }
    let sandwich = sandwich_violations(&cache);
    for v in &sandwich {
        r.fail(format!("sandwich: {v:?}"));
    }
    r.summary = format!(
        "{} cached values, {} monotonicity and {} sandwich violations",
        cache.len(),
        mono.len(),
        sandwich.len()
    );
    r
}

// --------------------------------------------------------------------
// 7
// --------------------------------------------------------------------

fn criterion_7() -> Report {
    let mut r = Report::new();
    let mut solved = 0;
    for seed in 0..20 {
        let problem = ResampleProblem { n: 5, k: 3, s: 3, p: 3, q: 1, r: 2.0 / 3.0, seed, max_rounds: 10_000 };
        match resample_search(&problem) {
            Ok(out) => {
                if let Verdict::Sat(g) = out.verdict {
                    // no rainbow triangle and no monochromatic triangle
                    if common::is_good(&common::to_upper(&g), 5, 3, 1) {
                        solved += 1;
                    } else {
                        r.fail(format!("seed {seed}: returned coloring is bad"));
                    }
                }
            }
            Err(e) => r.fail(format!("seed {seed}: {e}")),
        }
    }
    if solved < 18 {
        r.fail(format!("resampling solved only {solved}/20 seeds"));
    }

    let mut false_passes = 0;
    let c1s = [0.05, 0.1, 0.2, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0, 50.0];
    let c2s = [0.5, 1.0, 2.0, 5.0, 10.0, 20.0, 40.0, 80.0, 160.0, 320.0];
    let mut points = 0;
    for (i, &c1) in c1s.iter().enumerate() {
        for (j, &c2) in c2s.iter().enumerate() {
            let delta = [0.0, 0.5, 3.0, 25.0][(i + j) % 4];
            let mut params =
                LllParams { s: 4, k: 10, q: 2, c1, c2, c3: c1 * c2 * c2 / 4.0 - c2 + delta, epsilon: DEFAULT_EPSILON };
            while params.margin() < 0.0 {
                params.c3 += REL_TOLERANCE * params.c3.abs().max(1.0);
            }
            points += 1;
            match lll_check(&params, 200.0) {
                Ok(rep) if rep.holds => {
                    false_passes += 1;
                    r.fail(format!("c1={c1}, c2={c2}, c3={}: passes with margin {}", params.c3, rep.margin));
                }
                Ok(_) => {}
                Err(e) => r.fail(format!("c1={c1}, c2={c2}: {e}")),
            }
        }
    }
    let fixture = LllParams { s: 4, k: 10, q: 2, c1: 0.2, c2: 40.0, c3: 5.0, epsilon: DEFAULT_EPSILON };
    match lll_check(&fixture, 1e5) {
        Ok(rep) if rep.holds => {}
        Ok(rep) => r.fail(format!("fixture fails: {:?}", rep.inequalities)),
        Err(e) => r.fail(format!("fixture: {e}")),
    }
    r.summary = format!("resampling {solved}/20 seeds, {points} grid points with {false_passes} false passes");
    r
}
