use std::fmt::Write as _;
use std::path::Path;
use std::time::Duration;

use anyhow::{anyhow, bail, Context, Result};
use serde_json::{json, Value};

use gallai::constructions::{self as cons, Certificate};
use gallai::formulas::{self, BoundResult};
use gallai::partition::{self, GallaiPartition};
use gallai::probabilistic::{self as prob, LllParams, ResampleProblem};
use gallai::search::cache::{CacheEntry, ResultsCache};
use gallai::search::{self, Budget, ComputeOutcome, Filter, Mode, SearchProblem, SearchStats, Verdict};
use gallai::{format, stars, EdgeColoring};

use crate::manifest::{FileDigest, RunManifest};
use crate::{Command, ConstructionName, FileFormat, Global, LllAction, OutputFormat};

pub const EXIT_OK: u8 = 0;
pub const EXIT_FALSE: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_BUDGET: u8 = 3;

pub struct Run<'m> {
    pub global: Global,
    pub manifest: &'m mut RunManifest,
    pub stdout: String,
}

impl<'m> Run<'m> {
    pub fn new(global: Global, manifest: &'m mut RunManifest) -> Self {
        Run { global, manifest, stdout: String::new() }
    }

    fn read(&mut self, path: &Path) -> Result<String> {
        let bytes = std::fs::read(path).with_context(|| format!("reading {}", path.display()))?;
        self.manifest.inputs.push(FileDigest::of_bytes(path, &bytes));
        String::from_utf8(bytes).with_context(|| format!("{} is not UTF-8", path.display()))
    }

    fn read_coloring(&mut self, path: &Path) -> Result<EdgeColoring> {
        let text = self.read(path)?;
        format::parse_any(&text).with_context(|| format!("parsing {}", path.display()))
    }

    fn write(&mut self, path: &Path, contents: &str) -> Result<()> {
        std::fs::write(path, contents).with_context(|| format!("writing {}", path.display()))?;
        self.manifest.outputs.push(FileDigest::of_bytes(path, contents.as_bytes()));
        Ok(())
    }

    fn emit(&mut self, text: impl FnOnce() -> String, structured: impl FnOnce() -> Value) {
        match self.global.format {
            OutputFormat::Text => self.stdout.push_str(&text()),
            OutputFormat::Structured => {
                let v = structured();
                self.stdout.push_str(&serde_json::to_string_pretty(&v).expect("json"));
                self.stdout.push('\n');
            }
        }
    }

    fn seed(&mut self) -> Result<u64> {
        let seed = match (self.global.seed, self.global.entropy) {
            (Some(s), _) => s,
            (None, true) => {
                use std::hash::{BuildHasher, Hasher};
                let mut h = std::collections::hash_map::RandomState::new().build_hasher();
                h.write_u128(std::time::SystemTime::now().duration_since(std::time::UNIX_EPOCH)?.as_nanos());
                self.manifest.deterministic = false;
                h.finish()
            }
            (None, false) => bail!("this command is randomized: pass --seed N or --entropy"),
        };
        self.manifest.seed = Some(seed);
        Ok(seed)
    }
}

pub fn command_name(c: &Command) -> String {
    match c {
        Command::Construct { .. } => "construct",
        Command::Verify { .. } => "verify",
        Command::Partition { .. } => "partition",
        Command::Stars { .. } => "stars",
        Command::Search { .. } => "search",
        Command::ComputeG { .. } => "compute-g",
        Command::Bounds { .. } => "bounds",
        Command::Lll { action: LllAction::Check { .. } } => "lll check",
        Command::Lll { action: LllAction::Formula { .. } } => "lll formula",
        Command::Lll { action: LllAction::Resample { .. } } => "lll resample",
        Command::Enumerate { .. } => "enumerate",
    }
    .to_string()
}

pub fn dispatch(run: &mut Run, command: &Command) -> Result<u8> {
    match command {
        Command::Construct { name, k, m, p, c, rounds, out, out_format, verify } => construct(
            run,
            *name,
            Params { k: *k, m: *m, p: *p, c: *c, rounds: *rounds },
            out.as_deref(),
            *out_format,
            *verify,
        ),
        Command::Verify { file, p, q } => verify(run, file, p.zip(*q)),
        Command::Partition { file, min_parts } => partition_cmd(run, file, *min_parts),
        Command::Stars { file, peel, shrink } => stars_cmd(run, file, *peel, *shrink),
        Command::Search { n, k, p, q, deterministic, jobs, budget_nodes, budget_seconds, out } => {
            let budget = budget_of(run, *budget_nodes, *budget_seconds);
            let mode = mode_of(run, *deterministic, *jobs);
            let problem = SearchProblem { n: *n, k: *k, p: *p, q: *q, budget, mode };
            search_cmd(run, &problem, out.as_deref())
        }
        Command::ComputeG { k, q, p, cap, jobs, budget_nodes, budget_seconds, out, cache } => {
            let budget = budget_of(run, *budget_nodes, *budget_seconds);
            let mode = mode_of(run, jobs.is_none(), *jobs);
            compute_g_cmd(run, (*k, *q, *p, *cap), budget, mode, out.as_deref(), cache.as_deref())
        }
        Command::Bounds { k, n, q, p } => bounds_cmd(run, *k, *n, *q, *p),
        Command::Lll { action } => lll_cmd(run, action),
        Command::Enumerate { n, k, gallai, exact, good, budget_nodes, count, out } => {
            let mut filters = Vec::new();
            if *gallai {
                filters.push(Filter::Gallai);
            }
            if *exact {
                filters.push(Filter::Exact);
            }
            if let Some((p, q)) = good {
                filters.push(Filter::Good { p: *p, q: *q });
            }
            let budget = budget_of(run, *budget_nodes, None);
            enumerate_cmd(run, *n, *k, &filters, budget, *count, out.as_deref())
        }
    }
}

fn budget_of(run: &mut Run, nodes: Option<u64>, seconds: Option<u64>) -> Budget {
    let mut b = Budget::default();
    if let Some(n) = nodes {
        b.max_nodes = n;
    }
    if let Some(s) = seconds {
        b.max_time = Duration::from_secs(s);
    }
    run.manifest.budgets.max_nodes = Some(b.max_nodes);
    run.manifest.budgets.max_seconds = Some(b.max_time.as_secs_f64());
    b
}

fn mode_of(run: &mut Run, deterministic: bool, jobs: Option<usize>) -> Mode {
    if deterministic {
        Mode::Deterministic
    } else {
        run.manifest.deterministic = false;
        Mode::Parallel { jobs }
    }
}

fn vertices(s: gallai::VertexSet) -> Vec<usize> {
    s.to_vec()
}

fn coloring_json(g: &EdgeColoring) -> Value {
    serde_json::from_str(&format::to_json(g)).expect("coloring json")
}

fn render(g: &EdgeColoring, f: FileFormat) -> String {
    match f {
        FileFormat::Text => format::to_text(g),
        FileFormat::Json => format::to_json(g) + "\n",
        FileFormat::Dot => format::to_dot(g),
    }
}

// --------------------------------------------------------------------

#[derive(Debug, Clone, Copy)]
pub struct Params {
    k: Option<usize>,
    m: Option<usize>,
    p: Option<usize>,
    c: Option<usize>,
    rounds: Option<usize>,
}

fn need(v: Option<usize>, flag: &str, name: &str) -> Result<usize> {
    v.ok_or_else(|| anyhow!("construction {name} needs --{flag}"))
}

fn build(name: ConstructionName, p: Params) -> Result<Certificate> {
    use ConstructionName::*;
    let label = format!("{name:?}");
    let cert = match name {
        Staircase => cons::staircase(need(p.k, "k", &label)?, need(p.m, "m", &label)?)?,
        StaircaseTail => cons::staircase_tail(need(p.k, "k", &label)?, need(p.p, "p", &label)?)?,
        StaircaseFill => cons::staircase_fill(need(p.k, "k", &label)?, need(p.c, "c", &label)?)?,
        P5Tower => cons::p5_tower(need(p.k, "k", &label)?)?,
        PowerTower => cons::power_tower(need(p.m, "m", &label)?, need(p.k, "k", &label)?)?,
        SubstitutionPower => {
            let k = need(p.k, "k", &label)?;
            let base = cons::staircase(k, k + 1)?;
            cons::iterated_self_substitution(&base.coloring, need(p.rounds, "rounds", &label)?)?
        }
        K7FourColors => cons::k7_four_colors()?,
        K8TwoBlocks => cons::k8_two_blocks()?,
        K9FiveColors => cons::k9_five_colors()?,
    };
    Ok(cert)
}

fn construct(
    run: &mut Run,
    name: ConstructionName,
    params: Params,
    out: Option<&Path>,
    out_format: FileFormat,
    show_claims: bool,
) -> Result<u8> {
    let cert = build(name, params)?;
    let body = render(&cert.coloring, out_format);
    if let Some(path) = out {
        run.write(path, &body)?;
    }
    let g = &cert.coloring;
    run.emit(
        || {
            let mut s = String::new();
            if out.is_none() {
                s.push_str(&body);
            }
            if show_claims || out.is_some() {
                let _ = writeln!(s, "certificate {}: n={} k={}", cert.name, g.n(), g.k());
                for c in cert.claims.iter().filter(|_| show_claims) {
                    let _ = writeln!(s, "  ok  {}  ({})", c.property, c.detail);
                }
            }
            s
        },
        || {
            json!({
                "name": cert.name,
                "coloring": coloring_json(g),
                "claims": cert.claims.iter().map(|c| json!({"property": c.property.to_string(), "detail": c.detail})).collect::<Vec<_>>(),
            })
        },
    );
    Ok(EXIT_OK)
}

fn verify(run: &mut Run, file: &Path, pq: Option<(usize, usize)>) -> Result<u8> {
    let g = run.read_coloring(file)?;
    let rainbow = g.rainbow_triangle();
    let clique = pq.map(|(p, q)| (p, q, g.min_colors_over_p_subsets(p)));
    let clique_ok = clique.as_ref().is_none_or(|(_, q, m)| m.as_ref().is_none_or(|m| m.colors >= *q));
    let ok = rainbow.is_none() && clique_ok;
    run.emit(
        || {
            let mut s = format!("n={} k={} colors used={}\n", g.n(), g.k(), g.used_colors().len());
            match &rainbow {
                None => s.push_str("gallai: yes\n"),
                Some(t) => {
                    let _ = writeln!(s, "gallai: no, rainbow triangle {t}");
                }
            }
            if let Some((p, q, m)) = &clique {
                match m {
                    None => {
                        let _ = writeln!(s, "every K_{p} has >= {q} colors: yes (no K_{p})");
                    }
                    Some(m) => {
                        let verdict = if m.colors >= *q { "yes" } else { "no" };
                        let _ = writeln!(
                            s,
                            "every K_{p} has >= {q} colors: {verdict} (minimum {} on {:?})",
                            m.colors,
                            vertices(m.witness)
                        );
                    }
                }
            }
            let _ = writeln!(s, "result: {}", if ok { "true" } else { "false" });
            s
        },
        || {
            json!({
                "n": g.n(),
                "k": g.k(),
                "gallai": rainbow.is_none(),
                "rainbow_triangle": rainbow.map(|t| t.vertices.to_vec()),
                "clique": clique.as_ref().map(|(p, q, m)| json!({
                    "p": p, "q": q,
                    "min_colors": m.as_ref().map(|m| m.colors),
                    "witness": m.as_ref().map(|m| vertices(m.witness)),
                })),
                "result": ok,
            })
        },
    );
    Ok(if ok { EXIT_OK } else { EXIT_FALSE })
}

fn partition_text(p: &GallaiPartition) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "blocks {}", p.blocks.len());
    for b in &p.blocks {
        let v: Vec<String> = b.iter().map(|x| x.to_string()).collect();
        let _ = writeln!(s, "{}", v.join(" "));
    }
    let cc: Vec<String> = p.cross_colors.iter().map(|c| c.to_string()).collect();
    let _ = writeln!(s, "cross-colors {}", cc.join(" "));
    s.push_str("quotient\n");
    s.push_str(&format::to_text(&p.quotient));
    s
}

fn partition_cmd(run: &mut Run, file: &Path, min_parts: bool) -> Result<u8> {
    let g = run.read_coloring(file)?;
    let (p, exact) = if min_parts {
        let m = partition::find_min_parts_partition(&g)?;
        (m.partition, Some(m.exact))
    } else {
        (partition::find_gallai_partition(&g)?, None)
    };
    run.emit(
        || {
            let mut s = partition_text(&p);
            if exact == Some(false) {
                s.push_str("# block count not proven minimal\n");
            }
            s
        },
        || {
            json!({
                "blocks": p.blocks.iter().map(|b| vertices(*b)).collect::<Vec<_>>(),
                "cross_colors": p.cross_colors.to_vec(),
                "quotient": coloring_json(&p.quotient),
                "minimal": exact,
            })
        },
    );
    Ok(EXIT_OK)
}

fn stars_cmd(run: &mut Run, file: &Path, peel: bool, shrink: bool) -> Result<u8> {
    let mut g = run.read_coloring(file)?;
    if shrink {
        g = stars::shrink_palette(&g)?;
    }
    let report = stars::check_star_lower_bound(&g)?;
    let peeled = if peel { Some(stars::peel_star_colors(&g)?) } else { None };
    let holds = report.holds && peeled.as_ref().is_none_or(|p| !p.hypotheses_met || p.bound.at_most(p.stars.len()));
    run.emit(
        || {
            let mut s = String::new();
            let _ = writeln!(s, "n={} k={} c={}", g.n(), g.k(), report.c);
            let _ = writeln!(s, "star colors: {:?} ({})", report.star_colors.to_vec(), report.star_colors.len());
            let _ = writeln!(
                s,
                "bound: {} (hypotheses {}) holds: {}",
                report.bound,
                if report.hypotheses_met { "met" } else { "not met" },
                report.holds
            );
            if let Some(p) = &peeled {
                let _ = writeln!(s, "peel: {} star colors over {} splits", p.stars.len(), p.steps.len());
                for (c, v) in &p.stars {
                    let _ = writeln!(s, "  color {c} centered at {v}");
                }
                for st in &p.steps {
                    let _ = writeln!(s, "  split {:?} | {:?} via color {}", vertices(st.kept), vertices(st.split), st.cross);
                }
            }
            s
        },
        || {
            json!({
                "n": g.n(), "k": g.k(), "c": report.c,
                "star_colors": report.star_colors.to_vec(),
                "bound": report.bound.to_string(),
                "hypotheses_met": report.hypotheses_met,
                "holds": report.holds,
                "peel": peeled.as_ref().map(|p| json!({
                    "stars": p.stars.iter().map(|(c, v)| json!({"color": c, "center": v})).collect::<Vec<_>>(),
                    "steps": p.steps.iter().map(|st| json!({"kept": vertices(st.kept), "split": vertices(st.split), "cross": st.cross})).collect::<Vec<_>>(),
                })),
            })
        },
    );
    Ok(if holds { EXIT_OK } else { EXIT_FALSE })
}

fn stats_text(s: &SearchStats) -> String {
    format!(
        "nodes {} prunes rainbow={} clique-colors={} isomorph={} census {:?}\n",
        s.nodes, s.prunes.rainbow, s.prunes.clique_colors, s.prunes.isomorph, s.census
    )
}

fn stats_json(s: &SearchStats) -> Value {
    json!({
        "nodes": s.nodes,
        "prunes": {"rainbow": s.prunes.rainbow, "clique_colors": s.prunes.clique_colors, "isomorph": s.prunes.isomorph},
        "census": s.census,
    })
}

fn search_cmd(run: &mut Run, problem: &SearchProblem, out: Option<&Path>) -> Result<u8> {
    let outcome = search::exists_good_coloring(problem)?;
    let (label, code) = match &outcome.verdict {
        Verdict::Sat(_) => ("SAT", EXIT_OK),
        Verdict::Unsat => ("UNSAT", EXIT_FALSE),
        Verdict::BudgetExceeded => ("BUDGET-EXCEEDED", EXIT_BUDGET),
    };
    if let (Some(path), Verdict::Sat(w)) = (out, &outcome.verdict) {
        run.write(path, &format::to_text(w))?;
    }
    let SearchProblem { n, k, p, q, .. } = *problem;
    run.emit(
        || {
            let mut s = format!("{label} n={n} k={k} p={p} q={q}\n");
            if let (None, Verdict::Sat(w)) = (out, &outcome.verdict) {
                s.push_str(&format::to_text(w));
            }
            s.push_str(&stats_text(&outcome.stats));
            s
        },
        || {
            json!({
                "verdict": label, "n": n, "k": k, "p": p, "q": q,
                "witness": match &outcome.verdict { Verdict::Sat(w) => coloring_json(w), _ => Value::Null },
                "stats": stats_json(&outcome.stats),
            })
        },
    );
    Ok(code)
}

fn compute_g_cmd(
    run: &mut Run,
    (k, q, p, cap): (usize, usize, usize, usize),
    budget: Budget,
    mode: Mode,
    out: Option<&Path>,
    cache: Option<&Path>,
) -> Result<u8> {
    let outcome = search::compute_g(k, q, p, cap, budget, mode)?;
    let g = match outcome {
        ComputeOutcome::Value(g) => g,
        ComputeOutcome::BudgetExceeded(stats) => {
            run.emit(
                || format!("BUDGET-EXCEEDED k={k} q={q} p={p}\n{}", stats_text(&stats)),
                || json!({"verdict": "BUDGET-EXCEEDED", "k": k, "q": q, "p": p, "stats": stats_json(&stats)}),
            );
            return Ok(EXIT_BUDGET);
        }
    };
    if let (Some(path), Some(w)) = (out, &g.witness) {
        run.write(path, &format::to_text(w))?;
    }
    if let Some(path) = cache {
        let mut c = if path.exists() {
            let text = run.read(path)?;
            ResultsCache::parse(&text).with_context(|| format!("parsing {}", path.display()))?
        } else {
            ResultsCache::new()
        };
        c.insert(k, q, p, CacheEntry { value: g.value, provenance: g.provenance.token().to_string() });
        run.write(path, &c.to_text())?;
    }
    let relation = if g.provenance == search::Provenance::SearchLowerBound { ">=" } else { "=" };
    run.emit(
        || {
            let mut s = format!("g^{k}_{q}({p}) {relation} {} ({})\n", g.value, g.provenance.token());
            if let search::Provenance::Formula(why) = &g.provenance {
                let _ = writeln!(s, "reason: {why}");
            }
            if let Some(st) = &g.stats {
                s.push_str(&stats_text(st));
            }
            s
        },
        || {
            json!({
                "k": k, "q": q, "p": p, "value": g.value,
                "exact": relation == "=",
                "provenance": g.provenance.token(),
                "witness": g.witness.as_ref().map(coloring_json),
                "stats": g.stats.as_ref().map(stats_json),
            })
        },
    );
    Ok(EXIT_OK)
}

fn bound_json(b: &BoundResult) -> Value {
    json!({
        "kind": b.kind.to_string(),
        "value": b.value.as_ref().map(|v| v.to_string()),
        "source": b.source,
        "hypotheses": b.hypotheses,
        "note": b.note,
    })
}

fn bounds_cmd(run: &mut Run, k: Option<usize>, n: Option<usize>, q: usize, p: usize) -> Result<u8> {
    let (title, rows) = match (k, n) {
        (Some(k), None) => (format!("g^{k}_{q}({p})"), formulas::bound_g(k, q, p)?),
        (None, Some(n)) => (format!("g({n},{p},{q})"), formulas::translate_to_gn(n, p, q)?),
        _ => bail!("pass exactly one of --k and --n"),
    };
    run.emit(
        || {
            let mut s = format!("{title}\n");
            for b in &rows {
                let _ = writeln!(s, "  {b}");
            }
            s
        },
        || json!({"target": title, "bounds": rows.iter().map(bound_json).collect::<Vec<_>>()}),
    );
    Ok(EXIT_OK)
}

fn lll_cmd(run: &mut Run, action: &LllAction) -> Result<u8> {
    match *action {
        LllAction::Check { s, k, q, c1, c2, c3, epsilon, n } => {
            let params = LllParams { s, k, q, c1, c2, c3, epsilon };
            let rep = prob::lll_check(&params, n)?;
            run.emit(
                || {
                    let mut out = String::new();
                    let b = &rep.bounds;
                    let _ = writeln!(out, "n={:e} r={:e} p={:e} y={} ln z={:e}", rep.n, rep.r, rep.p, rep.y, rep.ln_z);
                    let _ = writeln!(out, "c3 - c1 c2^2/4 + c2 = {}", rep.margin);
                    let _ = writeln!(
                        out,
                        "L={:e} ln PrA={:e} ln PrB={:e} ln N_AA={:e} ln N_AB={:e} ln N_BA={:e} ln N_BB={:e}",
                        b.l(),
                        b.ln_pr_a,
                        b.ln_pr_b,
                        b.ln_n_aa,
                        b.ln_n_ab,
                        b.ln_n_ba,
                        b.ln_n_bb
                    );
                    for i in &rep.inequalities {
                        let _ = writeln!(
                            out,
                            "  {:<5} {}: lhs={:e} rhs={:e} slack={:e}",
                            if i.holds { "ok" } else { "FAIL" },
                            i.name,
                            i.lhs,
                            i.rhs,
                            i.slack
                        );
                    }
                    let _ = writeln!(out, "result: {}", rep.holds);
                    out
                },
                || {
                    json!({
                        "n": rep.n, "r": rep.r, "p": rep.p, "y": rep.y, "ln_z": rep.ln_z, "margin": rep.margin,
                        "bounds": {
                            "ln_l": rep.bounds.ln_l, "ln_pr_a": rep.bounds.ln_pr_a, "ln_pr_b": rep.bounds.ln_pr_b,
                            "ln_n_aa": rep.bounds.ln_n_aa, "ln_n_ab": rep.bounds.ln_n_ab,
                            "ln_n_ba": rep.bounds.ln_n_ba, "ln_n_bb": rep.bounds.ln_n_bb,
                        },
                        "inequalities": rep.inequalities.iter().map(|i| json!({
                            "name": i.name, "lhs": i.lhs, "rhs": i.rhs, "slack": i.slack, "holds": i.holds,
                        })).collect::<Vec<_>>(),
                        "result": rep.holds,
                    })
                },
            );
            Ok(if rep.holds { EXIT_OK } else { EXIT_FALSE })
        }
        LllAction::Formula { s, p, q, k, c } => {
            let n = prob::lll_n_formula(s, p, q, k, c)?;
            run.emit(|| format!("n = {n:e}\n"), || json!({"s": s, "p": p, "q": q, "k": k, "c": c, "n": n}));
            Ok(EXIT_OK)
        }
        LllAction::Resample { n, k, s, p, q, r, max_rounds, ref out } => {
            let seed = run.seed()?;
            run.manifest.budgets.max_rounds = Some(max_rounds);
            let problem = ResampleProblem { n, k, s, p, q, r, seed, max_rounds };
            let res = prob::resample_search(&problem)?;
            let (label, code) = match &res.verdict {
                Verdict::Sat(_) => ("SAT", EXIT_OK),
                Verdict::Unsat => ("UNSAT", EXIT_FALSE),
                Verdict::BudgetExceeded => ("BUDGET-EXCEEDED", EXIT_BUDGET),
            };
            if let (Some(path), Verdict::Sat(w)) = (out, &res.verdict) {
                run.write(path, &format::to_text(w))?;
            }
            run.emit(
                || {
                    let mut t = format!("{label} after {} rounds (seed {seed})\n", res.rounds);
                    if let (None, Verdict::Sat(w)) = (out, &res.verdict) {
                        t.push_str(&format::to_text(w));
                    }
                    t
                },
                || {
                    json!({
                        "verdict": label, "rounds": res.rounds, "seed": seed,
                        "witness": match &res.verdict { Verdict::Sat(w) => coloring_json(w), _ => Value::Null },
                        "trace": res.trace.iter().map(|st| json!({
                            "event": format!("{:?}", st.event), "set": vertices(st.set),
                        })).collect::<Vec<_>>(),
                    })
                },
            );
            Ok(code)
        }
    }
}

fn enumerate_cmd(
    run: &mut Run,
    n: usize,
    k: usize,
    filters: &[Filter],
    budget: Budget,
    count_only: bool,
    out: Option<&Path>,
) -> Result<u8> {
    let e = search::enumerate_colorings(n, k, filters, budget)?;
    let listing = || {
        let mut s = String::new();
        for (i, g) in e.colorings.iter().enumerate() {
            let _ = writeln!(s, "# class {}", i + 1);
            s.push_str(&format::to_text(g));
        }
        s
    };
    if let Some(path) = out {
        let body = listing();
        run.write(path, &body)?;
    }
    let code = if e.complete { EXIT_OK } else { EXIT_BUDGET };
    run.emit(
        || {
            let mut s = format!("classes {}{}\n", e.colorings.len(), if e.complete { "" } else { " (incomplete)" });
            if !count_only && out.is_none() {
                s.push_str(&listing());
            }
            s
        },
        || {
            json!({
                "n": n, "k": k, "complete": e.complete, "count": e.colorings.len(),
                "colorings": if count_only { Value::Null } else { e.colorings.iter().map(coloring_json).collect() },
                "stats": stats_json(&e.stats),
            })
        },
    );
    Ok(code)
}
