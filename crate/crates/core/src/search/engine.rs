//! Level-by-level generation of colorings, one vertex at a time.
//!
//! Level `m` holds one canonical representative per isomorphism class of
//! admissible colorings of `K_m`. A parent is extended by assigning colors
//! to the edges from the new vertex to vertices `0..m` in order, pruning
//! rainbow triangles and vertex sets with too few colors as soon as their
//! last edge is fixed. Children are deduplicated by canonical form, so each
//! level is independent of thread scheduling.

use std::collections::HashMap;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::Instant;

use rayon::prelude::*;

use super::canon::{canonical_form, CanonicalForm};
use super::{Budget, Prunes};
use crate::coloring::{Color, EdgeColoring};

/// What admissible colorings must satisfy.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Rules {
    pub k: usize,
    pub gallai: bool,
    /// Every `K_p` must receive at least `q + 1` colors.
    pub clique: Option<(usize, usize)>,
}

/// How far ahead to look when pruning.
#[derive(Debug, Clone, Copy)]
pub(crate) enum Horizon {
    /// The final order is known.
    Target(usize),
    /// Open-ended: keep every admissible coloring, flag which can grow.
    Open,
}

#[derive(Default)]
pub(crate) struct Counters {
    pub nodes: AtomicU64,
    pub rainbow: AtomicU64,
    pub clique: AtomicU64,
    pub isomorph: AtomicU64,
    pub aborted: AtomicBool,
}

impl Counters {
    pub fn prunes(&self) -> Prunes {
        Prunes {
            rainbow: self.rainbow.load(Ordering::Relaxed),
            clique_colors: self.clique.load(Ordering::Relaxed),
            isomorph: self.isomorph.load(Ordering::Relaxed),
        }
    }
}

/// A level: canonical forms mapped to whether they may be extended.
pub(crate) type Level = HashMap<CanonicalForm, bool>;

pub(crate) struct Engine<'a> {
    pub rules: Rules,
    pub budget: &'a Budget,
    pub started: Instant,
    pub counters: &'a Counters,
    pub parallel: bool,
}

// Per-level constants shared by all parents.
struct Plan {
    m: usize,
    /// Constraint sizes (with the new vertex) that prune.
    hard: Vec<usize>,
    /// Constraint size that only clears the "extendable" flag.
    soft: Option<usize>,
    /// `subsets[j]`: sets `T` of earlier vertices `< j` whose size makes
    /// `T + {j, new}` a constrained size.
    subsets: Vec<Vec<u64>>,
}

// Fewest colors a set of `t` vertices may carry so that every `p`-set
// reached by adding vertices (each adding at most one new color) can still
// get `q + 1`.
fn need(p: usize, q: usize, t: usize) -> usize {
    (q + 1 + t).saturating_sub(p)
}

impl Engine<'_> {
    fn plan(&self, m: usize, horizon: Horizon) -> Plan {
        let mut hard = Vec::new();
        let mut soft = None;
        if let Some((p, q)) = self.rules.clique {
            let lo = match horizon {
                Horizon::Target(n) if self.rules.gallai => p.saturating_sub(n - (m + 1)),
                _ => p,
            };
            hard = (lo.max(2)..=p.min(m + 1)).filter(|&t| need(p, q, t) >= 2).collect();
            if matches!(horizon, Horizon::Open) && self.rules.gallai && p >= 3 && p - 1 <= m + 1 {
                soft = Some(p - 1).filter(|&t| need(p, q, t) >= 2);
            }
        }
        let sizes: Vec<usize> = hard.iter().chain(soft.iter()).map(|t| t - 2).collect();
        let subsets = (0..m)
            .map(|j| {
                let mut out = Vec::new();
                for &s in &sizes {
                    combinations(j, s, &mut out);
                }
                out
            })
            .collect();
        Plan { m, hard, soft, subsets }
    }

    fn over_budget(&self) -> bool {
        if self.counters.aborted.load(Ordering::Relaxed) {
            return true;
        }
        let out = self.counters.nodes.load(Ordering::Relaxed) > self.budget.max_nodes
            || self.started.elapsed() > self.budget.max_time;
        if out {
            self.counters.aborted.store(true, Ordering::Relaxed);
        }
        out
    }

    /// Builds level `m + 1` from the extendable members of `level`. Returns
    /// `None` when the budget runs out.
    pub fn next_level(&self, level: &[CanonicalForm], horizon: Horizon) -> Option<Level> {
        let m = level.first().map_or(0, CanonicalForm::n);
        let plan = self.plan(m, horizon);
        let work = |acc: Level, parent: &CanonicalForm| self.extend_into(acc, parent, &plan);
        let out = if self.parallel {
            level.par_iter().fold(Level::new, work).reduce(Level::new, |mut a, b| {
                let dups = b.len() + a.len();
                a.extend(b);
                self.counters.isomorph.fetch_add((dups - a.len()) as u64, Ordering::Relaxed);
                a
            })
        } else {
            level.iter().fold(Level::new(), work)
        };
        (!self.counters.aborted.load(Ordering::Relaxed)).then_some(out)
    }

    fn extend_into(&self, mut acc: Level, parent: &CanonicalForm, plan: &Plan) -> Level {
        if self.over_budget() {
            return acc;
        }
        let g = parent.decode(self.rules.k);
        let mut ext = Extension::new(self, &g, plan);
        ext.dfs(0, parent.colors(), true, &mut |child, extendable| {
            let key = canonical_form(&child);
            if acc.insert(key, extendable).is_some() {
                self.counters.isomorph.fetch_add(1, Ordering::Relaxed);
            }
        });
        self.counters.nodes.fetch_add(ext.nodes, Ordering::Relaxed);
        self.counters.rainbow.fetch_add(ext.rainbow, Ordering::Relaxed);
        self.counters.clique.fetch_add(ext.clique, Ordering::Relaxed);
        acc
    }
}

fn combinations(j: usize, s: usize, out: &mut Vec<u64>) {
    if s > j {
        return;
    }
    if s == 0 {
        out.push(0);
        return;
    }
    // Gosper's hack over the low `j` bits
    let mut x: u64 = (1 << s) - 1;
    let limit = 1u64 << j;
    while x < limit {
        out.push(x);
        let c = x & x.wrapping_neg();
        let r = x + c;
        x = (((r ^ x) >> 2) / c) | r;
    }
}

struct Extension<'e, 'g> {
    engine: &'e Engine<'e>,
    g: &'g EdgeColoring,
    plan: &'g Plan,
    m: usize,
    /// `inner[T]`: colors on the parent's edges inside `T`.
    inner: Vec<u64>,
    x: Vec<Color>,
    nodes: u64,
    rainbow: u64,
    clique: u64,
}

impl<'e, 'g> Extension<'e, 'g> {
    fn new(engine: &'e Engine<'e>, g: &'g EdgeColoring, plan: &'g Plan) -> Self {
        let m = plan.m;
        let inner = if engine.rules.clique.is_some() && m > 0 {
            let mut t = vec![0u64; 1 << m];
            for s in 1usize..1 << m {
                let top = 63 - (s as u64).leading_zeros() as usize;
                let rest = s & !(1 << top);
                let mut row = 0u64;
                let mut r = rest;
                while r != 0 {
                    let i = r.trailing_zeros() as usize;
                    r &= r - 1;
                    row |= 1 << (g.color(i, top) - 1);
                }
                t[s] = t[rest] | row;
            }
            t
        } else {
            Vec::new()
        };
        Extension { engine, g, plan, m, inner, x: vec![0; m], nodes: 0, rainbow: 0, clique: 0 }
    }

    fn dfs(&mut self, j: usize, used: usize, extendable: bool, emit: &mut dyn FnMut(EdgeColoring, bool)) {
        if j == self.m {
            let g = self.g;
            let x = &self.x;
            let child = EdgeColoring::from_fn(self.m + 1, self.engine.rules.k, |u, v| {
                if v == self.m {
                    x[u] as usize
                } else {
                    g.color(u, v) as usize
                }
            })
            .expect("child colors stay in the palette");
            emit(child, extendable);
            return;
        }
        if self.nodes & 0xfff == 0xfff && self.engine.over_budget() {
            return;
        }
        let top = (used + 1).min(self.engine.rules.k);
        'color: for c in 1..=top as Color {
            self.nodes += 1;
            if self.engine.rules.gallai {
                for i in 0..j {
                    let (a, b) = (self.x[i], self.g.color(i, j));
                    if a != c && a != b && c != b {
                        self.rainbow += 1;
                        continue 'color;
                    }
                }
            }
            self.x[j] = c;
            let mut ok_ext = extendable;
            if let Some((p, q)) = self.engine.rules.clique {
                for &t in &self.plan.subsets[j] {
                    let size = t.count_ones() as usize + 2;
                    let hard = self.plan.hard.contains(&size);
                    if !hard && !ok_ext {
                        continue;
                    }
                    let s = t | 1 << j;
                    let mut colors = self.inner[s as usize];
                    let mut r = s;
                    while r != 0 {
                        let i = r.trailing_zeros() as usize;
                        r &= r - 1;
                        colors |= 1 << (self.x[i] - 1);
                    }
                    if (colors.count_ones() as usize) < need(p, q, size) {
                        if hard {
                            self.clique += 1;
                            continue 'color;
                        }
                        debug_assert_eq!(Some(size), self.plan.soft);
                        ok_ext = false;
                    }
                }
            }
            self.dfs(j + 1, used.max(c as usize), ok_ext, emit);
        }
    }
}
