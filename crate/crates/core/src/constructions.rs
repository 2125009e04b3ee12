//! Explicit colorings with re-verified extremal properties.
//!
//! Every constructor returns a [`Certificate`] whose claims were checked
//! against the finished coloring. A constructor whose output fails one of
//! its claims returns [`ConstructionError::VerificationFailed`] instead.

use std::fmt;

use thiserror::Error;

use crate::coloring::{Color, ColorSet, CoreError, EdgeColoring, VertexSet, MAX_VERTICES};

#[derive(Debug, Error)]
pub enum ConstructionError {
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("expected {expected} parts, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("color {0} is already used by the coloring")]
    ColorCollision(Color),
    #[error("result would have {0} vertices, more than the supported 64")]
    TooLarge(usize),
    #[error("{name}: claim `{claim}` failed: {detail}")]
    VerificationFailed { name: String, claim: String, detail: String },
    #[error(transparent)]
    Core(#[from] CoreError),
}

fn bad(msg: impl Into<String>) -> ConstructionError {
    ConstructionError::BadParams(msg.into())
}

/// Claims are skipped when they would require scanning more subsets.
pub const VERIFY_SUBSET_LIMIT: u128 = 5_000_000;

// ====================================================================
// Properties and certificates
// ====================================================================

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Property {
    /// No rainbow triangle.
    Gallai,
    /// All `count` colors of the palette appear.
    UsesColors { count: usize },
    /// Every `K_p` receives at least `colors` colors.
    CliqueColorsAtLeast { p: usize, colors: usize },
    /// Every `K_p` receives exactly `colors` colors.
    CliqueColorsExactly { p: usize, colors: usize },
    /// Every complete subgraph using at most `q` colors has at most `size` vertices.
    QColoredCliqueAtMost { q: usize, size: usize },
    /// Deleting the edges of any two colors needs at least `deletions` vertex deletions.
    PairDeletionsAtLeast { deletions: usize },
    /// Edges between distinct blocks have `color`; no edge inside a block has it.
    CrossColor { color: Color, blocks: Vec<VertexSet> },
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Property::Gallai => write!(f, "no rainbow triangle"),
            Property::UsesColors { count } => write!(f, "uses all {count} colors"),
            Property::CliqueColorsAtLeast { p, colors } => {
                write!(f, "every K_{p} has at least {colors} colors")
            }
            Property::CliqueColorsExactly { p, colors } => {
                write!(f, "every K_{p} has exactly {colors} colors")
            }
            Property::QColoredCliqueAtMost { q, size } => {
                write!(f, "every {q}-colored complete subgraph has at most {size} vertices")
            }
            Property::PairDeletionsAtLeast { deletions } => {
                write!(f, "removing any two colors needs at least {deletions} vertex deletions")
            }
            Property::CrossColor { color, blocks } => {
                write!(f, "color {color} is exactly the edges between {} blocks", blocks.len())
            }
        }
    }
}

impl Property {
    /// Re-checks the property, returning a human-readable detail either way.
    pub fn check(&self, g: &EdgeColoring) -> (bool, String) {
        match self {
            Property::Gallai => match g.rainbow_triangle() {
                None => (true, "no rainbow triangle".into()),
                Some(t) => (false, t.to_string()),
            },
            Property::UsesColors { count } => {
                let used = g.used_colors().len();
                (used == *count, format!("{used} colors used"))
            }
            Property::CliqueColorsAtLeast { p, colors } => {
                if *colors == 0 {
                    return (true, "trivial".into());
                }
                match g.find_p_subset_with_at_most(*p, colors - 1) {
                    None if *p > g.n() => (true, format!("vacuous: no K_{p} in K_{}", g.n())),
                    None => (true, format!("no K_{p} with fewer than {colors} colors")),
                    Some(s) => (false, format!("{s:?} has only {} colors", g.colors_on(s).len())),
                }
            }
            Property::CliqueColorsExactly { p, colors } => {
                match (g.min_colors_over_p_subsets(*p), g.max_colors_over_p_subsets(*p)) {
                    (Some(lo), Some(hi)) => (
                        lo.colors == *colors && hi.colors == *colors,
                        format!("K_{p} color counts range over {}..={}", lo.colors, hi.colors),
                    ),
                    _ => (true, format!("vacuous: no K_{p} in K_{}", g.n())),
                }
            }
            Property::QColoredCliqueAtMost { q, size } => {
                let (s, cs) = g.largest_q_colored_clique(*q);
                (s.len() <= *size, format!("largest has {} vertices on colors {cs:?}", s.len()))
            }
            Property::PairDeletionsAtLeast { deletions } => {
                let used = g.used_colors().to_vec();
                let mut worst = (usize::MAX, 0, 0);
                for (a, &i) in used.iter().enumerate() {
                    for &j in &used[a + 1..] {
                        let d = g.min_deletions_to_avoid(ColorSet::single(i).union(ColorSet::single(j)));
                        if d < worst.0 {
                            worst = (d, i, j);
                        }
                    }
                }
                let (d, i, j) = worst;
                (d >= *deletions, format!("colors {i},{j} need {d} deletions"))
            }
            Property::CrossColor { color, blocks } => {
                let block_of = |v: usize| blocks.iter().position(|b| b.contains(v));
                for u in 0..g.n() {
                    for v in u + 1..g.n() {
                        let across = block_of(u) != block_of(v);
                        if across != (g.color(u, v) == *color) {
                            return (false, format!("edge {u}-{v} has color {}", g.color(u, v)));
                        }
                    }
                }
                (true, "cross edges match".into())
            }
        }
    }

    // Number of p-subsets a check scans, used to skip infeasible claims.
    fn cost(&self, n: usize) -> u128 {
        match self {
            Property::CliqueColorsAtLeast { p, .. } | Property::CliqueColorsExactly { p, .. } => binomial(n, *p),
            _ => 0,
        }
    }
}

pub(crate) fn binomial(n: usize, r: usize) -> u128 {
    if r > n {
        return 0;
    }
    let r = r.min(n - r);
    (0..r).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Claim {
    pub property: Property,
    pub detail: String,
}

/// A coloring together with the claims that were verified on it.
#[derive(Debug, Clone)]
pub struct Certificate {
    pub name: String,
    pub coloring: EdgeColoring,
    pub claims: Vec<Claim>,
}

impl Certificate {
    fn verify(
        name: impl Into<String>,
        coloring: EdgeColoring,
        properties: Vec<Property>,
    ) -> Result<Self, ConstructionError> {
        let name = name.into();
        let n = coloring.n();
        let mut claims = Vec::with_capacity(properties.len());
        for property in properties {
            if property.cost(n) > VERIFY_SUBSET_LIMIT {
                continue;
            }
            let (ok, detail) = property.check(&coloring);
            if !ok {
                return Err(ConstructionError::VerificationFailed { name, claim: property.to_string(), detail });
            }
            claims.push(Claim { property, detail });
        }
        Ok(Certificate { name, coloring, claims })
    }

    pub fn claims_property(&self, p: &Property) -> bool {
        self.claims.iter().any(|c| &c.property == p)
    }
}

// ====================================================================
// Staircase family
// ====================================================================

/// `K_m` with `c(v_i v_j) = i` for `i < j` (1-based), palette `k`.
///
/// Every `K_p` inside it receives exactly `p - 1` colors.
pub fn staircase(k: usize, m: usize) -> Result<Certificate, ConstructionError> {
    if m < 2 || k + 1 < m {
        return Err(bad(format!("staircase needs m >= 2 and k >= m - 1, got k={k}, m={m}")));
    }
    let g = EdgeColoring::from_fn(m, k, |u, _| u + 1)?;
    let mut props = vec![Property::Gallai];
    props.extend((2..=m).map(|p| Property::CliqueColorsExactly { p, colors: p - 1 }));
    Certificate::verify(format!("staircase(k={k}, m={m})"), g, props)
}

/// The staircase on `K_{k+2}` with its last edge recolored `k`.
///
/// Every `K_p` receives at least `p - 2` colors while only `k` colors are
/// used. With `k = p - 3` there is no `K_p` at all.
pub fn staircase_tail(k: usize, p: usize) -> Result<Certificate, ConstructionError> {
    if p < 4 || k + 3 < p {
        return Err(bad(format!("staircase tail needs p >= 4 and k >= p - 3, got k={k}, p={p}")));
    }
    let n = k + 2;
    if n > MAX_VERTICES {
        return Err(ConstructionError::TooLarge(n));
    }
    let g = EdgeColoring::from_fn(n, k, |u, _| (u + 1).min(k))?;
    let props =
        vec![Property::Gallai, Property::UsesColors { count: k }, Property::CliqueColorsAtLeast { p, colors: p - 2 }];
    Certificate::verify(format!("staircase-tail(k={k}, p={p})"), g, props)
}

/// `K_{k+c-1}` colored like the staircase on its first `k` vertices, with
/// every remaining edge colored `k`.
///
/// Every `K_p` receives at least `p - c + 1` colors.
pub fn staircase_fill(k: usize, c: usize) -> Result<Certificate, ConstructionError> {
    if k < 2 || c < 2 {
        return Err(bad(format!("staircase fill needs k >= 2 and c >= 2, got k={k}, c={c}")));
    }
    let n = k + c - 1;
    if n > MAX_VERTICES {
        return Err(ConstructionError::TooLarge(n));
    }
    let g = EdgeColoring::from_fn(n, k, |u, _| (u + 1).min(k))?;
    let mut props = vec![Property::Gallai, Property::UsesColors { count: k }];
    props.extend((c + 1..=k + c).map(|p| Property::CliqueColorsAtLeast { p, colors: p - c + 1 }));
    Certificate::verify(format!("staircase-fill(k={k}, c={c})"), g, props)
}

// ====================================================================
// Substitution and joins
// ====================================================================

fn substitute(g0: &EdgeColoring, parts: &[&EdgeColoring]) -> Result<EdgeColoring, ConstructionError> {
    if parts.len() != g0.n() {
        return Err(ConstructionError::ArityMismatch { expected: g0.n(), got: parts.len() });
    }
    let total: usize = parts.iter().map(|h| h.n()).sum();
    if total > MAX_VERTICES {
        return Err(ConstructionError::TooLarge(total));
    }
    let k = parts.iter().map(|h| h.k()).fold(g0.k(), usize::max);
    let mut owner = Vec::with_capacity(total);
    for (i, h) in parts.iter().enumerate() {
        owner.extend((0..h.n()).map(|local| (i, local)));
    }
    Ok(EdgeColoring::from_fn(total, k, |u, v| {
        let ((bu, lu), (bv, lv)) = (owner[u], owner[v]);
        if bu == bv {
            parts[bu].color(lu, lv) as usize
        } else {
            g0.color(bu, bv) as usize
        }
    })?)
}

/// Replaces vertex `i` of `g0` by a copy of `parts[i]`; edges between
/// copies take the color of the corresponding edge of `g0`. Colors are not
/// renumbered and the palette is the largest input palette.
pub fn substitution_product(g0: &EdgeColoring, parts: &[EdgeColoring]) -> Result<Certificate, ConstructionError> {
    let refs: Vec<&EdgeColoring> = parts.iter().collect();
    let g = substitute(g0, &refs)?;
    let mut props = Vec::new();
    if g0.is_gallai() && parts.iter().all(EdgeColoring::is_gallai) {
        props.push(Property::Gallai);
    }
    Certificate::verify(format!("substitution(n0={})", g0.n()), g, props)
}

/// `G_1 = g0`, `G_{i+1}` = `g0` with every vertex replaced by `G_i`.
///
/// A complete subgraph on at most `q` colors meets at most `L_q(g0)`
/// copies, each in at most `L_q(G_i)` vertices, where `L_q` is the largest
/// `q`-colored clique; the certificate records `L_q(G_m) <= L_q(g0)^m`.
pub fn iterated_self_substitution(g0: &EdgeColoring, m: usize) -> Result<Certificate, ConstructionError> {
    if m == 0 {
        return Err(bad("iteration count must be at least 1"));
    }
    let size = (g0.n() as u128).checked_pow(m as u32).unwrap_or(u128::MAX);
    if size > MAX_VERTICES as u128 {
        return Err(ConstructionError::TooLarge(size.min(usize::MAX as u128) as usize));
    }
    let mut g = g0.clone();
    for _ in 1..m {
        let parts = vec![&g; g0.n()];
        g = substitute(g0, &parts)?;
    }
    let mut props = Vec::new();
    if g0.is_gallai() {
        props.push(Property::Gallai);
    }
    for q in 1..=g0.used_colors().len() {
        let base = g0.largest_q_colored_clique(q).0.len();
        props.push(Property::QColoredCliqueAtMost { q, size: base.pow(m as u32) });
    }
    Certificate::verify(format!("self-substitution(n0={}, m={m})", g0.n()), g, props)
}

/// `m` disjoint copies of `g` with every edge between copies colored `fresh`.
pub fn join_copies(g: &EdgeColoring, m: usize, fresh: Color) -> Result<Certificate, ConstructionError> {
    if m < 2 {
        return Err(bad(format!("need at least two copies, got {m}")));
    }
    if fresh == 0 || fresh as usize > crate::coloring::MAX_COLORS {
        return Err(bad(format!("fresh color {fresh} is outside 1..=64")));
    }
    if g.used_colors().contains(fresh) {
        return Err(ConstructionError::ColorCollision(fresh));
    }
    let total = g.n() * m;
    if total > MAX_VERTICES {
        return Err(ConstructionError::TooLarge(total));
    }
    let k = g.k().max(fresh as usize);
    let joined = EdgeColoring::from_fn(total, k, |u, v| {
        if u / g.n() == v / g.n() {
            g.color(u % g.n(), v % g.n()) as usize
        } else {
            fresh as usize
        }
    })?;
    let blocks = (0..m).map(|i| VertexSet(VertexSet::full(g.n()).0 << (i * g.n()))).collect();
    let mut props = vec![Property::CrossColor { color: fresh, blocks }];
    if g.is_gallai() {
        props.push(Property::Gallai);
    }
    Certificate::verify(format!("join(m={m}, fresh={fresh})"), joined, props)
}

/// `K_{2^k}` with `k` colors, no monochromatic triangle and no 2-colored
/// `K_5`: a `K_4` split into a perfect matching and a 4-cycle, doubled
/// `k - 2` times with a new color each time.
pub fn p5_tower(k: usize) -> Result<Certificate, ConstructionError> {
    if !(2..=6).contains(&k) {
        return Err(bad(format!("tower needs 2 <= k <= 6, got {k}")));
    }
    let matching = |u: usize, v: usize| (u / 2 == v / 2) as usize;
    let mut g = EdgeColoring::from_fn(4, k, |u, v| 2 - matching(u, v))?;
    for fresh in 3..=k {
        g = join_copies(&g, 2, fresh as Color)?.coloring;
    }
    let props = vec![
        Property::Gallai,
        Property::UsesColors { count: k },
        Property::CliqueColorsAtLeast { p: 3, colors: 2 },
        Property::CliqueColorsAtLeast { p: 5, colors: 3 },
    ];
    Certificate::verify(format!("p5-tower(k={k})"), g, props)
}

/// `K_{m^k}`: a monochromatic `K_m` in color 1, then `k - 1` rounds of
/// joining `m` copies with a new color.
///
/// A complete subgraph on `q` colors has at most `m^q` vertices.
pub fn power_tower(m: usize, k: usize) -> Result<Certificate, ConstructionError> {
    if m < 2 || k < 1 {
        return Err(bad(format!("power tower needs m >= 2 and k >= 1, got m={m}, k={k}")));
    }
    let size = (m as u128).checked_pow(k as u32).unwrap_or(u128::MAX);
    if size > MAX_VERTICES as u128 {
        return Err(ConstructionError::TooLarge(size.min(usize::MAX as u128) as usize));
    }
    let mut g = EdgeColoring::monochromatic(m, k, 1)?;
    for fresh in 2..=k {
        g = join_copies(&g, m, fresh as Color)?.coloring;
    }
    let mut props = vec![Property::Gallai, Property::UsesColors { count: k }];
    props.extend((1..=k).map(|q| Property::QColoredCliqueAtMost { q, size: m.pow(q as u32) }));
    Certificate::verify(format!("power-tower(m={m}, k={k})"), g, props)
}

// ====================================================================
// Sporadic small colorings
// ====================================================================

/// Two `K_4` blocks joined by color 5. In the first block colors 1 and 2
/// each form a path on four vertices, in the second colors 3 and 4 do.
/// Every `K_7` receives all five colors.
pub fn k8_two_blocks() -> Result<Certificate, ConstructionError> {
    // path a-b-c-d in the low color, c-a-d-b in the high one
    let within = |u: usize, v: usize, low: usize| if v - u == 1 { low } else { low + 1 };
    let g = EdgeColoring::from_fn(8, 5, |u, v| match (u / 4, v / 4) {
        (0, 0) => within(u, v, 1),
        (1, 1) => within(u, v, 3),
        _ => 5,
    })?;
    let props =
        vec![Property::Gallai, Property::UsesColors { count: 5 }, Property::CliqueColorsAtLeast { p: 7, colors: 5 }];
    Certificate::verify("k8-two-blocks", g, props)
}

/// A Gallai 4-coloring of `K_7` without a 3-colored `K_6`.
///
/// Vertices `u, v, w, s` form `U`, followed by `x, y, z`.
pub fn k7_four_colors() -> Result<Certificate, ConstructionError> {
    const U: [usize; 4] = [0, 1, 2, 3];
    let (u, v, w, s, x, y, z) = (0, 1, 2, 3, 4, 5, 6);
    let mut edges = vec![
        ((u, v), 1),
        ((v, w), 1),
        ((w, s), 1),
        ((v, s), 2),
        ((s, u), 2),
        ((u, w), 2),
        ((z, y), 3),
        ((y, x), 4),
        ((x, z), 4),
    ];
    for a in U {
        edges.extend([((x, a), 3), ((a, z), 3), ((a, y), 4)]);
    }
    let g = EdgeColoring::from_pairs(7, 4, edges)?;
    let props =
        vec![Property::Gallai, Property::UsesColors { count: 4 }, Property::CliqueColorsAtLeast { p: 6, colors: 4 }];
    Certificate::verify("k7-four-colors", g, props)
}

/// A Gallai 5-coloring of `K_9` without a 3-colored `K_6`, in which any two
/// colors survive the deletion of any three vertices.
///
/// Vertex order: `U = {r, s, t}`, `V = {u, v, w, z}`, then `x, y`.
pub fn k9_five_colors() -> Result<Certificate, ConstructionError> {
    let (r, s, t) = (0, 1, 2);
    let (u, v, w, z) = (3, 4, 5, 6);
    let (x, y) = (7, 8);
    let mut edges = vec![((x, y), 2), ((r, s), 3), ((s, t), 3), ((v, w), 3), ((r, t), 4), ((u, z), 4)];
    for a in [u, z] {
        for b in [v, w] {
            edges.push(((a, b), 2));
        }
    }
    for a in [x, y] {
        edges.extend((0..7).map(|b| ((a, b), 1)));
    }
    for a in [r, s, t] {
        edges.extend([u, v, w, z].map(|b| ((a, b), 5)));
    }
    let g = EdgeColoring::from_pairs(9, 5, edges)?;
    let props = vec![
        Property::Gallai,
        Property::UsesColors { count: 5 },
        Property::CliqueColorsAtLeast { p: 6, colors: 4 },
        Property::PairDeletionsAtLeast { deletions: 4 },
    ];
    Certificate::verify("k9-five-colors", g, props)
}
