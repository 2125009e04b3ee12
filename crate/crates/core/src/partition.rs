//! Gallai partitions: vertex partitions into at least two blocks where each
//! pair of blocks is joined in a single color and at most two colors occur
//! between blocks.

use thiserror::Error;

use crate::coloring::{Color, ColorSet, CoreError, EdgeColoring, RainbowTriangle, VertexSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("malformed partition: {0}")]
    Malformed(String),
    #[error("no partition found and the coloring has a {0}")]
    NotGallai(RainbowTriangle),
    #[error("no partition found")]
    NotFound,
    #[error(transparent)]
    Core(#[from] CoreError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GallaiPartition {
    /// Blocks ordered by their smallest vertex.
    pub blocks: Vec<VertexSet>,
    pub cross_colors: ColorSet,
    /// Block `i` becomes vertex `i`.
    pub quotient: EdgeColoring,
}

/// Why a partition is not a Gallai partition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// Blocks `a` and `b` are joined by more than one color.
    Mixed { a: usize, b: usize, colors: ColorSet },
    /// More than two colors appear between blocks.
    TooManyCrossColors(ColorSet),
    /// The recorded cross colors differ from the actual ones.
    CrossColorMismatch { recorded: ColorSet, actual: ColorSet },
    /// The recorded quotient differs from the actual one.
    QuotientMismatch,
}

pub(crate) fn components(adj: &[u64], within: VertexSet) -> Vec<VertexSet> {
    let mut left = within;
    let mut out = Vec::new();
    while let Some(start) = left.first() {
        let mut comp = VertexSet::singleton(start);
        let mut frontier = comp;
        while let Some(v) = frontier.first() {
            frontier.remove(v);
            let fresh = VertexSet(adj[v] & within.0 & !comp.0);
            comp = comp.union(fresh);
            frontier = frontier.union(fresh);
        }
        left = left.difference(comp);
        out.push(comp);
    }
    out
}

fn malformed(msg: impl Into<String>) -> PartitionError {
    PartitionError::Malformed(msg.into())
}

/// Checks that `blocks` partition the vertex set into at least two nonempty parts.
fn check_shape(g: &EdgeColoring, blocks: &[VertexSet]) -> Result<(), PartitionError> {
    if blocks.len() < 2 {
        return Err(malformed(format!("{} block(s), need at least 2", blocks.len())));
    }
    let mut seen = VertexSet::EMPTY;
    for (i, b) in blocks.iter().enumerate() {
        if b.is_empty() {
            return Err(malformed(format!("block {i} is empty")));
        }
        if !b.is_subset(g.vertices()) {
            return Err(malformed(format!("block {i} has vertices outside 0..{}", g.n())));
        }
        if !seen.intersection(*b).is_empty() {
            return Err(malformed(format!("block {i} overlaps an earlier block")));
        }
        seen = seen.union(*b);
    }
    if seen != g.vertices() {
        return Err(malformed(format!("vertices {:?} are not covered", g.vertices().difference(seen))));
    }
    Ok(())
}

/// First violation of the Gallai-partition conditions, if any.
pub fn verify_blocks(g: &EdgeColoring, blocks: &[VertexSet]) -> Result<Option<Violation>, PartitionError> {
    check_shape(g, blocks)?;
    let mut cross = ColorSet::EMPTY;
    for a in 0..blocks.len() {
        for b in a + 1..blocks.len() {
            let colors = g.colors_across(blocks[a], blocks[b]);
            if colors.len() > 1 {
                return Ok(Some(Violation::Mixed { a, b, colors }));
            }
            cross = cross.union(colors);
        }
    }
    if cross.len() > 2 {
        return Ok(Some(Violation::TooManyCrossColors(cross)));
    }
    Ok(None)
}

/// Verifies blocks, cross colors and quotient of `p` against `g`.
pub fn verify_partition(g: &EdgeColoring, p: &GallaiPartition) -> Result<Option<Violation>, PartitionError> {
    if let Some(v) = verify_blocks(g, &p.blocks)? {
        return Ok(Some(v));
    }
    let q = quotient(g, &p.blocks)?;
    let actual = q.used_colors();
    if actual != p.cross_colors {
        return Ok(Some(Violation::CrossColorMismatch { recorded: p.cross_colors, actual }));
    }
    if q != p.quotient {
        return Ok(Some(Violation::QuotientMismatch));
    }
    Ok(None)
}

fn quotient(g: &EdgeColoring, blocks: &[VertexSet]) -> Result<EdgeColoring, CoreError> {
    let reps: Vec<usize> = blocks.iter().map(|b| b.first().expect("nonempty block")).collect();
    EdgeColoring::from_fn(blocks.len(), g.k(), |a, b| g.color(reps[a], reps[b]) as usize)
}

fn assemble(g: &EdgeColoring, mut blocks: Vec<VertexSet>) -> GallaiPartition {
    blocks.sort_by_key(|b| b.first());
    let quotient = quotient(g, &blocks).expect("blocks are nonempty and at least two");
    GallaiPartition { cross_colors: quotient.used_colors(), blocks, quotient }
}

/// The finest partition whose cross edges are monochromatic per block pair
/// and colored inside `allowed`.
///
/// Starts from the components of the edges colored outside `allowed` and
/// merges block pairs that are not joined in one allowed color. Every valid
/// partition with cross colors in `allowed` is a coarsening of the result.
pub fn finest_partition(g: &EdgeColoring, allowed: ColorSet) -> Vec<VertexSet> {
    let other = ColorSet::palette(g.k()).difference(allowed);
    let mut blocks = components(&g.adjacency(other), g.vertices());
    'merge: loop {
        for a in 0..blocks.len() {
            for b in a + 1..blocks.len() {
                let cs = g.colors_across(blocks[a], blocks[b]);
                if cs.len() > 1 || !cs.is_subset(allowed) {
                    blocks[a] = blocks[a].union(blocks[b]);
                    blocks.swap_remove(b);
                    continue 'merge;
                }
            }
        }
        break;
    }
    blocks.sort_by_key(|b| b.first());
    blocks
}

fn candidates(g: &EdgeColoring) -> Vec<ColorSet> {
    let used = g.used_colors().to_vec();
    let mut out: Vec<ColorSet> = used.iter().map(|&a| ColorSet::single(a)).collect();
    for (i, &a) in used.iter().enumerate() {
        for &b in &used[i + 1..] {
            out.push(ColorSet::single(a).union(ColorSet::single(b)));
        }
    }
    out
}

fn not_found(g: &EdgeColoring) -> PartitionError {
    match g.rainbow_triangle() {
        Some(t) => PartitionError::NotGallai(t),
        None => PartitionError::NotFound,
    }
}

/// A Gallai partition, found by trying single cross colors in increasing
/// order and then pairs in lexicographic order; the first candidate whose
/// finest partition has two or more blocks wins.
pub fn find_gallai_partition(g: &EdgeColoring) -> Result<GallaiPartition, PartitionError> {
    if g.n() < 2 {
        return Err(CoreError::TooSmall { n: g.n(), min: 2 }.into());
    }
    candidates(g)
        .into_iter()
        .map(|cs| finest_partition(g, cs))
        .find(|blocks| blocks.len() >= 2)
        .map(|blocks| assemble(g, blocks))
        .ok_or_else(|| not_found(g))
}

/// Largest number of finest blocks for which coarsenings are enumerated.
pub const EXACT_COARSENING_LIMIT: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinParts {
    pub partition: GallaiPartition,
    /// False when some finest partition was too large to enumerate and
    /// was used as is.
    pub exact: bool,
}

/// A Gallai partition with the fewest blocks.
///
/// Two blocks are possible exactly when the edges outside some color are
/// disconnected. Otherwise every partition uses two cross colors, and for
/// each pair the valid coarsenings of its finest partition are enumerated.
pub fn find_min_parts_partition(g: &EdgeColoring) -> Result<MinParts, PartitionError> {
    if g.n() < 2 {
        return Err(CoreError::TooSmall { n: g.n(), min: 2 }.into());
    }
    let used = g.used_colors();
    for a in used.iter() {
        let rest = ColorSet::palette(g.k()).difference(ColorSet::single(a));
        let comps = components(&g.adjacency(rest), g.vertices());
        if comps.len() >= 2 {
            let first = comps[0];
            let blocks = vec![first, g.vertices().difference(first)];
            return Ok(MinParts { partition: assemble(g, blocks), exact: true });
        }
    }
    let mut best: Option<Vec<VertexSet>> = None;
    let mut exact = true;
    for cs in candidates(g).into_iter().filter(|cs| cs.len() == 2) {
        let fine = finest_partition(g, cs);
        if fine.len() < 2 {
            continue;
        }
        let bound = best.as_ref().map_or(usize::MAX, Vec::len);
        let found = if fine.len() <= EXACT_COARSENING_LIMIT {
            coarsest_valid(g, &fine, bound)
        } else {
            exact = false;
            (fine.len() < bound).then(|| fine.clone())
        };
        if let Some(blocks) = found {
            best = Some(blocks);
        }
    }
    match best {
        Some(blocks) => {
            debug_assert!(blocks.len() != 3, "three-part minimum is impossible");
            Ok(MinParts { partition: assemble(g, blocks), exact })
        }
        None => Err(not_found(g)),
    }
}

// Enumerates set partitions of `fine` (as restricted growth strings) whose
// groups are pairwise monochromatic, keeping one with fewer than `bound`
// groups and as few as possible.
fn coarsest_valid(g: &EdgeColoring, fine: &[VertexSet], bound: usize) -> Option<Vec<VertexSet>> {
    let f = fine.len();
    let reps: Vec<usize> = fine.iter().map(|b| b.first().expect("nonempty")).collect();
    let color = |i: usize, j: usize| g.color(reps[i], reps[j]);
    struct State {
        group: Vec<usize>,
        link: Vec<Vec<Color>>,
        best: Option<(usize, Vec<usize>)>,
    }
    fn rec(st: &mut State, i: usize, groups: usize, f: usize, bound: usize, color: &dyn Fn(usize, usize) -> Color) {
        let limit = st.best.as_ref().map_or(bound, |b| b.0);
        if groups >= limit && i < f || groups > limit {
            return;
        }
        if i == f {
            if groups >= 2 && groups < limit {
                st.best = Some((groups, st.group.clone()));
            }
            return;
        }
        for gi in 0..=groups.min(f - 1) {
            if gi == groups && groups + 1 >= limit {
                break;
            }
            let mut set = Vec::new();
            let mut ok = true;
            for j in 0..i {
                let gj = st.group[j];
                if gj == gi {
                    continue;
                }
                let c = color(i, j);
                let l = st.link[gi][gj];
                if l == 0 {
                    st.link[gi][gj] = c;
                    st.link[gj][gi] = c;
                    set.push((gi, gj));
                } else if l != c {
                    ok = false;
                    break;
                }
            }
            if ok {
                st.group[i] = gi;
                rec(st, i + 1, groups.max(gi + 1), f, bound, color);
            }
            for (a, b) in set {
                st.link[a][b] = 0;
                st.link[b][a] = 0;
            }
        }
    }
    let mut st = State { group: vec![0; f], link: vec![vec![0; f]; f], best: None };
    rec(&mut st, 0, 0, f, bound, &color);
    st.best.map(|(m, group)| {
        let mut blocks = vec![VertexSet::EMPTY; m];
        for (i, &gi) in group.iter().enumerate() {
            blocks[gi] = blocks[gi].union(fine[i]);
        }
        blocks
    })
}

/// The smallest color whose edges form a connected spanning subgraph.
pub fn spanning_connected_color(g: &EdgeColoring) -> Result<Color, PartitionError> {
    if g.n() < 2 {
        return Err(CoreError::TooSmall { n: g.n(), min: 2 }.into());
    }
    g.used_colors()
        .iter()
        .find(|&c| components(&g.adjacency(ColorSet::single(c)), g.vertices()).len() == 1)
        .ok_or_else(|| not_found(g))
}

/// `|C(v, V) \ C(V)|`: colors from `v` into `set` that do not occur inside it.
pub fn external_color_check(g: &EdgeColoring, v: usize, set: VertexSet) -> Result<usize, PartitionError> {
    if v >= g.n() {
        return Err(CoreError::VertexOutOfRange { vertex: v, n: g.n() }.into());
    }
    if set.contains(v) {
        return Err(CoreError::VertexInSet(v).into());
    }
    if set.len() < 2 {
        return Err(CoreError::TooSmall { n: set.len(), min: 2 }.into());
    }
    let inner = g.colors_on_subset(set)?;
    Ok(g.colors_between(v, set).difference(inner).len())
}
