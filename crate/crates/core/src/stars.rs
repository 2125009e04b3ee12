//! Star colors: colors whose edges all meet one vertex.
//!
//! Exact Gallai colorings with few colors relative to `n` are forced to
//! contain many star colors. This module counts them, checks the known
//! lower bounds, and implements the peeling procedure that exhibits them
//! one two-block split at a time.

use std::fmt;

use thiserror::Error;

use crate::coloring::{Color, ColorSet, CoreError, EdgeColoring, RainbowTriangle, VertexSet};
use crate::partition::components;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StarError {
    #[error("coloring uses {used} of its {k} colors")]
    NotExact { used: usize, k: usize },
    #[error("coloring is not Gallai: {0}")]
    NotGallai(RainbowTriangle),
    #[error("peeling step {step}: {claim}")]
    HypothesisViolated { step: usize, claim: String },
    #[error("no color induces a star")]
    NoStarColor,
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error(transparent)]
    Core(#[from] CoreError),
}

/// The vertex meeting every edge of color `c`, if the color is a star.
/// For a single edge the smaller endpoint is returned.
pub fn star_center(g: &EdgeColoring, c: Color) -> Option<usize> {
    let mut common = g.vertices();
    let mut seen = false;
    for u in 0..g.n() {
        for v in u + 1..g.n() {
            if g.color(u, v) == c {
                common = common.intersection(VertexSet::singleton(u).with(v));
                seen = true;
            }
        }
    }
    if seen {
        common.first()
    } else {
        None
    }
}

/// Colors whose edges form a star `K_{1,t}` with `t >= 1`.
pub fn star_colors(g: &EdgeColoring) -> ColorSet {
    g.used_colors().iter().filter(|&c| star_center(g, c).is_some()).collect()
}

/// `num / den`, kept unreduced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Ratio {
    pub num: u128,
    pub den: u128,
}

impl Ratio {
    pub fn integer(v: u128) -> Self {
        Ratio { num: v, den: 1 }
    }

    /// `count >= self`.
    pub fn at_most(self, count: usize) -> bool {
        count as u128 * self.den >= self.num
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StarReport {
    pub star_colors: ColorSet,
    /// Whether every palette color is used.
    pub exact: bool,
    /// `n - k`.
    pub c: usize,
    pub bound: Ratio,
    /// Whether the hypotheses behind a nonzero bound hold.
    pub hypotheses_met: bool,
    /// `|star_colors| >= bound`.
    pub holds: bool,
}

fn pow_u128(base: u128, exp: usize) -> Option<u128> {
    (0..exp).try_fold(1u128, |acc, _| acc.checked_mul(base))
}

/// Lower bound on the number of star colors of an exact Gallai
/// `(n - c)`-coloring of `K_n`, and whether it applies.
pub fn star_bound(n: usize, c: usize) -> (Ratio, bool) {
    if c == 1 {
        return (Ratio::integer(n.div_ceil(2) as u128), true);
    }
    match pow_u128(7 + c as u128, c) {
        Some(base) if c >= 2 && n as u128 >= 2 * base => (Ratio { num: n as u128, den: base }, true),
        _ => (Ratio::integer(0), false),
    }
}

fn exactness(g: &EdgeColoring) -> Result<usize, StarError> {
    if let Some(t) = g.rainbow_triangle() {
        return Err(StarError::NotGallai(t));
    }
    let used = g.used_colors().len();
    if used != g.k() || g.k() >= g.n() {
        return Err(StarError::NotExact { used, k: g.k() });
    }
    Ok(g.n() - g.k())
}

/// Compares the star colors of an exact Gallai coloring with the bound for
/// its `c = n - k`.
pub fn check_star_lower_bound(g: &EdgeColoring) -> Result<StarReport, StarError> {
    let c = exactness(g)?;
    let stars = star_colors(g);
    let (bound, hypotheses_met) = star_bound(g.n(), c);
    Ok(StarReport { star_colors: stars, exact: true, c, bound, hypotheses_met, holds: bound.at_most(stars.len()) })
}

/// Renumbers the used colors densely and shrinks the palette to them, so a
/// non-exact coloring can be treated as an exact one.
pub fn shrink_palette(g: &EdgeColoring) -> Result<EdgeColoring, CoreError> {
    let used = g.used_colors();
    let mut map = vec![0 as Color; g.k() + 1];
    for (i, c) in used.iter().enumerate() {
        map[c as usize] = i as Color + 1;
    }
    g.recolor(used.len().max(1), &map)
}

// ====================================================================
// Peeling
// ====================================================================

/// One split of the peeling procedure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeelStep {
    /// The part recursed into, with `|C| = |part| - deficit`.
    pub kept: VertexSet,
    /// The other part, with `|C| = |part| - 1`.
    pub split: VertexSet,
    pub cross: Color,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeelReport {
    pub c: usize,
    /// Star colors with their centers, in discovery order.
    pub stars: Vec<(Color, usize)>,
    pub steps: Vec<PeelStep>,
    pub bound: Ratio,
    pub hypotheses_met: bool,
}

/// Sides of two-block Gallai partitions of `g[within]`, enumerated per
/// cross color. Component counts above this get only one-component sides.
const GROUPING_LIMIT: usize = 16;

// Finds a split `within = kept + split` joined in one color `a` with
// |C(kept)| = |kept| - deficit, |C(split)| = |split| - 1, `a` in neither
// side and the two sides color-disjoint. Prefers the smallest `split`.
fn two_block_split(g: &EdgeColoring, within: VertexSet, deficit: usize) -> Option<PeelStep> {
    let mut best: Option<PeelStep> = None;
    for a in g.colors_on(within).iter() {
        let rest = ColorSet::palette(g.k()).difference(ColorSet::single(a));
        let comps = components(&g.adjacency(rest), within);
        if comps.len() < 2 {
            continue;
        }
        let sides: Vec<VertexSet> = if comps.len() <= GROUPING_LIMIT {
            (1u64..(1 << comps.len()) - 1)
                .map(|mask| VertexSet(mask).iter().fold(VertexSet::EMPTY, |s, i| s.union(comps[i])))
                .collect()
        } else {
            comps.clone()
        };
        for split in sides {
            let kept = within.difference(split);
            if deficit == 1 && kept.len() < split.len() {
                continue;
            }
            let (ck, cs) = (g.colors_on(kept), g.colors_on(split));
            let fits = ck.len() + deficit == kept.len()
                && cs.len() + 1 == split.len()
                && !ck.contains(a)
                && !cs.contains(a)
                && ck.intersection(cs).is_empty();
            let better = best.as_ref().is_none_or(|b| split.len() < b.split.len());
            if fits && better {
                best = Some(PeelStep { kept, split, cross: a });
            }
        }
    }
    best
}

struct Peeler<'a> {
    g: &'a EdgeColoring,
    stars: Vec<(Color, usize)>,
    steps: Vec<PeelStep>,
}

impl Peeler<'_> {
    // Peels `within` (with |C| = |within| - deficit) until no split fits.
    // Returns whether the chain reached a single vertex.
    fn run(&mut self, mut within: VertexSet, deficit: usize) -> Result<bool, StarError> {
        while within.len() >= 2 {
            let Some(step) = two_block_split(self.g, within, deficit) else {
                return Ok(false);
            };
            if let Some(center) = (step.split.len() == 1).then(|| step.split.first()).flatten() {
                self.stars.push((step.cross, center));
            } else {
                let at = self.steps.len();
                if !self.run(step.split, 1)? {
                    return Err(StarError::HypothesisViolated {
                        step: at,
                        claim: format!(
                            "block {:?} with |C| = |block| - 1 admits no further two-block split",
                            step.split
                        ),
                    });
                }
            }
            within = step.kept;
            self.steps.push(step);
        }
        Ok(true)
    }
}

/// Exhibits star colors of an exact Gallai `(n - c)`-coloring by repeated
/// two-block splits: a split-off singleton contributes its cross color
/// (centered at it), a larger split-off block is peeled recursively.
pub fn peel_star_colors(g: &EdgeColoring) -> Result<PeelReport, StarError> {
    let c = exactness(g)?;
    let (bound, hypotheses_met) = star_bound(g.n(), c);
    let mut peeler = Peeler { g, stars: Vec::new(), steps: Vec::new() };
    let finished = peeler.run(g.vertices(), c)?;
    let steps = peeler.steps.len();
    if !finished && peeler.stars.is_empty() && c == 1 {
        return Err(StarError::HypothesisViolated {
            step: steps,
            claim: "an exact coloring with deficit 1 admits a two-block split".into(),
        });
    }
    for &(color, center) in &peeler.stars {
        let ok =
            star_center(g, color).is_some_and(|_| g.color_neighborhood(center, color).len() == edge_count(g, color));
        if !ok {
            return Err(StarError::HypothesisViolated {
                step: steps,
                claim: format!("color {color} recorded at vertex {center} is not a star there"),
            });
        }
    }
    if hypotheses_met && !bound.at_most(peeler.stars.len()) {
        return Err(StarError::HypothesisViolated {
            step: steps,
            claim: format!("found {} star colors, fewer than {bound}", peeler.stars.len()),
        });
    }
    Ok(PeelReport { c, stars: peeler.stars, steps: peeler.steps, bound, hypotheses_met })
}

fn edge_count(g: &EdgeColoring, c: Color) -> usize {
    g.upper().iter().filter(|&&x| x == c).count()
}

/// Deletes the center of the smallest star color. Since that color occurs
/// only at the center, the remainder uses strictly fewer colors.
pub fn reduce_by_star(g: &EdgeColoring) -> Result<(usize, EdgeColoring), StarError> {
    let color = star_colors(g).iter().next().ok_or(StarError::NoStarColor)?;
    let center = (0..g.n())
        .max_by_key(|&v| (g.color_neighborhood(v, color).len(), std::cmp::Reverse(v)))
        .expect("a star color has an edge");
    let rest = g.induced(g.vertices().without(center))?;
    assert!(rest.used_colors().len() < g.used_colors().len());
    Ok((center, rest))
}

// ====================================================================
// The counting inequality behind the bound for c >= 2
// ====================================================================

fn lemma_terms(c: usize) -> Result<(u128, u128), StarError> {
    if c < 2 {
        return Err(StarError::BadParams(format!("c must be at least 2, got {c}")));
    }
    let overflow = || StarError::BadParams(format!("c = {c} is too large"));
    let base = pow_u128(7 + c as u128, c).ok_or_else(overflow)?;
    let d = pow_u128(6 + c as u128, c - 1).and_then(|x| x.checked_mul(2 + c as u128)).ok_or_else(overflow)?;
    Ok((base, d))
}

/// `n >= 2(7+c)^c` and `n - 3n/(7+c)^c <= N <= n`.
pub fn lemma_n_hypotheses(c: usize, n: u64, big_n: u64) -> Result<bool, StarError> {
    let (base, _) = lemma_terms(c)?;
    let (n, big_n) = (n as u128, big_n as u128);
    Ok(n >= 2 * base && big_n <= n && big_n * base >= n * base - 3 * n)
}

/// `N / ((2+c)(6+c)^(c-1)) - 2 >= n / (7+c)^c`, decided in exact integer
/// arithmetic.
pub fn lemma_n_inequality(c: usize, n: u64, big_n: u64) -> Result<bool, StarError> {
    let (base, d) = lemma_terms(c)?;
    let lhs = (big_n as u128).checked_mul(base);
    let rhs = (n as u128).checked_add(2 * base).and_then(|x| x.checked_mul(d));
    match (lhs, rhs) {
        (Some(l), Some(r)) => Ok(l >= r),
        _ => Err(StarError::BadParams("values too large".into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{k7_four_colors, p5_tower, staircase, substitution_product};

    #[test]
    fn stars_of_small_colorings() {
        let s = staircase(4, 5).unwrap().coloring;
        assert_eq!(star_colors(&s).to_vec(), vec![1, 2, 3, 4]);
        assert_eq!(star_center(&s, 3), Some(2));
        assert!(star_colors(&EdgeColoring::monochromatic(3, 1, 1).unwrap()).is_empty());
        assert!(star_colors(&p5_tower(2).unwrap().coloring).is_empty());
    }

    #[test]
    fn report_on_staircase() {
        let r = check_star_lower_bound(&staircase(5, 6).unwrap().coloring).unwrap();
        assert_eq!(r.star_colors.len(), 5);
        assert_eq!((r.c, r.bound), (1, Ratio::integer(3)));
        assert!(r.holds && r.hypotheses_met);
        let g = staircase(5, 5).unwrap().coloring;
        assert_eq!(check_star_lower_bound(&g), Err(StarError::NotExact { used: 4, k: 5 }));
        assert_eq!(check_star_lower_bound(&shrink_palette(&g).unwrap()).unwrap().c, 1);
    }

    #[test]
    fn peel_staircase() {
        let g = staircase(5, 6).unwrap().coloring;
        let r = peel_star_colors(&g).unwrap();
        assert_eq!(r.stars.len(), 5);
        let colors: Vec<Color> = r.stars.iter().map(|s| s.0).collect();
        assert_eq!(colors, vec![1, 2, 3, 4, 5]);
        assert_eq!(r.stars[0], (1, 0));
    }

    #[test]
    fn peel_nested_join() {
        // staircase(3,4) plus a vertex joined to it in color 4
        let k2 = EdgeColoring::monochromatic(2, 4, 4).unwrap();
        let one = EdgeColoring::monochromatic(1, 4, 1).unwrap();
        let h = staircase(3, 4).unwrap().coloring.with_palette(4).unwrap();
        let g = substitution_product(&k2, &[h, one]).unwrap().coloring;
        let r = peel_star_colors(&g).unwrap();
        let colors: Vec<Color> = r.stars.iter().map(|s| s.0).collect();
        assert_eq!(colors, vec![4, 1, 2, 3]);
        assert_eq!(r.stars[0].1, 4);
    }

    #[test]
    fn reduce_removes_a_color() {
        let g = staircase(4, 5).unwrap().coloring;
        let (v, rest) = reduce_by_star(&g).unwrap();
        assert_eq!(v, 0);
        assert_eq!(rest.used_colors().to_vec(), vec![2, 3, 4]);
        let k2 = EdgeColoring::monochromatic(2, 1, 1).unwrap();
        assert_eq!(reduce_by_star(&k2).unwrap().1.n(), 1);
        assert_eq!(reduce_by_star(&k7_four_colors().unwrap().coloring), Err(StarError::NoStarColor));
    }

    #[test]
    fn counting_inequality() {
        assert_eq!(lemma_n_inequality(2, 162, 156), Ok(true));
        assert_eq!(lemma_n_inequality(2, 162, 32), Ok(false));
        assert_eq!(lemma_n_hypotheses(2, 162, 156), Ok(true));
        assert_eq!(lemma_n_hypotheses(2, 162, 150), Ok(false));
        assert!(lemma_n_inequality(1, 10, 10).is_err());
    }

    #[test]
    fn bound_for_large_c_needs_huge_n() {
        assert_eq!(star_bound(64, 2), (Ratio::integer(0), false));
        assert_eq!(star_bound(162, 2), (Ratio { num: 162, den: 81 }, true));
    }
}
