//! Edge colorings of complete graphs and the basic queries on them.
//!
//! Vertices are `0..n` and colors are `1..=k`. Vertex and color sets are
//! single-word bitsets, which caps both `n` and `k` at 64.

use std::fmt;

use thiserror::Error;

pub const MAX_VERTICES: usize = 64;
pub const MAX_COLORS: usize = 64;

pub type Color = u8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoreError {
    #[error("vertex count {0} is outside 1..=64")]
    InvalidOrder(usize),
    #[error("palette size {0} is outside 1..=64")]
    InvalidPalette(usize),
    #[error("edge {{{0},{1}}} has no color")]
    IncompleteAssignment(usize, usize),
    #[error("edge {{{0},{1}}} was assigned twice")]
    DuplicateAssignment(usize, usize),
    #[error("color {color} is outside the palette 1..={k}")]
    ColorOutOfRange { color: usize, k: usize },
    #[error("vertex {vertex} is outside 0..{n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("a loop at vertex {0} is not an edge")]
    LoopEdge(usize),
    #[error("coloring is not Gallai: {0}")]
    NotGallai(RainbowTriangle),
    #[error("needs at least {min} vertices, got {n}")]
    TooSmall { n: usize, min: usize },
    #[error("vertex {0} must not belong to the set")]
    VertexInSet(usize),
    #[error("colors {0} and {1} must be distinct")]
    SameColor(Color, Color),
}

// ====================================================================
// Bitsets
// ====================================================================

/// A set of vertices of a graph on at most 64 vertices.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct VertexSet(pub u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    /// All of `0..n`.
    pub fn full(n: usize) -> Self {
        if n >= 64 {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(v: usize) -> Self {
        VertexSet(1u64 << v)
    }

    pub fn contains(self, v: usize) -> bool {
        v < 64 && self.0 >> v & 1 == 1
    }

    pub fn insert(&mut self, v: usize) {
        self.0 |= 1u64 << v;
    }

    pub fn remove(&mut self, v: usize) {
        self.0 &= !(1u64 << v);
    }

    pub fn with(self, v: usize) -> Self {
        VertexSet(self.0 | 1u64 << v)
    }

    pub fn without(self, v: usize) -> Self {
        VertexSet(self.0 & !(1u64 << v))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn union(self, other: Self) -> Self {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        VertexSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        VertexSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn iter(self) -> BitIter {
        BitIter(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VertexSet::EMPTY;
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Iterator over the set bits of a word, lowest first.
#[derive(Clone)]
pub struct BitIter(u64);

impl Iterator for BitIter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let b = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(b)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for BitIter {}

/// A set of colors from `1..=64`; color `c` lives in bit `c - 1`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct ColorSet(pub u64);

impl ColorSet {
    pub const EMPTY: ColorSet = ColorSet(0);

    pub fn bit(c: Color) -> u64 {
        1u64 << (c - 1)
    }

    pub fn single(c: Color) -> Self {
        ColorSet(Self::bit(c))
    }

    /// Colors `1..=k`.
    pub fn palette(k: usize) -> Self {
        ColorSet(VertexSet::full(k).0)
    }

    pub fn contains(self, c: Color) -> bool {
        c >= 1 && self.0 >> (c - 1) & 1 == 1
    }

    pub fn insert(&mut self, c: Color) {
        self.0 |= Self::bit(c);
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: Self) -> Self {
        ColorSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        ColorSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        ColorSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = Color> {
        BitIter(self.0).map(|b| b as Color + 1)
    }

    pub fn to_vec(self) -> Vec<Color> {
        self.iter().collect()
    }
}

impl FromIterator<Color> for ColorSet {
    fn from_iter<I: IntoIterator<Item = Color>>(iter: I) -> Self {
        let mut s = ColorSet::EMPTY;
        for c in iter {
            s.insert(c);
        }
        s
    }
}

impl fmt::Debug for ColorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

// ====================================================================
// Witnesses
// ====================================================================

/// Three vertices whose three edges carry three distinct colors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RainbowTriangle {
    pub vertices: [usize; 3],
    pub colors: [Color; 3],
}

impl fmt::Display for RainbowTriangle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.vertices;
        let [x, y, z] = self.colors;
        write!(f, "rainbow triangle {a}-{b}-{c} with colors {x},{y},{z}")
    }
}

/// A `p`-subset attaining an extremal color count.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CliqueColors {
    pub colors: usize,
    pub witness: VertexSet,
}

/// A vertex whose edges of one color reach more than a quarter of all vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DenseNeighborhood {
    pub vertex: usize,
    pub color: Color,
    pub neighbors: VertexSet,
}

// ====================================================================
// EdgeColoring
// ====================================================================

/// An assignment of a color from `1..=k` to every edge of `K_n`.
///
/// Storage is the upper triangle in row-major order: `(0,1), (0,2), ..,
/// (0,n-1), (1,2), ..`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct EdgeColoring {
    n: usize,
    k: usize,
    upper: Vec<Color>,
}

#[inline]
fn tri_index(n: usize, u: usize, v: usize) -> usize {
    debug_assert!(u < v && v < n);
    u * (2 * n - u - 1) / 2 + (v - u - 1)
}

pub(crate) fn pairs(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

impl EdgeColoring {
    fn check_dims(n: usize, k: usize) -> Result<(), CoreError> {
        if n == 0 || n > MAX_VERTICES {
            return Err(CoreError::InvalidOrder(n));
        }
        if k == 0 || k > MAX_COLORS {
            return Err(CoreError::InvalidPalette(k));
        }
        Ok(())
    }

    /// Builds a coloring from its upper triangle.
    pub fn from_upper(n: usize, k: usize, upper: Vec<Color>) -> Result<Self, CoreError> {
        Self::check_dims(n, k)?;
        let m = pairs(n);
        if upper.len() < m {
            let (u, v) = Self::pair_at(n, upper.len());
            return Err(CoreError::IncompleteAssignment(u, v));
        }
        if upper.len() > m {
            return Err(CoreError::VertexOutOfRange { vertex: n, n });
        }
        if let Some(&c) = upper.iter().find(|&&c| c == 0 || c as usize > k) {
            return Err(CoreError::ColorOutOfRange { color: c as usize, k });
        }
        Ok(EdgeColoring { n, k, upper })
    }

    /// Builds a coloring by evaluating `f(u, v)` for every `u < v`.
    pub fn from_fn<F>(n: usize, k: usize, mut f: F) -> Result<Self, CoreError>
    where
        F: FnMut(usize, usize) -> usize,
    {
        Self::check_dims(n, k)?;
        let mut upper = Vec::with_capacity(pairs(n));
        for u in 0..n {
            for v in u + 1..n {
                let c = f(u, v);
                if c == 0 || c > k {
                    return Err(CoreError::ColorOutOfRange { color: c, k });
                }
                upper.push(c as Color);
            }
        }
        Ok(EdgeColoring { n, k, upper })
    }

    /// Builds a coloring from explicit `((u, v), color)` triples. Every
    /// unordered pair must appear exactly once.
    pub fn from_pairs<I>(n: usize, k: usize, assignment: I) -> Result<Self, CoreError>
    where
        I: IntoIterator<Item = ((usize, usize), usize)>,
    {
        Self::check_dims(n, k)?;
        let mut upper = vec![0 as Color; pairs(n)];
        for ((a, b), c) in assignment {
            for v in [a, b] {
                if v >= n {
                    return Err(CoreError::VertexOutOfRange { vertex: v, n });
                }
            }
            if a == b {
                return Err(CoreError::LoopEdge(a));
            }
            if c == 0 || c > k {
                return Err(CoreError::ColorOutOfRange { color: c, k });
            }
            let (u, v) = (a.min(b), a.max(b));
            let slot = &mut upper[tri_index(n, u, v)];
            if *slot != 0 {
                return Err(CoreError::DuplicateAssignment(u, v));
            }
            *slot = c as Color;
        }
        if let Some(i) = upper.iter().position(|&c| c == 0) {
            let (u, v) = Self::pair_at(n, i);
            return Err(CoreError::IncompleteAssignment(u, v));
        }
        Ok(EdgeColoring { n, k, upper })
    }

    /// `K_n` with every edge colored `color`.
    pub fn monochromatic(n: usize, k: usize, color: Color) -> Result<Self, CoreError> {
        Self::from_fn(n, k, |_, _| color as usize)
    }

    fn pair_at(n: usize, mut i: usize) -> (usize, usize) {
        for u in 0..n {
            let row = n - u - 1;
            if i < row {
                return (u, u + 1 + i);
            }
            i -= row;
        }
        (n, n)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Palette size.
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn upper(&self) -> &[Color] {
        &self.upper
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    /// Color of edge `uv`. Panics on `u == v` or out-of-range vertices.
    #[inline]
    pub fn color(&self, u: usize, v: usize) -> Color {
        assert!(u != v && u < self.n && v < self.n, "no edge {u}-{v}");
        if u < v {
            self.upper[tri_index(self.n, u, v)]
        } else {
            self.upper[tri_index(self.n, v, u)]
        }
    }

    fn check_vertex(&self, v: usize) -> Result<(), CoreError> {
        if v >= self.n {
            Err(CoreError::VertexOutOfRange { vertex: v, n: self.n })
        } else {
            Ok(())
        }
    }

    fn check_set(&self, s: VertexSet) -> Result<(), CoreError> {
        match s.difference(self.vertices()).first() {
            Some(v) => Err(CoreError::VertexOutOfRange { vertex: v, n: self.n }),
            None => Ok(()),
        }
    }

    fn check_color(&self, c: Color) -> Result<(), CoreError> {
        if c == 0 || c as usize > self.k {
            Err(CoreError::ColorOutOfRange { color: c as usize, k: self.k })
        } else {
            Ok(())
        }
    }

    /// Same graph with a larger palette.
    pub fn with_palette(&self, k: usize) -> Result<Self, CoreError> {
        let used = self.used_colors();
        if k == 0 || k > MAX_COLORS {
            return Err(CoreError::InvalidPalette(k));
        }
        if let Some(c) = used.iter().last().filter(|&c| c as usize > k) {
            return Err(CoreError::ColorOutOfRange { color: c as usize, k });
        }
        Ok(EdgeColoring { n: self.n, k, upper: self.upper.clone() })
    }

    /// Bitmask of the colors on edges from `v` to the members of `s`
    /// (`v` itself is skipped).
    pub fn colors_between(&self, v: usize, s: VertexSet) -> ColorSet {
        let mut m = 0u64;
        for u in s.without(v).iter() {
            m |= ColorSet::bit(self.color(u, v));
        }
        ColorSet(m)
    }

    /// `C(S)`: colors on edges with both ends in `s`. Empty when `|s| <= 1`.
    pub fn colors_on_subset(&self, s: VertexSet) -> Result<ColorSet, CoreError> {
        self.check_set(s)?;
        Ok(self.colors_on(s))
    }

    pub(crate) fn colors_on(&self, s: VertexSet) -> ColorSet {
        let mut m = 0u64;
        let mut rest = s;
        while let Some(u) = rest.first() {
            rest.remove(u);
            m |= self.colors_between(u, rest).0;
        }
        ColorSet(m)
    }

    /// Colors on edges with one end in `a` and the other in `b`.
    pub fn colors_across(&self, a: VertexSet, b: VertexSet) -> ColorSet {
        let mut m = 0u64;
        for u in a.iter() {
            m |= self.colors_between(u, b).0;
        }
        ColorSet(m)
    }

    pub fn used_colors(&self) -> ColorSet {
        self.upper.iter().copied().collect()
    }

    /// First rainbow triangle in lexicographic order of its vertices.
    pub fn rainbow_triangle(&self) -> Option<RainbowTriangle> {
        let n = self.n;
        for a in 0..n {
            for b in a + 1..n {
                let x = self.color(a, b);
                for c in b + 1..n {
                    let y = self.color(a, c);
                    let z = self.color(b, c);
                    if x != y && x != z && y != z {
                        return Some(RainbowTriangle { vertices: [a, b, c], colors: [x, y, z] });
                    }
                }
            }
        }
        None
    }

    pub fn is_gallai(&self) -> bool {
        self.rainbow_triangle().is_none()
    }

    /// Fails with the first rainbow triangle when the coloring is not Gallai.
    pub fn require_gallai(&self) -> Result<(), CoreError> {
        match self.rainbow_triangle() {
            Some(t) => Err(CoreError::NotGallai(t)),
            None => Ok(()),
        }
    }

    /// Number of edges of color `c` at `v`.
    pub fn color_degree(&self, v: usize, c: Color) -> Result<usize, CoreError> {
        self.check_vertex(v)?;
        self.check_color(c)?;
        Ok(self.color_neighborhood(v, c).len())
    }

    /// Vertices joined to `v` by color `c`.
    pub fn color_neighborhood(&self, v: usize, c: Color) -> VertexSet {
        (0..self.n).filter(|&u| u != v && self.color(u, v) == c).collect()
    }

    /// Adjacency rows of the spanning subgraph whose edges have colors in `cs`.
    pub fn adjacency(&self, cs: ColorSet) -> Vec<u64> {
        let mut adj = vec![0u64; self.n];
        for u in 0..self.n {
            for v in u + 1..self.n {
                if cs.contains(self.color(u, v)) {
                    adj[u] |= 1 << v;
                    adj[v] |= 1 << u;
                }
            }
        }
        adj
    }

    // ----------------------------------------------------------------
    // Color counts over p-subsets
    // ----------------------------------------------------------------

    /// Fewest colors on any `p`-vertex complete subgraph, with the
    /// lexicographically first subset attaining it. `None` when `p > n`
    /// (the minimum over an empty family is +infinity).
    pub fn min_colors_over_p_subsets(&self, p: usize) -> Option<CliqueColors> {
        if p > self.n {
            return None;
        }
        let mut best = CliqueColors { colors: usize::MAX, witness: VertexSet::EMPTY };
        // a p-set with p >= 2 carries at least one color
        let floor = usize::from(p >= 2);
        self.min_rec(0, VertexSet::EMPTY, 0, p, &mut best, floor);
        Some(best)
    }

    /// Lexicographically first `p`-subset whose edges use at most `q`
    /// colors.
    pub fn find_p_subset_with_at_most(&self, p: usize, q: usize) -> Option<VertexSet> {
        if p > self.n {
            return None;
        }
        let mut best = CliqueColors { colors: q + 1, witness: VertexSet::EMPTY };
        self.min_rec(0, VertexSet::EMPTY, 0, p, &mut best, q);
        (best.colors <= q).then_some(best.witness)
    }

    // Depth-first over subsets in lexicographic order. A partial subset is
    // abandoned once its colors can no longer beat the incumbent, since
    // adding vertices never removes colors. `stop` ends the search as soon
    // as the incumbent reaches it.
    fn min_rec(
        &self,
        start: usize,
        chosen: VertexSet,
        colors: u64,
        p: usize,
        best: &mut CliqueColors,
        stop: usize,
    ) -> bool {
        let size = chosen.len();
        if size == p {
            let c = colors.count_ones() as usize;
            if c < best.colors {
                *best = CliqueColors { colors: c, witness: chosen };
            }
            return best.colors <= stop;
        }
        for w in start..=self.n - (p - size) {
            let c = colors | self.colors_between(w, chosen).0;
            if c.count_ones() as usize >= best.colors {
                continue;
            }
            if self.min_rec(w + 1, chosen.with(w), c, p, best, stop) {
                return true;
            }
        }
        false
    }

    /// Most colors on any `p`-vertex complete subgraph.
    pub fn max_colors_over_p_subsets(&self, p: usize) -> Option<CliqueColors> {
        if p > self.n {
            return None;
        }
        let mut best = CliqueColors { colors: 0, witness: VertexSet::EMPTY };
        let mut first = true;
        self.max_rec(0, VertexSet::EMPTY, 0, p, &mut best, &mut first);
        Some(best)
    }

    fn max_rec(
        &self,
        start: usize,
        chosen: VertexSet,
        colors: u64,
        p: usize,
        best: &mut CliqueColors,
        first: &mut bool,
    ) {
        let size = chosen.len();
        if size == p {
            let c = colors.count_ones() as usize;
            if *first || c > best.colors {
                *best = CliqueColors { colors: c, witness: chosen };
                *first = false;
            }
            return;
        }
        // edges still to come bound the colors still to come
        let pending = pairs(p) - pairs(size);
        if !*first && colors.count_ones() as usize + pending <= best.colors {
            return;
        }
        for w in start..=self.n - (p - size) {
            let c = colors | self.colors_between(w, chosen).0;
            self.max_rec(w + 1, chosen.with(w), c, p, best, first);
        }
    }

    // ----------------------------------------------------------------
    // Cliques restricted to color sets
    // ----------------------------------------------------------------

    /// A largest vertex set all of whose edges have colors in `cs`.
    pub fn largest_clique_within(&self, cs: ColorSet) -> VertexSet {
        let adj = self.adjacency(cs);
        let mut best = (1usize, VertexSet::singleton(0));
        expand_clique(&adj, 0, VertexSet::EMPTY, self.vertices().0, &mut best);
        best.1
    }

    /// Largest complete subgraph whose edges use at most `q` colors,
    /// together with the colors it uses.
    pub fn largest_q_colored_clique(&self, q: usize) -> (VertexSet, ColorSet) {
        let used = self.used_colors().to_vec();
        let q = q.min(used.len());
        let mut best = (VertexSet::singleton(0), ColorSet::EMPTY);
        let mut pick = Vec::with_capacity(q);
        choose_colors(&used, q, 0, &mut pick, &mut |cs| {
            let s = self.largest_clique_within(cs);
            if s.len() > best.0.len() {
                best = (s, self.colors_on(s));
            }
        });
        best
    }

    /// Fewest vertex deletions that remove every edge colored in `cs`.
    pub fn min_deletions_to_avoid(&self, cs: ColorSet) -> usize {
        let keep = ColorSet::palette(self.k).difference(cs);
        self.n - self.largest_clique_within(keep).len()
    }

    // ----------------------------------------------------------------
    // Transformations
    // ----------------------------------------------------------------

    /// Finds `(v, c)` with `d_c(v) > n/4`, preferring the largest degree,
    /// then the smallest vertex, then the smallest color.
    pub fn dense_color_neighborhood(&self) -> Result<DenseNeighborhood, CoreError> {
        if self.n < 4 {
            return Err(CoreError::TooSmall { n: self.n, min: 4 });
        }
        let mut best: Option<DenseNeighborhood> = None;
        for v in 0..self.n {
            let mut counts = [0usize; MAX_COLORS + 1];
            for u in (0..self.n).filter(|&u| u != v) {
                counts[self.color(u, v) as usize] += 1;
            }
            for (c, &count) in counts.iter().enumerate().take(self.k + 1).skip(1) {
                let better = best.is_none_or(|b| count > b.neighbors.len());
                if 4 * count > self.n && better {
                    best = Some(DenseNeighborhood {
                        vertex: v,
                        color: c as Color,
                        neighbors: self.color_neighborhood(v, c as Color),
                    });
                }
            }
        }
        match best {
            Some(d) => Ok(d),
            None => Err(match self.rainbow_triangle() {
                Some(t) => CoreError::NotGallai(t),
                None => unreachable!("a Gallai coloring on n >= 4 vertices has a dense color"),
            }),
        }
    }

    /// Merges color `j` into color `i` and closes the gap in the palette.
    ///
    /// Returns the new coloring (palette `k - 1`) and the map from old
    /// color ids to new ones (index 0 unused).
    pub fn unify_colors(&self, i: Color, j: Color) -> Result<(Self, Vec<Color>), CoreError> {
        self.check_color(i)?;
        self.check_color(j)?;
        if i == j {
            return Err(CoreError::SameColor(i, j));
        }
        if self.k < 2 {
            return Err(CoreError::InvalidPalette(self.k - 1));
        }
        let map: Vec<Color> = (0..=self.k as Color)
            .map(|c| {
                let c = if c == j { i } else { c };
                if c > j {
                    c - 1
                } else {
                    c
                }
            })
            .collect();
        let upper = self.upper.iter().map(|&c| map[c as usize]).collect();
        let out = EdgeColoring { n: self.n, k: self.k - 1, upper };
        debug_assert!(!self.is_gallai() || out.is_gallai());
        Ok((out, map))
    }

    /// `G[S]` with vertices renumbered in increasing order; palette kept.
    pub fn induced(&self, s: VertexSet) -> Result<Self, CoreError> {
        self.check_set(s)?;
        if s.is_empty() {
            return Err(CoreError::InvalidOrder(0));
        }
        let vs = s.to_vec();
        Self::from_fn(vs.len(), self.k, |a, b| self.color(vs[a], vs[b]) as usize)
    }

    /// Relabels vertices: vertex `v` of `self` becomes `perm[v]`.
    pub fn permute_vertices(&self, perm: &[usize]) -> Result<Self, CoreError> {
        let mut inv = vec![usize::MAX; self.n];
        if perm.len() != self.n {
            return Err(CoreError::VertexOutOfRange { vertex: perm.len(), n: self.n });
        }
        for (v, &p) in perm.iter().enumerate() {
            self.check_vertex(p)?;
            inv[p] = v;
        }
        if let Some(p) = inv.iter().position(|&v| v == usize::MAX) {
            return Err(CoreError::VertexOutOfRange { vertex: p, n: self.n });
        }
        Self::from_fn(self.n, self.k, |a, b| self.color(inv[a], inv[b]) as usize)
    }

    /// Applies `map` (indexed by old color) to every edge.
    pub fn recolor(&self, k: usize, map: &[Color]) -> Result<Self, CoreError> {
        Self::from_fn(self.n, k, |a, b| map[self.color(a, b) as usize] as usize)
    }
}

impl fmt::Debug for EdgeColoring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "EdgeColoring(n={}, k={}, {:?})", self.n, self.k, self.upper)
    }
}

fn choose_colors(pool: &[Color], q: usize, start: usize, pick: &mut Vec<Color>, visit: &mut dyn FnMut(ColorSet)) {
    if pick.len() == q {
        visit(pick.iter().copied().collect());
        return;
    }
    for i in start..pool.len() {
        pick.push(pool[i]);
        choose_colors(pool, q, i + 1, pick, visit);
        pick.pop();
    }
}

// Branch and bound for maximum cliques with a greedy coloring bound.
fn expand_clique(adj: &[u64], size: usize, cur: VertexSet, cand: u64, best: &mut (usize, VertexSet)) {
    let (order, bounds) = greedy_color_order(adj, cand);
    let mut cand = cand;
    for i in (0..order.len()).rev() {
        if size + bounds[i] <= best.0 {
            return;
        }
        let v = order[i];
        let next = cand & adj[v];
        let grown = cur.with(v);
        if next == 0 {
            if size + 1 > best.0 {
                *best = (size + 1, grown);
            }
        } else {
            expand_clique(adj, size + 1, grown, next, best);
        }
        cand &= !(1u64 << v);
    }
}

fn greedy_color_order(adj: &[u64], cand: u64) -> (Vec<usize>, Vec<usize>) {
    let mut order = Vec::with_capacity(cand.count_ones() as usize);
    let mut bounds = Vec::with_capacity(order.capacity());
    let mut uncolored = cand;
    let mut class = 0;
    while uncolored != 0 {
        class += 1;
        let mut open = uncolored;
        while open != 0 {
            let v = open.trailing_zeros() as usize;
            open &= !(1u64 << v) & !adj[v];
            uncolored &= !(1u64 << v);
            order.push(v);
            bounds.push(class);
        }
    }
    (order, bounds)
}
