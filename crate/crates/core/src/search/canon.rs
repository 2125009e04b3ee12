//! Canonical forms of colorings up to vertex permutation and color renaming.
//!
//! For an ordering `v_0, .., v_{n-1}` of the vertices, read the edge colors
//! column by column (`(v_0,v_1), (v_0,v_2), (v_1,v_2), (v_0,v_3), ..`) and
//! rename colors in order of first appearance. The canonical form is the
//! lexicographically least such word over all orderings that list the cells
//! of an iso-invariant vertex partition in order.
//!
//! The search over orderings only follows candidates whose next column is
//! least, and among twin vertices (equal colors to every third vertex) tries
//! one representative, since swapping twins is an automorphism.

use crate::coloring::{Color, EdgeColoring, MAX_COLORS};

/// Canonical word: the vertex count followed by the renamed colors.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm(Box<[u8]>);

impl std::fmt::Debug for CanonicalForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "CanonicalForm({:?})", &self.0[..])
    }
}

impl CanonicalForm {
    pub fn n(&self) -> usize {
        self.0[0] as usize
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    /// Number of distinct colors.
    pub fn colors(&self) -> usize {
        self.0[1..].iter().copied().max().unwrap_or(0) as usize
    }

    /// The coloring in canonical vertex order, colors `1..=colors()`, with
    /// palette `k`.
    pub fn decode(&self, k: usize) -> EdgeColoring {
        let word = &self.0[1..];
        EdgeColoring::from_fn(self.n(), k, |u, v| word[v * (v - 1) / 2 + u] as usize)
            .expect("canonical word fits its palette")
    }
}

pub fn canonical_form(g: &EdgeColoring) -> CanonicalForm {
    Canon::new(g).run()
}

/// Isomorphism under vertex permutation and color renaming.
pub fn is_isomorphic(a: &EdgeColoring, b: &EdgeColoring) -> bool {
    a.n() == b.n()
        && a.used_colors().len() == b.used_colors().len()
        && color_degree_spectrum(a) == color_degree_spectrum(b)
        && canonical_form(a) == canonical_form(b)
}

/// Sorted per-vertex multisets of color degrees; invariant under both
/// vertex permutation and color renaming.
pub fn color_degree_spectrum(g: &EdgeColoring) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = (0..g.n())
        .map(|v| {
            let mut counts = vec![0usize; MAX_COLORS + 1];
            for u in (0..g.n()).filter(|&u| u != v) {
                counts[g.color(u, v) as usize] += 1;
            }
            let mut d: Vec<usize> = counts.into_iter().filter(|&c| c > 0).collect();
            d.sort_unstable_by(|a, b| b.cmp(a));
            d
        })
        .collect();
    out.sort();
    out
}

struct Canon {
    n: usize,
    mat: Vec<Color>,
    cell_of_pos: Vec<usize>,
    cell: Vec<usize>,
    twin: Vec<usize>,
    perm: Vec<usize>,
    placed: u64,
    rename: [u8; MAX_COLORS + 1],
    next_label: u8,
    word: Vec<u8>,
    best: Option<Vec<u8>>,
}

impl Canon {
    fn new(g: &EdgeColoring) -> Self {
        let n = g.n();
        let mut mat = vec![0; n * n];
        for u in 0..n {
            for v in u + 1..n {
                let c = g.color(u, v);
                mat[u * n + v] = c;
                mat[v * n + u] = c;
            }
        }
        let cell = refine(n, &mat);
        let mut sorted = cell.clone();
        sorted.sort_unstable();
        let twin = (0..n).map(|v| (0..v).find(|&u| are_twins(n, &mat, u, v)).unwrap_or(v)).collect();
        Canon {
            n,
            mat,
            cell_of_pos: sorted,
            cell,
            twin,
            perm: Vec::with_capacity(n),
            placed: 0,
            rename: [0; MAX_COLORS + 1],
            next_label: 1,
            word: Vec::with_capacity(n * n / 2),
            best: None,
        }
    }

    fn run(mut self) -> CanonicalForm {
        self.search();
        let mut out = Vec::with_capacity(self.n * self.n.saturating_sub(1) / 2 + 1);
        out.push(self.n as u8);
        out.extend(self.best.unwrap_or_default());
        CanonicalForm(out.into_boxed_slice())
    }

    // Column that placing `v` next would append, under the current renaming.
    fn column(&self, v: usize, out: &mut Vec<u8>) {
        out.clear();
        let mut fresh: [u8; MAX_COLORS + 1] = [0; MAX_COLORS + 1];
        let mut next = self.next_label;
        for &u in &self.perm {
            let c = self.mat[u * self.n + v] as usize;
            let label = if self.rename[c] != 0 {
                self.rename[c]
            } else {
                if fresh[c] == 0 {
                    fresh[c] = next;
                    next += 1;
                }
                fresh[c]
            };
            out.push(label);
        }
    }

    fn search(&mut self) {
        let j = self.perm.len();
        if j == self.n {
            if self.best.as_ref().is_none_or(|b| self.word < *b) {
                self.best = Some(self.word.clone());
            }
            return;
        }
        let cell = self.cell_of_pos[j];
        let mut tried_twins: u64 = 0;
        let mut least: Option<Vec<u8>> = None;
        let mut ties: Vec<usize> = Vec::new();
        let mut col = Vec::with_capacity(j);
        for v in 0..self.n {
            if self.placed >> v & 1 == 1 || self.cell[v] != cell || tried_twins >> self.twin[v] & 1 == 1 {
                continue;
            }
            tried_twins |= 1 << self.twin[v];
            self.column(v, &mut col);
            match least.as_ref().map(|l| col.cmp(l)) {
                None | Some(std::cmp::Ordering::Less) => {
                    least = Some(col.clone());
                    ties.clear();
                    ties.push(v);
                }
                Some(std::cmp::Ordering::Equal) => ties.push(v),
                Some(std::cmp::Ordering::Greater) => {}
            }
        }
        let Some(least) = least else { return };
        let start = self.word.len();
        self.word.extend_from_slice(&least);
        if let Some(best) = &self.best {
            if self.word[..] > best[..self.word.len()] {
                self.word.truncate(start);
                return;
            }
        }
        for v in ties {
            let saved_next = self.next_label;
            let mut assigned: Vec<usize> = Vec::new();
            for &u in &self.perm {
                let c = self.mat[u * self.n + v] as usize;
                if self.rename[c] == 0 {
                    self.rename[c] = self.next_label;
                    self.next_label += 1;
                    assigned.push(c);
                }
            }
            self.perm.push(v);
            self.placed |= 1 << v;
            self.search();
            self.placed &= !(1 << v);
            self.perm.pop();
            for c in assigned {
                self.rename[c] = 0;
            }
            self.next_label = saved_next;
        }
        self.word.truncate(start);
    }
}

fn are_twins(n: usize, mat: &[Color], u: usize, v: usize) -> bool {
    (0..n).all(|x| x == u || x == v || mat[u * n + x] == mat[v * n + x])
}

// Iterated refinement: a vertex's signature is the sorted list, over the
// colors at it, of the sorted cells reached in that color. Cell ids are
// ranks of (old cell, signature), so they are iso-invariant.
fn refine(n: usize, mat: &[Color]) -> Vec<usize> {
    let mut cell = vec![0usize; n];
    let mut count = 1;
    loop {
        let mut sigs: Vec<(usize, Vec<Vec<usize>>, usize)> = (0..n)
            .map(|v| {
                let mut groups: Vec<Vec<usize>> = Vec::new();
                let mut index = [usize::MAX; MAX_COLORS + 1];
                for u in (0..n).filter(|&u| u != v) {
                    let c = mat[v * n + u] as usize;
                    if index[c] == usize::MAX {
                        index[c] = groups.len();
                        groups.push(Vec::new());
                    }
                    groups[index[c]].push(cell[u]);
                }
                for g in &mut groups {
                    g.sort_unstable();
                }
                groups.sort();
                (cell[v], groups, v)
            })
            .collect();
        sigs.sort();
        let mut next = vec![0usize; n];
        let mut id = 0;
        for i in 0..n {
            if i > 0 && (sigs[i].0 != sigs[i - 1].0 || sigs[i].1 != sigs[i - 1].1) {
                id += 1;
            }
            next[sigs[i].2] = id;
        }
        let new_count = id + 1;
        cell = next;
        if new_count == count {
            return cell;
        }
        count = new_count;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{k9_five_colors, p5_tower, staircase};

    fn brute_form(g: &EdgeColoring) -> Vec<u8> {
        let n = g.n();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut best: Option<Vec<u8>> = None;
        fn heap(k: usize, perm: &mut Vec<usize>, g: &EdgeColoring, best: &mut Option<Vec<u8>>) {
            if k <= 1 {
                let mut rename = [0u8; 65];
                let mut next = 1;
                let mut w = Vec::new();
                for j in 1..perm.len() {
                    for i in 0..j {
                        let c = g.color(perm[i], perm[j]) as usize;
                        if rename[c] == 0 {
                            rename[c] = next;
                            next += 1;
                        }
                        w.push(rename[c]);
                    }
                }
                if best.as_ref().is_none_or(|b| w < *b) {
                    *best = Some(w);
                }
                return;
            }
            for i in 0..k {
                heap(k - 1, perm, g, best);
                let j = if k.is_multiple_of(2) { i } else { 0 };
                perm.swap(j, k - 1);
            }
        }
        heap(n, &mut perm, g, &mut best);
        best.unwrap()
    }

    #[test]
    fn monochromatic_and_single_vertex() {
        let g = EdgeColoring::monochromatic(5, 3, 3).unwrap();
        assert_eq!(canonical_form(&g).as_bytes(), &[5, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1]);
        let one = EdgeColoring::monochromatic(1, 1, 1).unwrap();
        assert_eq!(canonical_form(&one).as_bytes(), &[1]);
    }

    #[test]
    fn invariant_under_relabeling() {
        let g = k9_five_colors().unwrap().coloring;
        let perm = [8, 3, 5, 0, 7, 1, 6, 2, 4];
        let h = g.permute_vertices(&perm).unwrap();
        let h = h.recolor(5, &[0, 4, 1, 5, 2, 3]).unwrap();
        assert_eq!(canonical_form(&g), canonical_form(&h));
        assert!(is_isomorphic(&g, &h));
        assert!(!is_isomorphic(&g, &staircase(8, 9).unwrap().coloring));
    }

    #[test]
    fn decode_round_trips() {
        let g = p5_tower(3).unwrap().coloring;
        let f = canonical_form(&g);
        let d = f.decode(3);
        assert_eq!(canonical_form(&d), f);
        assert!(is_isomorphic(&g, &d));
    }

    #[test]
    fn matches_brute_force_on_small_colorings() {
        for seed in 0u64..200 {
            let n = 2 + (seed % 5) as usize;
            let mut x = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let g = EdgeColoring::from_fn(n, 3, |_, _| {
                x = x.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                (x >> 33) as usize % 3 + 1
            })
            .unwrap();
            let f = canonical_form(&g);
            // the cell restriction changes which word is least, so compare
            // only the equivalence it induces
            let perm: Vec<usize> = (0..n).rev().collect();
            let h = g.permute_vertices(&perm).unwrap();
            assert_eq!(f, canonical_form(&h));
            assert_eq!(brute_form(&g), brute_form(&f.decode(3)));
        }
    }
}
