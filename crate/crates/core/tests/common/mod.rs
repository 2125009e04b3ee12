//! Naive reference implementations shared by the integration tests. Nothing
//! here calls into the library's own subset, clique or canonical-form code.

#![allow(dead_code)]

use gallai::EdgeColoring;

pub fn edge_index(n: usize, u: usize, v: usize) -> usize {
    let (u, v) = if u < v { (u, v) } else { (v, u) };
    u * (2 * n - u - 1) / 2 + (v - u - 1)
}

/// Every `k`-coloring of `K_n`, as raw upper-triangle vectors.
pub fn all_colorings(n: usize, k: usize) -> impl Iterator<Item = Vec<u8>> {
    let m = n * n.saturating_sub(1) / 2;
    let total = (k as u64).pow(m as u32);
    (0..total).map(move |mut code| {
        let mut upper = vec![0u8; m];
        for slot in upper.iter_mut() {
            *slot = (code % k as u64) as u8 + 1;
            code /= k as u64;
        }
        upper
    })
}

pub fn color(upper: &[u8], n: usize, u: usize, v: usize) -> u8 {
    upper[edge_index(n, u, v)]
}

pub fn has_rainbow_triangle(upper: &[u8], n: usize) -> bool {
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                let (x, y, z) = (color(upper, n, a, b), color(upper, n, a, c), color(upper, n, b, c));
                if x != y && y != z && x != z {
                    return true;
                }
            }
        }
    }
    false
}

/// All `t`-subsets of `0..n` as sorted vectors.
pub fn subsets(n: usize, t: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, t: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == t {
            out.push(cur.clone());
            return;
        }
        for v in start..n {
            cur.push(v);
            go(v + 1, n, t, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, t, &mut Vec::new(), &mut out);
    out
}

pub fn distinct_colors(upper: &[u8], n: usize, set: &[usize]) -> usize {
    let mut seen = Vec::new();
    for (i, &u) in set.iter().enumerate() {
        for &v in &set[i + 1..] {
            let c = color(upper, n, u, v);
            if !seen.contains(&c) {
                seen.push(c);
            }
        }
    }
    seen.len()
}

/// Fewest colors on any `p`-subset, or `None` when `p > n`.
pub fn min_colors(upper: &[u8], n: usize, p: usize) -> Option<usize> {
    subsets(n, p).iter().map(|s| distinct_colors(upper, n, s)).min()
}

/// Gallai, and every `K_p` carries at least `q + 1` colors.
pub fn is_good(upper: &[u8], n: usize, p: usize, q: usize) -> bool {
    !has_rainbow_triangle(upper, n) && min_colors(upper, n, p).is_none_or(|c| c > q)
}

pub fn to_upper(g: &EdgeColoring) -> Vec<u8> {
    let n = g.n();
    let mut out = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            out.push(g.color(u, v));
        }
    }
    out
}

/// Least relabeled upper triangle over all vertex orders, colors renamed in
/// order of first appearance.
pub fn brute_canon(upper: &[u8], n: usize) -> Vec<u8> {
    fn go(i: usize, perm: &mut Vec<usize>, upper: &[u8], n: usize, best: &mut Option<Vec<u8>>) {
        if i == n {
            let mut rename = [0u8; 256];
            let mut next = 1;
            let mut word = Vec::with_capacity(n * n / 2);
            for a in 0..n {
                for b in a + 1..n {
                    let c = color(upper, n, perm[a], perm[b]) as usize;
                    if rename[c] == 0 {
                        rename[c] = next;
                        next += 1;
                    }
                    word.push(rename[c]);
                }
            }
            if best.as_ref().is_none_or(|b| word < *b) {
                *best = Some(word);
            }
            return;
        }
        for j in i..n {
            perm.swap(i, j);
            go(i + 1, perm, upper, n, best);
            perm.swap(i, j);
        }
    }
    let mut best = None;
    go(0, &mut (0..n).collect(), upper, n, &mut best);
    best.unwrap_or_default()
}
