//! Closed-form bounds and known exact values of `g^k_q(p)`, their
//! translations to `g(n, p, q)` (the fewest colors for a Gallai coloring of
//! `K_n` in which every `K_p` gets at least `q` colors), and the small
//! Ramsey-type constants they rely on.
//!
//! Every integer is computed exactly with big integers.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use thiserror::Error;

use crate::search::cache::ResultsCache;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormulaError {
    #[error("bad parameters: {0}")]
    BadParams(String),
}

/// Published constants used by the formulas below.
pub mod ramsey {
    /// Two-color Ramsey number of the triangle.
    pub const R2_K3: u64 = 6;
    /// Two-color Ramsey number of `K_4`.
    pub const R2_K4: u64 = 18;
    /// Ramsey number `R(K_3, K_5)`.
    pub const R_K3_K5: u64 = 14;
    /// Gallai–Ramsey number for a `K_3`, `K_3`, `K_4` in three colors.
    pub const GR_3_3_4: u64 = 17;
    /// Gallai–Ramsey number for a monochromatic triangle in four colors.
    pub const GR_4_K3: u64 = 26;

    /// Two-color Ramsey number of `K_p` where known here.
    pub fn r2(p: usize) -> Option<u64> {
        match p {
            3 => Some(R2_K3),
            4 => Some(R2_K4),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BoundKind {
    Lower,
    Upper,
    Exact,
    /// Follows from a statement whose hypothesis is not quantified, or from
    /// an open conjecture; never used to judge computed values.
    Conjectured,
    /// The hypotheses of the source fail; no value.
    Inapplicable,
}

impl fmt::Display for BoundKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(match self {
            BoundKind::Lower => "lower",
            BoundKind::Upper => "upper",
            BoundKind::Exact => "exact",
            BoundKind::Conjectured => "conjectured",
            BoundKind::Inapplicable => "inapplicable",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundResult {
    pub kind: BoundKind,
    /// `None` exactly when the kind is [`BoundKind::Inapplicable`].
    pub value: Option<BigUint>,
    /// Short name of the result the value comes from.
    pub source: &'static str,
    /// The hypotheses, as checked.
    pub hypotheses: String,
    /// Extra detail such as an exact exponent.
    pub note: Option<String>,
}

impl BoundResult {
    fn new(kind: BoundKind, value: impl Into<BigUint>, source: &'static str, hypotheses: String) -> Self {
        BoundResult { kind, value: Some(value.into()), source, hypotheses, note: None }
    }

    fn inapplicable(source: &'static str, hypotheses: String) -> Self {
        BoundResult { kind: BoundKind::Inapplicable, value: None, source, hypotheses, note: None }
    }

    fn when(ok: bool, kind: BoundKind, value: impl FnOnce() -> BigUint, source: &'static str, hyp: String) -> Self {
        if ok {
            BoundResult::new(kind, value(), source, hyp)
        } else {
            BoundResult::inapplicable(source, hyp)
        }
    }

    fn with_note(mut self, note: String) -> Self {
        if self.kind != BoundKind::Inapplicable {
            self.note = Some(note);
        }
        self
    }

    pub fn is_lower(&self) -> bool {
        matches!(self.kind, BoundKind::Lower | BoundKind::Exact)
    }

    pub fn is_upper(&self) -> bool {
        matches!(self.kind, BoundKind::Upper | BoundKind::Exact)
    }

    pub fn value_u64(&self) -> Option<u64> {
        self.value.as_ref().and_then(|v| v.to_u64())
    }
}

impl fmt::Display for BoundResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.value {
            Some(v) => write!(f, "{:<12} {:<24} {}  [{}]", self.kind, v, self.source, self.hypotheses)?,
            None => write!(f, "{:<12} {:<24} {}  [{}]", self.kind, "-", self.source, self.hypotheses)?,
        }
        if let Some(n) = &self.note {
            write!(f, " {n}")?;
        }
        Ok(())
    }
}

fn pow2(e: u64) -> BigUint {
    BigUint::one() << e
}

/// Largest `x` with `x^m <= n`.
fn int_root(n: u64, m: u32) -> u64 {
    if m == 1 {
        return n;
    }
    let mut x = (n as f64).powf(1.0 / m as f64) as u64;
    while x.checked_pow(m).is_none_or(|v| v > n) {
        x -= 1;
    }
    while (x + 1).checked_pow(m).is_some_and(|v| v <= n) {
        x += 1;
    }
    x
}

fn floor_log2(n: u64) -> u32 {
    63 - n.leading_zeros()
}

fn ceil_log2(n: u64) -> u64 {
    if n <= 1 {
        0
    } else {
        64 - (n - 1).leading_zeros() as u64
    }
}

/// `ceil(2^(a/b))` for positive `b`.
fn ceil_pow2_ratio(a: u64, b: u64) -> BigUint {
    if a.is_multiple_of(b) {
        return pow2(a / b);
    }
    let target = pow2(a);
    let b32 = b as u32;
    let root = target.nth_root(b32);
    if root.pow(b32) == target {
        root
    } else {
        root + 1u32
    }
}

/// Known exact values, if any applies.
pub fn exact_g_known(k: usize, q: usize, p: usize) -> Option<BoundResult> {
    exact_candidates(k as u64, q as u64, p as u64).into_iter().find(|b| b.kind == BoundKind::Exact)
}

fn exact_candidates(k: u64, q: u64, p: u64) -> Vec<BoundResult> {
    use BoundKind::Exact;
    let mut out = Vec::new();
    out.push(BoundResult::when(q + 1 >= p, Exact, || p.into(), "anti-Ramsey cap", format!("q >= p-1: {}", q + 1 >= p)));
    out.push(BoundResult::when(k <= q, Exact, || p.into(), "palette too small", format!("k <= q: {}", k <= q)));
    if q + 2 == p {
        out.push(BoundResult::when(
            p >= 4 && k + 2 >= p,
            Exact,
            || (k + 2).into(),
            "q = p-2 value k+2",
            format!("p >= 4: {}, k >= p-2: {}", p >= 4, k + 2 >= p),
        ));
    }
    if q + 3 == p {
        out.push(BoundResult::when(
            p >= 8 && k + 3 >= p,
            Exact,
            || (k + 3).into(),
            "q = p-3 value k+3",
            format!("p >= 8: {}, k >= p-3: {}", p >= 8, k + 3 >= p),
        ));
    }
    if (p, q) == (5, 2) {
        out.push(BoundResult::when(
            k >= 2,
            Exact,
            || pow2(k) + 1u32,
            "p = 5, q = 2 value 2^k+1",
            format!("k >= 2: {}", k >= 2),
        ));
    }
    if q + 1 == k && k < p {
        let c = p - k;
        let need = BigUint::from(2u32) * BigUint::from(8 + c).pow((c + 1) as u32) - 1u32;
        let ok = BigUint::from(p) >= need;
        out.push(BoundResult::when(
            ok,
            Exact,
            || (p + 1).into(),
            "q = k-1 value p+1",
            format!("c = p-k = {c}, p >= 2(8+c)^(c+1)-1 = {need}: {ok}"),
        ));
    }
    for &(kk, qq, pp, v) in &[(4u64, 3u64, 6u64, 8u64), (5, 3, 6, 10)] {
        if (k, q, p) == (kk, qq, pp) {
            out.push(BoundResult::new(Exact, v, "p = 6, q = 3 small case", format!("(k,q,p) = ({k},{q},{p})")));
        }
    }
    if q == 1 && (p == 3 || p == 4) {
        out.push(conjecture_values(k as usize, p as usize));
    }
    out
}

/// Every bound the formulas give for `g^k_q(p)`, including inapplicable
/// ones with their failed hypotheses.
pub fn bound_g(k: usize, q: usize, p: usize) -> Result<Vec<BoundResult>, FormulaError> {
    let (k, q, p) = (k as u64, q as u64, p as u64);
    if p < 3 || q < 1 || q > p * (p - 1) / 2 || k < 1 {
        return Err(FormulaError::BadParams(format!("need p >= 3, 1 <= q <= C(p,2), k >= 1; got k={k}, q={q}, p={p}")));
    }
    let mut out = exact_candidates(k, q, p);

    // upper bound from repeated two-part reductions
    let core = q + 2 <= p && k >= q;
    let a = 2 * k * (p - 2) + q;
    out.push(
        BoundResult::when(
            core,
            BoundKind::Upper,
            || ceil_pow2_ratio(a, q),
            "reduction upper bound 2^(2k(p-2)/q+1)",
            format!("1 <= q <= p-2: {}, k >= q: {}", q + 2 <= p, k >= q),
        )
        .with_note(format!("exponent {a}/{q}")),
    );
    if q == 1 {
        let ok = k >= 3 && p >= 5;
        out.push(BoundResult::when(
            ok,
            BoundKind::Upper,
            || pow2(2 * k * (p - 2) - 3) - 1u32,
            "monochromatic reduction upper bound 2^(2k(p-2)-3)-1",
            format!("k >= 3: {}, p >= 5: {}", k >= 3, p >= 5),
        ));
    }

    // lower bound from joined towers of monochromatic cliques
    let log_ok = (1..64).contains(&q) && (1u64 << q) < p;
    out.push(BoundResult::when(
        log_ok && k >= q,
        BoundKind::Lower,
        || BigUint::from(int_root(p - 1, q as u32)).pow(k as u32) + 1u32,
        "tower lower bound floor((p-1)^(1/q))^k+1",
        format!("q <= log2(p-1): {log_ok}, k >= q: {}", k >= q),
    ));

    // lower bound from iterated substitution, one entry per matching m
    for m in 2u32..=floor_log2(p - 1) {
        if int_root(p - 1, m) != q + 1 {
            continue;
        }
        let firm = m == 2 && p >= 17;
        let kind = if firm { BoundKind::Lower } else { BoundKind::Conjectured };
        let hyp = format!("m = {m}, q = floor((p-1)^(1/m))-1, k >= q: {}, p >= 17 with m = 2: {firm}", k >= q);
        out.push(BoundResult::when(
            k >= q,
            kind,
            || BigUint::from(k + 1).pow(m) + 1u32,
            "substitution lower bound (k+1)^m+1",
            hyp,
        ));
    }
    Ok(out)
}

/// The conjectured value of `g^k_1(p)` from two-color Ramsey numbers,
/// confirmed in the literature for `p = 3` and `p = 4`.
pub fn conjecture_values(k: usize, p: usize) -> BoundResult {
    let source = "two-color Ramsey power";
    let Some(r2) = ramsey::r2(p) else {
        return BoundResult::inapplicable(source, format!("p in {{3, 4}}: false (p = {p})"));
    };
    if k == 0 {
        return BoundResult::inapplicable(source, "k >= 1: false".into());
    }
    let base = BigUint::from(r2 - 1);
    let value = if k.is_multiple_of(2) {
        base.pow((k / 2) as u32) + 1u32
    } else {
        BigUint::from(p - 1) * base.pow(((k - 1) / 2) as u32) + 1u32
    };
    BoundResult::new(BoundKind::Exact, value, source, format!("p = {p}, R_2(K_p) = {r2}"))
}

/// What the bounds on `g^k_q(p)` say about `g(n, p, q)`.
pub fn translate_to_gn(n: usize, p: usize, q: usize) -> Result<Vec<BoundResult>, FormulaError> {
    let (n, p, q) = (n as u64, p as u64, q as u64);
    if q < 2 || q + 1 > p || n < p {
        return Err(FormulaError::BadParams(format!("need 2 <= q <= p-1 and n >= p; got n={n}, p={p}, q={q}")));
    }
    use BoundKind::{Exact, Lower, Upper};
    let mut out = Vec::new();
    if q + 1 == p {
        out.push(BoundResult::when(
            p >= 4,
            Exact,
            || (n - 1).into(),
            "q = p-1 gives n-1",
            format!("p >= 4: {}", p >= 4),
        ));
    }
    if q + 2 == p {
        out.push(BoundResult::when(
            p >= 8,
            Exact,
            || (n - 2).into(),
            "q = p-2 gives n-2",
            format!("p >= 8: {}", p >= 8),
        ));
    }
    if (p, q) == (5, 3) {
        out.push(BoundResult::new(Exact, ceil_log2(n), "p = 5, q = 3 gives ceil(log2 n)", "n >= 5: true".into()));
    }
    let sq = int_root(p - 1, 2);
    if q == sq {
        let ok = p >= 17 && n >= (sq + 1) * (sq + 1);
        let ceil_sqrt = {
            let r = int_root(n, 2);
            if r * r == n {
                r
            } else {
                r + 1
            }
        };
        out.push(BoundResult::when(
            ok,
            Upper,
            || (ceil_sqrt - 1).into(),
            "q = floor(sqrt(p-1)) gives ceil(sqrt n)-1",
            format!("p >= 17: {}, n >= (floor(sqrt(p-1))+1)^2: {}", p >= 17, n >= (sq + 1) * (sq + 1)),
        ));
    }
    if p >= 2 && q == floor_log2(p - 1) as u64 + 1 {
        let ok = p >= 5 && n >= 2 * (p - 1);
        out.push(BoundResult::when(
            ok,
            Upper,
            || ceil_log2(n).into(),
            "q = floor(log2(p-1))+1 gives ceil(log2 n)",
            format!("p >= 5: {}, n >= 2(p-1): {}", p >= 5, n >= 2 * (p - 1)),
        ));
    }
    // g(n,p,q) <= k needs n < g^k_{q-1}(p) <= 2^(2k(p-2)/(q-1)+1), so k is at
    // least the least k with 2^(2k(p-2)+q-1) > n^(q-1)
    let ok = p >= 3 && 2 * p - 3 < 64 && n >= 1u64 << (2 * p - 3);
    out.push(BoundResult::when(
        ok,
        Lower,
        || {
            let bits = BigUint::from(n).pow((q - 1) as u32).bits();
            let need = bits.saturating_sub(q - 1);
            let k = need.div_ceil(2 * (p - 2)).max(1);
            k.into()
        },
        "general lower bound from the reduction upper bound",
        format!("n >= 2^(2p-3): {ok}"),
    ));
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SandwichViolation {
    pub k: usize,
    pub q: usize,
    pub p: usize,
    pub value: usize,
    pub bound: BoundResult,
}

/// Cached values falling outside an applicable lower or upper bound. A
/// cached lower bound is only checked against upper bounds.
pub fn sandwich_violations(cache: &ResultsCache) -> Vec<SandwichViolation> {
    let mut out = Vec::new();
    for (&(k, q, p), entry) in cache.iter() {
        let Ok(bounds) = bound_g(k, q, p) else { continue };
        let v = BigUint::from(entry.value);
        for b in bounds {
            let Some(bv) = &b.value else { continue };
            let bad = (b.is_upper() && v > *bv) || (entry.is_exact() && b.is_lower() && v < *bv);
            if bad {
                out.push(SandwichViolation { k, q, p, value: entry.value, bound: b });
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn find(bounds: &[BoundResult], kind: BoundKind) -> Vec<u64> {
        bounds.iter().filter(|b| b.kind == kind).filter_map(BoundResult::value_u64).collect()
    }

    #[test]
    fn roots_and_logs() {
        assert_eq!(int_root(16, 2), 4);
        assert_eq!(int_root(15, 2), 3);
        assert_eq!(int_root(26, 3), 2);
        assert_eq!(ceil_log2(32), 5);
        assert_eq!(ceil_log2(33), 6);
        assert_eq!(ceil_pow2_ratio(10, 1), BigUint::from(1024u32));
        // 2^(7/2) = 11.31..
        assert_eq!(ceil_pow2_ratio(7, 2), BigUint::from(12u32));
        assert_eq!(ceil_pow2_ratio(8, 2), BigUint::from(16u32));
    }

    #[test]
    fn p5_q2_k3() {
        let b = bound_g(3, 2, 5).unwrap();
        assert!(find(&b, BoundKind::Upper).contains(&1024));
        assert_eq!(find(&b, BoundKind::Exact), vec![9]);
        assert_eq!(find(&b, BoundKind::Lower), vec![9]);
    }

    #[test]
    fn exact_dispatch() {
        let v = |k, q, p| exact_g_known(k, q, p).and_then(|b| b.value_u64());
        assert_eq!(v(6, 4, 6), Some(8));
        assert_eq!(v(6, 5, 8), Some(9));
        assert_eq!(v(5, 6, 6), Some(6));
        assert_eq!(v(4, 3, 6), Some(8));
        assert_eq!(v(5, 3, 6), Some(10));
        assert_eq!(v(7, 2, 5), Some(129));
        assert_eq!(v(5, 5, 8), Some(8));
        assert_eq!(v(5, 4, 7), None);
        assert_eq!(v(3, 1, 5), None);
    }

    #[test]
    fn q_equals_k_minus_one_threshold() {
        // c = 1 needs p >= 2 * 81 - 1 = 161
        assert_eq!(exact_g_known(160, 159, 161).and_then(|b| b.value_u64()), Some(162));
        let below = exact_candidates(159, 158, 160);
        assert!(below.iter().any(|b| b.source == "q = k-1 value p+1" && b.kind == BoundKind::Inapplicable));
    }

    #[test]
    fn conjecture_table() {
        assert_eq!(conjecture_values(4, 3).value_u64(), Some(26));
        assert_eq!(conjecture_values(3, 3).value_u64(), Some(11));
        assert_eq!(conjecture_values(2, 4).value_u64(), Some(18));
        assert_eq!(conjecture_values(2, 5).kind, BoundKind::Inapplicable);
    }

    #[test]
    fn translations() {
        let e = |n, p, q| find(&translate_to_gn(n, p, q).unwrap(), BoundKind::Exact);
        assert_eq!(e(10, 6, 5), vec![9]);
        assert_eq!(e(32, 5, 3), vec![5]);
        assert_eq!(e(9, 8, 7), vec![8]);
        assert!(translate_to_gn(4, 5, 3).is_err());
    }

    #[test]
    fn substitution_bound_only_firm_for_m2_large_p() {
        let b = bound_g(4, 3, 17).unwrap();
        let sub: Vec<_> = b.iter().filter(|x| x.source.starts_with("substitution")).collect();
        assert_eq!(sub.len(), 1);
        assert_eq!(sub[0].kind, BoundKind::Lower);
        assert_eq!(sub[0].value_u64(), Some(26));
        let b = bound_g(4, 1, 9).unwrap();
        assert!(b.iter().any(|x| x.source.starts_with("substitution") && x.kind == BoundKind::Conjectured));
    }

    #[test]
    fn never_empty_and_rejects_bad_input() {
        assert!(!bound_g(1, 1, 3).unwrap().is_empty());
        assert!(bound_g(1, 1, 2).is_err());
        assert!(bound_g(3, 11, 5).is_err());
    }
}
