//! Plain-text store of computed values, one per line: `k q p value provenance`.
//!
//! `provenance` is `search`, `search-lower-bound` or `formula`. Lines
//! starting with `#` are comments.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CacheError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: conflicting value for (k={k}, q={q}, p={p})")]
    Conflict { line: usize, k: usize, q: usize, p: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CacheEntry {
    pub value: usize,
    pub provenance: String,
}

impl CacheEntry {
    /// Whether `value` is exact rather than a lower bound.
    pub fn is_exact(&self) -> bool {
        self.provenance != "search-lower-bound"
    }
}

/// Values keyed by `(k, q, p)`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ResultsCache {
    entries: BTreeMap<(usize, usize, usize), CacheEntry>,
}

impl ResultsCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, k: usize, q: usize, p: usize) -> Option<&CacheEntry> {
        self.entries.get(&(k, q, p))
    }

    /// Stores a value. An exact entry is never replaced by a lower bound,
    /// and a lower bound only by a larger bound or an exact value.
    pub fn insert(&mut self, k: usize, q: usize, p: usize, entry: CacheEntry) {
        let key = (k, q, p);
        let keep_old = match self.entries.get(&key) {
            Some(old) if old.is_exact() => !entry.is_exact() || old == &entry,
            Some(old) => !entry.is_exact() && entry.value <= old.value,
            None => false,
        };
        if !keep_old {
            self.entries.insert(key, entry);
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(usize, usize, usize), &CacheEntry)> {
        self.entries.iter()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn parse(text: &str) -> Result<Self, CacheError> {
        let mut cache = ResultsCache::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let body = raw.trim();
            if body.is_empty() || body.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = body.split_whitespace().collect();
            if fields.len() != 5 {
                return Err(CacheError::Syntax { line, msg: format!("expected 5 fields, got {}", fields.len()) });
            }
            let num = |s: &str| s.parse::<usize>().map_err(|e| CacheError::Syntax { line, msg: format!("{s:?}: {e}") });
            let (k, q, p, value) = (num(fields[0])?, num(fields[1])?, num(fields[2])?, num(fields[3])?);
            let provenance = fields[4].to_string();
            if !matches!(provenance.as_str(), "search" | "search-lower-bound" | "formula") {
                return Err(CacheError::Syntax { line, msg: format!("unknown provenance {provenance:?}") });
            }
            let entry = CacheEntry { value, provenance };
            if let Some(old) = cache.get(k, q, p) {
                if old.is_exact() && entry.is_exact() && old.value != entry.value {
                    return Err(CacheError::Conflict { line, k, q, p });
                }
            }
            cache.insert(k, q, p, entry);
        }
        Ok(cache)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::from("# k q p value provenance\n");
        for ((k, q, p), e) in &self.entries {
            let _ = writeln!(out, "{k} {q} {p} {} {}", e.value, e.provenance);
        }
        out
    }
}

/// A pair of cached values contradicting one of the orderings
/// `g^k_q <= g^(k+1)_q`, `g^k_(q+1) <= g^k_q`, `g^(k+1)_(q+1) <= g^k_q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonotonicityViolation {
    pub smaller: (usize, usize, usize),
    pub larger: (usize, usize, usize),
    pub smaller_value: usize,
    pub larger_value: usize,
}

impl ResultsCache {
    /// Pairs `(a, b)` with `g(a) <= g(b)` required but `a`'s value above
    /// `b`'s exact value. Lower-bound entries can only violate on the left.
    pub fn monotonicity_violations(&self) -> Vec<MonotonicityViolation> {
        let mut out = Vec::new();
        for &(k, q, p) in self.entries.keys() {
            let pairs = [((k, q, p), (k + 1, q, p)), ((k, q + 1, p), (k, q, p)), ((k + 1, q + 1, p), (k, q, p))];
            for (a, b) in pairs {
                let (Some(ea), Some(eb)) = (self.entries.get(&a), self.entries.get(&b)) else { continue };
                if eb.is_exact() && ea.value > eb.value {
                    out.push(MonotonicityViolation {
                        smaller: a,
                        larger: b,
                        smaller_value: ea.value,
                        larger_value: eb.value,
                    });
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn entry(value: usize, provenance: &str) -> CacheEntry {
        CacheEntry { value, provenance: provenance.into() }
    }

    #[test]
    fn round_trip() {
        let mut c = ResultsCache::new();
        c.insert(3, 2, 5, entry(9, "search"));
        c.insert(5, 3, 6, entry(9, "search-lower-bound"));
        let back = ResultsCache::parse(&c.to_text()).unwrap();
        assert_eq!(back, c);
        assert!(!back.get(5, 3, 6).unwrap().is_exact());
    }

    #[test]
    fn exact_values_win() {
        let mut c = ResultsCache::new();
        c.insert(4, 3, 6, entry(7, "search-lower-bound"));
        c.insert(4, 3, 6, entry(8, "search"));
        c.insert(4, 3, 6, entry(9, "search-lower-bound"));
        assert_eq!(c.get(4, 3, 6), Some(&entry(8, "search")));
    }

    #[test]
    fn monotonicity_pairs() {
        let text = "3 2 4 5 search\n4 2 4 6 search\n4 3 4 4 formula\n3 3 4 4 formula\n";
        assert!(ResultsCache::parse(text).unwrap().monotonicity_violations().is_empty());
        let bad = ResultsCache::parse("3 2 4 7 search\n4 2 4 6 search\n").unwrap();
        let v = bad.monotonicity_violations();
        assert_eq!(v.len(), 1);
        assert_eq!((v[0].smaller, v[0].larger), ((3, 2, 4), (4, 2, 4)));
        // a lower bound on the right cannot be contradicted
        let open = ResultsCache::parse("3 2 4 7 search\n4 2 4 6 search-lower-bound\n").unwrap();
        assert!(open.monotonicity_violations().is_empty());
    }

    #[test]
    fn rejects_bad_lines() {
        assert!(matches!(ResultsCache::parse("1 2 3\n"), Err(CacheError::Syntax { line: 1, .. })));
        assert!(matches!(ResultsCache::parse("1 2 3 4 guess\n"), Err(CacheError::Syntax { .. })));
        assert!(matches!(
            ResultsCache::parse("3 2 4 5 search\n3 2 4 6 search\n"),
            Err(CacheError::Conflict { line: 2, .. })
        ));
    }
}
