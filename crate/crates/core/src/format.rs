//! Text, JSON and Graphviz encodings of colorings.
//!
//! The text form is a header line `n k` followed by `n - 1` lines, line `i`
//! listing the colors of edges `(i, j)` for `j > i`, space separated.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coloring::{Color, CoreError, EdgeColoring};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error(transparent)]
    Invalid(#[from] CoreError),
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
}

fn syntax(line: usize, msg: impl Into<String>) -> FormatError {
    FormatError::Syntax { line, msg: msg.into() }
}

pub fn to_text(g: &EdgeColoring) -> String {
    let mut out = format!("{} {}\n", g.n(), g.k());
    let n = g.n();
    for u in 0..n.saturating_sub(1) {
        let row: Vec<String> = (u + 1..n).map(|v| g.color(u, v).to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

pub fn from_text(text: &str) -> Result<EdgeColoring, FormatError> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let (_, header) = lines.next().ok_or_else(|| syntax(1, "empty input"))?;
    let head: Vec<&str> = header.split_whitespace().collect();
    let [n, k] = head.as_slice() else {
        return Err(syntax(1, "expected `n k`"));
    };
    let parse = |s: &str, line: usize| {
        s.parse::<usize>().map_err(|_| syntax(line, format!("`{s}` is not a non-negative integer")))
    };
    let n = parse(n, 1)?;
    let k = parse(k, 1)?;
    let mut upper: Vec<Color> = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for u in 0..n.saturating_sub(1) {
        let (idx, line) = lines.next().ok_or_else(|| syntax(u + 2, "missing row"))?;
        let row = line.split_whitespace().collect::<Vec<_>>();
        if row.len() != n - u - 1 {
            return Err(syntax(idx + 1, format!("expected {} colors, got {}", n - u - 1, row.len())));
        }
        for tok in row {
            let c = parse(tok, idx + 1)?;
            if c == 0 || c > k {
                return Err(CoreError::ColorOutOfRange { color: c, k }.into());
            }
            upper.push(c as Color);
        }
    }
    if let Some((idx, _)) = lines.next() {
        return Err(syntax(idx + 1, "trailing content"));
    }
    Ok(EdgeColoring::from_upper(n, k, upper)?)
}

#[derive(Serialize, Deserialize)]
struct ColoringJson {
    n: usize,
    k: usize,
    upper: Vec<Color>,
}

pub fn to_json(g: &EdgeColoring) -> String {
    let j = ColoringJson { n: g.n(), k: g.k(), upper: g.upper().to_vec() };
    serde_json::to_string(&j).expect("plain struct serializes")
}

pub fn from_json(text: &str) -> Result<EdgeColoring, FormatError> {
    let j: ColoringJson = serde_json::from_str(text)?;
    Ok(EdgeColoring::from_upper(j.n, j.k, j.upper)?)
}

/// Reads either encoding, deciding by the first non-blank character.
pub fn parse_any(text: &str) -> Result<EdgeColoring, FormatError> {
    if text.trim_start().starts_with('{') {
        from_json(text)
    } else {
        from_text(text)
    }
}

const DOT_PALETTE: [&str; 12] = [
    "red",
    "blue",
    "forestgreen",
    "orange",
    "purple",
    "brown",
    "magenta",
    "cyan4",
    "gold3",
    "gray40",
    "navy",
    "olivedrab",
];

/// Graphviz `graph` with 1-based vertex names and one color per palette entry.
pub fn to_dot(g: &EdgeColoring) -> String {
    let mut out = String::from("graph coloring {\n  node [shape=circle];\n");
    for u in 0..g.n() {
        for v in u + 1..g.n() {
            let c = g.color(u, v);
            let name = DOT_PALETTE[(c as usize - 1) % DOT_PALETTE.len()];
            let _ = writeln!(out, "  {} -- {} [color={name}, label={c}];", u + 1, v + 1);
        }
    }
    out.push_str("}\n");
    out
}
