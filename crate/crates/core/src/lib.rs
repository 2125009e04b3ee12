//! Gallai colorings of complete graphs.
//!
//! A Gallai coloring is an edge coloring of `K_n` without a rainbow
//! triangle. The crate covers the basic structure of such colorings
//! ([`coloring`], [`partition`], [`stars`]), explicit constructions
//! ([`constructions`]), exhaustive search for the extremal numbers
//! `g^k_q(p)` ([`search`]), randomized constructions ([`probabilistic`]) and
//! the closed-form bounds ([`formulas`]).

pub mod coloring;
pub mod constructions;
pub mod format;
pub mod formulas;
pub mod partition;
pub mod probabilistic;
pub mod search;
pub mod stars;

pub use coloring::{Color, ColorSet, CoreError, EdgeColoring, VertexSet};
