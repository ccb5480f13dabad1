//! Distinct k-mer counting on deterministic Wheeler graphs, and a simulated
//! node-centric de Bruijn graph of those k-mers.
//!
//! A *k-mer* of an edge-labeled graph is a string of length k spelled by the
//! labels along a walk. On general labeled graphs, counting the distinct
//! k-mers exactly is intractable (see [`wheelerize::dnf_to_graph`] for the
//! counting-hardness gadget), but on deterministic Wheeler graphs two
//! polynomial algorithms apply:
//!
//! * [`count::count_kmers_dp`] — level-by-level dynamic programming,
//!   O(|W|·k) arithmetic operations;
//! * [`doubling::count_kmers_doubling`] — prefix doubling over pairwise
//!   path-count matrices, O(n⁴·log k)-style.
//!
//! Both are cross-checked against the explicit enumeration in [`oracle`].
//! The [`dbg`] module builds, from the same per-level counting data, a
//! queryable representation of the node-centric de Bruijn graph of the
//! k-mers without enumerating them, plus an explicit export.

pub mod count;
pub mod dbg;
pub mod doubling;
pub mod gen;
pub mod graph;
pub mod lcs;
pub mod oracle;
pub mod rmq;
pub mod selftest;
pub mod wheelerize;

pub use graph::{parse_wgf, validate_wheeler, LabeledGraph, WheelerGraph};

/// Arbitrary-precision nonnegative count. Distinct k-mer counts are
/// exponential in the graph size in the worst case.
pub type Count = num_bigint::BigUint;
