//! Level-by-level distinct k-mer counter: O(|W|·k) arithmetic operations.
//!
//! Per level, the count at a vertex is the sum of its in-neighbors'
//! previous-level counts minus one for every adjacent in-neighbor pair
//! sharing their boundary mer; shared mers occupy consecutive vertex runs,
//! so the same correction over adjacent vertex pairs turns per-vertex
//! counts into a distinct total.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::graph::WheelerGraph;
use crate::lcs::{compute_levels, LcsData};

/// Result of the dynamic-programming counter.
#[derive(Debug, Clone)]
pub struct DpResult {
    pub total: BigUint,
    /// Distinct k-mers arriving at each vertex.
    pub per_vertex: Vec<BigUint>,
    /// Number of level-loop iterations executed (equals k).
    pub levels_computed: usize,
}

/// Per-vertex counts for every level 0..=k. Row `l` holds C_l(v).
pub fn count_levels(w: &WheelerGraph, lcs: &LcsData, k: usize) -> Vec<Vec<BigUint>> {
    assert!(lcs.cap() >= k.saturating_sub(1));
    let n = w.n();
    let mut levels = Vec::with_capacity(k + 1);
    levels.push(vec![BigUint::one(); n]);
    for level in 1..=k {
        let prev = &levels[level - 1];
        let mut cur = vec![BigUint::zero(); n];
        for v in 0..n {
            if w.is_source(v) {
                continue;
            }
            let preds = w.preds(v);
            let mut acc = BigUint::zero();
            let mut shared = 0u64;
            for (i, &p) in preds.iter().enumerate() {
                acc += &prev[p];
                if i > 0 && lcs.share_unchecked(level - 1, preds[i - 1], p) {
                    shared += 1;
                }
            }
            debug_assert!(acc >= BigUint::from(shared));
            cur[v] = acc - BigUint::from(shared);
        }
        levels.push(cur);
    }
    levels
}

/// Distinct total from per-vertex counts at level `k`: shared k-mers sit in
/// consecutive vertex runs, so subtracting one per sharing adjacent pair
/// counts each exactly once.
pub fn total_from_per_vertex(lcs: &LcsData, k: usize, per_vertex: &[BigUint]) -> BigUint {
    let mut total = BigUint::zero();
    let mut shared = 0u64;
    for (v, c) in per_vertex.iter().enumerate() {
        total += c;
        if v > 0 && lcs.share_adjacent(k, v - 1) {
            shared += 1;
        }
    }
    debug_assert!(total >= BigUint::from(shared));
    total - BigUint::from(shared)
}

/// Counts distinct k-mers with precomputed sharing data (`lcs.cap() >= k`).
pub fn count_kmers_dp_with(w: &WheelerGraph, lcs: &LcsData, k: usize) -> DpResult {
    assert!(lcs.cap() >= k);
    let levels = count_levels(w, lcs, k);
    let per_vertex = levels.into_iter().last().unwrap();
    let total = total_from_per_vertex(lcs, k, &per_vertex);
    DpResult { total, per_vertex, levels_computed: k }
}

/// Counts the distinct k-mers on walks of `w`.
pub fn count_kmers_dp(w: &WheelerGraph, k: usize) -> DpResult {
    let lcs = compute_levels(w, k);
    count_kmers_dp_with(w, &lcs, k)
}
