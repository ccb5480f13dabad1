//! Level-by-level computation of the sharing predicates between vertices
//! and the capped external/internal longest-common-suffix arrays, with
//! constant-time range queries afterwards.
//!
//! `share(l, u, v)` answers whether u's largest and v's smallest incoming
//! l-mer coincide; `ilcs_at_least(l, v)` whether v's smallest and largest
//! incoming l-mers coincide. Both are derived from two capped arrays:
//! `elcs[i]` caps the longest common suffix of sup(v_i) and inf(v_{i+1}),
//! `ilcs[v]` that of inf(v) and sup(v).

use thiserror::Error;

use crate::graph::WheelerGraph;
use crate::rmq::SparseTableMin;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LcsError {
    #[error("level {level} exceeds cap {cap}")]
    OutOfCap { level: usize, cap: usize },
}

pub struct LcsData {
    cap: usize,
    /// elcs[i] = min(LCS(sup(v_i), inf(v_{i+1})), cap), one entry per
    /// adjacent vertex pair.
    elcs: Vec<u32>,
    /// ilcs[v] = min(LCS(inf(v), sup(v)), cap).
    ilcs: Vec<u32>,
    elcs_rmq: Option<SparseTableMin>,
    ilcs_rmq: Option<SparseTableMin>,
}

/// Zero-prefix counter: answers "is there a false in this range" in O(1).
struct ZeroPrefix {
    pref: Vec<u32>,
}

impl ZeroPrefix {
    fn new(bits: &[bool]) -> Self {
        let mut pref = Vec::with_capacity(bits.len() + 1);
        pref.push(0);
        for &b in bits {
            pref.push(pref.last().unwrap() + u32::from(!b));
        }
        ZeroPrefix { pref }
    }

    /// True when `bits[i..j]` contains no false (empty ranges pass).
    fn all_true(&self, i: usize, j: usize) -> bool {
        if i >= j {
            return true;
        }
        self.pref[j] == self.pref[i]
    }
}

/// Computes the sharing predicates for levels 1..=k by their recurrences
/// and records, per adjacent pair and per vertex, the last level at which
/// they held — the capped elcs/ilcs arrays. O(|W|·k) time, O(n) working
/// space per level.
pub fn compute_levels(w: &WheelerGraph, k: usize) -> LcsData {
    let n = w.n();
    let pairs = n.saturating_sub(1);

    let mut sh = vec![true; pairs]; // share_l(v_i, v_{i+1}) at current level
    let mut il = vec![true; n]; // ilcs_at_least(l, v) at current level
    let mut elcs = vec![0u32; pairs];
    let mut ilcs = vec![0u32; n];

    for level in 1..=k {
        let zsh = ZeroPrefix::new(&sh);
        let zil = ZeroPrefix::new(&il);
        // share at the previous level for an arbitrary pair p <= q.
        let share_prev = |p: usize, q: usize| -> bool {
            p == q || (zsh.all_true(p, q) && zil.all_true(p + 1, q))
        };

        let mut new_sh = vec![false; pairs];
        for i in 0..pairs {
            let (u, v) = (i, i + 1);
            let (lu, lv) = (w.lambda(u), w.lambda(v));
            new_sh[i] = match (lu, lv) {
                (Some(a), Some(b)) if a == b => {
                    let p = *w.preds(u).last().unwrap();
                    let q = w.preds(v)[0];
                    // Determinism and W2 put every in-neighbor of u strictly
                    // below every in-neighbor of v here.
                    debug_assert!(p < q);
                    share_prev(p, q)
                }
                _ => false,
            };
        }

        let mut new_il = vec![false; n];
        for v in 0..n {
            if w.is_source(v) {
                continue;
            }
            let preds = w.preds(v);
            let p = preds[0];
            let q = *preds.last().unwrap();
            new_il[v] = il[p] && il[q] && share_prev(p, q);
        }

        for i in 0..pairs {
            debug_assert!(sh[i] || !new_sh[i], "share must be monotone in level");
            if new_sh[i] {
                elcs[i] = level as u32;
            }
        }
        for v in 0..n {
            debug_assert!(il[v] || !new_il[v], "ilcs must be monotone in level");
            if new_il[v] {
                ilcs[v] = level as u32;
            }
        }
        sh = new_sh;
        il = new_il;
    }

    let elcs_rmq = if pairs > 0 { Some(SparseTableMin::new(&elcs)) } else { None };
    let ilcs_rmq = if n > 0 { Some(SparseTableMin::new(&ilcs)) } else { None };
    LcsData { cap: k, elcs, ilcs, elcs_rmq, ilcs_rmq }
}

impl LcsData {
    pub fn cap(&self) -> usize {
        self.cap
    }

    /// Capped external LCS values, one per adjacent vertex pair.
    pub fn elcs(&self) -> &[u32] {
        &self.elcs
    }

    /// Capped internal LCS values, one per vertex.
    pub fn ilcs(&self) -> &[u32] {
        &self.ilcs
    }

    /// Whether u's largest and v's smallest incoming `level`-mers coincide,
    /// for u <= v. `share(_, u, u)` is true by convention. O(1).
    pub fn share(&self, level: usize, u: usize, v: usize) -> Result<bool, LcsError> {
        if level > self.cap {
            return Err(LcsError::OutOfCap { level, cap: self.cap });
        }
        Ok(self.share_unchecked(level, u, v))
    }

    pub(crate) fn share_unchecked(&self, level: usize, u: usize, v: usize) -> bool {
        debug_assert!(u <= v && level <= self.cap);
        if level == 0 || u == v {
            return true;
        }
        let level = level as u32;
        // Adjacent-pair minimum over (u, v], then interior vertices (u, v).
        if self.elcs_rmq.as_ref().unwrap().min(u, v - 1) < level {
            return false;
        }
        if v - u >= 2 && self.ilcs_rmq.as_ref().unwrap().min(u + 1, v - 1) < level {
            return false;
        }
        true
    }

    /// Whether v's smallest and largest incoming `level`-mers coincide. O(1).
    pub fn ilcs_at_least(&self, level: usize, v: usize) -> Result<bool, LcsError> {
        if level > self.cap {
            return Err(LcsError::OutOfCap { level, cap: self.cap });
        }
        Ok(self.ilcs_at_least_unchecked(level, v))
    }

    pub(crate) fn ilcs_at_least_unchecked(&self, level: usize, v: usize) -> bool {
        level == 0 || self.ilcs[v] >= level as u32
    }

    /// share for adjacent pairs, with out-of-range neighbors treated as
    /// non-sharing: `share_adjacent(l, i)` relates v_i and v_{i+1}.
    pub(crate) fn share_adjacent(&self, level: usize, i: usize) -> bool {
        if level == 0 {
            return true;
        }
        i < self.elcs.len() && self.elcs[i] >= level as u32
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{parse_wgf, validate_wheeler};
    use crate::oracle::{capped_lcs, inf_sup_capped};

    fn wheeler(text: &str) -> WheelerGraph {
        validate_wheeler(parse_wgf(text).unwrap()).unwrap()
    }

    #[test]
    fn g3_levels() {
        let w = wheeler("WGF 1\n2 2\n1 2 b\n2 1 a\n");
        let lcs = compute_levels(&w, 4);
        // Incoming labels differ, so the adjacent pair never shares.
        assert_eq!(lcs.elcs(), &[0]);
        // Each vertex has a single incoming walk: inf = sup, capped at 4.
        assert_eq!(lcs.ilcs(), &[4, 4]);
    }

    #[test]
    fn g1_levels() {
        let w = wheeler("WGF 1\n2 1\n1 2 a\n");
        let lcs = compute_levels(&w, 2);
        assert_eq!(lcs.elcs(), &[0]);
        // v2's only incoming string is "a": inf = sup of length 1.
        assert_eq!(lcs.ilcs(), &[0, 1]);
    }

    #[test]
    fn share_level_zero_and_diagonal() {
        let w = wheeler("WGF 1\n2 2\n1 2 b\n2 1 a\n");
        let lcs = compute_levels(&w, 3);
        assert!(lcs.share(0, 0, 1).unwrap());
        assert!(lcs.share(2, 1, 1).unwrap());
        assert!(!lcs.share(1, 0, 1).unwrap());
        assert_eq!(
            lcs.share(4, 0, 1).unwrap_err(),
            LcsError::OutOfCap { level: 4, cap: 3 }
        );
    }

    #[test]
    fn ilcs_examples() {
        let w = wheeler("WGF 1\n1 1\n1 1 a\n");
        let lcs = compute_levels(&w, 5);
        for l in 0..=5 {
            assert!(lcs.ilcs_at_least(l, 0).unwrap());
        }
        let w = wheeler("WGF 1\n2 1\n1 2 a\n");
        let lcs = compute_levels(&w, 3);
        assert!(lcs.ilcs_at_least(0, 0).unwrap());
        assert!(!lcs.ilcs_at_least(1, 0).unwrap(), "sources fail at l >= 1");
    }

    // share must agree with the per-vertex sets for arbitrary (not just
    // adjacent) vertex pairs, and be monotone in both the level and the
    // distance to the partner.
    #[test]
    fn share_matches_oracle_on_all_pairs() {
        use crate::gen::{random_dwg, DwgConfig};
        use crate::oracle::{enumerate_kmers, DEFAULT_ORACLE_CAP};
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(314);
        for _ in 0..25 {
            let w = random_dwg(&mut rng, &DwgConfig { max_n: 10, max_sigma: 3, acyclic: false });
            let k = 4;
            let lcs = compute_levels(&w, k);
            for ell in 1..=k {
                let e = enumerate_kmers(w.graph(), ell, DEFAULT_ORACLE_CAP).unwrap();
                for u in 0..w.n() {
                    let mut prev_in_run = true;
                    for v in u + 1..w.n() {
                        let expect = match (e.per_vertex[u].last(), e.per_vertex[v].first()) {
                            (Some(max_u), Some(min_v)) => max_u == min_v,
                            _ => false,
                        };
                        let got = lcs.share(ell, u, v).unwrap();
                        assert_eq!(got, expect, "l={ell} u={u} v={v}");
                        assert!(prev_in_run || !got, "sharing run is contiguous from u");
                        prev_in_run = got;
                        if ell > 1 {
                            assert!(
                                lcs.share(ell - 1, u, v).unwrap() || !got,
                                "share is monotone in the level"
                            );
                        }
                    }
                }
            }
        }
    }

    // The capped arrays must equal capped LCS of the walk-derived extremal
    // strings.
    #[test]
    fn arrays_match_walked_strings() {
        let texts = [
            "WGF 1\n2 2\n1 2 b\n2 1 a\n",
            "WGF 1\n2 1\n1 2 a\n",
            "WGF 1\n1 1\n1 1 a\n",
            // Two 'x'-twins feeding 'a'-successors that share.
            "WGF 1\n10 8\n1 8 x\n2 9 x\n3 10 y\n8 4 a\n9 5 a\n10 5 a\n4 6 b\n6 7 c\n",
        ];
        for text in texts {
            let w = wheeler(text);
            let k = 5;
            let lcs = compute_levels(&w, k);
            for v in 0..w.n() {
                let (inf, sup) = inf_sup_capped(&w, v, k);
                let expect = capped_lcs(&inf, &sup).min(k);
                assert_eq!(lcs.ilcs()[v] as usize, expect, "ilcs at {v} in {text}");
            }
            for i in 0..w.n() - 1 {
                let (_, sup) = inf_sup_capped(&w, i, k);
                let (inf, _) = inf_sup_capped(&w, i + 1, k);
                let expect = capped_lcs(&sup, &inf).min(k);
                assert_eq!(lcs.elcs()[i] as usize, expect, "elcs at {i} in {text}");
            }
        }
    }
}
