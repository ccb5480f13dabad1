//! Prefix-doubling distinct k-mer counter.
//!
//! Each level l keeps: pairwise path-label counts C_l(u,v), an l-step
//! reachability index, indicators for whether the minimal/maximal incoming
//! l-mer of a vertex is realizable from a given start, the intervals of
//! black l-mers (those arriving at more than one vertex), and a dense table
//! T_l([i..j], v) of distinct l-mers from a vertex interval into v. A level
//! l is assembled from the two levels ceil(l/2) and floor(l/2), so only
//! O(log k) levels are ever materialized.

use std::collections::BTreeSet;
use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::count::total_from_per_vertex;
use crate::graph::WheelerGraph;
use crate::lcs::{compute_levels, LcsData};

/// The ladder of levels materialized for a target length `k`: the closure
/// of {k} under l -> {ceil(l/2), floor(l/2)}, in increasing order.
pub fn doubling_ladder(k: usize) -> Vec<usize> {
    let mut set = BTreeSet::new();
    let mut stack = vec![k];
    while let Some(l) = stack.pop() {
        if l == 0 || !set.insert(l) || l == 1 {
            continue;
        }
        stack.push(l.div_ceil(2));
        stack.push(l / 2);
    }
    set.into_iter().collect()
}

fn tri_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i <= j && j < n);
    i * n - (i * i - i) / 2 + (j - i)
}

fn tri_len(n: usize) -> usize {
    n * (n + 1) / 2
}

/// Column-indexed boolean matrix with prefix counts for O(1) range-OR over
/// row intervals.
struct ColIndexed {
    n: usize,
    bits: Vec<bool>,          // row-major bits[u * n + v]
    col_pref: Vec<u32>,       // col_pref[v * (n+1) + i] = ones in rows < i
}

impl ColIndexed {
    fn new(n: usize, bits: Vec<bool>) -> Self {
        let mut col_pref = vec![0u32; n * (n + 1)];
        for v in 0..n {
            for u in 0..n {
                col_pref[v * (n + 1) + u + 1] =
                    col_pref[v * (n + 1) + u] + u32::from(bits[u * n + v]);
            }
        }
        ColIndexed { n, bits, col_pref }
    }

    fn at(&self, u: usize, v: usize) -> bool {
        self.bits[u * self.n + v]
    }

    /// Any true entry in rows qi..=qj of column v.
    fn range_any(&self, qi: usize, qj: usize, v: usize) -> bool {
        self.col_pref[v * (self.n + 1) + qj + 1] > self.col_pref[v * (self.n + 1) + qi]
    }
}

/// One materialized doubling level.
pub struct Level {
    ell: usize,
    n: usize,
    c: Vec<BigUint>,
    reach: ColIndexed,
    dinf: ColIndexed,
    dsup: ColIndexed,
    black: Vec<(usize, usize)>,
    t: Vec<BigUint>,
}

impl Level {
    pub fn ell(&self) -> usize {
        self.ell
    }

    /// Number of distinct `ell`-mers on u -> v paths.
    pub fn pair_count(&self, u: usize, v: usize) -> &BigUint {
        &self.c[u * self.n + v]
    }

    /// Distinct `ell`-mers from the vertex interval [i..j] into v.
    pub fn t_value(&self, i: usize, j: usize, v: usize) -> &BigUint {
        &self.t[tri_index(self.n, i, j) * self.n + v]
    }

    pub fn black(&self) -> &[(usize, usize)] {
        &self.black
    }

    pub fn reach(&self, u: usize, v: usize) -> bool {
        self.reach.at(u, v)
    }

    pub fn dinf(&self, u: usize, v: usize) -> bool {
        self.dinf.at(u, v)
    }

    pub fn dsup(&self, u: usize, v: usize) -> bool {
        self.dsup.at(u, v)
    }

    /// Whether the minimal incoming `ell`-mer of v is a suffix of inf(v)
    /// and realizable from some vertex in [qi..qj].
    pub fn dinf_any(&self, qi: usize, qj: usize, v: usize) -> bool {
        self.dinf.range_any(qi, qj, v)
    }

    pub fn dsup_any(&self, qi: usize, qj: usize, v: usize) -> bool {
        self.dsup.range_any(qi, qj, v)
    }

    pub fn reach_any(&self, qi: usize, qj: usize, v: usize) -> bool {
        self.reach.range_any(qi, qj, v)
    }

    /// The set of vertices reachable with exactly `ell` steps from [qi..qj].
    pub fn reach_set(&self, qi: usize, qj: usize) -> Vec<bool> {
        (0..self.n).map(|v| self.reach.range_any(qi, qj, v)).collect()
    }
}

fn mat_mul(n: usize, a: &[BigUint], b: &[BigUint]) -> Vec<BigUint> {
    let mut out = vec![BigUint::zero(); n * n];
    for u in 0..n {
        for w in 0..n {
            let f = &a[u * n + w];
            if f.is_zero() {
                continue;
            }
            for v in 0..n {
                let g = &b[w * n + v];
                if !g.is_zero() {
                    out[u * n + v] += f * g;
                }
            }
        }
    }
    out
}

fn adjacency_counts(w: &WheelerGraph) -> Vec<BigUint> {
    let n = w.n();
    let mut c = vec![BigUint::zero(); n * n];
    for e in w.graph().edges() {
        c[e.from * n + e.to] += BigUint::one();
    }
    c
}

/// Pairwise distinct-`ell`-mer counts by repeated matrix products over the
/// binary decomposition of `ell`. In a deterministic graph every u -> v
/// path of a given length spells a distinct label string, so path counts
/// and distinct-label counts coincide.
pub fn pairwise_counts(w: &WheelerGraph, ell: usize) -> Vec<BigUint> {
    assert!(ell >= 1);
    let n = w.n();
    let mut sq = adjacency_counts(w);
    let mut acc: Option<Vec<BigUint>> = None;
    let mut rest = ell;
    loop {
        if rest & 1 == 1 {
            acc = Some(match acc {
                None => sq.clone(),
                Some(a) => mat_mul(n, &a, &sq),
            });
        }
        rest >>= 1;
        if rest == 0 {
            break;
        }
        sq = mat_mul(n, &sq, &sq);
    }
    acc.unwrap()
}

/// Maximal vertex intervals [i..j], i < j, whose endpoints share an
/// `ell`-mer; each corresponds to exactly one black `ell`-mer and is its
/// arrival set. Consecutive intervals may share one endpoint.
pub fn black_intervals(lcs: &LcsData, ell: usize, n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    if n < 2 {
        return out;
    }
    let mut i = 0;
    while i + 1 < n {
        if lcs.share_adjacent(ell, i) {
            let mut j = i + 1;
            while j + 1 < n
                && lcs.share_adjacent(ell, j)
                && lcs.ilcs_at_least_unchecked(ell, j)
            {
                j += 1;
            }
            out.push((i, j));
            i = j;
        } else {
            i += 1;
        }
    }
    out
}

/// Realizability indicators for level `ell` from the two child levels:
/// the first part of a minimal (resp. maximal) `ell`-mer into v is the
/// minimal (resp. maximal) `a.ell`-mer of the smallest (resp. largest)
/// midpoint that can finish with the minimal (resp. maximal) `b.ell`-suffix.
pub fn d_tables(
    lcs: &LcsData,
    a: &Level,
    b: &Level,
    n: usize,
) -> (Vec<bool>, Vec<bool>) {
    let la = a.ell;
    let mut dinf = vec![false; n * n];
    let mut dsup = vec![false; n * n];
    for v in 0..n {
        let m_inf: Vec<usize> = (0..n).filter(|&m| b.dinf.at(m, v)).collect();
        if let Some(&w_inf) = m_inf.first() {
            let mut eff = vec![w_inf];
            if lcs.ilcs_at_least_unchecked(la, w_inf) {
                eff.extend(
                    m_inf[1..]
                        .iter()
                        .copied()
                        .filter(|&m| lcs.share_unchecked(la, w_inf, m)),
                );
            }
            for u in 0..n {
                dinf[u * n + v] = eff.iter().any(|&m| a.dinf.at(u, m));
            }
        }
        let m_sup: Vec<usize> = (0..n).filter(|&m| b.dsup.at(m, v)).collect();
        if let Some(&w_max) = m_sup.last() {
            let mut eff = vec![w_max];
            if lcs.ilcs_at_least_unchecked(la, w_max) {
                eff.extend(
                    m_sup[..m_sup.len() - 1]
                        .iter()
                        .copied()
                        .filter(|&m| lcs.share_unchecked(la, m, w_max)),
                );
            }
            for u in 0..n {
                dsup[u * n + v] = eff.iter().any(|&m| a.dsup.at(u, m));
            }
        }
    }
    (dinf, dsup)
}

/// Count of white `ell`-mers (arriving only at v) from [qi..qj] into v:
/// the total minus the black minimal and/or maximal mer when realizable.
/// The maximal-mer term also fires when v has a single `ell`-mer shared
/// only upward, which the minimal-mer term cannot cover.
pub fn tw_from_t(level: &Level, lcs: &LcsData, qi: usize, qj: usize, v: usize) -> BigUint {
    let ell = level.ell;
    let mut t = level.t_value(qi, qj, v).clone();
    let share_down = v > 0 && lcs.share_adjacent(ell, v - 1);
    let share_up = v + 1 < level.n && lcs.share_adjacent(ell, v);
    if share_down && level.dinf_any(qi, qj, v) {
        t -= BigUint::one();
    }
    if share_up
        && level.dsup_any(qi, qj, v)
        && (!lcs.ilcs_at_least_unchecked(ell, v) || !share_down)
    {
        t -= BigUint::one();
    }
    t
}

/// Black sub-intervals usable from the query interval: the reachable part
/// of each black interval, with an endpoint dropped when the shared mer is
/// not realizable from the query interval at that endpoint.
fn usable_black(a: &Level, qi: usize, qj: usize) -> Vec<(usize, usize)> {
    let mut subs = Vec::new();
    for &(s, e) in &a.black {
        let mut lo = None;
        let mut hi = None;
        for w in s..=e {
            if a.reach.range_any(qi, qj, w) {
                if lo.is_none() {
                    lo = Some(w);
                }
                hi = Some(w);
            }
        }
        let (Some(mut lo), Some(mut hi)) = (lo, hi) else { continue };
        if lo == s && !a.dsup_any(qi, qj, s) {
            lo += 1;
        }
        if hi == e && !a.dinf_any(qi, qj, e) {
            if hi == 0 {
                continue;
            }
            hi -= 1;
        }
        if lo <= hi {
            subs.push((lo, hi));
        }
    }
    subs
}

/// T values for one query interval against a destination range, split into
/// mers with a white first part (unique arrival, extended by pairwise
/// counts) and a black first part (one term per usable black interval).
fn t_row(a: &Level, b: &Level, lcs: &LcsData, n: usize, qi: usize, qj: usize) -> Vec<BigUint> {
    let tw: Vec<BigUint> = (0..n).map(|m| tw_from_t(a, lcs, qi, qj, m)).collect();
    let subs = usable_black(a, qi, qj);
    (0..n)
        .map(|v| {
            let mut acc = BigUint::zero();
            for (m, twm) in tw.iter().enumerate() {
                if !twm.is_zero() {
                    let cb = &b.c[m * n + v];
                    if !cb.is_zero() {
                        acc += twm * cb;
                    }
                }
            }
            for &(lo, hi) in &subs {
                acc += b.t_value(lo, hi, v);
            }
            acc
        })
        .collect()
}

/// The dense interval table at level `a.ell + b.ell`.
pub fn t_table(lcs: &LcsData, a: &Level, b: &Level, n: usize) -> Vec<BigUint> {
    let mut t = vec![BigUint::zero(); tri_len(n) * n];
    for i in 0..n {
        for j in i..n {
            let row = t_row(a, b, lcs, n, i, j);
            let base = tri_index(n, i, j) * n;
            t[base..base + n].clone_from_slice(&row);
        }
    }
    t
}

/// Level 1 directly from the edge set: counts are the adjacency indicator,
/// both extremal-mer indicators coincide with it, and T is a reachability
/// range-OR (input consistency makes all 1-mers into v equal).
pub fn base_level(w: &WheelerGraph, lcs: &LcsData) -> Level {
    let n = w.n();
    let c = adjacency_counts(w);
    let bits: Vec<bool> = c.iter().map(|x| !x.is_zero()).collect();
    let reach = ColIndexed::new(n, bits.clone());
    let dinf = ColIndexed::new(n, bits.clone());
    let dsup = ColIndexed::new(n, bits);
    let black = black_intervals(lcs, 1, n);
    let mut t = vec![BigUint::zero(); tri_len(n) * n];
    for i in 0..n {
        for j in i..n {
            let base = tri_index(n, i, j) * n;
            for v in 0..n {
                if reach.range_any(i, j, v) {
                    t[base + v] = BigUint::one();
                }
            }
        }
    }
    Level { ell: 1, n, c, reach, dinf, dsup, black, t }
}

/// Assembles level `ell` from its two child levels (first part `a`, second
/// part `b`, `a.ell = ceil(ell/2)`, `b.ell = floor(ell/2)`).
pub fn build_level(w: &WheelerGraph, lcs: &LcsData, ell: usize, a: &Level, b: &Level) -> Level {
    let n = w.n();
    assert_eq!(a.ell + b.ell, ell);
    let c = mat_mul(n, &a.c, &b.c);
    let reach = ColIndexed::new(n, c.iter().map(|x| !x.is_zero()).collect());
    let (dinf_bits, dsup_bits) = d_tables(lcs, a, b, n);
    let dinf = ColIndexed::new(n, dinf_bits);
    let dsup = ColIndexed::new(n, dsup_bits);
    let black = black_intervals(lcs, ell, n);
    let t = t_table(lcs, a, b, n);
    Level { ell, n, c, reach, dinf, dsup, black, t }
}

/// Result of the prefix-doubling counter.
#[derive(Debug, Clone)]
pub struct DoublingResult {
    pub total: BigUint,
    pub per_vertex: Vec<BigUint>,
    /// Number of ladder levels touched, including the root.
    pub ladder_levels: usize,
}

/// Builds every ladder level below `k`, then evaluates the full-interval
/// row at `k` for the per-vertex counts. Child levels are dropped as soon
/// as no higher level needs them.
pub fn count_kmers_doubling(w: &WheelerGraph, k: usize) -> DoublingResult {
    let lcs = compute_levels(w, k);
    count_kmers_doubling_with(w, &lcs, k)
}

/// As [`count_kmers_doubling`] with precomputed sharing data
/// (`lcs.cap() >= k`).
pub fn count_kmers_doubling_with(w: &WheelerGraph, lcs: &LcsData, k: usize) -> DoublingResult {
    assert!(lcs.cap() >= k);
    let n = w.n();
    if k == 0 {
        return DoublingResult {
            total: BigUint::one(),
            per_vertex: vec![BigUint::one(); n],
            ladder_levels: 0,
        };
    }

    let ladder = doubling_ladder(k);
    let children: Vec<usize> = ladder[..ladder.len() - 1].to_vec();

    // How many times each child level is consumed by a later level.
    let mut uses: HashMap<usize, usize> = HashMap::new();
    for &ell in ladder.iter() {
        if ell > 1 {
            *uses.entry(ell.div_ceil(2)).or_default() += 1;
            *uses.entry(ell / 2).or_default() += 1;
        }
    }

    let mut levels: HashMap<usize, Level> = HashMap::new();
    for &ell in &children {
        let level = if ell == 1 {
            base_level(w, lcs)
        } else {
            let la = ell.div_ceil(2);
            let lb = ell / 2;
            build_level(w, lcs, ell, &levels[&la], &levels[&lb])
        };
        levels.insert(ell, level);
        if ell > 1 {
            for child in [ell.div_ceil(2), ell / 2] {
                let u = uses.get_mut(&child).unwrap();
                *u -= 1;
                if *u == 0 {
                    levels.remove(&child);
                }
            }
        }
    }

    let per_vertex: Vec<BigUint> = if k == 1 {
        let base = base_level(w, lcs);
        (0..n).map(|v| base.t_value(0, n - 1, v).clone()).collect()
    } else {
        let a = &levels[&k.div_ceil(2)];
        let b = &levels[&(k / 2)];
        t_row(a, b, lcs, n, 0, n - 1)
    };

    let total = total_from_per_vertex(lcs, k, &per_vertex);
    DoublingResult { total, per_vertex, ladder_levels: ladder.len() }
}
