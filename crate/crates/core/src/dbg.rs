//! Simulated node-centric de Bruijn graph of the k-mers of a deterministic
//! Wheeler graph.
//!
//! The representation never enumerates k-mers. It keeps, per vertex and
//! level: distinct-mer counts, duplicate-aware prefix sums over
//! in-neighbors, the arrival intervals of the extremal (suffix-of-inf /
//! suffix-of-sup) mers, skip pointers to the next in-neighbor contributing
//! a new mer, and three count families:
//!
//! * `F_l(v)` / `L_l(v)` — mers into v suffixed by the minimal / maximal
//!   (l-1)-suffix class;
//! * `K(v)[j]` — left-extension counts of v's j-th inner (k-1)-mer, i.e.
//!   a (k-1)-mer reaching v and no other vertex.
//!
//! On top of these sit k-mer lookup (`handle_of`), label listing, forward
//! traversal, and an explicit export of the whole graph.

use std::collections::HashMap;
use std::rc::Rc;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use thiserror::Error;

use crate::count::count_levels;
use crate::doubling::black_intervals;
use crate::graph::{Kmer, Sym, WheelerGraph};
use crate::lcs::{compute_levels, LcsData};
use crate::oracle::ExplicitDbg;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DbgError {
    #[error("de Bruijn simulation requires k >= 2, got {0}")]
    KTooSmall(usize),
}

/// Identifies one k-mer: the vertex interval `[u, v]` it reaches and its
/// 1-based colex rank `j` among the k-mers reaching `u`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DbgHandle {
    pub u: usize,
    pub v: usize,
    pub j: BigUint,
}

type Interval = Option<(usize, usize)>;

/// Arrival intervals of the extremal mers, per level and vertex.
pub struct IntervalTables {
    left: Vec<Vec<Interval>>,
    right: Vec<Vec<Interval>>,
}

impl IntervalTables {
    /// Arrival interval of the length-`ell` suffix of inf(v); `None` when
    /// inf(v) is shorter than `ell`.
    pub fn left(&self, ell: usize, v: usize) -> Interval {
        self.left[ell - 1][v]
    }

    /// Arrival interval of the length-`ell` suffix of sup(v).
    pub fn right(&self, ell: usize, v: usize) -> Interval {
        self.right[ell - 1][v]
    }
}

/// Computes all left/right intervals for levels 1..=k. Emptiness follows
/// the extremal in-neighbor chains; non-empty intervals are the maximal
/// sharing runs, assigned run by run. O(nk).
pub fn compute_intervals(w: &WheelerGraph, lcs: &LcsData, k: usize) -> IntervalTables {
    let n = w.n();
    let mut left: Vec<Vec<Interval>> = Vec::with_capacity(k);
    let mut right: Vec<Vec<Interval>> = Vec::with_capacity(k);
    let mut left_def = vec![true; n];
    let mut right_def = vec![true; n];
    for ell in 1..=k {
        let mut ldef = vec![false; n];
        let mut rdef = vec![false; n];
        for v in 0..n {
            if w.is_source(v) {
                continue;
            }
            let preds = w.preds(v);
            ldef[v] = left_def[preds[0]];
            rdef[v] = right_def[*preds.last().unwrap()];
        }
        let mut lrow: Vec<Interval> = (0..n)
            .map(|v| if ldef[v] { Some((v, v)) } else { None })
            .collect();
        let mut rrow: Vec<Interval> = (0..n)
            .map(|v| if rdef[v] { Some((v, v)) } else { None })
            .collect();
        for (x, y) in black_intervals(lcs, ell, n) {
            debug_assert!(rrow[x].is_some() && lrow[y].is_some());
            rrow[x] = Some((x, y));
            if lcs.ilcs_at_least_unchecked(ell, x) {
                lrow[x] = Some((x, y));
            }
            for v in x + 1..y {
                lrow[v] = Some((x, y));
                rrow[v] = Some((x, y));
            }
            lrow[y] = Some((x, y));
            if lcs.ilcs_at_least_unchecked(ell, y) {
                rrow[y] = Some((x, y));
            }
        }
        left.push(lrow);
        right.push(rrow);
        left_def = ldef;
        right_def = rdef;
    }
    IntervalTables { left, right }
}

/// Skip pointers: `next(l, v, p)` is the smallest in-neighbor position
/// q > p of v whose l-mer set adds something beyond position p's, or the
/// in-degree as a sentinel. O(|W|k) for all levels.
pub struct NextPointers {
    next: Vec<Vec<Vec<usize>>>,
}

impl NextPointers {
    pub fn next(&self, ell: usize, v: usize, pos: usize) -> usize {
        self.next[ell - 1][v][pos]
    }
}

pub fn compute_next_pointers(
    w: &WheelerGraph,
    lcs: &LcsData,
    counts: &[Vec<BigUint>],
    k: usize,
) -> NextPointers {
    let n = w.n();
    let mut next = Vec::with_capacity(k);
    for ell in 1..=k {
        let row: Vec<Vec<usize>> = (0..n)
            .map(|v| {
                let preds = w.preds(v);
                let d = preds.len();
                let mut res = vec![d; d];
                let mut i = 0;
                while i < d {
                    let mut q = i + 1;
                    let mut found = None;
                    while q < d {
                        let shared = lcs.share_unchecked(ell, preds[i], preds[q]);
                        let c = &counts[ell][preds[q]];
                        let adds = if shared { *c > BigUint::one() } else { !c.is_zero() };
                        if adds {
                            found = Some(q);
                            break;
                        }
                        q += 1;
                    }
                    match found {
                        Some(q) => {
                            for p in i..q {
                                res[p] = q;
                            }
                            i = q;
                        }
                        None => break,
                    }
                }
                res
            })
            .collect();
        next.push(row);
    }
    NextPointers { next }
}

/// F and L arrays for levels 2..=k (rows 0 and 1 are zero). Values stay
/// below sigma: they count distinct left-extensions of one fixed suffix.
pub fn compute_fl(
    w: &WheelerGraph,
    lcs: &LcsData,
    counts: &[Vec<BigUint>],
    k: usize,
) -> (Vec<Vec<u64>>, Vec<Vec<u64>>) {
    let n = w.n();
    let mut f = vec![vec![0u64; n]; k + 1];
    let mut l = vec![vec![0u64; n]; k + 1];
    if k < 2 {
        return (f, l);
    }
    for v in 0..n {
        if !w.is_source(v) {
            let c2 = counts[2][v].to_u64().expect("2-mer count bounded by sigma");
            f[2][v] = c2;
            l[2][v] = c2;
        }
    }
    for ell in 3..=k {
        for v in 0..n {
            if w.is_source(v) {
                continue;
            }
            let preds = w.preds(v);
            let d = preds.len();
            let u1 = preds[0];
            let ud = preds[d - 1];

            let mut fv = f[ell - 1][u1] as i64;
            if lcs.ilcs_at_least_unchecked(ell - 2, u1) {
                for j in 1..d {
                    if !lcs.share_unchecked(ell - 2, u1, preds[j]) {
                        break;
                    }
                    let shared = lcs.share_unchecked(ell - 1, preds[j - 1], preds[j]);
                    fv += f[ell - 1][preds[j]] as i64 - shared as i64;
                }
            }
            debug_assert!(fv >= 0);
            f[ell][v] = fv as u64;

            let mut lv = l[ell - 1][ud] as i64;
            if lcs.ilcs_at_least_unchecked(ell - 2, ud) {
                for j in (0..d - 1).rev() {
                    if !lcs.share_unchecked(ell - 2, preds[j], ud) {
                        break;
                    }
                    let shared = lcs.share_unchecked(ell - 1, preds[j], preds[j + 1]);
                    lv += l[ell - 1][preds[j]] as i64 - shared as i64;
                }
            }
            debug_assert!(lv >= 0);
            l[ell][v] = lv as u64;
        }
    }
    (f, l)
}

struct ScanCtx<'a> {
    w: &'a WheelerGraph,
    lcs: &'a LcsData,
    counts: &'a [Vec<BigUint>],
    intervals: &'a IntervalTables,
    next: &'a NextPointers,
    f: &'a [Vec<u64>],
    l: &'a [Vec<u64>],
    with_strings: bool,
}

/// The length-`len` suffix of inf(v) (or sup(v) for `take_max`), walked
/// along the extremal in-neighbor chain. Callers guarantee the string is
/// long enough.
fn walk_string(w: &WheelerGraph, v: usize, len: usize, take_max: bool) -> Kmer {
    let mut syms = Vec::with_capacity(len);
    let mut cur = v;
    for _ in 0..len {
        let c = w.lambda(cur).expect("extremal string long enough");
        syms.push(c);
        let preds = w.preds(cur);
        cur = if take_max { *preds.last().unwrap() } else { preds[0] };
    }
    syms.reverse();
    syms
}

/// Emitted inner-class entries: a left-extension count, plus the class
/// string when requested.
type ScanOut = Vec<(u64, Option<Kmer>)>;

struct QScan<'a> {
    ctx: ScanCtx<'a>,
    memo: HashMap<(usize, usize), Rc<ScanOut>>,
}

impl<'a> QScan<'a> {
    fn new(ctx: ScanCtx<'a>) -> Self {
        QScan { ctx, memo: HashMap::new() }
    }

    fn has_inner(&self, lm2: usize, u: usize) -> bool {
        let ctx = &self.ctx;
        let mut ext = 0u32;
        if ctx.intervals.left(lm2, u).is_some() {
            ext += 1;
        }
        if !ctx.lcs.ilcs_at_least_unchecked(lm2, u) && ctx.intervals.right(lm2, u).is_some() {
            ext += 1;
        }
        ctx.counts[lm2][u] > BigUint::from(ext)
    }

    /// Last in-neighbor position of v inside `[.., wr]`, starting from
    /// `jpos`, located through one skip pointer.
    fn last_pred_in(&self, lm2: usize, v: usize, jpos: usize, wr: usize) -> usize {
        let preds = self.ctx.w.preds(v);
        let nx = self.ctx.next.next(lm2, v, jpos);
        if nx >= preds.len() {
            preds.len() - 1
        } else if preds[nx] > wr {
            nx - 1
        } else {
            nx
        }
    }

    /// base + sum over positions (jpos..=bpos] of F_{lm1} minus adjacent
    /// duplicates, visiting only positions that contribute.
    fn run_sum(&self, lm1: usize, v: usize, jpos: usize, bpos: usize, base: u64) -> u64 {
        let ctx = &self.ctx;
        let preds = ctx.w.preds(v);
        let mut total = base as i64;
        let mut p = jpos;
        loop {
            p = ctx.next.next(lm1, v, p);
            if p > bpos || p >= preds.len() {
                break;
            }
            let shared = ctx.lcs.share_unchecked(lm1, preds[p - 1], preds[p]);
            total += ctx.f[lm1][preds[p]] as i64 - shared as i64;
        }
        debug_assert!(total >= 0);
        total as u64
    }

    fn class_string(&self, u: usize, len: usize, take_max: bool, lam: Sym) -> Option<Kmer> {
        if !self.ctx.with_strings {
            return None;
        }
        let mut s = walk_string(self.ctx.w, u, len, take_max);
        s.push(lam);
        Some(s)
    }

    /// Ordered left-extension counts of the inner (ell-1)-mers of v.
    fn inner_counts(&mut self, v: usize, ell: usize) -> Rc<ScanOut> {
        if let Some(hit) = self.memo.get(&(v, ell)) {
            return hit.clone();
        }
        let out = Rc::new(self.scan(v, ell));
        self.memo.insert((v, ell), out.clone());
        out
    }

    fn scan(&mut self, v: usize, ell: usize) -> ScanOut {
        let mut out = ScanOut::new();
        // Input consistency rules out inner 1-mers, so nothing exists
        // below ell = 3.
        if ell < 3 || self.ctx.w.is_source(v) {
            return out;
        }
        let lam = self.ctx.w.lambda(v).unwrap();
        let lm1 = ell - 1;
        let lm2 = ell - 2;
        let preds: &[usize] = self.ctx.w.preds(v);
        let d = preds.len();
        let last = d - 1;

        let mut compute_left = false;
        let mut jpos = 0;
        while jpos < d {
            let uj = preds[jpos];
            if self.ctx.lcs.ilcs_at_least_unchecked(lm2, uj) {
                // Single external (lm2)-class at uj.
                let (wl, wr) = self.ctx.intervals.left(lm2, uj).expect("class defined");
                debug_assert!(wl <= uj);
                let bpos = self.last_pred_in(lm2, v, jpos, wr);
                if bpos == last && self.ctx.lcs.ilcs_at_least_unchecked(lm2, preds[last]) {
                    // This class extends to the maximal (ell-1)-suffix of v.
                    return out;
                }
                if compute_left {
                    debug_assert_eq!(self.ctx.f[lm1][uj], self.ctx.l[lm1][uj]);
                    let val = if bpos == jpos {
                        self.ctx.f[lm1][uj]
                    } else {
                        self.run_sum(lm1, v, jpos, bpos, self.ctx.f[lm1][uj])
                    };
                    out.push((val, self.class_string(uj, lm2, false, lam)));
                }
                compute_left = self.ctx.next.next(lm2, v, jpos) != bpos;
            } else {
                // uj's minimal and maximal (lm2)-classes differ (or are
                // undefined).
                if self.ctx.intervals.left(lm2, uj).is_some() && compute_left {
                    out.push((self.ctx.f[lm1][uj], self.class_string(uj, lm2, false, lam)));
                }
                if self.has_inner(lm2, uj) {
                    let sub = self.inner_counts(uj, lm1);
                    for (val, cls) in sub.iter() {
                        let cls = cls.as_ref().map(|c| {
                            let mut s = c.clone();
                            s.push(lam);
                            s
                        });
                        out.push((*val, cls));
                    }
                }
                match self.ctx.intervals.right(lm2, uj) {
                    None => {
                        compute_left = true;
                    }
                    Some((_, wr)) => {
                        let bpos = self.last_pred_in(lm2, v, jpos, wr);
                        if bpos == jpos {
                            if jpos == last {
                                // Maximal class of the last in-neighbor:
                                // extends to the maximal suffix of v.
                                return out;
                            }
                            out.push((
                                self.ctx.l[lm1][uj],
                                self.class_string(uj, lm2, true, lam),
                            ));
                            compute_left = true;
                        } else {
                            if bpos == last
                                && self.ctx.lcs.ilcs_at_least_unchecked(lm2, preds[last])
                            {
                                return out;
                            }
                            let val = self.run_sum(lm1, v, jpos, bpos, self.ctx.l[lm1][uj]);
                            out.push((val, self.class_string(uj, lm2, true, lam)));
                            compute_left = self.ctx.next.next(lm2, v, jpos) != bpos;
                        }
                    }
                }
            }
            jpos = self.ctx.next.next(lm2, v, jpos);
        }
        out
    }
}

/// The de Bruijn simulation state for one Wheeler graph and one k.
pub struct DbgData {
    w: WheelerGraph,
    k: usize,
    lcs: LcsData,
    /// counts[l][v] = distinct l-mers into v, l = 0..=k.
    counts: Vec<Vec<BigUint>>,
    /// cum[l][v][p]: duplicate-aware prefix sums of counts over the sorted
    /// in-neighbors of v.
    cum: Vec<Vec<Vec<BigUint>>>,
    intervals: IntervalTables,
    next: NextPointers,
    f: Vec<Vec<u64>>,
    l: Vec<Vec<u64>>,
    /// kar[v]: left-extension counts of v's inner (k-1)-mers, colex order.
    kar: Vec<Vec<u64>>,
    /// Cumulative sums of kar[v].
    kar_pref: Vec<Vec<u64>>,
    /// Per label: prefix counts of vertices with an out-edge on that label.
    out_label_pref: Vec<Vec<u32>>,
}

impl DbgData {
    pub fn build(w: WheelerGraph, k: usize) -> Result<DbgData, DbgError> {
        if k < 2 {
            return Err(DbgError::KTooSmall(k));
        }
        let n = w.n();
        let lcs = compute_levels(&w, k);
        let counts = count_levels(&w, &lcs, k);

        let mut cum: Vec<Vec<Vec<BigUint>>> = Vec::with_capacity(k + 1);
        for (ell, row) in counts.iter().enumerate() {
            let per_vertex: Vec<Vec<BigUint>> = (0..n)
                .map(|v| {
                    let preds = w.preds(v);
                    let mut acc: Vec<BigUint> = Vec::with_capacity(preds.len());
                    for (p, &u) in preds.iter().enumerate() {
                        let mut val = row[u].clone();
                        if p > 0 {
                            val += &acc[p - 1];
                            if lcs.share_unchecked(ell, preds[p - 1], u) {
                                val -= BigUint::one();
                            }
                        }
                        acc.push(val);
                    }
                    acc
                })
                .collect();
            cum.push(per_vertex);
        }

        let intervals = compute_intervals(&w, &lcs, k);
        let next = compute_next_pointers(&w, &lcs, &counts, k);
        let (f, l) = compute_fl(&w, &lcs, &counts, k);

        let mut scan = QScan::new(ScanCtx {
            w: &w,
            lcs: &lcs,
            counts: &counts,
            intervals: &intervals,
            next: &next,
            f: &f,
            l: &l,
            with_strings: false,
        });
        let mut kar: Vec<Vec<u64>> = vec![Vec::new(); n];
        for v in 0..n {
            if !w.is_sink(v) && !w.is_source(v) {
                kar[v] = scan.inner_counts(v, k).iter().map(|&(val, _)| val).collect();
            }
        }
        drop(scan);
        let kar_pref: Vec<Vec<u64>> = kar
            .iter()
            .map(|ks| {
                let mut acc = 0u64;
                ks.iter()
                    .map(|&x| {
                        acc += x;
                        acc
                    })
                    .collect()
            })
            .collect();

        let sigma = w.sigma();
        let mut out_label_pref = vec![vec![0u32; n + 1]; sigma];
        for v in 0..n {
            for c in 0..sigma {
                let has = w.succs(v).iter().any(|&(s, _)| s as usize == c);
                out_label_pref[c][v + 1] = out_label_pref[c][v] + u32::from(has);
            }
        }

        Ok(DbgData {
            w,
            k,
            lcs,
            counts,
            cum,
            intervals,
            next,
            f,
            l,
            kar,
            kar_pref,
            out_label_pref,
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn wheeler(&self) -> &WheelerGraph {
        &self.w
    }

    pub fn lcs(&self) -> &LcsData {
        &self.lcs
    }

    pub fn counts(&self) -> &[Vec<BigUint>] {
        &self.counts
    }

    pub fn intervals(&self) -> &IntervalTables {
        &self.intervals
    }

    pub fn next_pointers(&self) -> &NextPointers {
        &self.next
    }

    pub fn f_row(&self, ell: usize) -> &[u64] {
        &self.f[ell]
    }

    pub fn l_row(&self, ell: usize) -> &[u64] {
        &self.l[ell]
    }

    pub fn k_array(&self, v: usize) -> &[u64] {
        &self.kar[v]
    }

    /// One forward-search step at prefix length `level`: given the arrival
    /// interval [lo, hi] of a (level-1)-mer and its rank at `lo`, the
    /// interval and rank of its extension by `c`.
    fn extend_step(
        &self,
        level: usize,
        lo: usize,
        hi: usize,
        rank_at_lo: &BigUint,
        c: Sym,
    ) -> Option<(usize, usize, BigUint)> {
        if c as usize >= self.w.sigma() {
            return None;
        }
        let (tlo, thi, s) = self.w.forward_step(lo, hi, c)?;
        let j = if tlo != thi {
            // A shared mer is the largest one at its interval's first
            // vertex.
            self.counts[level][tlo].clone()
        } else {
            // Beyond the interval's first vertex the old mer is minimal.
            let j_at_s = if s == lo { rank_at_lo.clone() } else { BigUint::one() };
            let preds = self.w.preds(tlo);
            let tpos = preds.binary_search(&s).expect("first labeled source feeds tlo");
            if tpos == 0 {
                j_at_s
            } else {
                let mut j = self.cum[level - 1][tlo][tpos - 1].clone() + j_at_s;
                if self.lcs.share_unchecked(level - 1, preds[tpos - 1], preds[tpos]) {
                    j -= BigUint::one();
                }
                j
            }
        };
        Some((tlo, thi, j))
    }

    /// Handle of a k-mer, or `None` when no walk spells it. O(k log m).
    pub fn handle_of(&self, kmer: &[Sym]) -> Option<DbgHandle> {
        assert_eq!(kmer.len(), self.k);
        let mut lo = 0;
        let mut hi = self.w.n() - 1;
        let mut j = BigUint::one();
        for (i, &c) in kmer.iter().enumerate() {
            let (nlo, nhi, nj) = self.extend_step(i + 1, lo, hi, &j, c)?;
            lo = nlo;
            hi = nhi;
            j = nj;
        }
        Some(DbgHandle { u: lo, v: hi, j })
    }

    /// Distinct labels on out-edges of the handle's arrival interval,
    /// sorted. O(sigma).
    pub fn outgoing_labels(&self, h: &DbgHandle) -> Vec<Sym> {
        (0..self.w.sigma() as Sym)
            .filter(|&c| {
                let pref = &self.out_label_pref[c as usize];
                pref[h.v + 1] > pref[h.u]
            })
            .collect()
    }

    /// Handle of `alpha·c` given the handle of `b·alpha`: left-contract to
    /// `alpha`'s interval and rank, then extend by `c`. O(log m).
    pub fn forward(&self, h: &DbgHandle, c: Sym) -> Option<DbgHandle> {
        let k = self.k;
        let (clo, chi, crank) = if h.u != h.v {
            // The k-mer is shared, hence maximal at h.u; its suffix is the
            // maximal (k-1)-suffix of h.u.
            let (wl, wr) = self
                .intervals
                .right(k - 1, h.u)
                .expect("shared k-mer implies a maximal (k-1)-suffix");
            let rank = if wl == h.u && self.lcs.ilcs_at_least_unchecked(k - 1, h.u) {
                // Single class: also minimal.
                if self.counts[k - 1][wl] == BigUint::one() {
                    BigUint::one()
                } else {
                    self.counts[k - 1][wl].clone()
                }
            } else if wl == h.u {
                self.counts[k - 1][h.u].clone()
            } else {
                self.counts[k - 1][wl].clone()
            };
            (wl, wr, rank)
        } else {
            let u = h.u;
            let fk = BigUint::from(self.f[k][u]);
            let cku = &self.counts[k][u];
            let left = self.intervals.left(k - 1, u);
            let right = self.intervals.right(k - 1, u);
            if let Some((wl, wr)) = left.filter(|_| !h.j.is_zero() && h.j <= fk) {
                // Minimal (k-1)-suffix class.
                let rank = if wl == u { BigUint::one() } else { self.counts[k - 1][wl].clone() };
                (wl, wr, rank)
            } else if let Some((wl, wr)) = right.filter(|_| {
                !self.lcs.ilcs_at_least_unchecked(k - 1, u)
                    && h.j > cku - BigUint::from(self.l[k][u])
            }) {
                // Maximal (k-1)-suffix class; u heads its own right
                // interval here.
                debug_assert_eq!(wl, u);
                (wl, wr, self.counts[k - 1][u].clone())
            } else {
                // Inner (k-1)-mer: reaches u only.
                if self.w.is_sink(u) {
                    return None;
                }
                let inner_rank = (&h.j - &fk)
                    .to_u64()
                    .expect("inner rank fits the materialized K array");
                debug_assert!(inner_rank >= 1);
                let pref = &self.kar_pref[u];
                // Smallest group index (1-based) whose cumulative count
                // reaches inner_rank.
                let idx = pref.partition_point(|&x| x < inner_rank) + 1;
                debug_assert!(idx <= self.kar[u].len());
                let mu_defined = left.is_some();
                let rank = BigUint::from(u64::from(mu_defined) + idx as u64);
                (u, u, rank)
            }
        };
        self.extend_step(k, clo, chi, &crank, c)
            .map(|(u, v, j)| DbgHandle { u, v, j })
    }

    /// Materializes the explicit de Bruijn graph: one node per distinct
    /// k-mer in colex order, edges by (k-1)-overlap. Boundary k-mers
    /// (whose suffix class has no left-extension) become source nodes.
    pub fn build_explicit_dbg(&self) -> ExplicitDbg {
        let n = self.w.n();
        let k = self.k;
        let sigma = self.w.sigma();

        // Re-run the inner scan carrying class strings.
        let mut scan = QScan::new(ScanCtx {
            w: &self.w,
            lcs: &self.lcs,
            counts: &self.counts,
            intervals: &self.intervals,
            next: &self.next,
            f: &self.f,
            l: &self.l,
            with_strings: true,
        });
        // Sinks are included here: their inner classes contribute no edges
        // but their k-mers still occupy colex node ranks.
        let mut inner_classes: Vec<Vec<(u64, Kmer)>> = vec![Vec::new(); n];
        for v in 0..n {
            if !self.w.is_source(v) {
                let entries = scan.inner_counts(v, k);
                if !self.w.is_sink(v) {
                    debug_assert_eq!(entries.len(), self.kar[v].len());
                }
                inner_classes[v] = entries
                    .iter()
                    .map(|(val, cls)| (*val, cls.clone().expect("strings requested")))
                    .collect();
            }
        }
        drop(scan);

        // All (k-1)-suffix classes in colex order: arrival interval in the
        // Wheeler graph, number of k-mers carrying the class, class string.
        struct Class {
            iv: (usize, usize),
            count: u64,
            string: Kmer,
        }
        let class_count = |iv: (usize, usize), first: u64| -> u64 {
            let mut total = first as i64;
            for v in iv.0 + 1..=iv.1 {
                total += self.f[k][v] as i64;
            }
            for v in iv.0..iv.1 {
                total -= i64::from(self.lcs.share_adjacent(k, v));
            }
            debug_assert!(total >= 0);
            total as u64
        };
        let mut classes: Vec<Class> = Vec::new();
        for v in 0..n {
            if self.w.is_source(v) {
                continue;
            }
            if let Some((wl, wr)) = self.intervals.left(k - 1, v) {
                if wl == v {
                    classes.push(Class {
                        iv: (wl, wr),
                        count: class_count((wl, wr), self.f[k][v]),
                        string: walk_string(&self.w, v, k - 1, false),
                    });
                }
            }
            for (val, cls) in &inner_classes[v] {
                classes.push(Class { iv: (v, v), count: *val, string: cls.clone() });
            }
            if !self.lcs.ilcs_at_least_unchecked(k - 1, v) {
                if let Some((wl, wr)) = self.intervals.right(k - 1, v) {
                    debug_assert_eq!(wl, v);
                    classes.push(Class {
                        iv: (wl, wr),
                        count: class_count((wl, wr), self.l[k][v]),
                        string: walk_string(&self.w, v, k - 1, true),
                    });
                }
            }
        }

        // Node ranges per class, then per-label destination cursors.
        let total_nodes: u64 = classes.iter().map(|c| c.count).sum();
        let total_nodes = usize::try_from(total_nodes).expect("explicit graph fits memory");
        let mut ranges = Vec::with_capacity(classes.len());
        let mut cursor = 0usize;
        for c in &classes {
            ranges.push(cursor..cursor + c.count as usize);
            cursor += c.count as usize;
        }
        debug_assert_eq!(cursor, total_nodes);

        let mut dst = vec![0usize; sigma];
        {
            let mut acc = BigUint::zero();
            for c in 0..sigma {
                dst[c] = acc.to_usize().expect("explicit graph fits memory");
                for v in 0..n {
                    if self.w.lambda(v) == Some(c as Sym) {
                        acc += &self.counts[k][v];
                        if v > 0
                            && self.w.lambda(v - 1) == Some(c as Sym)
                            && self.lcs.share_adjacent(k, v - 1)
                        {
                            acc -= BigUint::one();
                        }
                    }
                }
            }
            debug_assert_eq!(acc.to_usize(), Some(total_nodes));
        }

        let mut nodes: Vec<Option<Kmer>> = vec![None; total_nodes];
        let mut edges: Vec<(usize, usize, Sym)> = Vec::new();
        for (class, range) in classes.iter().zip(&ranges) {
            let (a, b) = class.iv;
            for c in 0..sigma {
                let pref = &self.out_label_pref[c];
                if pref[b + 1] == pref[a] {
                    continue;
                }
                let node = dst[c];
                dst[c] += 1;
                let mut kmer = class.string.clone();
                kmer.push(c as Sym);
                debug_assert!(nodes[node].is_none());
                nodes[node] = Some(kmer);
                for v in range.clone() {
                    edges.push((v, node, c as Sym));
                }
            }
        }
        let nodes: Vec<Kmer> = nodes
            .into_iter()
            .map(|x| x.expect("every node is the extension of exactly one class"))
            .collect();
        debug_assert!(nodes.windows(2).all(|w| {
            crate::graph::colex_cmp(&w[0], &w[1]) == std::cmp::Ordering::Less
        }));
        let mut dbg = ExplicitDbg { k, nodes, edges };
        dbg.canonicalize();
        dbg
    }

    /// Text export: header `DBG k n m`, then the k-mers in colex order,
    /// then one `i j c` line per edge (1-based node indices).
    pub fn export_text(&self) -> String {
        let dbg = self.build_explicit_dbg();
        let mut out = format!("DBG {} {} {}\n", dbg.k, dbg.nodes.len(), dbg.edges.len());
        for node in &dbg.nodes {
            out.push_str(&self.w.graph().render(node));
            out.push('\n');
        }
        for &(i, j, c) in &dbg.edges {
            out.push_str(&format!("{} {} {}\n", i + 1, j + 1, self.w.alphabet().display(c)));
        }
        out
    }
}
