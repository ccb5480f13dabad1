//! Brute-force ground truth: explicit k-mer enumeration, capped
//! infimum/supremum strings, explicit de Bruijn graph, and DNF model
//! counting by exhaustive assignment.
//!
//! Everything here is meant for small instances; the enumeration guards
//! against blowup with an explicit cap instead of truncating silently.

use std::collections::{HashMap, HashSet};

use num_bigint::BigUint;
use thiserror::Error;

use crate::graph::{colex_cmp, Kmer, LabeledGraph, Sym, WheelerGraph};

/// Default bound on the number of stored k-mer entries during enumeration.
pub const DEFAULT_ORACLE_CAP: usize = 1_000_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("oracle too large: {entries} k-mer entries exceed cap {cap}")]
    CapExceeded { entries: usize, cap: usize },
    #[error("brute-force model counting limited to 24 variables, got {0}")]
    TooManyVariables(usize),
    #[error("k must be at least 1 for de Bruijn graph construction")]
    InvalidK,
}

/// A colex-sorted set of distinct k-mers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KmerSet {
    pub k: usize,
    pub members: Vec<Kmer>,
}

impl KmerSet {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, kmer: &[Sym]) -> bool {
        self.members
            .binary_search_by(|m| colex_cmp(m, kmer))
            .is_ok()
    }
}

/// Result of explicit enumeration: the per-vertex sets plus their union.
#[derive(Debug, Clone)]
pub struct KmerEnumeration {
    pub k: usize,
    /// Colex-sorted k-mers arriving at each vertex.
    pub per_vertex: Vec<Vec<Kmer>>,
    pub set: KmerSet,
}

fn sorted(mut v: Vec<Kmer>) -> Vec<Kmer> {
    v.sort_unstable_by(|a, b| colex_cmp(a, b));
    v
}

/// Enumerates, for every vertex, the set of labels on incoming walks of
/// length exactly `k`, level by level. Walks of length 0 contribute the
/// empty string to every vertex.
pub fn enumerate_kmers(
    g: &LabeledGraph,
    k: usize,
    cap: usize,
) -> Result<KmerEnumeration, OracleError> {
    let n = g.n();
    let mut cur: Vec<HashSet<Kmer>> = vec![HashSet::new(); n];
    for set in &mut cur {
        set.insert(Vec::new());
    }
    for _ in 0..k {
        let mut next: Vec<HashSet<Kmer>> = vec![HashSet::new(); n];
        let mut entries = 0usize;
        for e in g.edges() {
            for prefix in &cur[e.from] {
                let mut kmer = prefix.clone();
                kmer.push(e.sym);
                if next[e.to].insert(kmer) {
                    entries += 1;
                    if entries > cap {
                        return Err(OracleError::CapExceeded { entries, cap });
                    }
                }
            }
        }
        cur = next;
    }
    let mut union: HashSet<Kmer> = HashSet::new();
    for set in &cur {
        union.extend(set.iter().cloned());
    }
    let per_vertex = cur
        .into_iter()
        .map(|s| sorted(s.into_iter().collect()))
        .collect();
    let members = sorted(union.into_iter().collect());
    Ok(KmerEnumeration { k, per_vertex, set: KmerSet { k, members } })
}

/// Number of distinct k-mers, by enumeration.
pub fn count_kmers_brute(g: &LabeledGraph, k: usize, cap: usize) -> Result<BigUint, OracleError> {
    Ok(BigUint::from(enumerate_kmers(g, k, cap)?.set.len()))
}

/// Explicit node-centric de Bruijn graph of a k-mer set: nodes are the
/// distinct k-mers in colex order, and for k >= 2 there is an edge
/// `(i, j, c)` exactly when `nodes[i][1..] == nodes[j][..k-1]` and `c` is the
/// last symbol of `nodes[j]`. For k = 1 the overlap is empty and no edges
/// are produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExplicitDbg {
    pub k: usize,
    pub nodes: Vec<Kmer>,
    pub edges: Vec<(usize, usize, Sym)>,
}

impl ExplicitDbg {
    /// Edges sorted by `(from, to, sym)`; nodes are already canonical.
    pub fn canonicalize(&mut self) {
        self.edges.sort_unstable();
        self.edges.dedup();
    }
}

/// Builds the explicit de Bruijn graph of the k-mers of `g` by enumeration.
pub fn build_dbg_brute(g: &LabeledGraph, k: usize, cap: usize) -> Result<ExplicitDbg, OracleError> {
    if k == 0 {
        return Err(OracleError::InvalidK);
    }
    let nodes = enumerate_kmers(g, k, cap)?.set.members;
    let mut edges = Vec::new();
    if k >= 2 {
        let mut by_prefix: HashMap<&[Sym], Vec<usize>> = HashMap::new();
        for (j, node) in nodes.iter().enumerate() {
            by_prefix.entry(&node[..k - 1]).or_default().push(j);
        }
        for (i, node) in nodes.iter().enumerate() {
            if let Some(js) = by_prefix.get(&node[1..]) {
                for &j in js {
                    edges.push((i, j, *nodes[j].last().unwrap()));
                }
            }
        }
    }
    let mut dbg = ExplicitDbg { k, nodes, edges };
    dbg.canonicalize();
    Ok(dbg)
}

/// A suffix of an infimum or supremum string, capped at a fixed length.
/// `finite` means the string is complete (the extremal chain reached a
/// source before the cap); otherwise `syms` is the length-cap suffix of a
/// longer, possibly infinite, string.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CappedStr {
    pub syms: Kmer,
    pub finite: bool,
}

impl CappedStr {
    /// Whether the underlying string has length at least `len`.
    pub fn len_at_least(&self, len: usize) -> bool {
        self.syms.len() >= len
    }

    /// The length-`len` suffix, when the string is that long.
    pub fn suffix(&self, len: usize) -> Option<&[Sym]> {
        if self.len_at_least(len) {
            Some(&self.syms[self.syms.len() - len..])
        } else {
            None
        }
    }
}

fn extremal_string(w: &WheelerGraph, v: usize, cap: usize, take_max: bool) -> CappedStr {
    let mut syms = Vec::new();
    let mut cur = v;
    for _ in 0..cap {
        match w.lambda(cur) {
            None => return CappedStr { syms: rev(syms), finite: true },
            Some(c) => {
                syms.push(c);
                let preds = w.preds(cur);
                cur = if take_max { *preds.last().unwrap() } else { preds[0] };
            }
        }
    }
    // One more probe decides whether exactly `cap` symbols is the whole
    // string or just its suffix.
    let finite = w.lambda(cur).is_none();
    CappedStr { syms: rev(syms), finite }
}

fn rev(mut v: Kmer) -> Kmer {
    v.reverse();
    v
}

/// The infimum and supremum strings of `v`, capped at `cap` symbols: the
/// walks obtained by repeatedly following the minimal (resp. maximal)
/// in-neighbor.
pub fn inf_sup_capped(w: &WheelerGraph, v: usize, cap: usize) -> (CappedStr, CappedStr) {
    (
        extremal_string(w, v, cap, false),
        extremal_string(w, v, cap, true),
    )
}

/// Length of the longest common suffix of two capped strings, itself capped
/// by the shorter representation.
pub fn capped_lcs(a: &CappedStr, b: &CappedStr) -> usize {
    let mut len = 0;
    let mut ia = a.syms.iter().rev();
    let mut ib = b.syms.iter().rev();
    loop {
        match (ia.next(), ib.next()) {
            (Some(x), Some(y)) if x == y => len += 1,
            _ => return len,
        }
    }
}

/// Colex `a <= b` on capped strings. When one representation is a suffix of
/// the other, a finite (complete) shorter string precedes; two equal capped
/// representations compare as equal.
pub fn capped_colex_le(a: &CappedStr, b: &CappedStr) -> bool {
    let mut ia = a.syms.iter().rev();
    let mut ib = b.syms.iter().rev();
    loop {
        match (ia.next(), ib.next()) {
            (Some(x), Some(y)) => {
                if x < y {
                    return true;
                }
                if x > y {
                    return false;
                }
            }
            (None, Some(_)) => return a.finite,
            (Some(_), None) => return !b.finite,
            (None, None) => return true,
        }
    }
}

/// A formula in disjunctive normal form: a disjunction of conjunctive
/// clauses given as signed 1-based variable indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DnfFormula {
    pub nvars: usize,
    pub clauses: Vec<Vec<i32>>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DnfError {
    #[error("line {line}: {msg}")]
    Malformed { line: usize, msg: String },
    #[error("clause {clause} contains both a literal and its negation")]
    Contradictory { clause: usize },
    #[error("clause {clause}: variable index {var} out of range 1..={nvars}")]
    VarOutOfRange { clause: usize, var: i32, nvars: usize },
}

impl DnfFormula {
    /// Validates indices, rejects contradictory clauses, and deduplicates
    /// literals within each clause.
    pub fn new(nvars: usize, clauses: Vec<Vec<i32>>) -> Result<Self, DnfError> {
        let mut normalized = Vec::with_capacity(clauses.len());
        for (ci, clause) in clauses.into_iter().enumerate() {
            let mut lits = clause;
            lits.sort_unstable_by_key(|l| (l.abs(), *l));
            lits.dedup();
            for &l in &lits {
                if l == 0 || l.unsigned_abs() as usize > nvars {
                    return Err(DnfError::VarOutOfRange { clause: ci + 1, var: l, nvars });
                }
            }
            if lits.windows(2).any(|w| w[0] == -w[1]) {
                return Err(DnfError::Contradictory { clause: ci + 1 });
            }
            normalized.push(lits);
        }
        Ok(DnfFormula { nvars, clauses: normalized })
    }
}

/// Parses the DNF text format: `DNF 1`, then `nvars nclauses`, then one
/// clause per line as signed integers. `#`-prefixed lines are comments.
pub fn parse_dnf(text: &str) -> Result<DnfFormula, DnfError> {
    let mut content = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (no, header) = content.next().ok_or(DnfError::Malformed {
        line: 1,
        msg: "missing DNF header".into(),
    })?;
    if header != "DNF 1" {
        return Err(DnfError::Malformed {
            line: no,
            msg: format!("expected 'DNF 1' header, got '{header}'"),
        });
    }
    let (no, counts) = content.next().ok_or(DnfError::Malformed {
        line: no,
        msg: "missing 'nvars nclauses' line".into(),
    })?;
    let mut it = counts.split_whitespace();
    let nvars: usize = it
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or(DnfError::Malformed { line: no, msg: "bad variable count".into() })?;
    let nclauses: usize = it
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or(DnfError::Malformed { line: no, msg: "bad clause count".into() })?;
    let mut clauses = Vec::with_capacity(nclauses);
    for _ in 0..nclauses {
        let (no, line) = content.next().ok_or(DnfError::Malformed {
            line: no,
            msg: format!("expected {nclauses} clause lines"),
        })?;
        let lits: Result<Vec<i32>, _> = line.split_whitespace().map(|t| t.parse()).collect();
        let lits = lits.map_err(|_| DnfError::Malformed {
            line: no,
            msg: "bad literal".into(),
        })?;
        clauses.push(lits);
    }
    DnfFormula::new(nvars, clauses)
}

/// Exact model count of a DNF formula over all 2^nvars assignments.
pub fn dnf_count_sat_brute(f: &DnfFormula) -> Result<BigUint, OracleError> {
    if f.nvars > 24 {
        return Err(OracleError::TooManyVariables(f.nvars));
    }
    let mut count = 0u64;
    for assignment in 0u32..(1u32 << f.nvars) {
        let satisfied = f.clauses.iter().any(|clause| {
            clause.iter().all(|&lit| {
                let bit = (assignment >> (lit.unsigned_abs() - 1)) & 1 == 1;
                if lit > 0 {
                    bit
                } else {
                    !bit
                }
            })
        });
        if satisfied {
            count += 1;
        }
    }
    Ok(BigUint::from(count))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{parse_wgf, validate_wheeler};

    fn g1() -> LabeledGraph {
        parse_wgf("WGF 1\n2 1\n1 2 a\n").unwrap()
    }

    fn g2() -> LabeledGraph {
        parse_wgf("WGF 1\n1 1\n1 1 a\n").unwrap()
    }

    fn g3() -> LabeledGraph {
        parse_wgf("WGF 1\n2 2\n1 2 b\n2 1 a\n").unwrap()
    }

    fn strings(g: &LabeledGraph, set: &KmerSet) -> Vec<String> {
        set.members.iter().map(|m| g.render(m)).collect()
    }

    #[test]
    fn enumerate_g3_k2() {
        let g = g3();
        let e = enumerate_kmers(&g, 2, DEFAULT_ORACLE_CAP).unwrap();
        assert_eq!(strings(&g, &e.set), vec!["ba", "ab"]); // colex order
        assert_eq!(e.set.len(), 2);
    }

    #[test]
    fn enumerate_g2_k5() {
        let g = g2();
        let e = enumerate_kmers(&g, 5, DEFAULT_ORACLE_CAP).unwrap();
        assert_eq!(strings(&g, &e.set), vec!["aaaaa"]);
    }

    #[test]
    fn enumerate_k0_is_epsilon() {
        for g in [g1(), g2(), g3()] {
            let e = enumerate_kmers(&g, 0, DEFAULT_ORACLE_CAP).unwrap();
            assert_eq!(e.set.members, vec![Vec::<Sym>::new()]);
            assert_eq!(e.set.len(), 1);
        }
    }

    #[test]
    fn count_g1_k2_is_zero() {
        assert_eq!(
            count_kmers_brute(&g1(), 2, DEFAULT_ORACLE_CAP).unwrap(),
            BigUint::from(0u32)
        );
    }

    #[test]
    fn count_g3_k7_is_two() {
        assert_eq!(
            count_kmers_brute(&g3(), 7, DEFAULT_ORACLE_CAP).unwrap(),
            BigUint::from(2u32)
        );
    }

    #[test]
    fn cap_is_enforced() {
        let g = g2();
        let err = enumerate_kmers(&g, 3, 0).unwrap_err();
        assert!(matches!(err, OracleError::CapExceeded { .. }));
    }

    #[test]
    fn dbg_brute_g2_k3() {
        let g = g2();
        let dbg = build_dbg_brute(&g, 3, DEFAULT_ORACLE_CAP).unwrap();
        assert_eq!(dbg.nodes.len(), 1);
        assert_eq!(g.render(&dbg.nodes[0]), "aaa");
        assert_eq!(dbg.edges, vec![(0, 0, 0)]);
    }

    #[test]
    fn dbg_brute_g3_k2() {
        let g = g3();
        let dbg = build_dbg_brute(&g, 2, DEFAULT_ORACLE_CAP).unwrap();
        let names: Vec<String> = dbg.nodes.iter().map(|n| g.render(n)).collect();
        assert_eq!(names, vec!["ba", "ab"]);
        let a = g.alphabet().code(b'a').unwrap();
        let b = g.alphabet().code(b'b').unwrap();
        // ba -> ab labeled 'b', ab -> ba labeled 'a'.
        assert_eq!(dbg.edges, vec![(0, 1, b), (1, 0, a)]);
    }

    #[test]
    fn dbg_brute_k1_has_no_edges() {
        let g = g1();
        let dbg = build_dbg_brute(&g, 1, DEFAULT_ORACLE_CAP).unwrap();
        assert_eq!(dbg.nodes.len(), 1);
        assert_eq!(g.render(&dbg.nodes[0]), "a");
        assert!(dbg.edges.is_empty());
    }

    #[test]
    fn inf_sup_examples() {
        let w1 = validate_wheeler(g1()).unwrap();
        let (inf, sup) = inf_sup_capped(&w1, 1, 3);
        assert_eq!(w1.graph().render(&inf.syms), "a");
        assert!(inf.finite);
        assert_eq!(inf, sup);

        let w2 = validate_wheeler(g2()).unwrap();
        let (inf, sup) = inf_sup_capped(&w2, 0, 4);
        assert_eq!(w2.graph().render(&inf.syms), "aaaa");
        assert!(!inf.finite);
        assert_eq!(inf, sup);

        let w3 = validate_wheeler(g3()).unwrap();
        let (inf, sup) = inf_sup_capped(&w3, 0, 3);
        assert_eq!(w3.graph().render(&inf.syms), "aba");
        assert!(!sup.finite);
        assert_eq!(inf, sup);
    }

    fn fig1_formula() -> DnfFormula {
        DnfFormula::new(3, vec![vec![1, 3], vec![-1, 2], vec![-1, -3]]).unwrap()
    }

    #[test]
    fn dnf_brute_examples() {
        assert_eq!(
            dnf_count_sat_brute(&fig1_formula()).unwrap(),
            BigUint::from(5u32)
        );
        let empty = DnfFormula::new(3, vec![]).unwrap();
        assert_eq!(dnf_count_sat_brute(&empty).unwrap(), BigUint::from(0u32));
        let single = DnfFormula::new(3, vec![vec![1]]).unwrap();
        assert_eq!(dnf_count_sat_brute(&single).unwrap(), BigUint::from(4u32));
    }

    #[test]
    fn dnf_parse_and_validate() {
        let f = parse_dnf("DNF 1\n3 3\n1 3\n-1 2\n-1 -3\n").unwrap();
        assert_eq!(f, fig1_formula());
        assert_eq!(
            DnfFormula::new(2, vec![vec![1, -1]]).unwrap_err(),
            DnfError::Contradictory { clause: 1 }
        );
        assert_eq!(
            DnfFormula::new(2, vec![vec![3]]).unwrap_err(),
            DnfError::VarOutOfRange { clause: 1, var: 3, nvars: 2 }
        );
    }

    // Vertex order bounds the k-mers: everything into u precedes everything
    // into v for u < v, and a non-empty intersection collapses to the
    // single boundary mer max(S_u) = min(S_v).
    #[test]
    fn wheeler_order_sorts_per_vertex_sets() {
        use crate::gen::{random_dwg, DwgConfig};
        use rand::SeedableRng;
        use std::cmp::Ordering;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(71);
        for _ in 0..30 {
            let w = random_dwg(&mut rng, &DwgConfig::default());
            for k in 1..=4 {
                let e = enumerate_kmers(w.graph(), k, DEFAULT_ORACLE_CAP).unwrap();
                for u in 0..w.n() {
                    for v in u + 1..w.n() {
                        let (su, sv) = (&e.per_vertex[u], &e.per_vertex[v]);
                        if let (Some(max_u), Some(min_v)) = (su.last(), sv.first()) {
                            assert_ne!(
                                colex_cmp(max_u, min_v),
                                Ordering::Greater,
                                "u={u} v={v} k={k}"
                            );
                        }
                        let shared: Vec<&Kmer> =
                            su.iter().filter(|m| sv.iter().any(|m2| &m2 == m)).collect();
                        if !shared.is_empty() {
                            assert_eq!(shared.len(), 1);
                            assert_eq!(shared[0], su.last().unwrap());
                            assert_eq!(shared[0], sv.first().unwrap());
                        }
                    }
                }
            }
        }
    }
}
