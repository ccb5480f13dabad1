//! Seeded test-instance generation: deterministic Wheeler graphs built
//! constructively (then validated), de Bruijn graphs of random circular
//! strings, and random DNF formulas.

use rand::Rng;

use crate::graph::{
    colex_cmp, validate_wheeler, Alphabet, Edge, Kmer, LabeledGraph, Sym, WheelerGraph,
};
use crate::oracle::DnfFormula;

/// Configuration for the constructive Wheeler-graph sampler.
#[derive(Debug, Clone, Copy)]
pub struct DwgConfig {
    pub max_n: usize,
    pub max_sigma: usize,
    /// Restrict in-neighbors to lower-numbered vertices, yielding a DAG.
    pub acyclic: bool,
}

impl Default for DwgConfig {
    fn default() -> Self {
        DwgConfig { max_n: 12, max_sigma: 4, acyclic: false }
    }
}

fn pick_increasing<R: Rng>(rng: &mut R, lo: usize, hi: usize, count: usize) -> Vec<usize> {
    // count distinct values from [lo, hi], sorted.
    debug_assert!(hi + 1 - lo >= count && count > 0);
    let mut vals = Vec::with_capacity(count);
    let mut cursor = lo;
    for remaining in (1..=count).rev() {
        // Leave room for the picks still to come.
        let max_here = hi + 1 - remaining;
        let v = rng.gen_range(cursor..=max_here);
        vals.push(v);
        cursor = v + 1;
    }
    vals
}

/// Samples a random deterministic Wheeler graph.
///
/// Construction: sources occupy a prefix, non-sources carry non-decreasing
/// incoming labels (one contiguous run per label), and within each run the
/// in-neighbor blocks of consecutive targets are strictly separated. Every
/// instance is passed through the validator; acceptance is asserted.
pub fn random_dwg<R: Rng>(rng: &mut R, cfg: &DwgConfig) -> WheelerGraph {
    let n = rng.gen_range(2..=cfg.max_n.max(2));
    let sigma = rng.gen_range(1..=cfg.max_sigma.max(1));
    let n_src = if cfg.acyclic {
        rng.gen_range(1..n)
    } else {
        rng.gen_range(0..n)
    };

    // Non-decreasing label assignment for non-sources.
    let mut labels: Vec<u8> = (n_src..n).map(|_| b'a' + rng.gen_range(0..sigma) as u8).collect();
    labels.sort_unstable();

    let mut raw: Vec<(usize, usize, u8)> = Vec::new();
    let mut run_start = 0;
    while run_start < labels.len() {
        let label = labels[run_start];
        let mut run_end = run_start;
        while run_end + 1 < labels.len() && labels[run_end + 1] == label {
            run_end += 1;
        }
        let targets: Vec<usize> = (run_start..=run_end).map(|i| n_src + i).collect();
        let mut cursor = 0usize;
        for (idx, &t) in targets.iter().enumerate() {
            let remaining = targets.len() - idx - 1;
            let hi = if cfg.acyclic { t - 1 } else { n - 1 - remaining };
            debug_assert!(cursor <= hi);
            let room = hi + 1 - cursor;
            let want = rng.gen_range(1..=3usize.min(room));
            let block = pick_increasing(rng, cursor, hi, want);
            cursor = block.last().unwrap() + 1;
            for &p in &block {
                raw.push((p, t, label));
            }
        }
        run_start = run_end + 1;
    }

    let alphabet = Alphabet::from_chars(raw.iter().map(|&(_, _, c)| c));
    let edges = raw
        .into_iter()
        .map(|(u, v, c)| Edge { from: u, to: v, sym: alphabet.code(c).unwrap() })
        .collect();
    let (g, _) = LabeledGraph::new(n, alphabet, edges).expect("generator produced a valid graph");
    validate_wheeler(g).expect("constructive sampler must produce Wheeler graphs")
}

/// The de Bruijn graph of order `t` of a random circular string: nodes are
/// the distinct t-mers in colex order, edges follow the (t-1)-overlap rule.
/// Circularity leaves no sources, so the colex numbering is always a valid
/// Wheeler order.
pub fn random_string_dbg<R: Rng>(
    rng: &mut R,
    sigma: usize,
    t: usize,
    len: usize,
) -> WheelerGraph {
    debug_assert!(t >= 1 && len >= t);
    let s: Vec<u8> = (0..len).map(|_| b'a' + rng.gen_range(0..sigma) as u8).collect();
    let mut tmers: Vec<Vec<u8>> = (0..len)
        .map(|i| (0..t).map(|j| s[(i + j) % len]).collect())
        .collect();
    tmers.sort_unstable_by(|a, b| {
        let ka: Kmer = a.iter().map(|&c| c as Sym).collect();
        let kb: Kmer = b.iter().map(|&c| c as Sym).collect();
        colex_cmp(&ka, &kb)
    });
    tmers.dedup();

    let alphabet = Alphabet::from_chars(s.iter().copied());
    let n = tmers.len();
    let mut edges = Vec::new();
    for (i, a) in tmers.iter().enumerate() {
        for (j, b) in tmers.iter().enumerate() {
            if a[1..] == b[..t - 1] {
                edges.push(Edge { from: i, to: j, sym: alphabet.code(b[t - 1]).unwrap() });
            }
        }
    }
    let (g, _) = LabeledGraph::new(n, alphabet, edges).unwrap();
    validate_wheeler(g).expect("circular-string de Bruijn graphs are Wheeler in colex order")
}

/// A random DNF formula with non-empty, non-contradictory clauses.
pub fn random_dnf<R: Rng>(rng: &mut R, max_vars: usize, max_clauses: usize) -> DnfFormula {
    let nvars = rng.gen_range(1..=max_vars.max(1));
    let nclauses = rng.gen_range(0..=max_clauses);
    let mut clauses = Vec::with_capacity(nclauses);
    for _ in 0..nclauses {
        let mut clause = Vec::new();
        while clause.is_empty() {
            for v in 1..=nvars as i32 {
                if rng.gen_bool(0.5) {
                    clause.push(if rng.gen_bool(0.5) { v } else { -v });
                }
            }
        }
        clauses.push(clause);
    }
    DnfFormula::new(nvars, clauses).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn dwg_sampler_yields_valid_graphs() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for i in 0..200 {
            let acyclic = i % 2 == 0;
            let w = random_dwg(&mut rng, &DwgConfig { max_n: 12, max_sigma: 4, acyclic });
            assert!(w.n() >= 2);
            if acyclic {
                assert!(crate::graph::is_acyclic(w.graph()));
            }
        }
    }

    #[test]
    fn string_dbg_sampler_yields_valid_graphs() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100 {
            let t = rng.gen_range(1..=4);
            let len = rng.gen_range(t..=10);
            let w = {
                let sigma = rng.gen_range(1..=4);
                random_string_dbg(&mut rng, sigma, t, len)
            };
            assert!((0..w.n()).all(|v| !w.is_source(v)), "circular: no sources");
        }
    }

    #[test]
    fn permuted_numbering_usually_rejected_never_lies() {
        use crate::oracle::{enumerate_kmers, DEFAULT_ORACLE_CAP};
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..60 {
            let w = random_dwg(&mut rng, &DwgConfig::default());
            let g = w.graph();
            let n = g.n();
            // Random permutation of the vertex numbering.
            let mut perm: Vec<usize> = (0..n).collect();
            for i in (1..n).rev() {
                perm.swap(i, rng.gen_range(0..=i));
            }
            let edges: Vec<Edge> = g
                .edges()
                .iter()
                .map(|e| Edge { from: perm[e.from], to: perm[e.to], sym: e.sym })
                .collect();
            let (pg, _) = LabeledGraph::new(n, g.alphabet().clone(), edges).unwrap();
            if let Ok(pw) = validate_wheeler(pg) {
                // If accepted, the renumbered graph is the same graph: its
                // k-mer sets must agree.
                for k in 0..=4 {
                    let a = enumerate_kmers(g, k, DEFAULT_ORACLE_CAP).unwrap().set;
                    let b = enumerate_kmers(pw.graph(), k, DEFAULT_ORACLE_CAP).unwrap().set;
                    assert_eq!(a, b);
                }
            }
        }
    }
}
