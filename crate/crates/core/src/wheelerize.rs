//! k-mer preserving transformations of general labeled graphs and the
//! DNF-to-graph counting-hardness gadget.
//!
//! The layered unfolding plus subset construction turns any labeled graph
//! into a deterministic layered DAG whose full-depth paths spell exactly
//! the original k-mers, so counting those paths counts distinct k-mers.
//! The gadget direction encodes DNF model counting into distinct n-mer
//! counting, which is what makes the general problem intractable.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use std::collections::HashMap;

use thiserror::Error;

use crate::graph::{Alphabet, Edge, LabeledGraph, Sym};
use crate::oracle::DnfFormula;

/// Default bound on subset states per layer during determinization.
pub const DEFAULT_STATE_CAP: usize = 100_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WheelerizeError {
    #[error("determinization exceeded {cap} states on layer {layer}")]
    StateCapExceeded { layer: usize, cap: usize },
    #[error("layer count mismatch: dag has {layers} layers, expected k+1 = {expected}")]
    LayerMismatch { layers: usize, expected: usize },
    #[error("layered DAG is not deterministic at layer {layer}, state {state}")]
    NotDeterministic { layer: usize, state: usize },
    #[error("alphabet exhausted: {needed} clause labels exceed the printable pool")]
    AlphabetExhausted { needed: usize },
}

/// A DAG partitioned into layers with edges only between consecutive
/// layers.
#[derive(Debug, Clone)]
pub struct LayeredDag {
    pub alphabet: Alphabet,
    pub layer_sizes: Vec<usize>,
    /// edges[i] connects layer i to layer i+1, as (from, to, label).
    pub edges: Vec<Vec<(usize, usize, Sym)>>,
}

impl LayeredDag {
    pub fn layers(&self) -> usize {
        self.layer_sizes.len()
    }

    pub fn total_vertices(&self) -> usize {
        self.layer_sizes.iter().sum()
    }

    pub fn total_edges(&self) -> usize {
        self.edges.iter().map(|e| e.len()).sum()
    }

    /// Flattens to a labeled graph with layer-major vertex numbering.
    pub fn to_labeled_graph(&self) -> LabeledGraph {
        let mut offsets = Vec::with_capacity(self.layers());
        let mut acc = 0;
        for &s in &self.layer_sizes {
            offsets.push(acc);
            acc += s;
        }
        let mut edges = Vec::with_capacity(self.total_edges());
        for (i, layer) in self.edges.iter().enumerate() {
            for &(u, v, sym) in layer {
                edges.push(Edge { from: offsets[i] + u, to: offsets[i + 1] + v, sym });
            }
        }
        LabeledGraph::new(acc, self.alphabet.clone(), edges).unwrap().0
    }
}

/// The k-times unfolded DAG: k+1 copies of the vertex set, with every
/// original edge replicated between consecutive layers. Length-k path
/// labels are exactly the k-mers of `g`.
pub fn unfold(g: &LabeledGraph, k: usize) -> LayeredDag {
    assert!(k >= 1);
    let layer: Vec<(usize, usize, Sym)> =
        g.edges().iter().map(|e| (e.from, e.to, e.sym)).collect();
    LayeredDag {
        alphabet: g.alphabet().clone(),
        layer_sizes: vec![g.n(); k + 1],
        edges: vec![layer; k],
    }
}

/// Subset construction, layer by layer. A virtual initial state reaches
/// every layer-0 copy, so the output's single layer-0 state is the full
/// vertex set; path labels are preserved exactly.
pub fn determinize(dag: &LayeredDag, state_cap: usize) -> Result<LayeredDag, WheelerizeError> {
    let depth = dag.layers() - 1;
    let start: Vec<usize> = (0..dag.layer_sizes[0]).collect();
    let mut layer_sizes = vec![1usize];
    let mut edges: Vec<Vec<(usize, usize, Sym)>> = Vec::with_capacity(depth);
    let mut current: Vec<Vec<usize>> = vec![start];

    for i in 0..depth {
        let mut out_by_state: Vec<HashMap<Sym, Vec<usize>>> = vec![HashMap::new(); current.len()];
        for (sid, subset) in current.iter().enumerate() {
            for &(u, v, sym) in &dag.edges[i] {
                if subset.binary_search(&u).is_ok() {
                    out_by_state[sid].entry(sym).or_default().push(v);
                }
            }
        }
        let mut next_ids: HashMap<Vec<usize>, usize> = HashMap::new();
        let mut next_states: Vec<Vec<usize>> = Vec::new();
        let mut layer_edges = Vec::new();
        for (sid, outs) in out_by_state.into_iter().enumerate() {
            let mut outs: Vec<(Sym, Vec<usize>)> = outs.into_iter().collect();
            outs.sort_unstable_by_key(|(s, _)| *s);
            for (sym, mut targets) in outs {
                targets.sort_unstable();
                targets.dedup();
                let tid = *next_ids.entry(targets.clone()).or_insert_with(|| {
                    next_states.push(targets);
                    next_states.len() - 1
                });
                layer_edges.push((sid, tid, sym));
                if next_states.len() > state_cap {
                    return Err(WheelerizeError::StateCapExceeded { layer: i + 1, cap: state_cap });
                }
            }
        }
        layer_sizes.push(next_states.len());
        edges.push(layer_edges);
        current = next_states;
    }

    Ok(LayeredDag { alphabet: dag.alphabet.clone(), layer_sizes, edges })
}

/// Distinct length-k path labels of a deterministic layered DAG with k+1
/// layers: every full-depth path spells a distinct string, so a
/// topological-order path count suffices.
pub fn count_paths_layered(dag: &LayeredDag, k: usize) -> Result<BigUint, WheelerizeError> {
    if dag.layers() != k + 1 {
        return Err(WheelerizeError::LayerMismatch { layers: dag.layers(), expected: k + 1 });
    }
    for (i, layer) in dag.edges.iter().enumerate() {
        let mut seen: Vec<(usize, Sym)> = layer.iter().map(|&(u, _, s)| (u, s)).collect();
        seen.sort_unstable();
        if seen.windows(2).any(|w| w[0] == w[1]) {
            let state = seen.windows(2).find(|w| w[0] == w[1]).unwrap()[0].0;
            return Err(WheelerizeError::NotDeterministic { layer: i, state });
        }
    }
    let mut paths = vec![BigUint::one(); dag.layer_sizes[0]];
    for (i, layer) in dag.edges.iter().enumerate() {
        let mut next = vec![BigUint::zero(); dag.layer_sizes[i + 1]];
        for &(u, v, _) in layer {
            next[v] += &paths[u];
        }
        paths = next;
    }
    Ok(paths.into_iter().sum())
}

/// Counts distinct k-mers of an arbitrary labeled graph through the
/// unfold/determinize/path-count pipeline.
pub fn count_kmers_layered(
    g: &LabeledGraph,
    k: usize,
    state_cap: usize,
) -> Result<BigUint, WheelerizeError> {
    if k == 0 {
        return Ok(BigUint::one());
    }
    let det = determinize(&unfold(g, k), state_cap)?;
    count_paths_layered(&det, k)
}

/// The clause-gadget graph of a DNF formula together with the per-clause
/// branching counts that relate its distinct n-mer count to the formula's
/// model count.
#[derive(Debug, Clone)]
pub struct GadgetInfo {
    pub formula: DnfFormula,
    pub graph: LabeledGraph,
    /// Vertex index of the shared source.
    pub source: usize,
    /// d[j] = nodes with two out-edges among the first nvars-1 nodes of
    /// clause j's gadget.
    pub d: Vec<u32>,
}

/// Builds one chain gadget per clause — a forced edge per literal, both
/// edges for an absent variable — joined by a shared source whose edge
/// into clause j carries a unique label. The graph is acyclic,
/// deterministic and connected; its distinct nvars-mer count N satisfies
/// #SAT = N - sum(2^d_j).
pub fn dnf_to_graph(f: &DnfFormula) -> Result<GadgetInfo, WheelerizeError> {
    let n = f.nvars;
    let m = f.clauses.len();
    // '0' and '1' take the two smallest codes; clause labels follow, so
    // code order stays aligned with character order.
    let pool: Vec<u8> = (b'2'..=b'~').collect();
    if m > pool.len() {
        return Err(WheelerizeError::AlphabetExhausted { needed: m });
    }
    let mut chars = vec![b'0', b'1'];
    chars.extend_from_slice(&pool[..m]);
    let alphabet = Alphabet::from_chars(chars);
    let zero = alphabet.code(b'0').unwrap();
    let one = alphabet.code(b'1').unwrap();

    let total_vertices = 1 + m * (n + 1);
    let mut edges = Vec::new();
    let mut d = Vec::with_capacity(m);
    for (j, clause) in f.clauses.iter().enumerate() {
        let base = 1 + j * (n + 1);
        let mut dj = 0u32;
        for i in 1..=n {
            let from = base + i - 1;
            let to = base + i;
            let pos = clause.contains(&(i as i32));
            let neg = clause.contains(&(-(i as i32)));
            match (pos, neg) {
                (true, false) => edges.push(Edge { from, to, sym: one }),
                (false, true) => edges.push(Edge { from, to, sym: zero }),
                (false, false) => {
                    edges.push(Edge { from, to, sym: zero });
                    edges.push(Edge { from, to, sym: one });
                    if i <= n.saturating_sub(1) {
                        dj += 1;
                    }
                }
                (true, true) => unreachable!("contradictory clauses are rejected at construction"),
            }
        }
        edges.push(Edge { from: 0, to: base, sym: alphabet.code(pool[j]).unwrap() });
        d.push(dj);
    }

    let (graph, _) = LabeledGraph::new(total_vertices, alphabet, edges).unwrap();
    Ok(GadgetInfo { formula: f.clone(), graph, source: 0, d })
}

#[derive(Debug, Error)]
pub enum ReductionError {
    #[error("k-mer counter failed: {0}")]
    Counter(String),
    #[error("reduction produced a negative model count (counter bug): N={n}, correction={corr}")]
    NegativeCount { n: BigUint, corr: BigUint },
}

/// Recovers the model count of the gadget's formula from any distinct
/// k-mer counter, run at k = nvars.
pub fn sat_count_from_graph<F, E>(gi: &GadgetInfo, counter: F) -> Result<BigUint, ReductionError>
where
    F: FnOnce(&LabeledGraph, usize) -> Result<BigUint, E>,
    E: std::fmt::Display,
{
    if gi.formula.clauses.is_empty() {
        return Ok(BigUint::zero());
    }
    let n = counter(&gi.graph, gi.formula.nvars).map_err(|e| ReductionError::Counter(e.to_string()))?;
    let correction: BigUint = gi
        .d
        .iter()
        .map(|&dj| BigUint::one() << dj)
        .sum();
    if n < correction {
        return Err(ReductionError::NegativeCount { n, corr: correction });
    }
    Ok(n - correction)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::random_dnf;
    use crate::graph::{check_deterministic, is_acyclic, parse_wgf};
    use crate::oracle::{
        count_kmers_brute, dnf_count_sat_brute, enumerate_kmers, DnfFormula, DEFAULT_ORACLE_CAP,
    };
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn g2() -> LabeledGraph {
        parse_wgf("WGF 1\n1 1\n1 1 a\n").unwrap()
    }

    fn g3() -> LabeledGraph {
        parse_wgf("WGF 1\n2 2\n1 2 b\n2 1 a\n").unwrap()
    }

    fn fig1() -> DnfFormula {
        DnfFormula::new(3, vec![vec![1, 3], vec![-1, 2], vec![-1, -3]]).unwrap()
    }

    #[test]
    fn unfold_shapes() {
        let dag = unfold(&g2(), 3);
        assert_eq!(dag.layers(), 4);
        assert_eq!(dag.total_edges(), 3);

        let dag = unfold(&g3(), 2);
        assert_eq!(dag.layers(), 3);
        assert_eq!(dag.total_edges(), 4);
    }

    #[test]
    fn unfold_preserves_kmers() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let g = random_graph(&mut rng, 6, 3);
            for k in 1..=4 {
                let flat = unfold(&g, k).to_labeled_graph();
                let a = enumerate_kmers(&g, k, DEFAULT_ORACLE_CAP).unwrap().set;
                let b = enumerate_kmers(&flat, k, DEFAULT_ORACLE_CAP).unwrap().set;
                assert_eq!(a, b, "k={k}");
            }
        }
    }

    // Arbitrary (generally non-Wheeler, nondeterministic) labeled graph.
    fn random_graph<R: Rng>(rng: &mut R, max_n: usize, sigma: usize) -> LabeledGraph {
        let n = rng.gen_range(1..=max_n);
        let m = rng.gen_range(0..=2 * n);
        let chars: Vec<u8> = (0..sigma as u8).map(|i| b'a' + i).collect();
        let alphabet = Alphabet::from_chars(chars.clone());
        let edges = (0..m)
            .map(|_| Edge {
                from: rng.gen_range(0..n),
                to: rng.gen_range(0..n),
                sym: rng.gen_range(0..sigma) as Sym,
            })
            .collect();
        LabeledGraph::new(n, alphabet, edges).unwrap().0
    }

    #[test]
    fn determinize_merges_equal_labels() {
        // Two layer-0 states with the same outgoing label: targets merge.
        let alphabet = Alphabet::from_chars([b'a']);
        let dag = LayeredDag {
            alphabet,
            layer_sizes: vec![2, 2],
            edges: vec![vec![(0, 0, 0), (1, 1, 0)]],
        };
        let det = determinize(&dag, DEFAULT_STATE_CAP).unwrap();
        assert_eq!(det.layer_sizes, vec![1, 1]);
        assert_eq!(det.edges[0].len(), 1);
    }

    #[test]
    fn determinize_identity_on_deterministic_single_source() {
        let dag = unfold(&g2(), 4);
        let det = determinize(&dag, DEFAULT_STATE_CAP).unwrap();
        assert_eq!(det.layer_sizes, vec![1; 5]);
        assert_eq!(det.total_edges(), 4);
    }

    #[test]
    fn determinize_preserves_kmers() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..20 {
            let g = random_graph(&mut rng, 5, 2);
            for k in 1..=4 {
                let det = determinize(&unfold(&g, k), DEFAULT_STATE_CAP).unwrap();
                let flat = det.to_labeled_graph();
                let a = enumerate_kmers(&g, k, DEFAULT_ORACLE_CAP).unwrap().set;
                let b = enumerate_kmers(&flat, k, DEFAULT_ORACLE_CAP).unwrap().set;
                assert_eq!(a.members, b.members, "k={k}");
            }
        }
    }

    #[test]
    fn layered_count_examples() {
        let gi = dnf_to_graph(&fig1()).unwrap();
        assert_eq!(
            count_kmers_layered(&gi.graph, 3, DEFAULT_STATE_CAP).unwrap(),
            BigUint::from(10u32)
        );
        assert_eq!(
            count_kmers_layered(&g2(), 5, DEFAULT_STATE_CAP).unwrap(),
            BigUint::one()
        );
    }

    #[test]
    fn layered_count_matches_brute_on_random_graphs() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..30 {
            let g = random_graph(&mut rng, 8, 3);
            for k in [1usize, 2, 3, 5, 7, 10] {
                let layered = count_kmers_layered(&g, k, DEFAULT_STATE_CAP).unwrap();
                let brute = count_kmers_brute(&g, k, DEFAULT_ORACLE_CAP).unwrap();
                assert_eq!(layered, brute, "k={k}");
            }
        }
    }

    #[test]
    fn gadget_fig1_branching() {
        let gi = dnf_to_graph(&fig1()).unwrap();
        assert_eq!(gi.d, vec![1, 0, 1]);
        assert!(check_deterministic(&gi.graph).is_ok());
        assert!(is_acyclic(&gi.graph));
    }

    #[test]
    fn gadget_branching_edge_cases() {
        // A clause naming all variables has no free variable to double.
        let f = DnfFormula::new(3, vec![vec![1, -2, 3]]).unwrap();
        assert_eq!(dnf_to_graph(&f).unwrap().d, vec![0]);
        // Single clause (x1) over two variables: only the first node counts
        // and it has a single out-edge.
        let f = DnfFormula::new(2, vec![vec![1]]).unwrap();
        assert_eq!(dnf_to_graph(&f).unwrap().d, vec![0]);
    }

    #[test]
    fn sat_count_examples() {
        let gi = dnf_to_graph(&fig1()).unwrap();
        let brute = |g: &LabeledGraph, k: usize| count_kmers_brute(g, k, DEFAULT_ORACLE_CAP);
        assert_eq!(sat_count_from_graph(&gi, brute).unwrap(), BigUint::from(5u32));

        let empty = DnfFormula::new(4, vec![]).unwrap();
        let gi = dnf_to_graph(&empty).unwrap();
        assert_eq!(sat_count_from_graph(&gi, brute).unwrap(), BigUint::zero());
    }

    #[test]
    fn reduction_identity_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(101);
        for _ in 0..30 {
            let f = random_dnf(&mut rng, 8, 5);
            let gi = dnf_to_graph(&f).unwrap();
            assert!(check_deterministic(&gi.graph).is_ok());
            assert!(is_acyclic(&gi.graph));
            let expect = dnf_count_sat_brute(&f).unwrap();
            let via_brute = sat_count_from_graph(&gi, |g, k| {
                count_kmers_brute(g, k, DEFAULT_ORACLE_CAP)
            })
            .unwrap();
            let via_layered = sat_count_from_graph(&gi, |g, k| {
                count_kmers_layered(g, k, DEFAULT_STATE_CAP)
            })
            .unwrap();
            assert_eq!(via_brute, expect);
            assert_eq!(via_layered, expect);
        }
    }
}
