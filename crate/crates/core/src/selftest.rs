//! Seeded cross-engine consistency suite, exposed so the command-line tool
//! can run it on demand.

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use thiserror::Error;

use crate::count::count_kmers_dp_with;
use crate::dbg::DbgData;
use crate::doubling::count_kmers_doubling_with;
use crate::gen::{random_dnf, random_dwg, random_string_dbg, DwgConfig};
use crate::lcs::compute_levels;
use crate::oracle::{build_dbg_brute, count_kmers_brute, dnf_count_sat_brute};
use crate::wheelerize::{count_kmers_layered, dnf_to_graph, sat_count_from_graph, DEFAULT_STATE_CAP};

#[derive(Debug, Error)]
#[error("self-test failure in {check}: {detail}")]
pub struct SelftestFailure {
    pub check: String,
    pub detail: String,
}

#[derive(Debug, Default)]
pub struct SelftestStats {
    pub counting_instances: usize,
    pub dbg_instances: usize,
    pub reduction_instances: usize,
}

/// Runs the cross-engine equality suite: counting engines against the
/// enumeration oracle, de Bruijn construction against the explicit one,
/// and the model-counting reduction against exhaustive assignment.
pub fn run(seed: u64, instances: usize, oracle_cap: usize) -> Result<SelftestStats, SelftestFailure> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut stats = SelftestStats::default();
    let ks = [1usize, 2, 3, 5, 8];

    for i in 0..instances {
        let w = if i % 3 == 0 {
            let t = rng.gen_range(1..=3);
            let len = rng.gen_range(t.max(2)..=10);
            let sigma = rng.gen_range(1..=4);
            random_string_dbg(&mut rng, sigma, t, len)
        } else {
            random_dwg(&mut rng, &DwgConfig { max_n: 10, max_sigma: 4, acyclic: i % 2 == 0 })
        };
        let k = ks[i % ks.len()];
        let lcs = compute_levels(&w, k);
        let dp = count_kmers_dp_with(&w, &lcs, k);
        let dbl = count_kmers_doubling_with(&w, &lcs, k);
        if dp.total != dbl.total || dp.per_vertex != dbl.per_vertex {
            return Err(SelftestFailure {
                check: "dp-vs-doubling".into(),
                detail: format!(
                    "instance {i} (n={}, k={k}): dp={} doubling={}",
                    w.n(),
                    dp.total,
                    dbl.total
                ),
            });
        }
        match count_kmers_brute(w.graph(), k, oracle_cap) {
            Ok(brute) => {
                if brute != dp.total {
                    return Err(SelftestFailure {
                        check: "dp-vs-brute".into(),
                        detail: format!("instance {i} (k={k}): dp={} brute={brute}", dp.total),
                    });
                }
            }
            Err(_) => continue,
        }
        stats.counting_instances += 1;

        if i % 4 == 0 && k >= 2 {
            let got = DbgData::build(w.clone(), k)
                .expect("k >= 2")
                .build_explicit_dbg();
            let want = build_dbg_brute(w.graph(), k, oracle_cap).map_err(|e| SelftestFailure {
                check: "dbg-oracle".into(),
                detail: e.to_string(),
            })?;
            if got != want {
                return Err(SelftestFailure {
                    check: "dbg-vs-brute".into(),
                    detail: format!(
                        "instance {i} (k={k}): {} vs {} nodes, {} vs {} edges",
                        got.nodes.len(),
                        want.nodes.len(),
                        got.edges.len(),
                        want.edges.len()
                    ),
                });
            }
            stats.dbg_instances += 1;
        }
    }

    for i in 0..instances.div_ceil(2) {
        let f = random_dnf(&mut rng, 8, 5);
        let gi = dnf_to_graph(&f).map_err(|e| SelftestFailure {
            check: "gadget-build".into(),
            detail: e.to_string(),
        })?;
        let expect = dnf_count_sat_brute(&f).map_err(|e| SelftestFailure {
            check: "dnf-brute".into(),
            detail: e.to_string(),
        })?;
        let got: BigUint = sat_count_from_graph(&gi, |g, k| {
            count_kmers_layered(g, k, DEFAULT_STATE_CAP)
        })
        .map_err(|e| SelftestFailure { check: "reduction".into(), detail: e.to_string() })?;
        if got != expect {
            return Err(SelftestFailure {
                check: "reduction-identity".into(),
                detail: format!("formula {i}: reduction={got} brute={expect}"),
            });
        }
        stats.reduction_instances += 1;
    }

    Ok(stats)
}
