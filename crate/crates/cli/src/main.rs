//! Command-line front end: validation, counting, sharing-array dumps, de
//! Bruijn queries and export, hardness gadgets, unfolding, and the seeded
//! self-test.
//!
//! Exit codes: 0 success, 1 validation/format failure, 2 resource cap
//! exceeded, 3 internal consistency violation.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use wgkmer::count::count_kmers_dp_with;
use wgkmer::dbg::DbgData;
use wgkmer::doubling::count_kmers_doubling_with;
use wgkmer::graph::{parse_wgf, validate_wheeler, LabeledGraph, WheelerGraph};
use wgkmer::lcs::compute_levels;
use wgkmer::oracle::{count_kmers_brute, parse_dnf, DEFAULT_ORACLE_CAP};
use wgkmer::wheelerize::{
    count_kmers_layered, count_paths_layered, determinize, dnf_to_graph, sat_count_from_graph,
    unfold, DEFAULT_STATE_CAP,
};
use wgkmer::Count;

const ORACLE_CAP_ENV: &str = "KMERGRAPH_ORACLE_CAP";

#[derive(Parser)]
#[command(name = "wgkmer", version, about = "Distinct k-mer counting and de Bruijn graph simulation on deterministic Wheeler graphs")]
struct Cli {
    /// Emit errors as a JSON object on stdout.
    #[arg(long, global = true)]
    json_errors: bool,
    /// Bound on enumerated k-mer entries for brute-force operations
    /// (overrides the KMERGRAPH_ORACLE_CAP environment variable).
    #[arg(long, global = true)]
    oracle_cap: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check that a WGF file's numbering is a deterministic Wheeler order.
    Validate { file: PathBuf },
    /// Count distinct k-mers on walks.
    Count(CountArgs),
    /// Dump the capped external/internal longest-common-suffix arrays.
    Lcs {
        #[arg(short)]
        k: usize,
        file: PathBuf,
    },
    /// Build the de Bruijn simulation; optionally export or query it.
    Dbg(DbgArgs),
    /// DNF hardness-gadget operations.
    Gadget {
        #[command(subcommand)]
        command: GadgetCommand,
    },
    /// Write the k-times unfolded layered DAG of a graph as WGF.
    Unfold {
        #[arg(short)]
        k: usize,
        file: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Count distinct k-mers of an arbitrary labeled graph by layered
    /// determinization and path counting.
    CountLayered {
        #[arg(short)]
        k: usize,
        file: PathBuf,
    },
    /// Run the seeded cross-engine consistency suite.
    Selftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 40)]
        instances: usize,
    },
}

#[derive(Args)]
struct CountArgs {
    #[arg(short)]
    k: usize,
    #[arg(long, value_enum, default_value_t = Algo::Dp)]
    algo: Algo,
    /// Include per-vertex counts in the output.
    #[arg(long)]
    per_vertex: bool,
    file: PathBuf,
}

#[derive(Copy, Clone, ValueEnum)]
enum Algo {
    Dp,
    Doubling,
    Brute,
}

#[derive(Copy, Clone, ValueEnum)]
enum GadgetAlgo {
    Brute,
    Layered,
}

#[derive(Args)]
struct DbgArgs {
    #[arg(short)]
    k: usize,
    file: PathBuf,
    /// Write the explicit de Bruijn graph to this path.
    #[arg(long)]
    export: Option<PathBuf>,
    /// Look up one k-mer and print its handle.
    #[arg(long)]
    query: Option<String>,
    /// Start from KMER and follow LABELS one forward step at a time.
    #[arg(long, num_args = 2, value_names = ["KMER", "LABELS"])]
    walk: Option<Vec<String>>,
}

#[derive(Subcommand)]
enum GadgetCommand {
    /// Write the clause-gadget graph of a DNF formula as WGF.
    Build {
        dnf: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Recover the DNF model count from a distinct k-mer count.
    Solve {
        #[arg(long, value_enum, default_value_t = GadgetAlgo::Layered)]
        algo: GadgetAlgo,
        dnf: PathBuf,
    },
}

enum CliError {
    Format(String),
    Cap(String),
    Internal(String),
}

impl CliError {
    fn kind(&self) -> &'static str {
        match self {
            CliError::Format(_) => "format",
            CliError::Cap(_) => "cap",
            CliError::Internal(_) => "internal",
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Format(m) | CliError::Cap(m) | CliError::Internal(m) => m,
        }
    }

    fn exit_code(&self) -> u8 {
        match self {
            CliError::Format(_) => 1,
            CliError::Cap(_) => 2,
            CliError::Internal(_) => 3,
        }
    }
}

fn read_file(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path)
        .map_err(|e| CliError::Format(format!("cannot read {}: {e}", path.display())))
}

fn load_graph(path: &Path) -> Result<LabeledGraph, CliError> {
    parse_wgf(&read_file(path)?).map_err(|e| CliError::Format(e.to_string()))
}

fn load_wheeler(path: &Path) -> Result<WheelerGraph, CliError> {
    validate_wheeler(load_graph(path)?).map_err(|e| CliError::Format(e.to_string()))
}

fn oracle_cap(cli: &Cli) -> usize {
    cli.oracle_cap
        .or_else(|| std::env::var(ORACLE_CAP_ENV).ok().and_then(|v| v.parse().ok()))
        .unwrap_or(DEFAULT_ORACLE_CAP)
}

fn count_json(k: usize, algo: &str, total: &Count, per_vertex: Option<&[Count]>) -> serde_json::Value {
    let mut obj = json!({
        "k": k,
        "algorithm": algo,
        "total": total.to_string(),
    });
    if let Some(pv) = per_vertex {
        obj["per_vertex"] =
            serde_json::Value::Array(pv.iter().map(|c| c.to_string().into()).collect());
    }
    obj
}

fn run(cli: &Cli) -> Result<(), CliError> {
    match &cli.command {
        Command::Validate { file } => {
            let w = load_wheeler(file)?;
            println!(
                "valid deterministic Wheeler graph: n={} m={} sigma={}",
                w.n(),
                w.m(),
                w.sigma()
            );
            Ok(())
        }
        Command::Count(args) => {
            let cap = oracle_cap(cli);
            match args.algo {
                Algo::Brute => {
                    let g = load_graph(&args.file)?;
                    let total = count_kmers_brute(&g, args.k, cap)
                        .map_err(|e| CliError::Cap(e.to_string()))?;
                    println!("{}", count_json(args.k, "brute", &total, None));
                }
                Algo::Dp => {
                    let w = load_wheeler(&args.file)?;
                    let lcs = compute_levels(&w, args.k);
                    let r = count_kmers_dp_with(&w, &lcs, args.k);
                    let pv = args.per_vertex.then_some(r.per_vertex.as_slice());
                    println!("{}", count_json(args.k, "dp", &r.total, pv));
                }
                Algo::Doubling => {
                    let w = load_wheeler(&args.file)?;
                    let lcs = compute_levels(&w, args.k);
                    let r = count_kmers_doubling_with(&w, &lcs, args.k);
                    let pv = args.per_vertex.then_some(r.per_vertex.as_slice());
                    println!("{}", count_json(args.k, "doubling", &r.total, pv));
                }
            }
            Ok(())
        }
        Command::Lcs { k, file } => {
            let w = load_wheeler(file)?;
            let lcs = compute_levels(&w, *k);
            println!(
                "{}",
                json!({ "k": k, "elcs": lcs.elcs(), "ilcs": lcs.ilcs() })
            );
            Ok(())
        }
        Command::Dbg(args) => {
            let w = load_wheeler(&args.file)?;
            let data =
                DbgData::build(w, args.k).map_err(|e| CliError::Format(e.to_string()))?;
            if let Some(path) = &args.export {
                fs::write(path, data.export_text())
                    .map_err(|e| CliError::Format(format!("cannot write {}: {e}", path.display())))?;
                eprintln!("exported explicit de Bruijn graph to {}", path.display());
            }
            if let Some(q) = &args.query {
                println!("{}", query_json(&data, q));
            }
            if let Some(walk) = &args.walk {
                let (start, labels) = (&walk[0], &walk[1]);
                for line in walk_json(&data, start, labels) {
                    println!("{line}");
                }
            }
            if args.export.is_none() && args.query.is_none() && args.walk.is_none() {
                let dbg = data.build_explicit_dbg();
                println!(
                    "{}",
                    json!({ "k": args.k, "nodes": dbg.nodes.len(), "edges": dbg.edges.len() })
                );
            }
            Ok(())
        }
        Command::Gadget { command } => match command {
            GadgetCommand::Build { dnf, output } => {
                let f = parse_dnf(&read_file(dnf)?).map_err(|e| CliError::Format(e.to_string()))?;
                let gi = dnf_to_graph(&f).map_err(|e| CliError::Format(e.to_string()))?;
                fs::write(output, gi.graph.to_wgf()).map_err(|e| {
                    CliError::Format(format!("cannot write {}: {e}", output.display()))
                })?;
                println!(
                    "{}",
                    json!({
                        "nvars": f.nvars,
                        "clauses": f.clauses.len(),
                        "d": gi.d,
                        "vertices": gi.graph.n(),
                        "edges": gi.graph.m(),
                    })
                );
                Ok(())
            }
            GadgetCommand::Solve { algo, dnf } => {
                let f = parse_dnf(&read_file(dnf)?).map_err(|e| CliError::Format(e.to_string()))?;
                let gi = dnf_to_graph(&f).map_err(|e| CliError::Format(e.to_string()))?;
                let cap = oracle_cap(cli);
                let result = match algo {
                    GadgetAlgo::Brute => {
                        sat_count_from_graph(&gi, |g, k| count_kmers_brute(g, k, cap))
                    }
                    GadgetAlgo::Layered => {
                        sat_count_from_graph(&gi, |g, k| count_kmers_layered(g, k, DEFAULT_STATE_CAP))
                    }
                };
                let count = result.map_err(|e| match e {
                    wgkmer::wheelerize::ReductionError::Counter(msg) => CliError::Cap(msg),
                    other => CliError::Internal(other.to_string()),
                })?;
                println!("{count}");
                Ok(())
            }
        },
        Command::Unfold { k, file, output } => {
            let g = load_graph(file)?;
            if *k == 0 {
                return Err(CliError::Format("unfold requires k >= 1".into()));
            }
            let dag = unfold(&g, *k);
            fs::write(output, dag.to_labeled_graph().to_wgf())
                .map_err(|e| CliError::Format(format!("cannot write {}: {e}", output.display())))?;
            println!(
                "{}",
                json!({ "k": k, "layers": dag.layers(), "vertices": dag.total_vertices(), "edges": dag.total_edges() })
            );
            Ok(())
        }
        Command::CountLayered { k, file } => {
            let g = load_graph(file)?;
            let total = if *k == 0 {
                Count::from(1u32)
            } else {
                let det = determinize(&unfold(&g, *k), DEFAULT_STATE_CAP)
                    .map_err(|e| CliError::Cap(e.to_string()))?;
                count_paths_layered(&det, *k).map_err(|e| CliError::Internal(e.to_string()))?
            };
            println!("{}", count_json(*k, "layered", &total, None));
            Ok(())
        }
        Command::Selftest { seed, instances } => {
            let cap = oracle_cap(cli);
            let stats = wgkmer::selftest::run(*seed, *instances, cap)
                .map_err(|e| CliError::Internal(e.to_string()))?;
            println!(
                "{}",
                json!({
                    "seed": seed,
                    "counting_instances": stats.counting_instances,
                    "dbg_instances": stats.dbg_instances,
                    "reduction_instances": stats.reduction_instances,
                    "status": "ok",
                })
            );
            Ok(())
        }
    }
}

fn query_json(data: &DbgData, kmer_text: &str) -> serde_json::Value {
    let alphabet = data.wheeler().alphabet();
    let encoded = alphabet.encode(kmer_text);
    let handle = match &encoded {
        Some(kmer) if kmer.len() == data.k() => data.handle_of(kmer),
        _ => None,
    };
    match handle {
        Some(h) => {
            let labels: String = data
                .outgoing_labels(&h)
                .into_iter()
                .map(|c| alphabet.display(c))
                .collect();
            json!({
                "kmer": kmer_text,
                "present": true,
                "u": h.u + 1,
                "v": h.v + 1,
                "j": h.j.to_string(),
                "outgoing": labels,
            })
        }
        None => json!({ "kmer": kmer_text, "present": false }),
    }
}

fn walk_json(data: &DbgData, start: &str, labels: &str) -> Vec<serde_json::Value> {
    let mut out = Vec::new();
    let alphabet = data.wheeler().alphabet();
    out.push(query_json(data, start));
    let Some(mut kmer) = alphabet.encode(start).filter(|k| k.len() == data.k()) else {
        return out;
    };
    let Some(mut handle) = data.handle_of(&kmer) else {
        return out;
    };
    for ch in labels.chars() {
        let Some(sym) = alphabet.code(ch as u8) else {
            out.push(json!({ "label": ch.to_string(), "present": false }));
            break;
        };
        match data.forward(&handle, sym) {
            Some(next) => {
                kmer.remove(0);
                kmer.push(sym);
                let text = data.wheeler().graph().render(&kmer);
                out.push(json!({
                    "label": ch.to_string(),
                    "kmer": text,
                    "present": true,
                    "u": next.u + 1,
                    "v": next.v + 1,
                    "j": next.j.to_string(),
                }));
                handle = next;
            }
            None => {
                out.push(json!({ "label": ch.to_string(), "present": false }));
                break;
            }
        }
    }
    out
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            if cli.json_errors {
                println!(
                    "{}",
                    json!({ "error": { "kind": err.kind(), "message": err.message() } })
                );
            } else {
                eprintln!("error: {}", err.message());
            }
            ExitCode::from(err.exit_code())
        }
    }
}
