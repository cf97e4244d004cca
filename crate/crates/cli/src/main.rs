//! `rhc` — rooted-hypergraph containers.
//!
//! Machine-readable JSON goes to stdout; human notes go to stderr. Exit
//! codes: 0 success/true, 1 property violated/false, 2 usage or input
//! error. All randomness is seed-flagged; nothing reads the clock or OS
//! entropy.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use rooted_containers::engine::{reconstruct_run, run_container, EligibilityMode, RunOptions};
use rooted_containers::family::generate_synthetic_rooted;
use rooted_containers::hypergraph::RootedHypergraph;
use rooted_containers::params::Params;
use rooted_containers::set::VertexSet;
use rooted_containers::supersat::{
    audit_counting_identity, kneser_graph, kneser_stats, min_eigenvalue,
};
use rooted_containers::unionfree::{
    alpha_bounds, build_union_hypergraph, count_union_free_threaded, section4_crossover,
    Crossover,
};
use rooted_containers::{io as formats, Error};

#[derive(Parser)]
#[command(name = "rhc", version, about = "containers for rooted 3-uniform hypergraphs")]
struct Cli {
    /// Emit only the JSON payload (suppresses stderr notes).
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a hypergraph or graph file.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
    },
    /// Check rootedness of a hypergraph file.
    Verify {
        hypergraph: PathBuf,
        /// Override the rootedness parameter r from the file header.
        #[arg(long)]
        rootedness: Option<u32>,
    },
    /// Run the two-phase container algorithm on an independent set.
    Contain {
        hypergraph: PathBuf,
        /// Independent set as a `family n` file; masks are vertex ids.
        #[arg(long)]
        iset: PathBuf,
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, value_enum, default_value_t = ModeArg::Exact)]
        mode: ModeArg,
        /// Skip the algorithm-profile validation (desk-scale runs).
        #[arg(long)]
        relaxed: bool,
    },
    /// Replay a run from its fingerprints and print the identical record.
    Reconstruct {
        hypergraph: PathBuf,
        /// JSON emitted by `contain` (params, mode and fingerprints).
        fingerprints: PathBuf,
    },
    /// Exact union-free census: alpha(n) by two independent oracles.
    Census {
        n: u32,
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
    /// Kneser graph spectrum: computed minimum eigenvalue vs formula.
    Spectra { m: u32, k: u32 },
    /// Evaluate the alpha(n) bound chain at a given n and epsilon.
    Bounds {
        n: u32,
        eps: f64,
        /// Also locate the (astronomically large) chain crossover.
        #[arg(long)]
        crossover: bool,
    },
    /// Brute-force the permutation counting identity for a family file.
    Audit {
        n: u32,
        family: PathBuf,
        /// Prefix size for the H_A computation.
        #[arg(long)]
        delta: Option<u32>,
    },
}

#[derive(Subcommand)]
enum GenKind {
    /// The union hypergraph on P(n).
    Union {
        n: u32,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// The Kneser graph KG(m, k) as a `graph N` edge list.
    Kneser {
        m: u32,
        k: u32,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// A seeded pseudorandom 1-rooted hypergraph.
    Synthetic {
        vertices: u32,
        density: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Args)]
struct ParamArgs {
    #[arg(long)]
    eps: f64,
    #[arg(long)]
    s: f64,
    #[arg(long)]
    t: f64,
    /// The container-size target N.
    #[arg(long)]
    n_target: f64,
    /// Phase-I fingerprint density bound; defaults to 2s/t.
    #[arg(long)]
    tau: Option<f64>,
    /// Phase-II degree threshold; defaults to 4*eps*s.
    #[arg(long)]
    z: Option<f64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Exact,
    Greedy,
}

impl From<ModeArg> for EligibilityMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Exact => EligibilityMode::Exact,
            ModeArg::Greedy => EligibilityMode::Greedy,
        }
    }
}

/// Failure modes: exit 1 = property violated/false, 2 = usage/input error.
enum Outcome {
    Violated(String),
    InputError(String),
}

fn read_file(path: &Path) -> Result<String, Outcome> {
    std::fs::read_to_string(path)
        .map_err(|e| Outcome::InputError(format!("cannot read {}: {e}", path.display())))
}

fn input_err(e: Error) -> Outcome {
    Outcome::InputError(e.to_string())
}

fn json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("serializable payload")
}

fn emit_or_write(content: &str, output: &Option<PathBuf>, what: &str) -> Result<String, Outcome> {
    match output {
        Some(path) => {
            std::fs::write(path, content).map_err(|e| {
                Outcome::InputError(format!("cannot write {}: {e}", path.display()))
            })?;
            Ok(json(&serde_json::json!({
                "written": path.display().to_string(),
                "kind": what,
            })))
        }
        None => {
            print!("{content}");
            Ok(String::new())
        }
    }
}

fn cmd_gen(kind: GenKind) -> Result<String, Outcome> {
    match kind {
        GenKind::Union { n, output } => {
            let h = build_union_hypergraph(n).map_err(input_err)?;
            emit_or_write(&formats::write_hypergraph(&h), &output, "rooted-hg")
        }
        GenKind::Kneser { m, k, output } => {
            let g = kneser_graph(m, k).map_err(input_err)?;
            emit_or_write(&formats::write_graph(&g), &output, "graph")
        }
        GenKind::Synthetic {
            vertices,
            density,
            seed,
            output,
        } => {
            let h = generate_synthetic_rooted(vertices, density, seed).map_err(input_err)?;
            emit_or_write(&formats::write_hypergraph(&h), &output, "rooted-hg")
        }
    }
}

#[derive(Serialize)]
struct VerifyReport {
    rootedness: u32,
    pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness_pair: Option<(u32, u32)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    offending_edges: Option<Vec<[u32; 4]>>,
}

fn cmd_verify(path: &Path, rootedness: Option<u32>) -> Result<String, Outcome> {
    let h = formats::parse_hypergraph(&read_file(path)?).map_err(input_err)?;
    let r = rootedness.unwrap_or(h.rootedness());
    match h.verify_rooted_with(r) {
        Ok(()) => Ok(json(&VerifyReport {
            rootedness: r,
            pass: true,
            witness_pair: None,
            offending_edges: None,
        })),
        Err(v) => Err(Outcome::Violated(json(&VerifyReport {
            rootedness: r,
            pass: false,
            witness_pair: Some(v.pair),
            offending_edges: Some(
                v.edges
                    .iter()
                    .map(|e| [e.triple[0], e.triple[1], e.triple[2], e.head])
                    .collect(),
            ),
        }))),
    }
}

fn load_iset(path: &Path, h: &RootedHypergraph) -> Result<VertexSet, Outcome> {
    let fam = formats::parse_family(&read_file(path)?).map_err(input_err)?;
    let mut set = VertexSet::empty(h.universe());
    for mask in fam.masks() {
        if mask >= h.universe() {
            return Err(Outcome::InputError(format!(
                "set member {mask} is not a vertex of the hypergraph (universe {})",
                h.universe()
            )));
        }
        set.insert(mask);
    }
    Ok(set)
}

fn cmd_contain(
    hg_path: &Path,
    iset_path: &Path,
    args: &ParamArgs,
    mode: ModeArg,
    relaxed: bool,
) -> Result<String, Outcome> {
    let h = formats::parse_hypergraph(&read_file(hg_path)?).map_err(input_err)?;
    let iset = load_iset(iset_path, &h)?;
    let mut params = Params::new(
        args.eps,
        args.s,
        args.t,
        args.n_target,
        h.vertex_count() as u64,
    );
    if let Some(tau) = args.tau {
        params = params.with_tau(tau);
    }
    if let Some(z) = args.z {
        params = params.with_z(z);
    }
    let opts = RunOptions {
        mode: mode.into(),
        relaxed,
    };
    let run = run_container(&h, &iset, &params, &opts).map_err(input_err)?;
    let ok = run.invariant_violations.is_empty()
        && iset.is_subset_of(&run.container_set())
        && run.fingerprint_t_bound_ok()
        && run.fingerprint_t_prime_bound_ok()
        && run.conditional_size_ok();
    let payload = json(&run);
    if ok {
        Ok(payload)
    } else {
        Err(Outcome::Violated(payload))
    }
}

fn cmd_reconstruct(hg_path: &Path, fp_path: &Path) -> Result<String, Outcome> {
    let h = formats::parse_hypergraph(&read_file(hg_path)?).map_err(input_err)?;
    let value: serde_json::Value = serde_json::from_str(&read_file(fp_path)?)
        .map_err(|e| Outcome::InputError(format!("fingerprint JSON: {e}")))?;
    let ids = |key: &str| -> Result<Vec<u32>, Outcome> {
        value
            .get(key)
            .and_then(|v| serde_json::from_value::<Vec<u32>>(v.clone()).ok())
            .ok_or_else(|| Outcome::InputError(format!("fingerprint JSON lacks '{key}'")))
    };
    let t_ids = ids("fingerprint_t")?;
    let tp_ids = ids("fingerprint_t_prime")?;
    for &v in t_ids.iter().chain(&tp_ids) {
        if v >= h.universe() {
            return Err(Outcome::InputError(format!(
                "fingerprint vertex {v} outside the hypergraph universe"
            )));
        }
    }
    let params: Params = serde_json::from_value(
        value
            .get("params")
            .cloned()
            .ok_or_else(|| Outcome::InputError("fingerprint JSON lacks 'params'".into()))?,
    )
    .map_err(|e| Outcome::InputError(format!("params: {e}")))?;
    let mode: EligibilityMode = serde_json::from_value(
        value
            .get("mode")
            .cloned()
            .ok_or_else(|| Outcome::InputError("fingerprint JSON lacks 'mode'".into()))?,
    )
    .map_err(|e| Outcome::InputError(format!("mode: {e}")))?;
    let relaxed = value.get("relaxed").and_then(|v| v.as_bool()).unwrap_or(false);
    let t_set = VertexSet::from_ids(h.universe(), t_ids);
    let tp_set = VertexSet::from_ids(h.universe(), tp_ids);
    let run = reconstruct_run(&h, &t_set, &tp_set, &params, &RunOptions { mode, relaxed })
        .map_err(input_err)?;
    Ok(json(&run))
}

#[derive(Serialize)]
struct CensusReport {
    n: u32,
    alpha: u64,
}

fn cmd_census(n: u32, threads: usize) -> Result<String, Outcome> {
    let alpha = count_union_free_threaded(n, threads).map_err(input_err)?;
    let h = build_union_hypergraph(n).map_err(input_err)?;
    let indep = h.count_independent_sets().map_err(input_err)?;
    let payload = json(&CensusReport { n, alpha });
    if alpha == indep {
        Ok(payload)
    } else {
        Err(Outcome::Violated(json(&serde_json::json!({
            "n": n,
            "alpha": alpha,
            "independent_sets": indep,
            "error": "census oracles disagree",
        }))))
    }
}

#[derive(Serialize)]
struct SpectraReport {
    #[serde(rename = "N")]
    n: u64,
    #[serde(rename = "D")]
    d: u64,
    lambda_formula: i64,
    lambda_computed: f64,
}

fn cmd_spectra(m: u32, k: u32) -> Result<String, Outcome> {
    let stats = kneser_stats(m, k).map_err(input_err)?;
    let g = kneser_graph(m, k).map_err(input_err)?;
    let computed = min_eigenvalue(&g).map_err(input_err)?;
    let report = SpectraReport {
        n: stats.n_vertices,
        d: stats.d,
        lambda_formula: stats.lambda_formula_int(),
        lambda_computed: computed,
    };
    let payload = json(&report);
    if (computed - stats.lambda_formula).abs() <= 1e-6 {
        Ok(payload)
    } else {
        Err(Outcome::Violated(payload))
    }
}

#[derive(Serialize)]
struct BoundsReport {
    #[serde(flatten)]
    report: rooted_containers::unionfree::AlphaReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    crossover: Option<Crossover>,
}

fn cmd_bounds(n: u32, eps: f64, crossover: bool) -> Result<String, Outcome> {
    let report = alpha_bounds(n, eps).map_err(input_err)?;
    let crossover = if crossover {
        Some(section4_crossover(eps).map_err(input_err)?)
    } else {
        None
    };
    Ok(json(&BoundsReport { report, crossover }))
}

fn cmd_audit(n: u32, family_path: &Path, delta: Option<u32>) -> Result<String, Outcome> {
    let fam = formats::parse_family(&read_file(family_path)?).map_err(input_err)?;
    if fam.n() != n {
        return Err(Outcome::InputError(format!(
            "family file declares n = {}, command asked for n = {n}",
            fam.n()
        )));
    }
    let audit = audit_counting_identity(&fam, delta).map_err(input_err)?;
    let payload = json(&audit);
    if audit.each_good_at_most_one && audit.identity_holds {
        Ok(payload)
    } else {
        Err(Outcome::Violated(payload))
    }
}

fn run(cli: Cli) -> Result<String, Outcome> {
    match cli.command {
        Command::Gen { kind } => cmd_gen(kind),
        Command::Verify {
            hypergraph,
            rootedness,
        } => cmd_verify(&hypergraph, rootedness),
        Command::Contain {
            hypergraph,
            iset,
            params,
            mode,
            relaxed,
        } => cmd_contain(&hypergraph, &iset, &params, mode, relaxed),
        Command::Reconstruct {
            hypergraph,
            fingerprints,
        } => cmd_reconstruct(&hypergraph, &fingerprints),
        Command::Census { n, threads } => cmd_census(n, threads),
        Command::Spectra { m, k } => cmd_spectra(m, k),
        Command::Bounds { n, eps, crossover } => cmd_bounds(n, eps, crossover),
        Command::Audit { n, family, delta } => cmd_audit(n, &family, delta),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let quiet = cli.json;
    match run(cli) {
        Ok(payload) => {
            if !payload.is_empty() {
                println!("{payload}");
            }
            ExitCode::SUCCESS
        }
        Err(Outcome::Violated(payload)) => {
            println!("{payload}");
            if !quiet {
                let _ = writeln!(std::io::stderr(), "property violated");
            }
            ExitCode::from(1)
        }
        Err(Outcome::InputError(msg)) => {
            let _ = writeln!(std::io::stderr(), "error: {msg}");
            ExitCode::from(2)
        }
    }
}
