use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use tripack::approx::{bipartize, complete_graph_decomposition, greedy_packing, kk_cover_process_on, local_partition, ProcessOptions};
use tripack::exact::{exact_cover, exact_packing, Budget};
use tripack::graph::{enumerate_targets_with_cap, TargetKind, DEFAULT_TARGET_CAP};
use tripack::hardness::{
    case3_cut, classify_case, find_bipartite_witness, hardness_interval, operating_delta, rho_report,
    verify_main_bound, zero_weight_subgraph, AnalysisOptions, WitnessParams,
};
use tripack::lp::{check_slackness, fractional_cover_with, LpOptions};
use tripack::scalar::{format_rational, to_f64};
use tripack::sweep::{emit_report, run_sweep, ReportFormat, SweepConfig};
use tripack::{density, generate, parse_graph, Error, GeneratorSpec, Graph, Rational, TargetFamily};

#[derive(Parser)]
#[command(name = "tripack", version, about = "Triangle and clique cover/packing toolkit")]
struct Cli {
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Search-node budget for the exact oracles.
    #[arg(long, global = true)]
    budget_nodes: Option<u64>,
    /// Wall-clock budget in milliseconds for exact oracles and each LP.
    #[arg(long, global = true)]
    budget_ms: Option<u64>,
    /// Output format: `json` for reports, `text` (edge list) for `gen`,
    /// `csv`/`json`/`plotdata` for `sweep`.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Output file (a directory for `sweep`); stdout when absent.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    Csv,
    Plotdata,
}

/// GRAPH arguments are a file of `u v` lines, `-` for stdin, or `gen:SPEC`.
#[derive(Subcommand)]
enum Command {
    /// Generate a graph from a spec such as `complete:6` or `gnp:12:0.5:3`.
    Gen { spec: String },
    /// Solve the fractional cover LP and its dual packing.
    Lp {
        graph: String,
        #[arg(long, default_value = "K3")]
        family: TargetFamily,
    },
    /// Exact minimum cover (or maximum packing with --packing).
    Exact {
        graph: String,
        #[arg(long, default_value = "K3")]
        family: TargetFamily,
        #[arg(long)]
        packing: bool,
    },
    /// A cover: exact by default, or the LP-guided approximation.
    Cover {
        graph: String,
        #[arg(long, default_value = "K3")]
        family: TargetFamily,
        #[arg(long)]
        approx: bool,
        /// Write the deletion-process trace as JSON.
        #[arg(long, requires = "approx")]
        trace: Option<PathBuf>,
    },
    /// A packing: exact by default, greedy with --greedy.
    Pack {
        graph: String,
        #[arg(long, default_value = "K3")]
        family: TargetFamily,
        #[arg(long)]
        greedy: bool,
    },
    /// Remove the uncut edges of a locally optimal partition.
    Bipartize {
        graph: String,
        /// Number of parts; 2 gives a bipartite residue.
        #[arg(long, default_value_t = 2)]
        parts: usize,
    },
    /// Bounds on τ and the implied hardness slack δ.
    Hardness {
        graph: String,
        #[arg(long, default_value = "K3")]
        family: TargetFamily,
    },
    /// Case label, bipartite witness in the zero-weight graph, and the cut it induces.
    Witness {
        graph: String,
        #[arg(long, default_value_t = 32)]
        retries: usize,
    },
    /// Check the packing and fractional-cover lower bound (1 + β²/800)·m/4.
    VerifyMain { graph: String },
    /// Largest triangle-free subgraph bounds and the integrality gap.
    Rho { graph: String },
    /// Run a JSON sweep config and emit its report.
    Sweep { config: PathBuf },
}

enum Failure {
    Usage(String),
    Lib(Error),
    Budget(Value),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::BudgetExceeded { .. } | Error::LpTooLarge { .. } | Error::IterationCap(_) | Error::LpTimeout(_) => 3,
        Error::Invariant(_) | Error::ReportRejected(_) | Error::Unbounded => 4,
        _ => 2,
    }
}

fn read_graph(arg: &str) -> Result<Graph, Error> {
    if let Some(spec) = arg.strip_prefix("gen:") {
        return generate(&spec.parse::<GeneratorSpec>()?);
    }
    let text = if arg == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        s
    } else {
        std::fs::read_to_string(arg)?
    };
    parse_graph(&text)
}

fn rat(r: &Rational) -> Value {
    json!({ "exact": format_rational(r), "approx": to_f64(r) })
}

fn rats(rs: &[Rational]) -> Value {
    Value::Array(rs.iter().map(|r| Value::String(format_rational(r))).collect())
}

fn write_out(out: Option<&Path>, text: &str) -> Result<(), Error> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(Error::OutputUnwritable),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

struct Ctx {
    budget: Budget,
    lp: LpOptions,
    seed: u64,
}

impl Ctx {
    fn analysis(&self) -> AnalysisOptions {
        AnalysisOptions { budget: self.budget, seed: self.seed, lp: self.lp, ..AnalysisOptions::default() }
    }
}

fn run(cli: &Cli) -> Result<Value, Failure> {
    let mut budget = Budget::default();
    if let Some(n) = cli.budget_nodes {
        budget.nodes = n;
    }
    if let Some(ms) = cli.budget_ms {
        budget.millis = ms;
    }
    let ctx = Ctx {
        budget,
        lp: LpOptions { time_limit: cli.budget_ms.map(Duration::from_millis), ..LpOptions::default() },
        seed: cli.seed,
    };
    let out = match &cli.command {
        Command::Gen { .. } | Command::Sweep { .. } => unreachable!("handled before dispatch"),
        Command::Lp { graph, family } => {
            let g = read_graph(graph)?;
            let targets = enumerate_targets_with_cap(&g, *family, DEFAULT_TARGET_CAP)?;
            let cover = fractional_cover_with(&g, &targets, ctx.lp)?;
            let slack = check_slackness(&cover, &cover.dual_packing, &targets)?;
            if !slack.satisfied || cover.value != cover.dual_packing.value {
                return Err(Error::Invariant("LP optimality certificate failed".into()).into());
            }
            json!({
                "family": family.to_string(),
                "n": g.n(),
                "m": g.m(),
                "targets": targets.len(),
                "tau_star": rat(&cover.value),
                "nu_star": rat(&cover.dual_packing.value),
                "edge_weights": rats(&cover.weights),
                "target_weights": rats(&cover.dual_packing.weights),
                "pivots": cover.iterations,
            })
        }
        Command::Exact { graph, family, packing } => {
            let g = read_graph(graph)?;
            let targets = enumerate_targets_with_cap(&g, *family, DEFAULT_TARGET_CAP)?;
            let (value, optimal) = if *packing {
                let sol = exact_packing(&g, &targets, ctx.budget);
                if !sol.verify(&targets) {
                    return Err(Error::Invariant("packing is not edge-disjoint".into()).into());
                }
                (serde_json::to_value(&sol).expect("serializable"), sol.optimal)
            } else {
                let sol = exact_cover(&g, &targets, ctx.budget);
                if !sol.verify(&targets) {
                    return Err(Error::Invariant("cover misses a target".into()).into());
                }
                (serde_json::to_value(&sol).expect("serializable"), sol.optimal)
            };
            if !optimal {
                return Err(Failure::Budget(value));
            }
            value
        }
        Command::Cover { graph, family, approx, trace } => {
            let g = read_graph(graph)?;
            let targets = enumerate_targets_with_cap(&g, *family, DEFAULT_TARGET_CAP)?;
            if !approx {
                let sol = exact_cover(&g, &targets, ctx.budget);
                let value = serde_json::to_value(&sol).expect("serializable");
                if !sol.optimal {
                    return Err(Failure::Budget(value));
                }
                value
            } else if family.kind() == TargetKind::Clique {
                let opts = ProcessOptions { seed: ctx.seed, lp: ctx.lp, target_cap: DEFAULT_TARGET_CAP };
                let (sol, tr) = kk_cover_process_on(&g, &targets, opts)?;
                if let Some(path) = trace {
                    let text = serde_json::to_string_pretty(&tr).map_err(Error::from)?;
                    std::fs::write(path, text).map_err(Error::OutputUnwritable)?;
                }
                let mut value = serde_json::to_value(&sol).expect("serializable");
                value["tau_star"] = rat(&tr.initial_tau_star);
                value["certified_ratio"] = tr.certified_ratio.as_ref().map_or(Value::Null, rat);
                value["deletions"] = json!(tr.t);
                value
            } else {
                let cut = bipartize(&g, ctx.seed);
                if !targets.unhit_by(&cut.removed).is_empty() {
                    return Err(Error::Invariant("bipartized graph still has a target".into()).into());
                }
                json!({ "family": family.to_string(), "edges": cut.removed, "size": cut.removed_count, "optimal": false })
            }
        }
        Command::Pack { graph, family, greedy } => {
            let g = read_graph(graph)?;
            let targets = enumerate_targets_with_cap(&g, *family, DEFAULT_TARGET_CAP)?;
            let sol = if *greedy {
                greedy_packing(&g, &targets, ctx.seed)
            } else if let Some(sol) = complete_graph_decomposition(&g, &targets) {
                sol
            } else {
                exact_packing(&g, &targets, ctx.budget)
            };
            if !sol.verify(&targets) {
                return Err(Error::Invariant("packing is not edge-disjoint".into()).into());
            }
            let value = serde_json::to_value(&sol).expect("serializable");
            if !greedy && !sol.optimal {
                return Err(Failure::Budget(value));
            }
            value
        }
        Command::Bipartize { graph, parts } => {
            let g = read_graph(graph)?;
            if *parts < 2 {
                return Err(Error::InvalidSpec("need at least two parts".into()).into());
            }
            let cut = local_partition(&g, *parts, ctx.seed);
            if !cut.verify(&g) || cut.removed_count * parts > g.m() {
                return Err(Error::Invariant("partition cover above m/parts".into()).into());
            }
            serde_json::to_value(&cut).expect("serializable")
        }
        Command::Hardness { graph, family } => {
            let g = read_graph(graph)?;
            serde_json::to_value(hardness_interval(&g, *family, &ctx.analysis())?).expect("serializable")
        }
        Command::Witness { graph, retries } => {
            let g = read_graph(graph)?;
            let targets = enumerate_targets_with_cap(&g, TargetFamily::TRIANGLE, DEFAULT_TARGET_CAP)?;
            let cover = fractional_cover_with(&g, &targets, ctx.lp)?;
            let beta = density(&g)?;
            let delta = operating_delta(&beta);
            let label = classify_case(&cover, &beta, &delta);
            let h = zero_weight_subgraph(&g, &cover);
            let params = WitnessParams { retries: *retries, ..WitnessParams::new(&beta, ctx.seed) };
            let witness = find_bipartite_witness(&h, params)?;
            if !witness.verify(&h, TargetFamily::TRIANGLE) {
                return Err(Error::Invariant("witness fails re-verification".into()).into());
            }
            let cut = case3_cut(&g, &cover, &witness, ctx.seed, *retries);
            json!({
                "tau_star": rat(&cover.value),
                "beta": rat(&beta),
                "delta": rat(&delta),
                "case": label,
                "witness": witness,
                "cut": cut,
                "refutes_hardness": cut.refutes_hardness(g.m(), &delta),
            })
        }
        Command::VerifyMain { graph } => {
            let g = read_graph(graph)?;
            serde_json::to_value(verify_main_bound(&g, &ctx.analysis())?).expect("serializable")
        }
        Command::Rho { graph } => {
            let g = read_graph(graph)?;
            serde_json::to_value(rho_report(&g, &ctx.analysis())?).expect("serializable")
        }
    };
    Ok(out)
}

fn run_gen(cli: &Cli, spec: &str) -> Result<(), Error> {
    let spec: GeneratorSpec = spec.parse()?;
    let g = generate(&spec)?;
    let text = match cli.format.unwrap_or(Format::Text) {
        Format::Json => {
            let value = json!({ "spec": spec, "n": g.n(), "m": g.m(), "edges": g.edges() });
            serde_json::to_string_pretty(&value)? + "\n"
        }
        _ => g.to_edge_list(),
    };
    write_out(cli.out.as_deref(), &text)
}

fn run_sweep_cmd(cli: &Cli, path: &Path) -> Result<(), Error> {
    let mut cfg = SweepConfig::from_json(&std::fs::read_to_string(path)?)?;
    if let Some(out) = &cli.out {
        cfg.output = Some(out.clone());
    }
    let format = match cli.format.unwrap_or(Format::Csv) {
        Format::Json => ReportFormat::Json,
        Format::Csv | Format::Text => ReportFormat::Csv,
        Format::Plotdata => ReportFormat::Plotdata,
    };
    let records = run_sweep(&cfg)?;
    match &cfg.output {
        Some(dir) => emit_report(&records, format, &dir.join(format!("sweep.{}", format.extension()))),
        None => write_out(None, &format.render(&records)?),
    }
}

fn emit(cli: &Cli, value: &Value) -> Result<(), Error> {
    let text = serde_json::to_string_pretty(value)? + "\n";
    write_out(cli.out.as_deref(), &text)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Gen { spec } => run_gen(&cli, spec).map_err(Failure::Lib),
        Command::Sweep { config } => run_sweep_cmd(&cli, config).map_err(Failure::Lib),
        _ if !matches!(cli.format, None | Some(Format::Json)) => {
            Err(Failure::Usage("only --format json applies to this command".into()))
        }
        _ => run(&cli).and_then(|v| emit(&cli, &v).map_err(Failure::Lib)),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Budget(partial)) => {
            let _ = emit(&cli, &partial);
            eprintln!("tripack: budget exhausted before optimality was proven");
            ExitCode::from(3)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("tripack: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("tripack: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
