use std::fs;
use std::io::{Read as _, Write as _};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use zf_lab::forcing::{is_forcing_set, Rule};
use zf_lab::generators::GenSpec;
use zf_lab::graph::Graph;
use zf_lab::harness::{run_suite, search_conjecture, PoolFamily, SearchConfig, Suite, SuiteConfig};
use zf_lab::io::{parse_graph6, parse_graphs, to_dot, to_edge_list, to_graph6, DotAnnotations};
use zf_lab::solvers::{solve, Parameter, ParameterResult, SolveError, SolverConfig};

const PARSE_ERROR: u8 = 2;
const BUDGET_EXCEEDED: u8 = 3;

#[derive(Parser)]
#[command(name = "zf-lab", version, about = "Zero forcing and cover numbers of small graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphFormat {
    Graph6,
    Edges,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Exact parameter values with certificates.
    Compute {
        /// graph6 lines or an edge list; `-` reads stdin.
        input: Option<String>,
        /// A graph6 string given inline.
        #[arg(long)]
        g6: Option<String>,
        /// Comma-separated subset of Z, Z+, P, T, cc.
        #[arg(short, long, value_delimiter = ',', default_value = "Z,Z+,P,T,cc")]
        params: Vec<String>,
        /// Search-node limit per parameter.
        #[arg(long)]
        budget: Option<u64>,
        /// Writes DOT with the first parameter's certificate (first graph only).
        #[arg(long)]
        dot: Option<String>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Runs a property suite (or `all`) on generated instances.
    Verify {
        suite: String,
        #[arg(long, default_value_t = 50)]
        trials: usize,
        #[arg(long, default_value_t = 12)]
        max_n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Searches vertex sums of Z = P graphs for Z != P and probes whether
    /// minimum path covers are forcing chains.
    Search {
        /// Largest summand order.
        #[arg(long, default_value_t = 7)]
        max_n: usize,
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 60)]
        pairs: usize,
        #[arg(long, default_value_t = 12)]
        trials: usize,
        /// Comma-separated pool families (default: all).
        #[arg(long, value_delimiter = ',')]
        families: Vec<String>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Generates a graph from an inline JSON spec, e.g. '{"family":"cycle","n":5}'.
    Gen {
        spec: String,
        #[arg(long, value_enum, default_value = "graph6")]
        format: GraphFormat,
    },
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err((code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}

type Outcome = Result<u8, (u8, String)>;

/// Writes a line to stdout; a closed pipe ends the command quietly.
macro_rules! out {
    ($($t:tt)*) => {
        if let Err(e) = writeln!(std::io::stdout(), $($t)*) {
            return stdout_failed(e);
        }
    };
}

macro_rules! out_raw {
    ($($t:tt)*) => {
        if let Err(e) = write!(std::io::stdout(), $($t)*) {
            return stdout_failed(e);
        }
    };
}

fn stdout_failed(e: std::io::Error) -> Outcome {
    match e.kind() {
        std::io::ErrorKind::BrokenPipe => Ok(0),
        _ => Err((1, format!("stdout: {e}"))),
    }
}

fn usage(msg: impl ToString) -> (u8, String) {
    (PARSE_ERROR, msg.to_string())
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Compute { input, g6, params, budget, dot, format } => compute(input, g6, &params, budget, dot, format),
        Command::Verify { suite, trials, max_n, seed, budget, format } => {
            let suites = if suite == "all" {
                Suite::ALL.to_vec()
            } else {
                vec![Suite::from_name(&suite).ok_or_else(|| usage(format!("unknown suite {suite:?}")))?]
            };
            let node_limit = budget.unwrap_or(SolverConfig::default().node_limit);
            let cfg = SuiteConfig { trials, max_n, seed, node_limit };
            let mut code = 0;
            for s in suites {
                let rep = run_suite(s, &cfg);
                match format {
                    Format::Json => out_raw!("{}", rep.to_json_lines()),
                    Format::Text => {
                        for r in rep.instances.iter().filter(|r| r.outcome != zf_lab::harness::Outcome::Pass) {
                            out!("{} #{} {:?}: {}", r.suite, r.index, r.outcome, serde_json::to_string(&r.instance).unwrap());
                        }
                        let m = &rep.summary;
                        out!(
                            "{}: {}/{} passed, {} failed, {} over budget ({:.0} ms)",
                            m.suite, m.passed, m.instances, m.failed, m.budget_exceeded, m.millis
                        );
                    }
                }
                code = match (code, rep.exit_code() as u8) {
                    (1, _) | (_, 1) => 1,
                    (a, b) => a.max(b),
                };
            }
            Ok(code)
        }
        Command::Search { max_n, budget, seed, pairs, trials, families, format } => {
            let families = if families.is_empty() {
                PoolFamily::ALL.to_vec()
            } else {
                families
                    .iter()
                    .map(|f| serde_json::from_value(json!(f)).map_err(|_| usage(format!("unknown family {f:?}"))))
                    .collect::<Result<_, _>>()?
            };
            let mut cfg = SearchConfig { max_n, seed, pairs, draws: trials, families, ..SearchConfig::default() };
            if let Some(b) = budget {
                cfg.node_limit = b;
            }
            let rep = search_conjecture(&cfg);
            match format {
                Format::Json => out!("{}", serde_json::to_string(&rep).unwrap()),
                Format::Text => {
                    out!(
                        "pool {} graphs, {} pairs, {} sums, {} with Z != P, {} over budget",
                        rep.pool.len(),
                        rep.pairs,
                        rep.sums,
                        rep.counterexamples.len(),
                        rep.budget_exceeded
                    );
                    for c in &rep.counterexamples {
                        out!("  {} +({}~{}) {} = {}: Z = {}, P = {}", c.g, c.vg, c.vh, c.h, c.sum, c.z, c.p);
                    }
                    let p = &rep.probe;
                    out!(
                        "probe: {} minimum path covers over {} graphs, {} not forcing chains",
                        p.covers, p.graphs, p.covers_not_chains
                    );
                    for w in &p.witnesses {
                        out!("  {} {:?}", w.graph6, w.cover);
                    }
                }
            }
            Ok(0)
        }
        Command::Gen { spec, format } => {
            let spec: GenSpec = serde_json::from_str(&spec).map_err(usage)?;
            let g = spec.generate().map_err(usage)?;
            match format {
                GraphFormat::Graph6 => out!("{}", to_graph6(&g).map_err(usage)?),
                GraphFormat::Edges => out_raw!("{}", to_edge_list(&g)),
                GraphFormat::Json => out!("{}", json!({ "spec": spec, "n": g.n(), "edges": g.edges() })),
            }
            Ok(0)
        }
    }
}

fn read_graphs(input: Option<String>, g6: Option<String>) -> Result<Vec<Graph>, (u8, String)> {
    if let Some(s) = g6 {
        return Ok(vec![parse_graph6(&s).map_err(usage)?]);
    }
    let text = match input.as_deref() {
        None | Some("-") => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map_err(usage)?;
            s
        }
        Some(path) => fs::read_to_string(path).map_err(|e| usage(format!("{path}: {e}")))?,
    };
    parse_graphs(&text).map_err(usage)
}

/// Re-checks a certificate before it is printed.
fn certificate_ok(g: &Graph, r: &ParameterResult) -> bool {
    match r.parameter {
        Parameter::ZeroForcing => r.set().is_some_and(|s| s.len() == r.value && is_forcing_set(g, s, Rule::Standard)),
        Parameter::PsdForcing => r.set().is_some_and(|s| s.len() == r.value && is_forcing_set(g, s, Rule::Positive)),
        _ => r.cover().is_some_and(|c| c.len() == r.value && c.validate(g).is_ok()),
    }
}

fn compute(input: Option<String>, g6: Option<String>, params: &[String], budget: Option<u64>, dot: Option<String>, format: Format) -> Outcome {
    let params: Vec<Parameter> = params
        .iter()
        .map(|p| Parameter::from_symbol(p.trim()).ok_or_else(|| usage(format!("unknown parameter {p:?}"))))
        .collect::<Result<_, _>>()?;
    let graphs = read_graphs(input, g6)?;
    let mut cfg = SolverConfig::default();
    if let Some(b) = budget {
        cfg.node_limit = b;
    }
    let mut code = 0;
    for (i, g) in graphs.iter().enumerate() {
        let mut results = Vec::new();
        for &p in &params {
            match solve(g, p, &cfg) {
                Ok(r) => {
                    if !certificate_ok(g, &r) {
                        return Err((1, format!("certificate for {} failed re-verification", p.symbol())));
                    }
                    results.push(Ok(r));
                }
                Err(e @ SolveError::BudgetExceeded(_)) => {
                    code = BUDGET_EXCEEDED;
                    results.push(Err((p, e.to_string())));
                }
                Err(e) => return Err((1, e.to_string())),
            }
        }
        if i == 0 {
            if let (Some(path), Some(Ok(first))) = (&dot, results.first()) {
                let ann = DotAnnotations { black: first.set(), cover: first.cover() };
                fs::write(path, to_dot(g, ann)).map_err(|e| (1, format!("{path}: {e}")))?;
            }
        }
        let graph6 = to_graph6(g).unwrap_or_default();
        match format {
            Format::Json => {
                let rs: Vec<_> = results
                    .iter()
                    .map(|r| match r {
                        Ok(r) => json!(r),
                        Err((p, e)) => json!({ "parameter": p, "error": e }),
                    })
                    .collect();
                out!("{}", json!({ "graph6": graph6, "n": g.n(), "m": g.edge_count(), "results": rs }));
            }
            Format::Text => {
                out!("{graph6} (n = {}, m = {})", g.n(), g.edge_count());
                for r in &results {
                    match r {
                        Ok(r) => match (r.set(), r.cover()) {
                            (Some(s), _) => out!("  {} = {}  {:?}", r.parameter.symbol(), r.value, s),
                            (_, Some(c)) => out!("  {} = {}  {:?}", r.parameter.symbol(), r.value, c.parts),
                            _ => out!("  {} = {}", r.parameter.symbol(), r.value),
                        },
                        Err((p, e)) => out!("  {} : {e}", p.symbol()),
                    }
                }
            }
        }
    }
    Ok(code)
}
