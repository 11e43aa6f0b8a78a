//! Command-line surface: argument parsing, validation into a [`RunConfig`],
//! and rendering of every engine's report as text or JSON.

use std::fmt::Write as _;
use std::path::Path;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::forcing::{ccr_closure, zero_forcing_number, zero_forcing_number_with_symmetry};
use crate::graph::{emit_graph6, enumerate, parse_edge_list, parse_graph6, Graph};
use crate::metrics::{p_a, p_j, t_mass_sequence};
use crate::monte_carlo::{estimate_absorption_time, estimate_p_a};
use crate::rational::{self, fraction, to_f64, Rational};
use crate::state_space::{absorption_analysis, reachable_states, LayeredSpace};
use crate::vertex_set::VertexSet;

#[derive(Debug, Parser)]
#[command(name = "pzf", version, about = "Probabilistic zero forcing on graphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GraphArgs {
    /// `path:N`, `cycle:N`, `star:M`, `complete:N`, `g6:<graph6>`, or a file
    /// (graph6 if it ends in `.g6`, an edge list otherwise)
    #[arg(long)]
    pub graph: String,
    /// Emit JSON instead of a table
    #[arg(long)]
    pub json: bool,
    /// Worker threads (default: available parallelism)
    #[arg(long, env = "PZF_WORKERS")]
    pub workers: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Zero forcing number and the lexicographically least minimum set
    Zf {
        #[command(flatten)]
        g: GraphArgs,
        /// Skip candidates equivalent under graph automorphisms (orders <= 9)
        #[arg(long)]
        symmetry: bool,
    },
    /// Classical closure of a black set
    Closure {
        #[command(flatten)]
        g: GraphArgs,
        /// Initial black set: comma-separated labels or indices
        #[arg(long, alias = "initial")]
        seed: String,
    },
    /// Exact P_A(G) for one seed set
    Pzf {
        #[command(flatten)]
        g: GraphArgs,
        #[arg(long, alias = "initial")]
        seed: String,
        /// Also report P^(k)(T^k) for k0 <= k <= k0 + D
        #[arg(long, value_name = "D")]
        diagnostic: Option<usize>,
    },
    /// Exact P_(j)(G) and every maximizing seed set
    Pj {
        #[command(flatten)]
        g: GraphArgs,
        #[arg(long)]
        j: usize,
    },
    /// Layered sample spaces up to step k (JSON mode: one line per state)
    Spaces {
        #[command(flatten)]
        g: GraphArgs,
        #[arg(long, alias = "initial")]
        seed: String,
        #[arg(long)]
        k: usize,
    },
    /// Reachable-state chain and absorption analysis
    Chain {
        #[command(flatten)]
        g: GraphArgs,
        #[arg(long, alias = "initial")]
        seed: String,
        #[arg(long, default_value = "1e-6")]
        epsilon: String,
        #[arg(long, default_value_t = 200)]
        max_k: usize,
        /// Print the chain as a Graphviz digraph instead
        #[arg(long)]
        dot: bool,
    },
    /// Monte Carlo estimate of P_A(G)
    Mc {
        #[command(flatten)]
        g: GraphArgs,
        /// Initial black set
        #[arg(long)]
        initial: String,
        /// Master random seed (required with --json)
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 100_000)]
        trials: u64,
    },
    /// Monte Carlo estimate of the absorption time
    McAbsorb {
        #[command(flatten)]
        g: GraphArgs,
        #[arg(long)]
        initial: String,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 100_000)]
        trials: u64,
        #[arg(long, default_value_t = 1000)]
        round_cap: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputMode {
    Table,
    Json,
}

/// A validated invocation.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub graph: Graph,
    pub output: OutputMode,
    pub workers: Option<usize>,
    pub task: Task,
}

#[derive(Debug, Clone)]
pub enum Task {
    Zf {
        symmetry: bool,
    },
    Closure {
        seed: VertexSet,
    },
    Pzf {
        seed: VertexSet,
        diagnostic: Option<usize>,
    },
    Pj {
        j: usize,
    },
    Spaces {
        seed: VertexSet,
        k: usize,
    },
    Chain {
        seed: VertexSet,
        epsilon: Rational,
        max_k: usize,
        dot: bool,
    },
    Mc {
        seed: VertexSet,
        master_seed: u64,
        trials: u64,
    },
    McAbsorb {
        seed: VertexSet,
        master_seed: u64,
        trials: u64,
        round_cap: usize,
    },
}

/// Resolves a graph argument.
pub fn load_graph(spec: &str) -> Result<Graph> {
    if let Some(g6) = spec.strip_prefix("g6:") {
        return parse_graph6(g6);
    }
    if let Some((family, size)) = spec.split_once(':') {
        let builder: Option<fn(usize) -> Result<Graph>> = match family {
            "path" => Some(Graph::path),
            "cycle" => Some(Graph::cycle),
            "star" => Some(Graph::star),
            "complete" => Some(Graph::complete),
            _ => None,
        };
        if let Some(build) = builder {
            let n = size
                .parse()
                .map_err(|_| Error::InvalidArgument(format!("bad size in '{spec}'")))?;
            return build(n);
        }
    }
    let path = Path::new(spec);
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidArgument(format!("cannot read graph '{spec}': {e}")))?;
    if path.extension().is_some_and(|e| e == "g6") {
        let line = text.lines().find(|l| !l.trim().is_empty()).unwrap_or("");
        parse_graph6(line)
    } else {
        parse_edge_list(&text)
    }
}

/// Comma-separated labels or indices; an empty string is the empty set.
pub fn parse_seed(g: &Graph, spec: &str) -> Result<VertexSet> {
    let names: Vec<&str> = spec
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .collect();
    g.set_from_labels(&names)
}

fn nonempty(s: VertexSet) -> Result<VertexSet> {
    if s.is_empty() {
        Err(Error::EmptySeed)
    } else {
        Ok(s)
    }
}

impl Command {
    fn graph_args(&self) -> &GraphArgs {
        match self {
            Command::Zf { g, .. }
            | Command::Closure { g, .. }
            | Command::Pzf { g, .. }
            | Command::Pj { g, .. }
            | Command::Spaces { g, .. }
            | Command::Chain { g, .. }
            | Command::Mc { g, .. }
            | Command::McAbsorb { g, .. } => g,
        }
    }
}

impl RunConfig {
    pub fn from_cli(cli: Cli) -> Result<RunConfig> {
        let ga = cli.command.graph_args();
        if ga.workers == Some(0) {
            return Err(Error::InvalidArgument("workers must be at least 1".into()));
        }
        let json = ga.json;
        let graph = load_graph(&ga.graph)?;
        let g = &graph;
        let task = match &cli.command {
            Command::Zf { symmetry, .. } => Task::Zf {
                symmetry: *symmetry,
            },
            Command::Closure { seed, .. } => Task::Closure {
                seed: parse_seed(g, seed)?,
            },
            Command::Pzf {
                seed, diagnostic, ..
            } => Task::Pzf {
                seed: parse_seed(g, seed)?,
                diagnostic: *diagnostic,
            },
            Command::Pj { j, .. } => Task::Pj { j: *j },
            Command::Spaces { seed, k, .. } => Task::Spaces {
                seed: parse_seed(g, seed)?,
                k: *k,
            },
            Command::Chain {
                seed,
                epsilon,
                max_k,
                dot,
                ..
            } => {
                let epsilon = rational::parse(epsilon)?;
                if epsilon <= Rational::from_integer(0.into()) {
                    return Err(Error::InvalidArgument("epsilon must be positive".into()));
                }
                Task::Chain {
                    seed: nonempty(parse_seed(g, seed)?)?,
                    epsilon,
                    max_k: *max_k,
                    dot: *dot,
                }
            }
            Command::Mc {
                initial,
                seed,
                trials,
                ..
            } => Task::Mc {
                seed: nonempty(parse_seed(g, initial)?)?,
                master_seed: master_seed(*seed, json)?,
                trials: positive(*trials, "trials")?,
            },
            Command::McAbsorb {
                initial,
                seed,
                trials,
                round_cap,
                ..
            } => Task::McAbsorb {
                seed: nonempty(parse_seed(g, initial)?)?,
                master_seed: master_seed(*seed, json)?,
                trials: positive(*trials, "trials")?,
                round_cap: positive(*round_cap as u64, "round cap")? as usize,
            },
        };
        Ok(RunConfig {
            output: if json {
                OutputMode::Json
            } else {
                OutputMode::Table
            },
            workers: ga.workers,
            graph,
            task,
        })
    }
}

fn master_seed(seed: Option<u64>, json: bool) -> Result<u64> {
    match (seed, json) {
        (Some(s), _) => Ok(s),
        (None, false) => Ok(0),
        (None, true) => Err(Error::InvalidArgument(
            "randomized commands require an explicit --seed in JSON mode".into(),
        )),
    }
}

fn positive(v: u64, what: &str) -> Result<u64> {
    if v == 0 {
        Err(Error::InvalidArgument(format!("{what} must be at least 1")))
    } else {
        Ok(v)
    }
}

fn set_str(g: &Graph, s: &VertexSet) -> String {
    format!("{{{}}}", g.labels_of(s).join(", "))
}

fn exact(r: &Rational) -> String {
    format!("{} ({})", fraction(r), to_f64(r))
}

fn json_line<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string(v).expect("serializable report");
    s.push('\n');
    s
}

#[derive(Serialize)]
struct ZfJson {
    graph: String,
    zero_forcing_number: usize,
    set: Vec<String>,
}

#[derive(Serialize)]
struct WithGraph<T: Serialize> {
    graph: String,
    #[serde(flatten)]
    report: T,
}

/// Runs a validated configuration and returns what goes to stdout.
pub fn run(cfg: &RunConfig) -> Result<String> {
    match cfg.workers {
        Some(w) => rayon::ThreadPoolBuilder::new()
            .num_threads(w)
            .build()
            .map_err(|e| Error::Internal(format!("thread pool: {e}")))?
            .install(|| execute(cfg)),
        None => execute(cfg),
    }
}

fn execute(cfg: &RunConfig) -> Result<String> {
    let g = &cfg.graph;
    let json = cfg.output == OutputMode::Json;
    let mut out = String::new();
    match &cfg.task {
        Task::Zf { symmetry } => {
            let (z, set) = if *symmetry {
                zero_forcing_number_with_symmetry(g, &enumerate::automorphisms(g)?)?
            } else {
                zero_forcing_number(g)?
            };
            if json {
                out = json_line(&ZfJson {
                    graph: emit_graph6(g),
                    zero_forcing_number: z,
                    set: g.labels_of(&set),
                });
            } else {
                writeln!(out, "Z(G) = {z}").unwrap();
                writeln!(out, "minimum zero forcing set: {}", set_str(g, &set)).unwrap();
            }
        }
        Task::Closure { seed } => {
            let r = ccr_closure(g, seed);
            if json {
                out = json_line(&WithGraph {
                    graph: emit_graph6(g),
                    report: r.to_json(g),
                });
            } else {
                writeln!(out, "final black: {}", set_str(g, &r.final_black)).unwrap();
                writeln!(out, "zero forcing: {}", r.final_black.is_full()).unwrap();
                for (u, v) in &r.forcing_sequence {
                    writeln!(out, "  {} -> {}", g.label(*u), g.label(*v)).unwrap();
                }
            }
        }
        Task::Pzf { seed, diagnostic } => {
            let o = p_a(g, seed)?;
            let diag = match (diagnostic, o.k0) {
                (Some(d), Some(_)) => Some(t_mass_sequence(g, seed, *d)?),
                _ => None,
            };
            if json {
                out = json_line(&o.to_json(g, diag.as_deref()));
            } else {
                writeln!(out, "seed: {}", set_str(g, seed)).unwrap();
                match o.k0 {
                    Some(k) => writeln!(out, "k0 = {k}").unwrap(),
                    None => writeln!(out, "k0 = undefined (empty seed)").unwrap(),
                }
                writeln!(out, "p_A = {}", exact(&o.p_a)).unwrap();
                writeln!(out, "T^k0 states: {}", o.t_k0_states.len()).unwrap();
                for (s, p) in &o.t_k0_states {
                    writeln!(out, "  {:<40} {}", set_str(g, s), fraction(p)).unwrap();
                }
                for (k, m) in diag.iter().flatten() {
                    writeln!(out, "P^({k})(T^{k}) = {}", exact(m)).unwrap();
                }
            }
        }
        Task::Pj { j } => {
            let r = p_j(g, *j)?;
            if json {
                out = json_line(&r.to_json(g));
            } else {
                writeln!(out, "P_({j}) = {}", exact(&r.p_j)).unwrap();
                let seeds: Vec<_> = r.argmax_seeds.iter().map(|s| set_str(g, s)).collect();
                writeln!(out, "argmax: {}", seeds.join(" ")).unwrap();
                writeln!(out, "evaluated: {}", r.evaluated_count).unwrap();
            }
        }
        Task::Spaces { seed, k } => {
            let mut space = LayeredSpace::new(g, seed.clone())?;
            space.expand_to(*k);
            if json {
                for rec in space.records() {
                    out.push_str(&json_line(&rec));
                }
            } else {
                for (step, layer) in space.layers().iter().enumerate() {
                    writeln!(out, "S^{step}: {} states", layer.len()).unwrap();
                    for (s, p) in layer.iter() {
                        writeln!(out, "  {:<40} {}", set_str(g, s), fraction(p)).unwrap();
                    }
                }
            }
        }
        Task::Chain {
            seed,
            epsilon,
            max_k,
            dot,
        } => {
            let ts = reachable_states(g, seed)?;
            if *dot {
                return Ok(ts.to_dot(g));
            }
            let report = absorption_analysis(&ts, epsilon, *max_k)?;
            if json {
                out = json_line(&report.to_json(g, &ts));
            } else {
                writeln!(out, "reachable states: {}", ts.len()).unwrap();
                writeln!(
                    out,
                    "expected rounds to all black = {}",
                    exact(&report.expected_steps)
                )
                .unwrap();
                let (k, p) = report
                    .step_probabilities
                    .last()
                    .expect("k = 0 is always recorded");
                match report.confirmed_at() {
                    Some(_) => writeln!(
                        out,
                        "P^({k})(all black) >= 1 - {}: confirmed",
                        fraction(epsilon)
                    ),
                    None => writeln!(out, "not confirmed within {max_k} rounds"),
                }
                .unwrap();
                writeln!(out, "P^({k})(all black) ~ {}", to_f64(p)).unwrap();
            }
        }
        Task::Mc {
            seed,
            master_seed,
            trials,
        } => {
            let e = estimate_p_a(g, seed, *trials, *master_seed)?;
            if json {
                out = json_line(&WithGraph {
                    graph: emit_graph6(g),
                    report: e,
                });
            } else {
                writeln!(out, "seed: {}  k0 = {}", set_str(g, seed), e.k0).unwrap();
                writeln!(out, "p_A ~ {} ({} / {})", e.point, e.successes, e.trials).unwrap();
                writeln!(out, "95% Wilson interval: [{}, {}]", e.ci_low, e.ci_high).unwrap();
                writeln!(out, "master seed: {}", e.master_seed).unwrap();
            }
        }
        Task::McAbsorb {
            seed,
            master_seed,
            trials,
            round_cap,
        } => {
            let e = estimate_absorption_time(g, seed, *trials, *master_seed, *round_cap)?;
            if json {
                out = json_line(&WithGraph {
                    graph: emit_graph6(g),
                    report: e,
                });
            } else {
                let show = |x: Option<f64>| x.map_or("n/a".to_string(), |v| v.to_string());
                writeln!(
                    out,
                    "absorbed: {} / {} (capped {})",
                    e.absorbed, e.trials, e.capped
                )
                .unwrap();
                writeln!(out, "mean rounds: {}", show(e.mean_rounds)).unwrap();
                writeln!(out, "std rounds: {}", show(e.std_rounds)).unwrap();
                for (r, n) in &e.histogram {
                    writeln!(out, "  {r:>4} {n}").unwrap();
                }
                writeln!(out, "master seed: {}", e.master_seed).unwrap();
            }
        }
    }
    Ok(out)
}

/// Single-line machine-parsable error record.
pub fn error_line(kind: &str, code: i32, message: &str) -> String {
    serde_json::json!({ "error": kind, "code": code, "message": message }).to_string()
}
