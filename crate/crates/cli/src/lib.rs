//! Command-line front end for the `multithreshold` crate.
//!
//! Exit codes: 0 success or valid, 1 definitive negative, 2 input error,
//! 3 timeout.

pub mod experiments;

use std::io::Write;
use std::path::PathBuf;
use std::time::Duration;

use clap::{Args, Parser, Subcommand};
use multithreshold::representation::Discrepancy;
use multithreshold::solver::{
    decide_fixed_with, decide_k_with, default_k_max, theta_number_with, threshold_set_with,
    Outcome, Run, SearchConfig, SearchStats, ThetaResult,
};
use multithreshold::theorems::{tdim_bruteforce, TdimOutcome};
use multithreshold::{
    build_family, FamilySpec, Graph, RankAssignment, Representation, ThresholdVector,
};
use serde_json::{json, Value};

pub const EXIT_OK: u8 = 0;
pub const EXIT_NEGATIVE: u8 = 1;
pub const EXIT_INPUT: u8 = 2;
pub const EXIT_TIMEOUT: u8 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "mthresh",
    version,
    about = "Exact tools for multithreshold graphs"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Search time limit in seconds.
    #[arg(long, global = true, value_name = "SECONDS")]
    pub timeout: Option<f64>,
    /// Worker threads for the search.
    #[arg(long, global = true, default_value_t = 1)]
    pub workers: usize,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct GraphSource {
    /// Graph family, e.g. `pk2:3`, `pk3:2`, `kpartite:3,3`, `comp(pk2:2)`, `pk2:1+pk3:1`.
    #[arg(long, allow_hyphen_values = true)]
    pub family: Option<String>,
    /// Edge-list file: a header `n m`, then `m` lines `u v`.
    #[arg(long, value_name = "FILE")]
    pub edges: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a rank assignment against a graph and thresholds.
    Verify {
        #[command(flatten)]
        graph: GraphSource,
        /// Comma-separated increasing thresholds, e.g. `-1,1,5/2`.
        #[arg(long, allow_hyphen_values = true)]
        thetas: String,
        /// Comma-separated ranks, or `@FILE` to read them from a file.
        #[arg(long, allow_hyphen_values = true)]
        ranks: String,
    },
    /// Decide membership for fixed thresholds (`--thetas`) or a threshold count (`--k`).
    Decide {
        #[command(flatten)]
        graph: GraphSource,
        #[arg(
            long,
            allow_hyphen_values = true,
            conflicts_with = "k",
            required_unless_present = "k"
        )]
        thetas: Option<String>,
        #[arg(long)]
        k: Option<usize>,
    },
    /// The exact set of `t > 1` with the graph `(-1, 1, t)`-threshold.
    Tset {
        #[command(flatten)]
        graph: GraphSource,
    },
    /// The least number of thresholds that represents the graph.
    Theta {
        #[command(flatten)]
        graph: GraphSource,
        /// Largest threshold count tried; defaults to `C(n, 2) + 1`.
        #[arg(long)]
        kmax: Option<usize>,
    },
    /// Threshold dimension by exhaustive search (at most 7 vertices).
    Tdim {
        #[command(flatten)]
        graph: GraphSource,
        /// Give up above this many threshold graphs.
        #[arg(long, default_value_t = 7)]
        kmax: usize,
    },
    /// Run a registered experiment, or `all` of them in order.
    Experiment { claim: String },
}

/// An input problem; always reported with exit code 2.
#[derive(Debug)]
pub struct InputError(pub String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

pub fn load_graph(src: &GraphSource) -> Result<Graph, InputError> {
    match (&src.family, &src.edges) {
        (Some(f), None) => Ok(build_family(&f.parse::<FamilySpec>()?)?),
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| InputError(format!("{}: {e}", path.display())))?;
            Ok(Graph::parse_edge_list(&text)?)
        }
        _ => Err(InputError(
            "give exactly one of --family and --edges".into(),
        )),
    }
}

fn load_ranks(arg: &str) -> Result<RankAssignment, InputError> {
    match arg.strip_prefix('@') {
        Some(path) => {
            let text =
                std::fs::read_to_string(path).map_err(|e| InputError(format!("{path}: {e}")))?;
            // commas, spaces and newlines all separate ranks in a file
            let items: Vec<&str> = text
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|s| !s.is_empty())
                .collect();
            Ok(items.join(",").parse()?)
        }
        None => Ok(arg.parse()?),
    }
}

impl Cli {
    pub fn config(&self) -> Result<SearchConfig, InputError> {
        let timeout = match self.timeout {
            Some(s) if !(s.is_finite() && s >= 0.0) => {
                return Err(InputError(format!(
                    "timeout must be a nonnegative number of seconds, got {s}"
                )))
            }
            Some(s) => Some(Duration::from_secs_f64(s)),
            None => None,
        };
        if self.workers == 0 {
            return Err(InputError("--workers must be at least 1".into()));
        }
        Ok(SearchConfig {
            timeout,
            workers: self.workers,
            symmetry_breaking: true,
        })
    }
}

fn witness_json(rep: &Representation) -> Value {
    serde_json::to_value(rep.to_json()).expect("representation serializes")
}

fn stats_json(stats: &SearchStats) -> Value {
    serde_json::to_value(stats).expect("stats serialize")
}

fn discrepancy_json(d: &Discrepancy) -> Value {
    match d {
        Discrepancy::RankCount { expected, found } => json!({
            "kind": "rank_count",
            "expected": expected,
            "found": found,
        }),
        Discrepancy::Pair {
            u,
            v,
            weight,
            interval,
            is_edge,
        } => json!({
            "kind": "pair",
            "pair": [u, v],
            "weight": weight,
            "interval": interval,
            "is_edge": is_edge,
        }),
    }
}

fn print_stats(err: &mut dyn Write, stats: &SearchStats) {
    let _ = writeln!(
        err,
        "nodes={} lp_calls={} max_depth={} leaves={} wall_time_ms={}",
        stats.nodes,
        stats.lp_calls,
        stats.max_depth,
        stats.leaves,
        stats.wall_time.as_millis()
    );
}

/// Runs one parsed command line. Normal output goes to `out`, diagnostics
/// and search statistics to `err`. Returns the exit code.
pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> u8 {
    match dispatch(cli, out, err) {
        Ok(code) => code,
        Err(InputError(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_INPUT
        }
    }
}

fn dispatch(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<u8, InputError> {
    let cfg = cli.config()?;
    match &cli.command {
        Command::Verify {
            graph,
            thetas,
            ranks,
        } => {
            let g = load_graph(graph)?;
            let th: ThresholdVector = thetas.parse()?;
            let r = load_ranks(ranks)?;
            let result = multithreshold::representation::verify(&g, &th, &r);
            if cli.json {
                let v = match &result {
                    Ok(()) => json!({ "valid": true }),
                    Err(d) => json!({ "valid": false, "discrepancy": discrepancy_json(d) }),
                };
                writeln!(out, "{v}")?;
            } else {
                match &result {
                    Ok(()) => writeln!(out, "valid")?,
                    Err(d) => writeln!(out, "invalid: {d}")?,
                }
            }
            Ok(if result.is_ok() {
                EXIT_OK
            } else {
                EXIT_NEGATIVE
            })
        }
        Command::Decide { graph, thetas, k } => {
            let g = load_graph(graph)?;
            let run = match (thetas, k) {
                (Some(t), None) => decide_fixed_with(&g, &t.parse()?, &cfg),
                (None, Some(k)) => decide_k_with(&g, *k, &cfg),
                _ => return Err(InputError("give exactly one of --thetas and --k".into())),
            };
            report_decision(cli.json, run, out, err)
        }
        Command::Tset { graph } => {
            let g = load_graph(graph)?;
            let Run { outcome, stats } = threshold_set_with(&g, &cfg);
            let (code, set) = match &outcome {
                Outcome::Complete(s) if s.is_empty() => (EXIT_NEGATIVE, Some(s)),
                Outcome::Complete(s) => (EXIT_OK, Some(s)),
                Outcome::TimedOut => (EXIT_TIMEOUT, None),
            };
            if cli.json {
                let v = json!({
                    "outcome": if set.is_some() { "complete" } else { "timeout" },
                    "set": set,
                    "display": set.map(|s| s.to_string()),
                    "stats": stats_json(&stats),
                });
                writeln!(out, "{v}")?;
            } else {
                match set {
                    Some(s) => writeln!(out, "{s}")?,
                    None => writeln!(out, "timeout")?,
                }
                print_stats(err, &stats);
            }
            Ok(code)
        }
        Command::Theta { graph, kmax } => {
            let g = load_graph(graph)?;
            let cap = kmax.unwrap_or_else(|| default_k_max(&g));
            let Run { outcome, stats } = theta_number_with(&g, cap, &cfg);
            let code = match &outcome {
                Outcome::Complete(ThetaResult::Exact { .. }) => EXIT_OK,
                Outcome::Complete(ThetaResult::ExceedsCap { .. }) => EXIT_NEGATIVE,
                Outcome::TimedOut => EXIT_TIMEOUT,
            };
            if cli.json {
                let v = match &outcome {
                    Outcome::Complete(ThetaResult::Exact { theta, witness }) => json!({
                        "outcome": "exact",
                        "theta": theta,
                        "witness": witness_json(witness),
                        "stats": stats_json(&stats),
                    }),
                    Outcome::Complete(ThetaResult::ExceedsCap { cap }) => json!({
                        "outcome": "exceeds_cap",
                        "cap": cap,
                        "stats": stats_json(&stats),
                    }),
                    Outcome::TimedOut => {
                        json!({ "outcome": "timeout", "stats": stats_json(&stats) })
                    }
                };
                writeln!(out, "{v}")?;
            } else {
                match &outcome {
                    Outcome::Complete(ThetaResult::Exact { theta, witness }) => {
                        writeln!(out, "{theta}")?;
                        writeln!(out, "thresholds: {}", witness.thresholds())?;
                        writeln!(out, "ranks: {:?}", witness.ranks())?;
                    }
                    Outcome::Complete(ThetaResult::ExceedsCap { cap }) => {
                        writeln!(out, "exceeds cap {cap}")?
                    }
                    Outcome::TimedOut => writeln!(out, "timeout")?,
                }
                print_stats(err, &stats);
            }
            Ok(code)
        }
        Command::Tdim { graph, kmax } => {
            let g = load_graph(graph)?;
            let result = tdim_bruteforce(&g, *kmax)?;
            if cli.json {
                writeln!(
                    out,
                    "{}",
                    serde_json::to_value(result).expect("outcome serializes")
                )?;
            } else {
                match result {
                    TdimOutcome::Exact(d) => writeln!(out, "{d}")?,
                    TdimOutcome::ExceedsLimit(l) => writeln!(out, "exceeds limit {l}")?,
                }
            }
            Ok(match result {
                TdimOutcome::Exact(_) => EXIT_OK,
                TdimOutcome::ExceedsLimit(_) => EXIT_NEGATIVE,
            })
        }
        Command::Experiment { claim } => {
            let selected = experiments::select(claim).map_err(InputError)?;
            let mut code = EXIT_OK;
            for exp in selected {
                let report = exp.run(&cfg);
                if cli.json {
                    writeln!(
                        out,
                        "{}",
                        serde_json::to_string(&report).expect("report serializes")
                    )?;
                } else {
                    writeln!(out, "{report}")?;
                }
                code = code.max(report.exit_code());
            }
            Ok(code)
        }
    }
}

fn report_decision(
    json: bool,
    run: Run<Option<Representation>>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<u8, InputError> {
    let Run { outcome, stats } = run;
    let (label, code, witness) = match &outcome {
        Outcome::Complete(Some(rep)) => ("feasible", EXIT_OK, Some(rep)),
        Outcome::Complete(None) => ("infeasible", EXIT_NEGATIVE, None),
        Outcome::TimedOut => ("timeout", EXIT_TIMEOUT, None),
    };
    if json {
        let v = json!({
            "outcome": label,
            "witness": witness.map(witness_json),
            "stats": stats_json(&stats),
        });
        writeln!(out, "{v}")?;
    } else {
        writeln!(out, "{label}")?;
        if let Some(rep) = witness {
            writeln!(out, "thresholds: {}", rep.thresholds())?;
            writeln!(out, "ranks: {:?}", rep.ranks())?;
        }
        print_stats(err, &stats);
    }
    Ok(code)
}
