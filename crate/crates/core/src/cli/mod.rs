//! Command-line front end. Every subcommand reads an instance file and
//! prints one JSON document on standard output.
//!
//! Exit codes: 0 on success, 1 for usage, parse or input errors, 2 when a
//! checked property fails.

pub mod instance;
pub mod verify;

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::convexity::{directional_derivative, is_gateaux, sandwich, witness_discontinuity, witness_epsilons, Side};
use crate::error::Error;
use crate::graph::Graph;
use crate::measure::Potential;
use crate::optimize::{beta, critical_graph, second_gap};
use crate::rational::{format_rational, parse_rational, Rational};
use crate::recode::{higher_block_recode, periodic_block_beta, admissible_blocks};
use crate::typicality::{build_hyperplanes, covering_check, monte_carlo, perturb_to_unique, usc_inclusion_check};

pub use instance::{parse_direction, parse_instance, parse_instance_str, serialize_instance, Instance, InstanceError};

#[derive(Debug, Parser)]
#[command(name = "ergodic-opt", version, about = "Exact ergodic optimization on finite edge shifts")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Monte Carlo trials.
    #[arg(long, global = true, default_value_t = 10_000)]
    trials: u64,
    #[arg(long, global = true, default_value_t = 7)]
    seed: u64,
    /// Sample weights are uniform on {-bound..=bound}/bound.
    #[arg(long, global = true, default_value_t = 1 << 30)]
    bound: u64,
    /// Perturbation radius for `perturb`.
    #[arg(long, global = true, default_value = "1/10")]
    eps: String,
    /// Perturbation radius for `usc` (default: a quarter of the gap).
    #[arg(long, global = true)]
    delta: Option<String>,
    /// Step for `sandwich`.
    #[arg(long, global = true, default_value = "1")]
    tau: String,
    /// Direction potential file for `derivative` and `sandwich`
    /// (default: every coordinate direction).
    #[arg(long, global = true)]
    dir: Option<PathBuf>,
    /// Block length for `recode` (default: inferred from the block table).
    #[arg(long, global = true)]
    k: Option<usize>,
    /// Samples for `usc`.
    #[arg(long, global = true, default_value_t = 100)]
    samples: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Maximum ergodic average.
    Beta { instance: PathBuf },
    /// Critical graph: edges carrying the maximizing measures.
    Critical { instance: PathBuf },
    /// Whether the maximizing measure is unique.
    Unique { instance: PathBuf },
    /// One-sided directional derivatives of beta.
    Derivative { instance: PathBuf },
    /// Difference-quotient sandwich at step --tau.
    Sandwich { instance: PathBuf },
    /// Direction along which the maximizing set jumps.
    Witness { instance: PathBuf },
    /// Hyperplanes from pairs of cycle measures.
    Hyperplanes { instance: PathBuf },
    /// Whether the potential is unique or covered by an active hyperplane.
    Covering { instance: PathBuf },
    /// Tie frequency of random potentials.
    Montecarlo { instance: PathBuf },
    /// Nearby potential with a unique maximizing measure.
    Perturb { instance: PathBuf },
    /// Critical-graph inclusion under perturbations below half the gap.
    Usc { instance: PathBuf },
    /// Higher-block recoding of the instance's block table.
    Recode { instance: PathBuf },
    /// Full property suite on the instance.
    Verify { instance: PathBuf },
}

impl Command {
    fn instance(&self) -> &Path {
        match self {
            Command::Beta { instance }
            | Command::Critical { instance }
            | Command::Unique { instance }
            | Command::Derivative { instance }
            | Command::Sandwich { instance }
            | Command::Witness { instance }
            | Command::Hyperplanes { instance }
            | Command::Covering { instance }
            | Command::Montecarlo { instance }
            | Command::Perturb { instance }
            | Command::Usc { instance }
            | Command::Recode { instance }
            | Command::Verify { instance } => instance,
        }
    }
}

enum Failure {
    Usage(String),
    Violation(String),
}

impl From<InstanceError> for Failure {
    fn from(e: InstanceError) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Internal(_) => Failure::Violation(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

/// (document, whether every checked property held)
type Outcome = Result<(Value, bool), Failure>;

/// Parses `argv` (including the program name), runs the subcommand and
/// writes its JSON result to `out`. Returns the process exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    0
                }
                _ => {
                    let _ = write!(err, "{e}");
                    1
                }
            };
        }
    };
    match dispatch(&cli) {
        Ok((doc, ok)) => {
            let _ = writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("json"));
            if ok { 0 } else { 2 }
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "{}", json!({ "error": msg }));
            1
        }
        Err(Failure::Violation(msg)) => {
            let _ = writeln!(err, "{}", json!({ "violation": msg }));
            2
        }
    }
}

fn arg_rational(name: &str, text: &str) -> Result<Rational, Failure> {
    parse_rational(text).map_err(|e| Failure::Usage(format!("--{name}: {e}")))
}

fn edge_ids(graph: &Graph, edges: impl IntoIterator<Item = usize>) -> Vec<String> {
    edges.into_iter().map(|e| graph.edge(e).id.clone()).collect()
}

fn r(value: &Rational) -> Value {
    Value::String(format_rational(value))
}

/// Directions from --dir, or one per edge.
fn directions(cli: &Cli, graph: &Graph) -> Result<Vec<(String, Potential)>, Failure> {
    Ok(match &cli.dir {
        Some(path) => vec![(path.display().to_string(), parse_direction(path, graph)?)],
        None => (0..graph.edge_count())
            .map(|e| (graph.edge(e).id.clone(), Potential::axis(graph.edge_count(), e)))
            .collect(),
    })
}

fn dispatch(cli: &Cli) -> Outcome {
    let Format::Json = cli.format;
    let inst = parse_instance(cli.command.instance())?;
    let (graph, f) = (&inst.graph, &inst.potential);
    match &cli.command {
        Command::Beta { .. } => Ok((json!({ "beta": r(&beta(graph, f)?) }), true)),
        Command::Critical { .. } => {
            let c = critical_graph(graph, f)?;
            Ok((json!({ "beta": r(c.beta()), "edges": edge_ids(graph, c.edge_set()) }), true))
        }
        Command::Unique { .. } => {
            let c = critical_graph(graph, f)?;
            Ok((json!({ "unique": c.is_single_cycle(graph), "beta": r(c.beta()) }), true))
        }
        Command::Derivative { .. } => {
            let mut rows = Vec::new();
            let mut smooth = true;
            for (name, g) in directions(cli, graph)? {
                let left = directional_derivative(graph, f, &g, Side::Left)?;
                let right = directional_derivative(graph, f, &g, Side::Right)?;
                smooth &= left == right;
                rows.push(json!({ "direction": name, "left": r(&left), "right": r(&right) }));
            }
            let mut doc = json!({ "directions": rows, "differentiable": smooth });
            if cli.dir.is_none() {
                doc["gateaux"] = json!(is_gateaux(graph, f)?);
            }
            Ok((doc, true))
        }
        Command::Sandwich { .. } => {
            let tau = arg_rational("tau", &cli.tau)?;
            let mut rows = Vec::new();
            let mut all = true;
            for (name, g) in directions(cli, graph)? {
                let s = sandwich(graph, f, &g, &tau)?;
                all &= s.holds();
                rows.push(json!({
                    "direction": name, "lower": r(&s.lower), "quotient": r(&s.quotient),
                    "upper": r(&s.upper), "holds": s.holds(),
                }));
            }
            Ok((json!({ "tau": r(&tau), "directions": rows, "holds": all }), all))
        }
        Command::Witness { .. } => {
            let w = witness_discontinuity(graph, f)?;
            Ok((
                json!({
                    "direction": instance::potential_map(graph, &w.direction),
                    "retained_cycle": edge_ids(graph, w.retained.cycle.iter().copied()),
                    "excluded_cycle": edge_ids(graph, w.excluded.cycle.iter().copied()),
                    "epsilons_checked": witness_epsilons().len(),
                }),
                true,
            ))
        }
        Command::Hyperplanes { .. } => {
            let planes = build_hyperplanes(graph)?;
            let normals: Vec<Vec<String>> =
                planes.iter().map(|p| p.normal.iter().map(format_rational).collect()).collect();
            Ok((json!({ "count": planes.len(), "normals": normals }), true))
        }
        Command::Covering { .. } => {
            let covered = covering_check(graph, f)?;
            let unique = critical_graph(graph, f)?.is_single_cycle(graph);
            Ok((json!({ "covered": covered, "unique": unique }), covered))
        }
        Command::Montecarlo { .. } => {
            let report = monte_carlo(graph, cli.trials, cli.seed, cli.bound)?;
            let ok = report.covering_violations == 0;
            Ok((serde_json::to_value(&report).expect("report serializes"), ok))
        }
        Command::Perturb { .. } => {
            let eps = arg_rational("eps", &cli.eps)?;
            let p = perturb_to_unique(graph, f, &eps, cli.seed)?;
            Ok((
                json!({
                    "potential": instance::potential_map(graph, &p.potential),
                    "draws": p.draws,
                    "eps": r(&eps),
                }),
                true,
            ))
        }
        Command::Usc { .. } => {
            let gap = second_gap(graph, f)?.ok_or(Error::GapUndefined)?;
            let delta = match &cli.delta {
                Some(text) => arg_rational("delta", text)?,
                None => &gap / Rational::from_integer(4.into()),
            };
            let holds = usc_inclusion_check(graph, f, &delta, cli.samples, cli.seed)?;
            Ok((
                json!({ "gap": r(&gap), "delta": r(&delta), "samples": cli.samples, "holds": holds }),
                holds,
            ))
        }
        Command::Recode { .. } => {
            let table = inst
                .blocks
                .as_ref()
                .ok_or_else(|| Failure::Usage("instance has no \"blocks\" table".into()))?;
            let inferred = table.keys().next().map(Vec::len).unwrap_or(0);
            let k = cli.k.unwrap_or(inferred);
            if k != inferred {
                return Err(Failure::Usage(format!("--k {k} does not match block length {inferred}")));
            }
            let (recoded, potential) = higher_block_recode(graph, table, k)?;
            let b = beta(&recoded, &potential)?;
            let states = admissible_blocks(graph, k - 1).len();
            let oracle = if states <= verify::ORACLE_STATE_LIMIT {
                Some(periodic_block_beta(graph, table, k, states)?)
            } else {
                None
            };
            let mut doc = instance::instance_value(&Instance { graph: recoded, potential, blocks: None });
            doc["beta"] = r(&b);
            doc["k"] = json!(k);
            doc["oracle_beta"] = oracle.as_ref().map_or(Value::Null, r);
            Ok((doc, oracle.is_none_or(|o| o == b)))
        }
        Command::Verify { .. } => {
            let checks = verify::verify_instance(&inst, cli.seed);
            let ok = checks.iter().all(|c| c.status != verify::Status::Fail);
            Ok((json!({ "ok": ok, "checks": checks }), ok))
        }
    }
}
