//! Command-line front end.
//!
//! Exit codes: 0 completed (or match found), 1 negative decision from
//! `match` / `oracle`, 2 usage error, 3 runtime error.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Duration;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::bench::{evaluate, scaling_probe, success_rate, ScalingConfig, Solver};
use crate::datagen::{build_dataset, GenConfig};
use crate::dataset::{read_dataset, write_dataset};
use crate::filter::{run_filter, CheckMode, FilterConfig, StepMode};
use crate::graph::{parse_edge_list, Graph};
use crate::oracle::{vf2_search, SearchOptions, SearchOutcome};
use crate::Semantics;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RUNTIME: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "subtree-match", version, about = "Subgraph matching filter and tooling")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate an oracle-labelled synthetic dataset.
    Gen {
        /// JSON generation config; omitted fields take their defaults.
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run the filter on one target/query pair.
    Match {
        #[arg(long)]
        target: PathBuf,
        #[arg(long)]
        query: PathBuf,
        #[command(flatten)]
        filter: FilterArgs,
        /// Write the full match report as JSON.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Decide containment exactly with the backtracking search.
    Oracle {
        #[arg(long)]
        target: PathBuf,
        #[arg(long)]
        query: PathBuf,
        #[arg(long, value_enum, default_value = "mono")]
        semantics: Semantics,
        #[arg(long, default_value_t = 60_000)]
        budget_ms: u64,
    },
    /// Evaluate the filter on a dataset.
    Bench {
        #[arg(long)]
        dataset: PathBuf,
        #[command(flatten)]
        filter: FilterArgs,
        #[arg(long)]
        report: Option<PathBuf>,
        /// Also measure filter and oracle success rates under this budget.
        #[arg(long)]
        budget_ms: Option<u64>,
        /// Keep wall-clock measurements in the report file.
        #[arg(long)]
        with_timings: bool,
    },
    /// Time the filter on targets of growing size.
    Scaling {
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 6.0)]
        mean_degree: f64,
        #[arg(long, default_value_t = 15)]
        query_size: usize,
        #[arg(long, default_value_t = 3)]
        instances: usize,
        #[arg(long, default_value_t = 3)]
        repeats: usize,
        #[command(flatten)]
        filter: FilterArgs,
        #[arg(long)]
        report: Option<PathBuf>,
        #[arg(long)]
        with_timings: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Sampled,
    Exact,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CheckArg {
    Paper,
    Matching,
}

#[derive(Debug, Clone, Args)]
pub struct FilterArgs {
    #[arg(long, default_value_t = 5, value_parser = clap::value_parser!(u64).range(1..))]
    pub layers: u64,
    #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u64).range(2..))]
    pub samples: u64,
    #[arg(long, value_enum, default_value = "exact")]
    pub mode: ModeArg,
    #[arg(long, value_enum, default_value = "mono")]
    pub semantics: Semantics,
    /// Augment both graphs with chordless-cycle supernodes.
    #[arg(long)]
    pub cycles: bool,
    #[arg(long, default_value_t = 3)]
    pub cycle_min_len: usize,
    #[arg(long, default_value_t = 6)]
    pub cycle_max_len: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 0.5)]
    pub drop_prob: f64,
    #[arg(long, value_enum, default_value = "paper")]
    pub check: CheckArg,
}

impl FilterArgs {
    pub fn to_config(&self) -> FilterConfig {
        FilterConfig {
            depth: self.layers as usize,
            samples: self.samples as usize,
            drop_prob: self.drop_prob,
            mode: match self.mode {
                ModeArg::Sampled => StepMode::Sampled,
                ModeArg::Exact => StepMode::ExactHall,
            },
            semantics: self.semantics,
            check_mode: match self.check {
                CheckArg::Paper => CheckMode::Paper,
                CheckArg::Matching => CheckMode::Matching,
            },
            cycle_augment: self.cycles,
            cycle_min_len: self.cycle_min_len,
            cycle_max_len: self.cycle_max_len,
            seed: self.seed,
            ..FilterConfig::default()
        }
    }
}

enum Failure {
    Usage(String),
    Runtime(anyhow::Error),
}

impl From<crate::bench::BenchError> for Failure {
    fn from(e: crate::bench::BenchError) -> Self {
        Failure::Runtime(e.into())
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Runtime(e)
    }
}

/// Parses `args` (including the program name) and runs the command,
/// returning the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            eprintln!("Run with --help for usage.");
            EXIT_USAGE
        }
        Err(Failure::Runtime(e)) => {
            eprintln!("error: {e:#}");
            EXIT_RUNTIME
        }
    }
}

fn read_input(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))
}

/// Reads a graph file: a JSON object `{"n": .., "edges": [[u, v], ..]}` or
/// the edge-list text format.
pub fn load_graph(text: &str) -> anyhow::Result<Graph> {
    if text.trim_start().starts_with('{') {
        Ok(serde_json::from_str(text)?)
    } else {
        Ok(parse_edge_list(text)?)
    }
}

fn graph_from(path: &Path) -> Result<Graph, Failure> {
    let text = read_input(path)?;
    load_graph(&text)
        .with_context(|| format!("parsing {}", path.display()))
        .map_err(Failure::Runtime)
}

fn echo<T: Serialize>(what: &str, value: &T) {
    eprintln!(
        "{what}: {}",
        serde_json::to_string(value).expect("config serializes")
    );
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), Failure> {
    let mut text = serde_json::to_string(value).context("serializing report")?;
    text.push('\n');
    fs::write(path, text)
        .with_context(|| format!("writing {}", path.display()))
        .map_err(Failure::Runtime)
}

fn checked(config: FilterConfig) -> Result<FilterConfig, Failure> {
    config
        .validate()
        .map_err(|e| Failure::Usage(e.to_string()))?;
    Ok(config)
}

fn dispatch(command: Command) -> Result<i32, Failure> {
    match command {
        Command::Gen { config, out } => {
            let text = read_input(&config)?;
            let cfg: GenConfig = serde_json::from_str(&text)
                .map_err(|e| Failure::Usage(format!("{}: {e}", config.display())))?;
            cfg.validate().map_err(|e| Failure::Usage(e.to_string()))?;
            echo("config", &cfg);
            let (records, manifest) = build_dataset(&cfg).context("generating dataset")?;
            write_dataset(&out, &records).with_context(|| format!("writing {}", out.display()))?;
            let mut manifest_path = out.clone().into_os_string();
            manifest_path.push(".manifest.json");
            write_json(Path::new(&manifest_path), &manifest)?;
            println!("wrote {} records to {}", records.len(), out.display());
            Ok(EXIT_OK)
        }
        Command::Match {
            target,
            query,
            filter,
            report,
        } => {
            let config = checked(filter.to_config())?;
            let (target, query) = (graph_from(&target)?, graph_from(&query)?);
            echo("config", &config);
            let rep = run_filter(&target, &query, &config).context("running filter")?;
            if let Some(path) = report {
                write_json(&path, &rep)?;
            }
            println!("{}", if rep.decision { "MATCH" } else { "NO-MATCH" });
            Ok(if rep.decision { EXIT_OK } else { EXIT_NEGATIVE })
        }
        Command::Oracle {
            target,
            query,
            semantics,
            budget_ms,
        } => {
            let (target, query) = (graph_from(&target)?, graph_from(&query)?);
            let options = SearchOptions::new(semantics, Duration::from_millis(budget_ms));
            echo("config", &serde_json::json!({ "semantics": semantics, "budget_ms": budget_ms }));
            let res = vf2_search(&target, &query, &options);
            match res.outcome {
                SearchOutcome::Found { embedding } => {
                    let pairs: Vec<String> = embedding
                        .mapping()
                        .iter()
                        .enumerate()
                        .map(|(q, t)| format!("{q}->{t}"))
                        .collect();
                    println!("FOUND {}", pairs.join(" "));
                    Ok(EXIT_OK)
                }
                SearchOutcome::NotFound => {
                    println!("NOT-FOUND");
                    Ok(EXIT_NEGATIVE)
                }
                SearchOutcome::Timeout => Err(Failure::Runtime(anyhow::anyhow!(
                    "search exceeded {budget_ms} ms after {} states",
                    res.states
                ))),
            }
        }
        Command::Bench {
            dataset,
            filter,
            report,
            budget_ms,
            with_timings,
        } => {
            let config = checked(filter.to_config())?;
            if !dataset.exists() {
                return Err(Failure::Usage(format!("no such file: {}", dataset.display())));
            }
            let records = read_dataset(&dataset).context("reading dataset")?;
            echo("config", &config);
            let mut metrics = evaluate(&records, &config)?;
            let mut rates = Vec::new();
            if let Some(ms) = budget_ms {
                let budget = Duration::from_millis(ms);
                let filter_rate = success_rate(&records, &Solver::Filter(config.clone()), budget)?;
                let oracle_rate = success_rate(
                    &records,
                    &Solver::Oracle {
                        semantics: config.semantics,
                    },
                    budget,
                )?;
                rates.push(("filter", filter_rate));
                rates.push(("oracle", oracle_rate));
            }
            println!("{metrics}");
            for (name, r) in &rates {
                println!("{name:<10} success {}/{} ({:.4})", r.solved, r.total, r.rate());
            }
            if let Some(path) = report {
                let timing = metrics.timing.take();
                let mut value = serde_json::to_value(&metrics).context("serializing metrics")?;
                if with_timings {
                    value["timing"] = serde_json::to_value(timing).unwrap();
                    let rates: serde_json::Map<_, _> = rates
                        .iter()
                        .map(|(name, r)| (name.to_string(), serde_json::to_value(r).unwrap()))
                        .collect();
                    value["success_rate"] = serde_json::Value::Object(rates);
                }
                write_json(&path, &value)?;
            }
            Ok(EXIT_OK)
        }
        Command::Scaling {
            sizes,
            mean_degree,
            query_size,
            instances,
            repeats,
            filter,
            report,
            with_timings,
        } => {
            let cfg = ScalingConfig {
                sizes,
                mean_degree,
                query_size,
                instances,
                repeats,
                seed: filter.seed,
                filter: checked(filter.to_config())?,
            };
            echo("config", &cfg);
            let rep = scaling_probe(&cfg).map_err(|e| match e {
                crate::bench::BenchError::Scaling(m) => Failure::Usage(m),
                other => Failure::Runtime(other.into()),
            })?;
            let mut stdout = std::io::stdout().lock();
            let _ = writeln!(stdout, "{:>8} {:>10} {:>12} {:>14}", "size", "edges", "wall ms", "ops");
            for p in &rep.points {
                let _ = writeln!(
                    stdout,
                    "{:>8} {:>10.1} {:>12.3} {:>14.1}",
                    p.size, p.mean_edges, p.mean_wall_ms, p.mean_ops
                );
            }
            let _ = writeln!(stdout, "slope time {:.3}  ops {:.3}", rep.time_slope, rep.ops_slope);
            if let Some(path) = report {
                let mut value = serde_json::to_value(&rep).context("serializing report")?;
                if !with_timings {
                    let obj = value.as_object_mut().unwrap();
                    obj.remove("time_slope");
                    for p in obj["points"].as_array_mut().unwrap() {
                        p.as_object_mut().unwrap().remove("mean_wall_ms");
                    }
                }
                write_json(&path, &value)?;
            }
            Ok(EXIT_OK)
        }
    }
}
