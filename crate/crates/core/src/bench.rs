//! Accuracy over datasets, success rates under a time budget, and the
//! scaling probe.

use std::fmt;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::datagen::{bfs_sample, gen_er, GenError};
use crate::dataset::DatasetRecord;
use crate::filter::{run_filter, FilterConfig, FilterError};
use crate::oracle::{vf2_search, SearchOptions, SearchOutcome};
use crate::rng::{derive_seed, stream};
use crate::Semantics;

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("dataset is empty")]
    EmptyDataset,
    #[error("scaling probe: {0}")]
    Scaling(String),
    #[error("record {index}: {source}")]
    Filter {
        index: usize,
        #[source]
        source: FilterError,
    },
    #[error(transparent)]
    Gen(#[from] GenError),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TimingStats {
    pub mean_ms: f64,
    pub p50_ms: f64,
    pub p95_ms: f64,
}

impl TimingStats {
    pub fn from_durations(times: &[Duration]) -> Option<Self> {
        if times.is_empty() {
            return None;
        }
        let mut ms: Vec<f64> = times.iter().map(|d| d.as_secs_f64() * 1e3).collect();
        ms.sort_by(f64::total_cmp);
        let pick = |q: f64| ms[((ms.len() - 1) as f64 * q).round() as usize];
        Some(TimingStats {
            mean_ms: ms.iter().sum::<f64>() / ms.len() as f64,
            p50_ms: pick(0.5),
            p95_ms: pick(0.95),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalMetrics {
    pub records: usize,
    pub positives: usize,
    pub negatives: usize,
    pub accuracy: f64,
    /// Fraction of positives rejected; zero if there are none.
    pub false_negative_rate: f64,
    /// Fraction of negatives accepted; zero if there are none.
    pub false_positive_rate: f64,
    pub decisions: Vec<bool>,
    pub total_ops: u64,
    /// Left out of serialized reports unless requested, since it varies
    /// between runs.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing: Option<TimingStats>,
}

impl EvalMetrics {
    pub fn false_negatives(&self) -> usize {
        (self.false_negative_rate * self.positives as f64).round() as usize
    }

    pub fn false_positives(&self) -> usize {
        (self.false_positive_rate * self.negatives as f64).round() as usize
    }
}

impl fmt::Display for EvalMetrics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "records    {:>8}", self.records)?;
        writeln!(f, "positives  {:>8}", self.positives)?;
        writeln!(f, "negatives  {:>8}", self.negatives)?;
        writeln!(f, "accuracy   {:>8.4}", self.accuracy)?;
        writeln!(f, "fn rate    {:>8.4}", self.false_negative_rate)?;
        writeln!(f, "fp rate    {:>8.4}", self.false_positive_rate)?;
        write!(f, "ops        {:>8}", self.total_ops)?;
        if let Some(t) = &self.timing {
            write!(
                f,
                "\ntime ms    mean {:.3}  p50 {:.3}  p95 {:.3}",
                t.mean_ms, t.p50_ms, t.p95_ms
            )?;
        }
        Ok(())
    }
}

/// Runs the filter on every record and scores its decisions against the
/// labels. Records are processed in parallel; the result does not depend on
/// their order.
pub fn evaluate(records: &[DatasetRecord], config: &FilterConfig) -> Result<EvalMetrics, BenchError> {
    if records.is_empty() {
        return Err(BenchError::EmptyDataset);
    }
    let runs: Vec<(bool, u64, Duration)> = records
        .par_iter()
        .enumerate()
        .map(|(index, r)| {
            run_filter(&r.target, &r.query, config)
                .map(|rep| (rep.decision, rep.ops, rep.wall_time))
                .map_err(|source| BenchError::Filter { index, source })
        })
        .collect::<Result<_, _>>()?;

    let positives = records.iter().filter(|r| r.label).count();
    let negatives = records.len() - positives;
    let mut fneg = 0;
    let mut fpos = 0;
    for (r, &(decision, _, _)) in records.iter().zip(&runs) {
        match (r.label, decision) {
            (true, false) => fneg += 1,
            (false, true) => fpos += 1,
            _ => {}
        }
    }
    let rate = |n: usize, d: usize| if d == 0 { 0.0 } else { n as f64 / d as f64 };
    let times: Vec<Duration> = runs.iter().map(|r| r.2).collect();
    Ok(EvalMetrics {
        records: records.len(),
        positives,
        negatives,
        accuracy: 1.0 - (fneg + fpos) as f64 / records.len() as f64,
        false_negative_rate: rate(fneg, positives),
        false_positive_rate: rate(fpos, negatives),
        decisions: runs.iter().map(|r| r.0).collect(),
        total_ops: runs.iter().map(|r| r.1).sum(),
        timing: TimingStats::from_durations(&times),
    })
}

/// Accuracy mean and standard deviation across filter seeds.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeedSummary {
    pub seeds: Vec<u64>,
    pub accuracies: Vec<f64>,
    pub mean: f64,
    pub std: f64,
}

pub fn evaluate_over_seeds(
    records: &[DatasetRecord],
    config: &FilterConfig,
    seeds: &[u64],
) -> Result<SeedSummary, BenchError> {
    let accuracies = seeds
        .iter()
        .map(|&seed| {
            let cfg = FilterConfig { seed, ..config.clone() };
            evaluate(records, &cfg).map(|m| m.accuracy)
        })
        .collect::<Result<Vec<_>, _>>()?;
    let n = accuracies.len().max(1) as f64;
    let mean = accuracies.iter().sum::<f64>() / n;
    let std = (accuracies.iter().map(|a| (a - mean).powi(2)).sum::<f64>() / n).sqrt();
    Ok(SeedSummary {
        seeds: seeds.to_vec(),
        accuracies,
        mean,
        std,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub enum Solver {
    Filter(FilterConfig),
    Oracle { semantics: Semantics },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuccessRate {
    pub solved: usize,
    pub total: usize,
}

impl SuccessRate {
    pub fn rate(&self) -> f64 {
        if self.total == 0 {
            0.0
        } else {
            self.solved as f64 / self.total as f64
        }
    }
}

/// Counts records on which `solver` returns a verdict strictly within
/// `budget`. Records run one at a time so that timings do not compete for
/// cores. The filter cannot be interrupted, so an over-budget filter run
/// finishes before being counted as a failure.
pub fn success_rate(
    records: &[DatasetRecord],
    solver: &Solver,
    budget: Duration,
) -> Result<SuccessRate, BenchError> {
    let mut solved = 0;
    if !budget.is_zero() {
        for (index, r) in records.iter().enumerate() {
            let ok = match solver {
                Solver::Filter(cfg) => {
                    let rep = run_filter(&r.target, &r.query, cfg)
                        .map_err(|source| BenchError::Filter { index, source })?;
                    rep.wall_time < budget
                }
                Solver::Oracle { semantics } => {
                    let started = Instant::now();
                    let res = vf2_search(&r.target, &r.query, &SearchOptions::new(*semantics, budget));
                    res.outcome != SearchOutcome::Timeout && started.elapsed() < budget
                }
            };
            solved += usize::from(ok);
        }
    }
    Ok(SuccessRate {
        solved,
        total: records.len(),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ScalingConfig {
    pub sizes: Vec<usize>,
    pub mean_degree: f64,
    pub query_size: usize,
    /// Independent target/query draws per size.
    pub instances: usize,
    /// Timed runs per instance; the fastest is kept.
    pub repeats: usize,
    pub seed: u64,
    pub filter: FilterConfig,
}

impl Default for ScalingConfig {
    fn default() -> Self {
        ScalingConfig {
            sizes: vec![200, 400, 800, 1600, 3200],
            mean_degree: 6.0,
            query_size: 15,
            instances: 3,
            repeats: 3,
            seed: 0,
            filter: FilterConfig::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScalingPoint {
    pub size: usize,
    pub mean_edges: f64,
    /// Mean over instances of the fastest repeat.
    pub mean_wall_ms: f64,
    pub mean_ops: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScalingReport {
    pub points: Vec<ScalingPoint>,
    pub time_slope: f64,
    pub ops_slope: f64,
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn log_log_slope(xs: &[f64], ys: &[f64]) -> Option<f64> {
    if xs.len() != ys.len() || xs.len() < 2 || xs.iter().chain(ys).any(|&v| v <= 0.0) {
        return None;
    }
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.ln()).collect();
    let n = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxx: f64 = lx.iter().map(|x| (x - mx).powi(2)).sum();
    if sxx < 1e-12 {
        return None;
    }
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    Some(sxy / sxx)
}

const TAG_SCALING: u64 = 2;

/// Times the filter on ER targets of growing size at fixed mean degree,
/// each paired with a BFS query, and fits log-log slopes to wall time and
/// operation count.
pub fn scaling_probe(cfg: &ScalingConfig) -> Result<ScalingReport, BenchError> {
    let mut distinct = cfg.sizes.clone();
    distinct.sort_unstable();
    distinct.dedup();
    if distinct.len() < 4 {
        return Err(BenchError::Scaling(format!(
            "need at least 4 distinct sizes, got {}",
            distinct.len()
        )));
    }
    if let Some(&small) = cfg.sizes.iter().find(|&&s| s < 50) {
        return Err(BenchError::Scaling(format!("size {small} is below 50 nodes")));
    }
    if cfg.instances == 0 || cfg.repeats == 0 {
        return Err(BenchError::Scaling("instances and repeats must be positive".into()));
    }
    let mut points = Vec::with_capacity(cfg.sizes.len());
    for (i, &n) in cfg.sizes.iter().enumerate() {
        let p = (cfg.mean_degree / (n - 1) as f64).min(1.0);
        let (mut edges, mut wall, mut ops) = (0.0, 0.0, 0.0);
        for inst in 0..cfg.instances {
            let seed = derive_seed(cfg.seed, TAG_SCALING, (i * cfg.instances + inst) as u64);
            let mut rng = stream(seed, 0);
            let target = gen_er(n, p, &mut rng)?;
            let query = bfs_sample(&target, cfg.query_size, &mut rng)?;
            let mut best = Duration::MAX;
            let mut inst_ops = 0;
            for _ in 0..cfg.repeats {
                let rep = run_filter(&target, &query, &cfg.filter)
                    .map_err(|source| BenchError::Filter { index: i, source })?;
                best = best.min(rep.wall_time);
                inst_ops = rep.ops;
            }
            edges += target.edge_count() as f64;
            wall += best.as_secs_f64() * 1e3;
            ops += inst_ops as f64;
        }
        let k = cfg.instances as f64;
        points.push(ScalingPoint {
            size: n,
            mean_edges: edges / k,
            mean_wall_ms: wall / k,
            mean_ops: ops / k,
        });
    }
    let xs: Vec<f64> = points.iter().map(|p| p.size as f64).collect();
    let slope = |ys: Vec<f64>, what: &str| {
        log_log_slope(&xs, &ys).ok_or_else(|| BenchError::Scaling(format!("{what} slope undefined")))
    };
    Ok(ScalingReport {
        time_slope: slope(points.iter().map(|p| p.mean_wall_ms).collect(), "time")?,
        ops_slope: slope(points.iter().map(|p| p.mean_ops).collect(), "ops")?,
        points,
    })
}
