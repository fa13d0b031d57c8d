use std::borrow::Cow;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use super::step::{exact_hall_step_counted, sampled_step_counted};
use super::{check_assign, init_indicator, FilterConfig, FilterError, StepMode};
use crate::cycles::augment_range;
use crate::graph::Graph;
use crate::indicator::IndicatorMatrix;

/// Why the layer loop stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Termination {
    /// All configured layers ran and passed.
    Completed,
    /// The feasibility check failed on this layer.
    CheckFailed { layer: usize },
    /// Exact mode only: this layer equals the previous one, so every later
    /// layer would too.
    Fixpoint { layer: usize },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatchReport {
    pub decision: bool,
    pub termination: Termination,
    /// First `l` with `S^(l+1) = S^(l)`, if observed.
    pub iterations_until_fixpoint: Option<usize>,
    /// Node counts after optional cycle augmentation.
    pub target_nodes: usize,
    pub query_nodes: usize,
    /// Neighbor rows combined and bipartite entries probed.
    pub ops: u64,
    /// `S^(0)` through the last computed layer.
    pub layers: Vec<IndicatorMatrix>,
    #[serde(skip)]
    pub wall_time: Duration,
}

impl MatchReport {
    pub fn final_indicator(&self) -> &IndicatorMatrix {
        self.layers.last().expect("S^(0) is always recorded")
    }
}

/// Runs the filter end to end. `decision == false` proves that the query
/// does not embed into the target; `true` means it survived every check.
pub fn run_filter(
    target: &Graph,
    query: &Graph,
    config: &FilterConfig,
) -> Result<MatchReport, FilterError> {
    config.validate()?;
    let start = Instant::now();
    let (target, query): (Cow<Graph>, Cow<Graph>) = if config.cycle_augment {
        (
            Cow::Owned(augment_range(target, config.cycle_min_len, config.cycle_max_len)),
            Cow::Owned(augment_range(query, config.cycle_min_len, config.cycle_max_len)),
        )
    } else {
        (Cow::Borrowed(target), Cow::Borrowed(query))
    };
    let query_size = query.node_count();
    let mut ops = (target.node_count() * query_size) as u64;

    let s0 = init_indicator(
        &target,
        &query,
        config.attr_epsilon,
        config.strict_supernode_length(),
    )?;
    let mut layers = vec![s0];
    let mut fixpoint = None;
    let mut termination = Termination::Completed;

    if !check_assign(&layers[0], query_size, config.check_mode) {
        termination = Termination::CheckFailed { layer: 0 };
    } else {
        for l in 0..config.depth {
            let (s0, s_l) = (&layers[0], &layers[l]);
            let next = match config.mode {
                StepMode::ExactHall => exact_hall_step_counted(&target, &query, s_l, s0, &mut ops)?,
                StepMode::Sampled => {
                    sampled_step_counted(&target, &query, s_l, s0, config, l, &mut ops)?
                }
            };
            let repeated = next == *s_l;
            layers.push(next);
            if repeated && fixpoint.is_none() {
                fixpoint = Some(l);
            }
            if !check_assign(&layers[l + 1], query_size, config.check_mode) {
                termination = Termination::CheckFailed { layer: l + 1 };
                break;
            }
            if repeated && config.mode == StepMode::ExactHall {
                termination = Termination::Fixpoint { layer: l + 1 };
                break;
            }
        }
    }

    Ok(MatchReport {
        decision: !matches!(termination, Termination::CheckFailed { .. }),
        termination,
        iterations_until_fixpoint: fixpoint,
        target_nodes: target.node_count(),
        query_nodes: query_size,
        ops,
        layers,
        wall_time: start.elapsed(),
    })
}
