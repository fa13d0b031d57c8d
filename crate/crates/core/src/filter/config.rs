use serde::{Deserialize, Serialize};

use super::FilterError;
use crate::Semantics;

/// Which recursion step refines the indicator matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StepMode {
    /// Hall-condition checks on DropEdge samples, evaluated by aggregation.
    Sampled,
    /// A full bipartite matching per candidate pair.
    ExactHall,
}

/// Final feasibility test applied to every computed layer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckMode {
    /// Every column covered and enough distinct candidate rows.
    Paper,
    /// A matching between rows and columns saturates all columns.
    Matching,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct FilterConfig {
    /// Number of recursion layers `L`.
    pub depth: usize,
    /// `K`: the full check, `K - 1` DropEdge samples and the single-node check.
    pub samples: usize,
    pub drop_prob: f64,
    pub mode: StepMode,
    pub semantics: Semantics,
    /// Attribute vectors match when their cosine is at least `1 - attr_epsilon`.
    pub attr_epsilon: f64,
    pub check_mode: CheckMode,
    pub cycle_augment: bool,
    pub cycle_min_len: usize,
    pub cycle_max_len: usize,
    /// Require equal cycle length for supernode pairs. `None` resolves to
    /// `true` under induced semantics and `false` otherwise.
    pub strict_supernode_length: Option<bool>,
    pub seed: u64,
}

impl Default for FilterConfig {
    fn default() -> Self {
        FilterConfig {
            depth: 5,
            samples: 4,
            drop_prob: 0.5,
            mode: StepMode::ExactHall,
            semantics: Semantics::Monomorphism,
            attr_epsilon: 1e-9,
            check_mode: CheckMode::Paper,
            cycle_augment: false,
            cycle_min_len: 3,
            cycle_max_len: 6,
            strict_supernode_length: None,
            seed: 0,
        }
    }
}

impl FilterConfig {
    pub fn exact(depth: usize) -> Self {
        FilterConfig {
            depth,
            mode: StepMode::ExactHall,
            ..Default::default()
        }
    }

    pub fn sampled(depth: usize, samples: usize, seed: u64) -> Self {
        FilterConfig {
            depth,
            samples,
            seed,
            mode: StepMode::Sampled,
            ..Default::default()
        }
    }

    pub fn strict_supernode_length(&self) -> bool {
        self.strict_supernode_length
            .unwrap_or(self.semantics == Semantics::Induced)
    }

    pub fn validate(&self) -> Result<(), FilterError> {
        let bad = |msg: &str| Err(FilterError::Config(msg.to_string()));
        if self.depth < 1 {
            return bad("depth must be at least 1");
        }
        if self.samples < 1 {
            return bad("samples must be at least 1");
        }
        if !(self.drop_prob > 0.0 && self.drop_prob < 1.0) {
            return bad("drop_prob must lie in (0, 1)");
        }
        if !(self.attr_epsilon >= 0.0) {
            return bad("attr_epsilon must be non-negative");
        }
        if self.cycle_min_len < 3 {
            return bad("cycle_min_len must be at least 3");
        }
        if self.cycle_max_len < self.cycle_min_len {
            return bad("cycle_max_len must be at least cycle_min_len");
        }
        Ok(())
    }
}
