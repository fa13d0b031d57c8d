//! The subtree-containment filter.
//!
//! `S^(l)` marks pairs `(t, q)` whose depth-`l` unfolding tree at `q` embeds
//! into the one at `t`. If the query embeds into the target through `ξ`,
//! every `(ξ(q), q)` stays marked at every depth, so a failed feasibility
//! check on any layer proves that no embedding exists.

mod aggregate;
mod check;
mod config;
mod init;
mod run;
mod step;

use thiserror::Error;

pub use aggregate::{agg_max, agg_max_normalized, agg_min, agg_sum};
pub use check::check_assign;
pub use config::{CheckMode, FilterConfig, StepMode};
pub use init::{attributes_match, init_indicator, nodes_compatible};
pub use run::{run_filter, MatchReport, Termination};
pub use step::{drop_edge, exact_hall_step, phi, sampled_step, PhiCase};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FilterError {
    #[error("matrix has {found} rows, adjacency has {expected} nodes")]
    Shape { expected: usize, found: usize },
    #[error("indicator shape {found:?}, expected {expected:?}")]
    IndicatorShape {
        expected: (usize, usize),
        found: (usize, usize),
    },
    #[error("attribute dimensions differ: target {target:?}, query {query:?}")]
    AttributeMismatch {
        target: Option<usize>,
        query: Option<usize>,
    },
    #[error("invalid filter configuration: {0}")]
    Config(String),
}
