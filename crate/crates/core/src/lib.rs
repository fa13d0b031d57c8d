//! Subgraph matching by iterated subtree containment.
//!
//! The filter in [`filter`] answers "can `query` embed into `target`?" with
//! a one-sided test: a `false` decision is a proof of non-containment, a
//! `true` decision means every candidate pair survived `L` rounds of
//! neighborhood matching. [`oracle`] holds exact solvers used as ground
//! truth, [`datagen`] and [`bench`] reproduce a synthetic evaluation
//! protocol, and [`cli`] exposes all of it on the command line.

pub mod bench;
pub mod cli;
pub mod cycles;
pub mod datagen;
pub mod dataset;
pub mod filter;
pub mod graph;
pub mod indicator;
pub mod oracle;
pub mod rng;

use serde::{Deserialize, Serialize};

pub use dataset::{DatasetRecord, RecordMeta};
pub use filter::{run_filter, FilterConfig, MatchReport};
pub use graph::Graph;
pub use indicator::IndicatorMatrix;

/// What counts as an occurrence of the query.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, clap::ValueEnum)]
pub enum Semantics {
    /// Query edges map to target edges.
    #[serde(rename = "mono")]
    #[value(name = "mono")]
    Monomorphism,
    /// Query edges and non-edges are both preserved.
    #[serde(rename = "induced")]
    #[value(name = "induced")]
    Induced,
}
