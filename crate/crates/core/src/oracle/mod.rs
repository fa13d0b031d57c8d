//! Exact reference machinery: subgraph search, bipartite matching,
//! unfolding-tree containment and exhaustive enumerators.

mod brute;
mod matching;
mod vf2;
mod wl_tree;

pub use brute::{brute_cycles, permutation_oracle, OracleError, PERMUTATION_ORACLE_MAX};
pub use matching::{hopcroft_karp, HopcroftKarp, Matching};
pub use vf2::{vf2_search, Embedding, SearchOptions, SearchOutcome, SearchResult};
pub use wl_tree::{wl_tree_contains, UnfoldingTree};
