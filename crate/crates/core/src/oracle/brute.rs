//! Exhaustive reference implementations for small inputs.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::cycles::ChordlessCycle;
use crate::graph::Graph;
use crate::Semantics;

/// Largest query handled by [`permutation_oracle`].
pub const PERMUTATION_ORACLE_MAX: usize = 7;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("query has {0} nodes; the permutation oracle accepts at most {PERMUTATION_ORACLE_MAX}")]
    TooLarge(usize),
}

/// Every simple cycle of length `3..=max_len`, found by plain DFS, kept if
/// it has no chord, then canonicalized.
pub fn brute_cycles(g: &Graph, max_len: usize) -> Vec<ChordlessCycle> {
    let mut out = BTreeSet::new();
    let mut path = Vec::new();
    let mut on_path = vec![false; g.node_count()];
    for s in 0..g.node_count() {
        if g.is_supernode(s) {
            continue;
        }
        path.push(s);
        on_path[s] = true;
        walk(g, max_len, s, &mut path, &mut on_path, &mut out);
        on_path[s] = false;
        path.pop();
    }
    let mut cycles: Vec<ChordlessCycle> = out.into_iter().collect();
    cycles.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    cycles
}

fn walk(
    g: &Graph,
    max_len: usize,
    s: usize,
    path: &mut Vec<usize>,
    on_path: &mut [bool],
    out: &mut BTreeSet<ChordlessCycle>,
) {
    let end = *path.last().unwrap();
    for &w in g.neighbors(end) {
        if g.is_supernode(w) {
            continue;
        }
        if w == s && path.len() >= 3 {
            let cycle = ChordlessCycle::new(path.clone());
            if cycle.is_chordless_in(g) {
                out.insert(cycle);
            }
        }
        if w > s && !on_path[w] && path.len() < max_len {
            path.push(w);
            on_path[w] = true;
            walk(g, max_len, s, path, on_path, out);
            on_path[w] = false;
            path.pop();
        }
    }
}

/// Tries every injection of query nodes into target nodes. Structure only;
/// attributes are ignored.
pub fn permutation_oracle(
    target: &Graph,
    query: &Graph,
    semantics: Semantics,
) -> Result<bool, OracleError> {
    if query.node_count() > PERMUTATION_ORACLE_MAX {
        return Err(OracleError::TooLarge(query.node_count()));
    }
    let mut map = Vec::with_capacity(query.node_count());
    let mut used = vec![false; target.node_count()];
    Ok(try_all(target, query, semantics, &mut map, &mut used))
}

fn try_all(
    target: &Graph,
    query: &Graph,
    semantics: Semantics,
    map: &mut Vec<usize>,
    used: &mut [bool],
) -> bool {
    if map.len() == query.node_count() {
        return (0..map.len()).all(|u| {
            (u + 1..map.len()).all(|v| {
                let q = query.has_edge(u, v);
                let t = target.has_edge(map[u], map[v]);
                match semantics {
                    Semantics::Monomorphism => !q || t,
                    Semantics::Induced => q == t,
                }
            })
        });
    }
    for c in 0..target.node_count() {
        if used[c] {
            continue;
        }
        used[c] = true;
        map.push(c);
        let ok = try_all(target, query, semantics, map, used);
        map.pop();
        used[c] = false;
        if ok {
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: usize, edges: &[(usize, usize)]) -> Graph {
        Graph::from_edges(n, edges).unwrap()
    }

    fn k4() -> Graph {
        g(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
    }

    #[test]
    fn cycles_of_c5_tree_and_k4() {
        let c5 = g(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]);
        assert_eq!(brute_cycles(&c5, 5), vec![ChordlessCycle::new(vec![0, 1, 2, 3, 4])]);
        let tree = g(5, &[(0, 1), (0, 2), (2, 3), (2, 4)]);
        assert!(brute_cycles(&tree, 5).is_empty());
        let k4_cycles = brute_cycles(&k4(), 4);
        assert_eq!(k4_cycles.len(), 4);
        assert!(k4_cycles.iter().all(|c| c.len() == 3));
    }

    #[test]
    fn permutation_examples() {
        let tri = g(3, &[(0, 1), (1, 2), (0, 2)]);
        let p3 = g(3, &[(0, 1), (1, 2)]);
        assert_eq!(permutation_oracle(&k4(), &tri, Semantics::Monomorphism), Ok(true));
        assert_eq!(permutation_oracle(&p3, &tri, Semantics::Monomorphism), Ok(false));
        assert_eq!(permutation_oracle(&p3, &p3, Semantics::Induced), Ok(true));
        let c4 = g(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]);
        assert_eq!(permutation_oracle(&k4(), &c4, Semantics::Induced), Ok(false));
    }

    #[test]
    fn size_guard() {
        assert_eq!(
            permutation_oracle(&Graph::empty(9), &Graph::empty(8), Semantics::Induced),
            Err(OracleError::TooLarge(8))
        );
    }
}
