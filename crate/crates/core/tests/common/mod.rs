//! Reference computations shared by the integration tests and the
//! acceptance runner. Everything here is written against plain sets and
//! loops, without the crate's matrix machinery.

#![allow(dead_code)]

use std::collections::BTreeSet;

use rand::Rng;
use subtree_match::{Graph, IndicatorMatrix};

/// `G(n, p)` drawn pair by pair.
pub fn random_graph<R: Rng>(n: usize, p: f64, rng: &mut R) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

pub fn random_indicator<R: Rng>(rows: usize, cols: usize, density: f64, rng: &mut R) -> IndicatorMatrix {
    IndicatorMatrix::from_fn(rows, cols, |_, _| rng.random_bool(density))
}

pub fn is_connected(g: &Graph) -> bool {
    if g.node_count() == 0 {
        return true;
    }
    let mut seen = vec![false; g.node_count()];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for &w in g.neighbors(v) {
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// One representative per isomorphism class of connected graphs on
/// `1..=max_n` nodes, found by canonicalizing every labelled graph over
/// all relabellings.
pub fn connected_graph_classes(max_n: usize) -> Vec<Graph> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        let perms = permutations(n);
        let mut seen = BTreeSet::new();
        for mask in 0u64..(1 << pairs.len()) {
            let edges: Vec<(usize, usize)> = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            if edges.len() + 1 < n {
                continue;
            }
            let g = Graph::from_edges(n, &edges).unwrap();
            if !is_connected(&g) {
                continue;
            }
            let canonical = perms
                .iter()
                .map(|p| {
                    let mut relabelled: Vec<(usize, usize)> = edges
                        .iter()
                        .map(|&(u, v)| (p[u].min(p[v]), p[u].max(p[v])))
                        .collect();
                    relabelled.sort_unstable();
                    relabelled
                })
                .min()
                .unwrap();
            if seen.insert(canonical) {
                out.push(g);
            }
        }
    }
    out
}

/// `Φ_tq = [|N(t) ∩ M(q)| >= |N(q)|]` with `M(q)` the target nodes that
/// `S` allows for some neighbor of `q`; vacuously true when `N(q)` is
/// empty.
pub fn phi_full_by_sets(target: &Graph, query: &Graph, s: &IndicatorMatrix) -> IndicatorMatrix {
    IndicatorMatrix::from_fn(target.node_count(), query.node_count(), |t, q| {
        let w = query.neighbors(q);
        if w.is_empty() {
            return true;
        }
        let m: BTreeSet<usize> = (0..target.node_count())
            .filter(|&ti| w.iter().any(|&qi| s.get(ti, qi)))
            .collect();
        let hits = target.neighbors(t).iter().filter(|ti| m.contains(ti)).count();
        hits >= w.len()
    })
}

/// Hall's condition over every subset `W ⊆ N(q)`, written as a bitmask
/// loop. Equivalent to a saturating matching of `N(q)` into `N(t)`.
pub fn hall_by_subsets(target: &Graph, t: usize, query: &Graph, q: usize, s: &IndicatorMatrix) -> bool {
    let nq = query.neighbors(q);
    let nt = target.neighbors(t);
    (1u32..(1 << nq.len())).all(|mask| {
        let w: Vec<usize> = (0..nq.len()).filter(|i| mask >> i & 1 == 1).map(|i| nq[i]).collect();
        let covered = nt.iter().filter(|&&tj| w.iter().any(|&qi| s.get(tj, qi))).count();
        covered >= w.len()
    })
}

/// Maximum matching size by trying every assignment of left vertices.
pub fn exhaustive_matching(left: usize, right: usize, edges: &[(usize, usize)]) -> usize {
    fn go(l: usize, left: usize, adj: &[Vec<bool>], used: &mut Vec<bool>) -> usize {
        if l == left {
            return 0;
        }
        let mut best = go(l + 1, left, adj, used);
        for r in 0..used.len() {
            if adj[l][r] && !used[r] {
                used[r] = true;
                best = best.max(1 + go(l + 1, left, adj, used));
                used[r] = false;
            }
        }
        best
    }
    let mut adj = vec![vec![false; right]; left];
    for &(l, r) in edges {
        adj[l][r] = true;
    }
    go(0, left, &adj, &mut vec![false; right])
}
