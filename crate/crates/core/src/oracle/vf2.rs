//! Exact subgraph search by depth-first state-space exploration in the
//! style of VF2: query nodes are mapped one at a time in a connectivity
//! order, and each partial mapping is checked against the edges already
//! fixed plus a one-step lookahead on free neighbors.

use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::filter::nodes_compatible;
use crate::graph::Graph;
use crate::Semantics;

/// Injective map from query nodes (index) to target nodes (value).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Embedding(pub Vec<usize>);

impl Embedding {
    pub fn mapping(&self) -> &[usize] {
        &self.0
    }

    /// Checks injectivity, edge preservation (and non-edge preservation for
    /// induced semantics) and attribute compatibility.
    pub fn is_valid(
        &self,
        target: &Graph,
        query: &Graph,
        semantics: Semantics,
        attr_epsilon: f64,
    ) -> bool {
        let map = &self.0;
        if map.len() != query.node_count() || map.iter().any(|&t| t >= target.node_count()) {
            return false;
        }
        let mut seen = vec![false; target.node_count()];
        for &t in map {
            if std::mem::replace(&mut seen[t], true) {
                return false;
            }
        }
        let nodes_ok = (0..map.len())
            .all(|q| nodes_compatible(target, map[q], query, q, attr_epsilon, true));
        let edges_ok = (0..map.len()).all(|u| {
            (u + 1..map.len()).all(|v| {
                let q_edge = query.has_edge(u, v);
                let t_edge = target.has_edge(map[u], map[v]);
                match semantics {
                    Semantics::Monomorphism => !q_edge || t_edge,
                    Semantics::Induced => q_edge == t_edge,
                }
            })
        });
        nodes_ok && edges_ok
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum SearchOutcome {
    Found { embedding: Embedding },
    NotFound,
    Timeout,
}

impl SearchOutcome {
    pub fn is_found(&self) -> bool {
        matches!(self, SearchOutcome::Found { .. })
    }

    /// `Some(found)` for a decided search, `None` on timeout.
    pub fn verdict(&self) -> Option<bool> {
        match self {
            SearchOutcome::Found { .. } => Some(true),
            SearchOutcome::NotFound => Some(false),
            SearchOutcome::Timeout => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchResult {
    pub outcome: SearchOutcome,
    /// Partial mappings visited.
    pub states: u64,
    pub elapsed: Duration,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchOptions {
    pub semantics: Semantics,
    pub attr_epsilon: f64,
    pub time_budget: Duration,
    /// Optional cap on visited states, reported as a timeout when hit.
    pub state_limit: Option<u64>,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            semantics: Semantics::Monomorphism,
            attr_epsilon: 1e-9,
            time_budget: Duration::from_secs(60),
            state_limit: None,
        }
    }
}

impl SearchOptions {
    pub fn new(semantics: Semantics, time_budget: Duration) -> Self {
        SearchOptions {
            semantics,
            time_budget,
            ..Default::default()
        }
    }
}

/// Dense adjacency bit matrix.
struct BitMatrix {
    words: usize,
    bits: Vec<u64>,
}

impl BitMatrix {
    fn of(g: &Graph) -> Self {
        let n = g.node_count();
        let words = n.div_ceil(64);
        let mut bits = vec![0u64; n * words];
        for (u, v) in g.edges() {
            bits[u * words + v / 64] |= 1 << (v % 64);
            bits[v * words + u / 64] |= 1 << (u % 64);
        }
        BitMatrix { words, bits }
    }

    #[inline]
    fn get(&self, u: usize, v: usize) -> bool {
        self.bits[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }
}

/// Neighbor degrees in descending order; `c` can host `u` only if its
/// sequence dominates `u`'s entry by entry.
fn neighbor_degrees(g: &Graph, v: usize) -> Vec<usize> {
    let mut d: Vec<usize> = g.neighbors(v).iter().map(|&w| g.degree(w)).collect();
    d.sort_unstable_by(|a, b| b.cmp(a));
    d
}

struct Plan {
    /// Query nodes in mapping order.
    order: Vec<usize>,
    /// For position i, an earlier query node adjacent to `order[i]`.
    anchor: Vec<Option<usize>>,
    /// Earlier neighbors of `order[i]`.
    earlier_neighbors: Vec<Vec<usize>>,
    /// Earlier non-neighbors of `order[i]` (induced semantics only).
    earlier_non_neighbors: Vec<Vec<usize>>,
    /// Neighbors of `order[i]` mapped after position i.
    later_degree: Vec<usize>,
}

fn plan(query: &Graph, candidate_counts: &[usize], induced: bool) -> Plan {
    let n = query.node_count();
    let mut placed = vec![false; n];
    let mut links = vec![0usize; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let next = (0..n)
            .filter(|&v| !placed[v])
            .min_by_key(|&v| {
                (
                    std::cmp::Reverse(links[v]),
                    candidate_counts[v],
                    std::cmp::Reverse(query.degree(v)),
                    v,
                )
            })
            .unwrap();
        placed[next] = true;
        order.push(next);
        for &w in query.neighbors(next) {
            links[w] += 1;
        }
    }
    let mut position = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        position[v] = i;
    }
    let mut anchor = Vec::with_capacity(n);
    let mut earlier_neighbors = Vec::with_capacity(n);
    let mut earlier_non_neighbors = Vec::with_capacity(n);
    let mut later_degree = Vec::with_capacity(n);
    for (i, &u) in order.iter().enumerate() {
        let before: Vec<usize> = query
            .neighbors(u)
            .iter()
            .copied()
            .filter(|&w| position[w] < i)
            .collect();
        anchor.push(before.iter().copied().min_by_key(|&w| position[w]));
        later_degree.push(query.degree(u) - before.len());
        earlier_non_neighbors.push(if induced {
            order[..i]
                .iter()
                .copied()
                .filter(|&w| !query.has_edge(u, w))
                .collect()
        } else {
            Vec::new()
        });
        earlier_neighbors.push(before);
    }
    Plan {
        order,
        anchor,
        earlier_neighbors,
        earlier_non_neighbors,
        later_degree,
    }
}

struct Search<'a> {
    target: &'a Graph,
    adj: BitMatrix,
    plan: Plan,
    /// Per query node: allowed target nodes.
    allowed: Vec<Vec<bool>>,
    /// Per query node: candidates in ascending (degree, id) order.
    candidates: Vec<Vec<usize>>,
    /// Per target node: neighbors in ascending (degree, id) order.
    sorted_neighbors: Vec<Vec<usize>>,
    map: Vec<usize>,
    used: Vec<bool>,
    states: u64,
    start: Instant,
    options: SearchOptions,
    timed_out: bool,
}

impl Search<'_> {
    fn out_of_budget(&mut self) -> bool {
        if self.timed_out {
            return true;
        }
        if let Some(limit) = self.options.state_limit {
            if self.states > limit {
                self.timed_out = true;
            }
        }
        if self.start.elapsed() > self.options.time_budget {
            self.timed_out = true;
        }
        self.timed_out
    }

    fn feasible(&self, i: usize, c: usize) -> bool {
        let u = self.plan.order[i];
        if self.used[c] || !self.allowed[u][c] {
            return false;
        }
        if !self.plan.earlier_neighbors[i]
            .iter()
            .all(|&w| self.adj.get(c, self.map[w]))
        {
            return false;
        }
        if !self.plan.earlier_non_neighbors[i]
            .iter()
            .all(|&w| !self.adj.get(c, self.map[w]))
        {
            return false;
        }
        let free = self
            .target
            .neighbors(c)
            .iter()
            .filter(|&&x| !self.used[x])
            .count();
        free >= self.plan.later_degree[i]
    }

    /// Candidate pool for position `i`: the neighbors of the anchor's image,
    /// or all allowed nodes when the query node has no earlier neighbor.
    fn pool(&self, i: usize) -> &[usize] {
        match self.plan.anchor[i] {
            Some(w) => &self.sorted_neighbors[self.map[w]],
            None => &self.candidates[self.plan.order[i]],
        }
    }

    /// Returns `true` once a full mapping is in `self.map`.
    fn descend(&mut self, i: usize) -> bool {
        if i == self.plan.order.len() {
            return true;
        }
        let u = self.plan.order[i];
        let pool_len = self.pool(i).len();
        let mut done = false;
        for k in 0..pool_len {
            let c = self.pool(i)[k];
            self.states += 1;
            if self.out_of_budget() {
                break;
            }
            if !self.feasible(i, c) {
                continue;
            }
            self.map[u] = c;
            self.used[c] = true;
            if self.descend(i + 1) {
                done = true;
            }
            self.used[c] = false;
            if done || self.timed_out {
                break;
            }
        }
        done
    }
}

/// Decides whether `query` embeds into `target`.
///
/// Target candidates are tried in ascending `(degree, id)` order, so the
/// outcome, the returned embedding and the state count are deterministic for
/// a given input; only the timeout depends on the clock.
pub fn vf2_search(target: &Graph, query: &Graph, options: &SearchOptions) -> SearchResult {
    let start = Instant::now();
    let (nt, nq) = (target.node_count(), query.node_count());
    let done = |outcome, states| SearchResult {
        outcome,
        states,
        elapsed: start.elapsed(),
    };
    if nq == 0 {
        return done(
            SearchOutcome::Found {
                embedding: Embedding(Vec::new()),
            },
            0,
        );
    }
    if nq > nt || query.edge_count() > target.edge_count() {
        return done(SearchOutcome::NotFound, 0);
    }

    let target_nd: Vec<Vec<usize>> = (0..nt).map(|t| neighbor_degrees(target, t)).collect();
    let by_degree = |list: &mut Vec<usize>| list.sort_by_key(|&t| (target.degree(t), t));
    let mut allowed = Vec::with_capacity(nq);
    let mut candidates = Vec::with_capacity(nq);
    for q in 0..nq {
        let qd = neighbor_degrees(query, q);
        let row: Vec<bool> = (0..nt)
            .map(|t| {
                target_nd[t].len() >= qd.len()
                    && qd.iter().zip(&target_nd[t]).all(|(a, b)| a <= b)
                    && nodes_compatible(target, t, query, q, options.attr_epsilon, true)
            })
            .collect();
        let mut list: Vec<usize> = (0..nt).filter(|&t| row[t]).collect();
        if list.is_empty() {
            return done(SearchOutcome::NotFound, 0);
        }
        by_degree(&mut list);
        allowed.push(row);
        candidates.push(list);
    }
    let sorted_neighbors = (0..nt)
        .map(|t| {
            let mut list = target.neighbors(t).to_vec();
            by_degree(&mut list);
            list
        })
        .collect();
    let counts: Vec<usize> = candidates.iter().map(Vec::len).collect();

    let mut search = Search {
        target,
        adj: BitMatrix::of(target),
        plan: plan(query, &counts, options.semantics == Semantics::Induced),
        allowed,
        candidates,
        sorted_neighbors,
        map: vec![usize::MAX; nq],
        used: vec![false; nt],
        states: 0,
        start,
        options: *options,
        timed_out: false,
    };
    let found = search.descend(0);
    let outcome = if found {
        SearchOutcome::Found {
            embedding: Embedding(search.map.clone()),
        }
    } else if search.timed_out {
        SearchOutcome::Timeout
    } else {
        SearchOutcome::NotFound
    };
    done(outcome, search.states)
}
