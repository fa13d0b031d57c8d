//! Synthetic pairs: random targets, BFS-sampled positive queries and
//! density-matched negatives, every label checked by the exact search.

use std::collections::VecDeque;
use std::time::Duration;

use rand::seq::{index, IndexedRandom, SliceRandom};
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dataset::{DatasetRecord, RecordMeta};
use crate::graph::Graph;
use crate::oracle::{vf2_search, SearchOptions, SearchOutcome};
use crate::rng::{derive_seed, stream};
use crate::Semantics;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GenError {
    #[error("invalid parameter: {0}")]
    Param(String),
    #[error("no connected component with at least {0} nodes")]
    NoLargeComponent(usize),
    #[error("no verified negative after {0} attempts")]
    Exhausted(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Generator {
    Er,
    Ws,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NegativeKind {
    /// A fresh random graph with the positive's node and edge counts.
    Random,
    /// The positive with some edges dropped and others inserted.
    Hard,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct GenConfig {
    pub generator: Generator,
    pub target_n: usize,
    pub er_p: f64,
    pub ws_k: usize,
    pub ws_beta: f64,
    pub query_size: usize,
    /// Total records; half positive, half negative.
    pub pair_count: usize,
    pub negative_kind: NegativeKind,
    /// Defaults to `ceil(0.1 * |E_Q|)` per record.
    pub hard_drop_count: Option<usize>,
    /// Defaults to the drop count, keeping the edge count unchanged.
    pub hard_insert_count: Option<usize>,
    pub seed: u64,
    pub semantics: Semantics,
    /// Wall-clock budget for each label check; timed-out candidates are
    /// discarded.
    pub verify_budget_ms: u64,
    pub max_attempts: usize,
}

impl Default for GenConfig {
    fn default() -> Self {
        GenConfig {
            generator: Generator::Er,
            target_n: 40,
            // mean degree 6
            er_p: 6.0 / 39.0,
            ws_k: 6,
            ws_beta: 0.2,
            query_size: 15,
            pair_count: 10,
            negative_kind: NegativeKind::Random,
            hard_drop_count: None,
            hard_insert_count: None,
            seed: 0,
            semantics: Semantics::Monomorphism,
            verify_budget_ms: 2_000,
            max_attempts: 100,
        }
    }
}

impl GenConfig {
    pub fn validate(&self) -> Result<(), GenError> {
        let bad = |m: String| Err(GenError::Param(m));
        if self.query_size == 0 || self.query_size > self.target_n {
            return bad(format!(
                "query_size {} must lie in 1..={}",
                self.query_size, self.target_n
            ));
        }
        if self.pair_count % 2 != 0 {
            return bad(format!("pair_count {} must be even", self.pair_count));
        }
        if !(0.0..=1.0).contains(&self.er_p) || !(0.0..=1.0).contains(&self.ws_beta) {
            return bad("probabilities must lie in [0, 1]".into());
        }
        if self.generator == Generator::Ws && (self.ws_k % 2 != 0 || self.ws_k >= self.target_n) {
            return bad(format!("ws_k {} must be even and below target_n", self.ws_k));
        }
        if self.max_attempts == 0 {
            return bad("max_attempts must be positive".into());
        }
        Ok(())
    }

    fn search_options(&self) -> SearchOptions {
        SearchOptions::new(self.semantics, Duration::from_millis(self.verify_budget_ms))
    }

    fn generator_name(&self) -> &'static str {
        match self.generator {
            Generator::Er => "er",
            Generator::Ws => "ws",
        }
    }
}

/// Erdős–Rényi `G(n, p)`: each of the `n(n-1)/2` pairs, in ascending order,
/// is an edge with probability `p`.
pub fn gen_er<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Result<Graph, GenError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(GenError::Param(format!("er p = {p} outside [0, 1]")));
    }
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Ok(Graph::from_edges(n, &edges).expect("generated edges are in range"))
}

/// Watts–Strogatz: a ring where each node links to its `k/2` nearest
/// neighbors on each side, then every lattice edge `(i, i+j)` is rewired
/// with probability `beta` to `(i, w)` for a uniform `w` avoiding self-loops
/// and duplicate edges.
pub fn gen_ws<R: Rng + ?Sized>(
    n: usize,
    k: usize,
    beta: f64,
    rng: &mut R,
) -> Result<Graph, GenError> {
    if k % 2 != 0 || k >= n {
        return Err(GenError::Param(format!("ws needs even k < n, got k = {k}, n = {n}")));
    }
    if !(0.0..=1.0).contains(&beta) {
        return Err(GenError::Param(format!("ws beta = {beta} outside [0, 1]")));
    }
    let mut adj = vec![std::collections::BTreeSet::new(); n];
    for i in 0..n {
        for j in 1..=k / 2 {
            let v = (i + j) % n;
            adj[i].insert(v);
            adj[v].insert(i);
        }
    }
    for j in 1..=k / 2 {
        for i in 0..n {
            let v = (i + j) % n;
            if !rng.random_bool(beta) || !adj[i].contains(&v) {
                continue;
            }
            if adj[i].len() >= n - 1 {
                continue;
            }
            let w = loop {
                let w = rng.random_range(0..n);
                if w != i && !adj[i].contains(&w) {
                    break w;
                }
            };
            adj[i].remove(&v);
            adj[v].remove(&i);
            adj[i].insert(w);
            adj[w].insert(i);
        }
    }
    let edges: Vec<(usize, usize)> = adj
        .iter()
        .enumerate()
        .flat_map(|(u, set)| set.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
        .collect();
    Ok(Graph::from_edges(n, &edges).expect("generated edges are in range"))
}

fn components(g: &Graph) -> Vec<usize> {
    let mut comp = vec![usize::MAX; g.node_count()];
    let mut sizes = Vec::new();
    for s in 0..g.node_count() {
        if comp[s] != usize::MAX {
            continue;
        }
        let id = sizes.len();
        let mut size = 0;
        let mut stack = vec![s];
        comp[s] = id;
        while let Some(v) = stack.pop() {
            size += 1;
            for &w in g.neighbors(v) {
                if comp[w] == usize::MAX {
                    comp[w] = id;
                    stack.push(w);
                }
            }
        }
        sizes.push(size);
    }
    comp.into_iter().map(|c| sizes[c]).collect()
}

/// Target nodes visited by a randomized BFS of `size` nodes, in visit
/// order. The start is uniform over nodes in components of at least `size`
/// nodes; newly discovered neighbors are enqueued in shuffled order.
pub fn bfs_sample_nodes<R: Rng + ?Sized>(
    target: &Graph,
    size: usize,
    rng: &mut R,
) -> Result<Vec<usize>, GenError> {
    if size == 0 || size > target.node_count() {
        return Err(GenError::Param(format!(
            "sample size {size} outside 1..={}",
            target.node_count()
        )));
    }
    let comp_size = components(target);
    let starts: Vec<usize> = (0..target.node_count())
        .filter(|&v| comp_size[v] >= size)
        .collect();
    let &start = starts.choose(rng).ok_or(GenError::NoLargeComponent(size))?;
    let mut seen = vec![false; target.node_count()];
    let mut order = vec![start];
    let mut queue = VecDeque::from([start]);
    seen[start] = true;
    while let Some(v) = queue.pop_front() {
        let mut fresh: Vec<usize> = target
            .neighbors(v)
            .iter()
            .copied()
            .filter(|&w| !seen[w])
            .collect();
        fresh.shuffle(rng);
        for w in fresh {
            if order.len() == size {
                return Ok(order);
            }
            seen[w] = true;
            order.push(w);
            queue.push_back(w);
        }
    }
    Ok(order)
}

/// Induced BFS sample relabelled by visit order; a positive query under
/// both semantics.
pub fn bfs_sample<R: Rng + ?Sized>(
    target: &Graph,
    size: usize,
    rng: &mut R,
) -> Result<Graph, GenError> {
    Ok(target.induced_subgraph(&bfs_sample_nodes(target, size, rng)?))
}

/// Uniform graph with `n` nodes and exactly `m` edges.
pub fn gen_nm<R: Rng + ?Sized>(n: usize, m: usize, rng: &mut R) -> Result<Graph, GenError> {
    let pairs = n * n.saturating_sub(1) / 2;
    if m > pairs {
        return Err(GenError::Param(format!("{m} edges do not fit on {n} nodes")));
    }
    let mut edges: Vec<(usize, usize)> = index::sample(rng, pairs, m)
        .into_iter()
        .map(|k| pair_from_index(n, k))
        .collect();
    edges.sort_unstable();
    Ok(Graph::from_edges(n, &edges).expect("decoded pairs are in range"))
}

/// Inverse of the row-major enumeration of pairs `u < v`.
fn pair_from_index(n: usize, mut k: usize) -> (usize, usize) {
    let mut u = 0;
    while k >= n - 1 - u {
        k -= n - 1 - u;
        u += 1;
    }
    (u, u + 1 + k)
}

/// Outcome of a verified negative draw.
#[derive(Debug, Clone, PartialEq)]
pub struct Negative {
    pub query: Graph,
    pub attempts: usize,
    pub dropped: usize,
    pub inserted: usize,
}

fn verified_negative<R: Rng + ?Sized>(
    target: &Graph,
    options: &SearchOptions,
    max_attempts: usize,
    rng: &mut R,
    mut draw: impl FnMut(&mut R) -> Result<Graph, GenError>,
) -> Result<(Graph, usize), GenError> {
    for attempt in 1..=max_attempts {
        let candidate = draw(rng)?;
        // found: still a subgraph; timeout: undecided, never labelled
        if vf2_search(target, &candidate, options).outcome == SearchOutcome::NotFound {
            return Ok((candidate, attempt));
        }
    }
    Err(GenError::Exhausted(max_attempts))
}

/// Random graph with the reference's node and edge counts, redrawn until
/// the search proves it absent from `target`.
pub fn gen_negative_random<R: Rng + ?Sized>(
    reference: &Graph,
    target: &Graph,
    options: &SearchOptions,
    max_attempts: usize,
    rng: &mut R,
) -> Result<Negative, GenError> {
    let (n, m) = (reference.node_count(), reference.edge_count());
    let (query, attempts) =
        verified_negative(target, options, max_attempts, rng, |r| gen_nm(n, m, r))?;
    Ok(Negative {
        query,
        attempts,
        dropped: 0,
        inserted: 0,
    })
}

/// Drops `drop_count` uniform edges of `positive` and inserts
/// `insert_count` uniform non-edges, redrawing until the search proves the
/// result absent from `target`.
pub fn gen_negative_hard<R: Rng + ?Sized>(
    positive: &Graph,
    drop_count: usize,
    insert_count: usize,
    target: &Graph,
    options: &SearchOptions,
    max_attempts: usize,
    rng: &mut R,
) -> Result<Negative, GenError> {
    let edges: Vec<(usize, usize)> = positive.edges().collect();
    let n = positive.node_count();
    let non_edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|&(u, v)| !positive.has_edge(u, v))
        .collect();
    if drop_count > edges.len() || insert_count > non_edges.len() {
        return Err(GenError::Param(format!(
            "cannot drop {drop_count} of {} edges and insert {insert_count} of {} non-edges",
            edges.len(),
            non_edges.len()
        )));
    }
    let (query, attempts) = verified_negative(target, options, max_attempts, rng, |r| {
        let dropped = index::sample(r, edges.len(), drop_count).into_vec();
        let mut kept: Vec<(usize, usize)> = edges
            .iter()
            .enumerate()
            .filter(|(i, _)| !dropped.contains(i))
            .map(|(_, &e)| e)
            .collect();
        kept.extend(
            index::sample(r, non_edges.len(), insert_count)
                .into_iter()
                .map(|i| non_edges[i]),
        );
        Ok(Graph::from_edges(n, &kept).expect("perturbed edges are in range"))
    })?;
    Ok(Negative {
        query,
        attempts,
        dropped: drop_count,
        inserted: insert_count,
    })
}

/// Per-record provenance written next to a generated dataset.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub config: GenConfig,
    pub records: Vec<ManifestEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub index: usize,
    pub pair: usize,
    pub seed: u64,
    pub label: bool,
    pub attempts: usize,
}

const TAG_PAIR: u64 = 1;

fn build_pair(cfg: &GenConfig, pair: usize) -> Result<[DatasetRecord; 2], GenError> {
    let seed = derive_seed(cfg.seed, TAG_PAIR, pair as u64);
    let options = cfg.search_options();
    let name = cfg.generator_name();
    for attempt in 0..cfg.max_attempts {
        let mut rng = stream(seed, attempt as u64);
        let target = match cfg.generator {
            Generator::Er => gen_er(cfg.target_n, cfg.er_p, &mut rng)?,
            Generator::Ws => gen_ws(cfg.target_n, cfg.ws_k, cfg.ws_beta, &mut rng)?,
        };
        let positive = match bfs_sample(&target, cfg.query_size, &mut rng) {
            Ok(q) => q,
            Err(GenError::NoLargeComponent(_)) => continue,
            Err(e) => return Err(e),
        };
        if !vf2_search(&target, &positive, &options).outcome.is_found() {
            continue;
        }
        let negative = match cfg.negative_kind {
            NegativeKind::Random => {
                gen_negative_random(&positive, &target, &options, cfg.max_attempts, &mut rng)
            }
            NegativeKind::Hard => {
                let drop = cfg
                    .hard_drop_count
                    .unwrap_or_else(|| positive.edge_count().div_ceil(10));
                let insert = cfg.hard_insert_count.unwrap_or(drop);
                gen_negative_hard(
                    &positive,
                    drop,
                    insert,
                    &target,
                    &options,
                    cfg.max_attempts,
                    &mut rng,
                )
            }
        };
        let negative = match negative {
            Ok(neg) => neg,
            Err(GenError::Exhausted(_)) => continue,
            Err(e) => return Err(e),
        };
        let meta = |label: &str, dropped, inserted, attempts| RecordMeta {
            generator: format!("{name}/{label}"),
            seed,
            dropped_edges: dropped,
            inserted_edges: inserted,
            attempts,
        };
        let neg_label = match cfg.negative_kind {
            NegativeKind::Random => "random-negative",
            NegativeKind::Hard => "hard-negative",
        };
        return Ok([
            DatasetRecord {
                target: target.clone(),
                query: positive,
                label: true,
                meta: meta("bfs", 0, 0, attempt + 1),
            },
            DatasetRecord {
                target,
                query: negative.query,
                label: false,
                meta: meta(neg_label, negative.dropped, negative.inserted, negative.attempts),
            },
        ]);
    }
    Err(GenError::Exhausted(cfg.max_attempts))
}

/// Builds `pair_count` records: for each pair, a positive record followed by
/// a negative one on the same target. Each pair draws from its own seed, so
/// the output does not depend on thread scheduling.
pub fn build_dataset(cfg: &GenConfig) -> Result<(Vec<DatasetRecord>, Manifest), GenError> {
    cfg.validate()?;
    let pairs: Vec<[DatasetRecord; 2]> = (0..cfg.pair_count / 2)
        .into_par_iter()
        .map(|p| build_pair(cfg, p))
        .collect::<Result<_, _>>()?;
    let records: Vec<DatasetRecord> = pairs.into_iter().flatten().collect();
    let entries = records
        .iter()
        .enumerate()
        .map(|(index, r)| ManifestEntry {
            index,
            pair: index / 2,
            seed: r.meta.seed,
            label: r.label,
            attempts: r.meta.attempts,
        })
        .collect();
    Ok((
        records,
        Manifest {
            config: cfg.clone(),
            records: entries,
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::stream;

    fn quick_options() -> SearchOptions {
        SearchOptions::new(Semantics::Monomorphism, Duration::from_secs(5))
    }

    #[test]
    fn er_extremes() {
        let empty = gen_er(5, 0.0, &mut stream(1, 0)).unwrap();
        assert_eq!(empty.node_count(), 5);
        assert_eq!(empty.edge_count(), 0);
        let full = gen_er(5, 1.0, &mut stream(1, 0)).unwrap();
        assert_eq!(full.edge_count(), 10);
        assert!(gen_er(5, 1.5, &mut stream(1, 0)).is_err());
    }

    #[test]
    fn generators_are_deterministic() {
        let a = gen_er(30, 0.2, &mut stream(4, 0)).unwrap();
        let b = gen_er(30, 0.2, &mut stream(4, 0)).unwrap();
        assert_eq!(a, b);
        let a = gen_ws(30, 4, 0.3, &mut stream(4, 0)).unwrap();
        let b = gen_ws(30, 4, 0.3, &mut stream(4, 0)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn ws_lattice_and_rewiring() {
        let ring = gen_ws(10, 4, 0.0, &mut stream(0, 0)).unwrap();
        assert_eq!(ring.edge_count(), 20);
        assert!((0..10).all(|v| ring.degree(v) == 4));
        let rewired = gen_ws(40, 6, 0.5, &mut stream(2, 0)).unwrap();
        assert_eq!(rewired.edge_count(), 120);
        assert!(rewired.is_valid());
        assert!(gen_ws(10, 3, 0.1, &mut stream(0, 0)).is_err());
        assert!(gen_ws(4, 4, 0.1, &mut stream(0, 0)).is_err());
    }

    #[test]
    fn bfs_whole_graph_and_single_node() {
        let g = gen_ws(12, 4, 0.0, &mut stream(0, 0)).unwrap();
        let whole = bfs_sample(&g, 12, &mut stream(3, 0)).unwrap();
        assert_eq!(whole.node_count(), 12);
        assert_eq!(whole.edge_count(), g.edge_count());
        let single = bfs_sample(&g, 1, &mut stream(3, 0)).unwrap();
        assert_eq!((single.node_count(), single.edge_count()), (1, 0));
    }

    #[test]
    fn bfs_sample_is_an_induced_occurrence() {
        let g = gen_er(40, 0.15, &mut stream(8, 0)).unwrap();
        for s in 0..5 {
            let nodes = bfs_sample_nodes(&g, 15, &mut stream(s, 1)).unwrap();
            let q = g.induced_subgraph(&nodes);
            let opts = SearchOptions::new(Semantics::Induced, Duration::from_secs(5));
            assert!(vf2_search(&g, &q, &opts).outcome.is_found());
            // BFS order keeps the sample connected
            assert!(components(&q).iter().all(|&c| c == 15));
        }
    }

    #[test]
    fn bfs_needs_a_large_component() {
        let g = Graph::from_edges(6, &[(0, 1), (2, 3), (4, 5)]).unwrap();
        assert_eq!(
            bfs_sample(&g, 3, &mut stream(0, 0)),
            Err(GenError::NoLargeComponent(3))
        );
    }

    #[test]
    fn nm_graphs_have_exact_edge_count() {
        for m in [0, 1, 7, 21] {
            let g = gen_nm(7, m, &mut stream(m as u64, 0)).unwrap();
            assert_eq!(g.edge_count(), m);
        }
        assert!(gen_nm(4, 7, &mut stream(0, 0)).is_err());
        assert_eq!(pair_from_index(4, 0), (0, 1));
        assert_eq!(pair_from_index(4, 5), (2, 3));
    }

    #[test]
    fn random_negative_matches_density() {
        let target = gen_er(40, 0.15, &mut stream(5, 0)).unwrap();
        let positive = bfs_sample(&target, 15, &mut stream(5, 1)).unwrap();
        let neg = gen_negative_random(&positive, &target, &quick_options(), 100, &mut stream(5, 2))
            .unwrap();
        assert_eq!(neg.query.node_count(), 15);
        assert_eq!(neg.query.edge_count(), positive.edge_count());
        assert_eq!(
            vf2_search(&target, &neg.query, &quick_options()).outcome,
            SearchOutcome::NotFound
        );
        let again = gen_negative_random(&positive, &target, &quick_options(), 100, &mut stream(5, 2))
            .unwrap();
        assert_eq!(again, neg);
    }

    #[test]
    fn hard_negative_keeps_edge_count() {
        let target = gen_er(40, 0.15, &mut stream(6, 0)).unwrap();
        let positive = bfs_sample(&target, 15, &mut stream(6, 1)).unwrap();
        let neg = gen_negative_hard(&positive, 1, 1, &target, &quick_options(), 100, &mut stream(6, 2))
            .unwrap();
        assert_eq!(neg.query.edge_count(), positive.edge_count());
        assert_eq!(
            vf2_search(&target, &neg.query, &quick_options()).outcome,
            SearchOutcome::NotFound
        );
    }

    #[test]
    fn unperturbed_hard_negative_is_exhausted() {
        let target = gen_er(20, 0.3, &mut stream(7, 0)).unwrap();
        let positive = bfs_sample(&target, 6, &mut stream(7, 1)).unwrap();
        assert_eq!(
            gen_negative_hard(&positive, 0, 0, &target, &quick_options(), 5, &mut stream(7, 2)),
            Err(GenError::Exhausted(5))
        );
    }

    #[test]
    fn dataset_layout_and_determinism() {
        let cfg = GenConfig {
            pair_count: 10,
            seed: 3,
            ..Default::default()
        };
        let (records, manifest) = build_dataset(&cfg).unwrap();
        assert_eq!(records.len(), 10);
        assert_eq!(records.iter().filter(|r| r.label).count(), 5);
        for (i, r) in records.iter().enumerate() {
            assert_eq!(r.label, i % 2 == 0);
            assert_eq!(r.query.node_count(), 15);
            assert!(r.target.is_valid() && r.query.is_valid());
        }
        assert_eq!(manifest.records.len(), 10);
        let (again, _) = build_dataset(&cfg).unwrap();
        assert_eq!(again, records);
    }

    #[test]
    fn odd_pair_count_rejected() {
        let cfg = GenConfig {
            pair_count: 3,
            ..Default::default()
        };
        assert!(matches!(build_dataset(&cfg), Err(GenError::Param(_))));
    }
}
