//! One refinement layer of the indicator matrix.
//!
//! Both step kinds compute `S^(l+1) = S^(0) ⊙ R(S^(l))` where `R` tests,
//! for each pair `(t, q)`, whether the neighbors of `q` can be injectively
//! assigned to neighbors of `t` under `S^(l)`. The sampled step checks
//! Hall's condition `|N(W)| >= |W|` for a handful of subsets `W ⊆ N(q)`;
//! the exact step solves the bipartite matching outright.

use ndarray::Array2;
use rand::Rng;

use super::aggregate::{
    agg_max_counted, agg_max_normalized_counted, agg_min_counted, agg_sum_counted,
};
use super::{FilterConfig, FilterError};
use crate::graph::Graph;
use crate::indicator::IndicatorMatrix;
use crate::oracle::HopcroftKarp;
use crate::rng::sample_stream;

/// Slack for the `>= 1` comparison on degree-normalized sums.
const UNIT_TOLERANCE: f64 = 1e-9;

/// Which subsets `W ⊆ N(q)` a Φ evaluation tests.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PhiCase {
    /// `W = N(q)` on the unsampled query.
    Full,
    /// `W = N'(q)` on a DropEdge sample.
    Sampled,
    /// Every singleton `W = {q_i}`.
    Single,
}

/// Keeps each undirected query edge independently with probability
/// `1 - drop_prob`. Edges are visited in ascending `(u, v)` order, one
/// Bernoulli draw each.
pub fn drop_edge<R: Rng + ?Sized>(query: &Graph, drop_prob: f64, rng: &mut R) -> Vec<Vec<usize>> {
    let keep = (1.0 - drop_prob).clamp(0.0, 1.0);
    let mut adj = vec![Vec::new(); query.node_count()];
    for (u, v) in query.edges() {
        if rng.random_bool(keep) {
            adj[u].push(v);
            adj[v].push(u);
        }
    }
    for list in &mut adj {
        list.sort_unstable();
    }
    adj
}

fn check_indicator(
    s: &IndicatorMatrix,
    target_nodes: usize,
    query_nodes: usize,
) -> Result<(), FilterError> {
    if s.shape() != (target_nodes, query_nodes) {
        return Err(FilterError::IndicatorShape {
            expected: (target_nodes, query_nodes),
            found: s.shape(),
        });
    }
    Ok(())
}

/// Hall-condition matrix for one subset family.
///
/// `query_adj` is the adjacency used to form `W`: the full query adjacency
/// for [`PhiCase::Full`] and [`PhiCase::Single`], a DropEdge sample for
/// [`PhiCase::Sampled`].
pub fn phi(
    query_adj: &[Vec<usize>],
    target_adj: &[Vec<usize>],
    s: &IndicatorMatrix,
    case: PhiCase,
) -> Result<IndicatorMatrix, FilterError> {
    phi_counted(query_adj, target_adj, s, case, &mut 0)
}

pub(crate) fn phi_counted(
    query_adj: &[Vec<usize>],
    target_adj: &[Vec<usize>],
    s: &IndicatorMatrix,
    case: PhiCase,
    ops: &mut u64,
) -> Result<IndicatorMatrix, FilterError> {
    check_indicator(s, target_adj.len(), query_adj.len())?;
    match case {
        PhiCase::Full | PhiCase::Sampled => {
            // Z_W = AGG_max(D^-1 A_Q, S^T): row q marks M(q) scaled by 1/|W|
            let z_w = agg_max_normalized_counted(query_adj, &s.to_real_transposed(), ops)?;
            // Z_N(W) = AGG_sum(A_T, Z_W^T): entry (t, q) is |N(t) ∩ M(q)| / |W|
            let z_nw = agg_sum_counted(target_adj, &z_w.t().to_owned(), ops)?;
            Ok(IndicatorMatrix::from_fn(s.rows(), s.cols(), |t, q| {
                // |W| = 0 satisfies Hall vacuously
                query_adj[q].is_empty() || z_nw[[t, q]] >= 1.0 - UNIT_TOLERANCE
            }))
        }
        PhiCase::Single => {
            // entry (t, q_i): some neighbor of t may host q_i
            let reach = agg_max_counted(target_adj, &s.to_real(), ops)?;
            // min over q_i in N(q); isolated q yields ones
            let covered: Array2<f64> = agg_min_counted(query_adj, &reach.t().to_owned(), ops)?;
            Ok(IndicatorMatrix::from_fn(s.rows(), s.cols(), |t, q| {
                covered[[q, t]] >= 1.0
            }))
        }
    }
}

/// `S^(0) ⊙ Φ(full) ⊙ Φ(sample_1) ⊙ … ⊙ Φ(sample_{K-1}) ⊙ Φ(single)`.
///
/// Sample `k` of layer `layer` draws from the stream keyed by
/// `(config.seed, layer, k)`.
pub fn sampled_step(
    target: &Graph,
    query: &Graph,
    s_l: &IndicatorMatrix,
    s0: &IndicatorMatrix,
    config: &FilterConfig,
    layer: usize,
) -> Result<IndicatorMatrix, FilterError> {
    sampled_step_counted(target, query, s_l, s0, config, layer, &mut 0)
}

pub(crate) fn sampled_step_counted(
    target: &Graph,
    query: &Graph,
    s_l: &IndicatorMatrix,
    s0: &IndicatorMatrix,
    config: &FilterConfig,
    layer: usize,
    ops: &mut u64,
) -> Result<IndicatorMatrix, FilterError> {
    check_indicator(s0, target.node_count(), query.node_count())?;
    let target_adj = target.adjacency();
    let mut next = s0.clone();
    next.and_assign(&phi_counted(query.adjacency(), target_adj, s_l, PhiCase::Full, ops)?);
    for k in 1..config.samples {
        let mut rng = sample_stream(config.seed, layer, k);
        let sample = drop_edge(query, config.drop_prob, &mut rng);
        next.and_assign(&phi_counted(&sample, target_adj, s_l, PhiCase::Sampled, ops)?);
    }
    next.and_assign(&phi_counted(query.adjacency(), target_adj, s_l, PhiCase::Single, ops)?);
    Ok(next)
}

/// Entry `(t, q)` survives when `S^(0)` allows it and the bipartite graph
/// between `N(q)` and `N(t)` with edges from `S^(l)` has a matching that
/// saturates `N(q)`.
pub fn exact_hall_step(
    target: &Graph,
    query: &Graph,
    s_l: &IndicatorMatrix,
    s0: &IndicatorMatrix,
) -> Result<IndicatorMatrix, FilterError> {
    exact_hall_step_counted(target, query, s_l, s0, &mut 0)
}

pub(crate) fn exact_hall_step_counted(
    target: &Graph,
    query: &Graph,
    s_l: &IndicatorMatrix,
    s0: &IndicatorMatrix,
    ops: &mut u64,
) -> Result<IndicatorMatrix, FilterError> {
    let (nt, nq) = (target.node_count(), query.node_count());
    check_indicator(s_l, nt, nq)?;
    check_indicator(s0, nt, nq)?;
    let mut hk = HopcroftKarp::default();
    let mut next = IndicatorMatrix::zeros(nt, nq);
    for t in 0..nt {
        let nbr_t = target.neighbors(t);
        for q in 0..nq {
            if !s0.get(t, q) {
                continue;
            }
            let nbr_q = query.neighbors(q);
            if nbr_q.is_empty() {
                next.set(t, q, true);
                continue;
            }
            if nbr_q.len() > nbr_t.len() {
                continue;
            }
            hk.reset(nbr_q.len(), nbr_t.len());
            let mut every_left_has_edge = true;
            for (i, &qi) in nbr_q.iter().enumerate() {
                let mut any = false;
                for (j, &tj) in nbr_t.iter().enumerate() {
                    if s_l.get(tj, qi) {
                        hk.add_edge(i, j);
                        any = true;
                    }
                }
                every_left_has_edge &= any;
            }
            *ops += (nbr_q.len() * nbr_t.len()) as u64;
            if every_left_has_edge && hk.run() == nbr_q.len() {
                next.set(t, q, true);
            }
        }
    }
    Ok(next)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn g(n: usize, edges: &[(usize, usize)]) -> Graph {
        Graph::from_edges(n, edges).unwrap()
    }

    fn triangle() -> Graph {
        g(3, &[(0, 1), (1, 2), (0, 2)])
    }

    fn p3() -> Graph {
        g(3, &[(0, 1), (1, 2)])
    }

    fn k4() -> Graph {
        g(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
    }

    #[test]
    fn drop_edge_tiny_probability_keeps_everything() {
        let q = k4();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert_eq!(drop_edge(&q, 1e-12, &mut rng), q.adjacency().to_vec());
    }

    #[test]
    fn drop_edge_is_deterministic() {
        let q = k4();
        let a = drop_edge(&q, 0.5, &mut sample_stream(42, 0, 1));
        let b = drop_edge(&q, 0.5, &mut sample_stream(42, 0, 1));
        assert_eq!(a, b);
    }

    #[test]
    fn drop_edge_replays_stream_on_triangle() {
        let q = triangle();
        let sample = drop_edge(&q, 0.5, &mut sample_stream(7, 0, 1));
        // replay: one Bernoulli(0.5) per edge in ascending order
        let mut rng = sample_stream(7, 0, 1);
        let kept: Vec<(usize, usize)> = q.edges().filter(|_| rng.random_bool(0.5)).collect();
        for u in 0..3 {
            for v in 0..3 {
                let in_sample = sample[u].contains(&v);
                assert_eq!(in_sample, sample[v].contains(&u), "asymmetric");
                assert_eq!(in_sample, kept.contains(&(u.min(v), u.max(v))));
                if in_sample {
                    assert!(q.has_edge(u, v));
                }
            }
        }
    }

    #[test]
    fn phi_single_node_query_is_vacuous() {
        let t = k4();
        let q = Graph::empty(1);
        let s = IndicatorMatrix::from_rows(&["0", "1", "0", "0"]).unwrap();
        for case in [PhiCase::Full, PhiCase::Sampled, PhiCase::Single] {
            let out = phi(q.adjacency(), t.adjacency(), &s, case).unwrap();
            assert_eq!(out, IndicatorMatrix::ones(4, 1));
        }
    }

    #[test]
    fn phi_triangle_in_triangle_full() {
        let t = triangle();
        let out = phi(t.adjacency(), t.adjacency(), &IndicatorMatrix::ones(3, 3), PhiCase::Full)
            .unwrap();
        assert_eq!(out, IndicatorMatrix::ones(3, 3));
    }

    #[test]
    fn phi_triangle_in_path_full() {
        let out = phi(
            triangle().adjacency(),
            p3().adjacency(),
            &IndicatorMatrix::ones(3, 3),
            PhiCase::Full,
        )
        .unwrap();
        assert_eq!(out, IndicatorMatrix::from_rows(&["000", "111", "000"]).unwrap());
    }

    #[test]
    fn phi_single_case_on_path() {
        // q = 0 in P3 query has neighbor 1; only targets whose neighborhood
        // holds a candidate for 1 survive
        let q = p3();
        let t = p3();
        let s = IndicatorMatrix::from_rows(&["000", "010", "000"]).unwrap();
        let out = phi(q.adjacency(), t.adjacency(), &s, PhiCase::Single).unwrap();
        assert_eq!(out, IndicatorMatrix::from_rows(&["101", "000", "101"]).unwrap());
    }

    #[test]
    fn phi_rejects_bad_shape() {
        let err = phi(
            triangle().adjacency(),
            p3().adjacency(),
            &IndicatorMatrix::ones(2, 3),
            PhiCase::Full,
        );
        assert!(matches!(err, Err(FilterError::IndicatorShape { .. })));
    }

    #[test]
    fn sampled_step_edgeless_query_returns_mask() {
        let t = k4();
        let q = Graph::empty(2);
        let s0 = IndicatorMatrix::from_rows(&["10", "01", "11", "00"]).unwrap();
        let cfg = FilterConfig::sampled(3, 4, 11);
        let s_l = IndicatorMatrix::zeros(4, 2);
        assert_eq!(sampled_step(&t, &q, &s_l, &s0, &cfg, 0).unwrap(), s0);
    }

    #[test]
    fn sampled_step_zero_input_gives_zero() {
        let t = k4();
        let q = triangle();
        let cfg = FilterConfig::sampled(3, 4, 0);
        let out = sampled_step(&t, &q, &IndicatorMatrix::zeros(4, 3), &IndicatorMatrix::ones(4, 3), &cfg, 0)
            .unwrap();
        assert_eq!(out, IndicatorMatrix::zeros(4, 3));
    }

    #[test]
    fn sampled_step_triangle_in_path() {
        let cfg = FilterConfig::sampled(1, 5, 3);
        let ones = IndicatorMatrix::ones(3, 3);
        let out = sampled_step(&p3(), &triangle(), &ones, &ones, &cfg, 0).unwrap();
        assert_eq!(out, IndicatorMatrix::from_rows(&["000", "111", "000"]).unwrap());
    }

    #[test]
    fn exact_step_triangle_in_k4_is_stable() {
        let ones = IndicatorMatrix::ones(4, 3);
        let s1 = exact_hall_step(&k4(), &triangle(), &ones, &ones).unwrap();
        assert_eq!(s1, ones);
        let s2 = exact_hall_step(&k4(), &triangle(), &s1, &ones).unwrap();
        assert_eq!(s2, ones);
    }

    #[test]
    fn exact_step_triangle_in_path() {
        let ones = IndicatorMatrix::ones(3, 3);
        let s1 = exact_hall_step(&p3(), &triangle(), &ones, &ones).unwrap();
        assert_eq!(s1, IndicatorMatrix::from_rows(&["000", "111", "000"]).unwrap());
    }

    #[test]
    fn exact_step_zero_input() {
        // q = 2 is isolated, so only its column keeps S^(0)
        let q = g(3, &[(0, 1)]);
        let t = k4();
        let s0 = IndicatorMatrix::from_rows(&["111", "110", "011", "001"]).unwrap();
        let out = exact_hall_step(&t, &q, &IndicatorMatrix::zeros(4, 3), &s0).unwrap();
        assert_eq!(out, IndicatorMatrix::from_rows(&["001", "000", "001", "001"]).unwrap());
    }
}
