use super::FilterError;
use crate::graph::{Graph, NodeKind};
use crate::indicator::IndicatorMatrix;

/// Cosine gate between two attribute vectors. Zero vectors only match an
/// identical vector.
pub fn attributes_match(a: &[f64], b: &[f64], attr_epsilon: f64) -> bool {
    let dot: f64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
    let na = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    let nb = b.iter().map(|x| x * x).sum::<f64>().sqrt();
    if na == 0.0 || nb == 0.0 {
        return a == b;
    }
    dot / (na * nb) >= 1.0 - attr_epsilon
}

/// Root compatibility of target node `t` and query node `q`: equal kinds,
/// equal cycle length for supernodes when `strict_length`, and matching
/// attributes for regular nodes.
pub fn nodes_compatible(
    target: &Graph,
    t: usize,
    query: &Graph,
    q: usize,
    attr_epsilon: f64,
    strict_length: bool,
) -> bool {
    match (target.kind(t), query.kind(q)) {
        (NodeKind::Regular, NodeKind::Regular) => match (target.attributes(), query.attributes()) {
            (Some(xt), Some(xq)) => attributes_match(&xt[t], &xq[q], attr_epsilon),
            _ => true,
        },
        (NodeKind::Supernode { cycle: a }, NodeKind::Supernode { cycle: b }) => {
            !strict_length || a.len() == b.len()
        }
        _ => false,
    }
}

fn check_attributes(target: &Graph, query: &Graph) -> Result<(), FilterError> {
    match (target.attribute_dim(), query.attribute_dim()) {
        (None, None) => Ok(()),
        (Some(a), Some(b)) if a == b => Ok(()),
        (a, b) => Err(FilterError::AttributeMismatch {
            target: a,
            query: b,
        }),
    }
}

/// The layer-0 indicator `S^(0)`.
pub fn init_indicator(
    target: &Graph,
    query: &Graph,
    attr_epsilon: f64,
    strict_supernode_length: bool,
) -> Result<IndicatorMatrix, FilterError> {
    check_attributes(target, query)?;
    Ok(IndicatorMatrix::from_fn(
        target.node_count(),
        query.node_count(),
        |t, q| nodes_compatible(target, t, query, q, attr_epsilon, strict_supernode_length),
    ))
}
