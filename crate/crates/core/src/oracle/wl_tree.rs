//! Explicit unfolding trees and brute-force containment between them.

use crate::filter::nodes_compatible;
use crate::graph::Graph;

/// Depth-limited unfolding of a node: children are all graph neighbors,
/// recursively, with no deduplication of revisited nodes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnfoldingTree {
    pub node: usize,
    pub children: Vec<UnfoldingTree>,
}

impl UnfoldingTree {
    pub fn build(g: &Graph, root: usize, depth: usize) -> Self {
        let children = if depth == 0 {
            Vec::new()
        } else {
            g.neighbors(root)
                .iter()
                .map(|&v| UnfoldingTree::build(g, v, depth - 1))
                .collect()
        };
        UnfoldingTree {
            node: root,
            children,
        }
    }

    pub fn size(&self) -> usize {
        1 + self.children.iter().map(UnfoldingTree::size).sum::<usize>()
    }
}

struct Ctx<'a> {
    target: &'a Graph,
    query: &'a Graph,
    attr_epsilon: f64,
}

impl Ctx<'_> {
    fn contains(&self, big: &UnfoldingTree, small: &UnfoldingTree) -> bool {
        if !nodes_compatible(self.target, big.node, self.query, small.node, self.attr_epsilon, true) {
            return false;
        }
        if small.children.len() > big.children.len() {
            return false;
        }
        let relation: Vec<Vec<bool>> = small
            .children
            .iter()
            .map(|s| big.children.iter().map(|b| self.contains(b, s)).collect())
            .collect();
        let mut taken = vec![false; big.children.len()];
        assign(&relation, 0, &mut taken)
    }
}

/// Exhaustive search for an injective assignment of rows to columns.
fn assign(relation: &[Vec<bool>], row: usize, taken: &mut [bool]) -> bool {
    if row == relation.len() {
        return true;
    }
    for col in 0..taken.len() {
        if relation[row][col] && !taken[col] {
            taken[col] = true;
            let ok = assign(relation, row + 1, taken);
            taken[col] = false;
            if ok {
                return true;
            }
        }
    }
    false
}

/// Whether the depth-`depth` unfolding tree of query node `q` embeds into
/// that of target node `t`, with roots and matched nodes compatible under
/// the attribute gate. Cost grows exponentially in `depth`.
pub fn wl_tree_contains(
    target: &Graph,
    t: usize,
    query: &Graph,
    q: usize,
    depth: usize,
    attr_epsilon: f64,
) -> bool {
    let big = UnfoldingTree::build(target, t, depth);
    let small = UnfoldingTree::build(query, q, depth);
    Ctx {
        target,
        query,
        attr_epsilon,
    }
    .contains(&big, &small)
}
