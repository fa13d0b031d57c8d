//! Undirected simple graphs with optional node attributes and supernode tags.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("line {line}: self-loop on node {node}")]
    SelfLoop { line: usize, node: usize },
    #[error("line {line}: node {node} is out of range for declared count {count}")]
    NodeOutOfRange { line: usize, node: usize, count: usize },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("invalid graph: {0}")]
    Invalid(String),
}

/// Tag carried by every node. Supernodes stand for one chordless cycle and
/// keep the cycle's members in cyclic order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NodeKind {
    Regular,
    Supernode { cycle: Vec<usize> },
}

impl NodeKind {
    pub fn is_supernode(&self) -> bool {
        matches!(self, NodeKind::Supernode { .. })
    }

    pub fn cycle_length(&self) -> Option<usize> {
        match self {
            NodeKind::Regular => None,
            NodeKind::Supernode { cycle } => Some(cycle.len()),
        }
    }
}

/// A structural problem reported by [`Graph::validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    Asymmetric { from: usize, to: usize },
    SelfLoop { node: usize },
    DuplicateNeighbor { node: usize, neighbor: usize },
    UnsortedNeighbors { node: usize },
    NeighborOutOfRange { node: usize, neighbor: usize },
    AttributeShape { expected_rows: usize, rows: usize },
    AttributeWidth { row: usize, expected: usize, found: usize },
    KindCount { expected: usize, found: usize },
    Supernode { node: usize, reason: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Asymmetric { from, to } => {
                write!(f, "asymmetric: {from} -> {to} has no reverse entry")
            }
            Violation::SelfLoop { node } => write!(f, "self-loop at {node}"),
            Violation::DuplicateNeighbor { node, neighbor } => {
                write!(f, "duplicate neighbor {neighbor} of {node}")
            }
            Violation::UnsortedNeighbors { node } => write!(f, "unsorted neighbors of {node}"),
            Violation::NeighborOutOfRange { node, neighbor } => {
                write!(f, "neighbor {neighbor} of {node} out of range")
            }
            Violation::AttributeShape { expected_rows, rows } => {
                write!(f, "attribute shape: {rows} rows for {expected_rows} nodes")
            }
            Violation::AttributeWidth { row, expected, found } => {
                write!(f, "attribute shape: row {row} has width {found}, expected {expected}")
            }
            Violation::KindCount { expected, found } => {
                write!(f, "kind count: {found} tags for {expected} nodes")
            }
            Violation::Supernode { node, reason } => write!(f, "supernode {node}: {reason}"),
        }
    }
}

/// Undirected simple graph over dense node ids `0..node_count`.
///
/// Neighbor lists are kept sorted so that edge lookups are a binary search.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "GraphRepr", into = "GraphRepr")]
pub struct Graph {
    adjacency: Vec<Vec<usize>>,
    attributes: Option<Vec<Vec<f64>>>,
    kinds: Vec<NodeKind>,
}

impl Graph {
    pub fn empty(node_count: usize) -> Self {
        Graph {
            adjacency: vec![Vec::new(); node_count],
            attributes: None,
            kinds: vec![NodeKind::Regular; node_count],
        }
    }

    /// Builds a graph from an undirected edge list. Duplicate and reversed
    /// edges collapse into one.
    pub fn from_edges(node_count: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut adjacency = vec![Vec::new(); node_count];
        for &(u, v) in edges {
            if u == v {
                return Err(GraphError::Invalid(format!("self-loop on node {u}")));
            }
            if u >= node_count || v >= node_count {
                return Err(GraphError::Invalid(format!(
                    "edge ({u}, {v}) out of range for {node_count} nodes"
                )));
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
            list.dedup();
        }
        Ok(Graph {
            adjacency,
            attributes: None,
            kinds: vec![NodeKind::Regular; node_count],
        })
    }

    /// Assembles a graph from raw parts without checking anything. Use
    /// [`Graph::validate`] to inspect the result.
    pub fn from_parts_unchecked(
        adjacency: Vec<Vec<usize>>,
        attributes: Option<Vec<Vec<f64>>>,
        kinds: Vec<NodeKind>,
    ) -> Self {
        Graph {
            adjacency,
            attributes,
            kinds,
        }
    }

    /// Assembles a graph from raw parts and rejects it unless it validates.
    pub fn from_parts(
        adjacency: Vec<Vec<usize>>,
        attributes: Option<Vec<Vec<f64>>>,
        kinds: Vec<NodeKind>,
    ) -> Result<Self, GraphError> {
        let g = Graph::from_parts_unchecked(adjacency, attributes, kinds);
        let violations = g.validate();
        if violations.is_empty() {
            Ok(g)
        } else {
            let listed: Vec<String> = violations.iter().map(ToString::to_string).collect();
            Err(GraphError::Invalid(listed.join("; ")))
        }
    }

    pub fn with_attributes(mut self, attributes: Vec<Vec<f64>>) -> Result<Self, GraphError> {
        if attributes.len() != self.node_count() {
            return Err(GraphError::Invalid(format!(
                "attribute shape: {} rows for {} nodes",
                attributes.len(),
                self.node_count()
            )));
        }
        let width = attributes.first().map_or(0, Vec::len);
        if width == 0 || attributes.iter().any(|row| row.len() != width) {
            return Err(GraphError::Invalid(
                "attribute rows must share one non-zero width".into(),
            ));
        }
        self.attributes = Some(attributes);
        Ok(self)
    }

    /// One-hot attributes from categorical labels in `0..classes`.
    pub fn with_labels(self, labels: &[usize], classes: usize) -> Result<Self, GraphError> {
        let rows = labels
            .iter()
            .map(|&l| {
                let mut row = vec![0.0; classes];
                if l < classes {
                    row[l] = 1.0;
                }
                row
            })
            .collect();
        self.with_attributes(rows)
    }

    pub fn node_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, node: usize) -> &[usize] {
        &self.adjacency[node]
    }

    pub fn degree(&self, node: usize) -> usize {
        self.adjacency[node].len()
    }

    pub fn adjacency(&self) -> &[Vec<usize>] {
        &self.adjacency
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency
            .get(u)
            .is_some_and(|list| list.binary_search(&v).is_ok())
    }

    /// Edges as `(u, v)` with `u < v`, in ascending order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    pub fn attributes(&self) -> Option<&[Vec<f64>]> {
        self.attributes.as_deref()
    }

    pub fn attribute_dim(&self) -> Option<usize> {
        self.attributes
            .as_ref()
            .map(|rows| rows.first().map_or(0, Vec::len))
    }

    pub fn kind(&self, node: usize) -> &NodeKind {
        &self.kinds[node]
    }

    pub fn kinds(&self) -> &[NodeKind] {
        &self.kinds
    }

    pub fn is_supernode(&self, node: usize) -> bool {
        self.kinds[node].is_supernode()
    }

    pub fn has_supernodes(&self) -> bool {
        self.kinds.iter().any(NodeKind::is_supernode)
    }

    pub fn regular_count(&self) -> usize {
        self.kinds.iter().filter(|k| !k.is_supernode()).count()
    }

    /// The subgraph on regular nodes only. Augmentation appends supernodes
    /// after the regular ids, so for augmented graphs ids are preserved.
    pub fn regular_core(&self) -> Graph {
        let keep: Vec<usize> = (0..self.node_count())
            .filter(|&v| !self.is_supernode(v))
            .collect();
        self.induced_subgraph(&keep)
    }

    /// Subgraph induced by `nodes`, relabelled so that `nodes[i]` becomes `i`.
    pub fn induced_subgraph(&self, nodes: &[usize]) -> Graph {
        let mut index = vec![usize::MAX; self.node_count()];
        for (i, &v) in nodes.iter().enumerate() {
            index[v] = i;
        }
        let adjacency = nodes
            .iter()
            .map(|&v| {
                let mut list: Vec<usize> = self.adjacency[v]
                    .iter()
                    .filter_map(|&w| (index[w] != usize::MAX).then_some(index[w]))
                    .collect();
                list.sort_unstable();
                list
            })
            .collect();
        let attributes = self
            .attributes
            .as_ref()
            .map(|rows| nodes.iter().map(|&v| rows[v].clone()).collect());
        let kinds = nodes
            .iter()
            .map(|&v| match &self.kinds[v] {
                NodeKind::Regular => NodeKind::Regular,
                NodeKind::Supernode { cycle } => NodeKind::Supernode {
                    cycle: cycle.iter().map(|&c| index[c]).collect(),
                },
            })
            .collect();
        Graph {
            adjacency,
            attributes,
            kinds,
        }
    }

    /// Appends a supernode adjacent to exactly `cycle`, returning its id.
    pub(crate) fn push_supernode(&mut self, cycle: Vec<usize>) -> usize {
        let id = self.node_count();
        for &member in &cycle {
            self.adjacency[member].push(id);
        }
        let mut own = cycle.clone();
        own.sort_unstable();
        self.adjacency.push(own);
        if let Some(rows) = &mut self.attributes {
            let width = rows.first().map_or(0, Vec::len);
            rows.push(vec![0.0; width]);
        }
        self.kinds.push(NodeKind::Supernode { cycle });
        id
    }

    /// Every invariant violation, in a stable order. Empty means valid.
    pub fn validate(&self) -> Vec<Violation> {
        let n = self.node_count();
        let mut out = Vec::new();
        for (u, list) in self.adjacency.iter().enumerate() {
            if list.windows(2).any(|w| w[0] > w[1]) {
                out.push(Violation::UnsortedNeighbors { node: u });
            }
            let mut seen = BTreeSet::new();
            for &v in list {
                if v >= n {
                    out.push(Violation::NeighborOutOfRange { node: u, neighbor: v });
                    continue;
                }
                if v == u {
                    out.push(Violation::SelfLoop { node: u });
                }
                if !seen.insert(v) {
                    out.push(Violation::DuplicateNeighbor { node: u, neighbor: v });
                }
                if !self.adjacency[v].contains(&u) {
                    out.push(Violation::Asymmetric { from: u, to: v });
                }
            }
        }
        if let Some(rows) = &self.attributes {
            if rows.len() != n {
                out.push(Violation::AttributeShape {
                    expected_rows: n,
                    rows: rows.len(),
                });
            }
            let width = rows.first().map_or(0, Vec::len);
            if width == 0 && !rows.is_empty() {
                out.push(Violation::AttributeWidth {
                    row: 0,
                    expected: 1,
                    found: 0,
                });
            }
            for (i, row) in rows.iter().enumerate() {
                if row.len() != width {
                    out.push(Violation::AttributeWidth {
                        row: i,
                        expected: width,
                        found: row.len(),
                    });
                }
            }
        }
        if self.kinds.len() != n {
            out.push(Violation::KindCount {
                expected: n,
                found: self.kinds.len(),
            });
            return out;
        }
        for (s, kind) in self.kinds.iter().enumerate() {
            if let NodeKind::Supernode { cycle } = kind {
                if let Some(reason) = self.supernode_problem(s, cycle) {
                    out.push(Violation::Supernode { node: s, reason });
                }
            }
        }
        out
    }

    fn supernode_problem(&self, s: usize, cycle: &[usize]) -> Option<String> {
        let n = self.node_count();
        let len = cycle.len();
        if len < 3 {
            return Some(format!("cycle length {len} < 3"));
        }
        if cycle.iter().any(|&c| c >= n || self.is_supernode(c)) {
            return Some("cycle members must be regular nodes".into());
        }
        let members: BTreeSet<usize> = cycle.iter().copied().collect();
        if members.len() != len {
            return Some("repeated cycle member".into());
        }
        let neighbors: BTreeSet<usize> = self.adjacency[s].iter().copied().collect();
        if neighbors != members {
            return Some("neighbor set differs from cycle members".into());
        }
        for i in 0..len {
            for j in (i + 1)..len {
                let consecutive = j == i + 1 || (i == 0 && j == len - 1);
                if self.has_edge(cycle[i], cycle[j]) != consecutive {
                    return Some(if consecutive {
                        format!("missing cycle edge {}-{}", cycle[i], cycle[j])
                    } else {
                        format!("chord {}-{}", cycle[i], cycle[j])
                    });
                }
            }
        }
        None
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    /// Serializes the structure (not attributes or kinds) as an edge list
    /// with an `n` header.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("n {}\n", self.node_count());
        for (u, v) in self.edges() {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }
}

/// Parses the line-oriented edge-list format: an optional `n <count>` header
/// followed by one `u v` pair per line. `#` starts a comment line.
pub fn parse_edge_list(text: &str) -> Result<Graph, GraphError> {
    let mut declared: Option<usize> = None;
    let mut edges = Vec::new();
    let mut max_id: Option<usize> = None;
    let mut seen_content = false;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = trimmed.split_whitespace().collect();
        if fields[0] == "n" {
            if seen_content {
                return Err(GraphError::Parse {
                    line,
                    message: "header must precede edges".into(),
                });
            }
            let [_, count] = fields[..] else {
                return Err(GraphError::Parse {
                    line,
                    message: "expected `n <count>`".into(),
                });
            };
            declared = Some(parse_id(count, line)?);
            seen_content = true;
            continue;
        }
        seen_content = true;
        let [a, b] = fields[..] else {
            return Err(GraphError::Parse {
                line,
                message: format!("expected `u v`, found {trimmed:?}"),
            });
        };
        let (u, v) = (parse_id(a, line)?, parse_id(b, line)?);
        if u == v {
            return Err(GraphError::SelfLoop { line, node: u });
        }
        if let Some(count) = declared {
            if let Some(&node) = [u, v].iter().find(|&&x| x >= count) {
                return Err(GraphError::NodeOutOfRange { line, node, count });
            }
        }
        max_id = Some(max_id.map_or(u.max(v), |m: usize| m.max(u).max(v)));
        edges.push((u, v));
    }

    let n = declared.unwrap_or_else(|| max_id.map_or(0, |m| m + 1));
    Graph::from_edges(n, &edges)
}

fn parse_id(token: &str, line: usize) -> Result<usize, GraphError> {
    token.parse().map_err(|_| GraphError::Parse {
        line,
        message: format!("invalid node id {token:?}"),
    })
}

/// On-disk shape of a graph inside dataset records.
#[derive(Debug, Clone, Serialize, Deserialize)]
struct GraphRepr {
    n: usize,
    edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    attrs: Option<Vec<Vec<f64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    kinds: Option<Vec<NodeKind>>,
}

impl From<Graph> for GraphRepr {
    fn from(g: Graph) -> Self {
        let edges = g.edges().map(|(u, v)| [u, v]).collect();
        let kinds = g.has_supernodes().then(|| g.kinds.clone());
        GraphRepr {
            n: g.node_count(),
            edges,
            attrs: g.attributes,
            kinds,
        }
    }
}

impl TryFrom<GraphRepr> for Graph {
    type Error = GraphError;

    fn try_from(repr: GraphRepr) -> Result<Self, Self::Error> {
        let pairs: Vec<(usize, usize)> = repr.edges.iter().map(|e| (e[0], e[1])).collect();
        let base = Graph::from_edges(repr.n, &pairs)?;
        let kinds = repr
            .kinds
            .unwrap_or_else(|| vec![NodeKind::Regular; repr.n]);
        Graph::from_parts(base.adjacency, repr.attrs, kinds)
    }
}
