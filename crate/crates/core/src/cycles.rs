//! Bounded chordless-cycle enumeration and supernode augmentation.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::graph::Graph;

/// A chordless cycle in canonical orientation: the smallest id first,
/// followed by the smaller of its two cycle neighbors.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ChordlessCycle(Vec<usize>);

impl ChordlessCycle {
    /// Canonicalizes any rotation or reflection of a cycle.
    pub fn new(nodes: Vec<usize>) -> Self {
        assert!(nodes.len() >= 3, "a cycle needs at least three nodes");
        let len = nodes.len();
        let pos = (0..len).min_by_key(|&i| nodes[i]).unwrap();
        let next = nodes[(pos + 1) % len];
        let prev = nodes[(pos + len - 1) % len];
        let canonical = if next < prev {
            (0..len).map(|i| nodes[(pos + i) % len]).collect()
        } else {
            (0..len).map(|i| nodes[(pos + len - i) % len]).collect()
        };
        ChordlessCycle(canonical)
    }

    pub fn nodes(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Consecutive members adjacent, no other member pair adjacent.
    pub fn is_chordless_in(&self, g: &Graph) -> bool {
        let len = self.0.len();
        (0..len).all(|i| {
            (i + 1..len).all(|j| {
                let consecutive = j == i + 1 || (i == 0 && j == len - 1);
                g.has_edge(self.0[i], self.0[j]) == consecutive
            })
        })
    }
}

impl fmt::Display for ChordlessCycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(" "))
    }
}

/// All chordless cycles with length in `3..=max_len`, sorted by length and
/// then by node sequence. Supernodes are ignored.
///
/// Each cycle is grown once, from its smallest node `s`, as an induced path
/// over nodes larger than `s`: a candidate extension may touch the path
/// only at its current end (and at `s`, which closes the cycle). The second
/// node must be smaller than the closing node, which fixes the orientation.
pub fn enumerate_chordless_cycles(g: &Graph, max_len: usize) -> Vec<ChordlessCycle> {
    let mut found = Vec::new();
    if max_len < 3 {
        return found;
    }
    let mut path = Vec::with_capacity(max_len);
    // blocked[v] counts interior path nodes adjacent to v
    let mut blocked = vec![0u32; g.node_count()];
    for s in 0..g.node_count() {
        if g.is_supernode(s) {
            continue;
        }
        path.clear();
        path.push(s);
        for &v1 in g.neighbors(s) {
            if v1 <= s || g.is_supernode(v1) {
                continue;
            }
            path.push(v1);
            extend(g, max_len, &mut path, &mut blocked, &mut found);
            path.pop();
        }
    }
    found.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.0.cmp(&b.0)));
    found
}

fn extend(
    g: &Graph,
    max_len: usize,
    path: &mut Vec<usize>,
    blocked: &mut [u32],
    found: &mut Vec<ChordlessCycle>,
) {
    let s = path[0];
    let v1 = path[1];
    let end = *path.last().unwrap();
    // interior members (not s, not end) must not touch the next node
    for &w in g.neighbors(end) {
        if w <= s || g.is_supernode(w) || path.contains(&w) || blocked[w] > 0 {
            continue;
        }
        if g.has_edge(w, s) {
            if path.len() >= 2 && v1 < w {
                let mut cycle = path.clone();
                cycle.push(w);
                found.push(ChordlessCycle(cycle));
            }
            // any longer path through w would carry the chord (w, s)
            continue;
        }
        if path.len() + 1 >= max_len {
            continue;
        }
        // `end` becomes interior once w is appended
        for &x in g.neighbors(end) {
            blocked[x] += 1;
        }
        path.push(w);
        extend(g, max_len, path, blocked, found);
        path.pop();
        for &x in g.neighbors(end) {
            blocked[x] -= 1;
        }
    }
}

/// Adds one supernode per chordless cycle of length `3..=max_len`, adjacent
/// to exactly the cycle's members. Supernodes already present are dropped
/// first, so augmenting twice is the same as augmenting once.
pub fn augment(g: &Graph, max_len: usize) -> Graph {
    augment_range(g, 3, max_len)
}

/// Like [`augment`], but skips cycles shorter than `min_len`.
pub fn augment_range(g: &Graph, min_len: usize, max_len: usize) -> Graph {
    let mut out = if g.has_supernodes() {
        g.regular_core()
    } else {
        g.clone()
    };
    for cycle in enumerate_chordless_cycles(&out, max_len) {
        if cycle.len() >= min_len {
            out.push_supernode(cycle.0);
        }
    }
    out
}
