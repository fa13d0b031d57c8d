//! Maximum-cardinality bipartite matching (Hopcroft–Karp).

use std::collections::VecDeque;

const FREE: usize = usize::MAX;
const INF: u32 = u32::MAX;

/// Result of [`hopcroft_karp`]: the matching size and one maximum matching
/// as `(left, right)` pairs sorted by left index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matching {
    pub size: usize,
    pub pairs: Vec<(usize, usize)>,
}

impl Matching {
    /// Every left vertex is matched.
    pub fn saturates_left(&self, left_size: usize) -> bool {
        self.size == left_size
    }
}

/// Reusable matcher; buffers survive [`HopcroftKarp::reset`] so that many
/// small instances can be solved without reallocating.
#[derive(Debug, Default, Clone)]
pub struct HopcroftKarp {
    adj: Vec<Vec<usize>>,
    left: usize,
    right: usize,
    mate_left: Vec<usize>,
    mate_right: Vec<usize>,
    dist: Vec<u32>,
    queue: VecDeque<usize>,
}

impl HopcroftKarp {
    pub fn new(left: usize, right: usize) -> Self {
        let mut hk = HopcroftKarp::default();
        hk.reset(left, right);
        hk
    }

    pub fn reset(&mut self, left: usize, right: usize) {
        if self.adj.len() < left {
            self.adj.resize_with(left, Vec::new);
        }
        for list in &mut self.adj[..left] {
            list.clear();
        }
        self.left = left;
        self.right = right;
    }

    pub fn add_edge(&mut self, l: usize, r: usize) {
        debug_assert!(l < self.left && r < self.right);
        self.adj[l].push(r);
    }

    /// Runs to completion and returns the matching size.
    pub fn run(&mut self) -> usize {
        self.mate_left.clear();
        self.mate_left.resize(self.left, FREE);
        self.mate_right.clear();
        self.mate_right.resize(self.right, FREE);
        self.dist.clear();
        self.dist.resize(self.left, INF);

        let mut size = 0;
        while self.bfs() {
            for l in 0..self.left {
                if self.mate_left[l] == FREE && self.dfs(l) {
                    size += 1;
                }
            }
        }
        size
    }

    /// Pairs of the matching found by the last [`HopcroftKarp::run`].
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.mate_left
            .iter()
            .enumerate()
            .filter(|(_, &r)| r != FREE)
            .map(|(l, &r)| (l, r))
            .collect()
    }

    fn bfs(&mut self) -> bool {
        self.queue.clear();
        for l in 0..self.left {
            if self.mate_left[l] == FREE {
                self.dist[l] = 0;
                self.queue.push_back(l);
            } else {
                self.dist[l] = INF;
            }
        }
        let mut found = false;
        while let Some(l) = self.queue.pop_front() {
            for &r in &self.adj[l] {
                let m = self.mate_right[r];
                if m == FREE {
                    found = true;
                } else if self.dist[m] == INF {
                    self.dist[m] = self.dist[l] + 1;
                    self.queue.push_back(m);
                }
            }
        }
        found
    }

    fn dfs(&mut self, l: usize) -> bool {
        for i in 0..self.adj[l].len() {
            let r = self.adj[l][i];
            let m = self.mate_right[r];
            if m == FREE || (self.dist[m] == self.dist[l] + 1 && self.dfs(m)) {
                self.mate_left[l] = r;
                self.mate_right[r] = l;
                return true;
            }
        }
        self.dist[l] = INF;
        false
    }
}

/// Maximum matching of the bipartite graph with `left_size` left and
/// `right_size` right vertices. Out-of-range edges are ignored.
pub fn hopcroft_karp(left_size: usize, right_size: usize, edges: &[(usize, usize)]) -> Matching {
    let mut hk = HopcroftKarp::new(left_size, right_size);
    for &(l, r) in edges {
        if l < left_size && r < right_size {
            hk.add_edge(l, r);
        }
    }
    let size = hk.run();
    Matching {
        size,
        pairs: hk.pairs(),
    }
}
