//! Undirected simple graphs over dense integer node ids.
//!
//! Neighbour lists are kept sorted so that every traversal is deterministic
//! and membership checks are a binary search.

mod io;
mod partition;

pub use io::{load_edge_list, load_labeled_edge_list, read_edge_list, LabeledGraph};
pub use partition::Partition;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An unordered node pair, stored with the smaller id first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Edge(usize, usize);

impl Edge {
    pub fn new(u: usize, v: usize) -> Self {
        if u <= v {
            Edge(u, v)
        } else {
            Edge(v, u)
        }
    }

    pub fn u(&self) -> usize {
        self.0
    }

    pub fn v(&self) -> usize {
        self.1
    }

    pub fn is_loop(&self) -> bool {
        self.0 == self.1
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.0, self.1)
    }
}

/// Undirected simple graph. Equality is edge-set equality over the same node count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    edge_count: usize,
}

impl Graph {
    /// A graph with `node_count` isolated nodes.
    pub fn empty(node_count: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); node_count],
            edge_count: 0,
        }
    }

    /// Builds a graph from node pairs. Duplicate pairs (in either orientation)
    /// collapse to one edge; self-loops and out-of-range ids are rejected.
    pub fn from_edges<I>(node_count: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::empty(node_count);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn node_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn neighbors(&self, u: usize) -> &[usize] {
        &self.adj[u]
    }

    pub fn degree(&self, u: usize) -> usize {
        self.adj[u].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.adj.len() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges in ascending `(u, v)` order with `u < v`.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, nbrs)| {
            let start = nbrs.partition_point(|&v| v <= u);
            nbrs[start..].iter().map(move |&v| Edge(u, v))
        })
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        self.adj.iter().map(Vec::len).collect()
    }

    /// Inserts `u-v`. Returns `Ok(false)` when the edge was already present.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<bool> {
        let n = self.node_count();
        if u == v {
            return Err(Error::validation(format!("self-loop at node {u}")));
        }
        if u >= n || v >= n {
            return Err(Error::validation(format!(
                "edge {u}-{v} out of range for {n} nodes"
            )));
        }
        Ok(self.insert_unchecked(u, v))
    }

    /// Removes `u-v`, returning whether it was present.
    pub fn remove_edge(&mut self, u: usize, v: usize) -> bool {
        if u >= self.node_count() || v >= self.node_count() {
            return false;
        }
        match self.adj[u].binary_search(&v) {
            Ok(i) => {
                self.adj[u].remove(i);
                let j = self.adj[v]
                    .binary_search(&u)
                    .expect("adjacency out of sync");
                self.adj[v].remove(j);
                self.edge_count -= 1;
                true
            }
            Err(_) => false,
        }
    }

    pub(crate) fn insert_unchecked(&mut self, u: usize, v: usize) -> bool {
        match self.adj[u].binary_search(&v) {
            Ok(_) => false,
            Err(i) => {
                self.adj[u].insert(i, v);
                let j = self.adj[v].binary_search(&u).unwrap_err();
                self.adj[v].insert(j, u);
                self.edge_count += 1;
                true
            }
        }
    }

    /// 64-bit fingerprint of the edge set; stable across platforms and runs.
    pub fn fingerprint(&self) -> u64 {
        let mut h = 0xcbf2_9ce4_8422_2325_u64 ^ (self.node_count() as u64);
        for e in self.edges() {
            for x in [e.0 as u64, e.1 as u64] {
                h ^= x;
                h = h.wrapping_mul(0x0000_0100_0000_01b3);
                h ^= h >> 29;
            }
        }
        h
    }

    /// Serializes as one `u v` line per edge.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::with_capacity(self.edge_count * 8);
        for e in self.edges() {
            out.push_str(&format!("{} {}\n", e.0, e.1));
        }
        out
    }

    /// Checks the adjacency invariants. Used by tests and debug assertions.
    pub fn is_consistent(&self) -> bool {
        let mut ends = 0;
        for (u, nbrs) in self.adj.iter().enumerate() {
            if nbrs.windows(2).any(|w| w[0] >= w[1]) {
                return false;
            }
            for &v in nbrs {
                if v == u || v >= self.adj.len() || self.adj[v].binary_search(&u).is_err() {
                    return false;
                }
            }
            ends += nbrs.len();
        }
        ends == 2 * self.edge_count
    }
}

/// Per-node degrees indexed by node id.
pub fn degree_sequence(g: &Graph) -> Vec<usize> {
    g.degree_sequence()
}

/// Cardinality of the symmetric difference of the two edge sets.
pub fn edge_set_difference_size(g1: &Graph, g2: &Graph) -> Result<usize> {
    if g1.node_count() != g2.node_count() {
        return Err(Error::validation(format!(
            "node count mismatch: {} vs {}",
            g1.node_count(),
            g2.node_count()
        )));
    }
    let mut diff = 0;
    for u in 0..g1.node_count() {
        let a = upper(g1.neighbors(u), u);
        let b = upper(g2.neighbors(u), u);
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Equal => {
                    i += 1;
                    j += 1;
                }
                std::cmp::Ordering::Less => {
                    diff += 1;
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    diff += 1;
                    j += 1;
                }
            }
        }
        diff += (a.len() - i) + (b.len() - j);
    }
    Ok(diff)
}

fn upper(nbrs: &[usize], u: usize) -> &[usize] {
    &nbrs[nbrs.partition_point(|&v| v <= u)..]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    #[test]
    fn degree_sequences() {
        let tri = Graph::from_edges(3, [(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(degree_sequence(&tri), vec![2, 2, 2]);
        assert_eq!(degree_sequence(&path(3)), vec![1, 2, 1]);
    }

    #[test]
    fn duplicates_collapse_and_loops_fail() {
        let g = Graph::from_edges(3, [(0, 1), (1, 0), (0, 1), (1, 2)]).unwrap();
        assert_eq!(g.edge_count(), 2);
        assert!(g.is_consistent());
        assert!(Graph::from_edges(2, [(1, 1)]).is_err());
        assert!(Graph::from_edges(2, [(0, 2)]).is_err());
    }

    #[test]
    fn difference_size() {
        let g = path(4);
        assert_eq!(edge_set_difference_size(&g, &g).unwrap(), 0);
        let mut h = g.clone();
        h.remove_edge(0, 1);
        h.add_edge(0, 3).unwrap();
        assert_eq!(edge_set_difference_size(&g, &h).unwrap(), 2);
        assert_eq!(edge_set_difference_size(&h, &g).unwrap(), 2);
        assert!(edge_set_difference_size(&g, &path(5)).is_err());
    }

    #[test]
    fn edges_are_sorted_pairs() {
        let g = Graph::from_edges(4, [(3, 0), (2, 1), (0, 1)]).unwrap();
        let e: Vec<_> = g.edges().map(|e| (e.u(), e.v())).collect();
        assert_eq!(e, vec![(0, 1), (0, 3), (1, 2)]);
    }

    #[test]
    fn fingerprint_tracks_edge_set() {
        let g = path(5);
        let mut h = g.clone();
        assert_eq!(g.fingerprint(), h.fingerprint());
        h.remove_edge(1, 2);
        assert_ne!(g.fingerprint(), h.fingerprint());
        h.add_edge(2, 1).unwrap();
        assert_eq!(g.fingerprint(), h.fingerprint());
    }
}
