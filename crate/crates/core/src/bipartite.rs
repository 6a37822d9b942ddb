//! Bipartite graphs `(U, V; E)` with `|U| = m`, `|V| = n`.

use std::fmt;

use crate::bits;
use crate::graph::Vertex;

/// Bit-packed bipartite graph. Rows are kept for both sides.
#[derive(Clone, PartialEq, Eq)]
pub struct BipartiteGraph {
    m: usize,
    n: usize,
    left_words: usize,
    right_words: usize,
    left: Vec<u64>,
    right: Vec<u64>,
}

impl fmt::Debug for BipartiteGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BipartiteGraph")
            .field("m", &self.m)
            .field("n", &self.n)
            .field("edges", &self.edge_count())
            .finish()
    }
}

impl BipartiteGraph {
    pub fn new(m: usize, n: usize) -> Self {
        let left_words = bits::words(n);
        let right_words = bits::words(m);
        BipartiteGraph {
            m,
            n,
            left_words,
            right_words,
            left: vec![0; m * left_words],
            right: vec![0; n * right_words],
        }
    }

    pub fn complete(m: usize, n: usize) -> Self {
        let mut g = Self::new(m, n);
        for u in 0..m {
            for v in 0..n {
                g.add_edge(u, v);
            }
        }
        g
    }

    pub fn from_edges(m: usize, n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut g = Self::new(m, n);
        for (u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    /// Size of the left side `U`.
    pub fn m(&self) -> usize {
        self.m
    }

    /// Size of the right side `V`.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u < self.m && v < self.n, "edge ({u},{v}) out of range");
        let lw = self.left_words;
        let rw = self.right_words;
        bits::set(&mut self.left[u * lw..(u + 1) * lw], v);
        bits::set(&mut self.right[v * rw..(v + 1) * rw], u);
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.m && v < self.n && bits::get(self.left_row(u), v)
    }

    /// Neighbours of left vertex `u`, as a row over `V`.
    pub fn left_row(&self, u: usize) -> &[u64] {
        &self.left[u * self.left_words..(u + 1) * self.left_words]
    }

    /// Neighbours of right vertex `v`, as a row over `U`.
    pub fn right_row(&self, v: usize) -> &[u64] {
        &self.right[v * self.right_words..(v + 1) * self.right_words]
    }

    pub fn left_degree(&self, u: usize) -> usize {
        bits::count(self.left_row(u))
    }

    pub fn right_degree(&self, v: usize) -> usize {
        bits::count(self.right_row(v))
    }

    pub fn edge_count(&self) -> usize {
        bits::count(&self.left)
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.m).flat_map(move |u| bits::ones(self.left_row(u)).map(move |v| (u, v)))
    }

    /// The same graph with sides exchanged.
    pub fn transposed(&self) -> BipartiteGraph {
        BipartiteGraph {
            m: self.n,
            n: self.m,
            left_words: self.right_words,
            right_words: self.left_words,
            left: self.right.clone(),
            right: self.left.clone(),
        }
    }
}

/// `G[A, B]` together with the maps back to the parent's vertices:
/// left index `i` is `left[i]`, right index `j` is `right[j]`.
#[derive(Debug, Clone)]
pub struct InducedBipartite {
    pub graph: BipartiteGraph,
    pub left: Vec<Vertex>,
    pub right: Vec<Vertex>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rows_stay_in_sync() {
        let g = BipartiteGraph::from_edges(3, 70, [(0, 69), (2, 0), (2, 69)]);
        assert_eq!(g.edge_count(), 3);
        assert_eq!(g.right_degree(69), 2);
        assert_eq!(g.left_degree(2), 2);
        let t = g.transposed();
        assert!(t.has_edge(69, 0));
        assert_eq!(t.edges().count(), 3);
        assert!(!g.has_edge(5, 0));
    }
}
