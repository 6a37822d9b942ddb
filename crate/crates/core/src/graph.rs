//! Balanced tripartite graphs `G_3(n)` with bit-packed cross-part adjacency.
//!
//! The three parts are oriented cyclically `V_1 -> V_2 -> V_3 -> V_1`. For a
//! vertex `v` in `V_i`, its out-neighbourhood lies in `V_{i+1}` and its
//! in-neighbourhood in `V_{i-1}`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bipartite::{BipartiteGraph, InducedBipartite};
use crate::bits;
use crate::error::{Error, Result};

/// One of the three vertex classes. Numbered 1, 2, 3 externally.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "u8", into = "u8")]
pub enum Part {
    One,
    Two,
    Three,
}

impl Part {
    pub const ALL: [Part; 3] = [Part::One, Part::Two, Part::Three];

    /// Zero-based position (0, 1, 2).
    #[inline]
    pub fn index(self) -> usize {
        self as usize
    }

    /// One-based label (1, 2, 3).
    #[inline]
    pub fn number(self) -> u8 {
        self as u8 + 1
    }

    #[inline]
    pub fn from_index(i: usize) -> Part {
        Part::ALL[i % 3]
    }

    pub fn from_number(k: u8) -> Option<Part> {
        match k {
            1 => Some(Part::One),
            2 => Some(Part::Two),
            3 => Some(Part::Three),
            _ => None,
        }
    }

    /// The part this one's out-edges point to.
    #[inline]
    pub fn next(self) -> Part {
        Part::from_index(self.index() + 1)
    }

    #[inline]
    pub fn prev(self) -> Part {
        Part::from_index(self.index() + 2)
    }

    /// The part different from both `self` and `other`. Panics if they are equal.
    pub fn third(self, other: Part) -> Part {
        assert_ne!(self, other, "third part of identical parts");
        Part::from_index(3 - self.index() - other.index())
    }

    /// Shift by `k` steps along the orientation.
    pub fn shift(self, k: isize) -> Part {
        Part::from_index((self.index() as isize + k).rem_euclid(3) as usize)
    }
}

impl TryFrom<u8> for Part {
    type Error = String;
    fn try_from(k: u8) -> std::result::Result<Self, String> {
        Part::from_number(k).ok_or_else(|| format!("part must be 1, 2 or 3, got {k}"))
    }
}

impl From<Part> for u8 {
    fn from(p: Part) -> u8 {
        p.number()
    }
}

impl fmt::Display for Part {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "V{}", self.number())
    }
}

/// Direction along the orientation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    /// Towards `V_{i+1}`.
    Out,
    /// Towards `V_{i-1}`.
    In,
}

impl Direction {
    pub fn target(self, part: Part) -> Part {
        match self {
            Direction::Out => part.next(),
            Direction::In => part.prev(),
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Direction::Out => '+',
            Direction::In => '-',
        }
    }
}

/// A vertex handle `(part, index)`. Handles are not tied to a particular graph;
/// operations validate the index against the graph's part size.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Vertex {
    pub part: Part,
    pub index: usize,
}

impl Vertex {
    pub fn new(part: Part, index: usize) -> Self {
        Vertex { part, index }
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.part.number(), self.index)
    }
}

/// Per-vertex and aggregate degree statistics.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeProfile {
    pub n: usize,
    /// `degree[p][u]` is `d(v)` for `v = (p, u)`, `p` zero-based.
    pub degree: [Vec<usize>; 3],
    pub out_degree: [Vec<usize>; 3],
    pub in_degree: [Vec<usize>; 3],
    pub min_degree: usize,
    pub min_out_degree: usize,
    pub min_in_degree: usize,
    pub min_partial_degree: usize,
}

impl DegreeProfile {
    pub fn degree_of(&self, v: Vertex) -> usize {
        self.degree[v.part.index()][v.index]
    }

    pub fn out_degree_of(&self, v: Vertex) -> usize {
        self.out_degree[v.part.index()][v.index]
    }

    pub fn in_degree_of(&self, v: Vertex) -> usize {
        self.in_degree[v.part.index()][v.index]
    }

    /// First vertex (in part-then-index order) with degree below `floor`.
    pub fn first_below(&self, floor: usize) -> Option<Vertex> {
        Part::ALL.iter().find_map(|&p| {
            self.degree[p.index()]
                .iter()
                .position(|&d| d < floor)
                .map(|u| Vertex::new(p, u))
        })
    }
}

/// A balanced tripartite graph with parts of size `n`.
///
/// `out[p]` holds, for every vertex `u` of part `p`, a row of `n` bits marking
/// its neighbours in `p.next()`; `inn[p]` holds the neighbours in `p.prev()`.
/// Every edge is recorded once in each table and only [`set_edge`] and
/// [`remove_edge`] write to them.
///
/// [`set_edge`]: TripartiteGraph::set_edge
/// [`remove_edge`]: TripartiteGraph::remove_edge
#[derive(Clone, PartialEq, Eq)]
pub struct TripartiteGraph {
    n: usize,
    words: usize,
    out: [Vec<u64>; 3],
    inn: [Vec<u64>; 3],
}

impl fmt::Debug for TripartiteGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TripartiteGraph")
            .field("n", &self.n)
            .field("edges", &self.edge_count())
            .finish()
    }
}

impl TripartiteGraph {
    /// The edgeless `G_3(n)`.
    pub fn empty(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("part size must be positive".into()));
        }
        let words = bits::words(n);
        let table = || vec![0u64; n * words];
        Ok(TripartiteGraph {
            n,
            words,
            out: [table(), table(), table()],
            inn: [table(), table(), table()],
        })
    }

    /// `K_3(n)`: every cross-part pair adjacent.
    pub fn complete(n: usize) -> Result<Self> {
        let mut g = Self::empty(n)?;
        let full = bits::full(n);
        for p in 0..3 {
            for u in 0..n {
                g.out[p][u * g.words..(u + 1) * g.words].copy_from_slice(&full);
                g.inn[p][u * g.words..(u + 1) * g.words].copy_from_slice(&full);
            }
        }
        Ok(g)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        Part::ALL
            .into_iter()
            .flat_map(move |p| (0..self.n).map(move |u| Vertex::new(p, u)))
    }

    pub fn part_vertices(&self, part: Part) -> impl Iterator<Item = Vertex> {
        (0..self.n).map(move |u| Vertex::new(part, u))
    }

    pub fn check_vertex(&self, v: Vertex) -> Result<()> {
        if v.index >= self.n {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n })
        } else {
            Ok(())
        }
    }

    /// Neighbours of `v` inside `target` as a bit row over `target`'s indices.
    /// Panics if `target == v.part`.
    #[inline]
    pub fn row(&self, v: Vertex, target: Part) -> &[u64] {
        let p = v.part.index();
        let range = v.index * self.words..(v.index + 1) * self.words;
        if target == v.part.next() {
            &self.out[p][range]
        } else if target == v.part.prev() {
            &self.inn[p][range]
        } else {
            panic!("no adjacency within part {}", v.part)
        }
    }

    #[inline]
    pub fn out_row(&self, v: Vertex) -> &[u64] {
        self.row(v, v.part.next())
    }

    #[inline]
    pub fn in_row(&self, v: Vertex) -> &[u64] {
        self.row(v, v.part.prev())
    }

    /// Adjacency test. Same-part pairs are never adjacent.
    #[inline]
    pub fn has_edge(&self, x: Vertex, y: Vertex) -> bool {
        x.part != y.part && bits::get(self.row(x, y.part), y.index)
    }

    fn orient(&self, x: Vertex, y: Vertex) -> Result<(Vertex, Vertex)> {
        self.check_vertex(x)?;
        self.check_vertex(y)?;
        if x.part == y.part {
            return Err(Error::SamePart(x, y));
        }
        Ok(if y.part == x.part.next() { (x, y) } else { (y, x) })
    }

    /// Adds the edge `xy`; returns whether it was absent before.
    pub fn set_edge(&mut self, x: Vertex, y: Vertex) -> Result<bool> {
        let (tail, head) = self.orient(x, y)?;
        let w = self.words;
        let t = tail.part.index();
        let h = head.part.index();
        let was = bits::get(&self.out[t][tail.index * w..], head.index);
        bits::set(&mut self.out[t][tail.index * w..(tail.index + 1) * w], head.index);
        bits::set(&mut self.inn[h][head.index * w..(head.index + 1) * w], tail.index);
        Ok(!was)
    }

    /// Removes the edge `xy`; returns whether it was present before.
    pub fn remove_edge(&mut self, x: Vertex, y: Vertex) -> Result<bool> {
        let (tail, head) = self.orient(x, y)?;
        let w = self.words;
        let t = tail.part.index();
        let h = head.part.index();
        let was = bits::get(&self.out[t][tail.index * w..], head.index);
        bits::clear(&mut self.out[t][tail.index * w..(tail.index + 1) * w], head.index);
        bits::clear(&mut self.inn[h][head.index * w..(head.index + 1) * w], tail.index);
        Ok(was)
    }

    pub fn out_degree(&self, v: Vertex) -> usize {
        bits::count(self.out_row(v))
    }

    pub fn in_degree(&self, v: Vertex) -> usize {
        bits::count(self.in_row(v))
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.out_degree(v) + self.in_degree(v)
    }

    /// `d(v, V_target)`.
    pub fn degree_into(&self, v: Vertex, target: Part) -> usize {
        bits::count(self.row(v, target))
    }

    /// Number of neighbours of `v` among `set`, which must lie in one part.
    pub fn degree_to_set(&self, v: Vertex, set: &[Vertex]) -> usize {
        set.iter().filter(|&&w| self.has_edge(v, w)).count()
    }

    pub fn neighbors(&self, v: Vertex, target: Part) -> impl Iterator<Item = Vertex> + '_ {
        bits::ones(self.row(v, target)).map(move |u| Vertex::new(target, u))
    }

    /// Number of edges between the parts `a` and `b`.
    pub fn pair_edge_count(&self, a: Part, b: Part) -> usize {
        assert_ne!(a, b);
        let (tail, head) = if b == a.next() { (a, b) } else { (b, a) };
        debug_assert_eq!(head, tail.next());
        bits::count(&self.out[tail.index()])
    }

    pub fn edge_count(&self) -> usize {
        self.out.iter().map(|t| bits::count(t)).sum()
    }

    /// All edges, each once, as `(tail, head)` with `head` in `tail.part.next()`.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        Part::ALL.into_iter().flat_map(move |p| {
            (0..self.n).flat_map(move |u| {
                let x = Vertex::new(p, u);
                self.neighbors(x, p.next()).map(move |y| (x, y))
            })
        })
    }

    pub fn degree_profile(&self) -> DegreeProfile {
        let n = self.n;
        let mut degree: [Vec<usize>; 3] = Default::default();
        let mut out_degree: [Vec<usize>; 3] = Default::default();
        let mut in_degree: [Vec<usize>; 3] = Default::default();
        let mut min_partial = usize::MAX;
        for p in Part::ALL {
            let i = p.index();
            for v in self.part_vertices(p) {
                let o = self.out_degree(v);
                let d_in = self.in_degree(v);
                out_degree[i].push(o);
                in_degree[i].push(d_in);
                degree[i].push(o + d_in);
                min_partial = min_partial.min(o).min(d_in);
            }
        }
        let min_of = |t: &[Vec<usize>; 3]| t.iter().flatten().copied().min().unwrap_or(0);
        DegreeProfile {
            n,
            min_degree: min_of(&degree),
            min_out_degree: min_of(&out_degree),
            min_in_degree: min_of(&in_degree),
            min_partial_degree: min_partial,
            degree,
            out_degree,
            in_degree,
        }
    }

    pub fn min_degree(&self) -> usize {
        self.vertices().map(|v| self.degree(v)).min().unwrap_or(0)
    }

    /// `|N(x) ∩ N(y)|` in the third part, without requiring `xy` to be an edge.
    #[inline]
    pub fn common_in_third(&self, x: Vertex, y: Vertex) -> usize {
        let third = x.part.third(y.part);
        bits::count_and(self.row(x, third), self.row(y, third))
    }

    /// `T(xy)`: number of triangles through the edge `xy`.
    pub fn triangles_through_edge(&self, x: Vertex, y: Vertex) -> Result<usize> {
        self.check_vertex(x)?;
        self.check_vertex(y)?;
        if x.part == y.part {
            return Err(Error::SamePart(x, y));
        }
        if !self.has_edge(x, y) {
            return Err(Error::NotAnEdge(x, y));
        }
        Ok(self.common_in_third(x, y))
    }

    /// `T(G)`. Iterates the edges of the sparsest part pair and intersects the
    /// endpoints' rows into the third part.
    pub fn triangle_count(&self) -> u64 {
        let tail = Part::ALL
            .into_iter()
            .min_by_key(|&p| bits::count(&self.out[p.index()]))
            .expect("three parts");
        let head = tail.next();
        let third = head.next();
        let mut total = 0u64;
        for u in 0..self.n {
            let x = Vertex::new(tail, u);
            let xr = self.row(x, third);
            for y in self.neighbors(x, head) {
                total += bits::count_and(xr, self.row(y, third)) as u64;
            }
        }
        total
    }

    /// `K_3(n) - G` on the same parts.
    pub fn complement(&self) -> TripartiteGraph {
        let full = bits::full(self.n);
        let w = self.words;
        let flip = |table: &Vec<u64>| {
            let mut t = table.clone();
            for (k, word) in t.iter_mut().enumerate() {
                *word = !*word & full[k % w];
            }
            t
        };
        TripartiteGraph {
            n: self.n,
            words: w,
            out: [flip(&self.out[0]), flip(&self.out[1]), flip(&self.out[2])],
            inn: [flip(&self.inn[0]), flip(&self.inn[1]), flip(&self.inn[2])],
        }
    }

    /// `G[A, B]` for `A`, `B` inside two distinct parts. Either side may be empty.
    pub fn induced_bipartite(&self, a: &[Vertex], b: &[Vertex]) -> Result<InducedBipartite> {
        let part_of = |set: &[Vertex]| -> Result<Option<Part>> {
            let Some(first) = set.first() else { return Ok(None) };
            for &v in set {
                self.check_vertex(v)?;
                if v.part != first.part {
                    return Err(Error::InvalidParameter(format!(
                        "vertex set spans parts {} and {}",
                        first.part, v.part
                    )));
                }
            }
            Ok(Some(first.part))
        };
        let pa = part_of(a)?;
        let pb = part_of(b)?;
        if let (Some(x), Some(y)) = (pa, pb) {
            if x == y {
                return Err(Error::InvalidParameter(format!(
                    "both vertex sets lie in part {x}"
                )));
            }
        }
        let mut graph = BipartiteGraph::new(a.len(), b.len());
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                if self.has_edge(x, y) {
                    graph.add_edge(i, j);
                }
            }
        }
        Ok(InducedBipartite {
            graph,
            left: a.to_vec(),
            right: b.to_vec(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(p: u8, i: usize) -> Vertex {
        Vertex::new(Part::from_number(p).unwrap(), i)
    }

    #[test]
    fn part_arithmetic() {
        assert_eq!(Part::One.next(), Part::Two);
        assert_eq!(Part::Three.next(), Part::One);
        assert_eq!(Part::One.prev(), Part::Three);
        assert_eq!(Part::One.third(Part::Three), Part::Two);
        assert_eq!(Part::Two.shift(-2), Part::Three);
        assert_eq!(Direction::In.target(Part::Two), Part::One);
    }

    #[test]
    fn complete_graph_counts() {
        let g = TripartiteGraph::complete(2).unwrap();
        assert_eq!(g.edge_count(), 12);
        assert_eq!(g.triangle_count(), 8);
        let g = TripartiteGraph::complete(1).unwrap();
        assert_eq!(g.triangle_count(), 1);
        let g = TripartiteGraph::complete(4).unwrap();
        assert_eq!(g.triangle_count(), 64);
        assert_eq!(g.degree_profile().min_degree, 8);
        assert!(TripartiteGraph::complete(0).is_err());
    }

    #[test]
    fn degree_profiles() {
        let p = TripartiteGraph::complete(5).unwrap().degree_profile();
        assert_eq!((p.min_degree, p.min_out_degree, p.min_in_degree, p.min_partial_degree), (10, 5, 5, 5));
        let p = TripartiteGraph::complete(1).unwrap().degree_profile();
        assert_eq!((p.min_degree, p.min_out_degree, p.min_in_degree), (2, 1, 1));
    }

    #[test]
    fn edge_mutation_is_symmetric() {
        let mut g = TripartiteGraph::empty(70).unwrap();
        assert!(g.set_edge(v(3, 69), v(1, 65)).unwrap());
        assert!(!g.set_edge(v(1, 65), v(3, 69)).unwrap());
        assert!(g.has_edge(v(1, 65), v(3, 69)));
        assert_eq!(g.out_degree(v(3, 69)), 1);
        assert_eq!(g.in_degree(v(1, 65)), 1);
        assert_eq!(g.edge_count(), 1);
        assert!(g.remove_edge(v(3, 69), v(1, 65)).unwrap());
        assert_eq!(g.edge_count(), 0);
        assert!(matches!(g.set_edge(v(1, 0), v(1, 1)), Err(Error::SamePart(..))));
        assert!(matches!(g.set_edge(v(1, 70), v(2, 1)), Err(Error::VertexOutOfRange { .. })));
    }

    #[test]
    fn triangles_through_edge_errors() {
        let mut g = TripartiteGraph::complete(3).unwrap();
        assert_eq!(g.triangles_through_edge(v(1, 0), v(2, 2)).unwrap(), 3);
        g.remove_edge(v(1, 0), v(2, 2)).unwrap();
        assert!(matches!(g.triangles_through_edge(v(1, 0), v(2, 2)), Err(Error::NotAnEdge(..))));
        assert!(matches!(g.triangles_through_edge(v(1, 0), v(1, 2)), Err(Error::SamePart(..))));
    }

    #[test]
    fn complement_of_complete_is_empty() {
        let g = TripartiteGraph::complete(65).unwrap().complement();
        assert_eq!(g.edge_count(), 0);
        assert_eq!(g.complement(), TripartiteGraph::complete(65).unwrap());
    }

    #[test]
    fn induced_bipartite_validation() {
        let g = TripartiteGraph::complete(3).unwrap();
        let a: Vec<_> = g.part_vertices(Part::One).collect();
        let b: Vec<_> = g.part_vertices(Part::Two).collect();
        let ib = g.induced_bipartite(&a, &b).unwrap();
        assert_eq!(ib.graph.edge_count(), 9);
        let empty = g.induced_bipartite(&[], &b).unwrap();
        assert_eq!(empty.graph.edge_count(), 0);
        assert!(g.induced_bipartite(&a, &a).is_err());
        assert!(g.induced_bipartite(&[v(1, 0), v(2, 0)], &[v(3, 0)]).is_err());
    }
}
