//! Extremal and reference graph families.

pub mod field;

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::Value;

use crate::bipartite::BipartiteGraph;
use crate::error::{Error, Result};
use crate::graph::{Part, TripartiteGraph, Vertex};
use crate::io::GraphDocument;

use field::GaloisField;
pub use field::MAX_FIELD_ORDER;

/// A constructed graph together with its named vertex ranges.
#[derive(Debug, Clone)]
pub struct Construction {
    pub graph: TripartiteGraph,
    pub meta: ConstructionMeta,
}

/// Construction name, integer parameters and half-open index ranges
/// (`"A1": [0, 9]` is indices `0..9` of `V_1`).
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ConstructionMeta {
    pub construction: String,
    pub params: BTreeMap<String, i64>,
    pub ranges: BTreeMap<String, [usize; 2]>,
}

impl ConstructionMeta {
    fn new(name: &str) -> Self {
        ConstructionMeta { construction: name.into(), ..Default::default() }
    }

    fn param(mut self, key: &str, value: i64) -> Self {
        self.params.insert(key.into(), value);
        self
    }

    fn range(mut self, key: &str, lo: usize, hi: usize) -> Self {
        self.ranges.insert(key.into(), [lo, hi]);
        self
    }

    pub fn to_value(&self) -> Value {
        serde_json::to_value(self).expect("meta serializes")
    }

    pub fn get_range(&self, key: &str) -> Option<std::ops::Range<usize>> {
        self.ranges.get(key).map(|r| r[0]..r[1])
    }
}

impl Construction {
    pub fn into_document(self) -> GraphDocument {
        GraphDocument::with_meta(self.graph, self.meta.to_value())
    }
}

/// Order `q` of a Desarguesian projective plane.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PlaneOrder(usize);

impl PlaneOrder {
    pub fn new(q: usize) -> Result<Self> {
        match field::prime_power(q) {
            Some(_) => Ok(PlaneOrder(q)),
            None => Err(Error::InvalidParameter(format!(
                "plane order must be a prime power, {q} is not"
            ))),
        }
    }

    pub fn q(self) -> usize {
        self.0
    }

    /// Number of points (and of lines): `q^2 + q + 1`.
    pub fn size(self) -> usize {
        self.0 * self.0 + self.0 + 1
    }
}

/// Canonical representatives of the 1-dimensional subspaces of GF(q)^3: the
/// nonzero vectors whose first nonzero coordinate is 1, in lexicographic order.
fn projective_points(q: usize) -> Vec<[usize; 3]> {
    let mut points = Vec::with_capacity(q * q + q + 1);
    for a in 0..q {
        for b in 0..q {
            for c in 0..q {
                let v = [a, b, c];
                if v.iter().find(|&&x| x != 0) == Some(&1) {
                    points.push(v);
                }
            }
        }
    }
    points
}

/// Point-line incidence graph of PG(2, q). Left side: points, right side: lines.
pub fn projective_plane_bipartite(order: PlaneOrder) -> Result<BipartiteGraph> {
    let f = GaloisField::new(order.q())?;
    let points = projective_points(order.q());
    debug_assert_eq!(points.len(), order.size());
    let mut graph = BipartiteGraph::new(points.len(), points.len());
    for (i, p) in points.iter().enumerate() {
        for (j, l) in points.iter().enumerate() {
            let dot = (0..3).fold(0, |acc, k| f.add(acc, f.mul(p[k], l[k])));
            if dot == 0 {
                graph.add_edge(i, j);
            }
        }
    }
    Ok(graph)
}

/// Parameters for the `K_3(2)`-free family with minimum degree exactly `n + t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OctahedronFreeParams {
    n: usize,
    t: usize,
}

impl OctahedronFreeParams {
    /// Requires `t >= 1`, `n >= 5t` and `n >= t^2 + 2t`. The last condition
    /// lets the `t`-sets joined from each `Bbar` vertex be pairwise disjoint.
    pub fn new(n: usize, t: usize) -> Result<Self> {
        if t == 0 {
            return Err(Error::InvalidParameter("t must be positive".into()));
        }
        if n < 5 * t {
            return Err(Error::InvalidParameter(format!("need n >= 5t, got n={n}, t={t}")));
        }
        if n < t * t + 2 * t {
            return Err(Error::InvalidParameter(format!("need n >= t^2 + 2t, got n={n}, t={t}")));
        }
        Ok(OctahedronFreeParams { n, t })
    }

    pub fn n(self) -> usize {
        self.n
    }

    pub fn t(self) -> usize {
        self.t
    }

    /// Largest valid `t` for a given `n`, if any.
    pub fn max_t(n: usize) -> Option<usize> {
        (1..=n).take_while(|&t| Self::new(n, t).is_ok()).last()
    }
}

/// Builds the `K_3(2)`-free graph with `δ(G) = n + t`.
///
/// Layout per part: `A_i = [0, n-2t)`, `B_i = [n-2t, n)`; in `V_1` the block
/// `B_1` splits into `Bbar2 = [n-2t, n-t)` and `Bbar3 = [n-t, n)`.
pub fn octahedron_free(params: OctahedronFreeParams) -> Construction {
    let OctahedronFreeParams { n, t } = params;
    let a = n - 2 * t;
    let mut g = TripartiteGraph::empty(n).expect("n >= 5");
    let v = |p: Part, i: usize| Vertex::new(p, i);
    let (p1, p2, p3) = (Part::One, Part::Two, Part::Three);
    let join = |g: &mut TripartiteGraph, xp: Part, xs: std::ops::Range<usize>, yp: Part, ys: std::ops::Range<usize>| {
        for x in xs {
            for y in ys.clone() {
                g.set_edge(v(xp, x), v(yp, y)).expect("valid cross-part edge");
            }
        }
    };
    let bbar2 = a..a + t;
    let bbar3 = a + t..n;
    // A_1 to A_2 and A_3.
    join(&mut g, p1, 0..a, p2, 0..a);
    join(&mut g, p1, 0..a, p3, 0..a);
    // Bbar_j to all of V_j.
    join(&mut g, p1, bbar2.clone(), p2, 0..n);
    join(&mut g, p1, bbar3.clone(), p3, 0..n);
    // B_2 to V_3 and B_3 to V_2.
    join(&mut g, p2, a..n, p3, 0..n);
    join(&mut g, p3, a..n, p2, 0..n);
    // Each Bbar_2 vertex to its own t-block of A_3, each Bbar_3 vertex to its
    // own t-block of A_2; disjoint blocks share no neighbour.
    for (k, x) in bbar2.clone().enumerate() {
        join(&mut g, p1, x..x + 1, p3, k * t..(k + 1) * t);
    }
    for (k, x) in bbar3.clone().enumerate() {
        join(&mut g, p1, x..x + 1, p2, k * t..(k + 1) * t);
    }
    let meta = ConstructionMeta::new("octahedron-free")
        .param("n", n as i64)
        .param("t", t as i64)
        .range("A1", 0, a)
        .range("Bbar2", bbar2.start, bbar2.end)
        .range("Bbar3", bbar3.start, bbar3.end)
        .range("A2", 0, a)
        .range("B2", a, n)
        .range("A3", 0, a)
        .range("B3", a, n);
    Construction { graph: g, meta }
}

/// `G ⊙ H`: disjoint union on parts `V_i ⊎ V'_i` (H shifted by `n`) plus all
/// edges between `V_i` and `V'_{i+1}`.
pub fn glue(g: &TripartiteGraph, h: &TripartiteGraph) -> Result<TripartiteGraph> {
    if g.n() != h.n() {
        return Err(Error::SizeMismatch(g.n(), h.n()));
    }
    let n = g.n();
    let mut out = TripartiteGraph::empty(2 * n)?;
    for (x, y) in g.edges() {
        out.set_edge(x, y)?;
    }
    let shift = |v: Vertex| Vertex::new(v.part, v.index + n);
    for (x, y) in h.edges() {
        out.set_edge(shift(x), shift(y))?;
    }
    for p in Part::ALL {
        for u in 0..n {
            for w in 0..n {
                out.set_edge(Vertex::new(p, u), Vertex::new(p.next(), n + w))?;
            }
        }
    }
    Ok(out)
}

/// Parameters of the triangle-minimising `(n+t)`-regular graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExtremalRegularParams {
    n: usize,
    t: usize,
}

impl ExtremalRegularParams {
    pub fn new(n: usize, t: usize) -> Result<Self> {
        if n == 0 || !n.is_multiple_of(2) {
            return Err(Error::InvalidParameter(format!("n must be positive and even, got {n}")));
        }
        if 2 * t < n || t > n {
            return Err(Error::InvalidParameter(format!("need n/2 <= t <= n, got n={n}, t={t}")));
        }
        Ok(ExtremalRegularParams { n, t })
    }

    pub fn n(self) -> usize {
        self.n
    }

    pub fn t(self) -> usize {
        self.t
    }

    /// `n^2 (3t - n) / 2`.
    pub fn triangle_formula(self) -> u64 {
        let (n, t) = (self.n as u64, self.t as u64);
        n * n * (3 * t - n) / 2
    }
}

/// Tripartite complement of `H = ∪_i H[A_{i+1}, B_i]`, each block an
/// `(n-t)`-regular circulant on half-parts of size `n/2`:
/// `a ∈ A_{i+1}` is joined to `b ∈ B_i` iff `(b - a) mod (n/2) < n - t`.
pub fn extremal_regular(params: ExtremalRegularParams) -> Construction {
    let ExtremalRegularParams { n, t } = params;
    let h = n / 2;
    let width = n - t;
    let mut missing = TripartiteGraph::empty(n).expect("n > 0");
    for p in Part::ALL {
        for a in 0..h {
            for b in 0..h {
                if (b + h - a) % h < width {
                    missing
                        .set_edge(Vertex::new(p.next(), a), Vertex::new(p, h + b))
                        .expect("valid edge");
                }
            }
        }
    }
    let mut meta = ConstructionMeta::new("extremal-regular").param("n", n as i64).param("t", t as i64);
    for p in 1..=3 {
        meta = meta.range(&format!("A{p}"), 0, h).range(&format!("B{p}"), h, n);
    }
    Construction { graph: missing.complement(), meta }
}

/// A reproducible random `G_3(n)` with `δ(G) >= min_degree`: starting from
/// `K_3(n)`, edges are visited in a seeded random order and removed whenever
/// both endpoints stay at or above the floor. The result is maximal: no
/// further edge can be removed.
pub fn random_graph(n: usize, min_degree: usize, seed: u64) -> Result<TripartiteGraph> {
    if n == 0 {
        return Err(Error::InvalidParameter("part size must be positive".into()));
    }
    if min_degree > 2 * n {
        return Err(Error::InvalidParameter(format!(
            "minimum degree {min_degree} exceeds 2n = {}",
            2 * n
        )));
    }
    let mut g = TripartiteGraph::complete(n)?;
    let mut edges: Vec<(Vertex, Vertex)> = g.edges().collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    edges.shuffle(&mut rng);
    let mut degree = [vec![2 * n; n], vec![2 * n; n], vec![2 * n; n]];
    for (x, y) in edges {
        let dx = degree[x.part.index()][x.index];
        let dy = degree[y.part.index()][y.index];
        if dx > min_degree && dy > min_degree {
            g.remove_edge(x, y)?;
            degree[x.part.index()][x.index] -= 1;
            degree[y.part.index()][y.index] -= 1;
        }
    }
    Ok(g)
}

/// Idealised blow-up of `C_6`: blocks `W_1..W_6` of size `m`, with `W_j` at
/// indices `[0, m)` and `W_{j+3}` at `[m, 2m)` of `V_j`, and every `W_i`
/// completely joined to `W_{i+1}`. When `u > 0`, each part gets a block
/// `U_j = [2m, 2m+u)` completely joined to `W_{j+1}` and `W_{j+4}`.
pub fn c6_blowup(m: usize, u: usize) -> Result<Construction> {
    if m == 0 {
        return Err(Error::InvalidParameter("block size must be positive".into()));
    }
    let n = 2 * m + u;
    let mut g = TripartiteGraph::empty(n)?;
    let block = |label: usize| -> (Part, std::ops::Range<usize>) {
        // label in 1..=6
        let part = Part::from_index(label - 1);
        let start = if label <= 3 { 0 } else { m };
        (part, start..start + m)
    };
    for i in 1..=6 {
        let (pa, ra) = block(i);
        let (pb, rb) = block(i % 6 + 1);
        for x in ra {
            for y in rb.clone() {
                g.set_edge(Vertex::new(pa, x), Vertex::new(pb, y))?;
            }
        }
    }
    for j in 1..=3usize {
        let pu = Part::from_index(j - 1);
        for target in [j + 1, j + 4] {
            let (pw, rw) = block((target - 1) % 6 + 1);
            for x in 2 * m..n {
                for y in rw.clone() {
                    g.set_edge(Vertex::new(pu, x), Vertex::new(pw, y))?;
                }
            }
        }
    }
    let mut meta = ConstructionMeta::new("c6-blowup").param("m", m as i64).param("u", u as i64);
    for i in 1..=6 {
        let (_, r) = block(i);
        meta = meta.range(&format!("W{i}"), r.start, r.end);
    }
    if u > 0 {
        for j in 1..=3 {
            meta = meta.range(&format!("U{j}"), 2 * m, n);
        }
    }
    Ok(Construction { graph: g, meta })
}
