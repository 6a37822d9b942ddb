//! Brute-force reference checkers.
//!
//! Everything here goes through [`TripartiteGraph::has_edge`] and
//! [`BipartiteGraph::has_edge`] only, with plain nested loops, so that it stays
//! independent of the bit-row kernels it is used to check.

use trilab::{BipartiteGraph, Part, TripartiteGraph, Vertex};

fn v(p: Part, i: usize) -> Vertex {
    Vertex::new(p, i)
}

fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |a| (a + 1..n).map(move |b| (a, b)))
}

/// `T(G)` by enumerating all `n^3` transversal triples.
pub fn triangle_count(g: &TripartiteGraph) -> u64 {
    let n = g.n();
    let mut total = 0;
    for a in 0..n {
        for b in 0..n {
            if !g.has_edge(v(Part::One, a), v(Part::Two, b)) {
                continue;
            }
            for c in 0..n {
                if g.has_edge(v(Part::Two, b), v(Part::Three, c)) && g.has_edge(v(Part::One, a), v(Part::Three, c)) {
                    total += 1;
                }
            }
        }
    }
    total
}

/// `T(xy)` by scanning the third part.
pub fn triangles_through_edge(g: &TripartiteGraph, x: Vertex, y: Vertex) -> usize {
    let third = x.part.third(y.part);
    (0..g.n())
        .filter(|&c| g.has_edge(x, v(third, c)) && g.has_edge(y, v(third, c)))
        .count()
}

pub fn degree(g: &TripartiteGraph, x: Vertex) -> usize {
    Part::ALL
        .into_iter()
        .filter(|&p| p != x.part)
        .map(|p| (0..g.n()).filter(|&i| g.has_edge(x, v(p, i))).count())
        .sum()
}

pub fn min_degree(g: &TripartiteGraph) -> usize {
    Part::ALL
        .into_iter()
        .flat_map(|p| (0..g.n()).map(move |i| v(p, i)))
        .map(|x| degree(g, x))
        .min()
        .unwrap_or(0)
}

pub fn edge_count(g: &TripartiteGraph) -> usize {
    let n = g.n();
    let mut e = 0;
    for (a, b) in [(Part::One, Part::Two), (Part::One, Part::Three), (Part::Two, Part::Three)] {
        for i in 0..n {
            for j in 0..n {
                if g.has_edge(v(a, i), v(b, j)) {
                    e += 1;
                }
            }
        }
    }
    e
}

/// Checks all `3s^2` edges of a claimed `K_3(s)`.
pub fn is_k3s(g: &TripartiteGraph, parts: &[Vec<usize>; 3]) -> bool {
    let s = parts[0].len();
    if s == 0 || parts.iter().any(|p| p.len() != s) {
        return false;
    }
    for (pi, p) in Part::ALL.into_iter().enumerate() {
        let mut sorted = parts[pi].clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != s || sorted.iter().any(|&i| i >= g.n()) {
            return false;
        }
        for (qi, q) in Part::ALL.into_iter().enumerate().skip(pi + 1) {
            for &a in &parts[pi] {
                for &b in &parts[qi] {
                    if !g.has_edge(v(p, a), v(q, b)) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Whether `G` contains a `K_3(2)`: all `C(n,2)^3` triples of pairs.
pub fn contains_k32(g: &TripartiteGraph) -> bool {
    find_k32(g).is_some()
}

pub fn find_k32(g: &TripartiteGraph) -> Option<[Vec<usize>; 3]> {
    let n = g.n();
    for (a1, a2) in pairs(n) {
        for (b1, b2) in pairs(n) {
            let ab = [a1, a2]
                .iter()
                .all(|&a| [b1, b2].iter().all(|&b| g.has_edge(v(Part::One, a), v(Part::Two, b))));
            if !ab {
                continue;
            }
            for (c1, c2) in pairs(n) {
                let parts = [vec![a1, a2], vec![b1, b2], vec![c1, c2]];
                if is_k3s(g, &parts) {
                    return Some(parts);
                }
            }
        }
    }
    None
}

/// Whether the bipartite graph contains `K_{2,2}`: some pair of left vertices
/// with two common neighbours.
pub fn contains_k22(b: &BipartiteGraph) -> bool {
    pairs(b.m()).any(|(u1, u2)| (0..b.n()).filter(|&x| b.has_edge(u1, x) && b.has_edge(u2, x)).count() >= 2)
}

/// Largest number of common neighbours over pairs of vertices on one side.
pub fn max_codegree(b: &BipartiteGraph, left_side: bool) -> usize {
    let (count, width) = if left_side { (b.m(), b.n()) } else { (b.n(), b.m()) };
    let adj = |i: usize, j: usize| if left_side { b.has_edge(i, j) } else { b.has_edge(j, i) };
    pairs(count)
        .map(|(x, y)| (0..width).filter(|&z| adj(x, z) && adj(y, z)).count())
        .max()
        .unwrap_or(0)
}

pub fn is_kss(b: &BipartiteGraph, left: &[usize], right: &[usize]) -> bool {
    left.len() == right.len()
        && left.iter().all(|&u| right.iter().all(|&w| b.has_edge(u, w)))
        && {
            let mut l = left.to_vec();
            l.sort_unstable();
            l.dedup();
            let mut r = right.to_vec();
            r.sort_unstable();
            r.dedup();
            l.len() == left.len() && r.len() == right.len()
        }
}

/// Largest common neighbourhood size over left pairs `>= 2` iff `K_{2,2}`.
pub fn contains_kss(b: &BipartiteGraph, s: usize) -> bool {
    fn subsets(n: usize, s: usize) -> Vec<Vec<usize>> {
        if s == 0 {
            return vec![vec![]];
        }
        if n < s {
            return vec![];
        }
        let mut out = subsets(n - 1, s);
        for mut sub in subsets(n - 1, s - 1) {
            sub.push(n - 1);
            out.push(sub);
        }
        out
    }
    subsets(b.m(), s).into_iter().any(|left| {
        (0..b.n()).filter(|&w| left.iter().all(|&u| b.has_edge(u, w))).count() >= s
    })
}

/// Whether some `K_3(2)` contains the edge `xy`, by trying every completion.
pub fn k32_through_edge(g: &TripartiteGraph, x: Vertex, y: Vertex) -> bool {
    let n = g.n();
    let r = x.part.third(y.part);
    for x2 in (0..n).filter(|&i| i != x.index) {
        for y2 in (0..n).filter(|&i| i != y.index) {
            for (z1, z2) in pairs(n) {
                let mut parts: [Vec<usize>; 3] = Default::default();
                parts[x.part.index()] = vec![x.index, x2];
                parts[y.part.index()] = vec![y.index, y2];
                parts[r.index()] = vec![z1, z2];
                if is_k3s(g, &parts) {
                    return true;
                }
            }
        }
    }
    false
}

/// Neighbours `w` of `v` in the direction's target part with
/// `T(vw) * den >= num * n`.
pub fn d_tilde(g: &TripartiteGraph, v: Vertex, target: Part, num: usize, den: usize) -> Vec<Vertex> {
    (0..g.n())
        .map(|i| Vertex::new(target, i))
        .filter(|&w| g.has_edge(v, w) && triangles_through_edge(g, v, w) * den >= num * g.n())
        .collect()
}

/// `G_3(n)` with each of the `3n^2` edges present independently with
/// probability `p`.
pub fn random_tripartite(n: usize, p: f64, seed: u64) -> TripartiteGraph {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut g = TripartiteGraph::empty(n).expect("positive part size");
    for part in Part::ALL {
        for a in 0..n {
            for b in 0..n {
                if rng.gen_bool(p) {
                    g.set_edge(v(part, a), v(part.next(), b)).expect("valid edge");
                }
            }
        }
    }
    g
}

/// Random `m x n` bipartite graph with edge probability `p`.
pub fn random_bipartite(m: usize, n: usize, p: f64, seed: u64) -> BipartiteGraph {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut b = BipartiteGraph::new(m, n);
    for u in 0..m {
        for w in 0..n {
            if rng.gen_bool(p) {
                b.add_edge(u, w);
            }
        }
    }
    b
}
