//! Constructive `K_3(s)` finder driven by surplus out-degree.
//!
//! With `δ(G) >= n + t`:
//! 1. pick the `t`-set `T_1` of one part maximising total out-degree;
//! 2. for each `x ∈ T_1` take `T_x`, the `t` lowest-index in-neighbours of `x`;
//! 3. the pairs `xy` (`y ∈ T_x`) carry at least `t^3` triangles in total;
//! 4. choose `z_1..z_s` in the remaining part lying on as many of these
//!    triangles at once as possible;
//! 5. the pairs `xy` completed by every `z_i` form a bipartite graph on
//!    `T_1 ∪ V_{prev}`; a `K_{s,s}` there plus the `z_i` is a `K_3(s)`.

use rayon::prelude::*;
use serde::Serialize;

use crate::bipartite::BipartiteGraph;
use crate::bits;
use crate::detection::{find_k3s, find_kss, K3sWitness};
use crate::error::{Error, Result};
use crate::graph::{Part, TripartiteGraph, Vertex};

/// Largest part size for which the pair selection is exhaustive when `s = 2`.
pub const EXACT_PAIR_LIMIT: usize = 2000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FinderParams {
    pub s: usize,
    /// Overrides the default `t`.
    pub t: Option<usize>,
}

impl FinderParams {
    pub fn new(s: usize) -> Self {
        FinderParams { s, t: None }
    }

    pub fn with_t(s: usize, t: usize) -> Self {
        FinderParams { s, t: Some(t) }
    }

    /// `t` for part size `n`: the override, or `ceil(C n^{1 - 1/(s(s+1))})` with
    /// `C = 2 (s-1)^{1/(s+1)}`. Values outside `1..=n` are rejected, not
    /// clamped.
    pub fn resolve_t(&self, n: usize) -> Result<usize> {
        if self.s < 2 {
            return Err(Error::InvalidParameter(format!("s must be at least 2, got {}", self.s)));
        }
        let t = self.t.unwrap_or_else(|| default_t(n, self.s));
        if t == 0 || t > n {
            return Err(Error::InvalidParameter(format!("t = {t} outside 1..={n}")));
        }
        Ok(t)
    }
}

pub fn default_t(n: usize, s: usize) -> usize {
    let s_f = s as f64;
    let c = 2.0 * (s_f - 1.0).powf(1.0 / (s_f + 1.0));
    (c * (n as f64).powf(1.0 - 1.0 / (s_f * (s_f + 1.0)))).ceil() as usize
}

/// The part and `t` vertices maximising total out-degree (top `t` by
/// out-degree within the best part; ties to the smaller index and part).
pub fn select_t1(graph: &TripartiteGraph, t: usize) -> Result<(Part, Vec<usize>)> {
    let n = graph.n();
    if t == 0 || t > n {
        return Err(Error::InvalidParameter(format!("t = {t} outside 1..={n}")));
    }
    let mut best: Option<(usize, Part, Vec<usize>)> = None;
    for p in Part::ALL {
        let mut order: Vec<(usize, usize)> = graph
            .part_vertices(p)
            .map(|v| (graph.out_degree(v), v.index))
            .collect();
        order.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        let top = &order[..t];
        let sum = top.iter().map(|&(d, _)| d).sum();
        if best.as_ref().is_none_or(|(s, _, _)| sum > *s) {
            best = Some((sum, p, top.iter().map(|&(_, i)| i).collect()));
        }
    }
    let (_, p, set) = best.expect("three parts");
    Ok((p, set))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ZSelection {
    ExactPairs,
    GreedySwap,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FinderOutcome {
    Found,
    Absent,
}

/// Everything the constructive run decided, re-derivable from the graph.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FinderTrace {
    pub s: usize,
    pub t: usize,
    /// Part holding `T_1`, numbered 1..3.
    pub part: u8,
    pub t1: Vec<usize>,
    /// `Σ_{x ∈ T_1, y ∈ T_x} T(xy)`.
    pub pair_triangles: u64,
    pub z: Vec<usize>,
    /// `|𝒯(z_1..z_s)|`.
    pub common_pairs: usize,
    /// Mean of `|𝒯|` over all `s`-subsets of the `z` part.
    pub average: f64,
    /// `t^2 C(t,s) / C(n,s)`.
    pub averaging_bound: f64,
    pub average_met: bool,
    pub selection: ZSelection,
    pub outcome: FinderOutcome,
}

fn binomial(n: u64, k: u64) -> f64 {
    if k > n {
        return 0.0;
    }
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Runs the constructive procedure. Requires `δ(G) >= n + t`.
pub fn find_k3s_constructive(graph: &TripartiteGraph, params: FinderParams) -> Result<(Option<K3sWitness>, FinderTrace)> {
    let n = graph.n();
    let s = params.s;
    let t = params.resolve_t(n)?;
    if let Some(v) = graph.degree_profile().first_below(n + t) {
        return Err(Error::Precondition(format!(
            "vertex {v} has degree {} < n + t = {}",
            graph.degree(v),
            n + t
        )));
    }
    let (part, t1) = select_t1(graph, t)?;
    let y_part = part.prev();
    let z_part = part.next();

    // Pairs xy with their common neighbourhoods in the z part.
    let mut pairs: Vec<(usize, usize)> = Vec::with_capacity(t * t);
    let mut commons: Vec<Vec<u64>> = Vec::with_capacity(t * t);
    for &x in &t1 {
        let xv = Vertex::new(part, x);
        for y in bits::ones(graph.row(xv, y_part)).take(t) {
            let yv = Vertex::new(y_part, y);
            let mut c = graph.row(xv, z_part).to_vec();
            bits::and_into(&mut c, graph.row(yv, z_part));
            pairs.push((x, y));
            commons.push(c);
        }
    }
    let pair_triangles: u64 = commons.iter().map(|c| bits::count(c) as u64).sum();

    // For each z, the set of pair indices whose triangle it completes.
    let pair_words = bits::words(pairs.len());
    let mut by_z = vec![vec![0u64; pair_words]; n];
    for (k, c) in commons.iter().enumerate() {
        for z in bits::ones(c) {
            bits::set(&mut by_z[z], k);
        }
    }
    let candidates: Vec<usize> = (0..n).filter(|&z| bits::count(&by_z[z]) > 0).collect();

    let (z, selection) = if s == 2 && n <= EXACT_PAIR_LIMIT {
        (best_pair(&candidates, &by_z), ZSelection::ExactPairs)
    } else {
        (greedy_swap(&candidates, &by_z, s, n), ZSelection::GreedySwap)
    };
    let mut covered = bits::full(pairs.len());
    for &zi in &z {
        bits::and_into(&mut covered, &by_z[zi]);
    }
    let common_pairs = if z.len() == s { bits::count(&covered) } else { 0 };

    let average = commons.iter().map(|c| binomial(bits::count(c) as u64, s as u64)).sum::<f64>()
        / binomial(n as u64, s as u64);
    let averaging_bound = (t * t) as f64 * binomial(t as u64, s as u64) / binomial(n as u64, s as u64);

    let mut witness = None;
    if z.len() == s {
        let mut bip = BipartiteGraph::new(t1.len(), n);
        for k in bits::ones(&covered) {
            let (x, y) = pairs[k];
            let xi = t1.iter().position(|&a| a == x).expect("x in T_1");
            bip.add_edge(xi, y);
        }
        if let Some(kss) = find_kss(&bip, s) {
            let mut parts: [Vec<usize>; 3] = Default::default();
            parts[part.index()] = kss.left.iter().map(|&i| t1[i]).collect();
            parts[z_part.index()] = z.clone();
            parts[y_part.index()] = kss.right.clone();
            for p in parts.iter_mut() {
                p.sort_unstable();
            }
            let w = K3sWitness { parts };
            if w.verify(graph) {
                witness = Some(w);
            }
        }
    }
    let trace = FinderTrace {
        s,
        t,
        part: part.number(),
        t1,
        pair_triangles,
        z,
        common_pairs,
        average,
        averaging_bound,
        average_met: common_pairs as f64 >= average - 1e-9,
        selection,
        outcome: if witness.is_some() { FinderOutcome::Found } else { FinderOutcome::Absent },
    };
    Ok((witness, trace))
}

/// Pair `{z, z'}` maximising `|by_z[z] ∩ by_z[z']|`, lexicographically first
/// on ties.
fn best_pair(candidates: &[usize], by_z: &[Vec<u64>]) -> Vec<usize> {
    let m = candidates.len();
    if m < 2 {
        return Vec::new();
    }
    let best = (0..m)
        .into_par_iter()
        .flat_map_iter(|a| (a + 1..m).map(move |b| (a, b)))
        .map(|(a, b)| {
            let score = bits::count_and(&by_z[candidates[a]], &by_z[candidates[b]]);
            (score, std::cmp::Reverse((a, b)))
        })
        .max()
        .expect("at least one pair");
    let std::cmp::Reverse((a, b)) = best.1;
    vec![candidates[a], candidates[b]]
}

/// Greedy growth followed by single-element swaps until no swap improves.
fn greedy_swap(candidates: &[usize], by_z: &[Vec<u64>], s: usize, n: usize) -> Vec<usize> {
    if candidates.len() < s {
        return Vec::new();
    }
    let width = by_z.first().map_or(0, Vec::len);
    let score = |set: &[usize]| -> usize {
        let mut acc = vec![u64::MAX; width];
        // Unused high bits are zero in every by_z row, so the AND clears them.
        for &z in set {
            bits::and_into(&mut acc, &by_z[z]);
        }
        bits::count(&acc)
    };
    let mut chosen: Vec<usize> = Vec::with_capacity(s);
    while chosen.len() < s {
        let next = candidates
            .iter()
            .copied()
            .filter(|z| !chosen.contains(z))
            .max_by_key(|&z| {
                let mut trial = chosen.clone();
                trial.push(z);
                (score(&trial), std::cmp::Reverse(z))
            })
            .expect("enough candidates");
        chosen.push(next);
    }
    let mut current = score(&chosen);
    // Each accepted swap strictly increases the score, which is bounded.
    let mut improved = true;
    let mut rounds = 0;
    while improved && rounds < 4 * n {
        improved = false;
        rounds += 1;
        for slot in 0..s {
            for &z in candidates {
                if chosen.contains(&z) {
                    continue;
                }
                let mut trial = chosen.clone();
                trial[slot] = z;
                let sc = score(&trial);
                if sc > current {
                    chosen = trial;
                    current = sc;
                    improved = true;
                }
            }
        }
    }
    chosen.sort_unstable();
    chosen
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum WitnessSource {
    Constructive,
    ExactFallback,
    None,
}

/// Result of the constructive run followed, when it comes back empty, by the
/// exact detector.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FinderReport {
    pub witness: Option<K3sWitness>,
    pub source: WitnessSource,
    pub trace: FinderTrace,
}

pub fn find_k3s_with_fallback(graph: &TripartiteGraph, params: FinderParams) -> Result<FinderReport> {
    let (witness, trace) = find_k3s_constructive(graph, params)?;
    if let Some(w) = witness {
        return Ok(FinderReport { witness: Some(w), source: WitnessSource::Constructive, trace });
    }
    let exact = find_k3s(graph, params.s)?;
    let source = if exact.is_some() { WitnessSource::ExactFallback } else { WitnessSource::None };
    Ok(FinderReport { witness: exact, source, trace })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_t_matches_formula() {
        // s = 2: C = 2, exponent 5/6.
        assert_eq!(default_t(200, 2), (2.0 * 200f64.powf(5.0 / 6.0)).ceil() as usize);
        assert_eq!(default_t(200, 2), 166);
        assert!(FinderParams::new(2).resolve_t(4).is_err()); // default t > n
        assert!(FinderParams::new(1).resolve_t(100).is_err());
        assert!(FinderParams::with_t(2, 0).resolve_t(10).is_err());
        assert_eq!(FinderParams::with_t(2, 3).resolve_t(10).unwrap(), 3);
    }

    #[test]
    fn select_t1_on_complete_graph() {
        let g = TripartiteGraph::complete(6).unwrap();
        assert_eq!(select_t1(&g, 3).unwrap(), (Part::One, vec![0, 1, 2]));
        assert!(select_t1(&g, 7).is_err());
    }

    #[test]
    fn select_t1_unique_argmax() {
        let n = 5;
        let mut g = TripartiteGraph::complete(n).unwrap();
        // Every vertex loses one out-edge except (2, 3).
        for p in Part::ALL {
            for u in 0..n {
                if !(p == Part::Two && u == 3) {
                    g.remove_edge(Vertex::new(p, u), Vertex::new(p.next(), u)).unwrap();
                }
            }
        }
        assert_eq!(select_t1(&g, 1).unwrap(), (Part::Two, vec![3]));
    }

    #[test]
    fn precondition_names_vertex() {
        let mut g = TripartiteGraph::complete(50).unwrap();
        g.remove_edge(Vertex::new(Part::Three, 7), Vertex::new(Part::One, 0)).unwrap();
        let err = find_k3s_constructive(&g, FinderParams::with_t(2, 50)).unwrap_err();
        assert!(matches!(err, Error::Precondition(ref m) if m.contains("(1,0)")), "{err}");
    }
}
