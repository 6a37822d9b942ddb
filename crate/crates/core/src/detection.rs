//! Detection of `K_{s,s}` in bipartite graphs and `K_3(s)` in tripartite
//! graphs, plus the triangle-heavy neighbourhoods `D̃^±_α(v)` and the
//! auxiliary-graph extraction of a `K_3(2)` from many vertices with large
//! `D̃` sets.
//!
//! Every search is exact and deterministic: candidates are enumerated in
//! ascending index order and the first witness found in that order is
//! returned, also when the outer loop runs on several rayon workers.

use num_traits::Float;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bipartite::BipartiteGraph;
use crate::bits;
use crate::error::{Error, Result};
use crate::graph::{Direction, Part, TripartiteGraph, Vertex};
use crate::scalar::{self, Scalar};

/// `s` left and `s` right vertices spanning a complete bipartite subgraph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KssWitness {
    pub left: Vec<usize>,
    pub right: Vec<usize>,
}

impl KssWitness {
    pub fn s(&self) -> usize {
        self.left.len()
    }

    /// Checks distinctness, sizes and all `s^2` edges.
    pub fn verify(&self, graph: &BipartiteGraph) -> bool {
        distinct(&self.left)
            && distinct(&self.right)
            && self.left.len() == self.right.len()
            && self.left.iter().all(|&u| self.right.iter().all(|&v| graph.has_edge(u, v)))
    }
}

/// `s` vertices in each part spanning a `K_3(s)`. `parts[p]` lists indices in
/// part `p + 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct K3sWitness {
    pub parts: [Vec<usize>; 3],
}

impl K3sWitness {
    pub fn s(&self) -> usize {
        self.parts[0].len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        Part::ALL
            .into_iter()
            .flat_map(move |p| self.parts[p.index()].iter().map(move |&i| Vertex::new(p, i)))
    }

    /// Checks distinctness, equal part sizes, index range and all `3s^2` edges.
    pub fn verify(&self, graph: &TripartiteGraph) -> bool {
        let s = self.s();
        if s == 0 || self.parts.iter().any(|p| p.len() != s || !distinct(p) || p.iter().any(|&i| i >= graph.n())) {
            return false;
        }
        let vs: Vec<Vertex> = self.vertices().collect();
        vs.iter()
            .all(|&x| vs.iter().all(|&y| x.part == y.part || graph.has_edge(x, y)))
    }

    fn normalized(mut self) -> Self {
        for p in self.parts.iter_mut() {
            p.sort_unstable();
        }
        self
    }
}

fn distinct(xs: &[usize]) -> bool {
    let mut v = xs.to_vec();
    v.sort_unstable();
    v.windows(2).all(|w| w[0] != w[1])
}

/// Kővári–Sós–Turán upper bound on the Zarankiewicz number:
/// `z(m, n; s, s) <= (s-1)^{1/s} m n^{1-1/s} + (s-1) n`.
pub fn kst_bound<F: Float>(m: usize, n: usize, s: usize) -> Result<F> {
    if s < 2 {
        return Err(Error::InvalidParameter(format!("KST bound needs s >= 2, got {s}")));
    }
    if m == 0 || n == 0 {
        return Err(Error::InvalidParameter("KST bound needs m, n >= 1".into()));
    }
    let cast = |x: usize| F::from(x).expect("representable");
    let s_f = cast(s);
    let sm1 = cast(s - 1);
    let n_f = cast(n);
    Ok(sm1.powf(s_f.recip()) * cast(m) * n_f.powf(F::one() - s_f.recip()) + sm1 * n_f)
}

/// Exact `K_{s,s}` search. Enumerates `s`-subsets of the smaller side in
/// lexicographic order, carrying their common neighbourhood and pruning as
/// soon as it drops below `s`.
pub fn find_kss(graph: &BipartiteGraph, s: usize) -> Option<KssWitness> {
    if s == 0 {
        return Some(KssWitness { left: vec![], right: vec![] });
    }
    if graph.m() <= graph.n() {
        search_kss_rows(graph.m(), graph.n(), s, |u| graph.left_row(u))
            .map(|(left, right)| KssWitness { left, right })
    } else {
        search_kss_rows(graph.n(), graph.m(), s, |v| graph.right_row(v))
            .map(|(right, left)| KssWitness { left, right })
    }
}

/// Core of [`find_kss`] over `count` rows of `width` bits. Returns the chosen
/// row indices and the first `s` columns of their common neighbourhood.
fn search_kss_rows<'a>(
    count: usize,
    width: usize,
    s: usize,
    row: impl Fn(usize) -> &'a [u64] + Copy,
) -> Option<(Vec<usize>, Vec<usize>)> {
    let candidates: Vec<usize> = (0..count).filter(|&u| bits::count(row(u)) >= s).collect();
    if candidates.len() < s {
        return None;
    }
    let mut chosen = Vec::with_capacity(s);
    let full = bits::full(width);
    fn recurse<'a>(
        candidates: &[usize],
        start: usize,
        common: &[u64],
        s: usize,
        chosen: &mut Vec<usize>,
        row: impl Fn(usize) -> &'a [u64] + Copy,
    ) -> Option<Vec<usize>> {
        if chosen.len() == s {
            return Some(bits::ones(common).take(s).collect());
        }
        let need = s - chosen.len();
        for k in start..candidates.len() {
            if candidates.len() - k < need {
                break;
            }
            let u = candidates[k];
            let mut next = common.to_vec();
            bits::and_into(&mut next, row(u));
            if bits::count(&next) < s {
                continue;
            }
            chosen.push(u);
            if let Some(right) = recurse(candidates, k + 1, &next, s, chosen, row) {
                return Some(right);
            }
            chosen.pop();
        }
        None
    }
    let right = recurse(&candidates, 0, &full, s, &mut chosen, row)?;
    Some((chosen, right))
}

/// Part whose total degree is smallest (lowest part on ties).
fn sparsest_part(graph: &TripartiteGraph) -> Part {
    Part::ALL
        .into_iter()
        .min_by_key(|&p| graph.part_vertices(p).map(|v| graph.degree(v)).sum::<usize>())
        .expect("three parts")
}

/// Exact `K_3(s)` search.
///
/// Enumerates `s`-subsets `P` of the part with the smallest degree sum while
/// maintaining `C_a = ∩ N(x) ∩ V_a` and `C_b = ∩ N(x) ∩ V_b` for the two other
/// parts, pruning once either drops below `s`; each complete `P` hands
/// `G[C_a, C_b]` to [`find_kss`]. The first element of `P` is distributed over
/// the rayon pool; the result is the lexicographically first witness.
pub fn find_k3s(graph: &TripartiteGraph, s: usize) -> Result<Option<K3sWitness>> {
    let n = graph.n();
    if s == 0 || s > n {
        return Err(Error::InvalidParameter(format!("need 1 <= s <= n, got s={s}, n={n}")));
    }
    let base = sparsest_part(graph);
    let (pa, pb) = (base.next(), base.prev());
    let eligible: Vec<usize> = (0..n)
        .filter(|&u| {
            let v = Vertex::new(base, u);
            graph.degree_into(v, pa) >= s && graph.degree_into(v, pb) >= s
        })
        .collect();
    let found = (0..eligible.len()).into_par_iter().find_map_first(|k| {
        let v = Vertex::new(base, eligible[k]);
        let mut chosen = vec![eligible[k]];
        extend_k3s(graph, s, base, &eligible, k + 1, graph.row(v, pa).to_vec(), graph.row(v, pb).to_vec(), &mut chosen)
    });
    Ok(found.inspect(|w| {
        debug_assert!(w.verify(graph));
    }))
}

#[allow(clippy::too_many_arguments)]
fn extend_k3s(
    graph: &TripartiteGraph,
    s: usize,
    base: Part,
    eligible: &[usize],
    start: usize,
    common_a: Vec<u64>,
    common_b: Vec<u64>,
    chosen: &mut Vec<usize>,
) -> Option<K3sWitness> {
    let (pa, pb) = (base.next(), base.prev());
    if chosen.len() == s {
        let ca: Vec<usize> = bits::ones(&common_a).collect();
        let cb: Vec<usize> = bits::ones(&common_b).collect();
        let mut bip = BipartiteGraph::new(ca.len(), cb.len());
        for (i, &x) in ca.iter().enumerate() {
            let row = graph.row(Vertex::new(pa, x), pb);
            for (j, &y) in cb.iter().enumerate() {
                if bits::get(row, y) {
                    bip.add_edge(i, j);
                }
            }
        }
        let kss = find_kss(&bip, s)?;
        let mut parts: [Vec<usize>; 3] = Default::default();
        parts[base.index()] = chosen.clone();
        parts[pa.index()] = kss.left.iter().map(|&i| ca[i]).collect();
        parts[pb.index()] = kss.right.iter().map(|&j| cb[j]).collect();
        return Some(K3sWitness { parts }.normalized());
    }
    let need = s - chosen.len();
    for k in start..eligible.len() {
        if eligible.len() - k < need {
            break;
        }
        let v = Vertex::new(base, eligible[k]);
        let mut next_a = common_a.clone();
        bits::and_into(&mut next_a, graph.row(v, pa));
        if bits::count(&next_a) < s {
            continue;
        }
        let mut next_b = common_b.clone();
        bits::and_into(&mut next_b, graph.row(v, pb));
        if bits::count(&next_b) < s {
            continue;
        }
        chosen.push(eligible[k]);
        if let Some(w) = extend_k3s(graph, s, base, eligible, k + 1, next_a, next_b, chosen) {
            return Some(w);
        }
        chosen.pop();
    }
    None
}

/// Whether some `K_3(2)` uses the edge `xy`.
///
/// Any new `K_3(2)` created by adding `xy` must contain it, so this is the
/// incremental freeness test after an insertion.
pub fn k32_through_edge(graph: &TripartiteGraph, x: Vertex, y: Vertex) -> Result<bool> {
    graph.check_vertex(x)?;
    graph.check_vertex(y)?;
    if !graph.has_edge(x, y) {
        return Err(Error::NotAnEdge(x, y));
    }
    let (p, q) = (x.part, y.part);
    let r = p.third(q);
    let mut common = graph.row(x, r).to_vec();
    bits::and_into(&mut common, graph.row(y, r));
    let zs: Vec<usize> = bits::ones(&common).collect();
    for (i, &z1) in zs.iter().enumerate() {
        let z1 = Vertex::new(r, z1);
        for &z2 in &zs[i + 1..] {
            let z2 = Vertex::new(r, z2);
            let mut xs = graph.row(z1, p).to_vec();
            bits::and_into(&mut xs, graph.row(z2, p));
            bits::and_into(&mut xs, graph.row(y, p));
            bits::clear(&mut xs, x.index);
            if bits::count(&xs) == 0 {
                continue;
            }
            let mut ys = graph.row(z1, q).to_vec();
            bits::and_into(&mut ys, graph.row(z2, q));
            bits::and_into(&mut ys, graph.row(x, q));
            bits::clear(&mut ys, y.index);
            if bits::ones(&xs).any(|x2| bits::count_and(graph.row(Vertex::new(p, x2), q), &ys) > 0) {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// `D̃^±_{G,α}(v) = { w ∈ N^±(v) : T(vw) >= α n }`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DTildeSet<S> {
    pub center: Vertex,
    pub direction: Direction,
    pub alpha: S,
    pub members: Vec<Vertex>,
}

pub fn d_tilde<S: Scalar>(graph: &TripartiteGraph, v: Vertex, direction: Direction, alpha: S) -> Result<DTildeSet<S>> {
    if !(alpha.is_positive() && alpha <= S::one()) {
        return Err(Error::InvalidParameter(format!("alpha must lie in (0, 1], got {alpha:?}")));
    }
    graph.check_vertex(v)?;
    let threshold = alpha * S::from_count(graph.n());
    let target = direction.target(v.part);
    let members = graph
        .neighbors(v, target)
        .filter(|&w| S::from_count(graph.common_in_third(v, w)) >= threshold)
        .collect();
    Ok(DTildeSet { center: v, direction, alpha, members })
}

/// How [`extract_k32_via_dtilde`] ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DTildeStatus {
    /// A verified `K_3(2)` was assembled.
    Found,
    /// `k^2 sqrt(n) > n`: no part can hold the required set.
    NotApplicable,
    /// No part and direction has `k^2 sqrt(n)` vertices with large `D̃` sets.
    HypothesisFails,
    /// The best pair's common auxiliary neighbourhood stayed at or below
    /// `2 k^2 n`.
    AveragingShortfall,
    /// The common neighbourhood was large but contained no `K_{2,2}`.
    ExtractionFailed,
}

/// Outcome of [`extract_k32_via_dtilde`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DTildeExtraction {
    pub status: DTildeStatus,
    pub witness: Option<K3sWitness>,
    /// `ceil(k^2 sqrt(n))`.
    pub set_size: usize,
    pub part: Option<Part>,
    pub direction: Option<Direction>,
    /// The selected pair `{w, w'}` and their common auxiliary degree.
    pub pair: Option<(Vertex, Vertex)>,
    pub pair_common: usize,
}

/// Tries to exhibit a `K_3(2)` from a part holding `k^2 sqrt(n)` vertices whose
/// `D̃_{2/k}` sets (in a common direction) all have at least `k^2 sqrt(n)`
/// members.
///
/// For each such part `V_i` and direction, the first `k^2 sqrt(n)` qualifying
/// vertices form `W_i` and each keeps the first `k^2 sqrt(n)` members of its set
/// as `W(w)`. The auxiliary graph joins `w` to pairs `(v, u)` with
/// `v ∈ W(w)` and `wvu` a triangle; it is streamed row by row, never
/// materialised. The pair `w, w'` with the largest common auxiliary
/// neighbourhood is selected, and a `K_{2,2}` is searched inside that
/// neighbourhood viewed as a subgraph of `G[W(w) ∩ W(w'), V_other]`.
pub fn extract_k32_via_dtilde<S: Scalar>(graph: &TripartiteGraph, k: S) -> Result<DTildeExtraction> {
    if k <= S::one() {
        return Err(Error::InvalidParameter(format!("k must exceed 1, got {k:?}")));
    }
    let n = graph.n();
    let size = scalar::ceil_coeff_sqrt(k * k, n);
    let mut outcome = DTildeExtraction {
        status: DTildeStatus::NotApplicable,
        witness: None,
        set_size: size,
        part: None,
        direction: None,
        pair: None,
        pair_common: 0,
    };
    if size > n || size < 2 {
        return Ok(outcome);
    }
    outcome.status = DTildeStatus::HypothesisFails;
    let alpha = (S::one() + S::one()) / k;
    if alpha > S::one() {
        // T(vw) <= n < alpha n, so every set is empty.
        return Ok(outcome);
    }
    // 2 k^2 n
    let shortfall_line = (S::one() + S::one()) * k * k * S::from_count(n);
    for part in Part::ALL {
        for direction in [Direction::Out, Direction::In] {
            let mut selected: Vec<(Vertex, Vec<usize>)> = Vec::new();
            for w in graph.part_vertices(part) {
                let set = d_tilde(graph, w, direction, alpha)?;
                if set.members.len() >= size {
                    selected.push((w, set.members.iter().take(size).map(|m| m.index).collect()));
                    if selected.len() == size {
                        break;
                    }
                }
            }
            if selected.len() < size {
                continue;
            }
            let primary = direction.target(part);
            let other = part.third(primary);
            let rows: Vec<Vec<u64>> = selected.iter().map(|(_, set)| bits::from_indices(n, set.iter().copied())).collect();
            // Common auxiliary degree of (w, w'): sum over v in W(w) ∩ W(w') of
            // |N(w) ∩ N(w') ∩ N(v) ∩ V_other|.
            let pair_score = |a: usize, b: usize| -> usize {
                let (wa, wb) = (selected[a].0, selected[b].0);
                let ra = graph.row(wa, other);
                let rb = graph.row(wb, other);
                let mut both = rows[a].clone();
                bits::and_into(&mut both, &rows[b]);
                bits::ones(&both)
                    .map(|v| bits::count_and3(ra, rb, graph.row(Vertex::new(primary, v), other)))
                    .sum()
            };
            let best = (0..size)
                .into_par_iter()
                .flat_map_iter(|a| (a + 1..size).map(move |b| (a, b)))
                .map(|(a, b)| (pair_score(a, b), std::cmp::Reverse((a, b))))
                .max()
                .map(|(score, std::cmp::Reverse(pair))| (score, pair));
            let Some((score, (a, b))) = best else { continue };
            let (wa, wb) = (selected[a].0, selected[b].0);
            outcome.part = Some(part);
            outcome.direction = Some(direction);
            outcome.pair = Some((wa, wb));
            outcome.pair_common = score;
            if S::from_count(score) <= shortfall_line {
                outcome.status = DTildeStatus::AveragingShortfall;
                continue;
            }
            let mut shared = rows[a].clone();
            bits::and_into(&mut shared, &rows[b]);
            let left: Vec<usize> = bits::ones(&shared).collect();
            let mut common_other = graph.row(wa, other).to_vec();
            bits::and_into(&mut common_other, graph.row(wb, other));
            let right: Vec<usize> = bits::ones(&common_other).collect();
            let mut bip = BipartiteGraph::new(left.len(), right.len());
            for (i, &v) in left.iter().enumerate() {
                let row = graph.row(Vertex::new(primary, v), other);
                for (j, &u) in right.iter().enumerate() {
                    if bits::get(row, u) {
                        bip.add_edge(i, j);
                    }
                }
            }
            match find_kss(&bip, 2) {
                Some(kss) => {
                    let mut parts: [Vec<usize>; 3] = Default::default();
                    parts[part.index()] = vec![wa.index, wb.index];
                    parts[primary.index()] = kss.left.iter().map(|&i| left[i]).collect();
                    parts[other.index()] = kss.right.iter().map(|&j| right[j]).collect();
                    let witness = K3sWitness { parts }.normalized();
                    debug_assert!(witness.verify(graph));
                    outcome.status = DTildeStatus::Found;
                    outcome.witness = Some(witness);
                    return Ok(outcome);
                }
                None => outcome.status = DTildeStatus::ExtractionFailed,
            }
        }
    }
    Ok(outcome)
}
