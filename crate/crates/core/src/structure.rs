//! `C_6` blow-up structure: partition extraction, the bipartite `A`/`B`
//! refinement and the two-blow-up hypothesis validator.

use rayon::prelude::*;
use serde::Serialize;

use crate::bipartite::BipartiteGraph;
use crate::detection::{find_k3s, K3sWitness};
use crate::error::{Error, Result};
use crate::graph::{Part, TripartiteGraph, Vertex};
use crate::scalar::{self, Scalar};

/// Pass/fail for one property with the smallest slack seen.
///
/// Slack is measured in vertices: for a requirement `lhs >= rhs` it is
/// `lhs - rhs`. `worst_slack` is `None` when the property is vacuous.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PropertyCheck {
    pub name: String,
    pub passed: bool,
    pub worst_slack: Option<f64>,
    /// The first vertex or set attaining the worst slack when it is negative.
    pub violator: Option<String>,
}

/// Folds `(slack, label)` pairs, keeping the first minimum.
fn check<S: Scalar>(name: &str, items: impl IntoIterator<Item = (S, String)>) -> PropertyCheck {
    let mut worst: Option<(S, String)> = None;
    for (slack, label) in items {
        if worst.as_ref().is_none_or(|(w, _)| slack < *w) {
            worst = Some((slack, label));
        }
    }
    match worst {
        None => PropertyCheck { name: name.to_string(), passed: true, worst_slack: None, violator: None },
        Some((slack, label)) => {
            let passed = slack >= S::zero();
            PropertyCheck {
                name: name.to_string(),
                passed,
                worst_slack: Some(slack.approx()),
                violator: (!passed).then_some(label),
            }
        }
    }
}

/// Row of `n` bits per part marking the members of `set`.
struct Membership {
    rows: [Vec<u64>; 3],
}

impl Membership {
    fn new(n: usize, set: &[Vertex]) -> Self {
        let mut rows: [Vec<u64>; 3] = std::array::from_fn(|_| vec![0; crate::bits::words(n)]);
        for v in set {
            crate::bits::set(&mut rows[v.part.index()], v.index);
        }
        Membership { rows }
    }

    fn degree(&self, graph: &TripartiteGraph, v: Vertex) -> usize {
        Part::ALL
            .into_iter()
            .filter(|&p| p != v.part)
            .map(|p| crate::bits::count_and(graph.row(v, p), &self.rows[p.index()]))
            .sum()
    }
}

/// `1..=6` cyclic index arithmetic.
fn cyc6(i: usize, delta: isize) -> usize {
    ((i as isize - 1 + delta).rem_euclid(6) + 1) as usize
}

/// `1..=3` cyclic index arithmetic.
fn cyc3(i: usize, delta: isize) -> usize {
    ((i as isize - 1 + delta).rem_euclid(3) + 1) as usize
}

/// Part holding `W_i` for `i` in `1..=6`.
fn w_part(i: usize) -> Part {
    Part::from_index((i - 1) % 3)
}

/// Whether each extraction hypothesis holds on the input graph.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExtractionHypotheses {
    /// `δ(G) >= n`.
    pub min_degree: bool,
    /// `δ^+(G) >= 2 ε n`.
    pub partial_degree: bool,
    /// `max T(uv)` over edges.
    pub max_codegree: usize,
    /// `max T(uv) <= (ε/30)^2 n`.
    pub codegree: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct C6Diagnostics {
    pub part_membership: PropertyCheck,
    pub block_sizes: PropertyCheck,
    pub block_degrees: PropertyCheck,
    pub partial_degrees: PropertyCheck,
}

impl C6Diagnostics {
    pub fn all_passed(&self) -> bool {
        [&self.part_membership, &self.block_sizes, &self.block_degrees, &self.partial_degrees]
            .iter()
            .all(|c| c.passed)
    }

    pub fn checks(&self) -> [&PropertyCheck; 4] {
        [&self.part_membership, &self.block_sizes, &self.block_degrees, &self.partial_degrees]
    }
}

/// `W_1..W_6, U_1..U_3` with `W_j, W_{j+3}, U_j ⊆ V_j`, plus the data it was
/// extracted from.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct C6Partition<S> {
    pub w: [Vec<Vertex>; 6],
    pub u: [Vec<Vertex>; 3],
    pub epsilon: S,
    /// `δ^+(G) / n`.
    pub beta: S,
    pub min_out_degree: usize,
    /// `a_0 .. a_12`.
    pub path: Vec<Vertex>,
    /// `A_1 .. A_12` with `A_i = N^+(a_{i-1})`, under the path's own labels.
    pub a_sets: Vec<Vec<Vertex>>,
    /// Label of the extracted `W_i` is `i + shift` (cyclically), so that
    /// `W_j ⊆ V_j`.
    pub shift: usize,
    pub hypotheses: ExtractionHypotheses,
    pub diagnostics: C6Diagnostics,
}

impl<S> C6Partition<S> {
    /// Every vertex with its block label: `W1..W6` or `U1..U3`.
    pub fn labels(&self) -> Vec<(Vertex, String)> {
        let mut out = Vec::new();
        for (i, set) in self.w.iter().enumerate() {
            out.extend(set.iter().map(|&v| (v, format!("W{}", i + 1))));
        }
        for (j, set) in self.u.iter().enumerate() {
            out.extend(set.iter().map(|&v| (v, format!("U{}", j + 1))));
        }
        out.sort();
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct C6Failure {
    pub reason: String,
    pub path: Vec<Vertex>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
#[allow(clippy::large_enum_variant)]
pub enum C6Outcome<S> {
    Partition(C6Partition<S>),
    Witness { witness: K3sWitness, overlap_block: usize },
    Failure(C6Failure),
}

impl<S> C6Outcome<S> {
    pub fn partition(&self) -> Option<&C6Partition<S>> {
        match self {
            C6Outcome::Partition(p) => Some(p),
            _ => None,
        }
    }
}

/// Extracts a `C_6` blow-up partition by walking a max-out-degree path of 13
/// vertices from a minimum out-degree vertex.
pub fn extract_c6<S: Scalar>(graph: &TripartiteGraph, epsilon: S) -> Result<C6Outcome<S>> {
    if !(epsilon >= S::zero() && epsilon < S::one()) {
        return Err(Error::InvalidParameter(format!("epsilon must lie in [0, 1), got {epsilon:?}")));
    }
    let n = graph.n();
    let profile = graph.degree_profile();
    let min_out = profile.min_out_degree;

    let a0 = Part::ALL
        .into_iter()
        .find_map(|p| profile.out_degree[p.index()].iter().position(|&d| d == min_out).map(|u| Vertex::new(p, u)))
        .expect("non-empty graph");
    let mut path = vec![a0];
    if min_out == 0 {
        return Ok(C6Outcome::Failure(C6Failure {
            reason: format!("vertex {a0} has no out-neighbour"),
            path,
        }));
    }
    for _ in 0..12 {
        let last = *path.last().expect("non-empty path");
        let next = graph
            .neighbors(last, last.part.next())
            .max_by_key(|&v| (profile.out_degree_of(v), std::cmp::Reverse(v.index)))
            .expect("min out-degree is positive");
        path.push(next);
    }
    // a_sets[i - 1] = A_i.
    let a_sets: Vec<Vec<Vertex>> = (1..=12)
        .map(|i| graph.neighbors(path[i - 1], path[i - 1].part.next()).collect())
        .collect();
    let target = a_sets[0][0].part;
    let mut rows: Vec<Vec<u64>> = a_sets
        .iter()
        .map(|a| crate::bits::from_indices(n, a.iter().map(|v| v.index)))
        .collect();
    rows.insert(0, Vec::new()); // rows[i] = A_i
    // W_i ⊆ A_i ⊆ part of a_0's successor shifted by i - 1.
    let raw_w: Vec<Vec<Vertex>> = (1..=6)
        .map(|i| {
            let part = target.shift(i as isize - 1);
            let mut row = rows[i].clone();
            crate::bits::and_into(&mut row, &rows[i + 6]);
            for (d, r) in row.iter_mut().zip(&rows[i + 3]) {
                *d &= !r;
            }
            crate::bits::ones(&row).map(|u| Vertex::new(part, u)).collect()
        })
        .collect();

    for i in 0..3 {
        if raw_w[i].len() + raw_w[i + 3].len() > n {
            if let Some(witness) = find_k3s(graph, 2)? {
                return Ok(C6Outcome::Witness { witness, overlap_block: i + 1 });
            }
            return Ok(C6Outcome::Failure(C6Failure {
                reason: format!("blocks {} and {} overlap but no K_3(2) exists", i + 1, i + 4),
                path,
            }));
        }
    }

    // A_1 lies in part `target`; relabel so that W_j ⊆ V_j.
    let shift = target.index();
    let mut w: [Vec<Vertex>; 6] = Default::default();
    for (i, set) in raw_w.into_iter().enumerate() {
        w[(i + shift) % 6] = set;
    }
    let u: [Vec<Vertex>; 3] = std::array::from_fn(|j| {
        let part = Part::from_index(j);
        let mut taken = vec![false; n];
        for v in w[j].iter().chain(&w[j + 3]) {
            taken[v.index] = true;
        }
        (0..n).filter(|&i| !taken[i]).map(|i| Vertex::new(part, i)).collect()
    });

    let eps_n = epsilon * S::from_count(n);
    let hypotheses = extraction_hypotheses(graph, &profile, epsilon);
    let diagnostics = c6_diagnostics(graph, &w, &u, min_out, eps_n);
    Ok(C6Outcome::Partition(C6Partition {
        w,
        u,
        epsilon,
        beta: S::from_count(min_out) / S::from_count(n),
        min_out_degree: min_out,
        path,
        a_sets,
        shift,
        hypotheses,
        diagnostics,
    }))
}

fn extraction_hypotheses<S: Scalar>(
    graph: &TripartiteGraph,
    profile: &crate::graph::DegreeProfile,
    epsilon: S,
) -> ExtractionHypotheses {
    let n = graph.n();
    let n_s = S::from_count(n);
    let max_codegree = graph
        .edges()
        .collect::<Vec<_>>()
        .par_iter()
        .map(|&(x, y)| graph.common_in_third(x, y))
        .max()
        .unwrap_or(0);
    let thirty = S::from_count(30);
    let alpha = (epsilon / thirty) * (epsilon / thirty);
    ExtractionHypotheses {
        min_degree: profile.min_degree >= n,
        partial_degree: S::from_count(profile.min_out_degree) >= (S::one() + S::one()) * epsilon * n_s,
        max_codegree,
        codegree: S::from_count(max_codegree) <= alpha * n_s,
    }
}

fn c6_diagnostics<S: Scalar>(
    graph: &TripartiteGraph,
    w: &[Vec<Vertex>; 6],
    u: &[Vec<Vertex>; 3],
    min_out: usize,
    eps_n: S,
) -> C6Diagnostics {
    let n = graph.n();
    let count = S::from_count;

    let mut membership = Vec::new();
    for i in 1..=6 {
        for v in &w[i - 1] {
            membership.push((if v.part == w_part(i) { S::zero() } else { S::zero() - S::one() }, format!("W{i} {v}")));
        }
    }
    for j in 1..=3 {
        for v in &u[j - 1] {
            membership.push((if v.part.number() as usize == j { S::zero() } else { S::zero() - S::one() }, format!("U{j} {v}")));
        }
    }
    let part_membership = check("part-membership", membership);

    let block_sizes = check(
        "block-sizes",
        (1..=6).map(|i| {
            let size = count(w[i - 1].len());
            let low = size - (count(min_out) - eps_n);
            let high = count(min_out) + eps_n - size;
            (if low < high { low } else { high }, format!("W{i}"))
        }),
    );

    // P = {W_1..W_6, U_1..U_3}: near-complete to W_{i-1}, W_{i+1}, U_{i-1},
    // near-empty to the rest.
    let w_sets: Vec<Membership> = w.iter().map(|s| Membership::new(n, s)).collect();
    let u_sets: Vec<Membership> = u.iter().map(|s| Membership::new(n, s)).collect();
    let pieces: Vec<(String, &Membership, usize)> = (1..=6)
        .map(|i| (format!("W{i}"), &w_sets[i - 1], w[i - 1].len()))
        .chain((1..=3).map(|j| (format!("U{j}"), &u_sets[j - 1], u[j - 1].len())))
        .collect();
    let members: Vec<(usize, Vertex)> = (1..=6).flat_map(|i| w[i - 1].iter().map(move |&v| (i, v))).collect();
    let per_vertex: Vec<Vec<(S, String)>> = members
        .par_iter()
        .map(|&(i, v)| {
            let dense = [format!("W{}", cyc6(i, -1)), format!("W{}", cyc6(i, 1)), format!("U{}", cyc3(i, -1))];
            pieces
                .iter()
                .map(|(name, set, size)| {
                    let d = count(set.degree(graph, v));
                    let slack = if dense.contains(name) { d - (count(*size) - eps_n) } else { eps_n - d };
                    (slack, format!("W{i} {v} vs {name}"))
                })
                .collect()
        })
        .collect();
    let block_degrees = check("block-degrees", per_vertex.into_iter().flatten());

    let partial_degrees = check(
        "partial-degrees",
        members.iter().flat_map(|&(i, v)| {
            let out = count(graph.out_degree(v));
            let inn = count(graph.in_degree(v));
            [
                (count(min_out) + eps_n - out, format!("W{i} {v} out")),
                (inn - (count(n) - count(min_out) - eps_n), format!("W{i} {v} in")),
            ]
        }),
    );

    C6Diagnostics { part_membership, block_sizes, block_degrees, partial_degrees }
}

/// Given `G[A, B]` (left side `A`) with `d(a) >= (1 - λ)|B|` for every `a`,
/// returns `B' = { b : d(b) >= 4|A|/5 }` as right-side indices.
///
/// Then `|B'| >= (1 - 5λ)|B|` and `d(a, B') >= (1 - 2λ)|B'|` for all `a`.
pub fn refine_ab<S: Scalar>(graph: &BipartiteGraph, lambda: S) -> Result<Vec<usize>> {
    let tenth = S::one() / S::from_count(10);
    if !(lambda >= S::zero() && lambda <= tenth) {
        return Err(Error::InvalidParameter(format!("lambda must lie in [0, 1/10], got {lambda:?}")));
    }
    let b = S::from_count(graph.n());
    for a in 0..graph.m() {
        if S::from_count(graph.left_degree(a)) < (S::one() - lambda) * b {
            return Err(Error::Precondition(format!(
                "left vertex {a} has degree {} < (1 - lambda)|B|",
                graph.left_degree(a)
            )));
        }
    }
    let m = graph.m();
    Ok((0..graph.n()).filter(|&v| 5 * graph.right_degree(v) >= 4 * m).collect())
}

/// Two interleaved `C_6` blow-ups `W_1..W_6` and `X_1..X_6` with parameters
/// `c > 1` and `d >= 0`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct C6CloseInstance<S> {
    pub w: [Vec<Vertex>; 6],
    pub x: [Vec<Vertex>; 6],
    pub c: S,
    pub d: usize,
}

impl<S: Scalar> C6CloseInstance<S> {
    /// Rejects out-of-range or repeated vertices, wrong parts and `c <= 1`.
    pub fn check(&self, graph: &TripartiteGraph) -> Result<()> {
        if self.c <= S::one() {
            return Err(Error::InvalidParameter(format!("c must exceed 1, got {:?}", self.c)));
        }
        let mut seen = std::collections::HashSet::new();
        for (family, sets) in [("W", &self.w), ("X", &self.x)] {
            for (i, set) in sets.iter().enumerate() {
                for &v in set {
                    graph.check_vertex(v)?;
                    if v.part != w_part(i + 1) {
                        return Err(Error::Malformed(format!("{family}{} contains {v} outside part {}", i + 1, w_part(i + 1).number())));
                    }
                    if !seen.insert(v) {
                        return Err(Error::Malformed(format!("vertex {v} appears in more than one set")));
                    }
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct C6CloseReport {
    pub conditions: Vec<PropertyCheck>,
    pub all_passed: bool,
    /// Present when every condition holds and the detector found one.
    pub witness: Option<K3sWitness>,
    /// Every condition holds yet the detector found no `K_3(2)`.
    pub alarm: bool,
}

/// Checks every hypothesis of the two-blow-up lemma. When all hold, runs the
/// exact detector, which must then succeed.
pub fn validate_c6_close<S: Scalar>(graph: &TripartiteGraph, inst: &C6CloseInstance<S>) -> Result<C6CloseReport> {
    inst.check(graph)?;
    let n = graph.n();
    let count = S::from_count;
    let n_s = count(n);
    let c = inst.c;
    let profile = graph.degree_profile();
    let delta = profile.min_degree;
    let delta_plus = profile.min_out_degree;
    let d = inst.d;
    let slack_n = n_s / c;

    let mut conditions = Vec::new();
    // 1 < c <= n^{1/6}
    let c6 = c * c * c * c * c * c;
    conditions.push(check("c-range", [(n_s - c6, format!("c = {c}"))]));
    // δ >= n + 28 c^2 sqrt(n), decided exactly by squaring.
    let coeff = count(28) * c * c;
    let excess = delta as i64 - n as i64;
    let min_degree_ok = excess >= 0 && scalar::at_least_coeff_sqrt(count(excess as usize), coeff, n);
    conditions.push(PropertyCheck {
        name: "min-degree".into(),
        passed: min_degree_ok,
        worst_slack: Some(excess as f64 - coeff.approx() * (n as f64).sqrt()),
        violator: (!min_degree_ok).then(|| profile.first_below(delta + 1).map(|v| v.to_string()).unwrap_or_default()),
    });
    conditions.push(check("partial-degree", [(count(delta_plus) - count(d), "d".to_string())]));
    // 3δ^+ + 2d >= n + 26 n / c
    conditions.push(check(
        "degree-sum",
        [(count(3 * delta_plus + 2 * d) - n_s - count(26) * slack_n, "3δ⁺+2d".to_string())],
    ));
    conditions.push(check(
        "w-size",
        (1..=6).map(|i| size_slack(inst.w[i - 1].len(), delta_plus, slack_n, format!("W{i}"))),
    ));
    conditions.push(check(
        "x-size",
        (1..=6).map(|i| size_slack(inst.x[i - 1].len(), d, slack_n, format!("X{i}"))),
    ));

    let w_sets: Vec<Membership> = inst.w.iter().map(|s| Membership::new(n, s)).collect();
    let x_sets: Vec<Membership> = inst.x.iter().map(|s| Membership::new(n, s)).collect();
    let degree_check = |name: &str, family: &str, own: &[Vec<Vertex>; 6], targets: &(dyn Fn(usize) -> Vec<(String, usize)> + Sync)| {
        let members: Vec<(usize, Vertex)> = (1..=6).flat_map(|i| own[i - 1].iter().map(move |&v| (i, v))).collect();
        let per_vertex: Vec<Vec<(S, String)>> = members
            .par_iter()
            .map(|&(i, v)| {
                targets(i)
                    .into_iter()
                    .map(|(set_name, k)| {
                        let (set, size) = if set_name.starts_with('W') {
                            (&w_sets[k - 1], inst.w[k - 1].len())
                        } else {
                            (&x_sets[k - 1], inst.x[k - 1].len())
                        };
                        let deg = count(set.degree(graph, v));
                        (deg - (count(size) - slack_n), format!("{family}{i} {v} vs {set_name}"))
                    })
                    .collect()
            })
            .collect();
        check(name, per_vertex.into_iter().flatten())
    };
    conditions.push(degree_check("w-degree", "W", &inst.w, &|i| {
        vec![
            (format!("W{}", cyc6(i, -1)), cyc6(i, -1)),
            (format!("W{}", cyc6(i, 1)), cyc6(i, 1)),
            (format!("X{}", cyc6(i, -1)), cyc6(i, -1)),
            (format!("X{}", cyc6(i, -4)), cyc6(i, -4)),
        ]
    }));
    conditions.push(degree_check("x-degree", "X", &inst.x, &|i| {
        vec![
            (format!("X{}", cyc6(i, -1)), cyc6(i, -1)),
            (format!("X{}", cyc6(i, 1)), cyc6(i, 1)),
            (format!("W{}", cyc6(i, 1)), cyc6(i, 1)),
            (format!("W{}", cyc6(i, 4)), cyc6(i, 4)),
        ]
    }));

    let all_passed = conditions.iter().all(|c| c.passed);
    let (witness, alarm) = if all_passed {
        let w = find_k3s(graph, 2)?;
        let alarm = w.is_none();
        (w, alarm)
    } else {
        (None, false)
    };
    Ok(C6CloseReport { conditions, all_passed, witness, alarm })
}

fn size_slack<S: Scalar>(size: usize, centre: usize, radius: S, label: String) -> (S, String) {
    let size = S::from_count(size);
    let centre = S::from_count(centre);
    let low = size - (centre - radius);
    let high = centre + radius - size;
    (if low < high { low } else { high }, label)
}
