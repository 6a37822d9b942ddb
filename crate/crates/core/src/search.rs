//! Seeded simulated annealing over `G_3(n)`.
//!
//! Two objectives are supported: minimising `T(G)` subject to
//! `δ(G) >= n + t`, and maximising `δ(G) - n` subject to `K_3(2)`-freeness.
//! Restarts run in parallel, each on its own ChaCha stream, and merge by best
//! value then lowest restart index, so results do not depend on the pool size.

use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use rand::seq::index::sample;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::constructions::{extremal_regular, glue, octahedron_free, random_graph, ExtremalRegularParams, OctahedronFreeParams};
use crate::detection::{find_k3s, k32_through_edge};
use crate::error::{Error, Result};
use crate::graph::{Part, TripartiteGraph, Vertex};
use crate::io::{read_graph, GraphDocument};

/// Proposals used to calibrate the starting temperature.
pub const CALIBRATION_MOVES: usize = 1000;
/// Final temperature as a fraction of the starting one.
pub const COOLING_FLOOR: f64 = 1e-3;
/// The degree floor is recomputed from scratch every this many proposals.
pub const FEASIBILITY_INTERVAL: u64 = 100;
/// Number of full triangle recounts per restart.
pub const RECOUNT_CHECKPOINTS: usize = 100;
/// A full `K_3(2)` detector pass runs every this many accepted moves.
pub const FULL_FREENESS_INTERVAL: u64 = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Objective {
    MinimizeTriangles,
    MaximizeSurplusK32Free,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Initializer {
    Construction,
    Random,
    File(PathBuf),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub n: usize,
    pub t: usize,
    pub objective: Objective,
    /// Proposals per restart.
    pub budget: u64,
    pub restarts: usize,
    pub seed: u64,
    pub initializer: Initializer,
}

impl SearchConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::InvalidParameter("part size must be positive".into()));
        }
        if self.restarts == 0 {
            return Err(Error::InvalidParameter("at least one restart is required".into()));
        }
        if self.objective == Objective::MinimizeTriangles && !(1..=self.n).contains(&self.t) {
            return Err(Error::InvalidParameter(format!("need 1 <= t <= n, got t={}, n={}", self.t, self.n)));
        }
        Ok(())
    }
}

/// `max{t^3, ceil(n^2 (3t - n) / 2), 4 if t = 1 and n >= 4}`.
pub fn triangle_floor(n: usize, t: usize) -> u64 {
    let (n, t) = (n as u64, t as u64);
    let cube = t.pow(3);
    let quadratic = if 3 * t > n { (n * n * (3 * t - n)).div_ceil(2) } else { 0 };
    let small = if t == 1 && n >= 4 { 4 } else { 0 };
    cube.max(quadratic).max(small)
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct RestartStats {
    pub restart: usize,
    pub initial_value: i64,
    pub best: i64,
    pub initial_temperature: f64,
    pub proposals: u64,
    pub accepted: u64,
    pub skipped: u64,
    pub rejected_constraint: u64,
    pub rejected_metropolis: u64,
    pub feasibility_checks: u64,
    pub recount_checks: u64,
    pub full_freeness_checks: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SearchReport {
    pub config: SearchConfig,
    /// `T(G)` for triangle minimisation, `δ(G) - n` for the surplus probe.
    pub best: i64,
    pub best_restart: usize,
    /// Lower bound on `T(G)` under the degree floor.
    pub bound_floor: Option<u64>,
    pub attains_floor: Option<bool>,
    /// Exact detector verdict on the best graph.
    pub k32_free: Option<bool>,
    pub restarts: Vec<RestartStats>,
    #[serde(skip)]
    pub wall_time: Duration,
}

impl SearchReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Fixed-width table, one row per restart.
    pub fn render_table(&self) -> String {
        let mut out = String::new();
        let label = match self.config.objective {
            Objective::MinimizeTriangles => "triangles",
            Objective::MaximizeSurplusK32Free => "surplus",
        };
        out.push_str(&format!(
            "{:>7} {:>10} {:>10} {:>10} {:>10} {:>10} {:>12}\n",
            "restart", "initial", label, "accepted", "constraint", "metropolis", "temperature"
        ));
        for r in &self.restarts {
            out.push_str(&format!(
                "{:>7} {:>10} {:>10} {:>10} {:>10} {:>10} {:>12.4}\n",
                r.restart, r.initial_value, r.best, r.accepted, r.rejected_constraint, r.rejected_metropolis, r.initial_temperature
            ));
        }
        out.push_str(&format!("best {label}: {} (restart {})\n", self.best, self.best_restart));
        if let (Some(floor), Some(hit)) = (self.bound_floor, self.attains_floor) {
            out.push_str(&format!("floor: {floor} ({})\n", if hit { "attained" } else { "not attained" }));
        }
        if let Some(free) = self.k32_free {
            out.push_str(&format!("K_3(2)-free: {free}\n"));
        }
        out
    }
}

#[derive(Debug, Clone)]
pub struct SearchOutcome {
    pub report: SearchReport,
    pub best_graph: TripartiteGraph,
}

impl SearchOutcome {
    /// The best graph with the configuration and value in its meta block.
    pub fn document(&self) -> GraphDocument {
        let meta = serde_json::json!({
            "search": self.report.config,
            "best": self.report.best,
        });
        GraphDocument::with_meta(self.best_graph.clone(), meta)
    }
}

/// Graph plus degree histogram and incrementally maintained `T(G)`.
#[derive(Clone)]
struct State {
    graph: TripartiteGraph,
    degree: [Vec<usize>; 3],
    histogram: Vec<usize>,
    triangles: u64,
}

impl State {
    fn new(graph: TripartiteGraph) -> Self {
        let n = graph.n();
        let profile = graph.degree_profile();
        let mut histogram = vec![0; 2 * n + 1];
        for row in &profile.degree {
            for &d in row {
                histogram[d] += 1;
            }
        }
        let triangles = graph.triangle_count();
        State { graph, degree: profile.degree, histogram, triangles }
    }

    fn deg(&self, v: Vertex) -> usize {
        self.degree[v.part.index()][v.index]
    }

    fn shift_degree(&mut self, v: Vertex, up: bool) {
        let d = &mut self.degree[v.part.index()][v.index];
        self.histogram[*d] -= 1;
        if up {
            *d += 1;
        } else {
            *d -= 1;
        }
        self.histogram[*d] += 1;
    }

    fn min_degree(&self) -> usize {
        self.histogram.iter().position(|&c| c > 0).expect("non-empty graph")
    }

    fn at_min(&self) -> usize {
        self.histogram[self.min_degree()]
    }

    fn add(&mut self, x: Vertex, y: Vertex) {
        self.triangles += self.graph.common_in_third(x, y) as u64;
        self.graph.set_edge(x, y).expect("valid vertices");
        self.shift_degree(x, true);
        self.shift_degree(y, true);
    }

    fn remove(&mut self, x: Vertex, y: Vertex) {
        self.triangles -= self.graph.common_in_third(x, y) as u64;
        self.graph.remove_edge(x, y).expect("valid vertices");
        self.shift_degree(x, false);
        self.shift_degree(y, false);
    }
}

#[derive(Debug, Clone, Copy)]
enum Move {
    Add(Vertex, Vertex),
    Remove(Vertex, Vertex),
    /// Remove `uv`, add `uw` with `v, w` in the same part.
    Swap { u: Vertex, v: Vertex, w: Vertex },
}

impl Move {
    fn apply(self, state: &mut State) {
        match self {
            Move::Add(x, y) => state.add(x, y),
            Move::Remove(x, y) => state.remove(x, y),
            Move::Swap { u, v, w } => {
                state.remove(u, v);
                state.add(u, w);
            }
        }
    }

    fn revert(self, state: &mut State) {
        match self {
            Move::Add(x, y) => state.remove(x, y),
            Move::Remove(x, y) => state.add(x, y),
            Move::Swap { u, v, w } => {
                state.remove(u, w);
                state.add(u, v);
            }
        }
    }

    fn added_edge(self) -> Option<(Vertex, Vertex)> {
        match self {
            Move::Add(x, y) => Some((x, y)),
            Move::Swap { u, w, .. } => Some((u, w)),
            Move::Remove(..) => None,
        }
    }

    /// Whether every degree stays at or above `floor`.
    fn keeps_floor(self, state: &State, floor: usize) -> bool {
        match self {
            Move::Add(..) => true,
            Move::Remove(x, y) => state.deg(x) > floor && state.deg(y) > floor,
            Move::Swap { v, .. } => state.deg(v) > floor,
        }
    }

    /// Change in `T(G)`, evaluated before applying.
    fn triangle_delta(self, state: &State) -> i64 {
        let c = |x, y| state.graph.common_in_third(x, y) as i64;
        match self {
            Move::Add(x, y) => c(x, y),
            Move::Remove(x, y) => -c(x, y),
            Move::Swap { u, v, w } => c(u, w) - c(u, v),
        }
    }
}

fn propose(rng: &mut ChaCha8Rng, state: &State) -> Option<Move> {
    let n = state.graph.n();
    let part = Part::from_index(rng.gen_range(0..3));
    if rng.gen_bool(0.5) {
        let x = Vertex::new(part, rng.gen_range(0..n));
        let y = Vertex::new(part.next(), rng.gen_range(0..n));
        return Some(if state.graph.has_edge(x, y) { Move::Remove(x, y) } else { Move::Add(x, y) });
    }
    let u = Vertex::new(part, rng.gen_range(0..n));
    let q = if rng.gen_bool(0.5) { part.next() } else { part.prev() };
    let row = state.graph.row(u, q);
    let (inside, outside): (Vec<usize>, Vec<usize>) = (0..n).partition(|&i| crate::bits::get(row, i));
    let v = *inside.choose(rng)?;
    let w = *outside.choose(rng)?;
    Some(Move::Swap { u, v: Vertex::new(q, v), w: Vertex::new(q, w) })
}

/// `T_0` such that the median uphill move of a calibration sample is accepted
/// with probability 1/2.
fn calibrate(rng: &mut ChaCha8Rng, state: &mut State, delta: &mut dyn FnMut(Move, &mut State) -> Option<i64>) -> f64 {
    let mut uphill = Vec::new();
    for _ in 0..CALIBRATION_MOVES {
        if let Some(mv) = propose(rng, state) {
            if let Some(d) = delta(mv, state) {
                if d > 0 {
                    uphill.push(d);
                }
            }
        }
    }
    if uphill.is_empty() {
        return 1.0;
    }
    uphill.sort_unstable();
    uphill[uphill.len() / 2] as f64 / std::f64::consts::LN_2
}

fn temperature(t0: f64, step: u64, budget: u64) -> f64 {
    t0 * COOLING_FLOOR.powf(step as f64 / budget.max(1) as f64)
}

fn accept(rng: &mut ChaCha8Rng, delta: i64, temp: f64) -> bool {
    delta <= 0 || rng.gen::<f64>() < (-(delta as f64) / temp).exp()
}

fn restart_rng(seed: u64, restart: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(restart as u64);
    rng
}

fn load_file(path: &Path, n: usize) -> Result<TripartiteGraph> {
    let doc = read_graph(path)?;
    if doc.graph.n() != n {
        return Err(Error::SizeMismatch(doc.graph.n(), n));
    }
    Ok(doc.graph)
}

/// Seeded annealing for the minimum of `T(G)` over `δ(G) >= n + t`.
///
/// Every accepted state is compared against [`triangle_floor`]; a state below
/// it aborts the run with [`Error::BoundViolation`].
pub fn probe_min_triangles(cfg: &SearchConfig) -> Result<SearchOutcome> {
    cfg.validate()?;
    if cfg.objective != Objective::MinimizeTriangles {
        return Err(Error::InvalidParameter("configuration objective is not minimize-triangles".into()));
    }
    let started = Instant::now();
    let (n, t) = (cfg.n, cfg.t);
    let floor = n + t;
    let bound = triangle_floor(n, t);
    let shared = match &cfg.initializer {
        Initializer::Construction => Some(extremal_regular(ExtremalRegularParams::new(n, t)?).graph),
        Initializer::File(path) => Some(load_file(path, n)?),
        Initializer::Random => None,
    };
    if let Some(g) = &shared {
        if let Some(v) = g.degree_profile().first_below(floor) {
            return Err(Error::Precondition(format!("initial graph: vertex {v} has degree below n + t = {floor}")));
        }
    }

    let results: Vec<Result<(RestartStats, TripartiteGraph)>> = (0..cfg.restarts)
        .into_par_iter()
        .map(|restart| {
            let mut rng = restart_rng(cfg.seed, restart);
            let initial = match &shared {
                Some(g) => g.clone(),
                None => random_graph(n, floor, rng.gen())?,
            };
            min_triangles_restart(cfg, restart, initial, &mut rng, floor, bound)
        })
        .collect();
    finish(cfg, results, started, Some(bound))
}

fn min_triangles_restart(
    cfg: &SearchConfig,
    restart: usize,
    initial: TripartiteGraph,
    rng: &mut ChaCha8Rng,
    floor: usize,
    bound: u64,
) -> Result<(RestartStats, TripartiteGraph)> {
    let mut state = State::new(initial);
    let sentinel = |state: &State| -> Result<()> {
        if state.triangles < bound {
            return Err(Error::BoundViolation(format!(
                "state with min degree {} has {} triangles, below the floor {bound}",
                state.min_degree(),
                state.triangles
            )));
        }
        Ok(())
    };
    sentinel(&state)?;
    let mut stats = RestartStats { restart, initial_value: state.triangles as i64, ..Default::default() };
    stats.initial_temperature = calibrate(rng, &mut state, &mut |mv, s| mv.keeps_floor(s, floor).then(|| mv.triangle_delta(s)));
    let mut checkpoints: Vec<u64> = if cfg.budget == 0 {
        Vec::new()
    } else {
        let k = RECOUNT_CHECKPOINTS.min(cfg.budget as usize);
        sample(rng, cfg.budget as usize, k).into_iter().map(|i| i as u64).collect()
    };
    checkpoints.sort_unstable();
    let mut next_checkpoint = 0;

    let mut best = state.triangles;
    let mut best_graph = state.graph.clone();
    for step in 0..cfg.budget {
        stats.proposals += 1;
        let temp = temperature(stats.initial_temperature, step, cfg.budget);
        match propose(rng, &state) {
            None => stats.skipped += 1,
            Some(mv) if !mv.keeps_floor(&state, floor) => stats.rejected_constraint += 1,
            Some(mv) => {
                let delta = mv.triangle_delta(&state);
                if accept(rng, delta, temp) {
                    mv.apply(&mut state);
                    stats.accepted += 1;
                    sentinel(&state)?;
                    if state.triangles < best {
                        best = state.triangles;
                        best_graph = state.graph.clone();
                    }
                } else {
                    stats.rejected_metropolis += 1;
                }
            }
        }
        if (step + 1) % FEASIBILITY_INTERVAL == 0 {
            stats.feasibility_checks += 1;
            let actual = state.graph.min_degree();
            if actual < floor || state.min_degree() != actual {
                return Err(Error::BoundViolation(format!("degree floor {floor} broken: min degree {actual}")));
            }
        }
        if checkpoints.get(next_checkpoint) == Some(&step) {
            next_checkpoint += 1;
            recount(&state)?;
            stats.recount_checks += 1;
        }
    }
    recount(&state)?;
    stats.recount_checks += 1;
    if state.graph.min_degree() < floor {
        return Err(Error::BoundViolation(format!("final state breaks the degree floor {floor}")));
    }
    stats.best = best as i64;
    Ok((stats, best_graph))
}

fn recount(state: &State) -> Result<()> {
    let full = state.graph.triangle_count();
    if full != state.triangles {
        return Err(Error::BoundViolation(format!(
            "incremental triangle count {} differs from recount {full}",
            state.triangles
        )));
    }
    Ok(())
}

/// Energy for the surplus probe: a larger minimum degree dominates, then fewer
/// vertices at the minimum.
fn surplus_energy(state: &State) -> i64 {
    let n = state.graph.n() as i64;
    -(state.min_degree() as i64) * (3 * n + 1) + state.at_min() as i64
}

/// Random maximal `K_3(2)`-free graph: edges of `K_3(n)` are inserted in a
/// seeded order whenever they create no `K_3(2)`.
pub fn random_k32_free(n: usize, seed: u64) -> Result<TripartiteGraph> {
    let mut g = TripartiteGraph::empty(n)?;
    let mut edges: Vec<(Vertex, Vertex)> = TripartiteGraph::complete(n)?.edges().collect();
    edges.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    for (x, y) in edges {
        g.set_edge(x, y)?;
        if k32_through_edge(&g, x, y)? {
            g.remove_edge(x, y)?;
        }
    }
    Ok(g)
}

/// The surplus probe's construction start: the octahedron-free family at
/// `(n, t)`, or two glued copies at `(n/2, t)`.
pub fn surplus_start(n: usize, t: usize) -> Result<TripartiteGraph> {
    if let Ok(p) = OctahedronFreeParams::new(n, t) {
        return Ok(octahedron_free(p).graph);
    }
    if n.is_multiple_of(2) {
        if let Ok(p) = OctahedronFreeParams::new(n / 2, t) {
            let half = octahedron_free(p).graph;
            return glue(&half, &half);
        }
    }
    Err(Error::InvalidParameter(format!("no K_3(2)-free construction with n = {n}, t = {t}")))
}

/// Seeded annealing maximising `δ(G) - n` over `K_3(2)`-free graphs.
///
/// Insertions are checked locally with [`k32_through_edge`]; the full detector
/// runs every [`FULL_FREENESS_INTERVAL`] accepted moves and on the result.
pub fn probe_k32_free_surplus(cfg: &SearchConfig) -> Result<SearchOutcome> {
    cfg.validate()?;
    if cfg.objective != Objective::MaximizeSurplusK32Free {
        return Err(Error::InvalidParameter("configuration objective is not maximize-surplus-k32-free".into()));
    }
    let started = Instant::now();
    let n = cfg.n;
    let shared = match &cfg.initializer {
        Initializer::Construction => Some(surplus_start(n, cfg.t)?),
        Initializer::File(path) => Some(load_file(path, n)?),
        Initializer::Random => None,
    };
    if let Some(g) = &shared {
        if n >= 2 && find_k3s(g, 2)?.is_some() {
            return Err(Error::Precondition("initial graph contains a K_3(2)".into()));
        }
    }
    let results: Vec<Result<(RestartStats, TripartiteGraph)>> = (0..cfg.restarts)
        .into_par_iter()
        .map(|restart| {
            let mut rng = restart_rng(cfg.seed, restart);
            let initial = match &shared {
                Some(g) => g.clone(),
                None => random_k32_free(n, rng.gen())?,
            };
            surplus_restart(cfg, restart, initial, &mut rng)
        })
        .collect();
    let mut outcome = finish(cfg, results, started, None)?;
    outcome.report.k32_free = Some(n < 2 || find_k3s(&outcome.best_graph, 2)?.is_none());
    Ok(outcome)
}

fn surplus_restart(
    cfg: &SearchConfig,
    restart: usize,
    initial: TripartiteGraph,
    rng: &mut ChaCha8Rng,
) -> Result<(RestartStats, TripartiteGraph)> {
    let n = cfg.n;
    let mut state = State::new(initial);
    let surplus = |s: &State| s.min_degree() as i64 - n as i64;
    let mut stats = RestartStats { restart, initial_value: surplus(&state), ..Default::default() };
    stats.initial_temperature = calibrate(rng, &mut state, &mut |mv, s| {
        let before = surplus_energy(s);
        mv.apply(s);
        let after = surplus_energy(s);
        mv.revert(s);
        Some(after - before)
    });
    let full_check = |g: &TripartiteGraph| -> Result<()> {
        if n >= 2 && find_k3s(g, 2)?.is_some() {
            return Err(Error::BoundViolation("incremental freeness check missed a K_3(2)".into()));
        }
        Ok(())
    };

    let mut best = surplus(&state);
    let mut best_graph = state.graph.clone();
    let mut energy = surplus_energy(&state);
    for step in 0..cfg.budget {
        stats.proposals += 1;
        let temp = temperature(stats.initial_temperature, step, cfg.budget);
        let Some(mv) = propose(rng, &state) else {
            stats.skipped += 1;
            continue;
        };
        mv.apply(&mut state);
        if let Some((x, y)) = mv.added_edge() {
            if k32_through_edge(&state.graph, x, y)? {
                mv.revert(&mut state);
                stats.rejected_constraint += 1;
                continue;
            }
        }
        let next = surplus_energy(&state);
        if accept(rng, next - energy, temp) {
            energy = next;
            stats.accepted += 1;
            if stats.accepted.is_multiple_of(FULL_FREENESS_INTERVAL) {
                full_check(&state.graph)?;
                stats.full_freeness_checks += 1;
            }
            if surplus(&state) > best {
                best = surplus(&state);
                best_graph = state.graph.clone();
            }
        } else {
            mv.revert(&mut state);
            stats.rejected_metropolis += 1;
        }
    }
    full_check(&state.graph)?;
    stats.full_freeness_checks += 1;
    recount(&state)?;
    stats.best = best;
    Ok((stats, best_graph))
}

fn finish(
    cfg: &SearchConfig,
    results: Vec<Result<(RestartStats, TripartiteGraph)>>,
    started: Instant,
    bound: Option<u64>,
) -> Result<SearchOutcome> {
    let mut restarts = Vec::with_capacity(results.len());
    let mut graphs = Vec::with_capacity(results.len());
    for r in results {
        let (stats, graph) = r?;
        restarts.push(stats);
        graphs.push(graph);
    }
    let better = |a: i64, b: i64| match cfg.objective {
        Objective::MinimizeTriangles => a < b,
        Objective::MaximizeSurplusK32Free => a > b,
    };
    let mut best_restart = 0;
    for (i, r) in restarts.iter().enumerate() {
        if better(r.best, restarts[best_restart].best) {
            best_restart = i;
        }
    }
    let best = restarts[best_restart].best;
    let report = SearchReport {
        config: cfg.clone(),
        best,
        best_restart,
        bound_floor: bound,
        attains_floor: bound.map(|b| best as u64 == b),
        k32_free: None,
        restarts,
        wall_time: started.elapsed(),
    };
    Ok(SearchOutcome { report, best_graph: graphs.swap_remove(best_restart) })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(n: usize, t: usize, initializer: Initializer, budget: u64, restarts: usize) -> SearchConfig {
        SearchConfig { n, t, objective: Objective::MinimizeTriangles, budget, restarts, seed: 7, initializer }
    }

    #[test]
    fn floor_values() {
        assert_eq!(triangle_floor(4, 2), 16);
        assert_eq!(triangle_floor(6, 3), 54);
        assert_eq!(triangle_floor(4, 1), 4);
        assert_eq!(triangle_floor(10, 1), 4);
        assert_eq!(triangle_floor(20, 2), 8);
        assert_eq!(triangle_floor(5, 2), 13); // 25 * 1 / 2 rounded up
    }

    #[test]
    fn construction_start_sits_on_the_floor() {
        let out = probe_min_triangles(&cfg(4, 2, Initializer::Construction, 2000, 2)).unwrap();
        assert_eq!(out.report.best, 16);
        assert_eq!(out.report.attains_floor, Some(true));
        assert_eq!(out.best_graph.triangle_count(), 16);
    }

    #[test]
    fn construction_needs_even_n() {
        assert!(probe_min_triangles(&cfg(5, 3, Initializer::Construction, 10, 1)).is_err());
        assert!(probe_min_triangles(&cfg(5, 0, Initializer::Random, 10, 1)).is_err());
    }

    #[test]
    fn random_start_is_deterministic() {
        let c = cfg(5, 2, Initializer::Random, 3000, 3);
        let a = probe_min_triangles(&c).unwrap();
        let b = probe_min_triangles(&c).unwrap();
        assert_eq!(a.report.to_json(), b.report.to_json());
        assert!(a.report.best as u64 >= triangle_floor(5, 2));
    }

    #[test]
    fn random_k32_free_is_free_and_maximal() {
        let g = random_k32_free(4, 3).unwrap();
        assert!(find_k3s(&g, 2).unwrap().is_none());
        for (x, y) in TripartiteGraph::complete(4).unwrap().edges() {
            if !g.has_edge(x, y) {
                let mut h = g.clone();
                h.set_edge(x, y).unwrap();
                assert!(find_k3s(&h, 2).unwrap().is_some());
            }
        }
    }

    #[test]
    fn surplus_from_construction_keeps_freeness() {
        let c = SearchConfig {
            n: 13,
            t: 2,
            objective: Objective::MaximizeSurplusK32Free,
            budget: 2000,
            restarts: 2,
            seed: 1,
            initializer: Initializer::Construction,
        };
        let out = probe_k32_free_surplus(&c).unwrap();
        assert!(out.report.best >= 2);
        assert_eq!(out.report.k32_free, Some(true));
    }
}
