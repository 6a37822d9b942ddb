//! The twelve acceptance criteria, each a self-contained check with its
//! tolerance and runtime budget fixed here.
//!
//! Every criterion is deterministic given the base seed. Elapsed time is kept
//! out of the JSON rendering so that repeated runs produce identical bytes.

use std::time::{Duration, Instant};

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use trilab::constructions::{
    c6_blowup, extremal_regular, glue, octahedron_free, projective_plane_bipartite, random_graph, ExtremalRegularParams,
    OctahedronFreeParams, PlaneOrder,
};
use trilab::detection::{find_k3s, find_kss, kst_bound};
use trilab::finder::{find_k3s_with_fallback, FinderParams, WitnessSource};
use trilab::search::{probe_min_triangles, triangle_floor, Initializer, Objective, SearchConfig};
use trilab::structure::{extract_c6, refine_ab};
use trilab::{BipartiteGraph, Error, Part, Rational, Vertex};
use trilab_oracle as oracle;

pub const DEFAULT_SEED: u64 = 20240611;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CriterionResult {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    /// Runtime budget in seconds, if the criterion has one.
    pub budget_secs: Option<u64>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl CriterionResult {
    /// `PASS  3 name (1.2s): detail`
    pub fn line(&self) -> String {
        format!(
            "{} {:>2} {} ({:.2}s): {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.elapsed.as_secs_f64(),
            self.detail
        )
    }
}

/// Outcome of the check itself, before the runtime budget is applied.
struct Check {
    passed: bool,
    detail: String,
}

fn check(passed: bool, detail: impl Into<String>) -> Check {
    Check { passed, detail: detail.into() }
}

fn timed(id: u8, name: &'static str, budget_secs: Option<u64>, body: impl FnOnce() -> Check) -> CriterionResult {
    let start = Instant::now();
    let Check { mut passed, mut detail } = body();
    let elapsed = start.elapsed();
    if let Some(b) = budget_secs {
        if elapsed > Duration::from_secs(b) {
            passed = false;
            detail.push_str(&format!("; exceeded {b}s budget"));
        }
    }
    CriterionResult { id, name, passed, detail, budget_secs, elapsed }
}

/// Independent stream of instance seeds for one criterion.
fn seeds(base: u64, criterion: u8) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(base);
    rng.set_stream(criterion as u64);
    rng
}

fn min_triangle_config(n: usize, t: usize, initializer: Initializer, budget: u64, restarts: usize, seed: u64) -> SearchConfig {
    SearchConfig { n, t, objective: Objective::MinimizeTriangles, budget, restarts, seed, initializer }
}

pub fn criterion_1(seed: u64) -> CriterionResult {
    timed(1, "exact value at n=4, t=2", Some(10), || {
        let g = extremal_regular(ExtremalRegularParams::new(4, 2).expect("valid")).graph;
        let t = g.triangle_count();
        let regular = g.vertices().all(|v| g.degree(v) == 6);
        let cfg = min_triangle_config(4, 2, Initializer::Random, 100_000, 10, seed);
        match probe_min_triangles(&cfg) {
            Ok(out) => check(
                t == 16 && regular && out.report.best >= 16,
                format!("T = {t}, 6-regular = {regular}, search best = {} over 10 restarts", out.report.best),
            ),
            Err(e) => check(false, format!("search failed: {e}")),
        }
    })
}

pub fn criterion_2() -> CriterionResult {
    timed(2, "triangle formula sweep", Some(10), || {
        let mut cases = 0;
        for n in [4usize, 6, 8, 10, 12] {
            for t in n.div_ceil(2)..=n {
                let params = ExtremalRegularParams::new(n, t).expect("valid");
                let g = extremal_regular(params).graph;
                let regular = g.vertices().all(|v| g.degree(v) == n + t);
                let expected = (n * n * (3 * t - n) / 2) as u64;
                let got = g.triangle_count();
                if !regular || got != expected {
                    return check(false, format!("n={n} t={t}: regular={regular}, T={got}, expected {expected}"));
                }
                cases += 1;
            }
        }
        check(true, format!("{cases} (n, t) pairs exact"))
    })
}

pub fn criterion_3() -> CriterionResult {
    timed(3, "octahedron-free family certificates", Some(30), || {
        let mut parts = Vec::new();
        for (n, t) in [(13usize, 2usize), (31, 4), (36, 5)] {
            let g = octahedron_free(OctahedronFreeParams::new(n, t).expect("valid")).graph;
            let delta = g.min_degree();
            let free = find_k3s(&g, 2).expect("s <= n").is_none();
            if delta != n + t || !free {
                return check(false, format!("(n={n}, t={t}): δ={delta}, K_3(2)-free={free}"));
            }
            parts.push(format!("({n},{t}): δ={delta} free"));
        }
        check(true, parts.join(", "))
    })
}

pub fn criterion_4() -> CriterionResult {
    timed(4, "gluing identities", Some(30), || {
        let half = octahedron_free(OctahedronFreeParams::new(13, 2).expect("valid")).graph;
        let g = match glue(&half, &half) {
            Ok(g) => g,
            Err(e) => return check(false, e.to_string()),
        };
        let (n, delta) = (g.n(), g.min_degree());
        let (t, t_half) = (g.triangle_count(), half.triangle_count());
        let free = find_k3s(&g, 2).expect("s <= n").is_none();
        check(
            n == 26 && delta == 28 && t == 2 * t_half && free,
            format!("n={n}, δ={delta}, T={t} = 2·{t_half}: {}, K_3(2)-free={free}", t == 2 * t_half),
        )
    })
}

pub fn criterion_5() -> CriterionResult {
    timed(5, "projective-plane blocks", Some(20), || {
        for q in 2..=5usize {
            let b = match PlaneOrder::new(q).and_then(projective_plane_bipartite) {
                Ok(b) => b,
                Err(e) => return check(false, e.to_string()),
            };
            let size = q * q + q + 1;
            let regular = (0..size).all(|u| b.left_degree(u) == q + 1 && b.right_degree(u) == q + 1);
            let edges = b.edge_count();
            let free = !oracle::contains_k22(&b);
            if !regular || edges != size * (q + 1) || !free {
                return check(false, format!("q={q}: regular={regular}, edges={edges}, K_2,2-free={free}"));
            }
        }
        check(true, "q = 2..5 regular, edge counts exact, no K_{2,2} by exhaustive pair check")
    })
}

pub fn criterion_6(seed: u64) -> CriterionResult {
    timed(6, "K_3(2) detector vs brute force", Some(60), || {
        let mut rng = seeds(seed, 6);
        let (mut disagreements, mut positives) = (0, 0);
        for _ in 0..200 {
            let n = rng.gen_range(3..=7);
            let p = rng.gen_range(0.4..0.95);
            let g = oracle::random_tripartite(n, p, rng.gen());
            let fast = find_k3s(&g, 2).expect("s <= n");
            let slow = oracle::contains_k32(&g);
            if fast.is_some() != slow || fast.is_some_and(|w| !oracle::is_k3s(&g, &w.parts)) {
                disagreements += 1;
            }
            positives += slow as usize;
        }
        check(disagreements == 0, format!("200 graphs, {positives} contain K_3(2), {disagreements} disagreements"))
    })
}

pub fn criterion_7(seed: u64) -> CriterionResult {
    timed(7, "KST consistency", Some(10), || {
        let mut rng = seeds(seed, 7);
        let (mut above, mut violations) = (0, 0);
        for _ in 0..200 {
            let m = rng.gen_range(1..=30);
            let n = rng.gen_range(1..=30);
            let p = rng.gen_range(0.05..0.95);
            let b = oracle::random_bipartite(m, n, p, rng.gen());
            let bound: f64 = kst_bound(m, n, 2).expect("s = 2");
            if b.edge_count() as f64 > bound {
                above += 1;
                match find_kss(&b, 2) {
                    Some(w) if oracle::is_kss(&b, &w.left, &w.right) => {}
                    _ => violations += 1,
                }
            }
        }
        check(violations == 0, format!("200 graphs, {above} above the bound, {violations} violations"))
    })
}

pub fn criterion_8(seed: u64) -> CriterionResult {
    timed(8, "constructive finder pipeline at n=200", Some(120), || {
        let n = 200;
        let floor = n + 2 * (n as f64).powf(5.0 / 6.0).ceil() as usize;
        let mut rng = seeds(seed, 8);
        let (mut verified, mut constructive) = (0, 0);
        for run in 0..20 {
            let g = match random_graph(n, floor, rng.gen()) {
                Ok(g) => g,
                Err(e) => return check(false, format!("run {run}: {e}")),
            };
            match find_k3s_with_fallback(&g, FinderParams::new(2)) {
                Ok(report) => {
                    if report.witness.as_ref().is_some_and(|w| w.verify(&g)) {
                        verified += 1;
                    }
                    constructive += (report.source == WitnessSource::Constructive) as usize;
                }
                Err(e) => return check(false, format!("run {run}: {e}")),
            }
        }
        check(
            verified == 20,
            format!("δ >= {floor}: {verified}/20 verified witnesses, constructive path alone {constructive}/20"),
        )
    })
}

pub fn criterion_9() -> CriterionResult {
    timed(9, "C6 blow-up recovery", Some(10), || {
        let mut cases = 0;
        for m in [5usize, 10, 20] {
            for u in [0usize, m / 2] {
                let c = match c6_blowup(m, u) {
                    Ok(c) => c,
                    Err(e) => return check(false, e.to_string()),
                };
                let out = match extract_c6(&c.graph, Rational::from_integer(0)) {
                    Ok(o) => o,
                    Err(e) => return check(false, e.to_string()),
                };
                let Some(p) = out.partition() else {
                    return check(false, format!("m={m} u={u}: no partition"));
                };
                for i in 1..=6 {
                    let range = c.meta.get_range(&format!("W{i}")).expect("planted range");
                    let part = Part::from_index((i - 1) % 3);
                    let planted: Vec<Vertex> = range.map(|k| Vertex::new(part, k)).collect();
                    let diff = planted.iter().filter(|v| !p.w[i - 1].contains(v)).count()
                        + p.w[i - 1].iter().filter(|v| !planted.contains(v)).count();
                    if diff != 0 {
                        return check(false, format!("m={m} u={u}: W{i} symmetric difference {diff}"));
                    }
                }
                cases += 1;
            }
        }
        check(true, format!("{cases} planted instances, symmetric difference 0 on every block"))
    })
}

pub fn criterion_10(seed: u64) -> CriterionResult {
    timed(10, "A/B refinement postconditions", Some(10), || {
        let mut rng = seeds(seed, 10);
        let mut violations = 0;
        for _ in 0..200 {
            let a = rng.gen_range(1..=40);
            let b = rng.gen_range(1..=40);
            let lambda = Rational::new(rng.gen_range(0..=10), 100);
            // Each left vertex misses at most floor(lambda |B|) right vertices.
            let max_miss = (lambda * Rational::from_integer(b as i64)).floor().to_integer() as usize;
            let mut g = BipartiteGraph::new(a, b);
            for u in 0..a {
                let miss = rng.gen_range(0..=max_miss);
                let skipped: Vec<usize> = sample(&mut rng, b, miss).into_vec();
                for v in (0..b).filter(|v| !skipped.contains(v)) {
                    g.add_edge(u, v);
                }
            }
            let kept = match refine_ab(&g, lambda) {
                Ok(k) => k,
                Err(_) => {
                    violations += 1;
                    continue;
                }
            };
            let one = Rational::from_integer(1);
            let size = Rational::from_integer(kept.len() as i64);
            let big_enough = size >= (one - Rational::from_integer(5) * lambda) * Rational::from_integer(b as i64);
            let dense = (0..a).all(|u| {
                let d = kept.iter().filter(|&&v| g.has_edge(u, v)).count() as i64;
                Rational::from_integer(d) >= (one - Rational::from_integer(2) * lambda) * size
            });
            if !big_enough || !dense {
                violations += 1;
            }
        }
        check(violations == 0, format!("200 instances, {violations} violations"))
    })
}

pub fn criterion_11(seed: u64) -> CriterionResult {
    timed(11, "global identities", Some(10), || {
        let mut rng = seeds(seed, 11);
        for k in 0..100 {
            let n = rng.gen_range(1..=12);
            let p = rng.gen_range(0.0..1.0);
            let g = oracle::random_tripartite(n, p, rng.gen());
            let t = g.triangle_count();
            let sum: u64 = g.edges().map(|(x, y)| oracle::triangles_through_edge(&g, x, y) as u64).sum();
            let c = g.complement();
            let identity = g.vertices().all(|v| g.degree(v) + c.degree(v) == 2 * n);
            if sum != 3 * t || t != oracle::triangle_count(&g) || !identity || c.complement() != g {
                return check(false, format!("graph {k}: Σ T(xy) = {sum}, T = {t}, degree identity {identity}"));
            }
        }
        check(true, "100 graphs: Σ T(xy) = 3T and d_G + d_complement = 2n exactly")
    })
}

/// Search runs whose every accepted state is checked against the floor.
pub fn sentinel_runs(seed: u64) -> Vec<SearchConfig> {
    vec![
        min_triangle_config(4, 2, Initializer::Random, 100_000, 10, seed),
        min_triangle_config(4, 2, Initializer::Construction, 20_000, 4, seed),
        min_triangle_config(6, 3, Initializer::Construction, 50_000, 4, seed),
        min_triangle_config(4, 1, Initializer::Random, 100_000, 20, seed),
        min_triangle_config(5, 2, Initializer::Random, 50_000, 8, seed),
        min_triangle_config(7, 4, Initializer::Random, 50_000, 8, seed),
        min_triangle_config(8, 2, Initializer::Random, 50_000, 8, seed),
    ]
}

pub fn criterion_12(seed: u64) -> CriterionResult {
    timed(12, "bound sentinel never fires", None, || {
        let mut parts = Vec::new();
        for cfg in sentinel_runs(seed) {
            match probe_min_triangles(&cfg) {
                Ok(out) => {
                    let floor = triangle_floor(cfg.n, cfg.t);
                    if (out.report.best as u64) < floor {
                        return check(false, format!("(n={}, t={}): best {} below {floor}", cfg.n, cfg.t, out.report.best));
                    }
                    parts.push(format!("({},{})→{}≥{floor}", cfg.n, cfg.t, out.report.best));
                }
                Err(Error::BoundViolation(msg)) => return check(false, format!("(n={}, t={}): {msg}", cfg.n, cfg.t)),
                Err(e) => return check(false, format!("(n={}, t={}): {e}", cfg.n, cfg.t)),
            }
        }
        check(true, parts.join(", "))
    })
}

pub fn run_all(seed: u64) -> Vec<CriterionResult> {
    vec![
        criterion_1(seed),
        criterion_2(),
        criterion_3(),
        criterion_4(),
        criterion_5(),
        criterion_6(seed),
        criterion_7(seed),
        criterion_8(seed),
        criterion_9(),
        criterion_10(seed),
        criterion_11(seed),
        criterion_12(seed),
    ]
}

pub fn render_table(results: &[CriterionResult]) -> String {
    let mut out = format!("{:>2}  {:<4}  {:<40}  {:>8}  {}\n", "id", "", "criterion", "time", "detail");
    for r in results {
        out.push_str(&format!(
            "{:>2}  {:<4}  {:<40}  {:>7.2}s  {}\n",
            r.id,
            if r.passed { "PASS" } else { "FAIL" },
            r.name,
            r.elapsed.as_secs_f64(),
            r.detail
        ));
    }
    let passed = results.iter().filter(|r| r.passed).count();
    out.push_str(&format!("{passed}/{} criteria passed\n", results.len()));
    out
}

#[derive(Serialize)]
struct JsonResults<'a> {
    seed: u64,
    passed: usize,
    total: usize,
    criteria: &'a [CriterionResult],
}

pub fn render_json(seed: u64, results: &[CriterionResult]) -> String {
    let doc = JsonResults { seed, passed: results.iter().filter(|r| r.passed).count(), total: results.len(), criteria: results };
    serde_json::to_string_pretty(&doc).expect("results serialize")
}
