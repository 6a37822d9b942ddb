use proptest::prelude::*;
use trilab::constructions::c6_blowup;
use trilab::structure::{extract_c6, refine_ab, validate_c6_close, C6CloseInstance, C6Outcome};
use trilab::{BipartiteGraph, Part, Rational, TripartiteGraph, Vertex};
use trilab_oracle as oracle;

fn block(part: Part, lo: usize, hi: usize) -> Vec<Vertex> {
    (lo..hi).map(|i| Vertex::new(part, i)).collect()
}

fn w_part(i: usize) -> Part {
    Part::from_index((i - 1) % 3)
}

#[test]
fn planted_blowups_are_recovered() {
    for m in [5usize, 10, 20] {
        for u in [0usize, 3] {
            let c = c6_blowup(m, u).unwrap();
            let out = extract_c6(&c.graph, Rational::from_integer(0)).unwrap();
            let p = out.partition().expect("partition");
            for i in 1..=6 {
                let planted = block(w_part(i), c.meta.get_range(&format!("W{i}")).unwrap().start, c.meta.get_range(&format!("W{i}")).unwrap().end);
                assert_eq!(p.w[i - 1], planted, "m={m} u={u} W{i}");
            }
            for j in 1..=3 {
                let r = c.meta.get_range(&format!("U{j}")).unwrap_or(0..0);
                assert_eq!(p.u[j - 1], block(Part::from_index(j - 1), r.start, r.end));
            }
            assert!(p.diagnostics.all_passed(), "{:?}", p.diagnostics);
            assert_eq!(p.min_out_degree, m);
        }
    }
}

#[test]
fn complete_graph_takes_the_trivial_branch() {
    let g = TripartiteGraph::complete(6).unwrap();
    match extract_c6(&g, Rational::new(1, 4)).unwrap() {
        C6Outcome::Partition(p) => {
            assert!(p.w.iter().all(Vec::is_empty));
            assert!(!p.diagnostics.block_sizes.passed);
            assert_eq!(p.diagnostics.block_sizes.violator.as_deref(), Some("W1"));
        }
        other => panic!("unexpected {other:?}"),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn extraction_always_partitions(n in 1usize..9, p in 0.2f64..1.0, seed: u64) {
        let g = oracle::random_tripartite(n, p, seed);
        if let C6Outcome::Partition(part) = extract_c6(&g, 0.1f64).unwrap() {
            let mut seen = std::collections::BTreeSet::new();
            for (i, set) in part.w.iter().enumerate() {
                for v in set {
                    prop_assert_eq!(v.part, w_part(i + 1));
                    prop_assert!(seen.insert(*v));
                }
            }
            for (j, set) in part.u.iter().enumerate() {
                for v in set {
                    prop_assert_eq!(v.part.index(), j);
                    prop_assert!(seen.insert(*v));
                }
            }
            prop_assert_eq!(seen.len(), 3 * n);
            prop_assert!(part.diagnostics.part_membership.passed);
        }
    }

    #[test]
    fn refinement_postconditions(a in 1usize..25, b in 1usize..25, lam in 0i64..=10, seed: u64) {
        let lambda = Rational::new(lam, 100);
        // Each left vertex misses at most floor(lambda |B|) right vertices.
        let miss = (lam as usize * b) / 100;
        let mut g = BipartiteGraph::new(a, b);
        let noise = oracle::random_bipartite(a, b, 0.5, seed);
        for u in 0..a {
            let mut skipped = 0;
            for v in 0..b {
                if skipped < miss && !noise.has_edge(u, v) {
                    skipped += 1;
                } else {
                    g.add_edge(u, v);
                }
            }
        }
        let kept = refine_ab(&g, lambda).unwrap();
        let kept_r = Rational::from_integer(kept.len() as i64);
        let one = Rational::from_integer(1);
        prop_assert!(kept_r >= (one - Rational::from_integer(5) * lambda) * Rational::from_integer(b as i64));
        for u in 0..a {
            let d = kept.iter().filter(|&&v| g.has_edge(u, v)).count() as i64;
            prop_assert!(Rational::from_integer(d) >= (one - Rational::from_integer(2) * lambda) * kept_r);
        }
        for &v in &kept {
            prop_assert!(5 * g.right_degree(v) >= 4 * a);
        }
    }
}

#[test]
fn refinement_examples() {
    let mut g = BipartiteGraph::new(20, 20);
    for a in 0..20 {
        for b in 0..20 {
            if a != b {
                g.add_edge(a, b);
            }
        }
    }
    assert_eq!(refine_ab(&g, Rational::new(1, 20)).unwrap(), (0..20).collect::<Vec<_>>());
}

/// Two interleaved blow-ups with every adjacency the two-blow-up lemma asks
/// for: part size `4m`, `W_j, W_{j+3}, X_j, X_{j+3}` at `[0,m)`, `[m,2m)`,
/// `[2m,3m)`, `[3m,4m)` of `V_j`.
fn double_blowup(m: usize) -> (TripartiteGraph, [Vec<Vertex>; 6], [Vec<Vertex>; 6]) {
    let n = 4 * m;
    let w: [Vec<Vertex>; 6] = std::array::from_fn(|k| {
        let lo = if k < 3 { 0 } else { m };
        block(w_part(k + 1), lo, lo + m)
    });
    let x: [Vec<Vertex>; 6] = std::array::from_fn(|k| {
        let lo = if k < 3 { 2 * m } else { 3 * m };
        block(w_part(k + 1), lo, lo + m)
    });
    let cyc = |i: usize, d: isize| ((i as isize - 1 + d).rem_euclid(6)) as usize;
    let mut g = TripartiteGraph::empty(n).unwrap();
    let mut join = |a: &[Vertex], b: &[Vertex]| {
        for &p in a {
            for &q in b {
                g.set_edge(p, q).unwrap();
            }
        }
    };
    for i in 1..=6 {
        join(&w[i - 1], &w[cyc(i, 1)]);
        join(&w[i - 1], &x[cyc(i, -1)]);
        join(&w[i - 1], &x[cyc(i, -4)]);
        join(&x[i - 1], &x[cyc(i, 1)]);
    }
    (g, w, x)
}

#[test]
fn double_blowup_meets_the_structural_conditions_only() {
    let m = 4;
    let (g, w, x) = double_blowup(m);
    assert_eq!(g.degree_profile().min_out_degree, m);
    let inst = C6CloseInstance { w, x, c: Rational::from_integer(2), d: m };
    let report = validate_c6_close(&g, &inst).unwrap();
    let passed = |name: &str| report.conditions.iter().find(|c| c.name == name).unwrap().passed;
    for name in ["partial-degree", "w-size", "x-size", "w-degree", "x-degree"] {
        assert!(passed(name), "{name}: {:?}", report.conditions);
    }
    // c^6 <= n and the degree conditions need part sizes far beyond this one.
    assert!(!passed("c-range") && !passed("min-degree") && !passed("degree-sum"));
    assert!(!report.all_passed && !report.alarm && report.witness.is_none());
    assert_eq!(report, validate_c6_close(&g, &inst).unwrap());
}

#[test]
fn single_blowup_with_empty_x() {
    let m = 10;
    let c = c6_blowup(m, 0).unwrap();
    let w: [Vec<Vertex>; 6] = std::array::from_fn(|k| {
        let r = c.meta.get_range(&format!("W{}", k + 1)).unwrap();
        block(w_part(k + 1), r.start, r.end)
    });
    let inst = C6CloseInstance { w: w.clone(), x: Default::default(), c: Rational::from_integer(4), d: 0 };
    let report = validate_c6_close(&c.graph, &inst).unwrap();
    let get = |name: &str| report.conditions.iter().find(|c| c.name == name).unwrap().clone();
    assert!(get("w-size").passed && get("x-size").passed && get("w-degree").passed);
    assert_eq!(get("x-degree").worst_slack, None);

    let mut shrunk = inst.clone();
    shrunk.w[2].truncate(4);
    let report = validate_c6_close(&c.graph, &shrunk).unwrap();
    let size = report.conditions.iter().find(|c| c.name == "w-size").unwrap();
    assert!(!size.passed);
    assert_eq!(size.violator.as_deref(), Some("W3"));

    let mut bad = inst.clone();
    bad.w[0].push(Vertex::new(Part::Two, 0));
    assert!(validate_c6_close(&c.graph, &bad).is_err());
    let mut dup = inst;
    dup.x[0].push(w[0][0]);
    assert!(validate_c6_close(&c.graph, &dup).is_err());
    let low_c = C6CloseInstance { w, x: Default::default(), c: Rational::from_integer(1), d: 0 };
    assert!(validate_c6_close(&c.graph, &low_c).is_err());
}
