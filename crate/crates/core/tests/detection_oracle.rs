use proptest::prelude::*;
use trilab::constructions::{c6_blowup, extremal_regular, octahedron_free, ExtremalRegularParams, OctahedronFreeParams};
use trilab::detection::{
    d_tilde, extract_k32_via_dtilde, find_k3s, find_kss, k32_through_edge, kst_bound, DTildeStatus,
};
use trilab::{BipartiteGraph, Direction, Part, Rational, TripartiteGraph, Vertex};
use trilab_oracle as oracle;

#[test]
fn k32_detection_agrees_with_pair_enumeration() {
    let mut positives = 0;
    for seed in 0..200u64 {
        let n = 3 + (seed % 5) as usize;
        let p = 0.45 + 0.5 * ((seed * 37 % 100) as f64 / 100.0);
        let g = oracle::random_tripartite(n, p, seed);
        let fast = find_k3s(&g, 2).unwrap();
        assert_eq!(fast.is_some(), oracle::contains_k32(&g), "seed {seed}");
        if let Some(w) = fast {
            assert!(w.verify(&g));
            assert!(oracle::is_k3s(&g, &w.parts));
            positives += 1;
        }
    }
    assert!(positives > 20 && positives < 180, "degenerate sample: {positives} positives");
}

#[test]
fn k3s_examples() {
    let k2 = TripartiteGraph::complete(2).unwrap();
    let w = find_k3s(&k2, 2).unwrap().unwrap();
    assert_eq!(w.parts, [vec![0, 1], vec![0, 1], vec![0, 1]]);
    assert!(find_k3s(&k2, 3).is_err());
    assert!(find_k3s(&k2, 0).is_err());
    let k4 = TripartiteGraph::complete(4).unwrap();
    assert!(find_k3s(&k4, 4).unwrap().unwrap().verify(&k4));
    let c = octahedron_free(OctahedronFreeParams::new(13, 2).unwrap());
    assert!(find_k3s(&c.graph, 2).unwrap().is_none());
    // s = 1 is a triangle.
    assert!(find_k3s(&c6_blowup(3, 0).unwrap().graph, 1).unwrap().is_none());
}

#[test]
fn kst_bound_forces_kss() {
    let mut forced = 0;
    for seed in 0..200u64 {
        let m = 2 + (seed * 7 % 29) as usize;
        let n = 2 + (seed * 13 % 29) as usize;
        let p = 0.1 + 0.8 * ((seed * 53 % 100) as f64 / 100.0);
        let b = oracle::random_bipartite(m, n, p, seed);
        let bound: f64 = kst_bound(m, n, 2).unwrap();
        if b.edge_count() as f64 > bound {
            forced += 1;
            let w = find_kss(&b, 2).expect("edge count above the bound");
            assert!(w.verify(&b) && oracle::is_kss(&b, &w.left, &w.right));
        }
    }
    assert!(forced > 20);
    let exact: f64 = kst_bound(1, 1, 2).unwrap();
    assert_eq!(exact, 2.0);
    assert!(kst_bound::<f64>(3, 3, 1).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn kss_search_matches_subset_enumeration(m in 1usize..7, n in 1usize..7, p in 0.2f64..1.0, seed: u64, s in 1usize..4) {
        let b = oracle::random_bipartite(m, n, p, seed);
        let found = find_kss(&b, s);
        prop_assert_eq!(found.is_some(), oracle::contains_kss(&b, s));
        if let Some(w) = found {
            prop_assert!(oracle::is_kss(&b, &w.left, &w.right));
        }
    }

    #[test]
    fn edge_local_check_matches_completion_search(n in 2usize..6, p in 0.4f64..1.0, seed: u64) {
        let g = oracle::random_tripartite(n, p, seed);
        for (x, y) in g.edges() {
            prop_assert_eq!(k32_through_edge(&g, x, y).unwrap(), oracle::k32_through_edge(&g, x, y));
        }
    }

    #[test]
    fn dtilde_is_monotone_in_alpha(n in 2usize..8, p in 0.3f64..1.0, seed: u64, a in 1i64..20, b in 1i64..20) {
        let g = oracle::random_tripartite(n, p, seed);
        let (lo, hi) = (Rational::new(a.min(b), 20), Rational::new(a.max(b), 20));
        for v in g.vertices() {
            for dir in [Direction::Out, Direction::In] {
                let wide = d_tilde(&g, v, dir, lo).unwrap().members;
                let narrow = d_tilde(&g, v, dir, hi).unwrap().members;
                prop_assert!(narrow.iter().all(|w| wide.contains(w)));
                let expected = oracle::d_tilde(&g, v, dir.target(v.part), a.min(b) as usize, 20);
                prop_assert_eq!(&wide, &expected);
            }
        }
    }
}

#[test]
fn dtilde_examples() {
    let g = TripartiteGraph::complete(5).unwrap();
    let v = Vertex::new(Part::Two, 1);
    assert_eq!(d_tilde(&g, v, Direction::Out, 1.0f64).unwrap().members.len(), 5);
    assert!(d_tilde(&g, v, Direction::Out, 0.0f64).is_err());
    assert!(d_tilde(&g, v, Direction::Out, Rational::new(3, 2)).is_err());

    let c6 = c6_blowup(4, 0).unwrap().graph;
    for v in c6.vertices() {
        assert!(d_tilde(&c6, v, Direction::Out, Rational::new(1, 8)).unwrap().members.is_empty());
    }

    let e = extremal_regular(ExtremalRegularParams::new(4, 2).unwrap()).graph;
    for v in e.vertices() {
        for dir in [Direction::Out, Direction::In] {
            let got = d_tilde(&e, v, dir, Rational::new(1, 2)).unwrap().members;
            assert_eq!(got, oracle::d_tilde(&e, v, dir.target(v.part), 1, 2));
        }
    }
}

#[test]
fn dtilde_extraction_on_large_complete_graph() {
    let g = TripartiteGraph::complete(324).unwrap();
    let out = extract_k32_via_dtilde(&g, Rational::from_integer(3)).unwrap();
    assert_eq!(out.set_size, 162);
    assert_eq!(out.status, DTildeStatus::Found);
    assert!(out.witness.unwrap().verify(&g));
}

#[test]
fn dtilde_extraction_absent_cases() {
    let c6 = c6_blowup(5, 0).unwrap().graph;
    let out = extract_k32_via_dtilde(&c6, 1.5f64).unwrap();
    assert!(out.witness.is_none());
    let free = octahedron_free(OctahedronFreeParams::new(36, 5).unwrap()).graph;
    for k in [Rational::new(3, 2), Rational::from_integer(2)] {
        let out = extract_k32_via_dtilde(&free, k).unwrap();
        assert!(out.witness.is_none(), "{:?}", out.status);
    }
    assert!(extract_k32_via_dtilde(&c6, 1.0f64).is_err());
    let tiny = TripartiteGraph::complete(4).unwrap();
    assert_eq!(extract_k32_via_dtilde(&tiny, 3.0f64).unwrap().status, DTildeStatus::NotApplicable);
}

#[test]
fn bipartite_transpose_preserves_witnesses() {
    let b = BipartiteGraph::from_edges(2, 5, [(0, 1), (0, 3), (1, 1), (1, 3), (1, 4)]);
    let w = find_kss(&b, 2).unwrap();
    assert_eq!((w.left.clone(), w.right.clone()), (vec![0, 1], vec![1, 3]));
    let t = find_kss(&b.transposed(), 2).unwrap();
    assert_eq!((t.left, t.right), (w.right, w.left));
}
