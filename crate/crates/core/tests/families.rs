use trilab::constructions::field::GaloisField;
use trilab::constructions::{
    c6_blowup, extremal_regular, glue, octahedron_free, projective_plane_bipartite, random_graph, ExtremalRegularParams,
    OctahedronFreeParams, PlaneOrder,
};
use trilab::detection::{find_k3s, find_kss};
use trilab::io::{self, GraphDocument};
use trilab::{Part, TripartiteGraph, Vertex};
use trilab_oracle as oracle;

#[test]
fn extremal_regular_triangle_formula() {
    for n in [4usize, 6, 8, 10, 12] {
        for t in n.div_ceil(2)..=n {
            let params = ExtremalRegularParams::new(n, t).unwrap();
            let g = extremal_regular(params).graph;
            for v in g.vertices() {
                assert_eq!(g.degree(v), n + t, "n={n} t={t} v={v}");
            }
            let expected = (n * n * (3 * t - n) / 2) as u64;
            assert_eq!(params.triangle_formula(), expected);
            assert_eq!(g.triangle_count(), expected, "n={n} t={t}");
        }
    }
    let g = extremal_regular(ExtremalRegularParams::new(4, 2).unwrap()).graph;
    assert_eq!(oracle::triangle_count(&g), 16);
    assert_eq!(extremal_regular(ExtremalRegularParams::new(4, 4).unwrap()).graph, TripartiteGraph::complete(4).unwrap());
    assert!(ExtremalRegularParams::new(5, 3).is_err());
    assert!(ExtremalRegularParams::new(6, 2).is_err());
    assert!(ExtremalRegularParams::new(6, 7).is_err());
}

#[test]
fn octahedron_free_certificates() {
    for (n, t) in [(13usize, 2usize), (31, 4), (36, 5)] {
        let c = octahedron_free(OctahedronFreeParams::new(n, t).unwrap());
        assert_eq!(c.graph.min_degree(), n + t, "n={n} t={t}");
        assert_eq!(find_k3s(&c.graph, 2).unwrap(), None, "n={n} t={t}");
    }
    // Small instance double-checked by pair enumeration.
    let small = octahedron_free(OctahedronFreeParams::new(10, 2).unwrap()).graph;
    assert!(!oracle::contains_k32(&small));
    assert_eq!(oracle::min_degree(&small), 12);
    assert!(OctahedronFreeParams::new(12, 3).is_err());
    assert!(OctahedronFreeParams::new(9, 2).is_err());
    assert!(OctahedronFreeParams::new(10, 0).is_err());
    assert_eq!(OctahedronFreeParams::max_t(13), Some(2));
    assert_eq!(OctahedronFreeParams::max_t(4), None);
}

#[test]
fn gluing_identities() {
    let half = octahedron_free(OctahedronFreeParams::new(13, 2).unwrap()).graph;
    let g = glue(&half, &half).unwrap();
    assert_eq!(g.n(), 26);
    assert_eq!(g.min_degree(), 28);
    assert_eq!(g.triangle_count(), 2 * half.triangle_count());
    assert_eq!(find_k3s(&g, 2).unwrap(), None);

    let empty = TripartiteGraph::empty(3).unwrap();
    let g = glue(&empty, &empty).unwrap();
    assert_eq!((g.min_degree(), g.triangle_count()), (3, 0));
    assert!(glue(&empty, &TripartiteGraph::empty(4).unwrap()).is_err());

    for seed in 0..10 {
        let a = oracle::random_tripartite(3, 0.6, seed);
        let b = oracle::random_tripartite(3, 0.4, seed + 100);
        let g = glue(&a, &b).unwrap();
        assert_eq!(g.triangle_count(), a.triangle_count() + b.triangle_count());
        assert_eq!(g.min_degree(), 3 + a.min_degree().min(b.min_degree()));
    }
}

#[test]
fn projective_planes() {
    for q in 2..=5usize {
        let b = projective_plane_bipartite(PlaneOrder::new(q).unwrap()).unwrap();
        let size = q * q + q + 1;
        assert_eq!((b.m(), b.n()), (size, size));
        assert_eq!(b.edge_count(), size * (q + 1));
        assert!((0..size).all(|u| b.left_degree(u) == q + 1 && b.right_degree(u) == q + 1));
        assert!(!oracle::contains_k22(&b), "q={q}");
        assert!(oracle::max_codegree(&b, true) <= 1 && oracle::max_codegree(&b, false) <= 1);
        assert_eq!(find_kss(&b, 2), None);
    }
    assert!(PlaneOrder::new(6).is_err());
    assert!(PlaneOrder::new(1).is_err());
    for q in [2usize, 3, 4, 5, 7, 8, 9, 11, 13] {
        assert!(GaloisField::new(q).is_ok(), "q={q}");
    }
}

#[test]
fn random_graph_floor_and_determinism() {
    assert_eq!(random_graph(10, 20, 3).unwrap(), TripartiteGraph::complete(10).unwrap());
    let a = random_graph(10, 0, 1).unwrap();
    let b = random_graph(10, 0, 1).unwrap();
    assert_eq!(io::to_json(&GraphDocument::new(a.clone())), io::to_json(&GraphDocument::new(b)));
    for seed in 0..5 {
        let g = random_graph(9, 12, seed).unwrap();
        assert!(g.min_degree() >= 12);
        // Maximality: every remaining edge has an endpoint on the floor.
        for (x, y) in g.edges() {
            assert!(g.degree(x) == 12 || g.degree(y) == 12);
        }
    }
    assert!(random_graph(0, 0, 0).is_err());
    assert!(random_graph(3, 7, 0).is_err());
}

#[test]
fn c6_blowup_is_triangle_free() {
    for (m, u) in [(2usize, 0usize), (3, 2), (5, 1)] {
        let c = c6_blowup(m, u).unwrap();
        assert_eq!(c.graph.n(), 2 * m + u);
        assert_eq!(c.graph.triangle_count(), 0);
        for (x, y) in c.graph.edges() {
            assert_eq!(c.graph.triangles_through_edge(x, y).unwrap(), 0);
        }
        // W_1 (part 1, [0, m)) points at W_2 (part 2, [0, m)) only.
        let w1 = Vertex::new(Part::One, 0);
        assert_eq!(c.graph.out_degree(w1), m);
    }
}
