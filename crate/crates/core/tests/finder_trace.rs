use proptest::prelude::*;
use trilab::constructions::random_graph;
use trilab::finder::{find_k3s_constructive, find_k3s_with_fallback, FinderOutcome, FinderParams, WitnessSource};
use trilab::{Error, TripartiteGraph};
use trilab_oracle as oracle;

#[test]
fn complete_graph_default_t() {
    let g = TripartiteGraph::complete(50).unwrap();
    // Default t exceeds n = 50 for s = 2, so pick the largest legal value.
    let (w, trace) = find_k3s_constructive(&g, FinderParams::with_t(2, 50)).unwrap();
    assert!(w.unwrap().verify(&g));
    assert_eq!(trace.outcome, FinderOutcome::Found);
    assert_eq!(trace.pair_triangles, 50 * 50 * 50);
    assert!(matches!(
        find_k3s_constructive(&g, FinderParams::new(2)),
        Err(Error::InvalidParameter(_))
    ));
}

#[test]
fn trace_is_reproducible_and_serializable() {
    let g = random_graph(30, 42, 9).unwrap();
    let params = FinderParams::with_t(2, 12);
    let a = find_k3s_constructive(&g, params).unwrap();
    let b = find_k3s_constructive(&g, params).unwrap();
    assert_eq!(a, b);
    let json = serde_json::to_string(&a.1).unwrap();
    assert!(json.contains("\"pair_triangles\""));
}

#[test]
fn fallback_reports_source() {
    let g = random_graph(24, 36, 4).unwrap();
    let report = find_k3s_with_fallback(&g, FinderParams::with_t(2, 12)).unwrap();
    match report.source {
        WitnessSource::Constructive | WitnessSource::ExactFallback => assert!(report.witness.unwrap().verify(&g)),
        WitnessSource::None => assert!(!oracle::contains_k32(&g)),
    }
}

#[test]
fn greedy_selection_for_three() {
    let g = random_graph(16, 28, 2).unwrap();
    let (w, trace) = find_k3s_constructive(&g, FinderParams::with_t(3, 12)).unwrap();
    assert_eq!(trace.z.len(), 3);
    if let Some(w) = w {
        assert!(w.verify(&g));
        assert_eq!(w.s(), 3);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    /// The first counting step of the proof: the chosen pairs carry at least
    /// t^3 triangles, and the mean of |𝒯| is at least t^2 C(t,s) / C(n,s).
    #[test]
    fn counting_bounds_hold(n in 6usize..24, t_frac in 0.2f64..1.0, seed: u64) {
        let t = ((n as f64 * t_frac) as usize).clamp(1, n);
        let g = random_graph(n, n + t, seed).unwrap();
        let (w, trace) = find_k3s_constructive(&g, FinderParams::with_t(2, t)).unwrap();
        prop_assert!(trace.pair_triangles >= (t * t * t) as u64);
        prop_assert!(trace.average + 1e-9 >= trace.averaging_bound);
        prop_assert!(trace.average_met);
        if let Some(w) = w {
            prop_assert!(w.verify(&g));
        }
    }
}
