use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn tri_lab(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tri-lab"))
        .args(args)
        .current_dir(dir)
        .env_remove("TRI_LAB_WORKERS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

#[test]
fn octahedron_free_graph_has_no_k32() {
    let dir = TempDir::new().unwrap();
    let o = tri_lab(&["construct", "c51", "--n", "13", "--t", "2", "-o", "g.json"], dir.path());
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let o = tri_lab(&["detect", "g.json", "--s", "2"], dir.path());
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).trim(), "absent");
}

#[test]
fn complete_graph_witness_round_trips() {
    let dir = TempDir::new().unwrap();
    tri_lab(&["construct", "k3n", "--n", "2", "-o", "k.json"], dir.path());
    let o = tri_lab(&["detect", "k.json", "--s", "2", "-o", "w.json"], dir.path());
    assert_eq!(code(&o), 0);
    let w: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    let total: usize = w["parts"].as_array().unwrap().iter().map(|p| p.as_array().unwrap().len()).sum();
    assert_eq!(total, 6);
    let o = tri_lab(&["verify-witness", "k.json", "w.json"], dir.path());
    assert_eq!(code(&o), 0, "{}", stdout(&o));
}

#[test]
fn triangle_claims() {
    let dir = TempDir::new().unwrap();
    tri_lab(&["construct", "extremal", "--n", "4", "--t", "2", "-o", "e.json"], dir.path());
    std::fs::write(dir.path().join("good.json"), r#"{"triangles":16}"#).unwrap();
    std::fs::write(dir.path().join("bad.json"), r#"{"triangles":17}"#).unwrap();
    assert_eq!(code(&tri_lab(&["verify-witness", "e.json", "good.json"], dir.path())), 0);
    assert_eq!(code(&tri_lab(&["verify-witness", "e.json", "bad.json"], dir.path())), 1);
}

#[test]
fn construct_output_is_byte_stable() {
    let dir = TempDir::new().unwrap();
    let a = tri_lab(&["construct", "c51", "--n", "13", "--t", "2"], dir.path());
    std::fs::write(dir.path().join("a.json"), &a.stdout).unwrap();
    // Gluing a graph with itself and re-reading must not disturb the original bytes.
    let b = tri_lab(&["construct", "c51", "--n", "13", "--t", "2"], dir.path());
    assert_eq!(a.stdout, b.stdout);
    let glued = tri_lab(&["construct", "glue", "a.json", "a.json", "-o", "g.json"], dir.path());
    assert_eq!(code(&glued), 0, "{}", stderr(&glued));
    let text = std::fs::read_to_string(dir.path().join("g.json")).unwrap();
    let doc = trilab::io::from_json(&text).unwrap();
    assert_eq!(trilab::io::to_json(&doc) + "\n", text);
}

#[test]
fn random_construction_depends_only_on_seed() {
    let dir = TempDir::new().unwrap();
    let run = |seed: &str| tri_lab(&["construct", "random", "--n", "6", "--min-degree", "8", "--seed", seed], dir.path()).stdout;
    assert_eq!(run("5"), run("5"));
    assert_ne!(run("5"), run("6"));
}

#[test]
fn plane_file_feeds_bipartite_detection() {
    let dir = TempDir::new().unwrap();
    tri_lab(&["construct", "plane", "--q", "2", "-o", "p.json"], dir.path());
    let o = tri_lab(&["detect", "p.json", "--s", "2"], dir.path());
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).trim(), "absent");
}

#[test]
fn find_reports_source_and_trace() {
    let dir = TempDir::new().unwrap();
    tri_lab(&["construct", "k3n", "--n", "6", "-o", "k.json"], dir.path());
    let o = tri_lab(&["find", "k.json", "--s", "2", "--t", "3", "--trace"], dir.path());
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let report: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(report["witness"].is_object());
    assert!(report["trace"]["pair_triangles"].as_u64().unwrap() >= 27);
}

#[test]
fn extract_emits_rational_strings() {
    let dir = TempDir::new().unwrap();
    tri_lab(&["construct", "k3n", "--n", "4", "-o", "k.json"], dir.path());
    let o = tri_lab(&["extract", "k.json", "--epsilon", "1/10"], dir.path());
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    if v["kind"] == "partition" {
        assert_eq!(v["epsilon"], "1/10");
    }
    let o = tri_lab(&["extract", "k.json", "--epsilon", "abc"], dir.path());
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).starts_with("error: invalid-parameter:"));
}

#[test]
fn validate_c6close_fails_on_small_instance() {
    let dir = TempDir::new().unwrap();
    tri_lab(&["construct", "k3n", "--n", "6", "-o", "k.json"], dir.path());
    std::fs::write(dir.path().join("i.json"), r#"{"w":[[0],[0],[0],[1],[1],[1]],"x":[[2],[2],[2],[3],[3],[3]]}"#).unwrap();
    let o = tri_lab(&["validate-c6close", "k.json", "--instance", "i.json", "--c", "2", "--d", "1"], dir.path());
    assert_eq!(code(&o), 1, "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["all_passed"], false);
    let o = tri_lab(&["validate-c6close", "k.json", "--instance", "i.json", "--c", "1", "--d", "1"], dir.path());
    assert_eq!(code(&o), 2);
}

#[test]
fn probe_json_is_deterministic_and_saves_best() {
    let dir = TempDir::new().unwrap();
    let args = ["probe", "min-triangles", "--n", "4", "--t", "2", "--budget", "3000", "--restarts", "2", "--seed", "9", "--json"];
    let a = tri_lab(&args, dir.path());
    assert_eq!(code(&a), 0, "{}", stderr(&a));
    let b = tri_lab(&args, dir.path());
    assert_eq!(a.stdout, b.stdout);
    let report: serde_json::Value = serde_json::from_str(&stdout(&a)).unwrap();
    assert_eq!(report["best"], 16);

    let mut with_output = args.to_vec();
    with_output.extend(["-o", "best.json"]);
    assert_eq!(code(&tri_lab(&with_output, dir.path())), 0);
    std::fs::write(dir.path().join("t.json"), r#"{"triangles":16}"#).unwrap();
    assert_eq!(code(&tri_lab(&["verify-witness", "best.json", "t.json"], dir.path())), 0);
}

#[test]
fn probe_output_ignores_worker_count() {
    let dir = TempDir::new().unwrap();
    let run = |workers: &str| {
        tri_lab(
            &["--workers", workers, "probe", "k32-surplus", "--n", "4", "--t", "1", "--budget", "2000", "--restarts", "3", "--seed", "4", "--init", "random", "--json"],
            dir.path(),
        )
    };
    let one = run("1");
    assert_eq!(code(&one), 0, "{}", stderr(&one));
    assert_eq!(one.stdout, run("4").stdout);
}

#[test]
fn usage_and_error_exit_codes() {
    let dir = TempDir::new().unwrap();
    let o = tri_lab(&["detect"], dir.path());
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).starts_with("error: usage:"));
    assert_eq!(code(&tri_lab(&["--help"], dir.path())), 0);
    assert_eq!(code(&tri_lab(&["--version"], dir.path())), 0);

    let o = tri_lab(&["detect", "missing.json", "--s", "2"], dir.path());
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).starts_with("error: io:"));

    std::fs::write(dir.path().join("bad.json"), "{\"n\": 2, \"edges\": [[1,0,1,1]]}").unwrap();
    let o = tri_lab(&["detect", "bad.json", "--s", "2"], dir.path());
    assert_eq!(code(&o), 2, "{}", stderr(&o));

    let o = tri_lab(&["construct", "c51", "--n", "5", "--t", "2"], dir.path());
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).starts_with("error: invalid-parameter:"));

    let o = tri_lab(&["--workers", "0", "construct", "k3n", "--n", "2"], dir.path());
    assert_eq!(code(&o), 2);
}
