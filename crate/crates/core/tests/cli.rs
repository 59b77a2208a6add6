use std::path::Path;
use std::process::{Command, Output};

use apollonian_walk::closed_form::closed_form_g2;
use apollonian_walk::io;
use apollonian_walk::verify::Verdict;

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_apollonian-walk"));
    for (key, _) in std::env::vars() {
        if key.starts_with("APWALK_") {
            cmd.env_remove(key);
        }
    }
    cmd
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn generate_writes_the_header() {
    let out = run(&["generate", "--generation", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(text.lines().next(), Some("apollonian g=3 n=16"));
    assert_eq!(text.lines().count(), 1 + 42);
    io::network_from_edge_list(&text).unwrap();
}

#[test]
fn generate_g0_is_three_edges() {
    let text = stdout(&run(&["generate", "-g", "0"]));
    assert_eq!(text.lines().skip(1).collect::<Vec<_>>(), ["1 2", "1 3", "2 3"]);
}

#[test]
fn generation_above_cap_exits_3() {
    let out = run(&["generate", "--generation", "99"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cap of 7"));
}

#[test]
fn bad_flags_exit_2() {
    assert_eq!(run(&["evolve", "--source", "0"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--max-generation", "-1"]).status.code(), Some(2));
    assert_eq!(run(&["evolve", "--kind", "sideways"]).status.code(), Some(2));
    assert_eq!(run(&["evolve", "-g", "2", "--source", "8"]).status.code(), Some(2));
    assert_eq!(run(&["limit", "--tol-cluster", "0"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn json_network_round_trips() {
    let text = stdout(&run(&["generate", "-g", "2", "--format", "json"]));
    let net = io::network_from_json(&text).unwrap();
    assert_eq!(net.node_count(), 7);
}

#[test]
fn quantum_evolution_from_the_center_matches_the_g2_closed_form() {
    let text = stdout(&run(&["evolve", "--generation", "2", "--source", "4", "--kind", "quantum"]));
    let points = io::parse_series_csv(&text).unwrap();
    assert_eq!(points.len(), 2000);
    assert_eq!(points[0].time, 0.01);
    assert_eq!(points[1999].time, 100.0);
    for p in &points {
        for (k, v) in p.values.iter().enumerate() {
            assert!((v - closed_form_g2(k + 1, p.time)).abs() <= 1e-10);
        }
    }
}

#[test]
fn classical_evolution_ends_at_equipartition() {
    let text = stdout(&run(&["evolve", "-g", "3", "-s", "4", "--kind", "classical", "--wide"]));
    assert!(text.starts_with("t,p_1,p_2,"));
    let points = io::parse_series_csv(&text).unwrap();
    let last = points.last().unwrap();
    assert_eq!(last.time, 100.0);
    assert!(last.values.iter().all(|v| (v - 1.0 / 16.0).abs() <= 1e-6));
}

#[test]
fn both_kinds_share_one_file() {
    let text = stdout(&run(&[
        "evolve", "-g", "1", "--kind", "both", "--t-scale", "lin", "--t-min", "0", "--t-max", "1",
        "--t-steps", "5",
    ]));
    assert!(text.starts_with("kind,t,k,probability"));
    let points = io::parse_series_csv(&text).unwrap();
    assert_eq!(points.len(), 10);
    assert_eq!(points[0].kind, Some(apollonian_walk::prelude::WalkKind::Classical));
    assert_eq!(points[9].kind, Some(apollonian_walk::prelude::WalkKind::Quantum));
}

#[test]
fn limit_g1_has_constant_diagonal() {
    let text = stdout(&run(&["limit", "--generation", "1"]));
    let chi = io::parse_chi_csv(&text).unwrap();
    for k in 1..=4 {
        for j in 1..=4 {
            let want = if j == k { 5.0 / 8.0 } else { 1.0 / 8.0 };
            assert!((chi.get(k, j) - want).abs() <= 1e-12);
        }
    }
}

#[test]
fn limit_g2_center() {
    let text = stdout(&run(&["limit", "-g", "2", "-s", "4"]));
    let chi = io::parse_chi_csv(&text).unwrap();
    assert!((chi.get(4, 4) - 37.0 / 49.0).abs() <= 1e-12);
}

#[test]
fn limit_g3_report_has_five_clusters() {
    let dir = tempfile::tempdir().unwrap();
    let report_path = dir.path().join("report.json");
    let out = run(&[
        "limit", "-g", "3", "-s", "4", "--report", report_path.to_str().unwrap(), "-o",
        dir.path().join("chi.csv").to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let report = io::cluster_report_from_json(&std::fs::read_to_string(&report_path).unwrap()).unwrap();
    assert_eq!(report.source, 4);
    assert_eq!(report.tol, 1e-9);
    let mut sizes: Vec<usize> = report.clusters.iter().map(|c| c.nodes.len()).collect();
    sizes.sort_unstable();
    assert_eq!(sizes, vec![1, 3, 3, 3, 6]);
    assert!(report.unexplained_pairs.is_empty());

    let raw: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&report_path).unwrap()).unwrap();
    let mut keys: Vec<&String> = raw.as_object().unwrap().keys().collect();
    keys.sort();
    assert_eq!(keys, ["clusters", "source", "tol", "unexplained_pairs"]);
}

#[test]
fn limit_json_embeds_the_report() {
    let text = stdout(&run(&["limit", "-g", "3", "-s", "9", "--format", "json"]));
    let doc: io::LimitDocument = serde_json::from_str(&text).unwrap();
    assert_eq!(doc.chi.len(), 16);
    assert_eq!(doc.report.unwrap().unexplained_pairs, vec![[13, 15]]);
}

#[test]
fn spectrum_and_eigenvectors_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let vec_path = dir.path().join("q.csv");
    let out = run(&["spectrum", "-g", "1", "--eigenvectors", vec_path.to_str().unwrap()]);
    let values = io::parse_spectrum_csv(&stdout(&out)).unwrap();
    assert_eq!(values.len(), 4);
    assert!((values[3] - 4.0).abs() < 1e-12);
    let q = io::parse_eigenvectors_csv(&std::fs::read_to_string(vec_path).unwrap()).unwrap();
    assert!((q.tr_mul(&q) - nalgebra::DMatrix::identity(4, 4)).abs().max() < 1e-12);
}

#[test]
fn orbits_fix_the_requested_source() {
    let text = stdout(&run(&["orbits", "-g", "2", "-s", "4"]));
    assert_eq!(text, "node,orbit\n1,1\n2,1\n3,1\n4,2\n5,3\n6,3\n7,3\n");
    let text = stdout(&run(&["orbits", "-g", "3", "-s", "9", "--format", "json"]));
    let doc: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(doc["classes"].as_array().unwrap().len(), 16);
}

#[test]
fn verify_small_generations() {
    let out = run(&["verify", "--max-generation", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let verdict: Verdict = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(verdict.passed);
    assert!(verdict.checks.iter().any(|c| c.name == "g2-closed-form"));
}

#[test]
fn verify_full_pipeline() {
    let out = run(&["verify", "--max-generation", "4"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let verdict: Verdict = serde_json::from_str(&stdout(&out)).unwrap();
    let ids: Vec<u32> = verdict.checks.iter().map(|c| c.id).collect();
    assert_eq!(ids, (1..=10).collect::<Vec<_>>());
    assert!(verdict.checks.iter().all(|c| c.passed));
}

#[test]
fn environment_overrides_flags() {
    let out = bin().env("APWALK_GENERATION", "1").arg("generate").output().unwrap();
    assert_eq!(stdout(&out).lines().next(), Some("apollonian g=1 n=4"));
}

fn file_bytes(path: &Path) -> Vec<u8> {
    std::fs::read(path).unwrap()
}

#[test]
fn identical_config_gives_identical_files() {
    let dir = tempfile::tempdir().unwrap();
    for cmd in [
        vec!["evolve", "-g", "3", "--kind", "both"],
        vec!["limit", "-g", "3"],
        vec!["spectrum", "-g", "4"],
    ] {
        let a = dir.path().join("a");
        let b = dir.path().join("b");
        for p in [&a, &b] {
            let mut args = cmd.clone();
            args.extend(["-o", p.to_str().unwrap()]);
            assert_eq!(run(&args).status.code(), Some(0));
        }
        assert_eq!(file_bytes(&a), file_bytes(&b), "{cmd:?}");
    }
}

#[test]
fn help_exits_cleanly() {
    let out = run(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("evolve"));
}
