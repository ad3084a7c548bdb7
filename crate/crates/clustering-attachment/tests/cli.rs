//! End-to-end checks of the `casim` binary.

use std::path::Path;
use std::process::{Command, Output};

fn casim(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_casim"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    assert!(
        out.status.success(),
        "command failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

fn data_rows(csv: &str) -> Vec<(u64, f64)> {
    csv.lines()
        .skip(1)
        .map(|l| {
            let (n, y) = l.split_once(',').expect("two columns");
            (n.parse().unwrap(), y.parse().unwrap())
        })
        .collect()
}

#[test]
fn evolve_emits_the_requested_trajectory() {
    let out = casim(&[
        "evolve", "--initial", "triangle", "--epsilon", "0", "--m", "2", "--indicator",
        "--steps", "100", "--seed", "7",
    ]);
    let rows = data_rows(&stdout(&out));
    assert_eq!(rows.len(), 101);
    assert_eq!(rows[0], (1, 1.0));
    for w in rows.windows(2) {
        assert!(w[1].1 >= w[0].1, "triangle counts must not decrease");
    }
}

#[test]
fn evolve_is_deterministic_per_seed() {
    let args = [
        "evolve", "--initial", "diamond", "--steps", "200", "--seed", "42", "--thinning", "10",
    ];
    let a = stdout(&casim(&args));
    let b = stdout(&casim(&args));
    assert_eq!(a, b);
    let c = stdout(&casim(&[
        "evolve", "--initial", "diamond", "--steps", "200", "--seed", "43", "--thinning", "10",
    ]));
    assert_ne!(a, c);
}

#[test]
fn evolve_supports_the_positive_epsilon_power_path() {
    let dir = tempfile::tempdir().unwrap();
    let quad = dir.path().join("quad.txt");
    std::fs::write(&quad, "0 1\n0 2\n0 3\n1 2\n2 3\n").unwrap();
    let initial = format!("file:{}", quad.display());
    let out = casim(&[
        "evolve", "--initial", &initial, "--alpha", "0.5", "--epsilon", "0.1", "--m", "2",
        "--steps", "10", "--seed", "1",
    ]);
    assert_eq!(data_rows(&stdout(&out)).len(), 11);
}

#[test]
fn evolve_rejects_a_triangle_free_start_without_writing_output() {
    let dir = tempfile::tempdir().unwrap();
    let output = dir.path().join("out.csv");
    let out = casim(&[
        "evolve", "--initial", "path-graph", "--epsilon", "0", "--steps", "10",
        "--output", output.to_str().unwrap(),
    ]);
    assert!(!out.status.success());
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("active nodes"), "stderr: {err}");
    assert!(!Path::new(&output).exists(), "no partial output on failure");
}

#[test]
fn evolve_writes_dot_snapshots() {
    let dir = tempfile::tempdir().unwrap();
    let prefix = dir.path().join("snap");
    let out = casim(&[
        "evolve", "--initial", "triangle", "--steps", "5", "--seed", "2",
        "--dot-at", "1", "--dot-at", "6", "--dot-prefix", prefix.to_str().unwrap(),
    ]);
    stdout(&out);
    let first = std::fs::read_to_string(dir.path().join("snap_n1.dot")).unwrap();
    assert!(first.contains("graph {"));
    assert!(std::fs::metadata(dir.path().join("snap_n6.dot")).is_ok());
}

#[test]
fn mc_writes_the_curve_and_a_metadata_sidecar() {
    let dir = tempfile::tempdir().unwrap();
    let output = dir.path().join("curve.csv");
    let out = casim(&[
        "mc", "--initial", "complete:17", "--fast", "-R", "20", "-N", "10000",
        "--thinning", "1000", "--seed", "5", "--output", output.to_str().unwrap(),
    ]);
    stdout(&out);
    let rows = data_rows(&std::fs::read_to_string(&output).unwrap());
    assert_eq!(rows.len(), 11); // n = 1, 1000, ..., 10000
    assert_eq!(rows[0], (1, 680.0));
    let meta = std::fs::read_to_string(dir.path().join("curve.csv.meta")).unwrap();
    assert!(meta.contains("master_seed: 5"));
    assert!(meta.contains("engine: fast"));
}

#[test]
fn mc_full_engine_smoke() {
    let out = casim(&[
        "mc", "--initial", "triangle", "-R", "4", "-N", "200", "--thinning", "50", "--seed", "3",
    ]);
    let rows = data_rows(&stdout(&out));
    assert_eq!(rows.len(), 5);
}

#[test]
fn mc_rejects_fast_engine_with_non_limit_parameters() {
    let out = casim(&[
        "mc", "--initial", "triangle", "--fast", "--alpha", "0.5", "-R", "2", "-N", "10",
    ]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("limit model"));
}

#[test]
fn oracle_tabulates_exact_values() {
    let out = stdout(&casim(&["oracle", "--initial", "triangle", "-n", "3"]));
    let last = out.lines().last().unwrap();
    let fields: Vec<&str> = last.split(',').collect();
    assert_eq!(fields[0], "3");
    let expected: f64 = fields[2].parse().unwrap();
    assert!((expected - 17.0 / 6.0).abs() < 1e-9);
}

#[test]
fn verify_passes_on_the_diamond() {
    let out = casim(&[
        "verify", "--initial", "quadrilateral-example", "--n-max", "60",
        "--joint-max", "40", "--lemmas-only",
    ]);
    let text = stdout(&out);
    assert!(text.contains("verification: PASS"), "{text}");
}

#[test]
fn fit_recovers_synthetic_power_data() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("data.csv");
    let mut csv = String::from("n,delta_mean\n");
    for i in 1..=400u64 {
        let n = i as f64 * 5.0;
        csv.push_str(&format!("{n},{}\n", 5.0 + 2.0 * n.powf(0.5)));
    }
    std::fs::write(&input, csv).unwrap();
    let out = stdout(&casim(&[
        "fit", "--input", input.to_str().unwrap(), "--window", "5:2000", "--csv-row",
    ]));
    assert!(out.contains("c1_mode,c1,c2,c3"), "{out}");
    let row = out
        .lines()
        .find(|l| l.starts_with("free,"))
        .expect("free fit row");
    let fields: Vec<&str> = row.split(',').collect();
    let c3: f64 = fields[3].parse().unwrap();
    assert!((c3 - 0.5).abs() < 1e-3, "{row}");
}

#[test]
fn convert_emits_dot_and_edge_lists() {
    let dot = stdout(&casim(&["convert", "--initial", "quadrilateral-example", "--to", "dot"]));
    assert_eq!(dot.matches("active=true").count(), 9); // 4 nodes + 5 edges
    let edges = stdout(&casim(&["convert", "--initial", "diamond", "--to", "edges"]));
    assert_eq!(edges.lines().count(), 5);
}
