use std::path::Path;
use std::process::{Command, Output};

fn run(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_artin-kappa")).current_dir(dir).args(args).output().expect("binary runs")
}

fn write(dir: &Path, name: &str, text: &str) {
    std::fs::write(dir.join(name), text).unwrap();
}

fn rows(text: &str) -> Vec<Vec<String>> {
    csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .from_reader(text.as_bytes())
        .records()
        .map(|r| r.unwrap().iter().map(str::to_string).collect())
        .collect()
}

#[test]
fn kappa_quadratic_and_trivial() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "job.json", r#"{"field": "quadratic:-4", "characters": ["chi1", "1"]}"#);
    let out = run(dir.path(), &["kappa", "--spec", "job.json", "--T", "1e6", "--no-timestamp"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let rows = rows(&String::from_utf8(out.stdout).unwrap());
    assert_eq!(rows.len(), 2);
    let center = |r: &Vec<String>| r[4].parse::<f64>().unwrap();
    assert!((center(&rows[0]) - std::f64::consts::FRAC_PI_4).abs() < 1e-3);
    assert!((center(&rows[1]) - 1.0).abs() < 1e-3);
    assert_eq!(rows[1][11], "1");
}

#[test]
fn rerun_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "job.json", r#"{"field": "x^3-x-1", "characters": ["std"], "T": [1e4, 1e5]}"#);
    let mut outputs = Vec::new();
    for (name, workers) in [("a.csv", "1"), ("b.csv", "4")] {
        let out = run(dir.path(), &["kappa", "--spec", "job.json", "--out", name, "--workers", workers, "--no-timestamp"]);
        assert_eq!(out.status.code(), Some(0));
        outputs.push(std::fs::read(dir.path().join(name)).unwrap());
    }
    assert_eq!(outputs[0], outputs[1]);
}

#[test]
fn timestamp_line_is_the_only_difference() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "job.json", r#"{"field": "Q", "grid": [[3, 1000]]}"#);
    let with = run(dir.path(), &["mertens", "--spec", "job.json"]);
    let without = run(dir.path(), &["mertens", "--spec", "job.json", "--no-timestamp"]);
    let with = String::from_utf8(with.stdout).unwrap();
    let without = String::from_utf8(without.stdout).unwrap();
    let (first, rest) = with.split_once('\n').unwrap();
    assert!(first.starts_with("# generated "));
    assert_eq!(rest, without);
}

#[test]
fn config_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "bad.json", "{not json");
    write(dir.path(), "field.json", r#"{"field": "quadratic:-12", "T": 1e4}"#);
    write(dir.path(), "chars.json", r#"{"field": "Q", "characters": ["nope"], "T": 1e4}"#);
    write(dir.path(), "empty.json", r#"{"family": {}}"#);
    let cases: [&[&str]; 6] = [
        &["kappa", "--spec", "bad.json"],
        &["kappa", "--spec", "missing.json"],
        &["kappa", "--spec", "field.json"],
        &["kappa", "--spec", "chars.json"],
        &["verify-bounds", "--spec", "empty.json"],
        &["frobnicate"],
    ];
    for args in cases {
        let out = run(dir.path(), args);
        assert_eq!(out.status.code(), Some(2), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    }
    let out = run(dir.path(), &["kappa", "--spec", "chars.json"]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("characters"));
}

#[test]
fn missing_pattern_is_a_computation_error() {
    let dir = tempfile::tempdir().unwrap();
    // A pattern map missing the inert class makes the first inert prime fail.
    write(
        dir.path(),
        "job.json",
        r#"{"field": {"poly": [1, 0, 1], "group": "C2", "class_of_pattern": {"1,1": "e"}}, "T": 100}"#,
    );
    let out = run(dir.path(), &["kappa", "--spec", "job.json"]);
    assert_eq!(out.status.code(), Some(3), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn siegel_scan_rows() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "range.json", r#"{"range": [-100, 100]}"#);
    write(dir.path(), "empty.json", r#"{"range": [5, 1]}"#);
    write(dir.path(), "list.json", r#"{"discriminants": [-4, -12, 5]}"#);
    let out = run(dir.path(), &["siegel-scan", "--spec", "range.json", "--no-timestamp"]);
    let scanned = rows(&String::from_utf8(out.stdout).unwrap());
    assert_eq!(scanned.len(), 61);
    assert!(scanned.iter().all(|r| r[2] == "none" && r[6] == "ok"));
    assert!(String::from_utf8_lossy(&out.stderr).contains("0 real zeros"));

    let out = run(dir.path(), &["siegel-scan", "--spec", "empty.json", "--no-timestamp"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "d,q,beta,eta_plain,stark_floor,scan_time_ms,status\n");

    let out = run(dir.path(), &["siegel-scan", "--spec", "list.json", "--no-timestamp"]);
    let listed = rows(&String::from_utf8(out.stdout).unwrap());
    assert_eq!(listed.len(), 3);
    assert!(listed[1][6].starts_with("skipped"));
}

#[test]
fn verify_bounds_writes_summary_and_plot() {
    let dir = tempfile::tempdir().unwrap();
    write(
        dir.path(),
        "family.json",
        r#"{"family": {"quadratic": {"min": -100, "max": -3}, "pure_cubic": [2, 3]}, "T": 1e5}"#,
    );
    let out = run(dir.path(), &["verify-bounds", "--spec", "family.json", "--out", "env.csv", "--plot", "env.dat", "--no-timestamp"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let csv = std::fs::read_to_string(dir.path().join("env.csv")).unwrap();
    let reports = rows(&csv);
    assert!(reports.iter().all(|r| r.len() == 14));
    for r in &reports {
        let lo: f64 = r[11].parse().unwrap();
        let hi: f64 = r[10].parse().unwrap();
        assert!(lo > 0.0 && lo.is_finite() && hi > 0.0 && hi.is_finite(), "{r:?}");
    }
    let summary: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("env.csv.summary.json")).unwrap()).unwrap();
    assert_eq!(summary["envelopes"]["cond"]["insane"], 0);
    let cmp = summary["base_comparison"].as_array().unwrap();
    assert_eq!(cmp.len(), 2);
    assert!(cmp.iter().all(|c| c["quadratic_base_tighter"] == true));
    let plot = std::fs::read_to_string(dir.path().join("env.dat")).unwrap();
    let data: Vec<&str> = plot.lines().filter(|l| !l.is_empty() && !l.starts_with('#')).collect();
    assert_eq!(data.len(), reports.len());
    assert!(data.iter().all(|l| l.split_whitespace().count() == 2));
}

#[test]
fn t_map_and_rigorous() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "job.json", r#"{"field": "x^3-x-1", "characters": ["std"]}"#);
    write(dir.path(), "tmap.json", r#"{"std": 1e5}"#);
    let out = run(dir.path(), &["kappa", "--spec", "job.json", "--T-map", "tmap.json", "--rigorous", "--no-timestamp"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let r = &rows(&String::from_utf8(out.stdout).unwrap())[0];
    assert!(r[3].starts_with("std="));
    assert_eq!(r[8], "unmodeled");
    let center: f64 = r[4].parse().unwrap();
    assert!((center - 0.368409).abs() < 0.005);
}
