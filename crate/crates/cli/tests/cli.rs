use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn bouncer(out: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bouncer"))
        .args(args)
        .arg("--out-dir")
        .arg(out)
        .env_remove("BOUNCER_CONFIG")
        .output()
        .expect("binary runs")
}

fn csv(path: &Path) -> (Vec<String>, Vec<Vec<String>>) {
    let text = fs::read_to_string(path).unwrap();
    let mut lines = text.lines();
    let header = lines.next().unwrap().split(',').map(String::from).collect();
    let rows = lines
        .map(|l| l.split(',').map(String::from).collect())
        .collect();
    (header, rows)
}

fn col(header: &[String], name: &str) -> usize {
    header
        .iter()
        .position(|h| h == name)
        .unwrap_or_else(|| panic!("no column {name}"))
}

#[test]
fn zeros_table() {
    let dir = tempfile::tempdir().unwrap();
    assert!(bouncer(dir.path(), &["zeros", "--n", "20"])
        .status
        .success());
    let (h, rows) = csv(&dir.path().join("zeros.csv"));
    assert_eq!(h, ["n", "a_n", "a_n_asymptotic", "rel_error", "ai_prime"]);
    assert_eq!(rows.len(), 20);
    let a1: f64 = rows[0][1].parse().unwrap();
    assert!((a1 + 2.338107410459767).abs() < 1e-14);
    let err: Vec<f64> = rows.iter().map(|r| r[3].parse().unwrap()).collect();
    assert!(err[2..].windows(2).all(|w| w[1] <= w[0]));
    assert!(dir.path().join("zeros_manifest.json").exists());
}

#[test]
fn density_shapes() {
    let dir = tempfile::tempdir().unwrap();
    assert!(bouncer(dir.path(), &["density", "--n", "3"])
        .status
        .success());
    let (h, rows) = csv(&dir.path().join("density_n3.csv"));
    let (x, q, c) = (
        col(&h, "zeta_over_h"),
        col(&h, "rho_quantum"),
        col(&h, "rho_classical"),
    );
    let vals: Vec<[f64; 3]> = rows
        .iter()
        .map(|r| {
            [
                r[x].parse().unwrap(),
                r[q].parse().unwrap(),
                r[c].parse().unwrap(),
            ]
        })
        .collect();
    assert!(vals.iter().all(|v| v[1] >= 0.0 && v[2] >= 0.0));
    assert!(vals.iter().filter(|v| v[0] > 1.0).all(|v| v[2] == 0.0));
    let maxima = vals
        .windows(3)
        .filter(|w| w[1][1] > w[0][1] && w[1][1] > w[2][1])
        .count();
    assert_eq!(maxima, 3);
    let svg = fs::read_to_string(dir.path().join("density_n3.svg")).unwrap();
    assert!(svg.starts_with("<svg") || svg.starts_with("<?xml"));
}

#[test]
fn tail_probability_records() {
    let dir = tempfile::tempdir().unwrap();
    assert!(bouncer(dir.path(), &["tailprob"]).status.success());
    let v: Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("tailprob.json")).unwrap())
            .unwrap();
    let recs = v.as_array().unwrap();
    assert_eq!(recs.len(), 4);
    let last = &recs[3];
    assert_eq!(last["n"], 30);
    assert_eq!(last["published_estimate"], 0.0077);
    assert!(last["abs_difference"].as_f64().unwrap() < 1e-8);

    let out = bouncer(dir.path(), &["tailprob", "--n-list", ""]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn fourier_routes_agree_at_origin() {
    let dir = tempfile::tempdir().unwrap();
    assert!(
        bouncer(dir.path(), &["fourier", "--n", "10", "--grid", "31"])
            .status
            .success()
    );
    let (h, rows) = csv(&dir.path().join("fourier_n10.csv"));
    assert_eq!(rows.len(), 31);
    let inv = 1.0 / (2.0 * std::f64::consts::PI);
    for route in ["numeric", "albright0", "albright1", "closed", "classical"] {
        let re: f64 = rows[0][col(&h, &format!("re_{route}"))].parse().unwrap();
        let im: f64 = rows[0][col(&h, &format!("im_{route}"))].parse().unwrap();
        assert!((re - inv).abs() < 1e-12 && im.abs() < 1e-12, "{route}");
    }
    let d = col(&h, "dev_albright0_closed");
    assert!(rows.iter().all(|r| r[d].parse::<f64>().unwrap() < 1e-10));
}

#[test]
fn limit_writes_report_and_manifest() {
    let dir = tempfile::tempdir().unwrap();
    assert!(bouncer(dir.path(), &["limit", "--n-list", "10,20,50"])
        .status
        .success());
    let v: Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("limit.json")).unwrap()).unwrap();
    let reports = v.as_array().unwrap();
    assert_eq!(reports.len(), 3);
    let slope = reports[0]["fitted_exponent"].as_f64().unwrap();
    assert!((slope + 3.0).abs() < 0.5);
    let m: Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("limit_manifest.json")).unwrap())
            .unwrap();
    assert_eq!(m["command"], "limit");
    assert_eq!(m["outputs"].as_array().unwrap().len(), 2);
    assert_eq!(m["versions"]["config_hash"].as_str().unwrap().len(), 64);
}

#[test]
fn regime_table_and_unknown_species() {
    let dir = tempfile::tempdir().unwrap();
    assert!(bouncer(dir.path(), &["regime"]).status.success());
    let (h, rows) = csv(&dir.path().join("regime.csv"));
    assert_eq!(
        h,
        ["label", "l_g_um", "height_mm", "n_estimate", "suppression"]
    );
    let cs = rows.iter().find(|r| r[0] == "cesium").unwrap();
    let n: f64 = cs[3].parse().unwrap();
    assert!((n / 62_500.0 - 1.0).abs() < 0.02);

    assert!(bouncer(dir.path(), &["regime", "--species", "Cs"])
        .status
        .success());
    let out = bouncer(dir.path(), &["regime", "--species", "unobtainium"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn reproducible_runs_are_byte_identical() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    for dir in [&a, &b] {
        assert!(bouncer(
            dir.path(),
            &["density", "--n", "4", "--grid", "301", "--reproducible"]
        )
        .status
        .success());
    }
    for name in [
        "density_n4.csv",
        "density_n4.svg",
        "density_n4_manifest.json",
    ] {
        assert_eq!(
            fs::read(a.path().join(name)).unwrap(),
            fs::read(b.path().join(name)).unwrap(),
            "{name}"
        );
    }
}

#[test]
fn config_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("species.conf");
    fs::write(&cfg, "label = heavy\nmass_kg = 1e-24\n").unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_bouncer"))
        .args(["regime", "--out-dir"])
        .arg(dir.path())
        .env("BOUNCER_CONFIG", &cfg)
        .output()
        .unwrap();
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let (_, rows) = csv(&dir.path().join("regime.csv"));
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0][0], "heavy");

    let missing = Command::new(env!("CARGO_BIN_EXE_bouncer"))
        .args(["regime", "--out-dir"])
        .arg(dir.path())
        .env("BOUNCER_CONFIG", dir.path().join("absent.conf"))
        .output()
        .unwrap();
    assert_eq!(missing.status.code(), Some(1));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("occupied");
    fs::write(&file, "").unwrap();
    assert_eq!(bouncer(&file, &["zeros"]).status.code(), Some(2));

    let over_budget = bouncer(
        dir.path(),
        &[
            "fourier",
            "--routes",
            "albright0",
            "--q-max",
            "60",
            "--grid",
            "3",
        ],
    );
    assert_eq!(over_budget.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&over_budget.stderr).starts_with("bouncer:"));

    assert_eq!(
        bouncer(dir.path(), &["fourier", "--routes", "bogus"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        bouncer(dir.path(), &["density", "--n", "0"]).status.code(),
        Some(1)
    );
}
