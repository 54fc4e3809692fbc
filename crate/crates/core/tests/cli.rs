use std::path::PathBuf;
use std::process::Command;

use zoll_ech::capseq::{dstar_capacities, Surface};
use zoll_ech::exact::ExactQuantity;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("zoll-ech").chain(args.iter().copied());
    let code = zoll_ech::cli::run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("zoll-ech-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn s2_width_certificate() {
    let (code, out, _) = run(&["width", "--domain", "dstar-s2"]);
    assert_eq!(code, 0);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("2pi"));
    let cert = lines.next().unwrap();
    assert!(cert.starts_with("upper: c_3 ratio at k=3; lower: "), "{cert}");
}

#[test]
fn capacity_lists() {
    let (_, s2, _) = run(&["capacities", "--domain", "dstar-s2", "--count", "9", "--exact"]);
    assert_eq!(s2, "0, 4pi, 4pi, 4pi, 8pi, 8pi, 8pi, 8pi, 8pi\n");
    let (_, rp2, _) = run(&["capacities", "--domain", "dstar-rp2", "--count", "7", "--exact"]);
    assert_eq!(rp2, "0, 4pi, 4pi, 4pi, 4pi, 4pi, 8pi\n");
    let (_, ell, _) = run(&["capacities", "--domain", "ellipsoid:1,3/2", "--count", "6"]);
    assert_eq!(ell, "0, 1, 3/2, 2, 5/2, 3\n");
}

#[test]
fn obstruction_exits_one_with_witness() {
    let (code, out, err) = run(&["obstruct", "--inner", "ball:7", "--outer", "dstar-s2", "--upto", "10"]);
    assert_eq!(code, 1);
    assert_eq!(out, "fails_at k=3: 14 > 4pi\n");
    assert!(err.contains("fails_at k=3"));
    let (code, out, _) = run(&["obstruct", "--inner", "ball:2pi", "--outer", "dstar-rp2", "--upto", "300"]);
    assert_eq!((code, out.as_str()), (0, "holds for k <= 300\n"));
}

#[test]
fn json_round_trips_exact_values() {
    let (code, out, _) = run(&["capacities", "--domain", "dstar-s2", "--count", "40", "--format", "json"]);
    assert_eq!(code, 0);
    let doc: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(doc["schema"], "zoll-ech/1");
    let terms: Vec<ExactQuantity> = serde_json::from_value(doc["terms"].clone()).unwrap();
    assert_eq!(terms, dstar_capacities(Surface::S2).prefix(40).unwrap());
    assert_eq!(doc["terms"][1], serde_json::json!({"num": 4, "den": 1, "pi": 1}));
}

#[test]
fn every_json_document_is_versioned() {
    let cases: &[&[&str]] = &[
        &["spectrum", "--model", "s3", "--count", "5", "--format", "json"],
        &["index", "--model", "sstar-rp2", "--alpha", "3,1", "--beta", "0,0", "--format", "json"],
        &["generators", "--model", "sstar-s2", "--max-grading", "6", "--format", "json"],
        &["umap", "--model", "s3", "--alpha", "2,1", "--format", "json"],
        &["obstruct", "--inner", "ball:1", "--outer", "ball:2", "--upto", "5", "--format", "json"],
        &["width", "--domain", "dstar-rp2", "--format", "json"],
        &["moment-limit", "--variant", "hemisphere", "--ladder", "1e-2,1e-3", "--format", "json"],
    ];
    for args in cases {
        let (code, out, err) = run(args);
        assert_eq!(code, 0, "{args:?}: {err}");
        let doc: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(doc["schema"], "zoll-ech/1", "{args:?}");
    }
}

#[test]
fn spectrum_matches_formula() {
    let (code, out, _) = run(&["spectrum", "--model", "sstar-s2", "--count", "50"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 51);
    assert!(out.lines().skip(1).all(|l| l.ends_with("yes")));
}

#[test]
fn index_prints_its_pieces() {
    let (code, out, _) = run(&["index", "--model", "sstar-rp2", "--alpha", "3,1", "--beta", "0,0"]);
    assert_eq!(code, 0);
    for key in ["c_tau: ", "Q_tau: ", "CZ(alpha): ", "CZ(beta): ", "I: "] {
        assert!(out.contains(key), "{key} missing in {out}");
    }
    let (code, _, err) = run(&["index", "--model", "sstar-s2", "--alpha", "1,0", "--beta", "0,0"]);
    assert_eq!(code, 2, "{err}");
}

#[test]
fn umap_walks_down_to_the_empty_set() {
    let (code, out, _) = run(&["umap", "--model", "sstar-s2", "--alpha", "1,3"]);
    assert_eq!(code, 0);
    let gradings: Vec<i64> = out.lines().skip(1).map(|l| l.split('\t').nth(2).unwrap().parse().unwrap()).collect();
    assert_eq!(gradings.last(), Some(&0));
    assert!(gradings.windows(2).all(|w| w[0] - w[1] == 2));
    let (code, out, _) = run(&["umap", "--model", "s3", "--alpha", "0,2", "--steps", "1"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 3);
}

#[test]
fn boundary_files_and_area() {
    let csv = scratch("hemi.csv");
    let json = scratch("hemi.json");
    for path in [&csv, &json] {
        let p = path.to_str().unwrap();
        let (code, _, err) = run(&["moment-boundary", "--variant", "hemisphere", "--epsilon", "1e-4", "--samples", "32", "--out", p]);
        assert_eq!(code, 0, "{err}");
    }
    assert!(std::fs::read_to_string(&csv).unwrap().starts_with("j,x,y,err\n"));
    let (_, a_csv, _) = run(&["area", "--curve", csv.to_str().unwrap()]);
    let (_, a_json, _) = run(&["area", "--curve", json.to_str().unwrap()]);
    assert_eq!(a_csv, a_json);
    let area: f64 = a_csv.trim().parse().unwrap();
    let half_square = 2.0 * std::f64::consts::PI.powi(2);
    assert!(area < half_square && area > 0.98 * half_square, "{area}");
    let (code, _, _) = run(&["area", "--curve", "/nonexistent/curve.csv"]);
    assert_eq!(code, 2);
}

#[test]
fn limit_output_is_reproducible() {
    let a = scratch("full-a.csv");
    let b = scratch("full-b.csv");
    let (c1, o1, _) = run(&["moment-limit", "--variant", "full", "--out", a.to_str().unwrap()]);
    let (c2, o2, _) = run(&["moment-limit", "--variant", "full", "--out", b.to_str().unwrap()]);
    assert_eq!((c1, c2), (0, 0));
    assert_eq!(o1, o2);
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let (_, closed, _) = run(&["area", "--curve", a.to_str().unwrap(), "--close"]);
    let area: f64 = closed.trim().parse().unwrap();
    assert!((area - 4.0 * std::f64::consts::PI.powi(2)).abs() < 1e-3);
}

#[test]
fn usage_errors() {
    assert_eq!(run(&["capacities", "--domain", "dstar-s2"]).0, 2);
    assert_eq!(run(&["capacities", "--domain", "ball:-1", "--count", "3"]).0, 2);
    assert_eq!(run(&["capacities", "--domain", "dstar-s2", "--count", "3", "--exact", "--float"]).0, 2);
    assert_eq!(run(&["generators", "--model", "s3", "--max-grading", "3"]).0, 2);
    assert_eq!(run(&["moment-boundary", "--variant", "full", "--epsilon", "2", "--samples", "8"]).0, 2);
    assert_eq!(run(&["moment-boundary", "--variant", "full", "--epsilon", "0.01", "--samples", "7"]).0, 2);
}

#[test]
fn binary_honours_thread_cap() {
    let bin = env!("CARGO_BIN_EXE_zoll-ech");
    let args = ["moment-boundary", "--variant", "full", "--epsilon", "1e-3", "--samples", "16"];
    let one = Command::new(bin).args(args).env("ZOLL_ECH_THREADS", "1").output().unwrap();
    let many = Command::new(bin).args(args).env("ZOLL_ECH_THREADS", "4").output().unwrap();
    assert!(one.status.success() && many.status.success());
    assert_eq!(one.stdout, many.stdout);
    let bad = Command::new(bin).args(args).env("ZOLL_ECH_THREADS", "zero").output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
    let fail = Command::new(bin).args(["obstruct", "--inner", "ball:7", "--outer", "dstar-s2", "--upto", "10"]).output().unwrap();
    assert_eq!(fail.status.code(), Some(1));
}
