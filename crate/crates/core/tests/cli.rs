use std::path::PathBuf;
use std::process::{Command, Output};
use std::sync::Arc;

use qgsmash::linalg::RatMatrix;
use qgsmash::quiver::{Quiver, Representation, RepresentationFile};

fn qgsmash(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qgsmash")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn kronecker_file(name: &str, a: i64, b: i64) -> PathBuf {
    let q = Arc::new(Quiver::kronecker(2));
    let maps = vec![RatMatrix::from_i64(1, 1, &[a]), RatMatrix::from_i64(1, 1, &[b])];
    let rep = Representation::new(q, vec![1, 1], maps).unwrap();
    let path = std::env::temp_dir().join(format!("qgsmash-cli-{}-{name}.json", std::process::id()));
    std::fs::write(&path, serde_json::to_string(&RepresentationFile::from(&rep)).unwrap()).unwrap();
    path
}

#[test]
fn output_starts_with_the_header() {
    let o = qgsmash(&["qg", "build", "--setting", "k3-natural"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.lines().next(), Some("# qgsmash-output v1"));
    assert!(text.contains("1:[1,1] dim 3"));
    assert!(text.contains("1:[2] -> 2:[1] x1"));
}

#[test]
fn unknown_suite_exits_with_an_error() {
    let o = qgsmash(&["verify", "no-such-suite"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("unknown suite"));
}

#[test]
fn unknown_setting_is_rejected() {
    let o = qgsmash(&["qg", "build", "--setting", "k9-nothing"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn fast_suites_pass() {
    for suite in ["idempotents-d2d3", "qg-shapes", "fixtures-iso", "foundations"] {
        let o = qgsmash(&["--seed", "3", "verify", suite]);
        assert_eq!(o.status.code(), Some(0), "{suite}: {}", stdout(&o));
        assert!(stdout(&o).contains(": pass"));
    }
}

#[test]
fn yale_emission_lists_triplets() {
    let o = qgsmash(&["rc", "emit", "--setting", "k2-symmetric", "--format", "yale"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("B1 : 1:[1,1] -> 2:[1,1]"));
    assert!(text.contains("B1 values [1]"));
}

#[test]
fn tc_projection_decomposes() {
    let o = qgsmash(&["--seed", "3", "tc", "project", "--setting", "k3-natural", "--dims", "1,2"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("T_c (3,6,6)"));
    assert!(text.contains("summand (0,1,1) x3"));
}

#[test]
fn wrong_dimension_count_is_a_usage_error() {
    let o = qgsmash(&["tc", "project", "--setting", "k3-natural", "--dims", "1,2,3"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn eval_detects_a_hom() {
    // Hom((1,0),(a,b)) is nonzero exactly when b = 0
    let m = kronecker_file("m", 1, 0);
    let generic = kronecker_file("n1", 2, 3);
    let special = kronecker_file("n2", 5, 0);
    let run = |n: &PathBuf| stdout(&qgsmash(&["semiinv", "eval", "--m", m.to_str().unwrap(), "--n", n.to_str().unwrap()]));
    let (g, s) = (run(&generic), run(&special));
    assert!(g.lines().any(|l| l == "c 3" || l == "c -3"), "{g}");
    assert!(s.lines().any(|l| l == "c 0"), "{s}");
    for p in [m, generic, special] {
        let _ = std::fs::remove_file(p);
    }
}

#[test]
fn check_reports_a_verdict() {
    let o = qgsmash(&["semiinv", "check", "--family", "k3-natural-d", "--a", "2", "--trials", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("result pass"));
}
