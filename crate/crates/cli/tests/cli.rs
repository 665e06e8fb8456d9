//! End-to-end runs of the `toricstab` binary.

use std::path::PathBuf;
use std::process::{Command, Output};

use toricstab_cli::docs::{DestabDoc, LimitsDoc, OracleDoc, ReportDoc, StratumTableDoc};
use toricstab_core::{qr, Rational, VecQ};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_toricstab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn ok(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn failing(args: &[&str]) -> (i32, String) {
    let out = run(args);
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("toricstab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, contents).unwrap();
    p
}

#[test]
fn report_barycenters() {
    let p2: ReportDoc = serde_json::from_str(&ok(&["report", "corpus:P2"])).unwrap();
    assert_eq!(p2.barycenter, ["0/1", "0/1"]);
    assert_eq!(p2.verdict, "semistable");
    let p112: ReportDoc = serde_json::from_str(&ok(&["report", "corpus:P(1,1,2)"])).unwrap();
    assert_eq!(p112.barycenter, ["1/3", "-1/3"]);
    assert_eq!(p112.volume, "4/1");
}

#[test]
fn report_directions() {
    let doc: ReportDoc = serde_json::from_str(&ok(&[
        "report",
        "corpus:P(1,1,2)",
        "--v",
        "0,-1",
        "--v",
        "1,0",
    ]))
    .unwrap();
    let d = &doc.directions[0];
    assert_eq!(d.futaki, "-1/3");
    assert_eq!(d.mu, ["-1/4", "-sqrt(1/2)"]);
    let d = &doc.directions[1];
    // A − S = Fut
    assert_eq!(d.futaki, "-1/3");
    assert_eq!((d.a.as_str(), d.s.as_str()), ("1/1", "4/3"));
}

#[test]
fn malformed_coefficient_exits_2() {
    let p = temp_file(
        "bad.json",
        r#"{"name":"bad","rays":[[1,0],[0,1],[-1,-1]],"coeffs":["1","0","0"]}"#,
    );
    let (code, err) = failing(&["report", p.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("coefficient must be < 1"), "{err}");
}

#[test]
fn input_errors_exit_2() {
    assert_eq!(failing(&["report", "corpus:nope"]).0, 2);
    assert_eq!(failing(&["report", "/nonexistent.json"]).0, 2);
    assert_eq!(failing(&["report", "corpus:P2", "--v", "1,2,3"]).0, 2);
    assert_eq!(failing(&["report", "corpus:P2", "--v", "0,0"]).0, 2);
    assert_eq!(failing(&["bogus"]).0, 2);
}

#[test]
fn delta_values() {
    for (name, delta) in [("P(1,1,2)", "3/4"), ("P(1,1,3)", "3/5")] {
        let doc: DestabDoc =
            serde_json::from_str(&ok(&["destabilize", &format!("corpus:{name}")])).unwrap();
        assert_eq!(doc.delta, delta);
        assert!(doc.sigma1.is_some());
    }
    let text = ok(&["destabilize", "corpus:P2"]);
    let doc: DestabDoc = serde_json::from_str(&text).unwrap();
    assert_eq!(doc.m_mu, ["0/1", "0/1"]);
    assert!(!text.contains("v_star"));
}

#[test]
fn destabilize_round_trip() {
    let text = ok(&["destabilize", "corpus:dP7"]);
    let doc: DestabDoc = serde_json::from_str(&text).unwrap();
    assert_eq!(serde_json::to_string_pretty(&doc).unwrap() + "\n", text);
    let v = doc.m_mu_value().unwrap();
    assert_eq!(v.mu1, qr(-4, 25));
    assert_eq!(v.mu2, toricstab_core::SignedSquare::new(-1, qr(32, 409)));
    assert_eq!(doc.delta_value().unwrap(), qr(21, 25));
    assert_eq!(
        doc.v_star_value().unwrap(),
        Some(VecQ::from_ints(&[-1, -1]))
    );
}

#[test]
fn stratify_examples() {
    let t: StratumTableDoc = serde_json::from_str(&ok(&[
        "stratify",
        "corpus:P(1,1,3)",
        "corpus:P2",
        "corpus:P(1,1,2)",
    ]))
    .unwrap();
    let mu1: Vec<Rational> = t.values().unwrap().into_iter().map(|v| v.mu1).collect();
    assert_eq!(mu1, [qr(0, 1), qr(-1, 4), qr(-2, 5)]);
    assert_eq!(t.strata[0].verdict, "semistable");

    let relabeled = temp_file(
        "relabeled.json",
        r#"{"name":"P(1,1,2)-relabeled","rays":[[-1,-2],[0,1],[1,0]]}"#,
    );
    let t: StratumTableDoc = serde_json::from_str(&ok(&[
        "stratify",
        "corpus:P(1,1,2)",
        relabeled.to_str().unwrap(),
    ]))
    .unwrap();
    assert_eq!(t.strata.len(), 1);
    assert_eq!(t.strata[0].members, ["P(1,1,2)", "P(1,1,2)-relabeled"]);

    let t: StratumTableDoc = serde_json::from_str(&ok(&["stratify", "corpus:P1xP1"])).unwrap();
    assert_eq!(t.strata.len(), 1);
}

#[test]
fn stratify_rejects_invalid_members() {
    let bad = temp_file(
        "bad-member.json",
        r#"{"name":"broken","rays":[[1,0],[0,1]]}"#,
    );
    let (code, err) = failing(&["stratify", "corpus:P2", bad.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("broken"), "{err}");
}

#[test]
fn oracle_examples() {
    let doc: OracleDoc =
        serde_json::from_str(&ok(&["oracle", "corpus:P2", "--v", "1,0", "--mmax", "12"])).unwrap();
    assert!(doc.rows.iter().all(|r| r.first_moment == "0/1"));
    assert_eq!(doc.f0_target, "0/1");
    assert!(doc.lambda_exact);

    let dump = std::env::temp_dir().join(format!("toricstab-dump-{}.txt", std::process::id()));
    let doc: OracleDoc = serde_json::from_str(&ok(&[
        "oracle",
        "corpus:P(1,1,2)",
        "--v=0,-1",
        "--mmax",
        "60",
        "--dump",
        dump.to_str().unwrap(),
    ]))
    .unwrap();
    let est: f64 = doc.decimal.f0_est.parse().unwrap();
    assert!((est - 1.0 / 3.0).abs() < 1e-3, "{est}");
    assert!(doc.lambda_exact);
    let columns = std::fs::read_to_string(dump).unwrap();
    assert_eq!(columns.lines().filter(|l| !l.starts_with('#')).count(), 60);

    assert_eq!(failing(&["oracle", "corpus:P2", "--v", "0,0"]).0, 2);
    assert_eq!(
        failing(&["oracle", "corpus:P2", "--v", "1,0", "--mmax", "2"]).0,
        2
    );
}

#[test]
fn limits_examples() {
    let tri = temp_file(
        "tri.json",
        r#"{"weights":[[0,0],[1,0],[0,1]],"support":[0,1,2]}"#,
    );
    let tri = tri.to_str().unwrap();
    let doc: LimitsDoc = serde_json::from_str(&ok(&["limits", tri, "--v", "1,2"])).unwrap();
    assert_eq!(doc.limit_support, [0]);
    assert_eq!(doc.face_weights, [["0/1", "0/1"]]);
    assert_eq!(doc.status, "moved");

    let seg = temp_file("seg.json", r#"{"weights":[[0,0],[1,0]],"support":[0,1]}"#);
    let doc: LimitsDoc =
        serde_json::from_str(&ok(&["limits", seg.to_str().unwrap(), "--v", "0,1"])).unwrap();
    assert!(doc.fixed);
    assert_eq!(doc.status, "fixed");
    assert_eq!(doc.limit_support, doc.support);

    assert_eq!(failing(&["limits", tri, "--v", "0,0"]).0, 2);
    let junk = temp_file("junk.json", "{");
    assert_eq!(
        failing(&["limits", junk.to_str().unwrap(), "--v", "1,0"]).0,
        2
    );
}

#[test]
fn out_flag_and_thread_independence() {
    let one = ok(&["stratify", "--corpus", "--threads", "1"]);
    let eight = ok(&["stratify", "--corpus", "--threads", "8"]);
    assert_eq!(one, eight);
    let path = std::env::temp_dir().join(format!("toricstab-out-{}.json", std::process::id()));
    assert_eq!(
        ok(&["stratify", "--corpus", "--out", path.to_str().unwrap()]),
        ""
    );
    assert_eq!(std::fs::read_to_string(path).unwrap(), one);
}

#[test]
fn digits_change_only_decimals() {
    let a: DestabDoc =
        serde_json::from_str(&ok(&["destabilize", "corpus:F1", "--digits", "3"])).unwrap();
    let b: DestabDoc =
        serde_json::from_str(&ok(&["destabilize", "corpus:F1", "--digits", "30"])).unwrap();
    assert_eq!(a.decimal.delta, "0.857");
    assert_eq!(a.m_mu, b.m_mu);
    assert_eq!(a.certificate, b.certificate);
    assert_ne!(a.decimal, b.decimal);
}
