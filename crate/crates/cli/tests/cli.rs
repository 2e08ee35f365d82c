use std::io::Write;
use std::process::{Command, Output};

use multithreshold::representation::RepresentationJson;
use serde_json::Value;

fn mthresh(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mthresh"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_str(stdout(out).trim()).expect("stdout is one JSON value")
}

#[test]
fn verify_examples() {
    let ok = mthresh(&[
        "verify",
        "--family",
        "pk2:2",
        "--thetas",
        "-1,1",
        "--ranks",
        "-2,2,-4,4",
    ]);
    assert_eq!(code(&ok), 0);
    assert_eq!(stdout(&ok).trim(), "valid");

    let bad = mthresh(&[
        "verify", "--family", "pk2:2", "--thetas", "-1,1", "--ranks", "0,0,0,0", "--json",
    ]);
    assert_eq!(code(&bad), 1);
    let v = json(&bad);
    assert_eq!(v["valid"], false);
    assert_eq!(v["discrepancy"]["pair"], serde_json::json!([0, 2]));
    assert_eq!(v["discrepancy"]["weight"], "0");

    let fig = mthresh(&[
        "verify",
        "--family",
        "pk3:2",
        "--thetas",
        "-1,1,5",
        "--ranks",
        "1/4,1/4,1/4,5/2,5/2,5/2",
    ]);
    assert_eq!(code(&fig), 0);
}

#[test]
fn input_errors_exit_2() {
    let cases: Vec<Vec<&str>> = vec![
        vec![
            "verify",
            "--family",
            "pk2:2",
            "--thetas",
            "-1,1",
            "--ranks",
            "0.5,0,0,0",
        ],
        vec![
            "verify", "--family", "pk2:2", "--thetas", "1,-1", "--ranks", "0,0,0,0",
        ],
        vec![
            "verify", "--family", "pk9:2", "--thetas", "-1,1", "--ranks", "0,0,0,0",
        ],
        vec!["tset"],
        vec!["tset", "--family", "pk2:2", "--edges", "x.txt"],
        vec!["tset", "--edges", "/nonexistent/graph.txt"],
        vec!["decide", "--family", "pk2:2"],
        vec![
            "decide", "--family", "pk2:2", "--thetas", "-1,1", "--k", "2",
        ],
        vec!["tdim", "--family", "pk2:4"],
        vec!["experiment", "no-such-claim"],
        vec!["tset", "--family", "pk2:2", "--timeout", "-1"],
    ];
    for args in cases {
        assert_eq!(code(&mthresh(&args)), 2, "{args:?}");
    }
}

#[test]
fn edges_and_ranks_files() {
    let dir = tempfile::tempdir().unwrap();
    let graph = dir.path().join("g.txt");
    std::fs::File::create(&graph)
        .unwrap()
        .write_all(b"# two disjoint edges\n4 2\n0 1\n2 3\n")
        .unwrap();
    let ranks = dir.path().join("r.txt");
    std::fs::File::create(&ranks)
        .unwrap()
        .write_all(b"-2 2\n-4\n4\n")
        .unwrap();
    let ranks_arg = format!("@{}", ranks.display());
    let g = graph.to_str().unwrap();
    let out = mthresh(&[
        "verify", "--edges", g, "--thetas", "-1,1", "--ranks", &ranks_arg,
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let out = mthresh(&["tset", "--edges", g]);
    assert_eq!(stdout(&out).trim(), "(1, inf)");
}

#[test]
fn tset_examples() {
    let out = mthresh(&["tset", "--family", "pk2:2"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).trim(), "(1, inf)");

    let out = mthresh(&["tset", "--family", "pk2:3", "--json"]);
    let v = json(&out);
    assert_eq!(v["display"], "(3, inf)");
    assert_eq!(
        v["set"],
        serde_json::json!([{"lo": "3", "lo_closed": false, "hi": "inf", "hi_closed": false}])
    );
    assert!(v["stats"]["nodes"].as_u64().unwrap() > 0);
}

#[test]
fn decide_examples() {
    let out = mthresh(&["decide", "--family", "pk2:4", "--thetas", "-1,1,3"]);
    assert_eq!(code(&out), 1);
    assert_eq!(stdout(&out).lines().next(), Some("infeasible"));

    let out = mthresh(&[
        "decide",
        "--family",
        "pk2:3",
        "--thetas",
        "-1,1,4",
        "--json",
        "--workers",
        "2",
    ]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["outcome"], "feasible");
    let rep: RepresentationJson = serde_json::from_value(v["witness"].clone()).unwrap();
    assert!(rep.into_checked().is_ok());
}

#[test]
fn theta_example_has_a_checked_witness() {
    let out = mthresh(&["theta", "--family", "pk3:2", "--json"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["outcome"], "exact");
    assert_eq!(v["theta"], 3);
    let rep: RepresentationJson = serde_json::from_value(v["witness"].clone()).unwrap();
    let rep = rep.into_checked().unwrap();
    assert_eq!(rep.thresholds().k(), 3);

    let out = mthresh(&["theta", "--family", "pk3:2", "--kmax", "2", "--json"]);
    assert_eq!(code(&out), 1);
    assert_eq!(json(&out)["outcome"], "exceeds_cap");
}

#[test]
fn tdim_outputs() {
    let out = mthresh(&["tdim", "--family", "kpartite:3,3", "--json"]);
    assert_eq!(
        json(&out),
        serde_json::json!({"outcome": "exact", "value": 3})
    );
    let out = mthresh(&["tdim", "--family", "pk2:3", "--kmax", "2"]);
    assert_eq!(code(&out), 1);
}

#[test]
fn timeout_exits_3_with_stats() {
    let out = mthresh(&["tset", "--family", "pk2:4", "--timeout", "0", "--json"]);
    assert_eq!(code(&out), 3);
    let v = json(&out);
    assert_eq!(v["outcome"], "timeout");
    assert!(v["stats"].is_object());
    let out = mthresh(&["decide", "--family", "pk2:4", "--k", "3", "--timeout", "0"]);
    assert_eq!(code(&out), 3);
}

fn without_runtime(text: &str) -> Vec<Value> {
    text.lines()
        .map(|l| {
            let mut v: Value = serde_json::from_str(l).unwrap();
            v.as_object_mut().unwrap().remove("runtime_ms");
            v
        })
        .collect()
}

#[test]
fn experiment_all_is_deterministic_and_passes() {
    let a = mthresh(&["experiment", "all", "--json"]);
    assert_eq!(code(&a), 0, "{}", stdout(&a));
    let b = mthresh(&["experiment", "all", "--json"]);
    let (ra, rb) = (without_runtime(&stdout(&a)), without_runtime(&stdout(&b)));
    assert_eq!(ra, rb);
    assert_eq!(ra.len(), 10);
    for r in &ra {
        assert_eq!(r["pass"], true, "{r}");
        assert_eq!(r["expected"], r["observed"]);
    }
    let ids: Vec<&str> = ra.iter().map(|r| r["claim"].as_str().unwrap()).collect();
    assert_eq!(ids[..3], ["constructions", "tset-2k2", "gp-sharpness-p3"]);
}

#[test]
fn single_experiment_text() {
    let out = mthresh(&["experiment", "cozzens-k33"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).starts_with("PASS cozzens-k33: expected 3 = 3, observed 3 = 3"));
}
