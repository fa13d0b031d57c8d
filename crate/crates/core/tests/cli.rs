use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use subtree_match::cli::load_graph;
use subtree_match::{run_filter, FilterConfig, MatchReport};

const BIN: &str = env!("CARGO_BIN_EXE_subtree-match");

fn run(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

struct Fixtures {
    dir: tempfile::TempDir,
}

impl Fixtures {
    fn new() -> Self {
        let dir = tempfile::tempdir().unwrap();
        fs::write(dir.path().join("triangle.txt"), "# triangle\nn 3\n0 1\n1 2\n0 2\n").unwrap();
        fs::write(dir.path().join("p3.txt"), "0 1\n1 2\n").unwrap();
        fs::write(
            dir.path().join("k4.json"),
            r#"{"n": 4, "edges": [[0,1],[0,2],[0,3],[1,2],[1,3],[2,3]]}"#,
        )
        .unwrap();
        Fixtures { dir }
    }

    fn path(&self, name: &str) -> PathBuf {
        self.dir.path().join(name)
    }

    fn arg(&self, name: &str) -> String {
        self.path(name).to_string_lossy().into_owned()
    }
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn triangle_in_k4_matches() {
    let f = Fixtures::new();
    let o = run(&["match", "--target", &f.arg("k4.json"), "--query", &f.arg("triangle.txt"), "--mode", "exact"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "MATCH");
    assert!(String::from_utf8_lossy(&o.stderr).contains("\"seed\":0"));
}

#[test]
fn triangle_in_path_does_not() {
    let f = Fixtures::new();
    let o = run(&["match", "--target", &f.arg("p3.txt"), "--query", &f.arg("triangle.txt")]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o).trim(), "NO-MATCH");
}

#[test]
fn usage_errors_exit_two() {
    let f = Fixtures::new();
    let cases: Vec<Vec<String>> = vec![
        vec!["match", "--target", &f.arg("k4.json"), "--query", &f.arg("triangle.txt"), "--layers", "0"],
        vec!["match", "--target", &f.arg("missing.txt"), "--query", &f.arg("triangle.txt")],
        vec!["match", "--target", &f.arg("k4.json"), "--query", &f.arg("triangle.txt"), "--bogus"],
        vec!["match", "--target", &f.arg("k4.json"), "--query", &f.arg("triangle.txt"), "--mode", "fast"],
        vec!["bench", "--dataset", &f.arg("missing.jsonl")],
        vec!["scaling", "--sizes", "100,100,100,100"],
        vec!["frobnicate"],
    ]
    .into_iter()
    .map(|v| v.into_iter().map(String::from).collect())
    .collect();
    for args in cases {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let o = run(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn malformed_graph_is_a_runtime_error() {
    let f = Fixtures::new();
    fs::write(f.path("bad.txt"), "0 0\n").unwrap();
    let o = run(&["match", "--target", &f.arg("bad.txt"), "--query", &f.arg("triangle.txt")]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("self-loop"));
}

#[test]
fn report_agrees_with_library() {
    let f = Fixtures::new();
    let report = f.path("report.json");
    let o = run(&[
        "match", "--target", &f.arg("k4.json"), "--query", &f.arg("triangle.txt"),
        "--mode", "exact", "--layers", "3", "--report", path_str(&report),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let from_cli: MatchReport = serde_json::from_str(&fs::read_to_string(&report).unwrap()).unwrap();
    let target = load_graph(&fs::read_to_string(f.path("k4.json")).unwrap()).unwrap();
    let query = load_graph(&fs::read_to_string(f.path("triangle.txt")).unwrap()).unwrap();
    let direct = run_filter(&target, &query, &FilterConfig::exact(3)).unwrap();
    assert_eq!(from_cli.decision, direct.decision);
    assert_eq!(from_cli.layers, direct.layers);
    assert_eq!(from_cli.termination, direct.termination);
}

#[test]
fn oracle_subcommand() {
    let f = Fixtures::new();
    let o = run(&["oracle", "--target", &f.arg("k4.json"), "--query", &f.arg("triangle.txt"), "--semantics", "induced", "--budget-ms", "1000"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("FOUND "));
    let o = run(&["oracle", "--target", &f.arg("p3.txt"), "--query", &f.arg("triangle.txt")]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o).trim(), "NOT-FOUND");
}

#[test]
fn gen_and_bench_are_reproducible() {
    let f = Fixtures::new();
    fs::write(f.path("gen.json"), r#"{"pair_count": 6, "seed": 4}"#).unwrap();
    for name in ["a.jsonl", "b.jsonl"] {
        let o = run(&["gen", "--config", &f.arg("gen.json"), "--out", &f.arg(name)]);
        assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    }
    assert_eq!(fs::read(f.path("a.jsonl")).unwrap(), fs::read(f.path("b.jsonl")).unwrap());
    assert_eq!(
        fs::read(f.path("a.jsonl.manifest.json")).unwrap(),
        fs::read(f.path("b.jsonl.manifest.json")).unwrap()
    );
    for (mode, report) in [("exact", "r1.json"), ("exact", "r2.json"), ("sampled", "r3.json"), ("sampled", "r4.json")] {
        let o = run(&["bench", "--dataset", &f.arg("a.jsonl"), "--mode", mode, "--seed", "7", "--report", &f.arg(report)]);
        assert_eq!(o.status.code(), Some(0));
        assert!(stdout(&o).contains("accuracy"));
    }
    assert_eq!(fs::read(f.path("r1.json")).unwrap(), fs::read(f.path("r2.json")).unwrap());
    assert_eq!(fs::read(f.path("r3.json")).unwrap(), fs::read(f.path("r4.json")).unwrap());
    let metrics: serde_json::Value = serde_json::from_slice(&fs::read(f.path("r1.json")).unwrap()).unwrap();
    assert_eq!(metrics["false_negative_rate"], 0.0);
    assert!(metrics.get("timing").is_none());
}

#[test]
fn scaling_subcommand() {
    let f = Fixtures::new();
    let o = run(&["scaling", "--sizes", "60,120,240,480", "--instances", "1", "--repeats", "1", "--report", &f.arg("s.json")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("slope"));
    let v: serde_json::Value = serde_json::from_slice(&fs::read(f.path("s.json")).unwrap()).unwrap();
    assert!(v["ops_slope"].is_f64());
    assert!(v.get("time_slope").is_none());
}
