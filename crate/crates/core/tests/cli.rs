use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

use distk_core::{graph6, Graph};

fn distk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_distk")).args(args).output().expect("run distk")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn write_lines(path: &Path, graphs: &[Graph]) {
    let text: String = graphs.iter().map(|g| graph6::emit(g) + "\n").collect();
    fs::write(path, text).unwrap();
}

#[test]
fn transform_examples() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("in.g6");
    let output = dir.path().join("out.g6");
    write_lines(&input, &[Graph::path(4).unwrap()]);
    let o = distk(&["transform", "-i", input.to_str().unwrap(), "--k", "3", "--out", output.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let line = fs::read_to_string(&output).unwrap();
    assert_eq!(graph6::parse(line.trim()).unwrap(), Graph::from_edges(4, &[(0, 3)]).unwrap());

    let c5 = Graph::cycle(5).unwrap();
    write_lines(&input, std::slice::from_ref(&c5));
    let o = distk(&["transform", "-i", input.to_str().unwrap(), "--k", "1"]);
    assert_eq!(stdout(&o).trim(), graph6::emit(&c5));

    fs::write(&input, "").unwrap();
    let o = distk(&["transform", "-i", input.to_str().unwrap(), "--k", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
}

#[test]
fn transform_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("bad.g6");
    fs::write(&input, "A_\nD?\n").unwrap();
    let o = distk(&["transform", "-i", input.to_str().unwrap(), "--k", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
    let o = distk(&["transform", "-i", dir.path().join("missing.g6").to_str().unwrap(), "--k", "2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn construct_summaries() {
    let o = distk(&["construct", "double-broom", "--n", "9", "--k", "3", "--a", "3", "--b", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("distance_edges=12"));
    let o = distk(&["construct", "g2-extremal", "--n", "5"]);
    let out = stdout(&o);
    assert!(out.contains("n=5") && out.contains("distance_edges=5"));
    let first = out.lines().next().unwrap();
    assert!(distk_core::is_isomorphic(&graph6::parse(first).unwrap(), &Graph::cycle(5).unwrap()));
    let o = distk(&["construct", "--json", r#"{"variant":"Spider","n":9,"legs":4,"attachment_counts":[1,1,1,1]}"#]);
    assert!(stdout(&o).contains("distance_edges=12"));
}

#[test]
fn construct_names_the_violated_constraint() {
    let o = distk(&["construct", "double-broom", "--n", "9", "--k", "3", "--a", "3", "--b", "3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("a + b + k - 1 = n"));
    let o = distk(&["construct", "spider", "--n", "9", "--legs", "2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn solve_writes_outcome_and_witnesses() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("out.json");
    let wit = dir.path().join("w.g6");
    let o = distk(&[
        "solve",
        "--n",
        "5",
        "--k",
        "2",
        "--t",
        "2",
        "--out",
        json.to_str().unwrap(),
        "--witnesses",
        wit.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("optimum 5"));
    let v: Value = serde_json::from_str(&fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(v["optimum"], 5);
    assert_eq!(v["formula_value"], 5);
    assert_eq!(v["extremal_count"], 1);
    assert_eq!(v["enumerated"], 34);
    for key in ["problem", "witnesses", "elapsed_ms"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    let lines = fs::read_to_string(&wit).unwrap();
    assert_eq!(
        lines.lines().collect::<Vec<_>>(),
        v["witnesses"].as_array().unwrap().iter().map(|w| w.as_str().unwrap()).collect::<Vec<_>>()
    );

    let o = distk(&["solve", "--n", "6", "--k", "3", "--t", "2"]);
    assert!(stdout(&o).starts_with("optimum 4"));
    let o = distk(&["solve", "--n", "8", "--k", "3", "--t", "2"]);
    assert!(stdout(&o).contains("note: k = 3, n = 8"));
}

#[test]
fn solve_from_file_and_caps() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("all5.g6");
    let graphs: Vec<Graph> = distk_core::search::enumerate(5, distk_core::search::ClassFilter::All).unwrap().collect();
    write_lines(&input, &graphs);
    let o = distk(&["solve", "--n", "5", "--k", "2", "--t", "2", "--source", "file", "-i", input.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("optimum 5"));
    let o = distk(&["solve", "--n", "6", "--k", "2", "--t", "2", "--source", "file", "-i", input.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let o = distk(&["solve", "--n", "11", "--k", "3", "--t", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("cap"));
    let o = distk(&["solve", "--n", "5", "--k", "2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_reports_are_reproducible_from_witnesses() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("reports/formula");
    let wit = dir.path().join("wit");
    let o = distk(&[
        "verify",
        "ex2-formula",
        "--n",
        "5..7",
        "--report",
        report.to_str().unwrap(),
        "--witnesses",
        wit.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v: Value = serde_json::from_str(&fs::read_to_string(report.with_extension("json")).unwrap()).unwrap();
    assert_eq!(v["claim_id"], "ex2-formula");
    assert_eq!(v["overall"], "pass");
    assert_eq!(v["n_range"], serde_json::json!([5, 6, 7]));
    assert!(v["provenance"]["tool_version"].is_string());
    let csv = fs::read_to_string(report.with_extension("csv")).unwrap();
    assert_eq!(csv.lines().count(), 4);
    for row in v["rows"].as_array().unwrap() {
        assert_eq!(row["match"], true);
        let path = row["witnesses_path"].as_str().unwrap();
        let claim = row["computed"].as_u64().unwrap().to_string();
        let o = distk(&["certify", "-i", path, "--k", "2", "--t", "2", "--claim", &claim]);
        assert_eq!(o.status.code(), Some(0));
    }
}

#[test]
fn verify_exit_codes() {
    let o = distk(&["verify", "ex3-noniso"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["rows"][0]["computed"]["isomorphic"], false);
    // The exact value at n = 8 equals the bound, so the "> 9" check fails.
    let o = distk(&["verify", "ex3-n8-exception"]);
    assert_eq!(o.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["rows"][0]["computed"], 9);
    assert_eq!(v["overall"], "fail");
    assert_eq!(distk(&["verify", "no-such-claim"]).status.code(), Some(2));
    assert_eq!(distk(&["verify", "ex3-small-n", "--n", "8"]).status.code(), Some(2));
    assert_eq!(distk(&["verify", "ex2-formula", "--n", "9..5"]).status.code(), Some(2));
    assert!(stdout(&distk(&["verify", "list"])).lines().any(|l| l == "ex3-lower-bound"));
}

#[test]
fn certify_examples() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("g.g6");
    write_lines(&f, &[Graph::complete(5).unwrap()]);
    let o = distk(&["certify", "-i", f.to_str().unwrap(), "--k", "2", "--t", "2", "--claim", "0"]);
    assert_eq!(o.status.code(), Some(0));
    write_lines(&f, &[Graph::cycle(6).unwrap()]);
    let o = distk(&["certify", "-i", f.to_str().unwrap(), "--k", "3", "--t", "2", "--claim", "2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("line 1: FAIL omega=2 edges=3"));
    let families = distk_core::constructions::enumerate_g2_extremal_family(6).unwrap();
    write_lines(&f, &families);
    let o = distk(&["certify", "-i", f.to_str().unwrap(), "--k", "2", "--t", "2", "--claim", "7"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn thread_override_does_not_change_results() {
    let run = |threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_distk"))
            .args(["solve", "--n", "7", "--k", "3", "--t", "2", "--shards", "5"])
            .env("DISTK_THREADS", threads)
            .output()
            .unwrap()
            .stdout
    };
    assert_eq!(run("1"), run("3"));
}
