//! End-to-end checks of the binary: exit codes, output shapes, determinism,
//! parameter-echo reproducibility.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_vcm"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_str(&stdout(out)).expect("valid JSON on stdout")
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn write_wel(dir: &Path, name: &str, content: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, content).unwrap();
    path
}

fn lesmis() -> String {
    concat!(env!("CARGO_MANIFEST_DIR"), "/../../data/lesmis.wel").to_string()
}

#[test]
fn score_direct_neighbor_unattenuated() {
    let dir = tempfile::tempdir().unwrap();
    let graph = write_wel(dir.path(), "g.wel", "s\tt\t1\n");
    let out = run(&[
        "score", "--graph", graph.to_str().unwrap(),
        "--source", "s", "--target", "t", "--alpha", "0.5",
    ]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["score"], 1.0);
    assert_eq!(v["alpha"], 0.5);
    assert_eq!(v["command"], "score");
}

#[test]
fn score_self_is_one() {
    let dir = tempfile::tempdir().unwrap();
    let graph = write_wel(dir.path(), "g.wel", "x\ty\t2\n");
    let out = run(&[
        "score", "--graph", graph.to_str().unwrap(),
        "--source", "x", "--target", "x",
    ]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["score"], 1.0);
}

#[test]
fn unknown_vertex_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let graph = write_wel(dir.path(), "g.wel", "s\tt\t1\n");
    let out = run(&[
        "score", "--graph", graph.to_str().unwrap(),
        "--source", "s", "--target", "nope",
    ]);
    assert_eq!(code(&out), 3);
    assert!(!out.stderr.is_empty());
}

#[test]
fn missing_graph_file_exits_2() {
    let out = run(&[
        "score", "--graph", "/nonexistent/g.wel",
        "--source", "s", "--target", "t",
    ]);
    assert_eq!(code(&out), 2);
}

#[test]
fn malformed_file_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let graph = write_wel(dir.path(), "bad.wel", "s\tt\t0\n");
    let out = run(&[
        "score", "--graph", graph.to_str().unwrap(),
        "--source", "s", "--target", "t",
    ]);
    assert_eq!(code(&out), 2);
}

#[test]
fn usage_error_exits_1() {
    let out = run(&["score", "--source", "s", "--target", "t"]);
    assert_eq!(code(&out), 1);
    let out = run(&["frobnicate"]);
    assert_eq!(code(&out), 1);
}

#[test]
fn negative_alpha_exits_1() {
    let dir = tempfile::tempdir().unwrap();
    let graph = write_wel(dir.path(), "g.wel", "s\tt\t1\n");
    let out = run(&[
        "score", "--graph", graph.to_str().unwrap(),
        "--source", "s", "--target", "t", "--alpha", "-1",
    ]);
    assert_eq!(code(&out), 1);
    let out = run(&[
        "sweep", "--graph", graph.to_str().unwrap(),
        "--source", "s", "--alphas", "0.5,-0.5",
    ]);
    assert_eq!(code(&out), 1);
}

#[test]
fn rank_top_one_is_heaviest_neighbor() {
    let dir = tempfile::tempdir().unwrap();
    let graph = write_wel(dir.path(), "star.wel", "s\ta\t2\ns\tb\t1\n");
    let out = run(&[
        "rank", "--graph", graph.to_str().unwrap(),
        "--source", "s", "--top", "1",
    ]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["entries"].as_array().unwrap().len(), 1);
    assert_eq!(v["entries"][0]["label"], "a");
    assert_eq!(v["entries"][0]["rank"], 1);
}

#[test]
fn rank_missing_level_is_empty_success() {
    let dir = tempfile::tempdir().unwrap();
    let graph = write_wel(dir.path(), "g.wel", "s\ta\t1\n");
    let out = run(&[
        "rank", "--graph", graph.to_str().unwrap(),
        "--source", "s", "--level", "99",
    ]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["entries"].as_array().unwrap().len(), 0);
}

#[test]
fn rank_level_filter_keeps_only_that_level() {
    let dir = tempfile::tempdir().unwrap();
    let graph = write_wel(dir.path(), "g.wel", "s\ta\t1\na\tb\t1\nb\tc\t1\n");
    let out = run(&[
        "rank", "--graph", graph.to_str().unwrap(),
        "--source", "s", "--level", "2",
    ]);
    let v = json(&out);
    let entries = v["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 1);
    assert_eq!(entries[0]["label"], "b");
    assert_eq!(entries[0]["level"], 2);
}

#[test]
fn sweep_single_alpha_single_column() {
    let dir = tempfile::tempdir().unwrap();
    let graph = write_wel(dir.path(), "g.wel", "s\ta\t2\ns\tb\t1\n");
    let out = run(&[
        "sweep", "--graph", graph.to_str().unwrap(),
        "--source", "s", "--alphas", "1.0",
    ]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["columns"].as_array().unwrap().len(), 1);
    assert_eq!(v["columns"][0]["alpha"], 1.0);
    assert_eq!(v["columns"][0]["entries"][0]["label"], "a");
}

#[test]
fn sweep_lesmis_tsv_grid_shape() {
    let out = run(&[
        "sweep", "--graph", &lesmis(), "--undirected",
        "--source", "Valjean", "--level-share",
        "--alphas", "0,0.33,0.66,1.0,1.33,1.66,2.0,2.33,2.66,3.0",
        "--format", "tsv",
    ]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("# command=sweep"));
    let header = lines.next().unwrap();
    assert_eq!(header.split('\t').count(), 11); // rank + 10 alphas
    let first = lines.next().unwrap();
    assert!(first.starts_with("1\t"));
    assert!(first.contains("Cosette:"));
    assert_eq!(text.lines().count(), 12); // comment + header + 10 ranks
}

#[test]
fn compare_maxflow_top3_on_lesmis() {
    let out = run(&[
        "compare", "--graph", &lesmis(), "--undirected",
        "--source", "Valjean", "--methods", "maxflow", "--top", "3",
    ]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    let entries = v["results"][0]["entries"].as_array().unwrap();
    let labels: Vec<&str> = entries.iter().map(|e| e["label"].as_str().unwrap()).collect();
    assert_eq!(labels, ["Marius", "Cosette", "Thenardier"]);
}

#[test]
fn compare_vcm_matches_rank_output() {
    let dir = tempfile::tempdir().unwrap();
    let graph = write_wel(dir.path(), "g.wel", "s\ta\t2\ns\tb\t1\na\tc\t1\n");
    let rank = run(&[
        "rank", "--graph", graph.to_str().unwrap(),
        "--source", "s", "--alpha", "1.5", "--top", "3",
    ]);
    let cmp = run(&[
        "compare", "--graph", graph.to_str().unwrap(),
        "--source", "s", "--alpha", "1.5", "--methods", "vcm", "--top", "3",
    ]);
    let rank_entries = json(&rank)["entries"].clone();
    let cmp_entries = json(&cmp)["results"][0]["entries"].clone();
    assert_eq!(rank_entries, cmp_entries);
}

#[test]
fn compare_scale_gated_method_reports_error_others_intact() {
    let dir = tempfile::tempdir().unwrap();
    let mut big = String::new();
    for i in 0..5001 {
        big.push_str(&format!("v{}\tv{}\t1\n", i, i + 1));
    }
    let graph = write_wel(dir.path(), "big.wel", &big);
    let out = run(&[
        "compare", "--graph", graph.to_str().unwrap(),
        "--source", "v0", "--methods", "vcm,communicability", "--top", "3",
    ]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    let results = v["results"].as_array().unwrap();
    assert!(results[0]["entries"].is_array());
    assert!(results[1]["error"].as_str().unwrap().contains("scale"));
}

#[test]
fn ingest_aggregates_pairs() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("pairs.csv");
    std::fs::write(&csv, "a,b\na,b\nb,c\n").unwrap();
    let out_path = dir.path().join("out.wel");
    let out = run(&[
        "ingest", "--pairs", csv.to_str().unwrap(),
        "--out", out_path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["events"], 3);
    assert_eq!(v["edges"], 2);
    assert_eq!(
        std::fs::read_to_string(&out_path).unwrap(),
        "a\tb\t2\nb\tc\t1\n"
    );
}

#[test]
fn ingest_empty_input_empty_output() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("pairs.csv");
    std::fs::write(&csv, "").unwrap();
    let out_path = dir.path().join("out.wel");
    let out = run(&[
        "ingest", "--pairs", csv.to_str().unwrap(),
        "--out", out_path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    assert_eq!(std::fs::read_to_string(&out_path).unwrap(), "");
}

#[test]
fn ingest_missing_out_exits_1() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("pairs.csv");
    std::fs::write(&csv, "a,b\n").unwrap();
    let out = run(&["ingest", "--pairs", csv.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
}

#[test]
fn ingest_undirected_merges_reverse_pairs() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("pairs.csv");
    std::fs::write(&csv, "a,b\nb,a\n").unwrap();
    let out_path = dir.path().join("out.wel");
    let out = run(&[
        "ingest", "--pairs", csv.to_str().unwrap(), "--undirected",
        "--out", out_path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    assert_eq!(std::fs::read_to_string(&out_path).unwrap(), "a\tb\t2\n");
}

#[test]
fn output_is_byte_identical_across_runs() {
    for format in ["json", "tsv"] {
        let first = run(&[
            "rank", "--graph", &lesmis(), "--undirected",
            "--source", "Valjean", "--alpha", "1.33", "--level-share",
            "--format", format,
        ]);
        let second = run(&[
            "rank", "--graph", &lesmis(), "--undirected",
            "--source", "Valjean", "--alpha", "1.33", "--level-share",
            "--format", format,
        ]);
        assert_eq!(code(&first), 0);
        assert_eq!(first.stdout, second.stdout, "format {format}");
    }
}

#[test]
fn echoed_parameters_reproduce_the_run() {
    let out = run(&[
        "score", "--graph", &lesmis(), "--undirected",
        "--source", "Joly", "--target", "Myriel",
        "--alpha", "3", "--level-share", "--input-max",
    ]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    // Rebuild the invocation purely from the echoed record.
    let mut args: Vec<String> = vec![
        "score".into(),
        "--graph".into(), v["graph"].as_str().unwrap().into(),
        "--source".into(), v["source"].as_str().unwrap().into(),
        "--target".into(), v["target"].as_str().unwrap().into(),
        "--alpha".into(), v["alpha"].to_string(),
    ];
    if v["undirected"].as_bool().unwrap() {
        args.push("--undirected".into());
    }
    if v["level_share"].as_bool().unwrap() {
        args.push("--level-share".into());
    }
    if v["input_max"].as_bool().unwrap() {
        args.push("--input-max".into());
    }
    let arg_refs: Vec<&str> = args.iter().map(String::as_str).collect();
    let replay = run(&arg_refs);
    assert_eq!(out.stdout, replay.stdout);
}

#[test]
fn score_tsv_shape() {
    let dir = tempfile::tempdir().unwrap();
    let graph = write_wel(dir.path(), "g.wel", "s\tt\t4\ns\tu\t1\n");
    let out = run(&[
        "score", "--graph", graph.to_str().unwrap(),
        "--source", "s", "--target", "t", "--format", "tsv",
    ]);
    let text = stdout(&out);
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("# command=score"));
    assert_eq!(lines.next().unwrap(), "score\t0.8");
    assert!(lines.next().is_none());
}

#[test]
fn help_exits_0() {
    let out = run(&["--help"]);
    assert_eq!(code(&out), 0);
}
