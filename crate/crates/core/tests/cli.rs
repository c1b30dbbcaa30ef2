use std::process::{Command, Output};

use serde_json::Value;
use ulrich_lab::datum::{datum_generic, HighestWeight};
use ulrich_lab::parse::decode_datum_json;
use ulrich_lab::{Family, ParabolicSet, RootSystem};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ulrich-lab")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_str(&stdout(o)).unwrap_or_else(|e| panic!("{e}: {}", stdout(o)))
}

#[test]
fn check_reports_exact_datum() {
    let o = run(&["check", "--type", "B", "--rank", "2", "--nodes", "1", "--weight", "0,1"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["schema"], "ulrich-lab/1");
    assert_eq!(v["ulrich"], true);
    assert_eq!(v["dim"], 3);
    assert_eq!(v["rank"], 2);
    let datum: Vec<(i64, i64)> = v["datum"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| (e["num"].as_i64().unwrap(), e["den"].as_i64().unwrap()))
        .collect();
    assert_eq!(datum, vec![(1, 1), (2, 1), (3, 1)]);
}

#[test]
fn check_reports_witness_and_filters() {
    let o = run(&["check", "--type", "B", "--rank", "2", "--nodes", "1,2", "--weight", "0,0"]);
    let v = json(&o);
    assert_eq!(v["ulrich"], false);
    assert_eq!(v["witness"], "duplicate entry 1");
    assert_eq!(v["filters"]["passed"], false);
}

#[test]
fn verify_small_ranks_is_empty() {
    let o = run(&["verify", "--type", "B,C,D", "--max-rank", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["passed"], true);
    let cases = v["cases"].as_array().unwrap();
    assert_eq!(cases.len(), 40);
    assert!(cases.iter().all(|c| c["found"].as_array().unwrap().is_empty()));
    assert!(cases.iter().all(|c| c["bounds"].as_array().unwrap().len() == c["rank"].as_u64().unwrap() as usize));
}

#[test]
fn verify_single_b2_case() {
    let o = run(&["verify", "--type", "B", "--max-rank", "2", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "family,rank,nodes,dim,candidates,pruned,found,time");
    assert_eq!(lines.len(), 2);
    assert!(lines[1].starts_with("B,2,\"{1,2}\",4,16,") && lines[1].ends_with(",[],-"));
}

#[test]
fn timeout_marks_incomplete_and_fails() {
    let o = run(&["verify", "--type", "B", "--max-rank", "3", "--budget", "0", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("INCOMPLETE"));
}

#[test]
fn datum_csv_lists_matrix_entries() {
    let o = run(&["datum", "--type", "B", "--rank", "3", "--nodes", "1,2", "--weight", "0,0,0", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let rows: Vec<Vec<&str>> = text.lines().skip(1).map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 8);
    let labels: std::collections::BTreeSet<&str> = rows.iter().map(|r| r[0]).collect();
    assert_eq!(labels.into_iter().collect::<Vec<_>>(), vec!["P", "Q", "R"]);
    for (num, den) in [("3", "2"), ("4", "3"), ("5", "4")] {
        assert!(rows.iter().any(|r| r[5] == num && r[6] == den), "{num}/{den} missing");
    }
}

#[test]
fn datum_json_round_trips() {
    for (f, n, nodes, weight) in [
        (Family::B, 3, "1,2", "0,2,1"),
        (Family::D, 5, "2,5", "1,0,3,0,2"),
        (Family::A, 4, "2,3", "1,1,0,2"),
    ] {
        let o = run(&["datum", "--type", &f.to_string(), "--rank", &n.to_string(), "--nodes", nodes, "--weight", weight]);
        assert_eq!(o.status.code(), Some(0));
        let decoded = decode_datum_json(&stdout(&o)).unwrap();
        let rs = RootSystem::build(f, n).unwrap();
        let j: Vec<usize> = nodes.split(',').map(|x| x.parse().unwrap()).collect();
        let a: Vec<i64> = weight.split(',').map(|x| x.parse().unwrap()).collect();
        let lw = HighestWeight::new(a, ParabolicSet::new(j, n).unwrap()).unwrap();
        assert_eq!(decoded, datum_generic(&lw, &rs).unwrap().values());
        if f != Family::A {
            assert_eq!(json(&o)["equivalent"], true);
        }
    }
}

#[test]
fn d_normalization_is_reported() {
    let o = run(&["datum", "--type", "D", "--rank", "4", "--nodes", "1,4", "--weight", "0,0,0,0"]);
    let v = json(&o);
    assert_eq!(v["nodes"], serde_json::json!([1, 4]));
    assert_eq!(v["normalized_nodes"], serde_json::json!([1, 3]));
    assert_eq!(v["closed_form"]["mirrored"], true);
}

#[test]
fn no_prune_keeps_found_lists() {
    for (ty, rank, nodes) in [("B", "2", "1"), ("B", "3", "1,2"), ("D", "4", "1"), ("A", "3", "2")] {
        let pruned = json(&run(&["search", "--type", ty, "--rank", rank, "--nodes", nodes]));
        let full = json(&run(&["search", "--type", ty, "--rank", rank, "--nodes", nodes, "--no-prune"]));
        assert_eq!(pruned["cases"][0]["found"], full["cases"][0]["found"], "{ty}{rank} {nodes}");
        assert_eq!(full["cases"][0]["pruned"], 0);
    }
}

#[test]
fn reports_are_deterministic_across_threads() {
    let a = run(&["verify", "--max-rank", "5", "--threads", "1"]);
    let b = run(&["verify", "--max-rank", "5", "--threads", "3"]);
    assert_eq!(a.stdout, b.stdout);
    assert!(!a.stdout.is_empty());
}

#[test]
fn bott_single_twist() {
    let o = run(&["bott", "--type", "B", "--rank", "2", "--nodes", "1", "--weight", "0,1", "--twist", "2"]);
    let v = json(&o);
    assert_eq!(v["twists"][0]["verdict"], "ALL_VANISH");
    assert_eq!(v["twists"][0]["shifted"], serde_json::json!([-1, 2]));
    assert_eq!(v["ulrich"], true);
    let o = run(&["bott", "--type", "A", "--rank", "1", "--nodes", "1", "--weight", "0", "--twist", "2"]);
    let v = json(&o);
    assert_eq!(v["twists"][0]["verdict"], "NONZERO");
    assert_eq!(v["twists"][0]["degree"], 1);
}

#[test]
fn roots_with_parabolic() {
    let v = json(&run(&["roots", "--type", "C", "--rank", "3", "--nodes", "3"]));
    assert_eq!(v["count"], 9);
    assert_eq!(v["dim"], 6);
    assert_eq!(v["symmetrizer"][2], serde_json::json!({"num": 2, "den": 1}));
}

#[test]
fn usage_errors() {
    for args in [
        vec!["check", "--type", "B", "--rank", "2", "--nodes", "3", "--weight", "0,0"],
        vec!["check", "--type", "B", "--rank", "2", "--nodes", "1", "--weight", "0,-1"],
        vec!["datum", "--type", "X", "--rank", "2", "--nodes", "1", "--weight", "0,0"],
        vec!["search", "--type", "B", "--rank", "2", "--nodes", "1", "--budget", "-1"],
        vec!["verify", "--type", "D", "--max-rank", "3"],
        vec!["verify", "--type", "A,B", "--max-rank", "3"],
        vec!["check", "--type", "B", "--rank", "2"],
    ] {
        let o = run(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(o.stdout.is_empty());
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn out_file_receives_output() {
    let dir = std::env::temp_dir().join(format!("ulrich-lab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("roots.csv");
    let o = run(&["roots", "--type", "A", "--rank", "2", "--format", "csv", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().count(), 4);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn randomized_check_mode() {
    let o = run(&["check", "--type", "D", "--rank", "4", "--seed", "3", "--samples", "5", "--format", "pretty"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("75 weights over 15 node sets"));
}
