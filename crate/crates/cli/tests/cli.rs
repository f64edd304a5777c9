use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;
use windex_core::format::{parse_automaton, parse_regular_tree};
use windex_core::IndexPair;

fn golden(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

fn windex(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_windex")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

/// Writes the named catalog automaton into `dir` through the CLI.
fn fixture(dir: &TempDir, name: &str) -> String {
    let path = dir.path().join(format!("{name}.aut"));
    let p = path.to_str().unwrap().to_string();
    assert_eq!(windex(&["fixture", "catalog", name, "--out", &p]).status.code(), Some(0));
    p
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let path = dir.path().join(name);
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn classify_all_a() {
    let dir = TempDir::new().unwrap();
    let o = windex(&["classify", &fixture(&dir, "all_a")]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "borel: Pi^0_1\ndet_index: (0,1)\nweak_det_index: (0,1)\nweak_alt_index: (0,1)\n"
    );
    assert!(stderr(&o).contains("trim"));
}

#[test]
fn classify_split_min_is_not_weak_but_succeeds() {
    let dir = TempDir::new().unwrap();
    let o = windex(&["classify", "--witnesses", &fixture(&dir, "split_min")]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("borel: non-Borel"));
    assert!(out.contains("weak_alt_index: not weakly recognizable"));
    assert!(out.contains("not Pi^0_3: split at "));
}

#[test]
fn classify_json_schema() {
    let dir = TempDir::new().unwrap();
    let o = windex(&["classify", "--json", &fixture(&dir, "fin_b_left")]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["borel"], "Sigma^0_2");
    assert_eq!(v["det_index"], "(0,1)");
    assert!(v["weak_det_index"].is_null());
    assert_eq!(v["weak_alt_index"], serde_json::json!(["(1,3)"]));
    let witnesses = v["witnesses"].as_array().unwrap();
    assert!(witnesses.iter().any(|w| w["claim"] == "not Pi^0_2"));
    assert!(witnesses.iter().all(|w| w["detail"].is_string() && w["witness"].is_object()));
}

#[test]
fn malformed_input_exits_3() {
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.aut", "alphabet a\nstart q\n");
    for cmd in ["classify", "weaken", "patterns", "dot"] {
        let o = windex(&[cmd, &bad]);
        assert_eq!(o.status.code(), Some(3), "{cmd}");
        assert!(stderr(&o).starts_with("error:"));
    }
    assert_eq!(windex(&["classify", "/nonexistent/file.aut"]).status.code(), Some(3));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(windex(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(windex(&["classify"]).status.code(), Some(2));
    assert_eq!(windex(&["fixture", "skurczynski", "banana"]).status.code(), Some(2));
    assert_eq!(windex(&["fixture", "catalog", "no_such_automaton"]).status.code(), Some(2));
}

#[test]
fn weaken_inf_b_left_gives_seven_states() {
    let dir = TempDir::new().unwrap();
    let input = fixture(&dir, "inf_b_left");
    let out = dir.path().join("weak.aut");
    let o = windex(&["weaken", &input, "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("7 states, index (0,2)"));
    let text = fs::read_to_string(&out).unwrap();
    assert!(text.starts_with("# construction: weaken_02"));
    let a = parse_automaton(&text).unwrap();
    assert_eq!((a.num_states(), a.index()), (7, IndexPair::even(2)));
    let cmp = windex(&["compare", &input, out.to_str().unwrap(), "--samples", "300"]);
    assert_eq!(cmp.status.code(), Some(0), "{}", stdout(&cmp));
}

#[test]
fn weaken_reports_unsupported_and_non_weak() {
    let dir = TempDir::new().unwrap();
    let o = windex(&["weaken", &fixture(&dir, "split_min")]);
    assert_eq!(o.status.code(), Some(5));
    let o = windex(&["weaken", &fixture(&dir, "spine_fin_b")]);
    assert_eq!(o.status.code(), Some(4));
    assert!(stderr(&o).contains("(0,3)"));
}

#[test]
fn member_and_compare() {
    let dir = TempDir::new().unwrap();
    let all_a = fixture(&dir, "all_a");
    let aa = write(&dir, "aa.rt", "arity 2\nroot n\nnode n a n n\n");
    assert_eq!(windex(&["member", &all_a, &aa]).status.code(), Some(0));
    let ab = golden("alternating.rt");
    let o = windex(&["member", &all_a, ab.to_str().unwrap()]);
    assert_eq!((o.status.code(), stdout(&o).as_str()), (Some(1), "not a member\n"));

    assert_eq!(windex(&["compare", &all_a, &all_a]).status.code(), Some(0));
    let o = windex(&["compare", &all_a, &fixture(&dir, "ex_b_left")]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    let tree = text.strip_prefix("counterexample:\n").unwrap();
    parse_regular_tree(tree).unwrap();
}

#[test]
fn skurczynski_fixture_has_its_index() {
    for (arg, index) in [("0,2", IndexPair::even(2)), ("(1,4)", IndexPair::odd(4))] {
        let o = windex(&["fixture", "skurczynski", arg]);
        assert_eq!(o.status.code(), Some(0));
        assert_eq!(parse_automaton(&stdout(&o)).unwrap().index(), index);
    }
}

#[test]
fn patterns_lists_loops_and_flowers() {
    let dir = TempDir::new().unwrap();
    let o = windex(&["patterns", &fixture(&dir, "inf_b_left")]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("q1 (rank 1): {1, 2}"));
    assert!(out.contains("(1,2): flower present"));
    assert!(out.contains("(0,1): flower absent"));
    assert!(out.contains("split: absent"));
}

#[test]
fn dot_matches_golden_files() {
    for (input, expected) in [("all_a.aut", "all_a.dot"), ("alternating.rt", "alternating.dot")] {
        let o = windex(&["dot", golden(input).to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
        assert_eq!(stdout(&o), fs::read_to_string(golden(expected)).unwrap(), "{input}");
    }
}

#[test]
fn commands_are_deterministic() {
    let dir = TempDir::new().unwrap();
    let a = fixture(&dir, "inf_or_fin_b_left");
    for args in [vec!["classify", "--json", &a], vec!["weaken", &a], vec!["compare", &a, &a, "--seed", "7"]] {
        assert_eq!(stdout(&windex(&args)), stdout(&windex(&args)));
    }
}
