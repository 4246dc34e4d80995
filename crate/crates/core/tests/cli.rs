use std::path::Path;
use std::process::Command;

use dba_lab::boolean::FiniteBooleanAlgebra;
use dba_lab::catalog::get;
use dba_lab::cli::{run, Context};
use dba_lab::format::{load_algebra, parse_algebra, to_json_pretty};
use dba_lab::iso::is_isomorphic;

const D3I: &str = r#"{"size":3,"bot":0,"top":2,
    "meet":[[0,0,0],[0,1,1],[0,1,1]],"join":[[1,1,2],[1,1,2],[2,2,2]],
    "neg":[1,0,0],"opp":[2,2,1],"labels":["⊥","a","⊤"]}"#;

fn ctx() -> Context {
    Context { data_dir: None }
}

fn dba_lab(args: &[&str]) -> dba_lab::cli::Outcome {
    let mut full = vec!["dba-lab"];
    full.extend_from_slice(args);
    run(full, &ctx())
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path.to_str().unwrap().to_owned()
}

#[test]
fn check_accepts_catalog_names_and_files() {
    let out = dba_lab(&["check", "D3I"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(out.stdout.contains("all 23 identities hold"));
    let dir = tempfile::tempdir().unwrap();
    let file = write(dir.path(), "d3i.json", D3I);
    assert_eq!(dba_lab(&["check", &file]).code, 0);
}

#[test]
fn check_reports_violations_with_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    // a ⊓ ⊤ changed from a to ⊥.
    let file = write(
        dir.path(),
        "m.json",
        &D3I.replace("[0,1,1],[0,1,1]]", "[0,1,0],[0,1,1]]"),
    );
    let out = dba_lab(&["check", &file]);
    assert_eq!(out.code, 1);
    assert!(
        out.stdout.contains("(4a) fails at (a, ⊤): ⊥ != a"),
        "{}",
        out.stdout
    );
    let json = dba_lab(&["check", &file, "--json"]);
    assert_eq!(json.code, 1);
    let v: serde_json::Value = serde_json::from_str(&json.stdout).unwrap();
    assert_eq!(v["is_dba"], false);
}

#[test]
fn malformed_input_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(
        dir.path(),
        "bad.json",
        &D3I.replace("[[0,0,0],[0,1,1]", "[[0,9,0],[0,1,1]"),
    );
    let out = dba_lab(&["check", &file]);
    assert_eq!(out.code, 2);
    assert!(
        out.stderr.contains("closure violation at meet[0][1]"),
        "{}",
        out.stderr
    );
    let garbage = write(dir.path(), "g.json", "{ not json");
    assert_eq!(dba_lab(&["check", &garbage]).code, 2);
    assert_eq!(dba_lab(&["check", "no-such-algebra"]).code, 2);
    assert_eq!(dba_lab(&["frobnicate"]).code, 2);
    assert_eq!(dba_lab(&["enumerate", "0"]).code, 2);
    assert_eq!(dba_lab(&["enumerate", "4"]).code, 2);
    // Glued-sum inputs must be Boolean algebras.
    assert_eq!(dba_lab(&["glued-sum", "D3I", "2"]).code, 2);
}

#[test]
fn non_dba_input_to_structural_commands_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(
        dir.path(),
        "m.json",
        &D3I.replace("[0,1,1],[0,1,1]]", "[0,1,0],[0,1,1]]"),
    );
    for cmd in ["classify", "congruences", "simple", "si"] {
        assert_eq!(dba_lab(&[cmd, &file]).code, 2, "{cmd}");
    }
}

#[test]
fn predicates() {
    assert_eq!(dba_lab(&["simple", "D4"]).code, 0);
    assert_eq!(dba_lab(&["simple", "D6"]).code, 1);
    assert_eq!(dba_lab(&["si", "D6", "--oracle"]).code, 1);
    for name in ["D2I", "D2II", "D2III", "2"] {
        assert_eq!(dba_lab(&["simple", name]).code, 0, "{name}");
        assert_eq!(dba_lab(&["si", name]).code, 0, "{name}");
    }
    let out = dba_lab(&["simple", "D3I", "--json", "--oracle"]);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["agree"], true);
    assert_eq!(v["simple"], v["oracle"]);
}

#[test]
fn classify_and_congruences() {
    let out = dba_lab(&["classify", "D6", "--json"]);
    assert_eq!(out.code, 0);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["structure"]["pure"], true);
    assert_eq!(v["structure"]["trivial"], false);
    let out = dba_lab(&["congruences", "D3I"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("|Con| = 4"));
}

#[test]
fn enumerate_prints_one_algebra_per_line() {
    let out = dba_lab(&["enumerate", "2"]);
    assert_eq!(out.code, 0);
    let lines: Vec<&str> = out.stdout.lines().collect();
    assert_eq!(lines.len(), 4);
    for l in lines {
        assert!(parse_algebra(l).unwrap().algebra.is_dba());
    }
    let wide = dba_lab(&["enumerate", "4", "--allow-uncertified"]);
    assert_eq!(wide.stdout.lines().count(), 21);
}

#[test]
fn enumerate_output_is_independent_of_worker_count() {
    let one = dba_lab(&["enumerate", "3", "--workers", "1"]);
    let four = dba_lab(&["enumerate", "3", "--workers", "4"]);
    assert_eq!(one.stdout, four.stdout);
    assert_eq!(one.stdout.lines().count(), 8);
    let t1 = dba_lab(&["table", "--json", "--workers", "1"]);
    let t4 = dba_lab(&["table", "--json", "--workers", "3"]);
    assert_eq!(t1.code, 0);
    assert_eq!(t1.stdout, t4.stdout);
}

#[test]
fn glued_sum_writes_a_loadable_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.json");
    let out = dba_lab(&["glued-sum", "2", "2", "--out", path.to_str().unwrap()]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let g = load_algebra(&path).unwrap().algebra;
    assert!(is_isomorphic(&g, &get("D3I").unwrap()).is_some());
    let four = to_json_pretty(&FiniteBooleanAlgebra::powerset(2).to_dba(), None);
    let four = write(dir.path(), "b4.json", &four);
    let printed = dba_lab(&["glued-sum", &four, "2"]);
    assert_eq!(printed.code, 0, "{}", printed.stderr);
    assert_eq!(parse_algebra(&printed.stdout).unwrap().algebra.size(), 5);
}

#[test]
fn catalog_round_trip_through_data_dir() {
    let dir = tempfile::tempdir().unwrap();
    let out = dba_lab(&["catalog", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(out.code, 0);
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 8);
    // A modified copy in the data directory takes precedence.
    let broken = std::fs::read_to_string(dir.path().join("D4.json"))
        .unwrap()
        .replace("\"top\": 3", "\"top\": 0");
    std::fs::write(dir.path().join("D4.json"), broken).unwrap();
    let custom = Context {
        data_dir: Some(dir.path().to_path_buf()),
    };
    assert_ne!(run(["dba-lab", "check", "D4"], &custom).code, 0);
    assert_eq!(run(["dba-lab", "check", "D4"], &ctx()).code, 0);
}

#[test]
fn binary_exit_codes_and_environment() {
    let bin = env!("CARGO_BIN_EXE_dba-lab");
    let status = |args: &[&str]| Command::new(bin).args(args).output().unwrap().status.code();
    assert_eq!(status(&["check", "D3I"]), Some(0));
    assert_eq!(status(&["simple", "D6"]), Some(1));
    assert_eq!(status(&["check", "missing"]), Some(2));
    assert_eq!(status(&["--help"]), Some(0));
    let out = Command::new(bin).args(["enumerate", "2"]).output().unwrap();
    assert_eq!(String::from_utf8(out.stdout).unwrap().lines().count(), 4);
    let empty = tempfile::tempdir().unwrap();
    let out = Command::new(bin)
        .args(["check", "D4"])
        .env("DBA_LAB_DATA", empty.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}
