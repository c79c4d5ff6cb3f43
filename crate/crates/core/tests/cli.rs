use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn fmdel(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fmdel")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.display().to_string()
}

const K5: &str = "p tw 5 10\n1 2\n1 3\n1 4\n1 5\n2 3\n2 4\n2 5\n3 4\n3 5\n4 5\n";

#[test]
fn solve_reports_opt_and_set() {
    let dir = tempfile::tempdir().unwrap();
    let gr = write(dir.path(), "k5.gr", K5);
    let out = fmdel(&["solve", &gr, "--family", "vertex-cover"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["opt"], 4);
    assert_eq!(v["width"], 4);
    assert_eq!(v["deletion_set"].as_array().unwrap().len(), 4);
    assert!(v["stats"]["nodes"].as_u64().unwrap() > 0);
    assert!(String::from_utf8_lossy(&out.stderr).contains("h = 2"));

    let out = fmdel(&["solve", &gr, "--family", "planarization"]);
    assert_eq!(json(&out)["opt"], 1);
}

#[test]
fn solve_with_supplied_decomposition() {
    let dir = tempfile::tempdir().unwrap();
    let out = fmdel(&["gen", "pkt", "--n", "30", "--k", "2", "--seed", "4", "--out", &dir.path().join("p").display().to_string()]);
    assert!(out.status.success());
    assert_eq!(json(&out)["width"], 2);
    let gr = dir.path().join("p.gr").display().to_string();
    let td = dir.path().join("p.td").display().to_string();
    let a = json(&fmdel(&["solve", &gr, "--td", &td, "--family", "fvs"]));
    let b = json(&fmdel(&["solve", &gr, "--family", "fvs", "--no-compress"]));
    assert_eq!(a["opt"], b["opt"]);
    assert_eq!(a["width"], 2);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.gr", "p tw 3 3\n1 2\n2 3\n");
    assert_eq!(fmdel(&["solve", &bad]).status.code(), Some(2));

    let gr = write(dir.path(), "p.gr", "p tw 3 2\n1 2\n2 3\n");
    let td = write(dir.path(), "p.td", "s td 2 2 3\n1 1 2\n2 3\n1 2\n");
    assert_eq!(fmdel(&["validate-td", &gr, &td]).status.code(), Some(2));
    let td = write(dir.path(), "q.td", "s td 2 2 3\nb 1 1 2\nb 2 3\n1 2\n");
    let out = fmdel(&["validate-td", &gr, &td]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(json(&out)["violations"][0], "edge {2, 3} is in no bag");
    let td = write(dir.path(), "r.td", "s td 2 2 3\nb 1 1 2\nb 2 2 3\n1 2\n");
    assert_eq!(fmdel(&["validate-td", &gr, &td]).status.code(), Some(0));

    let k5 = write(dir.path(), "k5.gr", K5);
    let out = fmdel(&["solve", &k5, "--family", "planarization", "--max-states", "1", "--no-bound"]);
    assert_eq!(out.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&out.stderr).contains("partial stats"));
}

#[test]
fn crosscheck_detects_injected_fault() {
    let ok = fmdel(&["crosscheck", "--count", "20", "--n-max", "7", "--family", "fvs", "--family", "C4"]);
    assert!(ok.status.success());
    let v = json(&ok);
    for f in v["families"].as_array().unwrap() {
        assert_eq!(f["agree"], f["total"]);
    }
    let bad = fmdel(&["crosscheck", "--count", "5", "--n-max", "6", "--inject-cost-fault"]);
    assert_eq!(bad.status.code(), Some(5));
    assert_eq!(json(&bad)["mismatches"].as_array().unwrap().len(), 5);
}

#[test]
fn oracle_and_minor_test() {
    let dir = tempfile::tempdir().unwrap();
    let k5 = write(dir.path(), "k5.gr", K5);
    let v = json(&fmdel(&["oracle", &k5, "--family", "K4"]));
    assert_eq!(v["opt"], 2);
    let v = json(&fmdel(&["minor-test", &k5, "--pattern", "K33"]));
    assert_eq!(v["minor"], false);
    let v = json(&fmdel(&["minor-test", &k5, "--pattern", "K4"]));
    assert_eq!(v["minor"], true);
    assert_eq!(v["branch_sets"].as_array().unwrap().len(), 4);
}

#[test]
fn folio_methods_agree() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "g.txt", "2 3 2\nB 1 2\n1 3\n3 2\n");
    let a = json(&fmdel(&["folio", &g, "--d", "1"]));
    let b = json(&fmdel(&["folio", &g, "--d", "1", "--method", "closure"]));
    assert_eq!(a["signature"], b["signature"]);
    assert_eq!(a["members"].as_array().unwrap().len(), 5);
}

#[test]
fn gen_wall_and_reps() {
    let dir = tempfile::tempdir().unwrap();
    let out = fmdel(&["gen", "wall", "--r", "13", "--out", &dir.path().join("w13").display().to_string()]);
    let v = json(&out);
    assert_eq!(v["wall"]["bricks"], 144);
    assert_eq!(v["wall"]["internal_bricks"], 100);
    assert_eq!(v["wall"]["layers"], 6);
    let text = fmdel(&["gen", "grid", "--a", "3", "--b", "4"]).stdout;
    assert!(String::from_utf8_lossy(&text).starts_with("p tw 12 17"));

    let reps = dir.path().join("reps");
    let out = fmdel(&["reps", "--t-max", "1", "--n-extra", "3", "--out", &reps.display().to_string()]);
    assert!(out.status.success());
    assert_eq!(json(&out)["rows"].as_array().unwrap().len(), 2);
    assert!(reps.join("census.csv").exists());
    assert!(reps.join("table-t1-d3.txt").exists());
}
