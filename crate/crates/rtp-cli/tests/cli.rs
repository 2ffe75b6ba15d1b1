use assert_cmd::Command;
use predicates::prelude::*;
use rtp_core::quiver::{Quiver, QuiverJson};
use rtp_core::tree::{catalog_tree, Divisor, Family, TreeJson, WeightedTree};
use std::io::Write;

fn rtp() -> Command {
    Command::cargo_bin("rtp").unwrap()
}

fn stdout(args: &[&str]) -> String {
    let out = rtp().args(args).output().unwrap();
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn count_matches_enumeration() {
    rtp().args(["count", "H", "7"]).assert().success().stdout("112\n");
    rtp().args(["roots", "H", "7", "--count-only"]).assert().success().stdout("112\n");
    rtp().args(["roots", "H", "7", "--count-only", "--method", "descent"]).assert().success().stdout("112\n");
}

#[test]
fn classify_a2_file() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    write!(f, r#"{{"vertices":[{{"id":0,"weight":2}},{{"id":1,"weight":2}}],"edges":[[0,1]]}}"#).unwrap();
    rtp()
        .args(["classify", "--file"])
        .arg(f.path())
        .assert()
        .success()
        .stdout(predicate::str::contains("multiplicity       2").and(predicate::str::contains("\nrational")));
}

#[test]
fn exit_codes() {
    rtp().args(["count", "Q7"]).assert().code(2);
    rtp().args(["count", "H", "4"]).assert().code(2);
    rtp().args(["frobnicate"]).assert().code(2);
    rtp().args(["lfd", "A", "2", "--dims", "2,1"]).assert().code(1).stderr(predicate::str::contains("lfd:"));
    rtp().args(["artin", "D", "4", "--file", "x.json"]).assert().code(2);
}

#[test]
fn tree_json_round_trips() {
    for (fam, params) in [("E82", vec![]), ("B_mn", vec!["2", "3"]), ("quasi-composite", vec!["0", "3", "1", "0", "1", "2", "0"])] {
        let mut args = vec!["--json", "export", fam];
        args.extend(params.iter().copied());
        let text = stdout(&args);
        let j: TreeJson = serde_json::from_str(&text).unwrap();
        let t = WeightedTree::try_from(&j).unwrap();
        let mut f = tempfile::NamedTempFile::new().unwrap();
        f.write_all(text.as_bytes()).unwrap();
        let again = stdout(&["--json", "export", "--file", f.path().to_str().unwrap()]);
        assert_eq!(text, again);
        assert_eq!(TreeJson::from(&t), j);
    }
}

#[test]
fn quiver_json_round_trips() {
    let text = stdout(&["--json", "export", "quasi-example"]);
    let j: QuiverJson = serde_json::from_str(&text).unwrap();
    let q = Quiver::try_from(&j).unwrap();
    assert_eq!(QuiverJson::from(&q), j);
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    let again = stdout(&["--json", "catalog", "--file", f.path().to_str().unwrap()]);
    assert_eq!(serde_json::from_str::<QuiverJson>(&again).unwrap(), j);
}

#[test]
fn divisor_json_round_trips() {
    let v: serde_json::Value = serde_json::from_str(&stdout(&["--json", "artin", "E8"])).unwrap();
    let z: Divisor = serde_json::from_value(v["cycle"].clone()).unwrap();
    assert_eq!(z, Divisor(vec![2, 4, 6, 5, 4, 3, 2, 3]));
    let roots: Vec<Vec<i64>> = serde_json::from_str(&stdout(&["--json", "roots", "A_nmk", "1", "1", "1"])).unwrap();
    assert_eq!(roots.len(), 22);
    let t = catalog_tree(Family::Anmk, &[1, 1, 1]).unwrap();
    assert!(roots.iter().all(|y| y.len() == t.len()));
}

#[test]
fn artin_trace() {
    let out = stdout(&["artin", "D", "4", "--trace"]);
    assert!(out.contains("Z1   (1,1,1,1)  add vertex 1"));
    assert!(out.contains("multiplicity 2"));
}

#[test]
fn lfd_outputs() {
    let out = stdout(&["lfd", "A", "3", "--emit-poly", "--emit-matrix"]);
    assert!(out.contains("verdict true"));
    assert!(out.lines().any(|l| l.trim_start_matches('-') == "x0*x1"));
    let v: serde_json::Value =
        serde_json::from_str(&stdout(&["--json", "lfd", "quasi-example", "--example-prefix", "--mode", "compositional"]))
            .unwrap();
    assert_eq!(v["verdict"], true);
    assert_eq!(v["degree"], 96);
    assert_eq!(v["composition"]["pieces"][0]["dynkin"]["D"], 4);
}

#[test]
fn reduce_and_reflect() {
    let out = stdout(&["reduce", "H", "6", "--dims", "1,1,1,1,1,1"]);
    assert!(out.contains("m = 5"));
    let out = stdout(&["reflect", "D", "4", "--dims", "1,2,1,1", "--bits", "0", "--at", "0"]);
    assert!(out.contains("tits form 1 -> 1"));
}

#[test]
fn verify_paper_is_deterministic() {
    let a = stdout(&["verify-paper"]);
    let b = stdout(&["verify-paper"]);
    assert_eq!(a, b);
    assert_eq!(a.lines().filter(|l| l.starts_with("PASS")).count(), 8);
}
