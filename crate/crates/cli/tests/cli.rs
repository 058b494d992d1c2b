//! The binary: verbs, exit codes, reports and the cache.

use std::path::PathBuf;
use std::process::{Command, Output};

fn groups() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../groups")
}

fn normdec(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_normdec")).args(args).env_remove("NORMDEC_CACHE_DIR").output().unwrap()
}

fn group(name: &str) -> String {
    groups().join(name).display().to_string()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn info_on_s3() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("r.json");
    let o = normdec(&["info", "--group", &group("s3.grp"), "--report", report.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let r: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(report).unwrap()).unwrap();
    assert_eq!(r["format_version"], 1);
    assert_eq!(r["structure"]["centric_classes"], 1);
    assert_eq!(r["structure"]["chain_poset"]["classes"].as_array().unwrap().len(), 1);
    assert_eq!(r["structure"]["collection"]["classes"][0]["representative"]["order"], 2);
}

#[test]
fn prime_not_dividing_the_order() {
    let o = normdec(&["info", "--group", &group("s3.grp"), "--p", "5"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("|S| = 1"), "{}", stdout(&o));
}

#[test]
fn input_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.grp");
    std::fs::write(&bad, "cayley 3\n0 1 2\n1 2 0\n2 0 x\n").unwrap();
    let o = normdec(&["info", "--group", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 4") && stderr(&o).contains("(2, 2)"), "{}", stderr(&o));
    let o = normdec(&["info", "--group", &group("s3.grp"), "--p", "6"]);
    assert_eq!(o.status.code(), Some(2));
    let o = normdec(&["decompose", "--theorem", "A", "--group", &group("s3.grp"), "--dim", "0"]);
    assert_eq!(o.status.code(), Some(2));
    let o = normdec(&["info", "--group", &group("s4.grp"), "--collection", "everything"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn hypothesis_gate_is_an_input_error() {
    let eab = format!("@{}", group("s4_eab_undersized.txt"));
    let o = normdec(&["decompose", "--theorem", "B", "--group", &group("s4.grp"), "--dim", "2", "--eab", &eab]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("missing Omega_p Z(P)"), "{}", stderr(&o));
}

#[test]
fn budget_errors_exit_3_and_name_the_stage() {
    let o = normdec(&["decompose", "--theorem", "A", "--group", &group("d8.grp"), "--simplex-budget", "50"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("theorem A: homology"), "{}", stderr(&o));
}

#[test]
fn decompose_s3_theorem_a() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("r.json");
    let o = normdec(&["decompose", "--theorem", "A", "--group", &group("s3.grp"), "--dim", "4", "--report", report.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let r: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(report).unwrap()).unwrap();
    let h = &r["decomposition"]["homology"];
    assert_eq!(h["source_betti"], serde_json::json!([1, 1, 1, 1]));
    assert_eq!(h["target_betti"], serde_json::json!([1, 1, 1, 1]));
    assert_eq!(r["trusted_degrees"], serde_json::json!([0, 3]));
    assert_eq!(r["verdict"]["passed"], true);
}

#[test]
fn selftest_modes() {
    let o = normdec(&["selftest", "--corpus", "c2,s3,d8"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = normdec(&["selftest", "--corpus", ""]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("verdict: pass"));
    let o = normdec(&["selftest", "--corpus", "d8", "--inject-mutation"]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.contains("FAIL D_8 p=2        saturation") && out.contains("FAIL D_8 p=2        linking axioms"), "{out}");
    let o = normdec(&["selftest", "--corpus", "nonsense"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn cache_hits_give_the_same_report() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache");
    let run = |i: usize| {
        let report = dir.path().join(format!("{i}.json"));
        let o = normdec(&[
            "info",
            "--group",
            &group("d8.grp"),
            "--cache-dir",
            cache.to_str().unwrap(),
            "--report",
            report.to_str().unwrap(),
        ]);
        assert_eq!(o.status.code(), Some(0));
        let mut v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(report).unwrap()).unwrap();
        v.as_object_mut().unwrap().remove("timing_ms");
        v
    };
    let first = run(1);
    let entries: Vec<_> = std::fs::read_dir(&cache).unwrap().map(|e| e.unwrap().file_name()).collect();
    assert_eq!(entries.len(), 1, "one entry and no lock left behind: {entries:?}");
    assert_eq!(run(2), first);
}
