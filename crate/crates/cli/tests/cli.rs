use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fpp-verify")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8")
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).expect("utf-8")
}

fn path_str(p: &Path) -> &str {
    p.to_str().expect("utf-8 path")
}

#[test]
fn default_run_fails_only_on_the_curve_bound() {
    let o = bin(&["verify"]);
    let text = stdout(&o);
    let failing: Vec<&str> = text.lines().filter(|l| l.starts_with("[FAIL]")).collect();
    assert_eq!(failing.len(), 1, "{text}");
    assert!(failing[0].contains("table2.curve_bound"));
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn json_report_is_reproducible_and_well_formed() {
    let a = bin(&["verify", "--json", "--seed", "11"]);
    let b = bin(&["verify", "--json", "--seed", "11", "--sequential"]);
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["seed"], 11);
    let checks = v["checks"].as_array().unwrap();
    assert_eq!(v["passed"].as_u64().unwrap() + v["failed"].as_u64().unwrap(), checks.len() as u64);
    for c in checks {
        assert!(c["name"].is_string() && c["summary"].is_string());
        assert!(!c["anchors"].as_array().unwrap().is_empty(), "{}", c["name"]);
        assert!(["pass", "fail", "skip"].contains(&c["status"].as_str().unwrap()));
        assert!((1..=12).contains(&c["criterion"].as_u64().unwrap()));
    }
}

#[test]
fn passing_subset_exits_zero() {
    let o = bin(&["verify", "--only", "table.", "--only", "quotsing."]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("quotsing.G21"));
}

#[test]
fn corrupted_registry_names_the_row() {
    let dir = tempfile::tempdir().unwrap();
    let reg = dir.path().join("registry.json");
    assert!(bin(&["export", "registry", path_str(&reg)]).status.success());
    let mut rows: Value = serde_json::from_str(&fs::read_to_string(&reg).unwrap()).unwrap();
    let row = rows.as_array_mut().unwrap().iter_mut().find(|r| r["table"] == 1 && r["row"] == 5).unwrap();
    row["order_three_subgroups"][0]["pi1"]["abelianization_order"] = Value::from(5);
    let bad = dir.path().join("bad.json");
    fs::write(&bad, serde_json::to_string(&rows).unwrap()).unwrap();
    let o = bin(&["--registry", path_str(&bad), "verify", "--only", "table."]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    let failing: Vec<&str> = text.lines().filter(|l| l.starts_with("[FAIL]")).collect();
    assert_eq!(failing.len(), 1, "{text}");
    assert!(failing[0].contains("T1.5") && failing[0].contains("C10, p=2"), "{}", failing[0]);
}

#[test]
fn export_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for p in [&a, &b] {
        assert!(bin(&["export", "registry", path_str(p)]).status.success());
    }
    let text = fs::read_to_string(&a).unwrap();
    assert_eq!(text, fs::read_to_string(&b).unwrap());
    let v: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 10);

    let r1 = dir.path().join("r1.json");
    let r2 = dir.path().join("r2.json");
    for p in [&r1, &r2] {
        bin(&["export", "report", path_str(p), "--seed", "5"]);
    }
    assert_eq!(fs::read(&r1).unwrap(), fs::read(&r2).unwrap());
}

#[test]
fn export_to_unwritable_path_fails() {
    let dir = tempfile::tempdir().unwrap();
    let o = bin(&["export", "registry", path_str(dir.path())]);
    assert!(!o.status.success());
    assert!(stderr(&o).contains("writing"));
    let missing = dir.path().join("no/such/dir/x.json");
    assert!(!bin(&["export", "registry", path_str(&missing)]).status.success());
}

#[test]
fn explain_named_checks() {
    let v = stdout(&bin(&["explain", "vanishing.row7"]));
    assert!(v.contains("orbit under") && v.contains("not both") && v.trim_end().ends_with("(pairing exclusion lemma)"), "{v}");
    let q = stdout(&bin(&["explain", "quotsing.C7"]));
    assert!(q.contains("[2, 2, 3]") && q.contains("(-1/7, -2/7, -3/7)") && q.contains("= 0\n"), "{q}");
    let o = bin(&["explain", "quotsing.C8"]);
    assert!(!o.status.success());
    assert!(stderr(&o).contains("quotsing.C3"), "{}", stderr(&o));
}

#[test]
fn vanish_subcommand() {
    let o = bin(&["vanish", "(C2, p=2, ∅, d_3D_3)"]);
    let text = stdout(&o);
    assert!(text.contains("14 classes: 8 proved non-effective, 6 undetermined"), "{text}");
    assert!(text.contains("bicanonical verdict: EMBEDDING"));
    let o = bin(&["--json", "vanish", "(C6, p=2, {3}, (D3)_3)"]);
    assert!(!o.status.success());
    assert!(stderr(&o).contains("did you mean"));
    let o = bin(&["--json", "vanish", "(a=15, p=2, {3}, (D3)_3)"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["bicanonical"]["verdict"], "EMBEDDING_OUTSIDE_FIXED_POINTS");
}

#[test]
fn resolve_quotient_reider() {
    let r = stdout(&bin(&["resolve", "7", "5"]));
    assert!(r.contains("chain [2, 2, 3]") && r.contains("(-1/7, -2/7, -3/7)"));
    assert!(!bin(&["resolve", "6", "4"]).status.success());
    let q: Value = serde_json::from_slice(&bin(&["quotient", "C3xC3", "--json"]).stdout).unwrap();
    assert_eq!(q["invariants"]["k2_resolution"], 1);
    assert_eq!(q["invariants"]["euler_resolution"], 11);
    let re = stdout(&bin(&["reider"]));
    assert!(re.contains("basepoint: no case survives"));
    assert!(re.contains("separation: SepD with D = 1·H (D^2 = 1, D.L = 3, K.D = 3, p_a = 3)"), "{re}");
}

#[test]
fn homology_with_action() {
    let dir = tempfile::tempdir().unwrap();
    let k = dir.path().join("hexagon.json");
    let a = dir.path().join("rotation.json");
    fs::write(&k, r#"{"vertices":[0,1,2,3,4,5],"simplices":[[0],[1],[2],[3],[4],[5],[0,1],[1,2],[2,3],[3,4],[4,5],[0,5]]}"#).unwrap();
    fs::write(&a, r#"{"generators":[[2,3,4,5,0,1]]}"#).unwrap();
    let plain = stdout(&bin(&["homology", path_str(&k)]));
    assert!(plain.contains("H1 = Z"));
    let o = bin(&["--json", "homology", path_str(&k), "--action", path_str(&a)]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["exact"], true);
    assert_eq!(v["cokernel"]["torsion"], serde_json::json!([3]));

    let open = dir.path().join("open.json");
    fs::write(&open, r#"{"vertices":[0,1,2],"simplices":[[0,1,2]]}"#).unwrap();
    assert!(!bin(&["homology", path_str(&open)]).status.success());
    assert!(bin(&["homology", path_str(&open), "--close"]).status.success());
}
