use std::path::{Path, PathBuf};
use std::process::Command;

use separable::cli::{parse_workspace, Report, Status, Workspace};
use separable::Error;

fn fixture() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures/workspace.json")
}

fn run(args: &[&str], out: &Path) -> (i32, String, String) {
    let o = Command::new(env!("CARGO_BIN_EXE_separable"))
        .arg("--workspace")
        .arg(fixture())
        .arg("--out")
        .arg(out)
        .args(args)
        .output()
        .unwrap();
    (o.status.code().unwrap(), String::from_utf8(o.stdout).unwrap(), String::from_utf8(o.stderr).unwrap())
}

fn report(dir: &Path) -> Report {
    serde_json::from_str(&std::fs::read_to_string(dir.join("report.json")).unwrap()).unwrap()
}

#[test]
fn minimal_workspace_parses() {
    let ws = Workspace::from_json(
        r#"{"schema_version": 1,
            "fields": [{"name": "Q", "spec": "Q"}],
            "categories": [{"name": "C1", "field": "Q", "objects": ["pt"], "units": {"pt": "id"}}]}"#,
    )
    .unwrap();
    assert_eq!(ws.categories.get("C1").unwrap().dim(0, 0), 1);
}

#[test]
fn undeclared_group_is_named() {
    let err = Workspace::from_json(
        r#"{"schema_version": 1,
            "fields": [{"name": "Q", "spec": "Q"}],
            "categories": [{"name": "C1", "field": "Q", "objects": ["pt"], "units": {"pt": "id"}}],
            "actions": [{"name": "a", "group": "Z7", "category": "C1", "trivial": true}]}"#,
    )
    .err()
    .unwrap();
    assert!(matches!(&err, Error::Unresolved(m) if m.contains("Z7")), "{err}");
}

#[test]
fn duplicates_and_syntax_errors() {
    let dup = Workspace::from_json(
        r#"{"schema_version": 1, "fields": [{"name": "Q", "spec": "Q"}, {"name": "Q", "spec": "F2"}]}"#,
    );
    assert!(matches!(dup, Err(Error::Invalid(m)) if m.contains("duplicate")));
    let bad = Workspace::from_json("{\"schema_version\": 1,\n  \"fields\": [ }");
    assert!(matches!(bad, Err(Error::Parse(m)) if m.starts_with("line 2, column")));
    let version = Workspace::from_json(r#"{"schema_version": 9}"#);
    assert!(matches!(version, Err(Error::Parse(_))));
}

#[test]
fn shipped_fixture_validates() {
    let ws = parse_workspace(&fixture()).unwrap();
    assert!(ws.monads.contains("grpmonad_z2_q"));
    let dir = tempfile::tempdir().unwrap();
    let (code, _, _) = run(&["validate"], dir.path());
    assert_eq!(code, 0);
    assert!(report(dir.path()).checks.len() > 20);
}

#[test]
fn monad_separability_exit_codes_and_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let (code, _, _) = run(&["separability", "grpmonad_z2_q", "--target", "monad"], dir.path());
    assert_eq!(code, 0);
    let r = report(dir.path());
    assert_eq!(r.checks[0].witness.as_deref(), Some("grpmonad_z2_q.witness.json"));
    let witness = dir.path().join("grpmonad_z2_q.witness.json");
    let (code, _, _) = run(&["verify-witness", witness.to_str().unwrap()], dir.path());
    assert_eq!(code, 0);

    let (code, _, _) = run(&["separability", "grpmonad_z2_f2", "--target", "monad"], dir.path());
    assert_eq!(code, 1);
    assert_eq!(report(dir.path()).checks[0].status, Status::Infeasible);
    assert!(!dir.path().join("grpmonad_z2_f2.witness.json").exists());
}

#[test]
fn tampered_witness_fails() {
    let dir = tempfile::tempdir().unwrap();
    run(&["separability", "grpmonad_z2_q", "--target", "monad"], dir.path());
    let path = dir.path().join("grpmonad_z2_q.witness.json");
    let text = std::fs::read_to_string(&path).unwrap().replacen("1/2", "1/3", 1);
    std::fs::write(&path, text).unwrap();
    let (code, _, _) = run(&["verify-witness", path.to_str().unwrap()], dir.path());
    assert_eq!(code, 1);
}

#[test]
fn functor_witness_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let (code, _, _) = run(&["separability", "ind_z2_q", "--target", "functor"], dir.path());
    assert_eq!(code, 0);
    let path = dir.path().join("ind_z2_q.witness.json");
    let (code, _, _) = run(&["verify-witness", path.to_str().unwrap()], dir.path());
    assert_eq!(code, 0);
}

#[test]
fn complex_report_over_f2_reports_no_section() {
    let dir = tempfile::tempdir().unwrap();
    let (code, _, _) = run(&["complex-report", "z2_triv_f2"], dir.path());
    assert_eq!(code, 1);
    let r = report(dir.path());
    let c = r.checks.iter().find(|c| c.id.ends_with("monad-separable")).unwrap();
    assert_eq!(c.details["error"], "MonadNotSeparable");
}

#[test]
fn input_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(run(&["em-report", "missing"], dir.path()).0, 2);
    assert_eq!(run(&["frobnicate"], dir.path()).0, 2);
    assert_eq!(run(&["separability", "grpmonad_z2_q"], dir.path()).0, 2);
}

#[test]
fn reports_are_byte_identical() {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    let args = ["--seed", "17", "suite", "smoke"];
    assert_eq!(run(&args, a.path()).0, 0);
    assert_eq!(run(&args, b.path()).0, 0);
    for f in ["report.json", "grpmonad_z2_q.witness.json", "ind_z2_q.witness.json"] {
        let x = std::fs::read(a.path().join(f)).unwrap();
        let y = std::fs::read(b.path().join(f)).unwrap();
        assert_eq!(x, y, "{f}");
    }
}

#[test]
fn preimages_need_complete_target() {
    let dir = tempfile::tempdir().unwrap();
    run(&["em-report", "ind_z2_q"], dir.path());
    assert!(!report(dir.path()).checks.iter().any(|c| c.id.contains("/preimage/")));
    let (code, _, _) = run(&["em-report", "ind_z2_q", "--complete-target"], dir.path());
    assert_eq!(code, 0);
    let r = report(dir.path());
    let pre: Vec<_> = r.checks.iter().filter(|c| c.id.contains("/preimage/")).collect();
    assert!(pre.iter().any(|c| c.id.ends_with("sign_z2")));
    assert!(pre.iter().all(|c| c.status == Status::Pass));
}
