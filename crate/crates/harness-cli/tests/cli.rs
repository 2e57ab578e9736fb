use harness_cli::record::determinism_hash;
use harness_cli::report::{self, Report};
use harness_cli::{exit_code, Format, Manifest, RunConfig, Status, VerificationRecord};
use proptest::prelude::*;
use serde_json::Value;
use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_semiclass-lab"));
    c.env_remove("SEMICLASS_INJECT_FAIL").env_remove("SEMICLASS_THREADS");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn manifest(dir: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(dir.join("manifest.json")).unwrap()).unwrap()
}

fn strip_times(mut v: Value) -> Value {
    for r in v["records"].as_array_mut().unwrap() {
        r.as_object_mut().unwrap().remove("wallTimeMs");
    }
    v
}

const SMALL: &[&str] = &["--checks", "F4,C0,cp1-volume,cp1-riemann-roch", "--p", "1:4"];

fn verify_small(dir: &Path, extra: &[&str]) -> Output {
    let mut args = vec!["verify", "--out", dir.to_str().unwrap()];
    args.extend_from_slice(SMALL);
    args.extend_from_slice(extra);
    run(&args)
}

#[test]
fn small_run_passes_and_writes_outputs() {
    let d = tempfile::tempdir().unwrap();
    let o = verify_small(d.path(), &[]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let m = manifest(d.path());
    let recs = m["records"].as_array().unwrap();
    let ids: Vec<&str> = recs.iter().map(|r| r["checkId"].as_str().unwrap()).collect();
    let mut sorted = ids.clone();
    sorted.sort();
    assert_eq!(ids, sorted);
    for id in ["F4", "C0", "cp1-volume", "cp1-riemann-roch"] {
        let r = recs.iter().find(|r| r["checkId"] == id).unwrap();
        assert_eq!(r["status"], "pass", "{id}");
        for key in ["paperAnchor", "residue", "wallTimeMs"] {
            assert!(r.get(key).is_some(), "{id} lacks {key}");
        }
    }
    assert!(recs.iter().any(|r| r["status"] == "skipped"));
    assert_eq!(m["config"]["pmin"], 1);
    assert_eq!(m["config"]["pmax"], 4);
    assert_eq!(m["determinismHash"].as_str().unwrap().len(), 64);
    assert!(d.path().join("report.csv").exists());
    assert!(d.path().join("experiments/cp1-volume.csv").exists());
    let summary: Value =
        serde_json::from_str(&std::fs::read_to_string(d.path().join("experiments/summary.json")).unwrap()).unwrap();
    assert!(summary.as_array().unwrap().iter().all(|e| e["passed"] == true));
}

#[test]
fn experiment_csv_columns() {
    let d = tempfile::tempdir().unwrap();
    let o = run(&["verify", "--suite", "numeric", "--model", "cp1", "--checks", "cp1-density", "--p", "1:5", "--out", d.path().to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let text = std::fs::read_to_string(d.path().join("experiments/cp1-density.csv")).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "model,p,observables,quantity,value");
    let rows: Vec<&str> = lines.collect();
    assert!(rows.len() >= 5);
    assert!(rows.iter().all(|r| r.starts_with("cp1,")));
}

#[test]
fn unknown_check_is_usage_error_listing_names() {
    let d = tempfile::tempdir().unwrap();
    let o = run(&["verify", "--checks", "F4,not-a-check", "--out", d.path().to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    let err = stderr(&o);
    assert!(err.contains("not-a-check"), "{err}");
    for name in ["F4", "b2fg", "oracle-wick-fock", "cp1-density", "torus-commutator"] {
        assert!(err.contains(name), "valid list lacks {name}: {err}");
    }
    assert!(!d.path().join("manifest.json").exists());
}

#[test]
fn numeric_check_outside_selected_model_is_unknown() {
    let o = run(&["verify", "--model", "cp1", "--checks", "torus-density"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn bad_arguments_exit_2() {
    for args in [
        vec!["verify", "--p", "0:5"],
        vec!["verify", "--p", "1:61"],
        vec!["verify", "--p", "9:3"],
        vec!["verify", "--p", "banana"],
        vec!["verify", "--suite", "everything"],
        vec!["verify", "--format", "xml"],
        vec!["frobnicate"],
    ] {
        let o = run(&args);
        assert_eq!(code(&o), 2, "{args:?}: {}", stderr(&o));
    }
}

#[test]
fn thread_env_is_validated() {
    let d = tempfile::tempdir().unwrap();
    let o = bin()
        .env("SEMICLASS_THREADS", "zero")
        .args(["verify", "--checks", "F4", "--out", d.path().to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(code(&o), 2);
    let o = bin()
        .env("SEMICLASS_THREADS", "1")
        .args(["verify", "--checks", "F4", "--out", d.path().to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(code(&o), 0, "{}", stderr(&o));
}

#[test]
fn injected_failure_exits_1_and_shows_residue() {
    let d = tempfile::tempdir().unwrap();
    let o = bin()
        .env("SEMICLASS_INJECT_FAIL", "C0")
        .args(["verify", "--checks", "F4,C0", "--out", d.path().to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(code(&o), 1);
    let m = manifest(d.path());
    let c0 = m["records"].as_array().unwrap().iter().find(|r| r["checkId"] == "C0").unwrap();
    assert_eq!(c0["status"], "fail");
    assert!(c0["residue"].as_str().unwrap().contains("injected"));
    let json = run(&["report", d.path().join("manifest.json").to_str().unwrap(), "--format", "json"]);
    assert_eq!(code(&json), 0);
    assert!(String::from_utf8_lossy(&json.stdout).contains("injected failure"));
}

#[test]
fn runs_are_deterministic_modulo_wall_time() {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    for d in [&a, &b] {
        assert_eq!(code(&verify_small(d.path(), &["--seed", "11"])), 0);
    }
    let (ma, mb) = (manifest(a.path()), manifest(b.path()));
    assert_eq!(ma["determinismHash"], mb["determinismHash"]);
    let norm = |mut v: Value| {
        v["config"].as_object_mut().unwrap().remove("outputDir");
        strip_times(v)
    };
    assert_eq!(norm(ma.clone()), norm(mb));
    let c = tempfile::tempdir().unwrap();
    assert_eq!(code(&verify_small(c.path(), &["--seed", "12"])), 0);
    assert_ne!(ma["determinismHash"], manifest(c.path())["determinismHash"]);
}

#[test]
fn hash_ignores_wall_time() {
    let cfg = RunConfig::default();
    let mut recs = vec![record("a", Status::Pass, 1.0), record("b", Status::Fail, 2.0)];
    let h = determinism_hash(&recs, &cfg);
    recs[0].wall_time_ms = 999.0;
    assert_eq!(h, determinism_hash(&recs, &cfg));
    recs[0].residue = "changed".into();
    assert_ne!(h, determinism_hash(&recs, &cfg));
}

#[test]
fn config_file_with_flag_overrides() {
    let d = tempfile::tempdir().unwrap();
    let out = d.path().join("from-file");
    let cfg = d.path().join("run.json");
    let body = serde_json::json!({
        "suite": "symbolic",
        "checks": ["F4"],
        "pmin": 2,
        "pmax": 30,
        "seed": 5,
        "outputDir": out,
        "format": "json"
    });
    std::fs::write(&cfg, body.to_string()).unwrap();
    let o = run(&["verify", "--config", cfg.to_str().unwrap(), "--seed", "9", "--checks", "C0"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let m = manifest(&out);
    assert_eq!(m["config"]["seed"], 9);
    assert_eq!(m["config"]["pmin"], 2);
    assert_eq!(m["config"]["pmax"], 30);
    assert_eq!(m["config"]["checks"], serde_json::json!(["C0"]));
    assert!(out.join("report.json").exists());
    let recs = m["records"].as_array().unwrap();
    assert_eq!(recs.iter().find(|r| r["checkId"] == "F4").unwrap()["status"], "skipped");
    assert_eq!(recs.iter().find(|r| r["checkId"] == "C0").unwrap()["status"], "pass");
}

#[test]
fn bad_config_files_exit_2() {
    let d = tempfile::tempdir().unwrap();
    let cases = [
        ("unknown.json", r#"{"pmin": 1, "colour": "red"}"#),
        ("syntax.json", "{ not json"),
        ("range.json", r#"{"pmin": 0}"#),
        ("ceiling.json", r#"{"pmax": 61}"#),
    ];
    for (name, body) in cases {
        let path = d.path().join(name);
        std::fs::write(&path, body).unwrap();
        let o = run(&["verify", "--config", path.to_str().unwrap(), "--checks", "F4"]);
        assert_eq!(code(&o), 2, "{name}: {}", stderr(&o));
    }
    let o = run(&["verify", "--config", d.path().join("absent.json").to_str().unwrap()]);
    assert_eq!(code(&o), 2);
}

#[test]
fn missing_manifest_exits_2() {
    let d = tempfile::tempdir().unwrap();
    let o = run(&["report", d.path().join("nope/manifest.json").to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    let bad = d.path().join("bad.json");
    std::fs::write(&bad, "[1,2").unwrap();
    assert_eq!(code(&run(&["report", bad.to_str().unwrap()])), 2);
}

#[test]
fn csv_report_header_and_order() {
    let d = tempfile::tempdir().unwrap();
    assert_eq!(code(&verify_small(d.path(), &[])), 0);
    let o = run(&["report", d.path().join("manifest.json").to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "checkId,paperAnchor,status,wallTimeMs");
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    let ids: Vec<String> = rdr.records().map(|r| r.unwrap()[0].to_string()).collect();
    let mut sorted = ids.clone();
    sorted.sort();
    assert_eq!(ids, sorted);
    assert!(ids.contains(&"F4".to_string()));
    assert_eq!(code(&verify_small(d.path(), &[])), 0);
    let again = run(&["report", d.path().join("manifest.json").to_str().unwrap()]);
    let strip = |s: &str| s.lines().map(|l| l.rsplit_once(',').unwrap().0.to_string()).collect::<Vec<_>>();
    assert_eq!(strip(&text), strip(&String::from_utf8(again.stdout).unwrap()));
}

#[test]
fn json_report_round_trips() {
    let d = tempfile::tempdir().unwrap();
    assert_eq!(code(&verify_small(d.path(), &["--format", "json"])), 0);
    let first = std::fs::read_to_string(d.path().join("report.json")).unwrap();
    let out = d.path().join("copy");
    let o = run(&["report", d.path().join("report.json").to_str().unwrap(), "--format", "json", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert_eq!(String::from_utf8(o.stdout).unwrap(), first);
    let second = std::fs::read_to_string(out.join("report.json")).unwrap();
    assert_eq!(first, second);
    let parsed = report::parse(&first).unwrap();
    assert_eq!(report::render(&parsed, Format::Json).unwrap(), first);
}

#[test]
fn failing_record_renders() {
    let recs = vec![record("z-last", Status::Pass, 0.5), record("a-first", Status::Fail, 1.25)];
    let m = Manifest::new(recs, RunConfig::default());
    assert_eq!(m.records[0].check_id, "a-first");
    let r = Report { records: m.records.clone() };
    let csv = report::render(&r, Format::Csv).unwrap();
    assert!(csv.lines().nth(1).unwrap().starts_with("a-first,Eq. test,fail,"), "{csv}");
    let json = report::render(&r, Format::Json).unwrap();
    assert!(json.contains("residue of a-first"));
    assert_eq!(report::parse(&json).unwrap().records, m.records);
    assert_eq!(exit_code(&m.records), 1);
}

fn record(id: &str, status: Status, ms: f64) -> VerificationRecord {
    VerificationRecord {
        check_id: id.into(),
        paper_anchor: "Eq. test".into(),
        status,
        residue: format!("residue of {id}"),
        wall_time_ms: ms,
    }
}

fn status() -> impl Strategy<Value = Status> {
    prop_oneof![Just(Status::Pass), Just(Status::Fail), Just(Status::Skipped)]
}

proptest! {
    #[test]
    fn exit_code_is_1_iff_any_failure(ss in prop::collection::vec(status(), 0..12)) {
        let recs: Vec<_> = ss.iter().enumerate().map(|(i, s)| record(&format!("c{i}"), *s, 0.0)).collect();
        let expect = if ss.contains(&Status::Fail) { 1 } else { 0 };
        prop_assert_eq!(exit_code(&recs), expect);
    }

    #[test]
    fn manifest_order_is_stable(ids in prop::collection::vec("[a-z]{1,6}", 1..10)) {
        let recs: Vec<_> = ids.iter().map(|i| record(i, Status::Pass, 0.0)).collect();
        let mut rev = recs.clone();
        rev.reverse();
        let cfg = RunConfig::default();
        let (a, b) = (Manifest::new(recs, cfg.clone()), Manifest::new(rev, cfg));
        prop_assert_eq!(&a.determinism_hash, &b.determinism_hash);
        prop_assert!(a.records.windows(2).all(|w| w[0].check_id <= w[1].check_id));
    }
}
