//! Executes the selected suites and writes the manifest and experiment files.

use crate::config::{ModelName, RunConfig};
use crate::error::HarnessError;
use crate::oracle;
use crate::output::{csv_bytes, write_atomic};
use crate::record::{Manifest, Status, VerificationRecord};
use crate::report::{render, Report};
use geometry_lab::{by_name, NumericConfig, NumericOutcome};
use serde::Serialize;
use std::path::PathBuf;
use std::time::Instant;

/// Environment variable that forces a check to fail (exit-code testing).
pub const INJECT_ENV: &str = "SEMICLASS_INJECT_FAIL";

pub struct RunOutcome {
    pub manifest: Manifest,
    pub numeric: Vec<NumericOutcome>,
    pub written: Vec<PathBuf>,
}

fn models(cfg: &RunConfig) -> Vec<ModelName> {
    match cfg.model {
        Some(m) => vec![m],
        None => vec![ModelName::Cp1, ModelName::Torus],
    }
}

fn symbolic_ids() -> Vec<String> {
    let mut v: Vec<String> = coefficient_engine::check_ids().into_iter().map(String::from).collect();
    v.extend(oracle::ids().into_iter().map(String::from));
    v.sort();
    v
}

fn numeric_ids(cfg: &RunConfig) -> Vec<String> {
    models(cfg).into_iter().flat_map(|m| geometry_lab::check_ids(Some(m.as_str()))).collect()
}

/// Every check id reachable with this configuration's suite and model.
pub fn valid_ids(cfg: &RunConfig) -> Vec<String> {
    let mut v = Vec::new();
    if cfg.suite.symbolic() {
        v.extend(symbolic_ids());
    }
    if cfg.suite.numeric() {
        v.extend(numeric_ids(cfg));
    }
    v.sort();
    v
}

fn selected(cfg: &RunConfig, id: &str) -> bool {
    cfg.checks.is_empty() || cfg.checks.iter().any(|c| c == id)
}

fn record(id: &str, anchor: &str, passed: bool, residue: String, ms: f64) -> VerificationRecord {
    VerificationRecord {
        check_id: id.to_string(),
        paper_anchor: anchor.to_string(),
        status: if passed { Status::Pass } else { Status::Fail },
        residue,
        wall_time_ms: ms,
    }
}

fn skipped(id: &str, anchor: &str) -> VerificationRecord {
    VerificationRecord {
        check_id: id.to_string(),
        paper_anchor: anchor.to_string(),
        status: Status::Skipped,
        residue: "not selected".into(),
        wall_time_ms: 0.0,
    }
}

fn run_symbolic(cfg: &RunConfig) -> Result<Vec<VerificationRecord>, HarnessError> {
    let ids = coefficient_engine::check_ids();
    let filter: Vec<String> = ids.iter().filter(|id| selected(cfg, id)).map(|s| s.to_string()).collect();
    let mut out = Vec::new();
    if !filter.is_empty() {
        for o in coefficient_engine::run_checks(&filter)? {
            out.push(record(&o.id, &o.anchor, o.passed, o.residue, o.wall_time_ms));
        }
    }
    for c in coefficient_engine::checks::registry() {
        if !filter.iter().any(|f| f == c.id) {
            out.push(skipped(c.id, c.anchor));
        }
    }
    type Oracle = fn(&RunConfig) -> oracle::OracleOutcome;
    let oracles: [(&str, Oracle); 2] = [
        (oracle::NORMAL_ORDER, |c| oracle::normal_order_vs_matrix(c.seed, c.oracle_tolerance)),
        (oracle::WICK_FOCK, |c| oracle::wick_vs_fock(c.seed)),
    ];
    for (id, f) in oracles {
        if selected(cfg, id) {
            let t = Instant::now();
            let o = f(cfg);
            out.push(record(o.id, o.anchor, o.passed, o.residue, t.elapsed().as_secs_f64() * 1e3));
        } else {
            out.push(skipped(id, ""));
        }
    }
    Ok(out)
}

fn run_numeric(cfg: &RunConfig) -> Result<(Vec<VerificationRecord>, Vec<NumericOutcome>), HarnessError> {
    let ncfg = NumericConfig { pmin: cfg.pmin, pmax: cfg.pmax, order: cfg.quadrature_order };
    let mut records = Vec::new();
    let mut outcomes = Vec::new();
    for m in models(cfg) {
        let model = by_name(m.as_str()).expect("known model");
        let ids = geometry_lab::check_ids(Some(m.as_str()));
        let filter: Vec<String> = ids.iter().filter(|id| selected(cfg, id)).cloned().collect();
        if !filter.is_empty() {
            for o in geometry_lab::run_checks(model.as_ref(), &ncfg, &filter)? {
                records.push(record(&o.id, o.anchor, o.passed, o.residue.clone(), o.wall_time_ms));
                outcomes.push(o);
            }
        }
        for id in ids.iter().filter(|id| !filter.contains(id)) {
            records.push(skipped(id, ""));
        }
    }
    Ok((records, outcomes))
}

fn inject_failures(records: &mut [VerificationRecord]) {
    if let Ok(ids) = std::env::var(INJECT_ENV) {
        for id in ids.split(',').map(str::trim) {
            if let Some(r) = records.iter_mut().find(|r| r.check_id == id && r.status != Status::Skipped) {
                r.status = Status::Fail;
                r.residue = format!("injected failure ({INJECT_ENV})");
            }
        }
    }
}

/// Validates the configuration and check names, then runs everything.
pub fn verify(cfg: &RunConfig) -> Result<RunOutcome, HarnessError> {
    cfg.validate()?;
    let valid = valid_ids(cfg);
    if let Some(bad) = cfg.checks.iter().find(|c| !valid.contains(c)) {
        return Err(HarnessError::UnknownCheck { name: bad.clone(), valid });
    }
    let mut records = Vec::new();
    let mut numeric = Vec::new();
    if cfg.suite.symbolic() {
        records.extend(run_symbolic(cfg)?);
    }
    if cfg.suite.numeric() {
        let (r, n) = run_numeric(cfg)?;
        records.extend(r);
        numeric = n;
    }
    inject_failures(&mut records);
    let manifest = Manifest::new(records, cfg.clone());
    let written = write_outputs(cfg, &manifest, &numeric)?;
    Ok(RunOutcome { manifest, numeric, written })
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct SummaryEntry<'a> {
    check_id: &'a str,
    paper_anchor: &'a str,
    passed: bool,
    residue: &'a str,
    fits: &'a [geometry_lab::NamedFit],
}

fn write_outputs(cfg: &RunConfig, manifest: &Manifest, numeric: &[NumericOutcome]) -> Result<Vec<PathBuf>, HarnessError> {
    let dir = &cfg.output_dir;
    let mut written = Vec::new();
    let mut put = |name: PathBuf, bytes: Vec<u8>| -> Result<(), HarnessError> {
        write_atomic(&name, &bytes)?;
        written.push(name);
        Ok(())
    };
    let mut json = serde_json::to_vec_pretty(manifest)?;
    json.push(b'\n');
    put(dir.join("manifest.json"), json)?;
    let report = Report { records: manifest.records.clone() };
    let ext = match cfg.format {
        crate::config::Format::Csv => "csv",
        crate::config::Format::Json => "json",
    };
    put(dir.join(format!("report.{ext}")), render(&report, cfg.format)?.into_bytes())?;
    if !numeric.is_empty() {
        let exp = dir.join("experiments");
        for o in numeric {
            put(exp.join(format!("{}.csv", o.id)), csv_bytes(&o.rows)?)?;
        }
        let summary: Vec<SummaryEntry> = numeric
            .iter()
            .map(|o| SummaryEntry { check_id: &o.id, paper_anchor: o.anchor, passed: o.passed, residue: &o.residue, fits: &o.fits })
            .collect();
        let mut s = serde_json::to_vec_pretty(&summary)?;
        s.push(b'\n');
        put(exp.join("summary.json"), s)?;
    }
    Ok(written)
}
