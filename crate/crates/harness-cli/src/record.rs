//! Verification records, the manifest and its determinism hash.

use crate::config::RunConfig;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct VerificationRecord {
    pub check_id: String,
    pub paper_anchor: String,
    pub status: Status,
    pub residue: String,
    pub wall_time_ms: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Manifest {
    pub records: Vec<VerificationRecord>,
    pub config: RunConfig,
    pub determinism_hash: String,
}

/// Record fields that must be reproducible: everything except wall time.
/// The output directory is also left out of the hashed config.
#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct Stable<'a> {
    check_id: &'a str,
    paper_anchor: &'a str,
    status: Status,
    residue: &'a str,
}

pub fn determinism_hash(records: &[VerificationRecord], config: &RunConfig) -> String {
    let stable: Vec<Stable> = records
        .iter()
        .map(|r| Stable { check_id: &r.check_id, paper_anchor: &r.paper_anchor, status: r.status, residue: &r.residue })
        .collect();
    let mut h = Sha256::new();
    h.update(serde_json::to_vec(&stable).expect("records serialize"));
    let config = RunConfig { output_dir: Default::default(), ..config.clone() };
    h.update(serde_json::to_vec(&config).expect("config serializes"));
    hex::encode(h.finalize())
}

impl Manifest {
    pub fn new(mut records: Vec<VerificationRecord>, config: RunConfig) -> Self {
        sort_records(&mut records);
        let determinism_hash = determinism_hash(&records, &config);
        Manifest { records, config, determinism_hash }
    }
}

pub fn sort_records(records: &mut [VerificationRecord]) {
    records.sort_by(|a, b| a.check_id.cmp(&b.check_id));
}

/// 0 when nothing failed, 1 otherwise; skipped checks do not count.
pub fn exit_code(records: &[VerificationRecord]) -> i32 {
    if records.iter().any(|r| r.status == Status::Fail) {
        1
    } else {
        0
    }
}
