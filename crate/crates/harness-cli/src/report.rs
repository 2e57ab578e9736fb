//! Rendering a manifest (or an earlier JSON report) as a CSV or JSON table.

use crate::config::Format;
use crate::error::HarnessError;
use crate::output::csv_bytes;
use crate::record::{sort_records, Status, VerificationRecord};
use serde::{Deserialize, Serialize};
use std::path::Path;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub records: Vec<VerificationRecord>,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct CsvLine<'a> {
    check_id: &'a str,
    paper_anchor: &'a str,
    status: Status,
    wall_time_ms: f64,
}

/// Accepts a manifest or a report: both carry a `records` array.
pub fn load(path: &Path) -> Result<Report, HarnessError> {
    let text = std::fs::read_to_string(path)
        .map_err(|source| HarnessError::Missing { path: path.display().to_string(), source })?;
    parse(&text).map_err(|source| HarnessError::Malformed { what: format!("manifest {}", path.display()), source })
}

pub fn parse(text: &str) -> Result<Report, serde_json::Error> {
    let mut r: Report = serde_json::from_str(text)?;
    sort_records(&mut r.records);
    Ok(r)
}

pub fn render(report: &Report, format: Format) -> Result<String, HarnessError> {
    let mut records = report.records.clone();
    sort_records(&mut records);
    Ok(match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&Report { records })?;
            s.push('\n');
            s
        }
        Format::Csv => {
            let lines: Vec<CsvLine> = records
                .iter()
                .map(|r| CsvLine { check_id: &r.check_id, paper_anchor: &r.paper_anchor, status: r.status, wall_time_ms: r.wall_time_ms })
                .collect();
            String::from_utf8(csv_bytes(&lines)?).expect("csv output is UTF-8")
        }
    })
}
