//! Flat JSON run configuration; command-line flags override file values.

use crate::error::HarnessError;
use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};

pub const PMAX_CEILING: usize = 60;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Symbolic,
    Numeric,
    All,
}

impl Suite {
    pub fn symbolic(self) -> bool {
        matches!(self, Suite::Symbolic | Suite::All)
    }

    pub fn numeric(self) -> bool {
        matches!(self, Suite::Numeric | Suite::All)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum ModelName {
    Cp1,
    Torus,
}

impl ModelName {
    pub fn as_str(self) -> &'static str {
        match self {
            ModelName::Cp1 => "cp1",
            ModelName::Torus => "torus",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", default, deny_unknown_fields)]
pub struct RunConfig {
    pub suite: Suite,
    pub checks: Vec<String>,
    /// None runs the numeric suite on both models.
    pub model: Option<ModelName>,
    pub pmin: usize,
    pub pmax: usize,
    pub quadrature_order: Option<usize>,
    pub output_dir: PathBuf,
    pub seed: u64,
    pub format: Format,
    /// Relative tolerance of the normal-ordering oracle comparison.
    pub oracle_tolerance: f64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            suite: Suite::All,
            checks: Vec::new(),
            model: None,
            pmin: 1,
            pmax: 20,
            quadrature_order: None,
            output_dir: PathBuf::from("semiclass-out"),
            seed: 0,
            format: Format::Csv,
            oracle_tolerance: 1e-10,
        }
    }
}

/// Partial configuration as given by flags; `None` keeps the file value.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub suite: Option<Suite>,
    pub checks: Option<Vec<String>>,
    pub model: Option<ModelName>,
    pub p_range: Option<(usize, usize)>,
    pub quadrature_order: Option<usize>,
    pub output_dir: Option<PathBuf>,
    pub seed: Option<u64>,
    pub format: Option<Format>,
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, HarnessError> {
        let text = std::fs::read_to_string(path)
            .map_err(|source| HarnessError::Missing { path: path.display().to_string(), source })?;
        serde_json::from_str(&text).map_err(|source| HarnessError::Malformed { what: format!("config {}", path.display()), source })
    }

    pub fn apply(mut self, o: Overrides) -> Self {
        if let Some(s) = o.suite {
            self.suite = s;
        }
        if let Some(c) = o.checks {
            self.checks = c;
        }
        if o.model.is_some() {
            self.model = o.model;
        }
        if let Some((lo, hi)) = o.p_range {
            self.pmin = lo;
            self.pmax = hi;
        }
        if o.quadrature_order.is_some() {
            self.quadrature_order = o.quadrature_order;
        }
        if let Some(d) = o.output_dir {
            self.output_dir = d;
        }
        if let Some(s) = o.seed {
            self.seed = s;
        }
        if let Some(f) = o.format {
            self.format = f;
        }
        self
    }

    pub fn validate(&self) -> Result<(), HarnessError> {
        if self.pmin < 1 {
            return Err(HarnessError::Usage(format!("pmin must be at least 1 (got {})", self.pmin)));
        }
        if self.pmax > PMAX_CEILING {
            return Err(HarnessError::Usage(format!("pmax must be at most {PMAX_CEILING} (got {})", self.pmax)));
        }
        if self.pmin > self.pmax {
            return Err(HarnessError::Usage(format!("empty p range {}:{}", self.pmin, self.pmax)));
        }
        if self.quadrature_order == Some(0) {
            return Err(HarnessError::Usage("quadrature order must be positive".into()));
        }
        if self.oracle_tolerance.is_nan() || self.oracle_tolerance < 0.0 {
            return Err(HarnessError::Usage("oracleTolerance must be a non-negative number".into()));
        }
        Ok(())
    }
}

/// Parses `MIN:MAX`.
pub fn parse_p_range(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s.split_once(':').ok_or_else(|| format!("expected MIN:MAX, got `{s}`"))?;
    let lo = a.trim().parse().map_err(|_| format!("bad MIN `{a}`"))?;
    let hi = b.trim().parse().map_err(|_| format!("bad MAX `{b}`"))?;
    Ok((lo, hi))
}
