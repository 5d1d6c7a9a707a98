//! Run configuration and machine-readable check reports.

use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Output format of the runner.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Text,
    Json,
}

/// Fault injections for demonstrating that the detectors catch corruption.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Injection {
    /// Replace the degree-3 map of the first homotopy row by the identity.
    TableF3Identity,
    /// Break one anticommutation relation of the Clifford system.
    CliffordAnticommute,
}

/// Which verification suites to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, PartialOrd, Ord)]
#[serde(rename_all = "lowercase")]
pub enum SuiteId {
    Algebra,
    Chains,
    Inclusions,
    Homotopy,
}

pub const ALL_SUITES: [SuiteId; 4] = [
    SuiteId::Algebra,
    SuiteId::Chains,
    SuiteId::Inclusions,
    SuiteId::Homotopy,
];

impl SuiteId {
    pub fn label(self) -> &'static str {
        match self {
            SuiteId::Algebra => "algebra",
            SuiteId::Chains => "chains",
            SuiteId::Inclusions => "inclusions",
            SuiteId::Homotopy => "homotopy",
        }
    }

    pub fn parse(s: &str) -> Result<Vec<SuiteId>> {
        match s {
            "all" => Ok(ALL_SUITES.to_vec()),
            "algebra" => Ok(vec![SuiteId::Algebra]),
            "chains" => Ok(vec![SuiteId::Chains]),
            "inclusions" => Ok(vec![SuiteId::Inclusions]),
            "homotopy" => Ok(vec![SuiteId::Homotopy]),
            other => Err(Error::Config(format!("unknown suite '{other}'"))),
        }
    }
}

/// Runner configuration; field names double as config-file keys.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunConfig {
    pub n: usize,
    pub seed: u64,
    pub tol_predicate: f64,
    pub tol_distance: f64,
    pub samples: usize,
    pub suites: Vec<SuiteId>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
    pub format: Format,
    /// Hard cap on the ambient dimension `16·n`.
    pub dim_cap: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub inject: Option<Injection>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            n: 1,
            seed: 42,
            tol_predicate: crate::algebra::TOL_PREDICATE,
            tol_distance: crate::algebra::TOL_DISTANCE,
            samples: 100,
            suites: ALL_SUITES.to_vec(),
            out: None,
            format: Format::Text,
            dim_cap: 64,
            inject: None,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::Config("n must be positive".into()));
        }
        if 16 * self.n > self.dim_cap {
            return Err(Error::DimensionCap(16 * self.n, self.dim_cap));
        }
        if !(self.tol_predicate > 0.0 && self.tol_distance > 0.0) {
            return Err(Error::Config("tolerances must be positive".into()));
        }
        if self.samples == 0 {
            return Err(Error::Config("samples must be positive".into()));
        }
        if self.suites.is_empty() {
            return Err(Error::Config("no suites selected".into()));
        }
        Ok(())
    }

    /// Parse a flat `key = value` config file with `#` comments.
    pub fn apply_config_file(&mut self, text: &str) -> Result<()> {
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::Config(format!("line {}: expected key = value", lineno + 1))
            })?;
            let (key, value) = (key.trim(), value.trim());
            let bad = |e: &dyn std::fmt::Display| {
                Error::Config(format!("line {}: {key}: {e}", lineno + 1))
            };
            match key {
                "n" => self.n = value.parse().map_err(|e| bad(&e))?,
                "seed" => self.seed = value.parse().map_err(|e| bad(&e))?,
                "tol_predicate" => self.tol_predicate = value.parse().map_err(|e| bad(&e))?,
                "tol_distance" => self.tol_distance = value.parse().map_err(|e| bad(&e))?,
                "samples" => self.samples = value.parse().map_err(|e| bad(&e))?,
                "suite" | "suites" => self.suites = SuiteId::parse(value)?,
                "format" => {
                    self.format = match value {
                        "text" => Format::Text,
                        "json" => Format::Json,
                        other => return Err(Error::Config(format!("unknown format '{other}'"))),
                    }
                }
                "out" => self.out = Some(PathBuf::from(value)),
                "dim_cap" => self.dim_cap = value.parse().map_err(|e| bad(&e))?,
                other => return Err(Error::Config(format!("unknown key '{other}'"))),
            }
        }
        Ok(())
    }
}

/// Status of one executed check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

/// Result of one executed check.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CheckResult {
    pub check_id: String,
    pub suite: SuiteId,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_residual: Option<f64>,
    /// Structured evidence; always present on failure.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<serde_json::Value>,
    /// The verified statement, in plain language.
    pub claim: String,
    pub elapsed_ms: u64,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize, Default, PartialEq, Eq)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub skip: usize,
}

/// Full report of a run.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Report {
    pub config: RunConfig,
    pub results: Vec<CheckResult>,
    pub summary: Summary,
}

impl Report {
    pub fn new(config: RunConfig, results: Vec<CheckResult>) -> Self {
        let mut summary = Summary::default();
        for r in &results {
            match r.status {
                Status::Pass => summary.pass += 1,
                Status::Fail => summary.fail += 1,
                Status::Skip => summary.skip += 1,
            }
        }
        Self {
            config,
            results,
            summary,
        }
    }

    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(self).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for r in &self.results {
            let status = match r.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Skip => "SKIP",
            };
            let resid = r
                .max_residual
                .map(|x| format!("{x:.3e}"))
                .unwrap_or_else(|| "-".into());
            out.push_str(&format!(
                "{status}  {:<42} residual {:<10}  {}\n",
                r.check_id, resid, r.claim
            ));
        }
        out.push_str(&format!(
            "summary: {} pass, {} fail, {} skip\n",
            self.summary.pass, self.summary.fail, self.summary.skip
        ));
        out
    }

    /// Emit to the configured sink.
    pub fn emit(&self) -> Result<String> {
        if self.results.is_empty() {
            return Err(Error::Config("nothing to report".into()));
        }
        let rendered = match self.config.format {
            Format::Json => self.to_json()?,
            Format::Text => self.to_text(),
        };
        if let Some(path) = &self.config.out {
            std::fs::write(path, &rendered)?;
        }
        Ok(rendered)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_file_round_trip() {
        let mut cfg = RunConfig::default();
        cfg.apply_config_file(
            "# defaults for CI\nn = 1\nseed = 7\ntol_predicate = 1e-10\nsuite = homotopy\nformat = json\n",
        )
        .unwrap();
        assert_eq!(cfg.seed, 7);
        assert_eq!(cfg.suites, vec![SuiteId::Homotopy]);
        assert_eq!(cfg.format, Format::Json);
        assert!(cfg.validate().is_ok());
    }

    #[test]
    fn dimension_cap_is_enforced() {
        let cfg = RunConfig {
            n: 5,
            ..RunConfig::default()
        };
        assert!(matches!(cfg.validate(), Err(Error::DimensionCap(80, 64))));
    }

    #[test]
    fn bad_config_lines_are_rejected() {
        let mut cfg = RunConfig::default();
        assert!(cfg.apply_config_file("nonsense\n").is_err());
        assert!(cfg.apply_config_file("unknown_key = 3\n").is_err());
    }

    #[test]
    fn report_json_round_trips() {
        let cfg = RunConfig::default();
        let results = vec![CheckResult {
            check_id: "demo/one".into(),
            suite: SuiteId::Algebra,
            status: Status::Pass,
            max_residual: Some(1e-14),
            witness: None,
            claim: "demo".into(),
            elapsed_ms: 1,
        }];
        let report = Report::new(cfg, results);
        let txt = report.to_json().unwrap();
        let back: Report = serde_json::from_str(&txt).unwrap();
        assert_eq!(back.summary, report.summary);
        assert_eq!(back.results.len(), 1);
    }
}
