use std::fs;
use std::path::{Path, PathBuf};

use clap::ValueEnum;
use serde::{Deserialize, Serialize};
use zetasym::su2::DEFAULT_REP_TOLERANCE;
use zetasym::symmetry::DEFAULT_PT_TOLERANCE;
use zetasym::zeros::{DEFAULT_SCAN_STEP, DEFAULT_ZERO_TOLERANCE, MAX_SCAN_STEP};
use zetasym::zeta::EvalConfig;

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Csv,
    Table,
}

/// Settings shared by every command, loadable from a JSON file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunConfig {
    pub eval: EvalConfig,
    /// `|zeta(1/2 + i omega)|` below this counts as a zero.
    pub zero_tolerance: f64,
    pub pt_tolerance: f64,
    pub rep_tolerance: f64,
    pub scan_step: f64,
    pub registry: Option<PathBuf>,
    pub format: OutputFormat,
    /// Significant digits in `table` output.
    pub display_digits: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            eval: EvalConfig::default(),
            zero_tolerance: DEFAULT_ZERO_TOLERANCE,
            pt_tolerance: DEFAULT_PT_TOLERANCE,
            rep_tolerance: DEFAULT_REP_TOLERANCE,
            scan_step: DEFAULT_SCAN_STEP,
            registry: None,
            format: OutputFormat::Json,
            display_digits: 12,
        }
    }
}

pub fn check_tolerance(name: &str, tol: f64) -> CliResult<()> {
    if tol.is_finite() && tol > 0.0 {
        Ok(())
    } else {
        Err(CliError::Usage(format!("{name} must be a positive number, got {tol}")))
    }
}

impl RunConfig {
    pub fn load(path: &Path) -> CliResult<Self> {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        let cfg: RunConfig = serde_json::from_str(&text)
            .map_err(|e| CliError::Usage(format!("invalid config {}: {e}", path.display())))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> CliResult<()> {
        self.eval.validate().map_err(|e| CliError::Usage(e.to_string()))?;
        check_tolerance("zero_tolerance", self.zero_tolerance)?;
        check_tolerance("pt_tolerance", self.pt_tolerance)?;
        check_tolerance("rep_tolerance", self.rep_tolerance)?;
        if !(self.scan_step > 0.0 && self.scan_step <= MAX_SCAN_STEP) {
            return Err(CliError::Usage(format!(
                "scan_step must lie in (0, {MAX_SCAN_STEP}], got {}",
                self.scan_step
            )));
        }
        if !(1..=17).contains(&self.display_digits) {
            return Err(CliError::Usage(format!(
                "display_digits must lie in 1..=17, got {}",
                self.display_digits
            )));
        }
        if let Some(p) = &self.registry {
            if p.as_os_str().is_empty() || p.file_name().is_none() {
                return Err(CliError::Usage(format!(
                    "registry path `{}` is not a file path",
                    p.display()
                )));
            }
        }
        Ok(())
    }
}
