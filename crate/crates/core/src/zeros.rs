//! Nontrivial zeros on the critical line: sign-change scanning of Hardy's Z,
//! bisection refinement, and a JSON-backed registry of located ordinates.

use std::fs;
use std::path::Path;

use num_complex::Complex64;
use serde::Serialize;
use serde_json::Value;

use crate::error::{ensure_finite, Error, Result};
use crate::parallel::map_chunked;
use crate::zeta::{hardy_z, zeta, EvalConfig};

/// Bracket width at which bisection stops.
pub const BRACKET_WIDTH: f64 = 1e-9;
/// Default residual tolerance for accepting a refined zero.
pub const DEFAULT_ZERO_TOLERANCE: f64 = 1e-6;
pub const DEFAULT_SCAN_STEP: f64 = 0.1;
pub const MAX_SCAN_STEP: f64 = 0.5;
/// Ordinates closer than this are the same zero.
pub const MIN_ORDINATE_GAP: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq)]
pub struct ZeroRecord {
    pub ordinate: f64,
    /// `|zeta(1/2 + i ordinate)|` after refinement.
    pub residual: f64,
    pub bracket_lo: f64,
    pub bracket_hi: f64,
    pub refinement_iterations: u32,
}

/// |zeta(1/2 + i omega)|.
pub fn critical_line_residual(omega: f64, cfg: &EvalConfig) -> Result<f64> {
    Ok(zeta(Complex64::new(0.5, omega), cfg)?.norm())
}

/// Whether `zeta(1/2 + i omega)` and `zeta(1/2 - i omega)` both vanish to `tol`.
pub fn is_nontrivial_zero(omega: f64, tol: f64, cfg: &EvalConfig) -> Result<bool> {
    ensure_finite("omega", omega)?;
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidRange(format!("tolerance must be positive, got {tol}")));
    }
    if tol == f64::INFINITY {
        return Ok(true);
    }
    let upper = critical_line_residual(omega, cfg)?;
    let lower = critical_line_residual(-omega, cfg)?;
    Ok(upper <= tol && lower <= tol)
}

fn positive(z: f64) -> bool {
    z > 0.0
}

/// Bisects a sign-change bracket of Z down to [`BRACKET_WIDTH`]. Returns the
/// record and the bracket width after each iteration.
pub fn refine_bracket(mut lo: f64, mut hi: f64, cfg: &EvalConfig) -> Result<(ZeroRecord, Vec<f64>)> {
    let mut z_lo = hardy_z(lo, cfg)?;
    let z_hi = hardy_z(hi, cfg)?;
    if positive(z_lo) == positive(z_hi) {
        return Err(Error::InvalidRange(format!("no sign change of Z on [{lo}, {hi}]")));
    }
    let mut widths = Vec::new();
    let mut iterations = 0;
    while hi - lo > BRACKET_WIDTH {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let z_mid = hardy_z(mid, cfg)?;
        if positive(z_mid) == positive(z_lo) {
            lo = mid;
            z_lo = z_mid;
        } else {
            hi = mid;
        }
        iterations += 1;
        widths.push(hi - lo);
    }
    let ordinate = 0.5 * (lo + hi);
    let residual = critical_line_residual(ordinate, cfg)?;
    Ok((
        ZeroRecord {
            ordinate,
            residual,
            bracket_lo: lo,
            bracket_hi: hi,
            refinement_iterations: iterations,
        },
        widths,
    ))
}

fn scan_grid(t_min: f64, t_max: f64, step: f64) -> Result<Vec<f64>> {
    ensure_finite("t_min", t_min)?;
    ensure_finite("t_max", t_max)?;
    ensure_finite("step", step)?;
    if !(t_min >= 0.0 && t_min < t_max) {
        return Err(Error::InvalidRange(format!(
            "need 0 <= t_min < t_max, got [{t_min}, {t_max}]"
        )));
    }
    if !(step > 0.0 && step <= MAX_SCAN_STEP) {
        return Err(Error::InvalidRange(format!(
            "need 0 < step <= {MAX_SCAN_STEP}, got {step}"
        )));
    }
    let n = ((t_max - t_min) / step - 1e-9).ceil() as usize;
    let mut grid: Vec<f64> = (0..n).map(|i| t_min + i as f64 * step).collect();
    grid.push(t_max);
    Ok(grid)
}

/// Zeros of Z on `[t_min, t_max]` with the default residual tolerance.
pub fn scan_zeros(t_min: f64, t_max: f64, step: f64, cfg: &EvalConfig) -> Result<Vec<ZeroRecord>> {
    scan_zeros_with_tolerance(t_min, t_max, step, DEFAULT_ZERO_TOLERANCE, cfg)
}

/// One record per sign change of Z on the scan grid, refined by bisection.
///
/// Grid evaluation and refinement both run over disjoint pieces in parallel;
/// the output is sorted by ordinate.
pub fn scan_zeros_with_tolerance(
    t_min: f64,
    t_max: f64,
    step: f64,
    tolerance: f64,
    cfg: &EvalConfig,
) -> Result<Vec<ZeroRecord>> {
    let grid = scan_grid(t_min, t_max, step)?;
    let values = map_chunked(&grid, |&t| hardy_z(t, cfg))
        .into_iter()
        .collect::<Result<Vec<f64>>>()?;

    let brackets: Vec<(f64, f64)> = grid
        .windows(2)
        .zip(values.windows(2))
        .filter(|(_, z)| positive(z[0]) != positive(z[1]))
        .map(|(t, _)| (t[0], t[1]))
        .collect();

    let mut records = map_chunked(&brackets, |&(lo, hi)| refine_bracket(lo, hi, cfg))
        .into_iter()
        .map(|r| r.map(|(rec, _)| rec))
        .collect::<Result<Vec<_>>>()?;
    for rec in &records {
        if rec.residual > tolerance {
            return Err(Error::StepTooCoarse {
                ordinate: rec.ordinate,
                residual: rec.residual,
            });
        }
    }
    records.sort_by(|a, b| a.ordinate.total_cmp(&b.ordinate));
    Ok(records)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ZeroRegistry {
    pub records: Vec<ZeroRecord>,
    pub scan_range: (f64, f64),
    pub tolerance: f64,
}

impl ZeroRegistry {
    pub fn new(tolerance: f64, scan_range: (f64, f64)) -> Self {
        Self {
            records: Vec::new(),
            scan_range,
            tolerance,
        }
    }

    /// Scans `[t_min, t_max]` and collects the results.
    pub fn scan(t_min: f64, t_max: f64, step: f64, tolerance: f64, cfg: &EvalConfig) -> Result<Self> {
        let records = scan_zeros_with_tolerance(t_min, t_max, step, tolerance, cfg)?;
        Ok(Self {
            records,
            scan_range: (t_min, t_max),
            tolerance,
        })
    }

    /// Merges `other` in. Duplicate ordinates (closer than
    /// [`MIN_ORDINATE_GAP`]) keep the record with the smaller residual. The
    /// scan range becomes the hull of both, the tolerance the looser one.
    pub fn merge(&mut self, other: &ZeroRegistry) {
        let mut all: Vec<ZeroRecord> = self.records.iter().chain(other.records.iter()).cloned().collect();
        all.sort_by(|a, b| a.ordinate.total_cmp(&b.ordinate));
        let mut merged: Vec<ZeroRecord> = Vec::with_capacity(all.len());
        for rec in all {
            match merged.last_mut() {
                Some(prev) if rec.ordinate - prev.ordinate < MIN_ORDINATE_GAP => {
                    if rec.residual < prev.residual {
                        *prev = rec;
                    }
                }
                _ => merged.push(rec),
            }
        }
        self.records = merged;
        self.scan_range = (
            self.scan_range.0.min(other.scan_range.0),
            self.scan_range.1.max(other.scan_range.1),
        );
        self.tolerance = self.tolerance.max(other.tolerance);
    }

    /// Record whose ordinate is within `within` of `omega`.
    pub fn find(&self, omega: f64, within: f64) -> Option<&ZeroRecord> {
        self.records
            .iter()
            .filter(|r| (r.ordinate - omega).abs() <= within)
            .min_by(|a, b| (a.ordinate - omega).abs().total_cmp(&(b.ordinate - omega).abs()))
    }

    pub fn ordinates(&self) -> Vec<f64> {
        self.records.iter().map(|r| r.ordinate).collect()
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.tolerance > 0.0 && self.tolerance.is_finite()) {
            return Err(schema("tolerance".into(), "must be a positive number".into()));
        }
        let (lo, hi) = self.scan_range;
        if !(lo.is_finite() && hi.is_finite() && lo <= hi) {
            return Err(schema("scan_range".into(), "must be an ordered pair".into()));
        }
        for (i, rec) in self.records.iter().enumerate() {
            if !(rec.ordinate > 0.0 && rec.ordinate.is_finite()) {
                return Err(schema(format!("records[{i}].ordinate"), "must be positive".into()));
            }
            if !(rec.bracket_lo < rec.ordinate && rec.ordinate < rec.bracket_hi) {
                return Err(schema(
                    format!("records[{i}].bracket"),
                    "must strictly enclose the ordinate".into(),
                ));
            }
            if !(rec.residual >= 0.0 && rec.residual <= self.tolerance) {
                return Err(schema(
                    format!("records[{i}].residual"),
                    format!("{} exceeds tolerance {}", rec.residual, self.tolerance),
                ));
            }
            if i > 0 && rec.ordinate - self.records[i - 1].ordinate < MIN_ORDINATE_GAP {
                return Err(schema(
                    format!("records[{i}].ordinate"),
                    "ordinates must be strictly increasing".into(),
                ));
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> Result<String> {
        self.validate()?;
        let file = RegistryFile {
            tolerance: self.tolerance,
            scan_range: [self.scan_range.0, self.scan_range.1],
            records: self
                .records
                .iter()
                .map(|r| RecordFile {
                    ordinate: format!("{}", r.ordinate),
                    residual: r.residual,
                    bracket: [r.bracket_lo, r.bracket_hi],
                    iterations: r.refinement_iterations,
                })
                .collect(),
        };
        serde_json::to_string_pretty(&file).map_err(|e| Error::Io(e.to_string()))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let root: Value = serde_json::from_str(text).map_err(|e| Error::Schema {
            path: format!("line {} column {}", e.line(), e.column()),
            message: e.to_string(),
        })?;
        let top = object(&root, "", &["tolerance", "scan_range", "records"])?;
        let tolerance = number(&top["tolerance"], "tolerance")?;
        let range = pair(&top["scan_range"], "scan_range")?;
        let list = top["records"]
            .as_array()
            .ok_or_else(|| schema("records".into(), "expected an array".into()))?;
        let records = list
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let at = |field: &str| format!("records[{i}].{field}");
                let rec = object(
                    r,
                    &format!("records[{i}]"),
                    &["ordinate", "residual", "bracket", "iterations"],
                )?;
                let text = rec["ordinate"]
                    .as_str()
                    .ok_or_else(|| schema(at("ordinate"), "expected a decimal string".into()))?;
                let ordinate: f64 = text
                    .trim()
                    .parse()
                    .map_err(|_| schema(at("ordinate"), format!("`{text}` is not a decimal number")))?;
                let bracket = pair(&rec["bracket"], &at("bracket"))?;
                let iterations = rec["iterations"]
                    .as_u64()
                    .and_then(|n| u32::try_from(n).ok())
                    .ok_or_else(|| schema(at("iterations"), "expected a non-negative integer".into()))?;
                Ok(ZeroRecord {
                    ordinate,
                    residual: number(&rec["residual"], &at("residual"))?,
                    bracket_lo: bracket.0,
                    bracket_hi: bracket.1,
                    refinement_iterations: iterations,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let reg = Self {
            records,
            scan_range: range,
            tolerance,
        };
        reg.validate()?;
        Ok(reg)
    }
}

fn schema(path: String, message: String) -> Error {
    Error::Schema { path, message }
}

fn object<'a>(v: &'a Value, path: &str, fields: &[&str]) -> Result<&'a serde_json::Map<String, Value>> {
    let map = v
        .as_object()
        .ok_or_else(|| schema(path.to_string(), "expected an object".into()))?;
    let join = |f: &str| {
        if path.is_empty() {
            f.to_string()
        } else {
            format!("{path}.{f}")
        }
    };
    for f in fields {
        if !map.contains_key(*f) {
            return Err(schema(join(f), "missing field".into()));
        }
    }
    if let Some(extra) = map.keys().find(|k| !fields.contains(&k.as_str())) {
        return Err(schema(join(extra), "unknown field".into()));
    }
    Ok(map)
}

fn number(v: &Value, path: &str) -> Result<f64> {
    v.as_f64()
        .ok_or_else(|| schema(path.to_string(), "expected a number".into()))
}

fn pair(v: &Value, path: &str) -> Result<(f64, f64)> {
    match v.as_array().map(Vec::as_slice) {
        Some([a, b]) => Ok((number(a, &format!("{path}[0]"))?, number(b, &format!("{path}[1]"))?)),
        _ => Err(schema(path.to_string(), "expected a two-element array".into())),
    }
}

#[derive(Serialize)]
struct RegistryFile {
    tolerance: f64,
    scan_range: [f64; 2],
    records: Vec<RecordFile>,
}

#[derive(Serialize)]
struct RecordFile {
    ordinate: String,
    residual: f64,
    bracket: [f64; 2],
    iterations: u32,
}

pub fn save_registry(reg: &ZeroRegistry, path: &Path) -> Result<()> {
    let text = reg.to_json()?;
    fs::write(path, text + "\n")?;
    Ok(())
}

pub fn load_registry(path: &Path) -> Result<ZeroRegistry> {
    let text = fs::read_to_string(path)?;
    ZeroRegistry::from_json(&text)
}
