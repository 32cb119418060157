//! Browser bindings. Every export returns a JSON string; the plain `*_json`
//! functions behind them are ordinary Rust and are tested natively.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;
use zetasym::su2::{verify_nontrivial_rep, DEFAULT_REP_TOLERANCE};
use zetasym::symmetry::{pt_check, pt_residual, witten_classify, CRITICAL_LINE_TOL, DEFAULT_PT_TOLERANCE};
use zetasym::zeros::{scan_zeros, DEFAULT_SCAN_STEP, DEFAULT_ZERO_TOLERANCE};
use zetasym::zeta::{hardy_z, EvalConfig};

/// Browser plots stay responsive well below this.
pub const MAX_POINTS: usize = 200_000;

fn axis(name: &str, lo: f64, hi: f64, n: usize) -> Result<Vec<f64>, String> {
    if !(lo.is_finite() && hi.is_finite()) || lo >= hi {
        return Err(format!("{name}: need finite min < max, got [{lo}, {hi}]"));
    }
    if n < 2 {
        return Err(format!("{name}: need at least 2 samples, got {n}"));
    }
    let h = (hi - lo) / (n - 1) as f64;
    Ok((0..n)
        .map(|i| if i + 1 == n { hi } else { lo + h * i as f64 })
        .collect())
}

fn check_size(n: usize) -> Result<(), String> {
    if n > MAX_POINTS {
        return Err(format!("{n} samples requested, the demo allows {MAX_POINTS}"));
    }
    Ok(())
}

/// Z(t) on `n` points of [t_min, t_max] plus the zeros located there.
pub fn hardy_z_json(t_min: f64, t_max: f64, n: usize) -> Result<String, String> {
    check_size(n)?;
    let cfg = EvalConfig::default();
    let t = axis("t", t_min.max(0.0), t_max, n)?;
    let z = t
        .iter()
        .map(|&t| hardy_z(t, &cfg))
        .collect::<Result<Vec<f64>, _>>()
        .map_err(|e| e.to_string())?;
    let zeros: Vec<f64> = scan_zeros(t_min.max(0.0), t_max, DEFAULT_SCAN_STEP, &cfg)
        .map_err(|e| e.to_string())?
        .into_iter()
        .map(|r| r.ordinate)
        .collect();
    Ok(json!({ "t": t, "z": z, "zeros": zeros }).to_string())
}

/// `|Im R(sigma, omega)|`, row-major over sigma. Cells on a pole are null.
pub fn pt_heatmap_json(
    sigma_min: f64,
    sigma_max: f64,
    n_sigma: usize,
    omega_min: f64,
    omega_max: f64,
    n_omega: usize,
) -> Result<String, String> {
    check_size(n_sigma.saturating_mul(n_omega))?;
    let cfg = EvalConfig::default();
    let sigma = axis("sigma", sigma_min, sigma_max, n_sigma)?;
    let omega = axis("omega", omega_min, omega_max, n_omega)?;
    let mut values = Vec::with_capacity(sigma.len() * omega.len());
    for &s in &sigma {
        for &w in &omega {
            values.push(pt_residual(s, w, &cfg).ok().map(|r| r.im.abs()));
        }
    }
    Ok(json!({ "sigma": sigma, "omega": omega, "values": values }).to_string())
}

/// SUSY and PT verdicts at `s = sigma + i omega`; when sigma = 1/2 and a
/// zero lies within 1/2 of omega, the SU(2) report at that zero as well.
pub fn inspect_json(sigma: f64, omega: f64) -> Result<String, String> {
    let cfg = EvalConfig::default();
    let susy = witten_classify(sigma, omega, DEFAULT_ZERO_TOLERANCE, &cfg).map_err(|e| e.to_string())?;
    let pt = pt_check(sigma, omega, DEFAULT_PT_TOLERANCE, &cfg).map_err(|e| e.to_string())?;
    let mut su2 = Value::Null;
    if (sigma - 0.5).abs() <= CRITICAL_LINE_TOL {
        let near =
            scan_zeros((omega - 0.5).max(0.0), omega + 0.5, DEFAULT_SCAN_STEP, &cfg).map_err(|e| e.to_string())?;
        if let Some(rec) = near
            .iter()
            .min_by(|a, b| (a.ordinate - omega).abs().total_cmp(&(b.ordinate - omega).abs()))
        {
            let report = verify_nontrivial_rep(rec.ordinate, DEFAULT_REP_TOLERANCE, &cfg).map_err(|e| e.to_string())?;
            su2 = serde_json::to_value(report).map_err(|e| e.to_string())?;
        }
    }
    Ok(json!({ "susy": susy, "witten_index": susy.witten_index(), "pt": pt, "su2": su2 }).to_string())
}

#[wasm_bindgen]
pub fn hardy_z_series(t_min: f64, t_max: f64, n: usize) -> Result<String, JsError> {
    hardy_z_json(t_min, t_max, n).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn pt_heatmap(
    sigma_min: f64,
    sigma_max: f64,
    n_sigma: usize,
    omega_min: f64,
    omega_max: f64,
    n_omega: usize,
) -> Result<String, JsError> {
    pt_heatmap_json(sigma_min, sigma_max, n_sigma, omega_min, omega_max, n_omega).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn inspect(sigma: f64, omega: f64) -> Result<String, JsError> {
    inspect_json(sigma, omega).map_err(|e| JsError::new(&e))
}
