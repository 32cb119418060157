use std::path::Path;

use num_complex::Complex64;
use serde_json::{json, Value};
use zetasym::error::Error as CoreError;
use zetasym::su2::{verify_nontrivial_rep, verify_trivial_rep, AlgebraReport};
use zetasym::symmetry::{pt_check, pt_residual, witten_classify, SusyCategory};
use zetasym::zeros::{critical_line_residual, scan_zeros_with_tolerance, ZeroRecord, ZeroRegistry};
use zetasym::zeta::{hardy_z, zeta_eval, POLE_RADIUS};

use crate::complex::parse_complex;
use crate::config::{check_tolerance, RunConfig};
use crate::error::{CliError, CliResult, EXIT_NEGATIVE, EXIT_OK};
use crate::registry;
use crate::report::{Cell, Report, Table};

/// Largest number of rows `plotdata` will emit.
pub const MAX_SAMPLES: usize = 1_000_000;
/// A requested ordinate snaps to a zero within this distance.
pub const ORDINATE_SNAP: f64 = 1e-3;

pub struct Outcome {
    pub report: Report,
    pub exit: u8,
}

fn complex_json(z: Complex64) -> Value {
    // `+ 0.0` turns -0.0 into 0.0 so reports do not print a signed zero
    json!({ "re": z.re + 0.0, "im": z.im + 0.0 })
}

fn settings(run: &RunConfig, tolerance: Option<f64>) -> Value {
    let mut s = json!({
        "eval": run.eval,
        "format": run.format,
    });
    if let Some(t) = tolerance {
        s["tolerance"] = json!(t);
    }
    s
}

fn finite(name: &str, x: f64) -> CliResult<f64> {
    if x.is_finite() {
        Ok(x)
    } else {
        Err(CliError::Usage(format!("{name} must be finite, got {x}")))
    }
}

pub fn zeta(run: &RunConfig, literal: &str) -> CliResult<Outcome> {
    let s = parse_complex(literal)?;
    let eval = zeta_eval(s, &run.eval)?;
    let one = Complex64::new(1.0, 0.0);
    // b(s) needs zeta(1 - s), which has its pole at s = 0
    let b = if s.norm() < POLE_RADIUS {
        None
    } else {
        Some(eval.value * zeta_eval(one - s, &run.eval)?.value)
    };
    let precision_ok = eval.error_estimate <= run.eval.target_abs_tol * eval.value.norm().max(1.0);
    let result = json!({
        "zeta": complex_json(eval.value),
        "abs": eval.value.norm(),
        "b": b.map(complex_json),
        "error_estimate": eval.error_estimate,
        "method": eval.method,
        "precision_ok": precision_ok,
    });
    let mut table = Table::new(&["quantity", "re", "im"]);
    table.push(vec!["zeta".into(), eval.value.re.into(), eval.value.im.into()]);
    match b {
        Some(b) => table.push(vec!["b".into(), b.re.into(), b.im.into()]),
        None => table.push(vec!["b".into(), Cell::Empty, Cell::Empty]),
    }
    table.push(vec!["abs".into(), eval.value.norm().into(), Cell::Empty]);
    table.push(vec!["error_estimate".into(), eval.error_estimate.into(), Cell::Empty]);
    Ok(Outcome {
        report: Report {
            command: "zeta".into(),
            inputs: json!({ "s": complex_json(s) }),
            settings: settings(run, None),
            result,
            table,
        },
        exit: EXIT_OK,
    })
}

fn record_json(r: &ZeroRecord) -> Value {
    json!({
        "ordinate": r.ordinate,
        "residual": r.residual,
        "bracket": [r.bracket_lo, r.bracket_hi],
        "iterations": r.refinement_iterations,
    })
}

pub fn zeros_scan(run: &RunConfig, tol: f64, t_min: f64, t_max: f64, step: f64) -> CliResult<Outcome> {
    check_tolerance("tolerance", tol)?;
    let records = scan_zeros_with_tolerance(finite("t-min", t_min)?, finite("t-max", t_max)?, step, tol, &run.eval)?;
    let found = ZeroRegistry {
        records: records.clone(),
        scan_range: (t_min, t_max),
        tolerance: tol,
    };
    let registry_size = match &run.registry {
        Some(path) => Some(registry::merge_into(path, &found)?.records.len()),
        None => None,
    };
    let mut table = Table::new(&["ordinate", "residual", "bracket_lo", "bracket_hi", "iterations"]);
    for r in &records {
        table.push(vec![
            r.ordinate.into(),
            r.residual.into(),
            r.bracket_lo.into(),
            r.bracket_hi.into(),
            r.refinement_iterations.into(),
        ]);
    }
    Ok(Outcome {
        report: Report {
            command: "zeros scan".into(),
            inputs: json!({ "t_min": t_min, "t_max": t_max, "step": step }),
            settings: settings(run, Some(tol)),
            result: json!({
                "count": records.len(),
                "zeros": records.iter().map(record_json).collect::<Vec<_>>(),
                "registry_size": registry_size,
            }),
            table,
        },
        exit: EXIT_OK,
    })
}

pub fn susy_classify(run: &RunConfig, tol: f64, sigma: f64, omega: f64) -> CliResult<Outcome> {
    check_tolerance("tolerance", tol)?;
    let v = witten_classify(finite("sigma", sigma)?, finite("omega", omega)?, tol, &run.eval)?;
    let table = Table::fields(vec![
        ("category", format!("{:?}", v.category).into()),
        ("ground_energy_re", v.ground_energy.re.into()),
        ("ground_energy_im", v.ground_energy.im.into()),
        ("zero_residual", v.zero_residual.into()),
        ("n_b", u32::from(v.n_b).into()),
        ("n_f", u32::from(v.n_f).into()),
        ("witten_index", Cell::Int(v.witten_index().into())),
    ]);
    let exit = if v.category == SusyCategory::UnbrokenNontrivialZero {
        EXIT_OK
    } else {
        EXIT_NEGATIVE
    };
    Ok(Outcome {
        report: Report {
            command: "susy classify".into(),
            inputs: json!({ "sigma": sigma, "omega": omega }),
            settings: settings(run, Some(tol)),
            result: json!({
                "category": v.category,
                "ground_energy": complex_json(v.ground_energy),
                "zero_residual": v.zero_residual,
                "n_b": v.n_b,
                "n_f": v.n_f,
                "witten_index": v.witten_index(),
            }),
            table,
        },
        exit,
    })
}

pub fn pt_check_cmd(run: &RunConfig, tol: f64, sigma: f64, omega: f64) -> CliResult<Outcome> {
    check_tolerance("tolerance", tol)?;
    let v = pt_check(finite("sigma", sigma)?, finite("omega", omega)?, tol, &run.eval)?;
    let table = Table::fields(vec![
        ("unbroken", v.unbroken.into()),
        ("residual_re", v.residual.re.into()),
        ("residual_im", v.residual.im.into()),
        ("residual_abs", v.residual.norm().into()),
    ]);
    Ok(Outcome {
        report: Report {
            command: "pt check".into(),
            inputs: json!({ "sigma": sigma, "omega": omega }),
            settings: settings(run, Some(tol)),
            result: json!({
                "unbroken": v.unbroken,
                "residual": complex_json(v.residual),
                "residual_abs": v.residual.norm(),
            }),
            table,
        },
        exit: if v.unbroken { EXIT_OK } else { EXIT_NEGATIVE },
    })
}

fn algebra_result(r: &AlgebraReport) -> Value {
    let j0: serde_json::Map<String, Value> = r.j0_values.iter().map(|(k, v)| (k.clone(), complex_json(*v))).collect();
    json!({
        "passed": r.passed,
        "family": r.family,
        "k": complex_json(r.k),
        "sqrt_b_k": complex_json(r.sqrt_b_k),
        "casimir": complex_json(r.casimir_value),
        "j0_values": j0,
        "relation_residuals": r.relation_residuals,
        "diagnostics": r.diagnostics,
    })
}

fn algebra_table(r: &AlgebraReport) -> Table {
    let mut t = Table::new(&["check", "value", "gated"]);
    t.push(vec!["passed".into(), r.passed.into(), Cell::Empty]);
    t.push(vec!["casimir_re".into(), r.casimir_value.re.into(), Cell::Empty]);
    t.push(vec!["casimir_im".into(), r.casimir_value.im.into(), Cell::Empty]);
    for (m, v) in &r.j0_values {
        t.push(vec![format!("j0[{m}]").into(), v.re.into(), Cell::Empty]);
    }
    for (name, v) in &r.relation_residuals {
        t.push(vec![name.as_str().into(), (*v).into(), true.into()]);
    }
    for (name, v) in &r.diagnostics {
        t.push(vec![name.as_str().into(), (*v).into(), false.into()]);
    }
    t
}

/// The zero ordinate nearest `omega`: from the registry when it has one
/// within [`ORDINATE_SNAP`], else from a local scan.
fn resolve_ordinate(run: &RunConfig, omega: f64) -> CliResult<(f64, &'static str)> {
    if let Some(path) = &run.registry {
        if let Some(reg) = registry::read_if_present(path)? {
            if let Some(rec) = reg.find(omega, ORDINATE_SNAP) {
                return Ok((rec.ordinate, "registry"));
            }
        }
    }
    let lo = (omega - 0.5).max(0.0);
    let near = scan_zeros_with_tolerance(lo, omega + 0.5, run.scan_step, run.zero_tolerance, &run.eval)?;
    near.iter()
        .filter(|r| (r.ordinate - omega).abs() <= ORDINATE_SNAP)
        .min_by(|a, b| (a.ordinate - omega).abs().total_cmp(&(b.ordinate - omega).abs()))
        .map(|r| (r.ordinate, "scan"))
        .ok_or_else(|| {
            let residual = critical_line_residual(omega, &run.eval).unwrap_or(f64::NAN);
            CliError::Core(CoreError::NotAZero { omega, residual })
        })
}

pub fn su2_nontrivial(run: &RunConfig, tol: f64, omega: f64) -> CliResult<Outcome> {
    check_tolerance("tolerance", tol)?;
    let (ordinate, source) = resolve_ordinate(run, finite("omega", omega)?)?;
    let r = verify_nontrivial_rep(ordinate, tol, &run.eval)?;
    let mut result = algebra_result(&r);
    result["ordinate"] = json!(ordinate);
    result["ordinate_source"] = json!(source);
    Ok(Outcome {
        report: Report {
            command: "su2 verify nontrivial".into(),
            inputs: json!({ "omega": omega }),
            settings: settings(run, Some(tol)),
            result,
            table: algebra_table(&r),
        },
        exit: if r.passed { EXIT_OK } else { EXIT_NEGATIVE },
    })
}

pub fn su2_trivial(run: &RunConfig, tol: f64, n: u32, omega: f64) -> CliResult<Outcome> {
    check_tolerance("tolerance", tol)?;
    if n == 0 {
        return Err(CliError::Usage("N must be at least 1".into()));
    }
    if !(omega.is_finite() && omega > 0.0) {
        return Err(CliError::Usage(format!("omega must be positive, got {omega}")));
    }
    let r = verify_trivial_rep(n, omega, tol, &run.eval)?;
    Ok(Outcome {
        report: Report {
            command: "su2 verify trivial".into(),
            inputs: json!({ "n": n, "omega": omega }),
            settings: settings(run, Some(tol)),
            result: algebra_result(&r),
            table: algebra_table(&r),
        },
        exit: if r.passed { EXIT_OK } else { EXIT_NEGATIVE },
    })
}

/// `min, min + step, ...` up to `max` inclusive (with slack for rounding).
pub fn grid(name: &str, min: f64, max: f64, step: f64) -> CliResult<Vec<f64>> {
    finite(name, min)?;
    finite(name, max)?;
    if !(step.is_finite() && step > 0.0) {
        return Err(CliError::Usage(format!("{name} step must be positive, got {step}")));
    }
    if min >= max {
        return Err(CliError::Usage(format!("{name} range [{min}, {max}] is empty")));
    }
    let intervals = ((max - min) / step + 1e-9).floor();
    if intervals + 1.0 > MAX_SAMPLES as f64 {
        return Err(CliError::Usage(format!(
            "{name} grid has {} samples, more than {MAX_SAMPLES}",
            intervals + 1.0
        )));
    }
    // snap away accumulated representation error such as 0.6000000000000001
    let snap = |x: f64| (x * 1e12).round() / 1e12;
    Ok((0..=intervals as usize).map(|i| snap(min + i as f64 * step)).collect())
}

pub fn plot_hardy_z(run: &RunConfig, t_min: f64, t_max: f64, step: f64) -> CliResult<Outcome> {
    let ts = grid("t", t_min, t_max, step)?;
    let mut table = Table::new(&["t", "z"]);
    for t in ts {
        table.push(vec![t.into(), hardy_z(t, &run.eval)?.into()]);
    }
    Ok(Outcome {
        report: Report {
            command: "plotdata hardy-z".into(),
            inputs: json!({ "t_min": t_min, "t_max": t_max, "step": step }),
            settings: settings(run, None),
            result: table.to_json(),
            table,
        },
        exit: EXIT_OK,
    })
}

pub struct HeatmapAxes {
    pub sigma: (f64, f64, f64),
    pub omega: (f64, f64, f64),
}

pub fn plot_pt_heatmap(run: &RunConfig, axes: &HeatmapAxes) -> CliResult<Outcome> {
    let sigmas = grid("sigma", axes.sigma.0, axes.sigma.1, axes.sigma.2)?;
    let omegas = grid("omega", axes.omega.0, axes.omega.1, axes.omega.2)?;
    if sigmas.len() * omegas.len() > MAX_SAMPLES {
        return Err(CliError::Usage(format!(
            "heatmap has {} cells, more than {MAX_SAMPLES}",
            sigmas.len() * omegas.len()
        )));
    }
    let mut table = Table::new(&["sigma", "omega", "abs_im_residual"]);
    for &sigma in &sigmas {
        for &omega in &omegas {
            let r = pt_residual(sigma, omega, &run.eval)?;
            table.push(vec![sigma.into(), omega.into(), r.im.abs().into()]);
        }
    }
    Ok(Outcome {
        report: Report {
            command: "plotdata pt-heatmap".into(),
            inputs: json!({
                "sigma": [axes.sigma.0, axes.sigma.1, axes.sigma.2],
                "omega": [axes.omega.0, axes.omega.1, axes.omega.2],
            }),
            settings: settings(run, None),
            result: table.to_json(),
            table,
        },
        exit: EXIT_OK,
    })
}

/// Writes `text` to `out`, or returns it for stdout.
pub fn deliver(text: String, out: Option<&Path>) -> CliResult<Option<String>> {
    match out {
        Some(path) => {
            std::fs::write(path, text).map_err(|e| CliError::Output(format!("{}: {e}", path.display())))?;
            Ok(None)
        }
        None => Ok(Some(text)),
    }
}
