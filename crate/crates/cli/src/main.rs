mod commands;
mod complex;
mod config;
mod error;
mod registry;
mod report;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use crate::commands::{HeatmapAxes, Outcome};
use crate::config::{OutputFormat, RunConfig};
use crate::error::{CliError, CliResult};

/// Riemann zeta evaluation, zero scanning, and SUSY / PT / SU(2) checks.
///
/// Exit codes: 0 success, 1 verified-negative outcome, 2 usage error,
/// 3 numerical domain error.
#[derive(Parser)]
#[command(name = "zetasym", version)]
struct Cli {
    /// RunConfig JSON file.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<OutputFormat>,
    /// Overrides the command's verdict tolerance (for `zeta`, the evaluation target).
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Zero registry file, read by `su2 verify nontrivial` and merged into by `zeros scan`.
    #[arg(long, global = true)]
    registry: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate zeta(s) and b(s) = zeta(s) zeta(1 - s).
    Zeta {
        /// Complex literal: `a`, `a+bi` or `a-bi`.
        #[arg(allow_hyphen_values = true)]
        s: String,
    },
    #[command(subcommand)]
    Zeros(ZerosCommand),
    #[command(subcommand)]
    Susy(SusyCommand),
    #[command(subcommand)]
    Pt(PtCommand),
    #[command(subcommand)]
    Su2(Su2Command),
    #[command(subcommand)]
    Plotdata(PlotCommand),
}

#[derive(Subcommand)]
enum ZerosCommand {
    /// Locate zeros of zeta(1/2 + it) for t in [t-min, t-max].
    Scan {
        #[arg(long, allow_hyphen_values = true)]
        t_min: f64,
        #[arg(long, allow_hyphen_values = true)]
        t_max: f64,
        #[arg(long)]
        step: Option<f64>,
    },
}

#[derive(Subcommand)]
enum SusyCommand {
    /// Witten-index classification of the ground state at s = sigma + i omega.
    Classify {
        #[arg(long, allow_hyphen_values = true)]
        sigma: f64,
        #[arg(long, allow_hyphen_values = true)]
        omega: f64,
    },
}

#[derive(Subcommand)]
enum PtCommand {
    /// PT residual of H- at s = sigma + i omega.
    Check {
        #[arg(long, allow_hyphen_values = true)]
        sigma: f64,
        #[arg(long, allow_hyphen_values = true)]
        omega: f64,
    },
}

#[derive(Subcommand)]
enum Su2Command {
    #[command(subcommand)]
    Verify(Su2Target),
}

#[derive(Subcommand)]
enum Su2Target {
    /// Spin-1/2 representation at the nontrivial zero nearest omega.
    Nontrivial {
        #[arg(long, allow_hyphen_values = true)]
        omega: f64,
    },
    /// Spin-1/2 representation on the trivial-zero pair for N.
    Trivial {
        #[arg(long)]
        n: u32,
        #[arg(long, allow_hyphen_values = true)]
        omega: f64,
    },
}

#[derive(Subcommand)]
enum PlotCommand {
    /// Columns t, Z(t).
    HardyZ {
        #[arg(long, allow_hyphen_values = true)]
        t_min: f64,
        #[arg(long, allow_hyphen_values = true)]
        t_max: f64,
        #[arg(long)]
        step: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Columns sigma, omega, |Im R|, row-major over sigma.
    PtHeatmap {
        #[arg(long, allow_hyphen_values = true)]
        sigma_min: f64,
        #[arg(long, allow_hyphen_values = true)]
        sigma_max: f64,
        #[arg(long)]
        sigma_step: f64,
        #[arg(long, allow_hyphen_values = true)]
        omega_min: f64,
        #[arg(long, allow_hyphen_values = true)]
        omega_max: f64,
        #[arg(long)]
        omega_step: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn run(cli: Cli) -> CliResult<(Option<String>, u8)> {
    let mut cfg = match &cli.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    if let Some(f) = cli.format {
        cfg.format = f;
    }
    if let Some(r) = cli.registry {
        cfg.registry = Some(r);
    }
    if let (Command::Zeta { .. }, Some(t)) = (&cli.command, cli.tol) {
        cfg.eval.target_abs_tol = t;
    }
    cfg.validate()?;
    let tol = |default: f64| cli.tol.unwrap_or(default);

    let mut out_path = None;
    let outcome: Outcome = match cli.command {
        Command::Zeta { s } => commands::zeta(&cfg, &s)?,
        Command::Zeros(ZerosCommand::Scan { t_min, t_max, step }) => {
            let step = step.unwrap_or(cfg.scan_step);
            commands::zeros_scan(&cfg, tol(cfg.zero_tolerance), t_min, t_max, step)?
        }
        Command::Susy(SusyCommand::Classify { sigma, omega }) => {
            commands::susy_classify(&cfg, tol(cfg.zero_tolerance), sigma, omega)?
        }
        Command::Pt(PtCommand::Check { sigma, omega }) => {
            commands::pt_check_cmd(&cfg, tol(cfg.pt_tolerance), sigma, omega)?
        }
        Command::Su2(Su2Command::Verify(Su2Target::Nontrivial { omega })) => {
            commands::su2_nontrivial(&cfg, tol(cfg.rep_tolerance), omega)?
        }
        Command::Su2(Su2Command::Verify(Su2Target::Trivial { n, omega })) => {
            commands::su2_trivial(&cfg, tol(cfg.rep_tolerance), n, omega)?
        }
        Command::Plotdata(PlotCommand::HardyZ {
            t_min,
            t_max,
            step,
            out,
        }) => {
            out_path = out;
            commands::plot_hardy_z(&cfg, t_min, t_max, step)?
        }
        Command::Plotdata(PlotCommand::PtHeatmap {
            sigma_min,
            sigma_max,
            sigma_step,
            omega_min,
            omega_max,
            omega_step,
            out,
        }) => {
            out_path = out;
            let axes = HeatmapAxes {
                sigma: (sigma_min, sigma_max, sigma_step),
                omega: (omega_min, omega_max, omega_step),
            };
            commands::plot_pt_heatmap(&cfg, &axes)?
        }
    };
    let text = outcome.report.render(cfg.format, cfg.display_digits)?;
    Ok((commands::deliver(text, out_path.as_deref())?, outcome.exit))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((text, code)) => {
            if let Some(text) = text {
                let mut stdout = std::io::stdout().lock();
                if stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                    return ExitCode::from(CliError::Output("stdout".into()).exit_code());
                }
            }
            ExitCode::from(code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
