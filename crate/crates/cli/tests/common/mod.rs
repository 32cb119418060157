//! Golden cases and process helpers shared by the CLI test targets.
#![allow(dead_code)]

use std::path::PathBuf;
use std::process::{Command, Output};

pub struct Case {
    pub name: &'static str,
    pub args: &'static [&'static str],
    pub exit: i32,
}

pub const CASES: &[Case] = &[
    Case {
        name: "zeta_two.json",
        args: &["zeta", "2"],
        exit: 0,
    },
    Case {
        name: "zeta_negative_even.csv",
        args: &["--format", "csv", "zeta", "-4"],
        exit: 0,
    },
    Case {
        name: "zeta_first_zero.table",
        args: &["--format", "table", "zeta", "0.5+14.134725i"],
        exit: 0,
    },
    Case {
        name: "zeros_10_30.csv",
        args: &[
            "--format", "csv", "zeros", "scan", "--t-min", "10", "--t-max", "30", "--step", "0.1",
        ],
        exit: 0,
    },
    Case {
        name: "zeros_2_10.json",
        args: &["zeros", "scan", "--t-min", "2", "--t-max", "10", "--step", "0.1"],
        exit: 0,
    },
    Case {
        name: "susy_unbroken.json",
        args: &["susy", "classify", "--sigma", "0.5", "--omega", "14.134725"],
        exit: 0,
    },
    Case {
        name: "susy_spontaneous.csv",
        args: &["--format", "csv", "susy", "classify", "--sigma", "0.5", "--omega", "10"],
        exit: 1,
    },
    Case {
        name: "susy_complex.table",
        args: &[
            "--format", "table", "susy", "classify", "--sigma", "0.3", "--omega", "5",
        ],
        exit: 1,
    },
    Case {
        name: "pt_broken.json",
        args: &["pt", "check", "--sigma", "0.3", "--omega", "5.0"],
        exit: 1,
    },
    Case {
        name: "pt_critical.csv",
        args: &["--format", "csv", "pt", "check", "--sigma", "0.5", "--omega", "7.3"],
        exit: 0,
    },
    Case {
        name: "su2_nontrivial.json",
        args: &["su2", "verify", "nontrivial", "--omega", "21.02204"],
        exit: 0,
    },
    Case {
        name: "su2_trivial.table",
        args: &[
            "--format", "table", "su2", "verify", "trivial", "--n", "1", "--omega", "1",
        ],
        exit: 0,
    },
    Case {
        name: "hardy_z.csv",
        args: &[
            "--format", "csv", "plotdata", "hardy-z", "--t-min", "13", "--t-max", "15", "--step", "0.1",
        ],
        exit: 0,
    },
    Case {
        name: "pt_heatmap.csv",
        args: &[
            "--format",
            "csv",
            "plotdata",
            "pt-heatmap",
            "--sigma-min",
            "0.3",
            "--sigma-max",
            "0.7",
            "--sigma-step",
            "0.1",
            "--omega-min",
            "1",
            "--omega-max",
            "3",
            "--omega-step",
            "1",
        ],
        exit: 0,
    },
];

pub fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_zetasym"))
}

pub fn golden_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name)
}

pub fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary should run")
}
