//! Golden-file tests for every command. Set `UPDATE_GOLDEN=1` to rewrite the
//! files after an intended output change.

mod common;

use std::fs;

use common::{golden_path, run, CASES};

#[test]
fn outputs_match_golden_files() {
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    for case in CASES {
        let out = run(case.args);
        assert_eq!(
            out.status.code(),
            Some(case.exit),
            "{}: stderr {}",
            case.name,
            String::from_utf8_lossy(&out.stderr)
        );
        let path = golden_path(case.name);
        if update {
            fs::write(&path, &out.stdout).unwrap();
            continue;
        }
        let want = fs::read(&path).unwrap_or_else(|_| panic!("missing golden file {}", path.display()));
        assert_eq!(
            String::from_utf8_lossy(&out.stdout),
            String::from_utf8_lossy(&want),
            "{} differs from its golden file",
            case.name
        );
    }
}

#[test]
fn reruns_are_byte_identical() {
    for case in CASES {
        let a = run(case.args);
        let b = run(case.args);
        assert_eq!(a.stdout, b.stdout, "{}", case.name);
        assert_eq!(a.status.code(), b.status.code());
    }
}

#[test]
fn usage_and_domain_errors() {
    let cases: &[(&[&str], i32)] = &[
        (&["zeta", "1"], 3),
        (&["zeta", "1+2j"], 2),
        (&["zeros", "scan", "--t-min", "30", "--t-max", "10"], 2),
        (&["zeros", "scan", "--t-min", "10", "--t-max", "30", "--step", "2"], 2),
        (
            &[
                "plotdata", "hardy-z", "--t-min", "10", "--t-max", "10", "--step", "0.05",
            ],
            2,
        ),
        (
            &["plotdata", "hardy-z", "--t-min", "0", "--t-max", "1e7", "--step", "1"],
            2,
        ),
        (&["susy", "classify", "--sigma", "1", "--omega", "0"], 3),
        (&["pt", "check", "--sigma", "0.3"], 2),
        (&["su2", "verify", "nontrivial", "--omega", "10"], 1),
        (&["su2", "verify", "trivial", "--n", "0", "--omega", "1"], 2),
        (&["--tol", "-1", "pt", "check", "--sigma", "0.5", "--omega", "3"], 2),
        (&["no-such-command"], 2),
    ];
    for (args, code) in cases {
        let out = run(args);
        assert_eq!(
            out.status.code(),
            Some(*code),
            "{args:?}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
        assert!(out.stdout.is_empty() || *code == 1, "{args:?} wrote to stdout");
        if *code != 1 {
            assert!(!out.stderr.is_empty());
        }
    }
}

#[test]
fn csv_and_json_describe_the_same_rows() {
    let csv = String::from_utf8(run(CASES[3].args).stdout).unwrap();
    let json: serde_json::Value =
        serde_json::from_slice(&run(&["zeros", "scan", "--t-min", "10", "--t-max", "30", "--step", "0.1"]).stdout)
            .unwrap();
    let ordinates: Vec<f64> = csv
        .lines()
        .skip(1)
        .map(|l| l.split(',').next().unwrap().parse().unwrap())
        .collect();
    let from_json: Vec<f64> = json["result"]["zeros"]
        .as_array()
        .unwrap()
        .iter()
        .map(|z| z["ordinate"].as_f64().unwrap())
        .collect();
    assert_eq!(ordinates, from_json);
    assert_eq!(json["result"]["count"], 3);
}

#[test]
fn hardy_z_plot_has_expected_shape() {
    let out = run(&[
        "--format", "csv", "plotdata", "hardy-z", "--t-min", "10", "--t-max", "30", "--step", "0.05",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<(f64, f64)> = text
        .lines()
        .skip(1)
        .map(|l| {
            let mut it = l.split(',').map(|x| x.parse::<f64>().unwrap());
            (it.next().unwrap(), it.next().unwrap())
        })
        .collect();
    assert_eq!(rows.len(), 401);
    let changes = rows.windows(2).filter(|w| w[0].1.signum() != w[1].1.signum()).count();
    assert_eq!(changes, 3);
}

#[test]
fn registry_is_created_merged_and_used() {
    let dir = tempfile::tempdir().unwrap();
    let reg = dir.path().join("zeros.json");
    let reg_arg = reg.to_str().unwrap();
    let out = run(&["--registry", reg_arg, "zeros", "scan", "--t-min", "10", "--t-max", "22"]);
    assert_eq!(out.status.code(), Some(0));
    let out = run(&["--registry", reg_arg, "zeros", "scan", "--t-min", "20", "--t-max", "26"]);
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["result"]["registry_size"], 3);
    assert!(!dir.path().join("zeros.json.lock").exists());

    let out = run(&[
        "--registry",
        reg_arg,
        "su2",
        "verify",
        "nontrivial",
        "--omega",
        "25.0109",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["result"]["ordinate_source"], "registry");
    assert_eq!(json["result"]["passed"], true);

    fs::write(&reg, "{\"tolerance\": 1e-6}").unwrap();
    let out = run(&["--registry", reg_arg, "zeros", "scan", "--t-min", "10", "--t-max", "15"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("scan_range"));
}

#[test]
fn config_file_is_honoured() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.json");
    fs::write(&cfg, r#"{"format": "csv", "pt_tolerance": 1.0}"#).unwrap();
    let out = run(&[
        "--config",
        cfg.to_str().unwrap(),
        "pt",
        "check",
        "--sigma",
        "0.3",
        "--omega",
        "5",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("field,value\nunbroken,true"));

    fs::write(&cfg, r#"{"format": "yaml"}"#).unwrap();
    let out = run(&["--config", cfg.to_str().unwrap(), "zeta", "2"]);
    assert_eq!(out.status.code(), Some(2));
}
