//! CLI surface: exit codes, config handling, byte-identical outputs.

use riblube::cli::run;
use std::path::PathBuf;

fn argv(args: &[&str]) -> Vec<String> {
    std::iter::once("riblube".to_string())
        .chain(args.iter().map(|s| s.to_string()))
        .collect()
}

fn tmp(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join("riblube-cli-tests");
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn unknown_flags_are_usage_errors() {
    assert_eq!(run(argv(&["theta", "--bogus"])), 64);
    assert_eq!(run(argv(&["not-a-subcommand"])), 64);
}

#[test]
fn validate_exit_codes() {
    // constraint violation: N^2 > 1/2
    let code = run(argv(&[
        "validate", "--set", "N=0.9", "--set", "Rc=0.1", "--set", "alpha=2", "--set",
        "beta=1", "--set", "h=1",
    ]));
    assert_eq!(code, 1);
    let code = run(argv(&[
        "validate", "--set", "N=0.3", "--set", "Rc=0.1", "--set", "nu_b_bar=0.1", "--set",
        "delta_slip=1", "--set", "h=1",
    ]));
    assert_eq!(code, 0);
}

#[test]
fn solver_errors_exit_2() {
    // alpha = 1 branch beyond the mu pole
    let out = tmp("pole.csv");
    let code = run(argv(&[
        "theta",
        "--set",
        "N=0.3",
        "--set",
        "Rc=0.1",
        "--set",
        "nu_b_bar=1",
        "--set",
        "delta_slip=1",
        "--set",
        "h=1",
        "--lambda",
        "10",
        "--E",
        "10",
        "--out",
        out.to_str().unwrap(),
    ]));
    assert_eq!(code, 2);
}

#[test]
fn outputs_are_byte_identical_across_runs() {
    let cfg = tmp("p.cfg");
    std::fs::write(&cfg, "N = 0.3\nRc = 0.1\nnu_b_bar = 0.1\ndelta_slip = 1\nh = 1\n")
        .unwrap();
    let a = tmp("run_a.csv");
    let b = tmp("run_b.csv");
    for out in [&a, &b] {
        let code = run(argv(&[
            "theta",
            "--config",
            cfg.to_str().unwrap(),
            "--lambda",
            "0.1",
            "--lambda",
            "0.35",
            "--E",
            "10",
            "--formulation",
            "tabulated",
            "--out",
            out.to_str().unwrap(),
        ]));
        assert_eq!(code, 0);
    }
    let bytes_a = std::fs::read(&a).unwrap();
    let bytes_b = std::fs::read(&b).unwrap();
    assert_eq!(bytes_a, bytes_b);
    assert!(String::from_utf8(bytes_a).unwrap().starts_with("# riblube"));
}

#[test]
fn sweep_csv_has_the_stable_schema() {
    let out = tmp("sweep.csv");
    let code = run(argv(&[
        "sweep",
        "--fig",
        "timeratio",
        "--E",
        "10",
        "--nu-b",
        "0.1",
        "--delta-slip",
        "1",
        "--rc",
        "0.1",
        "--n-max",
        "0.1",
        "--n-step",
        "0.05",
        "--out",
        out.to_str().unwrap(),
    ]));
    assert_eq!(code, 0);
    let text = std::fs::read_to_string(&out).unwrap();
    let header = text
        .lines()
        .find(|l| !l.starts_with('#'))
        .expect("header line");
    assert_eq!(
        header,
        "N,Rc,nu_b_bar,delta_slip,E,kappa,eps0,T_half,T_half_normalized,flags"
    );
    // N = 0 normalization row is exactly 1
    let row0 = text.lines().find(|l| l.starts_with("0,")).expect("N=0 row");
    assert_eq!(row0.split(',').nth(8).unwrap(), "1");
}

#[test]
fn pressure_subcommand_round_trips() {
    let out = tmp("pressure.csv");
    let code = run(argv(&[
        "pressure",
        "--theta",
        "0.08333333333333333",
        "--s",
        "1",
        "--grid",
        "10",
        "--out",
        out.to_str().unwrap(),
    ]));
    assert_eq!(code, 0);
    let text = std::fs::read_to_string(&out).unwrap();
    // load = S/(12 Theta) = 1 for Theta = 1/12
    assert!(text.contains("# load = 1"), "{text}");
    // p(1/2) = S/(8 Theta) = 1.5
    assert!(text.lines().any(|l| l.starts_with("0.5,1.5")), "{text}");
}
