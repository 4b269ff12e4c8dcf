use std::process::{Command, Output};

fn run(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_parity-psi"));
    cmd.args(args).env_remove("PARITY_PSI_THREADS");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 output")
}

#[test]
fn verify_passes() {
    let o = run(&["verify", "--n", "3"], &[]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).ends_with("checks: all pass\n"));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["verify", "--n", "0"][..],
        &["verify", "--n", "99"],
        &["weyl", "--format", "latex"],
        &["chart", "--suite", "level"],
        &["verify", "--suite", "nonsense"],
        &["verify", "--ring", "gf:9"],
        &["frobnicate"],
    ] {
        assert_eq!(run(args, &[]).status.code(), Some(2), "{args:?}");
    }
    assert_eq!(run(&["verify"], &[("PARITY_PSI_THREADS", "many")]).status.code(), Some(2));
}

#[test]
fn latex_matches_golden_files() {
    let golden = [
        include_str!("../../core/tests/golden/z_n1.tex"),
        include_str!("../../core/tests/golden/z_n2.tex"),
        include_str!("../../core/tests/golden/z_n3.tex"),
    ];
    for (k, want) in golden.iter().enumerate() {
        let n = (k + 1).to_string();
        let o = run(&["psi", "--n", &n, "--twist", "0", "--format", "latex"], &[]);
        assert_eq!(o.status.code(), Some(0));
        assert_eq!(stdout(&o), *want, "n = {n}");
    }
}

#[test]
fn default_twist_shifts_every_summand() {
    let o = run(&["psi", "--n", "2", "--format", "json"], &[]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let shifted = run(&["psi", "--n", "2", "--twist", "-1", "--format", "json"], &[]);
    assert_eq!(v, serde_json::from_str::<serde_json::Value>(&stdout(&shifted)).unwrap());
    let plain = run(&["psi", "--n", "2", "--twist", "0", "--format", "json"], &[]);
    assert_ne!(stdout(&o), stdout(&plain));
}

#[test]
fn json_outputs_parse() {
    for cmd in ["verify", "psi", "grm", "weyl", "chart", "usage"] {
        let o = run(&[cmd, "--n", "3", "--format", "json"], &[]);
        assert_eq!(o.status.code(), Some(0), "{cmd}");
        let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap_or_else(|e| panic!("{cmd}: {e}"));
        assert!(v.is_object(), "{cmd}");
    }
}

#[test]
fn verify_json_reports_every_suite() {
    let o = run(&["verify", "--n", "4", "--format", "json"], &[]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["certificates"].as_array().unwrap().len(), 13);
}

#[test]
fn global_mode_enforces_the_bound() {
    let o = run(&["usage", "--n", "4", "--mode", "global", "--format", "json"], &[]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["report"]["within_bound"], true);
    assert_eq!(v["enforced"], true);
}

#[test]
fn output_does_not_depend_on_threads() {
    for args in [
        &["verify", "--n", "5", "--format", "json"][..],
        &["grm", "--n", "4"],
        &["weyl", "--n", "4", "--format", "json"],
        &["chart", "--n", "5"],
    ] {
        let seq = run(args, &[("PARITY_PSI_THREADS", "0")]);
        let one = run(args, &[("PARITY_PSI_THREADS", "1")]);
        let par = run(args, &[]);
        assert_eq!(seq.stdout, par.stdout, "{args:?}");
        assert_eq!(one.stdout, par.stdout, "{args:?}");
    }
}

#[test]
fn gf_ring_is_accepted() {
    let o = run(&["verify", "--n", "3", "--ring", "gf:7", "--suite", "bold"], &[]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}
