//! End-to-end behavior of the randcube binary: exit codes, file output,
//! config files, and offline refitting.

use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_randcube"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn read(path: &Path) -> String {
    std::fs::read_to_string(path).unwrap()
}

#[test]
fn usage_errors_exit_2() {
    // unknown flag
    let out = run(&["rates", "--bogus"]);
    assert_eq!(out.status.code(), Some(2));
    // missing required flag
    let out = run(&["rates", "--algo", "std"]);
    assert_eq!(out.status.code(), Some(2));
    // unknown problem name
    let out = run(&["integrate", "--problem", "mystery", "--n", "10"]);
    assert_eq!(out.status.code(), Some(2));
    // bad space spelling
    let out = run(&["typeconst", "--space", "l2:4", "--n", "4"]);
    assert_eq!(out.status.code(), Some(2));
    // sep without r
    let out = run(&["integrate", "--algo", "sep", "--n", "10"]);
    assert_eq!(out.status.code(), Some(2));
    // p out of range
    let out = run(&[
        "rates", "--algo", "std", "--problem", "const", "--n", "8", "--p", "3",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn runtime_errors_exit_3() {
    let out = run(&["fit", "--input", "/nonexistent/file.csv"]);
    assert_eq!(out.status.code(), Some(3));

    let dir = tempfile::tempdir().unwrap();
    let empty = dir.path().join("empty.csv");
    std::fs::write(&empty, "").unwrap();
    let out = run(&["fit", "--input", empty.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));

    // schema mismatch
    let bad = dir.path().join("bad.csv");
    std::fs::write(&bad, "a,b\n1,2\n").unwrap();
    let out = run(&["fit", "--input", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn integrate_constant_reports_zero_error() {
    let out = run(&[
        "integrate", "--algo", "std", "--space", "scalar", "--problem", "const", "--n", "100",
        "--seed", "1",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("value=[1]"), "{text}");
    assert!(text.contains("abs-error=0"), "{text}");
}

#[test]
fn typeconst_basis_ratio_is_one_for_matching_p_and_q() {
    let out = run(&[
        "typeconst", "--space", "lq:1:8", "--p", "1", "--n", "8", "--family", "basis",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("lower-bound=1 "), "{text}");
    assert!(text.contains("witness=basis"), "{text}");
}

#[test]
fn rates_writes_both_formats_and_fit_reproduces_the_slope() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("r.csv");
    let jsonl = dir.path().join("r.jsonl");
    let base = [
        "rates", "--algo", "std", "--space", "scalar", "--problem", "expsum", "--d", "1", "--p",
        "2", "--n", "8..64x2", "--trials", "20", "--seed", "5", "--no-timestamp",
    ];

    let mut args: Vec<&str> = base.to_vec();
    args.extend(["--out", csv.to_str().unwrap()]);
    let out = run(&args);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let summary = stdout(&out);
    let slope = summary.split("slope=").nth(1).unwrap().split(' ').next().unwrap();

    let mut args: Vec<&str> = base.to_vec();
    args.extend(["--out", jsonl.to_str().unwrap(), "--format", "jsonl"]);
    assert_eq!(run(&args).status.code(), Some(0));

    // CSV: comments, header, then 4 n-values x 2 p-rows
    let text = read(&csv);
    let header: Vec<&str> = text
        .lines()
        .filter(|l| !l.starts_with('#'))
        .take(1)
        .collect();
    assert_eq!(
        header[0],
        "algo,space,problem,d,r,p,n,trials,value,stderr,seed"
    );
    assert_eq!(text.lines().filter(|l| !l.starts_with('#')).count(), 9);

    // JSONL rows parse and match the CSV values
    let jl = read(&jsonl);
    assert_eq!(jl.lines().count(), 8);
    for line in jl.lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(v["algo"], "std");
        assert!(v["value"].as_f64().unwrap() > 0.0);
    }

    // offline fit prints the same slope for the p=2 group
    let out = run(&["fit", "--input", csv.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let fit_text = stdout(&out);
    let p2_line = fit_text.lines().find(|l| l.contains("p=2")).unwrap();
    assert!(p2_line.contains(&format!("slope={slope}")), "{fit_text} vs {summary}");

    // jsonl fit agrees too
    let out = run(&[
        "fit", "--input", jsonl.to_str().unwrap(), "--format", "jsonl",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains(&format!("slope={slope}")));
}

#[test]
fn no_timestamp_runs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for path in [&a, &b] {
        let out = run(&[
            "rates", "--algo", "sep", "--problem", "expsum", "--r", "1", "--n", "8..32x2",
            "--trials", "10", "--seed", "9", "--no-timestamp", "--out",
            path.to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0));
    }
    assert_eq!(read(&a), read(&b));
}

#[test]
fn config_file_supplies_defaults_and_flags_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    let out_path = dir.path().join("out.csv");
    std::fs::write(
        &cfg,
        format!(
            "algo = std\nproblem = expsum\nn = 8..32x2\ntrials = 10\nseed = 3\n\
             no-timestamp = true\nout = {}\n",
            out_path.display()
        ),
    )
    .unwrap();
    let out = run(&["rates", "--config", cfg.to_str().unwrap(), "--trials", "12"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let text = read(&out_path);
    // the explicit flag overrode the config value
    assert!(text.contains("trials=12"), "{text}");
    assert!(text.lines().any(|l| l.contains(",12,")), "{text}");
}

#[test]
fn quad_out_lists_nodes_weights_and_kinds() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("quad.csv");
    let out = run(&[
        "integrate", "--algo", "sep", "--problem", "expsum", "--d", "1", "--r", "1", "--n",
        "16", "--seed", "4", "--quad-out", path.to_str().unwrap(), "--no-timestamp",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = read(&path);
    assert!(text.contains("weight-sum: 1"), "{text}");
    let rows: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(rows[0], "t1,weight,kind");
    // k = 16 subcubes -> 17 interp nodes + 16 samples
    assert_eq!(rows.len() - 1, 17 + 16);
    assert_eq!(rows.iter().filter(|r| r.ends_with("interp")).count(), 17);
    assert_eq!(rows.iter().filter(|r| r.ends_with("sample")).count(), 16);
}

#[test]
fn partition_demo_and_foolset_and_lemma2_run() {
    let out = run(&["partition-demo", "--n", "6", "--seed", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("dominated=true"));

    let out = run(&["foolset", "--m", "2,3", "--r", "1", "--d", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("spread="));

    let out = run(&["lemma2", "--n", "4..64x4", "--trials", "50"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("max-ratio="));
}
