//! End-to-end tests of the `qbound` binary: stdout content, exit codes,
//! file output, and byte-level reproducibility.

use std::process::{Command, Output};

fn qbound(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qbound"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf-8 stderr")
}

#[test]
fn bound_flagship_single_query() {
    let out = qbound(&[
        "bound", "--n", "2", "--k", "1", "--eps", "1/1", "--p", "1", "--mode", "all",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("bound=2.449489743"), "{text}");
    assert!(text.contains("ratio=2.449489743"), "{text}");
    assert!(text.contains("(1/eps)*sqrt(N/(pK))=2.000000000"), "{text}");
    // The machine-readable document follows the text when --out is absent.
    assert!(text.contains("\"rate_bound\": 2.0"), "{text}");
    assert!(!text.contains("WARN"), "{text}");
}

#[test]
fn bound_flagship_two_queries_warns() {
    let out = qbound(&[
        "bound", "--n", "2", "--k", "1", "--eps", "1/1", "--p", "2", "--mode", "all",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("ratio=1.732050808"), "{text}");
    assert!(
        text.contains(
            "WARN: enumerated ell=2 exceeds closed-form ell=1 at p=2 (tuple (0, 1), row x=0100)"
        ),
        "{text}"
    );
}

#[test]
fn bound_rejects_fractional_marked_count() {
    let out = qbound(&["bound", "--n", "2", "--k", "1", "--eps", "1/2", "--p", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(
        stderr(&out).contains("not a positive integer"),
        "{}",
        stderr(&out)
    );
}

#[test]
fn bound_rejects_float_eps_and_missing_args() {
    let out = qbound(&["bound", "--n", "2", "--k", "1", "--eps", "0.5", "--p", "1"]);
    assert_eq!(out.status.code(), Some(2));
    let out = qbound(&["bound", "--k", "1"]);
    assert_eq!(out.status.code(), Some(2));
    let out = qbound(&["bound", "--n", "2", "--k", "1", "--mode", "nonsense"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn simulate_grover_summary() {
    let out = qbound(&[
        "simulate", "grover", "--n", "2", "--marked", "2", "--iters", "1",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.lines().next().unwrap(), "success=1.000000000");
    assert!(text.contains("\"closed_form\": 1.0"), "{text}");
}

#[test]
fn simulate_count_summary() {
    let out = qbound(&["simulate", "count", "--n", "4", "--k", "8", "--tbits", "3"]);
    assert!(out.status.success());
    let first = stdout(&out);
    let first = first.lines().next().unwrap();
    assert!(first.contains("khat=8 p=1.000000000 queries=7"), "{first}");
}

#[test]
fn simulate_progress_summary() {
    let args = [
        "simulate", "progress", "--n", "2", "--k", "1", "--eps", "1/1", "--p", "1", "--T", "3",
        "--seed", "42",
    ];
    let out = qbound(&args);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("W0=2.449489743"), "{text}");
    assert!(text.contains("step_bound_ok=true"), "{text}");

    // Same seed, same bytes.
    let again = qbound(&args);
    assert_eq!(out.stdout, again.stdout);
}

#[test]
fn simulate_pcount_summary() {
    let out = qbound(&[
        "simulate", "pcount", "--n", "5", "--k", "16", "--eps", "1/2", "--p", "2", "--tbits", "3",
        "--seed", "7", "--trials", "100",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(
        text.lines()
            .next()
            .unwrap()
            .starts_with("p=2 depth=7 queries=14 success=1.000000000"),
        "{text}"
    );
    // Indivisible split is a parameter error.
    let out = qbound(&[
        "simulate", "pcount", "--n", "4", "--k", "4", "--eps", "1/2", "--p", "3", "--tbits", "3",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn sweep_fixed_columns_and_determinism() {
    let args = [
        "sweep", "--n", "2", "--k", "1", "--eps", "1/1", "--p", "1,2,4",
    ];
    let out = qbound(&args);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(
        lines[0],
        "n,N,K,eps,p,h,hp,ell_enum,ellp_enum,ell_cf,ellp_cf,thm2_enum,thm2_cf,thm1_ratio,thm3"
    );
    assert_eq!(lines.len(), 4);
    let thm3: Vec<&str> = lines[1..]
        .iter()
        .map(|l| l.rsplit(',').next().unwrap())
        .collect();
    assert_eq!(thm3, vec!["2.0", "1.41421356237", "1.0"]);

    let again = qbound(&args);
    assert_eq!(out.stdout, again.stdout);
}

#[test]
fn sweep_ranges_skip_invalid_points() {
    let out = qbound(&[
        "sweep", "--n", "2..3", "--k", "1..2", "--eps", "1/1,1/2", "--p", "1",
    ]);
    assert!(out.status.success());
    // Invalid points (fractional eps*K, overlapping windows) are logged, not fatal.
    assert!(
        stderr(&out).contains("skip n=2 K=1 eps=1/2 p=1:"),
        "{}",
        stderr(&out)
    );
    let rows = stdout(&out).lines().count() - 1;
    assert!(
        rows >= 4,
        "expected at least the four integer-eK points, got {rows}"
    );
}

#[test]
fn sweep_with_no_valid_points_exits_2() {
    let out = qbound(&["sweep", "--n", "2", "--k", "1", "--eps", "1/2", "--p", "1"]);
    assert_eq!(out.status.code(), Some(2));
    let out = qbound(&[
        "sweep", "--n", "2", "--k", "1", "--eps", "1/1", "--p", "5..4",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn out_flag_writes_the_document_to_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = qbound(&[
        "bound",
        "--n",
        "2",
        "--k",
        "1",
        "--eps",
        "1/1",
        "--p",
        "1",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    // Stdout keeps the text; the JSON goes to the file.
    assert!(!stdout(&out).contains("\"rate_bound\""));
    let doc = std::fs::read_to_string(&path).unwrap();
    let report = qbound::report::bound_report_from_json(&doc).unwrap();
    assert_eq!(report.rate_bound, 2.0);
    assert_eq!(report.eps, "1/1");

    let csv_path = dir.path().join("rows.csv");
    let out = qbound(&[
        "sweep",
        "--n",
        "2",
        "--k",
        "1",
        "--eps",
        "1/1",
        "--p",
        "1",
        "--out",
        csv_path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let csv = std::fs::read_to_string(&csv_path).unwrap();
    assert!(csv.starts_with("n,N,K,eps,p,"), "{csv}");
    assert_eq!(csv.lines().count(), 2);
}

#[test]
fn unwritable_out_path_is_an_internal_error() {
    let out = qbound(&[
        "bound",
        "--n",
        "2",
        "--k",
        "1",
        "--eps",
        "1/1",
        "--p",
        "1",
        "--out",
        "/nonexistent-dir/report.json",
    ]);
    assert_eq!(out.status.code(), Some(1));
}
