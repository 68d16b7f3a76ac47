//! End-to-end behaviour of the `qag` binary.

use std::process::{Command, Output};

use qag_core::identity_engine::{Status, VerificationReport};

fn qag(args: &[&str]) -> Output {
    qag_env(args, &[])
}

fn qag_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_qag"));
    cmd.args(args).env_remove("QAG_THREADS");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 output")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

#[test]
fn compute_binomial_example() {
    let o = qag(&["compute", "qbinom", "--top", "4", "--bottom", "2"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "1 + q + 2q^2 + q^3 + q^4\n");
}

#[test]
fn compute_formats() {
    let o = qag(&["compute", "bpoly", "--nu", "1", "--s", "1", "--b", "2", "--L", "3", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["family"], "bpoly");
    let o = qag(&["compute", "product", "--nu", "1", "--s", "2", "--Q", "6", "--format", "csv"]);
    assert_eq!(stdout(&o).lines().next(), Some("exponent,coefficient"));
    assert_eq!(stdout(&o).lines().count(), 8);
    let o = qag(&["compute", "gpoly", "--nu", "7", "--M", "-2", "--L", "3", "--s", "1", "--b", "3"]);
    assert_eq!(code(&o), 0);
}

#[test]
fn verify_example_passes() {
    let o = qag(&["verify", "FQK-1.23", "--nu", "2", "--s", "1", "--L", "8"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("PASS"));
}

#[test]
fn sweep_json_round_trips_byte_for_byte() {
    let o = qag(&["sweep", "Conjecture-5.7", "--nu", "2", "--mvec-box", "3", "--Q", "20", "--format", "json"]);
    let text = stdout(&o);
    let reports: Vec<VerificationReport> = serde_json::from_str(&text).unwrap();
    assert_eq!(reports.len(), 16);
    let again = serde_json::to_string_pretty(&reports).unwrap() + "\n";
    assert_eq!(again, text);
    // sorted by parameters
    let keys: Vec<_> = reports.iter().map(|r| r.sort_key()).collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
    // mismatches are reported with their order, and make the exit code 1
    assert!(reports.iter().any(|r| r.status == Status::Fail));
    assert!(reports.iter().filter(|r| r.status == Status::Fail).all(|r| r.first_mismatch_order.is_some()));
    assert_eq!(code(&o), 1);
}

#[test]
fn text_and_json_agree_on_verdicts() {
    let base = ["sweep", "Conjecture-5.7", "--nu", "2", "--mvec-box", "2", "--Q", "12", "--no-timing"];
    let text = stdout(&qag(&base));
    let mut json_args = base.to_vec();
    json_args.extend(["--format", "json"]);
    let reports: Vec<VerificationReport> = serde_json::from_str(&stdout(&qag(&json_args))).unwrap();
    let text_verdicts: Vec<&str> = text
        .lines()
        .filter(|l| l.starts_with("PASS") || l.starts_with("FAIL"))
        .map(|l| l.split_whitespace().next().unwrap())
        .collect();
    let json_verdicts: Vec<String> = reports.iter().map(|r| r.status.to_string().to_uppercase()).collect();
    assert_eq!(text_verdicts, json_verdicts);
}

#[test]
fn output_is_deterministic_across_execution_modes() {
    let args = ["sweep", "Variant2-finite-4.6", "--nu", "2", "--L", "5", "--format", "csv", "--no-timing"];
    let first = qag(&args);
    assert_eq!(code(&first), 0);
    let mut seq = args.to_vec();
    seq.push("--sequential");
    assert_eq!(qag(&seq).stdout, first.stdout);
    assert_eq!(qag_env(&args, &[("QAG_THREADS", "3")]).stdout, first.stdout);
    let header = stdout(&first);
    assert!(header.starts_with("case,nu,s,b,L,M,Mvec,Q,status,"));
}

#[test]
fn usage_errors_exit_two() {
    let cases: &[&[&str]] = &[
        &["verify", "NoSuchIdentity", "--nu", "1"],
        &["verify", "AG-1.1", "--nu", "2", "--s", "5", "--Q", "5"],
        &["verify", "Warnaar-2.22", "--nu", "1", "--s", "0", "--b", "0", "--L", "1"],
        &["verify", "AG-1.1", "--nu", "2", "--s", "1"],
        &["compute", "qbinom", "--top", "4"],
        &["frobnicate"],
        &["verify", "AG-1.1", "--nu", "x"],
    ];
    for args in cases {
        let o = qag(args);
        assert_eq!(code(&o), 2, "{args:?}");
    }
    let o = qag(&["verify", "NoSuchIdentity", "--nu", "1"]);
    assert!(String::from_utf8_lossy(&o.stderr).contains("AG-1.1"));
}

#[test]
fn enumeration_cap_has_a_hint() {
    let o = qag(&["compute", "cpoly", "--nu", "1", "--L", "40", "--s", "0", "--b", "0", "--enumerate"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("--cap"));
    let o = qag(&["compute", "cpoly", "--nu", "1", "--L", "18", "--s", "0", "--b", "0", "--enumerate", "--cap", "20"]);
    assert_eq!(code(&o), 0);
}

#[test]
fn invalid_thread_count_exits_two() {
    for bad in ["0", "-1", "many"] {
        let o = qag_env(&["compute", "qbinom", "--top", "2", "--bottom", "1"], &[("QAG_THREADS", bad)]);
        assert_eq!(code(&o), 2, "QAG_THREADS={bad}");
    }
}

#[test]
fn parity_filter_flag_reports() {
    let o = qag(&["verify", "Variant1-1.32", "--nu", "1", "--M", "2", "--Q", "15", "--no-parity-filter", "--format", "json"]);
    let r: VerificationReport = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(r.note.unwrap().starts_with("parity filter disabled"));
}

#[test]
fn selftest_lists_ten_criteria() {
    let o = qag(&["selftest", "--no-timing"]);
    let text = stdout(&o);
    assert_eq!(text.lines().filter(|l| l.contains("criterion")).count(), 10);
    let all_pass = text.lines().filter(|l| l.contains("criterion")).all(|l| l.starts_with("[PASS]"));
    assert_eq!(code(&o), if all_pass { 0 } else { 1 });
}
