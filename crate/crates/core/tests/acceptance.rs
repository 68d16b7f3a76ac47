//! Acceptance gate: one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so the lines are always visible.

use std::process::ExitCode;

use qag_core::selftest::run_criterion;
use qag_core::Execution;

fn main() -> ExitCode {
    // `cargo test -- --list` and filters come through as arguments
    let args: Vec<String> = std::env::args().skip(1).collect();
    if args.iter().any(|a| a == "--list") {
        println!("acceptance: test");
        return ExitCode::SUCCESS;
    }
    let (mut failed, mut unexplained) = (0, 0);
    for id in 1..=10 {
        let result = run_criterion(id, Execution::default());
        println!("{result}");
        if !result.passed {
            failed += 1;
            if !result.explained {
                unexplained += 1;
            }
        }
    }
    println!(
        "acceptance: {} of 10 criteria passed, {} failed on documented counterexamples, {} failed otherwise",
        10 - failed,
        failed - unexplained,
        unexplained
    );
    // a documented counterexample is a finding, not a defect
    if unexplained == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
