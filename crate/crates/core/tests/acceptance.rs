//! Runs every acceptance criterion in order and prints one line per
//! criterion. A criterion passes when its suite reports no mismatches and
//! finishes within its runtime target.

use std::process::ExitCode;

use atomon::verify::{run_suite, VerifyOptions, ACCEPTANCE_SUITES};

fn main() -> ExitCode {
    let options = VerifyOptions::default();
    let mut failed = 0;
    for (number, (suite, target_secs)) in ACCEPTANCE_SUITES.iter().enumerate() {
        let report = run_suite(suite, &options).expect("acceptance suites are registered");
        let in_time = report.elapsed.as_secs_f64() < *target_secs as f64;
        let pass = report.passed() && in_time && report.cases > 0;
        println!(
            "criterion {:>2} {:<22} {}  cases={} mismatches={} skipped={} time={:.2}s (target < {}s)",
            number + 1,
            suite,
            if pass { "PASS" } else { "FAIL" },
            report.cases,
            report.mismatches.len(),
            report.skipped,
            report.elapsed.as_secs_f64(),
            target_secs
        );
        for m in report.mismatches.iter().take(10) {
            println!("    mismatch: {m}");
        }
        if !pass {
            failed += 1;
        }
    }
    if failed == 0 {
        println!("acceptance: all {} criteria passed", ACCEPTANCE_SUITES.len());
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} of {} criteria failed", ACCEPTANCE_SUITES.len());
        ExitCode::FAILURE
    }
}
