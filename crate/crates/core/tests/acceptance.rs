//! Acceptance suite: one line per criterion, nonzero exit if any fails.
//!
//! Runs without the libtest harness so the per-criterion lines are always
//! shown, not only under `--nocapture`.

use std::process::ExitCode;

use manifold_census::selftest::{checks, run_check, Context};

fn main() -> ExitCode {
    let ctx = Context::standard();
    let mut failed = Vec::new();
    for check in checks() {
        let outcome = run_check(&check, &ctx);
        println!(
            "criterion {:>2}: {} ({:.3} ms) {}{}",
            outcome.id,
            if outcome.passed { "PASS" } else { "FAIL" },
            outcome.elapsed.as_secs_f64() * 1e3,
            outcome.name,
            if outcome.passed { String::new() } else { format!(" -- {}", outcome.detail) }
        );
        if !outcome.passed {
            failed.push(outcome.id);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all {} criteria passed", checks().len());
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failed criteria {failed:?}");
        ExitCode::FAILURE
    }
}
