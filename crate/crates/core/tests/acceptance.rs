//! Runs every acceptance criterion and prints one line per criterion.

use fodepth::harness::run_acceptance;
use std::process::ExitCode;

const SEED: u64 = 7;

fn main() -> ExitCode {
    let outcomes = run_acceptance(SEED, true);
    let mut failed = 0;
    for o in &outcomes {
        println!(
            "criterion {:>2} {:<30} {} ({} ms, target {} s)",
            o.id,
            o.name,
            if o.passed { "PASS" } else { "FAIL" },
            o.wall_time_ms,
            o.runtime_target_s
        );
        for c in o.checks.iter().filter(|c| !c.passed) {
            println!("    failed check: {}", c.name);
        }
        if let Some(e) = &o.error {
            println!("    error: {e}");
        }
        failed += usize::from(!o.passed);
    }
    println!(
        "acceptance: {} of {} criteria passed",
        outcomes.len() - failed,
        outcomes.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
