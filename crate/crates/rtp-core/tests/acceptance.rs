//! One PASS/FAIL line per acceptance criterion. Runs without the libtest
//! harness so the table is always printed.

use rtp_core::verify::{self, Check, DEFAULT_SEED};
use std::process::ExitCode;

fn report(c: &Check) {
    let status = if c.passed { "PASS" } else { "FAIL" };
    println!("criterion {}: {status} ({})", c.id, c.title);
    for line in &c.details {
        println!("    {line}");
    }
}

fn main() -> ExitCode {
    let checks = verify::run_all(DEFAULT_SEED);
    assert_eq!(checks.len(), 8);
    for c in &checks {
        report(c);
    }
    // The seeded parts must not depend on scheduling.
    let again = verify::check_tits(DEFAULT_SEED, 1000);
    let deterministic = again == checks[4];
    println!("seeded checks reproducible: {}", if deterministic { "PASS" } else { "FAIL" });
    if checks.iter().all(|c| c.passed) && deterministic {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
