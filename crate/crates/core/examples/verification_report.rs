//! # Verification reports
//!
//! Runs a suite by name and prints its JSON report, the same document
//! `zonalval verify --suite <name>` writes.

use zonalval::verify::{run_suite, Suite, VerifyOptions};

fn main() -> zonalval::Result<()> {
    let name = std::env::args().nth(1).unwrap_or_else(|| "kubota".into());
    let suite: Suite = name.parse()?;
    let report = run_suite(suite, &VerifyOptions { samples: 100_000, ..Default::default() })?;
    println!("{}", report.to_json());
    eprintln!("{}: {} cases, passed = {}", report.suite, report.cases.len(), report.passed());
    Ok(())
}
