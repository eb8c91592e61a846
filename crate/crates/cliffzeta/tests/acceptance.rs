//! The acceptance criteria, one line each. Run with `--nocapture` to see them.

use cliffzeta::verify::{run, Config, Suite};
use std::time::Duration;

const CRITERIA: [(Suite, u64); 10] = [
    (Suite::Assembly, 60),
    (Suite::Twist, 120),
    (Suite::Jaikin, 60),
    (Suite::Cohomology, 120),
    (Suite::Schur, 60),
    (Suite::Sylow, 60),
    (Suite::WellDefined, 180),
    (Suite::Tower, 300),
    (Suite::Completeness, 60),
    (Suite::Oracles, 300),
];

#[test]
fn acceptance() {
    let cfg = Config::default();
    let mut failed = Vec::new();
    for (k, (suite, budget)) in CRITERIA.into_iter().enumerate() {
        let report = run(suite, &cfg);
        let in_time = report.elapsed <= Duration::from_secs(budget);
        let ok = report.passed() && in_time;
        let status = if ok { "PASS" } else { "FAIL" };
        println!(
            "criterion {:>2} {status} {:<13} {:>4} checks {:>7.2}s (budget {budget}s)  {}",
            k + 1,
            suite.name(),
            report.checks.len(),
            report.elapsed.as_secs_f64(),
            suite.description()
        );
        if let Some(c) = report.first_failure() {
            println!("             first failure: {}: {}", c.name, c.detail);
        } else if !in_time {
            println!("             over the time budget");
        }
        if !ok {
            failed.push(k + 1);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
