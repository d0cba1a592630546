//! Runs one verification suite in-process and prints its summary.

use polyshadow::linalg::Seed;
use polyshadow::report::Check;
use polyshadow::verify::{run_suite, Suite, VerifyConfig};

fn main() -> polyshadow::Result<()> {
    let cfg = VerifyConfig {
        n: Some((2, 6)),
        trials: None,
        samples: None,
        restarts: None,
        seed: Seed(7),
    };
    let report = run_suite(Suite::Mahler, &cfg)?;
    for s in &report.summary {
        println!("{}: {}/{} cases pass", s.suite, s.passed, s.cases);
    }
    let stat = report.cases.iter().filter(|c| c.check == Check::Stat).count();
    println!("{} statistical cases, passed: {}", stat, report.passed);
    Ok(())
}
