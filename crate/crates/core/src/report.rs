//! Verification reports: formula-versus-oracle cases with their tolerances.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::linalg::Seed;

/// Share of statistical cases that must pass for a suite to pass.
pub const STAT_PASS_RATE: f64 = 0.95;

/// Named inputs of a case, kept sorted so serialized reports are stable.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Inputs(pub BTreeMap<String, Value>);

impl Inputs {
    pub fn new() -> Inputs {
        Inputs::default()
    }

    pub fn with(mut self, key: &str, value: impl Into<Value>) -> Inputs {
        self.0.insert(key.to_string(), value.into());
        self
    }

    pub fn get(&self, key: &str) -> Option<&Value> {
        self.0.get(key)
    }
}

/// How `formula_value` is compared with `oracle_value`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Check {
    /// `|formula - oracle| <= tolerance`
    Abs,
    /// `formula <= oracle + tolerance`
    Le,
    /// `formula >= oracle - tolerance`
    Ge,
    /// Like `Abs`, with `tolerance` a multiple of a standard error; only a share of
    /// these need to pass.
    Stat,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Case {
    pub inputs: Inputs,
    pub formula_value: f64,
    pub oracle_value: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub check: Check,
}

impl Case {
    fn new(inputs: Inputs, formula_value: f64, oracle_value: f64, tolerance: f64, check: Check) -> Case {
        let pass = match check {
            Check::Abs | Check::Stat => (formula_value - oracle_value).abs() <= tolerance,
            Check::Le => formula_value <= oracle_value + tolerance,
            Check::Ge => formula_value >= oracle_value - tolerance,
        };
        Case {
            inputs,
            formula_value,
            oracle_value,
            tolerance,
            pass,
            check,
        }
    }

    pub fn two_sided(inputs: Inputs, formula_value: f64, oracle_value: f64, tolerance: f64) -> Case {
        Case::new(inputs, formula_value, oracle_value, tolerance, Check::Abs)
    }

    /// `formula_value` must not exceed the bound `oracle_value` by more than `tolerance`.
    pub fn upper_bound(inputs: Inputs, formula_value: f64, bound: f64, tolerance: f64) -> Case {
        Case::new(inputs, formula_value, bound, tolerance, Check::Le)
    }

    /// `formula_value` must not undercut the bound `oracle_value` by more than `tolerance`.
    pub fn lower_bound(inputs: Inputs, formula_value: f64, bound: f64, tolerance: f64) -> Case {
        Case::new(inputs, formula_value, bound, tolerance, Check::Ge)
    }

    /// Agreement within `sigmas` standard errors.
    pub fn statistical(inputs: Inputs, formula_value: f64, oracle_value: f64, stderr: f64, sigmas: f64) -> Case {
        Case::new(inputs.with("stderr", stderr), formula_value, oracle_value, sigmas * stderr, Check::Stat)
    }

    pub fn with_input(mut self, key: &str, value: impl Into<Value>) -> Case {
        self.inputs = self.inputs.with(key, value);
        self
    }

    pub fn suite(&self) -> Option<&str> {
        self.inputs.get("suite").and_then(Value::as_str)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteSummary {
    pub suite: String,
    pub cases: usize,
    pub passed: usize,
    pub stat_cases: usize,
    pub stat_passed: usize,
    pub pass: bool,
}

impl SuiteSummary {
    pub fn of(suite: &str, cases: &[&Case]) -> SuiteSummary {
        let det_fail = cases.iter().any(|c| c.check != Check::Stat && !c.pass);
        let stat_cases = cases.iter().filter(|c| c.check == Check::Stat).count();
        let stat_passed = cases.iter().filter(|c| c.check == Check::Stat && c.pass).count();
        let stat_ok = stat_cases == 0 || stat_passed as f64 >= STAT_PASS_RATE * stat_cases as f64;
        SuiteSummary {
            suite: suite.to_string(),
            cases: cases.len(),
            passed: cases.iter().filter(|c| c.pass).count(),
            stat_cases,
            stat_passed,
            pass: !det_fail && stat_ok,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite: String,
    pub seed: Seed,
    pub cases: Vec<Case>,
    /// Zero unless timing was requested, so that reports are reproducible byte for byte.
    pub wall_time_s: f64,
    pub passed: bool,
    pub summary: Vec<SuiteSummary>,
}

impl VerificationReport {
    /// Builds the report, tagging each case with its suite. `parts` keeps its order.
    pub fn from_suites(suite: &str, seed: Seed, parts: Vec<(String, Vec<Case>)>) -> VerificationReport {
        let mut cases = Vec::new();
        let mut summary = Vec::new();
        for (name, part) in parts {
            let tagged: Vec<Case> = part
                .into_iter()
                .map(|mut c| {
                    c.inputs.0.insert("suite".into(), Value::from(name.as_str()));
                    c
                })
                .collect();
            summary.push(SuiteSummary::of(&name, &tagged.iter().collect::<Vec<_>>()));
            cases.extend(tagged);
        }
        let passed = summary.iter().all(|s| s.pass);
        VerificationReport {
            suite: suite.to_string(),
            seed,
            cases,
            wall_time_s: 0.0,
            passed,
            summary,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports contain only finite numbers and strings")
    }

    pub fn from_json(s: &str) -> serde_json::Result<VerificationReport> {
        serde_json::from_str(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn checks() {
        let i = Inputs::new;
        assert!(Case::two_sided(i(), 1.0, 1.0 + 1e-10, 1e-9).pass);
        assert!(!Case::two_sided(i(), 1.0, 1.1, 1e-9).pass);
        assert!(Case::upper_bound(i(), 2.0, 2.25, 1e-9).pass);
        assert!(!Case::upper_bound(i(), 2.3, 2.25, 1e-9).pass);
        assert!(Case::lower_bound(i(), 1.3, 1.299, 1e-9).pass);
        assert!(!Case::lower_bound(i(), 1.2, 1.299, 1e-9).pass);
        let s = Case::statistical(i(), 1.0, 1.03, 0.01, 4.0);
        assert!(s.pass);
        assert_eq!(s.tolerance, 0.04);
    }

    #[test]
    fn stat_share() {
        let mk = |pass: bool| Case::statistical(Inputs::new(), 0.0, if pass { 0.0 } else { 1.0 }, 0.1, 4.0);
        let mut parts: Vec<Case> = (0..19).map(|_| mk(true)).collect();
        parts.push(mk(false));
        let r = VerificationReport::from_suites("x", Seed(0), vec![("x".into(), parts.clone())]);
        assert!(r.passed);
        parts.push(mk(false));
        let r = VerificationReport::from_suites("x", Seed(0), vec![("x".into(), parts)]);
        assert!(!r.passed);
        let r = VerificationReport::from_suites(
            "all",
            Seed(0),
            vec![("a".into(), vec![Case::two_sided(Inputs::new(), 0.0, 1.0, 0.5)])],
        );
        assert!(!r.passed);
        assert_eq!(r.cases[0].suite(), Some("a"));
    }

    proptest! {
        #[test]
        fn json_round_trip(
            vals in prop::collection::vec((-1e6f64..1e6, -1e6f64..1e6, 0f64..1.0, 0usize..4), 0..20),
            seed in any::<u64>(),
        ) {
            let cases: Vec<Case> = vals.iter().enumerate().map(|(i, &(a, b, t, kind))| {
                let inputs = Inputs::new().with("i", i).with("x", a / 3.0);
                match kind {
                    0 => Case::two_sided(inputs, a, b, t),
                    1 => Case::upper_bound(inputs, a, b, t),
                    2 => Case::lower_bound(inputs, a, b, t),
                    _ => Case::statistical(inputs, a, b, t, 4.0),
                }
            }).collect();
            let r = VerificationReport::from_suites("p", Seed(seed), vec![("p".into(), cases)]);
            let back = VerificationReport::from_json(&r.to_json()).unwrap();
            prop_assert_eq!(back, r);
        }
    }
}
