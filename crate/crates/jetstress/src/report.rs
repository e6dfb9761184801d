//! Check outcomes and deterministic plain-text reports for the identity
//! suites. Every check carries the tag of the identity it verifies; the
//! report prints one line per check with its largest residual.

use std::fmt::Write as _;

#[derive(Debug, Clone)]
pub struct CheckOutcome {
    /// Identity tag, cited verbatim in the report.
    pub tag: String,
    pub description: String,
    pub passed: bool,
    /// Largest residual observed, `0` for exact passes.
    pub max_residual: String,
    /// Number of instances exercised.
    pub cases: usize,
}

impl CheckOutcome {
    pub fn render(&self) -> String {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        format!(
            "[{verdict}] Eq. ({}) — {} — cases {} — max residual {}",
            self.tag, self.description, self.cases, self.max_residual
        )
    }
}

#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub suite: String,
    pub outcomes: Vec<CheckOutcome>,
}

impl SuiteReport {
    pub fn all_passed(&self) -> bool {
        self.outcomes.iter().all(|o| o.passed)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "suite {}", self.suite);
        for outcome in &self.outcomes {
            let _ = writeln!(out, "{}", outcome.render());
        }
        let verdict = if self.all_passed() { "PASS" } else { "FAIL" };
        let _ = writeln!(out, "suite {} result: {verdict}", self.suite);
        out
    }

    pub fn render_kv(&self) -> String {
        let mut out = String::new();
        for outcome in &self.outcomes {
            let key = outcome.tag.replace(' ', "_");
            let _ = writeln!(out, "check.{key}.pass = {}", outcome.passed);
            let _ = writeln!(out, "check.{key}.residual = {}", outcome.max_residual);
        }
        let _ = writeln!(out, "suite.{}.pass = {}", self.suite, self.all_passed());
        out
    }
}
