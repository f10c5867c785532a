//! Verification reports.

use std::fmt;
use std::time::{Duration, Instant};

/// How expected and computed values were compared.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Comparison {
    Exact,
    /// Certified digits form a prefix of the printed digits.
    Prefix,
    /// Certified enclosure inside the printed value ± the given half-width.
    Tolerance(String),
    /// Inequality decided on certified enclosures.
    Certified,
}

impl fmt::Display for Comparison {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Comparison::Exact => f.write_str("exact"),
            Comparison::Prefix => f.write_str("prefix"),
            Comparison::Tolerance(t) => write!(f, "±{t}"),
            Comparison::Certified => f.write_str("certified"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
    /// Not a failure: the computation was too shallow to decide.
    Insufficient(String),
}

impl Outcome {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Outcome::Pass
        } else {
            Outcome::Fail
        }
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Outcome::Pass => f.write_str("pass"),
            Outcome::Fail => f.write_str("fail"),
            Outcome::Insufficient(why) => f.write_str(why),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub id: String,
    pub location: String,
    pub expected: String,
    pub computed: String,
    pub comparison: Comparison,
    pub outcome: Outcome,
    pub runtime: Duration,
}

impl Check {
    pub fn new(
        id: impl Into<String>,
        location: impl Into<String>,
        expected: impl Into<String>,
        computed: impl Into<String>,
        comparison: Comparison,
        outcome: Outcome,
    ) -> Self {
        Self {
            id: id.into(),
            location: location.into(),
            expected: expected.into(),
            computed: computed.into(),
            comparison,
            outcome,
            runtime: Duration::ZERO,
        }
    }

    pub fn passed(&self) -> bool {
        self.outcome == Outcome::Pass
    }

    pub fn failed(&self) -> bool {
        self.outcome == Outcome::Fail
    }

    /// `claim-id | location | expected | computed | verdict (comparison)`
    pub fn machine_line(&self, timings: bool) -> String {
        let mut s = format!(
            "{} | {} | {} | {} | {} ({})",
            self.id, self.location, self.expected, self.computed, self.outcome, self.comparison
        );
        if timings {
            s.push_str(&format!(" | {:.3} s", self.runtime.as_secs_f64()));
        }
        s
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn push(&mut self, c: Check) {
        self.checks.push(c);
    }

    pub fn append(&mut self, other: VerificationReport) {
        self.checks.extend(other.checks);
    }

    /// No check failed; insufficient-depth checks do not count as failures.
    pub fn all_pass(&self) -> bool {
        !self.checks.iter().any(Check::failed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.failed())
    }

    pub fn get(&self, id: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.id == id)
    }

    pub fn machine(&self, timings: bool) -> String {
        self.checks.iter().map(|c| c.machine_line(timings) + "\n").collect()
    }

    pub fn text(&self, timings: bool) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let verdict = match &c.outcome {
                Outcome::Pass => "PASS".to_string(),
                Outcome::Fail => "FAIL".to_string(),
                Outcome::Insufficient(w) => w.to_uppercase(),
            };
            out.push_str(&format!("{verdict:<5} {}  [{}]  {}\n", c.id, c.comparison, c.location));
            out.push_str(&format!("      expected  {}\n      computed  {}\n", c.expected, c.computed));
            if timings {
                out.push_str(&format!("      runtime   {:.3} s\n", c.runtime.as_secs_f64()));
            }
        }
        let pass = self.checks.iter().filter(|c| c.passed()).count();
        let fail = self.failures().count();
        out.push_str(&format!("{} checks: {pass} pass, {fail} fail, {} undecided\n", self.checks.len(), self.checks.len() - pass - fail));
        out
    }
}

/// Run `f` and stamp the runtime on every check it produced.
pub fn timed(f: impl FnOnce() -> crate::Result<VerificationReport>) -> crate::Result<VerificationReport> {
    let t = Instant::now();
    let mut r = f()?;
    let n = r.checks.len().max(1) as u32;
    let each = t.elapsed() / n;
    for c in &mut r.checks {
        c.runtime = each;
    }
    Ok(r)
}
