//! Structured verification reports.
//!
//! Every verifier returns a [`Report`]: a list of named checks, each with the
//! number of instances tested, the number that failed and a bounded list of
//! witnesses showing both sides of a failed identity.

use std::fmt;

use serde::Serialize;

/// Witnesses kept per check unless a check is created unbounded.
pub const WITNESS_CAP: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    /// The tuple of basis indices (or sample) where the identity failed.
    pub at: String,
    pub lhs: String,
    pub rhs: String,
}

impl Witness {
    pub fn new(at: impl Into<String>, lhs: impl fmt::Display, rhs: impl fmt::Display) -> Self {
        Witness {
            at: at.into(),
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    /// What one instance is ("elements", "pairs", "triples", ...).
    pub unit: String,
    pub checked: usize,
    pub failed: usize,
    pub exhaustive: bool,
    pub witnesses: Vec<Witness>,
    #[serde(skip)]
    cap: Option<usize>,
}

impl Check {
    pub fn new(name: impl Into<String>, unit: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            unit: unit.into(),
            checked: 0,
            failed: 0,
            exhaustive: true,
            witnesses: Vec::new(),
            cap: Some(WITNESS_CAP),
        }
    }

    /// A check that keeps every witness.
    pub fn unbounded(name: impl Into<String>, unit: impl Into<String>) -> Self {
        Check {
            cap: None,
            ..Check::new(name, unit)
        }
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn sampled(mut self, sampled: bool) -> Self {
        self.exhaustive = !sampled;
        self
    }

    pub fn record(&mut self, ok: bool, witness: impl FnOnce() -> Witness) {
        self.checked += 1;
        if !ok {
            self.failed += 1;
            if self.cap.is_none_or(|c| self.witnesses.len() < c) {
                self.witnesses.push(witness());
            }
        }
    }

    /// Record the outcome of comparing `lhs` against `rhs`.
    pub fn compare<T: PartialEq + fmt::Display>(&mut self, at: impl FnOnce() -> String, lhs: &T, rhs: &T) {
        let ok = lhs == rhs;
        self.record(ok, || Witness::new(at(), lhs, rhs));
    }

    pub fn passed(&self) -> bool {
        self.failed == 0
    }

    pub fn absorb(&mut self, other: Check) {
        self.checked += other.checked;
        self.failed += other.failed;
        self.exhaustive &= other.exhaustive;
        for w in other.witnesses {
            if self.cap.is_none_or(|c| self.witnesses.len() < c) {
                self.witnesses.push(w);
            }
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}/{} {} pass", self.name, self.checked - self.failed, self.checked, self.unit)?;
        if !self.exhaustive {
            f.write_str(" (sampled)")?;
        }
        for w in &self.witnesses {
            write!(f, "\n    at {}: lhs = {} ; rhs = {}", w.at, w.lhs, w.rhs)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub subject: String,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(subject: impl Into<String>) -> Self {
        Report {
            subject: subject.into(),
            checks: Vec::new(),
        }
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failing(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed())
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "== {} ==", self.subject)?;
        for c in &self.checks {
            writeln!(f, "{c}")?;
        }
        write!(f, "overall: {}", if self.passed() { "PASS" } else { "FAIL" })
    }
}
