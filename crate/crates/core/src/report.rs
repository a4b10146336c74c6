//! Pass/fail check lists produced by the verifiers.

use std::fmt;

use crate::domains::MembershipVerdict;

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    /// Worst slack observed; negative means violated.
    pub margin: f64,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, name: impl Into<String>, pass: bool, margin: f64) {
        self.checks.push(Check { name: name.into(), pass, margin });
    }

    /// Records the worst verdict of a sampled family under one name.
    pub fn push_worst<I>(&mut self, name: impl Into<String>, verdicts: I)
    where
        I: IntoIterator<Item = MembershipVerdict>,
    {
        let mut pass = true;
        let mut margin = f64::INFINITY;
        for v in verdicts {
            pass &= v.inside;
            margin = margin.min(v.margin);
        }
        self.push(name, pass, margin);
    }

    pub fn extend(&mut self, prefix: &str, other: Report) {
        for mut c in other.checks {
            c.name = format!("{prefix}{}", c.name);
            self.checks.push(c);
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    /// Smallest margin among checks named `name`.
    pub fn margin_of(&self, name: &str) -> Option<f64> {
        self.checks
            .iter()
            .filter(|c| c.name == name)
            .map(|c| c.margin)
            .reduce(f64::min)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(
                f,
                "{} {} (margin {:e})",
                if c.pass { "PASS" } else { "FAIL" },
                c.name,
                c.margin
            )?;
        }
        Ok(())
    }
}
