use std::fmt;

use serde::Serialize;

/// One failed law instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub law: String,
    pub location: String,
}

/// Outcome of checking a family of exact identities.
///
/// `checked` counts every individual identity that was evaluated, so an
/// empty violation list on zero checks is distinguishable from a real pass.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub subject: String,
    pub checked: usize,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn new(subject: impl Into<String>) -> Self {
        ValidationReport { subject: subject.into(), checked: 0, violations: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    /// Records one evaluated identity.
    pub fn check(&mut self, ok: bool, law: &str, location: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.violations.push(Violation { law: law.to_string(), location: location() });
        }
    }

    pub fn fail(&mut self, law: &str, location: impl Into<String>) {
        self.checked += 1;
        self.violations.push(Violation { law: law.to_string(), location: location.into() });
    }

    pub fn merge(&mut self, other: ValidationReport) {
        self.checked += other.checked;
        for v in other.violations {
            self.violations.push(Violation {
                law: v.law,
                location: if other.subject.is_empty() {
                    v.location
                } else {
                    format!("{}: {}", other.subject, v.location)
                },
            });
        }
    }

    /// Turns a failed report into a `LawViolation` error.
    pub fn into_result(self) -> crate::Result<()> {
        if self.passed() {
            Ok(())
        } else {
            Err(crate::Error::LawViolation(self.to_string()))
        }
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            write!(f, "{}: pass ({} checks)", self.subject, self.checked)
        } else {
            write!(f, "{}: {} of {} checks failed", self.subject, self.violations.len(), self.checked)?;
            for v in self.violations.iter().take(8) {
                write!(f, "; {} at {}", v.law, v.location)?;
            }
            Ok(())
        }
    }
}
