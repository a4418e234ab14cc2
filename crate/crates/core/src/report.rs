use std::collections::BTreeMap;

use serde::Serialize;

/// Keep at most this many witnesses per axiom; the rest are only counted.
const WITNESSES_PER_AXIOM: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub axiom: String,
    pub witness: Vec<String>,
    pub lhs: String,
    pub rhs: String,
}

/// Outcome of an axiom checker. An empty violation list means the checked
/// axioms hold exactly on every tuple that was examined.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub checked: Vec<String>,
    pub violations: Vec<Violation>,
    pub violation_counts: BTreeMap<String, usize>,
    /// Tuples were only examined when their total weight stayed at or below this.
    pub degree_limit: Option<usize>,
}

impl ValidationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn pass(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn checking(&mut self, axiom: &str) {
        if !self.checked.iter().any(|a| a == axiom) {
            self.checked.push(axiom.to_string());
        }
    }

    pub fn violation(&mut self, axiom: &str, witness: Vec<String>, lhs: String, rhs: String) {
        let count = self.violation_counts.entry(axiom.to_string()).or_insert(0);
        *count += 1;
        if *count <= WITNESSES_PER_AXIOM {
            self.violations.push(Violation {
                axiom: axiom.to_string(),
                witness,
                lhs,
                rhs,
            });
        }
    }

    pub fn merge(&mut self, other: ValidationReport) {
        for a in other.checked {
            self.checking(&a);
        }
        for (axiom, n) in other.violation_counts {
            *self.violation_counts.entry(axiom).or_insert(0) += n;
        }
        self.violations.extend(other.violations);
        self.degree_limit = match (self.degree_limit, other.degree_limit) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
    }

    pub fn violated_axioms(&self) -> Vec<&str> {
        self.violation_counts.keys().map(String::as_str).collect()
    }
}
