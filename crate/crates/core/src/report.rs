use std::fmt;
use std::time::Instant;

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// Outcome of one named check. A failing report always carries a witness.
#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    pub elapsed_ms: u128,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed() { "PASS" } else { "FAIL" };
        write!(f, "[{tag}] {} ({} ms)", self.name, self.elapsed_ms)?;
        for n in &self.notes {
            write!(f, "\n    {n}")?;
        }
        if let Some(w) = &self.witness {
            write!(f, "\n    witness: {w}")?;
        }
        Ok(())
    }
}

/// Accumulates named expectations into a [`CheckReport`].
pub struct Checker {
    name: String,
    start: Instant,
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Checker {
    pub fn new(name: impl Into<String>) -> Checker {
        Checker { name: name.into(), start: Instant::now(), failures: Vec::new(), notes: Vec::new() }
    }

    /// Records `label` as passed or failed; `witness` is only built on failure.
    pub fn expect(&mut self, label: &str, ok: bool, witness: impl FnOnce() -> String) -> bool {
        if ok {
            self.notes.push(format!("ok: {label}"));
        } else {
            self.notes.push(format!("FAILED: {label}"));
            self.failures.push(format!("{label}: {}", witness()));
        }
        ok
    }

    pub fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    pub fn finish(self) -> CheckReport {
        let status = if self.failures.is_empty() { Status::Pass } else { Status::Fail };
        CheckReport {
            name: self.name,
            status,
            witness: (!self.failures.is_empty()).then(|| self.failures.join("; ")),
            notes: self.notes,
            elapsed_ms: self.start.elapsed().as_millis(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn failure_carries_witness() {
        let mut c = Checker::new("demo");
        c.expect("one", true, || unreachable!());
        c.expect("two", false, || "3 != 4".into());
        let r = c.finish();
        assert_eq!(r.status, Status::Fail);
        assert_eq!(r.witness.as_deref(), Some("two: 3 != 4"));
    }

    #[test]
    fn pass_has_no_witness() {
        let r = Checker::new("ok").finish();
        assert!(r.passed());
        assert!(r.witness.is_none());
        let json = serde_json::to_value(&r).unwrap();
        assert_eq!(json["status"], "pass");
    }
}
