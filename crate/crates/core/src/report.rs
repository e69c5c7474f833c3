use std::fmt;
use std::time::Duration;

use serde::Serialize;

/// One nonzero residual found by a checker.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Witness {
    pub location: String,
    pub residual: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub check: String,
    pub parameters: Vec<(String, String)>,
    pub witnesses: Vec<Witness>,
    /// Total failures, including those beyond the recorded witnesses.
    pub failures: usize,
    pub notes: Vec<String>,
    #[serde(serialize_with = "ser_duration")]
    pub elapsed: Duration,
}

fn ser_duration<S: serde::Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_f64(d.as_secs_f64())
}

const MAX_WITNESSES: usize = 8;

impl Report {
    pub fn new(check: impl Into<String>) -> Self {
        Report {
            check: check.into(),
            parameters: Vec::new(),
            witnesses: Vec::new(),
            failures: 0,
            notes: Vec::new(),
            elapsed: Duration::ZERO,
        }
    }

    pub fn param(mut self, key: &str, value: impl ToString) -> Self {
        self.parameters.push((key.to_string(), value.to_string()));
        self
    }

    pub fn fail(&mut self, location: impl Into<String>, residual: impl Into<String>) {
        self.failures += 1;
        if self.witnesses.len() < MAX_WITNESSES {
            self.witnesses.push(Witness { location: location.into(), residual: residual.into() });
        }
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    pub fn verdict(&self) -> &'static str {
        if self.passed() {
            "pass"
        } else {
            "FAIL"
        }
    }

    pub fn absorb(&mut self, other: Report) {
        for w in other.witnesses {
            if self.witnesses.len() < MAX_WITNESSES {
                self.witnesses.push(w);
            }
        }
        self.failures += other.failures;
        self.notes.extend(other.notes);
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:<20} {}", self.check, self.verdict())?;
        if !self.parameters.is_empty() {
            let ps: Vec<String> = self.parameters.iter().map(|(k, v)| format!("{}={}", k, v)).collect();
            write!(f, "  [{}]", ps.join(", "))?;
        }
        write!(f, "  ({:.2?})", self.elapsed)?;
        for n in &self.notes {
            write!(f, "\n    note: {}", n)?;
        }
        if self.failures > 0 {
            write!(f, "\n    {} failing location(s)", self.failures)?;
        }
        for w in &self.witnesses {
            write!(f, "\n    at {}: {}", w.location, w.residual)?;
        }
        Ok(())
    }
}
