//! Pass/fail reports with a stable one-line grammar for scripting.

use std::fmt;

/// Outcome of a sampled or exact check.
///
/// The display form is `PASS <check> samples=<n> seed=<s>` or
/// `FAIL <check> samples=<n> seed=<s> counterexample=<...>`, followed by any
/// informational notes on their own `note:`-prefixed lines.
#[derive(Debug, Clone)]
pub struct CheckReport {
    pub name: String,
    pub passed: bool,
    pub samples: usize,
    pub seed: u64,
    pub counterexample: Option<String>,
    pub notes: Vec<String>,
}

impl CheckReport {
    pub fn pass(name: &str, samples: usize, seed: u64) -> CheckReport {
        CheckReport {
            name: name.to_string(),
            passed: true,
            samples,
            seed,
            counterexample: None,
            notes: Vec::new(),
        }
    }

    pub fn fail(name: &str, samples: usize, seed: u64, counterexample: String) -> CheckReport {
        CheckReport {
            name: name.to_string(),
            passed: false,
            samples,
            seed,
            counterexample: Some(counterexample),
            notes: Vec::new(),
        }
    }

    pub fn note(mut self, line: String) -> CheckReport {
        self.notes.push(line);
        self
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} samples={} seed={}",
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.samples,
            self.seed
        )?;
        if let Some(ce) = &self.counterexample {
            write!(f, " counterexample={ce}")?;
        }
        for n in &self.notes {
            write!(f, "\nnote: {n}")?;
        }
        Ok(())
    }
}
