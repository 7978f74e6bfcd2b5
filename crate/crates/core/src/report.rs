use serde_json::{json, Value};

/// Outcome of one named verification.
#[derive(Clone, Debug, PartialEq)]
pub struct CheckReport {
    pub check: String,
    pub pass: bool,
    pub detail: String,
    pub max_error: Option<f64>,
    pub samples: Option<usize>,
}

impl CheckReport {
    pub fn exact(check: impl Into<String>, result: Result<(), String>) -> Self {
        let (pass, detail) = match result {
            Ok(()) => (true, String::from("exact")),
            Err(e) => (false, e),
        };
        CheckReport { check: check.into(), pass, detail, max_error: None, samples: None }
    }

    pub fn numeric(check: impl Into<String>, max_error: f64, samples: usize, tol: f64) -> Self {
        let pass = max_error.is_finite() && max_error <= tol;
        CheckReport {
            check: check.into(),
            pass,
            detail: format!("max error {max_error:.3e} (tolerance {tol:.0e})"),
            max_error: Some(max_error),
            samples: Some(samples),
        }
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({ "check": self.check, "pass": self.pass, "detail": self.detail });
        if let Some(e) = self.max_error {
            v["maxError"] = json!(e);
        }
        if let Some(s) = self.samples {
            v["samples"] = json!(s);
        }
        v
    }
}

/// Folds a list of sub-results into one, keeping the first failure.
pub fn all_ok(results: impl IntoIterator<Item = Result<(), String>>) -> Result<(), String> {
    for r in results {
        r?;
    }
    Ok(())
}
