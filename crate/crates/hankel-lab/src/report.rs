//! Structured verdicts for named identity and inequality checks.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

/// Outcome of one named verification.
///
/// The pass predicate is fixed by construction:
/// * inequality checks pass iff `measured <= bound * (1 + tolerance)`,
/// * identity checks pass iff `|measured - target| <= tolerance * max(1, |target|)`
///   (the target is stored in `bound`).
///
/// A failing report carries enough state (`params`, including any seed) to
/// reproduce the failure from the command line.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CheckReport {
    pub name: String,
    pub params: BTreeMap<String, String>,
    pub measured: f64,
    pub bound: f64,
    pub ratio: f64,
    pub pass: bool,
    pub tolerance: f64,
    pub notes: String,
}

impl CheckReport {
    /// Inequality verdict: `measured <= bound` up to relative slack `tolerance`.
    pub fn inequality(name: &str, measured: f64, bound: f64, tolerance: f64) -> Self {
        let pass = measured <= bound * (1.0 + tolerance);
        CheckReport {
            name: name.to_string(),
            params: BTreeMap::new(),
            measured,
            bound,
            ratio: safe_ratio(measured, bound),
            pass,
            tolerance,
            notes: String::new(),
        }
    }

    /// Identity verdict: `measured == target` up to `tolerance * max(1, |target|)`.
    pub fn identity(name: &str, measured: f64, target: f64, tolerance: f64) -> Self {
        let pass = (measured - target).abs() <= tolerance * target.abs().max(1.0);
        CheckReport {
            name: name.to_string(),
            params: BTreeMap::new(),
            measured,
            bound: target,
            ratio: safe_ratio(measured, target),
            pass,
            tolerance,
            notes: String::new(),
        }
    }

    pub fn with_param(mut self, key: &str, value: impl ToString) -> Self {
        self.params.insert(key.to_string(), value.to_string());
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.notes = note.into();
        self
    }

    /// Force a pass with an explanatory note (degenerate inputs that carry no
    /// information, e.g. the zero symbol).
    pub fn skipped(name: &str, note: &str) -> Self {
        CheckReport {
            name: name.to_string(),
            params: BTreeMap::new(),
            measured: 0.0,
            bound: 0.0,
            ratio: 0.0,
            pass: true,
            tolerance: 0.0,
            notes: format!("skipped: {note}"),
        }
    }

    /// Compact `key=value` rendering of the parameter map, stable order.
    pub fn params_compact(&self) -> String {
        self.params
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join(";")
    }
}

/// measured / bound, kept finite so reports stay JSON-representable.
fn safe_ratio(measured: f64, bound: f64) -> f64 {
    if bound != 0.0 {
        measured / bound
    } else if measured == 0.0 {
        0.0
    } else {
        f64::MAX
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inequality_pass_predicate() {
        assert!(CheckReport::inequality("t", 1.0, 1.0, 1e-3).pass);
        assert!(CheckReport::inequality("t", 1.0009, 1.0, 1e-3).pass);
        assert!(!CheckReport::inequality("t", 1.0011, 1.0, 1e-3).pass);
        // zero bound: only an exact zero passes
        assert!(CheckReport::inequality("t", 0.0, 0.0, 1e-3).pass);
        assert!(!CheckReport::inequality("t", 1e-9, 0.0, 1e-3).pass);
    }

    #[test]
    fn identity_pass_predicate() {
        // absolute comparison for small targets
        assert!(CheckReport::identity("t", 1e-11, 0.0, 1e-10).pass);
        assert!(!CheckReport::identity("t", 1e-9, 0.0, 1e-10).pass);
        // relative comparison for large targets
        assert!(CheckReport::identity("t", 1000.0 + 1e-8, 1000.0, 1e-10).pass);
        assert!(!CheckReport::identity("t", 1000.1, 1000.0, 1e-10).pass);
    }

    #[test]
    fn json_round_trip_keeps_field_names() {
        let r = CheckReport::identity("beta_integral", 0.5, 0.5, 1e-6).with_param("s", 0.5);
        let j = serde_json::to_value(&r).unwrap();
        for key in [
            "name",
            "params",
            "measured",
            "bound",
            "ratio",
            "pass",
            "tolerance",
            "notes",
        ] {
            assert!(j.get(key).is_some(), "missing field {key}");
        }
    }
}
