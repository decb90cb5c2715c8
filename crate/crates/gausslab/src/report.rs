//! Structured results of verification runs.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::Serialize;
use serde_json::Value;

/// One identity residual or inequality ratio.
///
/// `ratio = lhs / rhs_budget`; a report passes when the ratio is at most 1.
/// For identities `lhs` is the residual and `rhs_budget` the tolerance.
#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct Report {
    pub name: String,
    pub lhs: f64,
    pub rhs_budget: f64,
    pub ratio: f64,
    pub params: BTreeMap<String, Value>,
    pub elapsed: f64,
}

impl Report {
    pub fn new(name: impl Into<String>, lhs: f64, rhs_budget: f64) -> Self {
        let ratio = if rhs_budget > 0.0 { lhs / rhs_budget } else { f64::INFINITY };
        Report { name: name.into(), lhs, rhs_budget, ratio, params: BTreeMap::new(), elapsed: 0.0 }
    }

    pub fn param(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.params.insert(key.to_string(), value.into());
        self
    }

    pub fn timed(mut self, since: Instant) -> Self {
        self.elapsed = since.elapsed().as_secs_f64();
        self
    }

    pub fn passed(&self) -> bool {
        self.ratio.is_finite() && self.ratio <= 1.0
    }

    /// Without the elapsed field, for byte-stable comparisons.
    pub fn stable_json(&self) -> String {
        let mut v = serde_json::to_value(self).expect("report serializes");
        if let Value::Object(m) = &mut v {
            m.remove("elapsed");
        }
        v.to_string()
    }
}

/// Running maximum used by sweeps: keeps the worst ratio and its inputs.
#[derive(Clone, Debug, Default)]
pub struct Worst {
    pub lhs: f64,
    pub budget: f64,
    pub ratio: f64,
    pub count: usize,
    pub at: String,
}

impl Worst {
    pub fn push(&mut self, lhs: f64, budget: f64, at: impl FnOnce() -> String) {
        let r = lhs / budget;
        self.count += 1;
        if self.count == 1 || r > self.ratio || r.is_nan() {
            self.ratio = r;
            self.lhs = lhs;
            self.budget = budget;
            self.at = at();
        }
    }

    pub fn merge(mut self, o: Worst) -> Worst {
        let count = self.count + o.count;
        if o.count > 0 && (self.count == 0 || o.ratio > self.ratio || o.ratio.is_nan()) {
            self = o;
        }
        self.count = count;
        self
    }

    pub fn report(&self, name: &str) -> Report {
        Report::new(name, self.lhs, self.budget)
            .param("cases", self.count as u64)
            .param("worst_at", self.at.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ratio_and_pass() {
        let r = Report::new("x", 1.0, 4.0).param("T", 4.0);
        assert_eq!(r.ratio, 0.25);
        assert!(r.passed());
        assert!(!Report::new("y", 2.0, 1.0).passed());
        assert!(!r.stable_json().contains("elapsed"));
    }

    #[test]
    fn worst_tracks_max() {
        let mut w = Worst::default();
        w.push(1.0, 10.0, || "a".into());
        w.push(3.0, 10.0, || "b".into());
        w.push(2.0, 10.0, || "c".into());
        assert_eq!(w.at, "b");
        assert_eq!(w.count, 3);
        let mut v = Worst::default();
        v.push(9.0, 10.0, || "d".into());
        let m = w.merge(v);
        assert_eq!((m.at.as_str(), m.count), ("d", 4));
    }
}
