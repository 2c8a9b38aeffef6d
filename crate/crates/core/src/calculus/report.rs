use std::collections::BTreeMap;

use serde::Serialize;

use crate::numeric::ExactRational;

/// How exact rationals are rendered in reports.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum NumberFormat {
    /// `p/q`.
    #[default]
    Exact,
    /// Rounded to this many fractional digits.
    Decimal(u32),
}

impl NumberFormat {
    pub fn show(self, q: &ExactRational) -> String {
        match self {
            NumberFormat::Exact => q.to_string(),
            NumberFormat::Decimal(d) => q.to_decimal(d),
        }
    }
}

/// Uniform machine-readable shape shared by every calculus operation.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Report {
    pub operation: String,
    pub inputs: BTreeMap<String, String>,
    pub verdict: String,
    pub probes: Vec<BTreeMap<String, String>>,
    pub values: BTreeMap<String, String>,
    pub tolerances: BTreeMap<String, String>,
}

impl Report {
    pub fn new(operation: &str, verdict: impl Into<String>) -> Report {
        Report { operation: operation.into(), verdict: verdict.into(), ..Report::default() }
    }

    pub fn input(mut self, key: &str, value: impl ToString) -> Report {
        self.inputs.insert(key.into(), value.to_string());
        self
    }

    pub fn value(mut self, key: &str, value: impl ToString) -> Report {
        self.values.insert(key.into(), value.to_string());
        self
    }

    pub fn tolerance(mut self, key: &str, value: impl ToString) -> Report {
        self.tolerances.insert(key.into(), value.to_string());
        self
    }

    pub fn probe<K: ToString, V: ToString>(mut self, fields: impl IntoIterator<Item = (K, V)>) -> Report {
        self.probes.push(fields.into_iter().map(|(k, v)| (k.to_string(), v.to_string())).collect());
        self
    }
}
