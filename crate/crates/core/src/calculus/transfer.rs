use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use super::probe::ProbeField;
use super::report::{NumberFormat, Report};
use crate::error::{Error, Result};
use crate::expr::{eval, Binding, Expr};
use crate::numeric::{ExactRational, FieldConfig};

type Q = ExactRational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum TransferVerdict {
    Pass,
    Fail,
    /// The backend cannot interpret a function in the identity; reported
    /// as the finding, not as a failure of the identity.
    NoTransfer,
    Error,
}

impl fmt::Display for TransferVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TransferPoint {
    pub point: String,
    /// Largest coefficient or sampled term of `lhs - rhs`.
    pub magnitude: Option<Q>,
    pub error: Option<Error>,
}

impl TransferPoint {
    fn passes(&self, tol: &Q) -> bool {
        matches!(&self.magnitude, Some(m) if m < tol)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TransferReport {
    pub lhs: Expr,
    pub rhs: Expr,
    pub backend: &'static str,
    pub points: Vec<TransferPoint>,
    /// `10^(-working_precision + 5)`.
    pub tolerance: Q,
    pub verdict: TransferVerdict,
}

impl TransferReport {
    pub fn max_magnitude(&self) -> Option<Q> {
        self.points.iter().filter_map(|p| p.magnitude.clone()).max()
    }

    pub fn report(&self, fmt: NumberFormat) -> Report {
        let mut r = Report::new("transfer_check", self.verdict.to_string())
            .input("lhs", &self.lhs)
            .input("rhs", &self.rhs)
            .input("backend", self.backend)
            .tolerance("magnitude", &self.tolerance);
        if let Some(m) = self.max_magnitude() {
            r = r.value("max_magnitude", fmt.show(&m));
        }
        for p in &self.points {
            let mut fields = vec![("point", p.point.clone())];
            if let Some(m) = &p.magnitude {
                fields.push(("magnitude", fmt.show(m)));
                fields.push(("pass", p.passes(&self.tolerance).to_string()));
            }
            if let Some(e) = &p.error {
                fields.push(("finding", e.name().to_string()));
                fields.push(("detail", e.to_string()));
            }
            r = r.probe(fields);
        }
        r
    }
}

/// Evaluates `lhs - rhs` at each point; backend errors are recorded per
/// point rather than returned.
pub fn transfer_check<B: ProbeField>(
    lhs: &Expr,
    rhs: &Expr,
    points: &[(String, B)],
    cfg: &Arc<FieldConfig>,
) -> TransferReport {
    let diff = Expr::sub(lhs.clone(), rhs.clone());
    let tolerance = cfg.coefficient_tolerance();
    let points: Vec<TransferPoint> = points
        .iter()
        .map(|(name, x)| {
            let m: Result<Q> = eval(&diff, cfg, &Binding::x(x.clone())).and_then(|v| v.magnitude());
            match m {
                Ok(m) => TransferPoint { point: name.clone(), magnitude: Some(m), error: None },
                Err(e) => TransferPoint { point: name.clone(), magnitude: None, error: Some(e) },
            }
        })
        .collect();
    let verdict = if points.iter().any(|p| matches!(p.error, Some(Error::NoTransfer(_)))) {
        TransferVerdict::NoTransfer
    } else if points.iter().any(|p| p.error.is_some()) {
        TransferVerdict::Error
    } else if points.iter().all(|p| p.passes(&tolerance)) {
        TransferVerdict::Pass
    } else {
        TransferVerdict::Fail
    };
    TransferReport { lhs: lhs.clone(), rhs: rhs.clone(), backend: B::NAME, points, tolerance, verdict }
}
