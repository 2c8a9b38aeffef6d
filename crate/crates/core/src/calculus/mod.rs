//! Infinitesimal procedures over any [`ProbeField`] backend.
//!
//! Derivatives are standard parts of difference quotients with infinitesimal
//! increments; continuity is tested by a finite battery of infinitesimal
//! perturbations, so a pass is evidence to the probed order, not proof.
//! Hyperfinite sums, Euler's exponential and the sum-theorem probe live in
//! the sequence model; decimal subdivision runs on exact rationals.

mod continuity;
mod derivative;
mod hyperfinite;
mod ivt;
mod probe;
mod report;
mod sum_theorem;
mod transfer;

pub use continuity::{
    continuity_at, continuity_at_with_value, uniform_continuity_probe, ContinuityProbe, ContinuityReport,
    ContinuityVerdict,
};
pub use derivative::{derivative, Derivative, DerivativeProbe};
pub use hyperfinite::{
    binomial_report, euler_binomial_expand, euler_exp, hyperfinite_product, hyperfinite_sum, BinomialTerm, EulerExp,
    Hyperfinite,
};
pub use ivt::{ivt_root, IvtRoot};
pub use probe::ProbeField;
pub use report::{NumberFormat, Report};
pub use sum_theorem::{sum_theorem_probe, HyperOffset, RemainderProbe, SumTheoremReport, SumTheoremVerdict};
pub use transfer::{transfer_check, TransferPoint, TransferReport, TransferVerdict};
