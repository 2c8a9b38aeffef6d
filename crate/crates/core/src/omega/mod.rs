//! Sequence-model backend.
//!
//! A number is represented by a real sequence `⟨a(n)⟩`; arithmetic is
//! termwise and two sequences are identified when they agree on a cofinite
//! index set. Deciding the order beyond that fragment would require a free
//! ultrafilter, so every such question comes back `Undecided`.
//!
//! Verdicts come from, in order: an exact rational-function pattern in `n`,
//! a power-log asymptotic expansion, and sampling of the tail at `2^j`.

mod asymptotic;
mod compare;
mod hypernat;
mod hyperseq;
mod limit;
mod quotient;

pub use asymptotic::{expand, Asym, Scale};
pub use compare::{hs_compare, AgreementPolicy, CompareReport, Verdict};
pub use hypernat::HyperNat;
pub use hyperseq::{expansion, probe_indices, Analysis, HyperSeq, StEstimate, SUM_BUDGET, TAIL_BUDGET};
pub use limit::{richardson, LimitEstimate, Profile};
pub use quotient::{hs_null_quotient_demo, QuotientReport};
