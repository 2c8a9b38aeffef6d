//! Calculus over non-Archimedean ordered fields.
//!
//! Three interchangeable backends implement [`numeric::Backend`]:
//!
//! * [`levi_civita::LcNumber`] — truncated Levi-Civita series in a positive
//!   infinitesimal `eps`; fully decidable.
//! * [`omega::HyperSeq`] — sequence representatives compared by eventual
//!   (cofinite) agreement; decides what the Fréchet filter decides and
//!   reports `Undecided` elsewhere.
//! * [`ratfunc::RatFunc`] — rational functions in `x` ordered at infinity;
//!   an ordered extension with no transcendental functions.
//!
//! The [`calculus`] module runs standard-part derivatives, continuity
//! probes, hyperfinite sums and products, decimal subdivision and
//! uniform-convergence probes on top of them, driven by [`expr`].

pub mod calculus;
pub mod error;
pub mod expr;
pub mod levi_civita;
pub mod numeric;
pub mod omega;
pub mod ratfunc;

pub use error::{Error, Result};
pub use expr::{parse, Expr};
pub use levi_civita::LcNumber;
pub use numeric::{Backend, Classification, ExactRational, FieldConfig, Func, Sign, Tag};
pub use omega::{HyperNat, HyperSeq};
pub use ratfunc::RatFunc;
