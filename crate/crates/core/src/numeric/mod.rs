//! Exact scalars, the shared ordered-field interface, and the standard-part
//! contract.

mod backend;
mod config;
mod rational;
pub mod real;
mod standard;

pub use backend::{classify, infinitely_close, st, Backend, Classification, Func, Sign, Tag};
pub use config::{FieldConfig, GUARD_DIGITS};
pub use rational::ExactRational;
pub use standard::Real;
