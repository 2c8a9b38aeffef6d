//! Expression language: AST, parser, printer, symbolic derivative and
//! evaluation over any backend.

mod ast;
mod diff;
mod eval;
mod parse;

pub use crate::numeric::Func;
pub use ast::{BinOp, Expr, Power, Var};
pub use diff::symbolic_diff;
pub use eval::{eval, Binding};
pub use parse::{parse, ParseError};
