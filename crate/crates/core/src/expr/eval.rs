use std::sync::Arc;

use super::ast::{BinOp, Expr, Power, Var};
use crate::error::{Error, Result};
use crate::numeric::{Backend, FieldConfig};

/// Values for the variables of an expression.
#[derive(Clone, Debug)]
pub struct Binding<B> {
    pub x: Option<B>,
    pub n: Option<B>,
    pub k: Option<B>,
}

impl<B> Default for Binding<B> {
    fn default() -> Self {
        Binding { x: None, n: None, k: None }
    }
}

impl<B: Clone> Binding<B> {
    pub fn x(value: B) -> Self {
        Binding { x: Some(value), ..Default::default() }
    }

    pub fn n(value: B) -> Self {
        Binding { n: Some(value), ..Default::default() }
    }

    pub fn with(mut self, v: Var, value: B) -> Self {
        *self.slot(v) = Some(value);
        self
    }

    fn slot(&mut self, v: Var) -> &mut Option<B> {
        match v {
            Var::X => &mut self.x,
            Var::N => &mut self.n,
            Var::K => &mut self.k,
        }
    }

    pub fn get(&self, v: Var) -> Option<&B> {
        match v {
            Var::X => self.x.as_ref(),
            Var::N => self.n.as_ref(),
            Var::K => self.k.as_ref(),
        }
    }
}

/// Structural evaluation in backend `B`. Backend errors pass through.
pub fn eval<B: Backend>(e: &Expr, cfg: &Arc<FieldConfig>, binding: &Binding<B>) -> Result<B> {
    let lookup = |v: Var| binding.get(v).cloned().ok_or_else(|| Error::UnboundVariable(v.name().to_string()));
    match e {
        Expr::Num(q) => Ok(B::constant(cfg, q)),
        Expr::Var(v) => lookup(*v),
        Expr::Neg(a) => Ok(eval(a, cfg, binding)?.neg()),
        Expr::Bin(op, a, b) => {
            let a = eval(a, cfg, binding)?;
            let b = eval(b, cfg, binding)?;
            match op {
                BinOp::Add => a.add(&b),
                BinOp::Sub => a.sub(&b),
                BinOp::Mul => a.mul(&b),
                BinOp::Div => a.div(&b),
            }
        }
        Expr::Pow(a, Power::Rational(q)) => {
            let base = eval(a, cfg, binding)?;
            let p = q.numer().try_into().map_err(|_| Error::Domain(format!("exponent {q} too large")))?;
            if q.is_integer() {
                return base.powi(p);
            }
            let r: u32 = q.denom().try_into().map_err(|_| Error::Domain(format!("root index of {q} too large")))?;
            base.root(r)?.powi(p)
        }
        Expr::Pow(a, Power::Var(v)) => {
            let base = eval(a, cfg, binding)?;
            base.pow_by(&lookup(*v)?)
        }
        Expr::Call(f, a) => eval(a, cfg, binding)?.apply(*f),
    }
}
