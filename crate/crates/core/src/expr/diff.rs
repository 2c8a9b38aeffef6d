use super::ast::{BinOp, Expr, Power, Var};
use crate::numeric::{ExactRational, Func};

/// Derivative with respect to `x` by the textbook rules, followed by constant
/// folding. `n` and `k` are treated as constants.
///
/// For a variable exponent `a^k` the rule `k * a^k / a * a'` is used, which is
/// undefined where `a = 0`.
pub fn symbolic_diff(e: &Expr) -> Expr {
    derive(e).fold()
}

fn derive(e: &Expr) -> Expr {
    match e {
        Expr::Num(_) => Expr::num(0),
        Expr::Var(Var::X) => Expr::num(1),
        Expr::Var(_) => Expr::num(0),
        Expr::Neg(a) => Expr::neg(derive(a)),
        Expr::Bin(op, a, b) => {
            let (a, b) = (a.as_ref(), b.as_ref());
            match op {
                BinOp::Add | BinOp::Sub => Expr::bin(*op, derive(a), derive(b)),
                BinOp::Mul => Expr::add(Expr::mul(derive(a), b.clone()), Expr::mul(a.clone(), derive(b))),
                BinOp::Div => Expr::div(
                    Expr::sub(Expr::mul(derive(a), b.clone()), Expr::mul(a.clone(), derive(b))),
                    Expr::powq(b.clone(), 2),
                ),
            }
        }
        Expr::Pow(a, Power::Rational(r)) => {
            Expr::mul(Expr::mul(Expr::Num(r.clone()), Expr::powq((**a).clone(), r - &ExactRational::one())), derive(a))
        }
        Expr::Pow(a, Power::Var(v)) => Expr::mul(
            Expr::mul(Expr::Var(*v), Expr::div(Expr::Pow(a.clone(), Power::Var(*v)), (**a).clone())),
            derive(a),
        ),
        Expr::Call(f, a) => {
            let inner = (**a).clone();
            let outer = match f {
                Func::Sin => Expr::call(Func::Cos, inner),
                Func::Cos => Expr::neg(Expr::call(Func::Sin, inner)),
                Func::Exp => Expr::call(Func::Exp, inner),
                Func::Log => Expr::div(Expr::num(1), inner),
                Func::Sqrt => Expr::div(Expr::num(1), Expr::mul(Expr::num(2), Expr::call(Func::Sqrt, inner))),
                Func::Abs => Expr::div(Expr::call(Func::Abs, inner.clone()), inner),
            };
            Expr::mul(outer, derive(a))
        }
    }
}
