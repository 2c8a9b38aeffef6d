use std::fmt;

use crate::numeric::{ExactRational, Func};

/// The three variable names of the language: the function argument `x`,
/// the sequence index `n`, and the summation index / parameter `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    X,
    N,
    K,
}

impl Var {
    pub fn name(self) -> &'static str {
        match self {
            Var::X => "x",
            Var::N => "n",
            Var::K => "k",
        }
    }

    pub fn from_name(s: &str) -> Option<Var> {
        match s {
            "x" => Some(Var::X),
            "n" => Some(Var::N),
            "k" => Some(Var::K),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl BinOp {
    pub fn symbol(self) -> char {
        match self {
            BinOp::Add => '+',
            BinOp::Sub => '-',
            BinOp::Mul => '*',
            BinOp::Div => '/',
        }
    }

    fn precedence(self) -> u8 {
        match self {
            BinOp::Add | BinOp::Sub => 1,
            BinOp::Mul | BinOp::Div => 2,
        }
    }
}

/// Right-hand side of `^`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Power {
    Rational(ExactRational),
    Var(Var),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Expr {
    Num(ExactRational),
    Var(Var),
    Neg(Box<Expr>),
    Bin(BinOp, Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, Power),
    Call(Func, Box<Expr>),
}

// constructors named after the operators they build
#[allow(clippy::should_implement_trait)]
impl Expr {
    pub fn num(q: impl Into<ExactRational>) -> Expr {
        Expr::Num(q.into())
    }

    pub fn var(v: Var) -> Expr {
        Expr::Var(v)
    }

    pub fn bin(op: BinOp, a: Expr, b: Expr) -> Expr {
        Expr::Bin(op, Box::new(a), Box::new(b))
    }

    pub fn add(a: Expr, b: Expr) -> Expr {
        Expr::bin(BinOp::Add, a, b)
    }

    pub fn sub(a: Expr, b: Expr) -> Expr {
        Expr::bin(BinOp::Sub, a, b)
    }

    pub fn mul(a: Expr, b: Expr) -> Expr {
        Expr::bin(BinOp::Mul, a, b)
    }

    pub fn div(a: Expr, b: Expr) -> Expr {
        Expr::bin(BinOp::Div, a, b)
    }

    pub fn neg(a: Expr) -> Expr {
        Expr::Neg(Box::new(a))
    }

    pub fn powq(a: Expr, q: impl Into<ExactRational>) -> Expr {
        Expr::Pow(Box::new(a), Power::Rational(q.into()))
    }

    pub fn call(f: Func, a: Expr) -> Expr {
        Expr::Call(f, Box::new(a))
    }

    pub fn contains(&self, v: Var) -> bool {
        match self {
            Expr::Num(_) => false,
            Expr::Var(w) => *w == v,
            Expr::Neg(a) | Expr::Call(_, a) => a.contains(v),
            Expr::Bin(_, a, b) => a.contains(v) || b.contains(v),
            Expr::Pow(a, p) => a.contains(v) || *p == Power::Var(v),
        }
    }

    /// Replaces every occurrence of `v` by `with`. An exponent variable can
    /// only be replaced by an integer literal or another variable; anything
    /// else is left in place.
    pub fn substitute(&self, v: Var, with: &Expr) -> Expr {
        match self {
            Expr::Num(_) => self.clone(),
            Expr::Var(w) if *w == v => with.clone(),
            Expr::Var(_) => self.clone(),
            Expr::Neg(a) => Expr::neg(a.substitute(v, with)),
            Expr::Call(f, a) => Expr::call(*f, a.substitute(v, with)),
            Expr::Bin(op, a, b) => Expr::bin(*op, a.substitute(v, with), b.substitute(v, with)),
            Expr::Pow(a, p) => {
                let p = match (p, with) {
                    (Power::Var(w), Expr::Num(q)) if *w == v && q.is_integer() => Power::Rational(q.clone()),
                    (Power::Var(w), Expr::Var(u)) if *w == v => Power::Var(*u),
                    _ => p.clone(),
                };
                Expr::Pow(Box::new(a.substitute(v, with)), p)
            }
        }
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        match self {
            Expr::Num(_) | Expr::Var(_) => 1,
            Expr::Neg(a) | Expr::Call(_, a) | Expr::Pow(a, _) => 1 + a.size(),
            Expr::Bin(_, a, b) => 1 + a.size() + b.size(),
        }
    }

    pub fn as_num(&self) -> Option<&ExactRational> {
        match self {
            Expr::Num(q) => Some(q),
            _ => None,
        }
    }

    /// Constant folding: evaluates operations on literals and removes
    /// neutral elements. No other rewriting.
    pub fn fold(&self) -> Expr {
        match self {
            Expr::Num(_) | Expr::Var(_) => self.clone(),
            Expr::Neg(a) => match a.fold() {
                Expr::Num(q) => Expr::Num(-q),
                Expr::Neg(inner) => *inner,
                other => Expr::neg(other),
            },
            Expr::Call(f, a) => Expr::call(*f, a.fold()),
            Expr::Pow(a, p) => {
                let base = a.fold();
                match (base, p) {
                    (_, Power::Rational(q)) if q.is_zero() => Expr::num(1),
                    (base, Power::Rational(q)) if q.is_one() => base,
                    (Expr::Num(b), Power::Rational(q)) if q.is_integer() => {
                        match q.to_i64().and_then(|e| b.powi(e).ok()) {
                            Some(v) => Expr::Num(v),
                            None => Expr::Pow(Box::new(Expr::Num(b)), p.clone()),
                        }
                    }
                    (base, p) => Expr::Pow(Box::new(base), p.clone()),
                }
            }
            Expr::Bin(op, a, b) => fold_bin(*op, a.fold(), b.fold()),
        }
    }
}

fn fold_bin(op: BinOp, a: Expr, b: Expr) -> Expr {
    let is = |e: &Expr, v: i64| matches!(e, Expr::Num(q) if *q == v);
    if let (Expr::Num(x), Expr::Num(y)) = (&a, &b) {
        match op {
            BinOp::Add => return Expr::Num(x + y),
            BinOp::Sub => return Expr::Num(x - y),
            BinOp::Mul => return Expr::Num(x * y),
            BinOp::Div if !y.is_zero() => return Expr::Num(x / y),
            BinOp::Div => {}
        }
    }
    match op {
        BinOp::Add if is(&a, 0) => b,
        BinOp::Add | BinOp::Sub if is(&b, 0) => a,
        BinOp::Sub if is(&a, 0) => Expr::neg(b).fold(),
        BinOp::Mul if is(&a, 0) || is(&b, 0) => Expr::num(0),
        BinOp::Mul if is(&a, 1) => b,
        BinOp::Mul | BinOp::Div if is(&b, 1) => a,
        BinOp::Div if is(&a, 0) => Expr::num(0),
        _ => Expr::bin(op, a, b),
    }
}

// Printing. The output reparses to a structurally identical tree whenever
// every literal is a non-negative finite decimal, which is all the parser
// produces.

const ATOM: u8 = 4;
const POWER: u8 = 3;

fn level(e: &Expr) -> u8 {
    match e {
        Expr::Bin(op, ..) => op.precedence(),
        Expr::Pow(..) => POWER,
        _ => ATOM,
    }
}

fn write_literal(f: &mut fmt::Formatter<'_>, q: &ExactRational) -> fmt::Result {
    if q.is_negative() {
        f.write_str("(")?;
        write_literal_abs(f, q)?;
        return f.write_str(")");
    }
    write_literal_abs(f, q)
}

fn write_literal_abs(f: &mut fmt::Formatter<'_>, q: &ExactRational) -> fmt::Result {
    let sign = if q.is_negative() { "-" } else { "" };
    let a = q.abs();
    if a.is_integer() {
        return write!(f, "{sign}{a}");
    }
    match terminating_digits(&a) {
        Some(d) => write!(f, "{sign}{}", a.to_decimal(d)),
        None => {
            if sign.is_empty() {
                write!(f, "({a})")
            } else {
                write!(f, "{sign}{a}")
            }
        }
    }
}

/// Digits after the point when `q` has a finite decimal expansion.
fn terminating_digits(q: &ExactRational) -> Option<u32> {
    use num_bigint::BigInt;
    use num_integer::Integer;
    use num_traits::{One, Zero};
    let mut d = q.denom().clone();
    let (mut twos, mut fives) = (0u32, 0u32);
    let two = BigInt::from(2);
    let five = BigInt::from(5);
    while d.is_even() && !d.is_zero() {
        d /= &two;
        twos += 1;
    }
    while (&d % &five).is_zero() {
        d /= &five;
        fives += 1;
    }
    d.is_one().then_some(twos.max(fives))
}

fn write_expr(f: &mut fmt::Formatter<'_>, e: &Expr, min: u8) -> fmt::Result {
    let wrap = level(e) < min;
    if wrap {
        f.write_str("(")?;
    }
    match e {
        Expr::Num(q) => write_literal(f, q)?,
        Expr::Var(v) => f.write_str(v.name())?,
        Expr::Neg(a) => {
            f.write_str("-")?;
            write_expr(f, a, ATOM)?;
        }
        Expr::Call(func, a) => {
            write!(f, "{}(", func.name())?;
            write_expr(f, a, 0)?;
            f.write_str(")")?;
        }
        Expr::Pow(a, p) => {
            write_expr(f, a, ATOM)?;
            f.write_str("^")?;
            match p {
                Power::Rational(q) => write!(f, "{q}")?,
                Power::Var(v) => f.write_str(v.name())?,
            }
        }
        Expr::Bin(op, a, b) => {
            let prec = op.precedence();
            write_expr(f, a, prec)?;
            write!(f, " {} ", op.symbol())?;
            write_expr(f, b, prec + 1)?;
        }
    }
    if wrap {
        f.write_str(")")?;
    }
    Ok(())
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_expr(f, self, 0)
    }
}
