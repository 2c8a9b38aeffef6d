use std::sync::Arc;

use super::report::Report;
use crate::error::{Error, Result};
use crate::expr::{eval, Binding, Expr};
use crate::numeric::{ExactRational, FieldConfig, Real};

type Q = ExactRational;

#[derive(Clone, Debug, PartialEq)]
pub struct IvtRoot {
    pub f: Expr,
    pub a: Q,
    pub b: Q,
    pub digits: u32,
    /// Left endpoint to `digits` fractional digits, or the exact zero.
    pub decimal: String,
    /// `f` vanished exactly at a subdivision point.
    pub exact_hit: bool,
    /// Final bracket.
    pub left: Q,
    pub right: Q,
}

impl IvtRoot {
    pub fn report(&self) -> Report {
        Report::new("ivt_root", if self.exact_hit { "ExactHit" } else { "Bracketed" })
            .input("f", &self.f)
            .input("a", &self.a)
            .input("b", &self.b)
            .input("digits", self.digits)
            .value("decimal", &self.decimal)
            .value("exact_hit", self.exact_hit)
            .value("left", &self.left)
            .value("right", &self.right)
            .tolerance("bracket_width", &(&self.right - &self.left))
    }
}

fn value(f: &Expr, cfg: &Arc<FieldConfig>, x: &Q) -> Result<Q> {
    eval(f, cfg, &Binding::x(Real::new(x.clone(), cfg)))
        .map(Real::into_value)
        .map_err(|e| Error::NonNumericValue(format!("f({x}): {e}")))
}

/// Decimal subdivision: each round splits the bracket into ten equal parts
/// and keeps the leftmost one whose endpoint values do not share a sign.
pub fn ivt_root(f: &Expr, a: &Q, b: &Q, digits: u32, cfg: &Arc<FieldConfig>) -> Result<IvtRoot> {
    if a >= b {
        return Err(Error::Domain(format!("empty interval [{a}, {b}]")));
    }
    let (fa, fb) = (value(f, cfg, a)?, value(f, cfg, b)?);
    let done = |x: &Q, left: Q, right: Q, exact_hit: bool| IvtRoot {
        f: f.clone(),
        a: a.clone(),
        b: b.clone(),
        digits,
        decimal: x.to_decimal_floor(digits),
        exact_hit,
        left,
        right,
    };
    if fa.is_zero() {
        return Ok(done(a, a.clone(), a.clone(), true));
    }
    if fb.is_zero() {
        return Ok(done(b, b.clone(), b.clone(), true));
    }
    if fa.signum() == fb.signum() {
        return Err(Error::NoSignChange(a.to_string(), b.to_string()));
    }
    let (mut lo, mut hi, mut f_lo) = (a.clone(), b.clone(), fa);
    for _ in 0..digits {
        let width = &(&hi - &lo) / &Q::from(10);
        let mut prev = (lo.clone(), f_lo.clone());
        let mut chosen = None;
        for i in 1..=10 {
            let c = if i == 10 { hi.clone() } else { &lo + &(&width * &Q::from(i)) };
            let fc = value(f, cfg, &c)?;
            if prev.1.signum() * fc.signum() <= 0 {
                chosen = Some((prev, (c, fc)));
                break;
            }
            prev = (c, fc);
        }
        let ((c, fc), (d, fd)) = chosen.expect("a sign change persists inside the bracket");
        if fc.is_zero() {
            return Ok(done(&c, c.clone(), c.clone(), true));
        }
        if fd.is_zero() {
            return Ok(done(&d, d.clone(), d.clone(), true));
        }
        lo = c;
        hi = d;
        f_lo = fc;
    }
    Ok(done(&lo, lo.clone(), hi, false))
}
