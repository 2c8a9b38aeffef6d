//! Numeric tail analysis for sequences without a recognized closed form.
//!
//! Samples are taken at `2^j` for a window of `j` up to the cutoff, plus the
//! odd neighbors `2^j ± 1` near the top of the window (sampling only powers
//! of two would see `(-1)^n` as the constant 1). Limits are estimated by
//! Richardson extrapolation in `h = 1/n`, which is exact for sequences with
//! an expansion in integer powers of `1/n` and fails to stabilize otherwise.

use crate::error::{Error, Result};
use crate::numeric::{Classification, ExactRational, Sign, Tag};

type Q = ExactRational;

/// Terms of a sequence at the sample indices.
#[derive(Clone, Debug)]
pub struct Profile {
    /// `(j, a(2^j))`, `j` increasing.
    pub main: Vec<(u32, Q)>,
    /// `(n, a(n))` for `n = 2^j ± 1` at the top of the window.
    pub neighbors: Vec<(u64, Q)>,
}

impl Profile {
    /// Indices to evaluate for a window ending at `2^top`, ascending.
    pub fn indices(top: u32) -> (Vec<u32>, Vec<u64>) {
        let lo = (top / 2).max(1);
        let js: Vec<u32> = (lo..=top).collect();
        let mut neighbors = Vec::new();
        for j in top.saturating_sub(2).max(lo)..=top {
            neighbors.push((1u64 << j) - 1);
            neighbors.push((1u64 << j) + 1);
        }
        (js, neighbors)
    }

    pub fn all_values(&self) -> impl Iterator<Item = &Q> {
        self.main.iter().map(|(_, v)| v).chain(self.neighbors.iter().map(|(_, v)| v))
    }

    pub fn top_index(&self) -> u64 {
        self.main.last().map(|(j, _)| 1u64 << j).unwrap_or(1)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LimitEstimate {
    pub value: Q,
    /// Difference between the last two extrapolants in the chosen column.
    pub error: Q,
}

/// Richardson extrapolation of samples taken at `h, h/2, h/4, ...`.
pub fn richardson(samples: &[Q]) -> Option<LimitEstimate> {
    if samples.len() < 2 {
        return None;
    }
    let mut table: Vec<Vec<Q>> = Vec::with_capacity(samples.len());
    for (i, s) in samples.iter().enumerate() {
        let mut row = vec![s.clone()];
        for m in 1..=i {
            let f = Q::from(1i64 << m.min(62));
            let v = (&f * &row[m - 1] - &table[i - 1][m - 1]) / (&f - &Q::one());
            row.push(v);
        }
        table.push(row);
    }
    let last = table.len() - 1;
    (0..last)
        .map(|m| {
            let v = table[last][m].clone();
            let err = (&v - &table[last - 1][m]).abs();
            LimitEstimate { value: v, error: err }
        })
        .min_by(|a, b| a.error.cmp(&b.error))
}

fn magnitudes(p: &Profile) -> Vec<Q> {
    p.main.iter().map(|(_, v)| v.abs()).collect()
}

/// Limit of the sampled tail, or `None` when extrapolation does not settle
/// within `tol` or the odd neighbors disagree with it.
pub fn limit(p: &Profile, tol: &Q) -> Option<LimitEstimate> {
    let samples: Vec<Q> = p.main.iter().map(|(_, v)| v.clone()).collect();
    let est = richardson(&samples)?;
    if est.error >= *tol {
        return None;
    }
    // a neighbor may sit at most about twice as far from the limit as the
    // power-of-two sample beside it
    let slack = &Q::from(2) * &(&est.error + tol);
    for (n, v) in &p.neighbors {
        let j = 63 - (n + 1).leading_zeros();
        let Some((_, anchor)) = p.main.iter().find(|(k, _)| *k == j) else {
            continue;
        };
        let bound = &Q::from(2) * &(anchor - &est.value).abs() + &slack;
        if (v - &est.value).abs() > bound {
            return None;
        }
    }
    Some(est)
}

/// Magnitudes strictly increasing with increments that do not shrink.
fn diverges(p: &Profile) -> bool {
    let m = magnitudes(p);
    if m.len() < 4 {
        return false;
    }
    let tail = &m[m.len().saturating_sub(8)..];
    let diffs: Vec<Q> = tail.windows(2).map(|w| &w[1] - &w[0]).collect();
    if diffs.iter().any(|d| !d.is_positive()) {
        return false;
    }
    let keep = Q::ratio(63, 64);
    diffs.windows(2).all(|w| w[1] >= &w[0] * &keep)
}

fn nonincreasing(p: &Profile) -> bool {
    magnitudes(p).windows(2).all(|w| w[1] <= w[0])
}

/// Sign shared by every nonzero sample, if any.
fn common_sign(p: &Profile) -> Result<Sign> {
    let mut sign = Sign::Zero;
    for v in p.all_values() {
        let s = Sign::of(v.signum());
        if s == Sign::Zero {
            continue;
        }
        if sign != Sign::Zero && s != sign {
            return Err(Error::Undecided(
                "terms change sign on infinitely many sampled indices; only a free ultrafilter could decide".into(),
            ));
        }
        sign = s;
    }
    Ok(sign)
}

/// Classification from samples alone. Anything short of clear evidence is
/// `Undecided`.
pub fn classify(p: &Profile, tol: &Q) -> Result<(Classification, Option<LimitEstimate>)> {
    if p.all_values().all(|v| v.is_zero()) {
        return Ok((Classification::ZERO, Some(LimitEstimate { value: Q::zero(), error: Q::zero() })));
    }
    let sign = common_sign(p)?;
    if p.main.iter().any(|(_, v)| v.is_zero()) {
        return Err(Error::Undecided("terms vanish on some sampled indices but not others".into()));
    }
    if diverges(p) {
        return Ok((Classification::new(Tag::Infinite, sign), None));
    }
    // nonincreasing magnitudes bound the limit by the last sample; this also
    // spares extrapolating across terms like 2^(-2^20)
    let small = tol / &Q::from(10);
    let last = magnitudes(p).pop().unwrap_or_default();
    if nonincreasing(p) && last < small && p.neighbors.iter().all(|(_, v)| v.abs() < small) {
        return Ok((
            Classification::new(Tag::Infinitesimal, sign),
            Some(LimitEstimate { value: Q::zero(), error: last }),
        ));
    }
    let est = limit(p, tol).ok_or_else(|| {
        Error::Undecided(format!("tail does not settle within tolerance {} by index {}", tol, p.top_index()))
    })?;
    let big = &Q::from(10) * tol;
    if est.value.abs() >= big {
        if Sign::of(est.value.signum()) != sign {
            return Err(Error::Undecided("limit sign disagrees with sampled terms".into()));
        }
        return Ok((Classification::new(Tag::Appreciable, sign), Some(est)));
    }
    if est.value.abs() < *tol && nonincreasing(p) {
        return Ok((Classification::new(Tag::Infinitesimal, sign), Some(est)));
    }
    Err(Error::Undecided(format!(
        "limit estimate {} is too close to the tolerance {} to separate zero from nonzero",
        est.value.to_decimal(12),
        tol
    )))
}
