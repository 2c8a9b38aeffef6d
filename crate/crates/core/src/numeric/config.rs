use serde::{Deserialize, Serialize};

use super::ExactRational;
use crate::error::{Error, Result};

/// Extra decimal digits carried beyond `working_precision` when
/// materializing transcendental values.
pub const GUARD_DIGITS: u32 = 10;

/// Knobs shared by every backend.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FieldConfig {
    /// Maximum number of retained Levi-Civita terms.
    pub truncation_order: usize,
    /// Decimal digits for transcendental base-point values.
    pub working_precision: u32,
    /// Largest index examined in the sequence model.
    pub sequence_cutoff: u64,
    pub st_tolerance: ExactRational,
}

impl Default for FieldConfig {
    fn default() -> Self {
        FieldConfig {
            truncation_order: 32,
            working_precision: 50,
            sequence_cutoff: 1 << 20,
            st_tolerance: ExactRational::pow10_neg(9),
        }
    }
}

impl FieldConfig {
    pub fn validate(&self) -> Result<()> {
        if self.truncation_order < 1 {
            return Err(Error::InvalidConfig("truncation_order must be at least 1".into()));
        }
        if self.working_precision < 1 {
            return Err(Error::InvalidConfig("working_precision must be at least 1".into()));
        }
        if self.sequence_cutoff < 2 {
            return Err(Error::InvalidConfig("sequence_cutoff must be at least 2".into()));
        }
        if !self.st_tolerance.is_positive() {
            return Err(Error::InvalidConfig("st_tolerance must be positive".into()));
        }
        Ok(())
    }

    /// Digits used for materialized constants.
    pub fn digits(&self) -> u32 {
        self.working_precision + GUARD_DIGITS
    }

    /// Significant bits kept when an exact value grows too large.
    pub fn precision_bits(&self) -> u64 {
        (self.digits() as f64 * std::f64::consts::LOG2_10).ceil() as u64 + 16
    }

    /// `10^(-working_precision + 5)`, the coefficient tolerance for
    /// identities involving materialized constants.
    pub fn coefficient_tolerance(&self) -> ExactRational {
        let d = self.working_precision.saturating_sub(5);
        ExactRational::pow10_neg(d)
    }

    /// `floor(log2(sequence_cutoff))`.
    pub fn cutoff_log2(&self) -> u32 {
        63 - self.sequence_cutoff.max(2).leading_zeros()
    }
}
