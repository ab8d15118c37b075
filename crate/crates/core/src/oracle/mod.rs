//! Slow, extended-precision reference evaluators.
//!
//! Everything here runs in 192-bit binary floating point (about 57 decimal
//! digits) and shares no evaluation code with the fast paths in
//! [`crate::special`] and [`crate::family`]: the psi-type series are summed
//! directly with their tails closed by the asymptotic expansion of ψ at large
//! argument, Γ comes from a shifted Stirling series with exact Bernoulli
//! numbers, and Γ_k is integrated from its defining integral.

mod bernoulli;
mod gamma;
mod hp;
mod quad;
mod series;

use astro_float::BigFloat;

pub use gamma::gamma_hp;
pub use quad::gamma_k_quad;
pub use series::{psi_hp, psi_k_hp, psi_p_hp, psi_q_hp};

pub(crate) use hp::Hp;

/// Decimal digits carried by the working precision.
pub const WORKING_DIGITS: u32 = 57;

/// An extended-precision result with the number of significant decimal
/// digits its error bound certifies.
#[derive(Debug, Clone)]
pub struct HPValue {
    pub value: BigFloat,
    pub certified_digits: u32,
}

impl HPValue {
    /// `rel_err` is a bound on the relative error of `value`.
    pub(crate) fn new(value: BigFloat, rel_err: f64) -> Self {
        let digits = if rel_err <= 0.0 {
            WORKING_DIGITS
        } else {
            (-rel_err.log10()).floor().clamp(0.0, WORKING_DIGITS as f64) as u32
        };
        HPValue {
            value,
            certified_digits: digits.min(WORKING_DIGITS - 3),
        }
    }

    pub fn to_f64(&self) -> f64 {
        hp::to_f64(&self.value)
    }

    /// Relative difference `|self − other| / max(|other|, 1)` evaluated at
    /// working precision.
    pub fn rel_diff(&self, other: &HPValue) -> f64 {
        let hp = Hp::new();
        let diff = hp.sub(&self.value, &other.value).abs();
        let scale = other.value.abs();
        let one = hp.int(1);
        let denom = if scale.cmp(&one) == Some(1) {
            scale
        } else {
            one
        };
        hp::to_f64(&hp.div(&diff, &denom))
    }
}

/// True iff `|fast − hp| ≤ rel_tol·max(|hp|, 1)`.
pub fn cross_validate(fast_value: f64, hp: &HPValue, rel_tol: f64) -> bool {
    let reference = hp.to_f64();
    (fast_value - reference).abs() <= rel_tol * reference.abs().max(1.0)
}
