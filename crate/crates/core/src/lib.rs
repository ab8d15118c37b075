//! Classical, p-, q- and k-Gamma functions together with their psi
//! (logarithmic-derivative) functions, evaluated from their defining
//! products, integrals and series.
//!
//! On top of the function families sit the generalized monotonicity and
//! sandwich inequalities for `Γ(α+βt)^a / Γ_•(α+βt)^b`, exposed as checkable
//! predicates with quantitative margins ([`inequality`]), and an
//! extended-precision [`oracle`] that validates every fast path independently.
//!
//! | Module | Contents |
//! |--------|----------|
//! | [`special`] | `gamma`, `ln_gamma`, `psi_series`, `psi` |
//! | [`family`] | `gamma_p`, `psi_p`, `gamma_q`, `psi_q`, `gamma_k`, `psi_k` |
//! | [`inequality`] | lemma expressions, Ω/φ/θ, sandwich checks, monotone scans |
//! | [`oracle`] | extended-precision reference evaluators and quadrature |
//! | [`selftest`] | cross-validation and reduction suites used by the CLI |

// `!(x > 0.0)` is deliberate: it also rejects NaN. Coefficients keep the
// digits they were published with.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

mod control;
mod error;

pub mod family;
pub mod inequality;
pub mod oracle;
pub mod selftest;
pub mod special;

pub use control::{Constants, EvalResult, SeriesControl, EULER_GAMMA};
pub use error::{Error, Result};
pub use family::{
    gamma_k, gamma_p, gamma_q, ln_gamma_k, ln_gamma_p, ln_gamma_q, psi_k, psi_p, psi_q, FamilyParam,
};
pub use special::{gamma, ln_gamma, psi, psi_series};

pub(crate) fn require_positive(name: &str, v: f64) -> Result<f64> {
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Domain(format!("{name} > 0 required (got {v})")))
    }
}
