//! Positivity lemmas, the auxiliary functions Ω, φ, θ, and the sandwich
//! inequalities they imply.
//!
//! For positive `a, b, α, β` the functions
//!
//! ```text
//! Ω(t) = p^{bβt} e^{aβγt} Γ(α+βt)^a / Γ_p(α+βt)^b
//! φ(t) = (1−q)^{−bβt} e^{aβγt} Γ(α+βt)^a / Γ_q(α+βt)^b
//! θ(t) = (α+βt)^{a−b} e^{t(kaβγ−bβγ)/k} Γ(α+βt)^a / (k^{−bβt/k} Γ_k(α+βt)^b)
//! ```
//!
//! are increasing (Ω, φ while `α+βt > 1`; θ when `a ≥ b`, `k ≥ 1`), because
//! their log-derivatives are `β` times the lemma expressions in [`lemma`].
//! Comparing `t ∈ (0,1)` against the endpoints 0 and 1 gives two-sided
//! bounds on `Γ(α+βt)^a / Γ_•(α+βt)^b`, checked by [`check_sandwich`].

mod auxiliary;
mod lemma;
mod sandwich;
mod scan;

use serde::Serialize;

use crate::{require_positive, Result};

pub use auxiliary::{
    ln_omega, ln_phi, ln_theta, log_deriv_omega, log_deriv_phi, log_deriv_theta, omega, phi, theta,
    AuxKind, Auxiliary,
};
pub use lemma::{
    lemma_expr_k, lemma_expr_k_unchecked, lemma_expr_p, lemma_expr_p_unchecked, lemma_expr_q,
    lemma_expr_q_unchecked, lemma_expr_q_with,
};
pub use sandwich::{
    check_sandwich, check_sandwich_k, check_sandwich_p, check_sandwich_q, prior_bounds_k,
    prior_bounds_p, prior_bounds_q, sandwich_bounds, sandwich_hypotheses, Bounds, HypothesisStatus,
    InequalityReport, DEFAULT_TOL_REPORT,
};
pub use scan::{scan_monotone, MonotoneScan};

/// The exponents and affine argument shared by all three theorems.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GenParams {
    pub a: f64,
    pub b: f64,
    pub alpha: f64,
    pub beta: f64,
}

impl GenParams {
    pub fn new(a: f64, b: f64, alpha: f64, beta: f64) -> Result<Self> {
        let gp = GenParams { a, b, alpha, beta };
        gp.validate()?;
        Ok(gp)
    }

    /// `a = b = α = β = 1`.
    pub fn unit() -> Self {
        GenParams {
            a: 1.0,
            b: 1.0,
            alpha: 1.0,
            beta: 1.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        require_positive("a", self.a)?;
        require_positive("b", self.b)?;
        require_positive("α", self.alpha)?;
        require_positive("β", self.beta)?;
        Ok(())
    }

    /// The Gamma argument `α + βt`.
    pub fn arg(&self, t: f64) -> f64 {
        self.alpha + self.beta * t
    }
}
