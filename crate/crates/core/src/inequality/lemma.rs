//! The combined psi expressions whose positivity drives the monotonicity
//! theorems. Checked variants enforce the lemma hypotheses; `_unchecked`
//! variants only need the arguments to be evaluable and exist for probing
//! outside the proven domain.

use crate::family::{psi_k_regular_with, psi_p, psi_q};
use crate::special::psi_regular_with;
use crate::{require_positive, Constants, Error, Result, SeriesControl, EULER_GAMMA};

fn require_t_above_one(t: f64) -> Result<()> {
    if t > 1.0 {
        Ok(())
    } else {
        Err(Error::Hypothesis(format!(
            "t > 1 required by the lemma (got t = {t})"
        )))
    }
}

pub(crate) fn require_k_hypotheses(a: f64, b: f64, k: f64) -> Result<()> {
    if !(a >= b) {
        return Err(Error::Hypothesis(format!(
            "a ≥ b required for family k (got a = {a}, b = {b})"
        )));
    }
    if !(k >= 1.0) {
        return Err(Error::Hypothesis(format!(
            "k ≥ 1 required for family k (got k = {k})"
        )));
    }
    Ok(())
}

fn psi_value(t: f64, ctrl: &SeriesControl) -> Result<f64> {
    let regular = psi_regular_with(t, ctrl, &Constants::default()).require(ctrl)?;
    Ok(regular - 1.0 / t)
}

/// `aγ + b·ln p + a·ψ(t) − b·ψ_p(t)` without hypothesis checks.
pub fn lemma_expr_p_unchecked(a: f64, b: f64, t: f64, p: u64) -> Result<f64> {
    require_positive("t", t)?;
    let ctrl = SeriesControl::default();
    let psi_t = psi_value(t, &ctrl)?;
    Ok(a * EULER_GAMMA + b * (p as f64).ln() + a * psi_t - b * psi_p(t, p)?)
}

/// `aγ + b·ln p + a·ψ(t) − b·ψ_p(t)`, positive for `a, b > 0` and `t > 1`.
pub fn lemma_expr_p(a: f64, b: f64, t: f64, p: u64) -> Result<f64> {
    require_positive("a", a)?;
    require_positive("b", b)?;
    require_t_above_one(t)?;
    lemma_expr_p_unchecked(a, b, t, p)
}

/// `aγ − b·ln(1−q) + a·ψ(t) − b·ψ_q(t)` without hypothesis checks.
pub fn lemma_expr_q_unchecked(a: f64, b: f64, t: f64, q: f64, ctrl: &SeriesControl) -> Result<f64> {
    require_positive("t", t)?;
    let psi_t = psi_value(t, ctrl)?;
    let psi_q_t = psi_q(t, q, ctrl)?.require(ctrl)?;
    Ok(a * EULER_GAMMA - b * (-q).ln_1p() + a * psi_t - b * psi_q_t)
}

pub fn lemma_expr_q_with(a: f64, b: f64, t: f64, q: f64, ctrl: &SeriesControl) -> Result<f64> {
    require_positive("a", a)?;
    require_positive("b", b)?;
    require_t_above_one(t)?;
    lemma_expr_q_unchecked(a, b, t, q, ctrl)
}

/// `aγ − b·ln(1−q) + a·ψ(t) − b·ψ_q(t)`, positive for `a, b > 0`, `t > 1`.
pub fn lemma_expr_q(a: f64, b: f64, t: f64, q: f64) -> Result<f64> {
    lemma_expr_q_with(a, b, t, q, &SeriesControl::default())
}

/// The k-family expression without hypothesis checks.
///
/// `(a−b)/t + a·ψ(t) − b·ψ_k(t)` is evaluated as
/// `a·(ψ(t) + 1/t) − b·(ψ_k(t) + 1/t)` so the `1/t` poles cancel exactly.
pub fn lemma_expr_k_unchecked(a: f64, b: f64, t: f64, k: f64) -> Result<f64> {
    require_positive("t", t)?;
    require_positive("k", k)?;
    let ctrl = SeriesControl::default();
    let consts = Constants::default();
    let psi_reg = psi_regular_with(t, &ctrl, &consts).require(&ctrl)?;
    let psi_k_reg = psi_k_regular_with(t, k, &ctrl, &consts).require(&ctrl)?;
    let g = EULER_GAMMA;
    Ok((k * a * g - b * g) / k + (b / k) * k.ln() + a * psi_reg - b * psi_k_reg)
}

/// `(kaγ − bγ)/k + (b/k)·ln k + (a−b)/t + a·ψ(t) − b·ψ_k(t)`,
/// nonnegative for `a ≥ b > 0`, `k ≥ 1`, `t > 0`.
pub fn lemma_expr_k(a: f64, b: f64, t: f64, k: f64) -> Result<f64> {
    require_positive("a", a)?;
    require_positive("b", b)?;
    require_k_hypotheses(a, b, k)?;
    lemma_expr_k_unchecked(a, b, t, k)
}
