//! The p-, q- and k-deformations of Gamma and their psi functions.
//!
//! All many-factor products are accumulated as sums of logarithms and
//! exponentiated once at the end.

use serde::Serialize;

use crate::special::{gamma, ln_gamma, scaled_harmonic_gap};
use crate::{require_positive, Constants, Error, EvalResult, Result, SeriesControl};

/// Largest `p` accepted by the p-family; the finite sums have `p + 1` terms.
pub const MAX_P: u64 = 1_000_000_000;

/// Deformation parameter of a Gamma family.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "family", content = "value", rename_all = "lowercase")]
pub enum FamilyParam {
    /// Integer `p ≥ 1`.
    P(u64),
    /// Real `q ∈ (0, 1)`.
    Q(f64),
    /// Real `k > 0`.
    K(f64),
}

impl FamilyParam {
    pub fn p(p: u64) -> Result<Self> {
        check_p(p)?;
        Ok(FamilyParam::P(p))
    }

    pub fn q(q: f64) -> Result<Self> {
        check_q(q)?;
        Ok(FamilyParam::Q(q))
    }

    pub fn k(k: f64) -> Result<Self> {
        require_positive("k", k)?;
        Ok(FamilyParam::K(k))
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            FamilyParam::P(p) => check_p(p),
            FamilyParam::Q(q) => check_q(q),
            FamilyParam::K(k) => require_positive("k", k).map(|_| ()),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            FamilyParam::P(_) => "p",
            FamilyParam::Q(_) => "q",
            FamilyParam::K(_) => "k",
        }
    }
}

fn check_p(p: u64) -> Result<()> {
    if p < 1 {
        Err(Error::Domain("p ≥ 1 required (got 0)".into()))
    } else if p > MAX_P {
        Err(Error::Domain(format!("p ≤ {MAX_P} supported (got {p})")))
    } else {
        Ok(())
    }
}

fn check_q(q: f64) -> Result<()> {
    if q > 0.0 && q < 1.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!("q ∈ (0,1) required (got {q})")))
    }
}

fn exp_checked(ln_value: f64, what: impl FnOnce() -> String) -> Result<f64> {
    let v = ln_value.exp();
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Overflow(format!("{} exceeds the f64 range", what())))
    }
}

/// `ln Γ_p(t) = t·ln p − ln t − Σ_{n=1}^{p} ln(1 + t/n)`.
pub fn ln_gamma_p(t: f64, p: u64) -> Result<f64> {
    require_positive("t", t)?;
    check_p(p)?;
    let sum: f64 = (1..=p).rev().map(|n| (t / n as f64).ln_1p()).sum();
    Ok(t * (p as f64).ln() - t.ln() - sum)
}

/// `Γ_p(t) = p!·p^t / (t(t+1)⋯(t+p))`.
pub fn gamma_p(t: f64, p: u64) -> Result<f64> {
    exp_checked(ln_gamma_p(t, p)?, || format!("Γ_p({t}) with p = {p}"))
}

/// `ψ_p(t) = ln p − Σ_{n=0}^{p} 1/(n+t)`, a finite sum.
pub fn psi_p(t: f64, p: u64) -> Result<f64> {
    require_positive("t", t)?;
    check_p(p)?;
    let sum: f64 = (0..=p).rev().map(|n| 1.0 / (n as f64 + t)).sum();
    Ok((p as f64).ln() - sum)
}

/// `ln(1 − e^x)` for `x < 0`.
fn ln_one_minus_exp(x: f64) -> f64 {
    if x > -std::f64::consts::LN_2 {
        (-x.exp_m1()).ln()
    } else {
        (-x.exp()).ln_1p()
    }
}

/// `ln Γ_q(t) = (1−t)·ln(1−q) + Σ_{n≥0} [ln(1−q^{n+1}) − ln(1−q^{n+t})]`.
///
/// After `N` terms the neglected logarithms sum to at most
/// `|q − q^t|·q^N / ((1−q)(1−q^{N+min(1,t)}))`; `err_bound` is that bound,
/// an absolute bound on the logarithm.
pub fn ln_gamma_q(t: f64, q: f64, ctrl: &SeriesControl) -> Result<EvalResult> {
    require_positive("t", t)?;
    check_q(q)?;
    let ln_q = q.ln();
    let one_minus_q = -ln_q.exp_m1();
    let m = t.min(1.0);
    // |q − q^t| = q^{min(1,t)}·(1 − q^{|t−1|})
    let spread = (m * ln_q).exp() * -((t - 1.0).abs() * ln_q).exp_m1();

    let mut sum = 0.0;
    let mut terms = 0;
    let mut bound = f64::INFINITY;
    while terms < ctrl.max_terms() {
        let n = terms as f64;
        sum += ln_one_minus_exp((n + 1.0) * ln_q) - ln_one_minus_exp((n + t) * ln_q);
        terms += 1;
        let next = terms as f64;
        bound = spread * (next * ln_q).exp() / (one_minus_q * -((next + m) * ln_q).exp_m1());
        if bound <= ctrl.target() {
            break;
        }
    }
    let value = (1.0 - t) * (-q).ln_1p() + sum;
    Ok(EvalResult::new(value, bound, terms, ctrl.tol()))
}

/// `Γ_q(t) = (1−q)^{1−t} Π_{n≥0} (1−q^{n+1})/(1−q^{n+t})`.
///
/// This is the normalization with `Γ_q(1) = 1` and
/// `Γ_q(t+1) = ((1−q^t)/(1−q))·Γ_q(t)`, whose logarithmic derivative is
/// exactly the series evaluated by [`psi_q`]. `err_bound` is absolute.
pub fn gamma_q(t: f64, q: f64, ctrl: &SeriesControl) -> Result<EvalResult> {
    let ln = ln_gamma_q(t, q, ctrl)?;
    let value = exp_checked(ln.value, || format!("Γ_q({t}) with q = {q}"))?;
    Ok(EvalResult {
        value,
        err_bound: value * ln.err_bound.exp_m1(),
        ..ln
    })
}

/// `ψ_q(t) = −ln(1−q) + ln q · Σ_{n≥0} q^{t+n}/(1−q^{t+n})`.
///
/// Truncated once the geometric tail bound
/// `|ln q|·q^{t+N}/((1−q)(1−q^{t+N}))` drops below `ctrl.tol()`.
pub fn psi_q(t: f64, q: f64, ctrl: &SeriesControl) -> Result<EvalResult> {
    require_positive("t", t)?;
    check_q(q)?;
    let ln_q = q.ln();
    let one_minus_q = -ln_q.exp_m1();

    let mut sum = 0.0;
    let mut terms = 0;
    let mut bound = f64::INFINITY;
    while terms < ctrl.max_terms() {
        let x = (terms as f64 + t) * ln_q;
        sum += x.exp() / -x.exp_m1();
        terms += 1;
        let x_next = (terms as f64 + t) * ln_q;
        bound = -ln_q * x_next.exp() / (one_minus_q * -x_next.exp_m1());
        if bound <= ctrl.target() {
            break;
        }
    }
    let value = -(-q).ln_1p() + ln_q * sum;
    Ok(EvalResult::new(value, bound, terms, ctrl.tol()))
}

/// `ln Γ_k(t) = (t/k − 1)·ln k + ln Γ(t/k)`.
pub fn ln_gamma_k(t: f64, k: f64) -> Result<f64> {
    require_positive("t", t)?;
    require_positive("k", k)?;
    let s = t / k;
    Ok((s - 1.0) * k.ln() + ln_gamma(s)?)
}

/// `Γ_k(t) = ∫_0^∞ e^{−x^k/k} x^{t−1} dx`, evaluated through the identity
/// `Γ_k(t) = k^{t/k − 1}·Γ(t/k)` (substitute `u = x^k/k`).
pub fn gamma_k(t: f64, k: f64) -> Result<f64> {
    let ln = ln_gamma_k(t, k)?;
    let s = t / k;
    if let Ok(g) = gamma(s) {
        let v = k.powf(s - 1.0) * g;
        if v.is_normal() {
            return Ok(v);
        }
    }
    exp_checked(ln, || format!("Γ_k({t}) with k = {k}"))
}

/// `ψ_k(t) + 1/t`, free of the pole at zero.
pub(crate) fn psi_k_regular_with(
    t: f64,
    k: f64,
    ctrl: &SeriesControl,
    consts: &Constants,
) -> EvalResult {
    let offset = (k.ln() - consts.euler_gamma) / k;
    scaled_harmonic_gap(t, k, ctrl).map(|s| offset + s)
}

pub fn psi_k_with(t: f64, k: f64, ctrl: &SeriesControl, consts: &Constants) -> Result<EvalResult> {
    require_positive("t", t)?;
    require_positive("k", k)?;
    Ok(psi_k_regular_with(t, k, ctrl, consts).map(|r| r - 1.0 / t))
}

/// `ψ_k(t) = (ln k − γ)/k − 1/t + Σ_{n≥1} t/(nk(nk+t))`.
///
/// Same summation scheme as [`crate::psi_series`]; the tail of the k-series
/// is the classical one at `t/k`, scaled by `1/k`.
pub fn psi_k(t: f64, k: f64, ctrl: &SeriesControl) -> Result<EvalResult> {
    psi_k_with(t, k, ctrl, &Constants::default())
}
