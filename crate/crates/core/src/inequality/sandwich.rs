use rayon::prelude::*;
use serde::Serialize;

use super::{Auxiliary, GenParams};
use crate::family::{gamma_k, gamma_p, gamma_q};
use crate::{gamma, Error, FamilyParam, Result, SeriesControl, EULER_GAMMA};

/// Verdict slack used when none is given; well above the 1e-12 series
/// tolerance so that accumulated evaluation error cannot flip a verdict.
pub const DEFAULT_TOL_REPORT: f64 = 1e-9;

/// One grid point of a sandwich check: `lower ≤ middle ≤ upper`
/// (strict for the p- and q-families).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct InequalityReport {
    pub t: f64,
    pub lower: f64,
    pub middle: f64,
    pub upper: f64,
    /// `middle − lower`
    pub lower_margin: f64,
    /// `upper − middle`
    pub upper_margin: f64,
    pub strict: bool,
    pub pass: bool,
}

impl InequalityReport {
    /// Strict claims fail on a margin of exactly zero; otherwise margins down
    /// to `−tol_report` are attributed to rounding.
    fn verdict(margin: f64, strict: bool, tol_report: f64) -> bool {
        if strict {
            margin > -tol_report && margin != 0.0
        } else {
            margin >= -tol_report
        }
    }
}

/// Logarithms of the three members of the sandwich at one `t`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Bounds {
    pub ln_lower: f64,
    pub ln_middle: f64,
    pub ln_upper: f64,
}

/// Whether the α + β·t > 1 hypothesis of the p/q theorems holds with room
/// to spare at t = 0, or only with equality there.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum HypothesisStatus {
    Interior,
    Boundary,
}

/// Checks the hypotheses of the sandwich inequality for `aux` over `grid`.
///
/// Every grid point must lie in the open interval (0, 1). For Ω and φ the
/// argument must exceed 1 along the whole interval and reach at least 1 at
/// the endpoint t = 0, which reduces to `α ≥ 1`; `α = 1` is accepted and
/// reported as [`HypothesisStatus::Boundary`].
pub fn sandwich_hypotheses(aux: &Auxiliary, grid: &[f64]) -> Result<HypothesisStatus> {
    if let Some(&t) = grid.iter().find(|&&t| !(t > 0.0 && t < 1.0)) {
        return Err(Error::Domain(format!(
            "grid points must lie in (0,1) (got t = {t})"
        )));
    }
    let alpha = aux.gp.alpha;
    match aux.family {
        FamilyParam::K(_) => Ok(HypothesisStatus::Interior),
        _ if alpha > 1.0 => Ok(HypothesisStatus::Interior),
        _ if alpha == 1.0 => Ok(HypothesisStatus::Boundary),
        _ => Err(Error::Hypothesis(format!(
            "α + β·t > 1 required on [0,1] for family {}, i.e. α ≥ 1 (got α = {alpha})",
            aux.family.name()
        ))),
    }
}

/// The three members of the sandwich at `t`, as logarithms, each evaluated
/// from its own closed form.
pub fn sandwich_bounds(aux: &Auxiliary, t: f64) -> Result<Bounds> {
    let GenParams { a, b, alpha, beta } = aux.gp;
    let x = aux.arg_checked(t)?;
    let ln_middle = aux.ln_quotient(x)?;
    let at_start = aux.ln_quotient(alpha)?;
    let at_end = aux.ln_quotient(alpha + beta)?;
    let g = EULER_GAMMA;
    let (ln_lower, ln_upper) = match aux.family {
        FamilyParam::P(p) => {
            let ln_p = (p as f64).ln();
            (
                -b * beta * t * ln_p - a * beta * g * t + at_start,
                b * beta * (1.0 - t) * ln_p + a * beta * g * (1.0 - t) + at_end,
            )
        }
        FamilyParam::Q(q) => {
            let ln_1mq = (-q).ln_1p();
            (
                b * beta * t * ln_1mq - a * beta * g * t + at_start,
                b * beta * (t - 1.0) * ln_1mq + a * beta * g * (1.0 - t) + at_end,
            )
        }
        FamilyParam::K(k) => {
            let c = (k * a * beta * g - b * beta * g) / k;
            let ln_k = k.ln();
            let shift = (a - b) * x.ln();
            (
                (a - b) * alpha.ln() - t * c - shift - (b * beta * t / k) * ln_k + at_start,
                (a - b) * (alpha + beta).ln() + (1.0 - t) * c
                    - shift
                    - (b * beta / k) * (t - 1.0) * ln_k
                    + at_end,
            )
        }
    };
    Ok(Bounds {
        ln_lower,
        ln_middle,
        ln_upper,
    })
}

fn exp_finite(v: f64, what: &str, t: f64) -> Result<f64> {
    let e = v.exp();
    if e.is_finite() {
        Ok(e)
    } else {
        Err(Error::Overflow(format!(
            "{what} at t = {t} exceeds the f64 range"
        )))
    }
}

fn report(aux: &Auxiliary, t: f64, tol_report: f64) -> Result<InequalityReport> {
    let bounds = sandwich_bounds(aux, t)?;
    let lower = exp_finite(bounds.ln_lower, "lower bound", t)?;
    let middle = exp_finite(bounds.ln_middle, "middle term", t)?;
    let upper = exp_finite(bounds.ln_upper, "upper bound", t)?;
    // Differences of nearly equal members are formed in log space.
    let lower_margin = lower * (bounds.ln_middle - bounds.ln_lower).exp_m1();
    let upper_margin = middle * (bounds.ln_upper - bounds.ln_middle).exp_m1();
    let strict = !matches!(aux.family, FamilyParam::K(_));
    let pass = InequalityReport::verdict(lower_margin, strict, tol_report)
        && InequalityReport::verdict(upper_margin, strict, tol_report);
    Ok(InequalityReport {
        t,
        lower,
        middle,
        upper,
        lower_margin,
        upper_margin,
        strict,
        pass,
    })
}

/// Evaluates the sandwich inequality of `aux` at every grid point.
///
/// Grid points are evaluated in parallel; the reports come back in grid order.
pub fn check_sandwich(
    aux: &Auxiliary,
    grid: &[f64],
    tol_report: f64,
) -> Result<Vec<InequalityReport>> {
    if !(tol_report >= 0.0) {
        return Err(Error::Domain(format!(
            "tol_report ≥ 0 required (got {tol_report})"
        )));
    }
    sandwich_hypotheses(aux, grid)?;
    grid.par_iter()
        .map(|&t| report(aux, t, tol_report))
        .collect()
}

pub fn check_sandwich_p(
    gp: &GenParams,
    p: u64,
    grid: &[f64],
    tol_report: f64,
) -> Result<Vec<InequalityReport>> {
    check_sandwich(&Auxiliary::omega(*gp, p)?, grid, tol_report)
}

pub fn check_sandwich_q(
    gp: &GenParams,
    q: f64,
    grid: &[f64],
    tol_report: f64,
) -> Result<Vec<InequalityReport>> {
    check_sandwich(&Auxiliary::phi(*gp, q)?, grid, tol_report)
}

pub fn check_sandwich_k(
    gp: &GenParams,
    k: f64,
    grid: &[f64],
    tol_report: f64,
) -> Result<Vec<InequalityReport>> {
    check_sandwich(&Auxiliary::theta(*gp, k)?, grid, tol_report)
}

/// `(lower, middle, upper)` of the original p-inequality
/// `p^{−t}e^{−γt}Γ(α)/Γ_p(α) < Γ(α+t)/Γ_p(α+t) < p^{1−t}e^{γ(1−t)}Γ(α+1)/Γ_p(α+1)`,
/// evaluated directly in linear space.
pub fn prior_bounds_p(alpha: f64, p: u64, t: f64) -> Result<(f64, f64, f64)> {
    let pf = p as f64;
    let g = EULER_GAMMA;
    let quotient = |x: f64| -> Result<f64> { Ok(gamma(x)? / gamma_p(x, p)?) };
    Ok((
        pf.powf(-t) * (-g * t).exp() * quotient(alpha)?,
        quotient(alpha + t)?,
        pf.powf(1.0 - t) * (g * (1.0 - t)).exp() * quotient(alpha + 1.0)?,
    ))
}

/// `(lower, middle, upper)` of the original q-inequality
/// `(1−q)^t e^{−γt}Γ(α)/Γ_q(α) < Γ(α+t)/Γ_q(α+t) < (1−q)^{t−1}e^{γ(1−t)}Γ(α+1)/Γ_q(α+1)`.
pub fn prior_bounds_q(alpha: f64, q: f64, t: f64, ctrl: &SeriesControl) -> Result<(f64, f64, f64)> {
    let g = EULER_GAMMA;
    let quotient = |x: f64| -> Result<f64> { Ok(gamma(x)? / gamma_q(x, q, ctrl)?.require(ctrl)?) };
    Ok((
        (1.0 - q).powf(t) * (-g * t).exp() * quotient(alpha)?,
        quotient(alpha + t)?,
        (1.0 - q).powf(t - 1.0) * (g * (1.0 - t)).exp() * quotient(alpha + 1.0)?,
    ))
}

/// `(lower, middle, upper)` of the original k-inequality
/// `k^{−t/k}e^{−t(kγ−γ)/k}Γ(α)/Γ_k(α) ≤ Γ(α+t)/Γ_k(α+t) ≤ k^{(1−t)/k}e^{(1−t)(kγ−γ)/k}Γ(α+1)/Γ_k(α+1)`.
pub fn prior_bounds_k(alpha: f64, k: f64, t: f64) -> Result<(f64, f64, f64)> {
    let g = EULER_GAMMA;
    let c = (k * g - g) / k;
    let quotient = |x: f64| -> Result<f64> { Ok(gamma(x)? / gamma_k(x, k)?) };
    Ok((
        k.powf(-t / k) * (-t * c).exp() * quotient(alpha)?,
        quotient(alpha + t)?,
        k.powf((1.0 - t) / k) * ((1.0 - t) * c).exp() * quotient(alpha + 1.0)?,
    ))
}
