//! Classical Gamma and psi functions.
//!
//! `gamma` uses a Lanczos approximation on `[1, 2]` and the exact recurrence
//! elsewhere. `psi_series` sums the series
//! `ψ(t) = −γ − 1/t + Σ_{n≥1} t/(n(n+t))` and closes the tail analytically.

use std::f64::consts::PI;

use crate::{require_positive, Constants, Error, EvalResult, Result, SeriesControl};

/// Lanczos coefficients for g = 7, n = 9.
const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Γ(x) for x ∈ [1, 2].
fn lanczos_unit(x: f64) -> f64 {
    let z = x - 1.0;
    let mut acc = LANCZOS[0];
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        acc += c / (z + i as f64);
    }
    let base = z + LANCZOS_G + 0.5;
    (2.0 * PI).sqrt() * base.powf(z + 0.5) * (-base).exp() * acc
}

/// Euler's Gamma function for `t > 0`.
///
/// Arguments of 2 and above are reduced to `[1, 2)` by `Γ(t) = (t−1)Γ(t−1)`; every
/// `t − j` is exact in binary floating point, so the only error beyond the
/// Lanczos kernel is one rounding per factor. Arguments below 1 use
/// `Γ(t) = Γ(t+1)/t`.
pub fn gamma(t: f64) -> Result<f64> {
    require_positive("t", t)?;
    let value = if t < 1.0 {
        lanczos_unit(t + 1.0) / t
    } else {
        let mut x = t;
        let mut prod = 1.0;
        while x >= 2.0 {
            x -= 1.0;
            prod *= x;
        }
        // Γ(1) = 1 exactly keeps integer arguments exact factorials.
        if x == 1.0 {
            prod
        } else {
            prod * lanczos_unit(x)
        }
    };
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::Overflow(format!("Γ({t}) exceeds the f64 range")))
    }
}

/// `ln Γ(t)` for `t > 0`; finite for every finite positive argument.
pub fn ln_gamma(t: f64) -> Result<f64> {
    require_positive("t", t)?;
    if t < 1.0 {
        return Ok(lanczos_unit(t + 1.0).ln() - t.ln());
    }
    if t <= 170.0 {
        return gamma(t).map(f64::ln);
    }
    // Stirling series; the first omitted term is below 1e-25 here.
    let inv = 1.0 / t;
    let inv2 = inv * inv;
    let corr = inv * (1.0 / 12.0 - inv2 * (1.0 / 360.0 - inv2 * (1.0 / 1260.0 - inv2 / 1680.0)));
    Ok((t - 0.5) * t.ln() - t + 0.5 * (2.0 * PI).ln() + corr)
}

/// `B_{2j}/(2j)` for j = 1..=7.
const EM_COEFFS: [f64; 7] = [
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32760.0,
    1.0 / 12.0,
];

const EM_START: usize = 8;

/// `N^{−2j} − (N+s)^{−2j}` without cancellation.
fn power_gap(n: f64, s: f64, two_j: i32) -> f64 {
    n.powi(-two_j) * -(-(two_j as f64) * (s / n).ln_1p()).exp_m1()
}

/// Euler–Maclaurin remainder bound for [`gap_tail`] at cutoff `n`.
fn gap_tail_bound(n: f64, s: f64) -> f64 {
    EM_COEFFS[6] * power_gap(n, s, 14)
}

/// `Σ_{m>n} (1/m − 1/(m+s))`, i.e. the integral from `n` corrected by the
/// endpoint and Bernoulli terms through `B_12`.
///
/// The summand is completely monotone in `m`, so the remainder has the sign
/// of the first omitted term and is smaller in magnitude ([`gap_tail_bound`]).
fn gap_tail(n: f64, s: f64) -> f64 {
    let mut tail = (s / n).ln_1p() - 0.5 * (1.0 / n - 1.0 / (n + s));
    for (j, c) in EM_COEFFS[..6].iter().enumerate() {
        tail += c * power_gap(n, s, 2 * (j as i32 + 1));
    }
    tail
}

/// Smallest doubling cutoff whose tail bound meets `ctrl`, capped at the budget.
fn choose_cutoff(s: f64, ctrl: &SeriesControl) -> (usize, f64) {
    let mut n = EM_START.min(ctrl.max_terms());
    loop {
        let bound = gap_tail_bound(n as f64, s);
        if bound <= ctrl.target() || n == ctrl.max_terms() {
            return (n, bound);
        }
        n = (2 * n).min(ctrl.max_terms());
    }
}

/// `Σ_{n≥1} t/(n·k·(n·k + t))` with analytic tail; `k = 1` gives the
/// classical psi series, general `k` the k-psi series.
pub(crate) fn scaled_harmonic_gap(t: f64, k: f64, ctrl: &SeriesControl) -> EvalResult {
    let s = t / k;
    let (n, bound) = choose_cutoff(s, ctrl);
    let partial: f64 = (1..=n)
        .rev()
        .map(|m| {
            let mk = m as f64 * k;
            t / (mk * (mk + t))
        })
        .sum();
    let tail = gap_tail(n as f64, s) / k;
    EvalResult::new(partial + tail, bound / k, n, ctrl.tol())
}

/// `ψ(t) + 1/t`, free of the `1/t` pole; used where the pole cancels.
pub(crate) fn psi_regular_with(t: f64, ctrl: &SeriesControl, consts: &Constants) -> EvalResult {
    scaled_harmonic_gap(t, 1.0, ctrl).map(|s| s - consts.euler_gamma)
}

/// ψ(t) from its series, with the given constants (see [`Constants`]).
pub fn psi_series_with(t: f64, ctrl: &SeriesControl, consts: &Constants) -> Result<EvalResult> {
    require_positive("t", t)?;
    Ok(psi_regular_with(t, ctrl, consts).map(|r| r - 1.0 / t))
}

/// ψ(t) = −γ − 1/t + Σ_{n≥1} t/(n(n+t)).
///
/// Terms are summed up to a cutoff `N` and the remaining tail is replaced by
/// its Euler–Maclaurin expansion; `err_bound` bounds the expansion remainder
/// and `terms_used` is `N`. If `max_terms` is reached first the result is
/// returned with `converged == false`.
pub fn psi_series(t: f64, ctrl: &SeriesControl) -> Result<EvalResult> {
    psi_series_with(t, ctrl, &Constants::default())
}

/// ψ(t) with the default [`SeriesControl`].
pub fn psi(t: f64) -> Result<f64> {
    let ctrl = SeriesControl::default();
    psi_series(t, &ctrl)?.require(&ctrl)
}
