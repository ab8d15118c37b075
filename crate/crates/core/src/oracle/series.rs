//! Direct summation of the psi-type series at working precision.

use astro_float::BigFloat;

use super::bernoulli::even_bernoulli_hp;
use super::hp::{approx_f64, Hp};
use super::HPValue;
use crate::{require_positive, Error, Result};

/// Euler–Mascheroni constant to 60 digits.
const EULER_GAMMA_DIGITS: &str = "0.577215664901532860606512090082402431042159335939923598805767";

/// Largest admissible analytic tail bound.
pub(crate) const TAIL_TARGET: f64 = 1e-25;

/// Terms summed explicitly before the tail is closed analytically.
const CUTOFF: u64 = 64;

/// Bernoulli terms used in the asymptotic expansion of ψ.
const ASYMPTOTIC_TERMS: usize = 20;

pub(crate) fn euler_gamma_hp(hp: &mut Hp) -> BigFloat {
    hp.parse(EULER_GAMMA_DIGITS)
}

/// `ψ(x) ~ ln x − 1/(2x) − Σ_j B_{2j}/(2j·x^{2j})` for large `x`, together
/// with the first omitted term, which bounds the remainder.
pub(crate) fn psi_asymptotic(hp: &mut Hp, x: &BigFloat) -> (BigFloat, f64) {
    let b = even_bernoulli_hp(hp, ASYMPTOTIC_TERMS + 1);
    let inv = hp.div(&hp.int(1), x);
    let inv2 = hp.mul(&inv, &inv);
    let ln_x = hp.ln(x);
    let mut value = hp.sub(&ln_x, &hp.div(&inv, &hp.int(2)));
    let mut power = inv2.clone();
    for (j, bj) in b.iter().take(ASYMPTOTIC_TERMS).enumerate() {
        let term = hp.div(&hp.mul(bj, &power), &hp.int(2 * (j as u64 + 1)));
        value = hp.sub(&value, &term);
        power = hp.mul(&power, &inv2);
    }
    let last = 2 * (ASYMPTOTIC_TERMS as u64 + 1);
    let bound = hp.div(&hp.mul(&b[ASYMPTOTIC_TERMS], &power), &hp.int(last));
    (value, approx_f64(&bound).abs())
}

/// `Σ_{n≥1} t/(nk(nk+t))`: `CUTOFF` explicit terms, then
/// `(1/k)·[ψ(N+1+t/k) − ψ(N+1)]` for the rest.
fn scaled_gap_series(hp: &mut Hp, t: &BigFloat, k: &BigFloat) -> (BigFloat, f64) {
    let mut sum = hp.int(0);
    for n in (1..=CUTOFF).rev() {
        let nk = hp.mul(&hp.int(n), k);
        let term = hp.div(t, &hp.mul(&nk, &hp.add(&nk, t)));
        sum = hp.add(&sum, &term);
    }
    let start = hp.int(CUTOFF + 1);
    let shifted = hp.add(&start, &hp.div(t, k));
    let (upper, e1) = psi_asymptotic(hp, &shifted);
    let (lower, e2) = psi_asymptotic(hp, &start);
    let tail = hp.div(&hp.sub(&upper, &lower), k);
    let bound = (e1 + e2) / approx_f64(k);
    (hp.add(&sum, &tail), bound)
}

fn finish(value: BigFloat, abs_err: f64) -> Result<HPValue> {
    if value.is_nan() || value.is_inf() {
        return Err(Error::Convergence(
            "oracle produced a non-finite value".into(),
        ));
    }
    if abs_err > TAIL_TARGET {
        return Err(Error::Convergence(format!(
            "oracle tail bound {abs_err:e} above {TAIL_TARGET:e}"
        )));
    }
    let scale = approx_f64(&value).abs().max(f64::MIN_POSITIVE);
    Ok(HPValue::new(value, abs_err / scale))
}

/// ψ(t) = −γ − 1/t + Σ_{n≥1} t/(n(n+t)).
pub fn psi_hp(t: f64) -> Result<HPValue> {
    require_positive("t", t)?;
    let mut hp = Hp::new();
    let tt = hp.num(t);
    let one = hp.int(1);
    let (series, err) = scaled_gap_series(&mut hp, &tt, &one);
    let g = euler_gamma_hp(&mut hp);
    let head = hp.add(&g, &hp.div(&hp.int(1), &tt));
    finish(hp.sub(&series, &head), err)
}

/// ψ_k(t) = (ln k − γ)/k − 1/t + Σ_{n≥1} t/(nk(nk+t)).
pub fn psi_k_hp(t: f64, k: f64) -> Result<HPValue> {
    require_positive("t", t)?;
    require_positive("k", k)?;
    let mut hp = Hp::new();
    let (tt, kk) = (hp.num(t), hp.num(k));
    let (series, err) = scaled_gap_series(&mut hp, &tt, &kk);
    let g = euler_gamma_hp(&mut hp);
    let ln_k = hp.ln(&kk);
    let offset = hp.div(&hp.sub(&ln_k, &g), &kk);
    let value = hp.add(&hp.sub(&offset, &hp.div(&hp.int(1), &tt)), &series);
    finish(value, err)
}

/// ψ_p(t) = ln p − Σ_{n=0}^{p} 1/(n+t).
pub fn psi_p_hp(t: f64, p: u64) -> Result<HPValue> {
    require_positive("t", t)?;
    crate::FamilyParam::p(p)?;
    let mut hp = Hp::new();
    let tt = hp.num(t);
    let mut sum = hp.int(0);
    for n in (0..=p).rev() {
        sum = hp.add(&sum, &hp.div(&hp.int(1), &hp.add(&hp.int(n), &tt)));
    }
    let ln_p = hp.ln(&hp.int(p));
    finish(hp.sub(&ln_p, &sum), 0.0)
}

/// ψ_q(t) = −ln(1−q) + ln q · Σ_{n≥0} q^{t+n}/(1−q^{t+n}).
pub fn psi_q_hp(t: f64, q: f64) -> Result<HPValue> {
    require_positive("t", t)?;
    crate::FamilyParam::q(q)?;
    let mut hp = Hp::new();
    let one = hp.int(1);
    let qq = hp.num(q);
    let ln_q = hp.ln(&qq);
    let one_minus_q = hp.sub(&one, &qq);
    let mut power = hp.exp(&hp.mul(&hp.num(t), &ln_q));
    let mut sum = hp.int(0);
    let scale = approx_f64(&ln_q).abs() / approx_f64(&one_minus_q);
    let bound = loop {
        sum = hp.add(&sum, &hp.div(&power, &hp.sub(&one, &power)));
        power = hp.mul(&power, &qq);
        let x = approx_f64(&power);
        // |ln q|·q^{t+N}/((1−q)(1−q^{t+N})) bounds the remaining terms.
        let bound = scale * x / (1.0 - x);
        if bound < TAIL_TARGET * 1e-3 {
            break bound;
        }
    };
    let lead = hp.ln(&one_minus_q);
    let value = hp.sub(&hp.mul(&ln_q, &sum), &lead);
    finish(value, bound)
}
