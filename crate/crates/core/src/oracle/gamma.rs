use super::bernoulli::even_bernoulli_hp;
use super::hp::{approx_f64, Hp};
use super::HPValue;
use crate::{require_positive, Result};

/// Arguments are shifted up to at least this before applying Stirling.
const STIRLING_MIN: f64 = 40.0;
const STIRLING_TERMS: usize = 20;

/// Γ(t) at working precision.
///
/// `ln Γ(x)` is taken from the Stirling series
/// `(x−½)ln x − x + ½ln 2π + Σ_j B_{2j}/(2j(2j−1)x^{2j−1})` at
/// `x = t + M ≥ 40`, and `Γ(t) = Γ(x)/(t(t+1)⋯(t+M−1))`.
pub fn gamma_hp(t: f64) -> Result<HPValue> {
    require_positive("t", t)?;
    let mut hp = Hp::new();
    let shift = (STIRLING_MIN - t).max(0.0).ceil() as u64;
    let tt = hp.num(t);
    let x = hp.add(&tt, &hp.int(shift));

    let b = even_bernoulli_hp(&mut hp, STIRLING_TERMS + 1);
    let half = hp.div(&hp.int(1), &hp.int(2));
    let pi = hp.pi();
    let two_pi = hp.mul(&pi, &hp.int(2));
    let ln_x = hp.ln(&x);
    let mut ln_g = hp.sub(&hp.mul(&hp.sub(&x, &half), &ln_x), &x);
    let ln_two_pi = hp.ln(&two_pi);
    ln_g = hp.add(&ln_g, &hp.mul(&half, &ln_two_pi));
    let inv = hp.div(&hp.int(1), &x);
    let inv2 = hp.mul(&inv, &inv);
    let mut power = inv.clone();
    for (j, bj) in b.iter().take(STIRLING_TERMS).enumerate() {
        let m = 2 * (j as u64 + 1);
        let term = hp.div(&hp.mul(bj, &power), &hp.int(m * (m - 1)));
        ln_g = hp.add(&ln_g, &term);
        power = hp.mul(&power, &inv2);
    }
    let m = 2 * (STIRLING_TERMS as u64 + 1);
    let remainder = approx_f64(&hp.div(&hp.mul(&b[STIRLING_TERMS], &power), &hp.int(m * (m - 1))));

    let mut value = hp.exp(&ln_g);
    let mut pochhammer = hp.int(1);
    for i in 0..shift {
        pochhammer = hp.mul(&pochhammer, &hp.add(&tt, &hp.int(i)));
    }
    value = hp.div(&value, &pochhammer);
    // Rounding inside exp scales with |ln Γ(x)|.
    let rounding = approx_f64(&ln_g).abs().max(1.0) * 2f64.powi(-180);
    Ok(HPValue::new(value, remainder.abs() + rounding))
}
