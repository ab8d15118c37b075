//! Γ_k(t) = ∫_0^∞ x^{t−1} e^{−x^k/k} dx by double-exponential quadrature.
//!
//! The integral is split at the peak `c = (k(t−1))^{1/k}` (or `c = 1` when
//! `t ≤ 1`). `[0, c]` uses the tanh-sinh map and `[c, ∞)` the exp-sinh map;
//! each trapezoid level halves the step and only adds the odd nodes. All
//! terms are formed in log space so that neither endpoint under- or
//! overflows.

use astro_float::BigFloat;

use super::hp::{approx_f64, Hp};
use super::HPValue;
use crate::{require_positive, Error, Result};

const MIN_LEVEL: u32 = 3;
const MAX_LEVEL: u32 = 10;
/// Relative change between levels treated as converged.
const LEVEL_TOL: f64 = 1e-20;
/// Largest acceptable relative error after the final level.
const ACCEPT_TOL: f64 = 1e-15;
/// Terms this far below the largest one (in log space) end a sweep.
const LOG_DROP: f64 = 140.0;
const S_MAX: f64 = 30.0;

struct Integrand {
    t_minus_1: BigFloat,
    k: BigFloat,
    c: BigFloat,
    ln_c: BigFloat,
    ln_half_pi: BigFloat,
    half_pi: BigFloat,
}

impl Integrand {
    fn new(hp: &mut Hp, t: f64, k: f64) -> Self {
        let kk = hp.num(k);
        let t_minus_1 = hp.sub(&hp.num(t), &hp.int(1));
        let ln_c = if t > 1.0 {
            let prod = hp.mul(&kk, &t_minus_1);
            let l = hp.ln(&prod);
            hp.div(&l, &kk)
        } else {
            hp.int(0)
        };
        let c = hp.exp(&ln_c);
        let pi = hp.pi();
        let half_pi = hp.div(&pi, &hp.int(2));
        let ln_half_pi = hp.ln(&half_pi);
        Integrand {
            t_minus_1,
            k: kk,
            c,
            ln_c,
            ln_half_pi,
            half_pi,
        }
    }

    /// `ln(x^{t−1} e^{−x^k/k})` given `ln x`.
    fn ln_f(&self, hp: &mut Hp, ln_x: &BigFloat) -> BigFloat {
        let kx = hp.mul(&self.k, ln_x);
        let xk = hp.exp(&kx);
        let power = hp.mul(&self.t_minus_1, ln_x);
        hp.sub(&power, &hp.div(&xk, &self.k))
    }

    /// `sinh s` and `ln cosh s` at working precision.
    fn hyperbolic(hp: &mut Hp, s: f64) -> (BigFloat, BigFloat) {
        let e = hp.exp(&hp.num(s));
        let inv = hp.div(&hp.int(1), &e);
        let two = hp.int(2);
        let sinh = hp.div(&hp.sub(&e, &inv), &two);
        let cosh = hp.div(&hp.add(&e, &inv), &two);
        let ln_cosh = hp.ln(&cosh);
        (sinh, ln_cosh)
    }

    /// Log of the transformed tanh-sinh term on `[0, c]`.
    ///
    /// With `u = (π/2)·sinh|s|` and `r = e^{−2u}`, the distance to the near
    /// endpoint is `c·r/(1+r)` and the Jacobian is `c·π·cosh s·r/(1+r)²`.
    fn ln_term_inner(&self, hp: &mut Hp, s: f64) -> BigFloat {
        let (sinh, ln_cosh) = Self::hyperbolic(hp, s.abs());
        let u = hp.mul(&self.half_pi, &sinh);
        let two_u = hp.mul(&u, &hp.int(2));
        let neg = hp.sub(&hp.int(0), &two_u);
        let ln_1pr = match hp.exp_or_zero(&neg) {
            Some(r) => {
                let onep = hp.add(&hp.int(1), &r);
                hp.ln(&onep)
            }
            None => hp.int(0),
        };
        // ln(c·r/(1+r))
        let ln_gap = hp.sub(&hp.sub(&self.ln_c, &two_u), &ln_1pr);
        let ln_x = if s < 0.0 {
            ln_gap.clone()
        } else {
            let gap = hp.exp_or_zero(&ln_gap).unwrap_or_else(|| hp.int(0));
            let x = hp.sub(&self.c, &gap);
            hp.ln(&x)
        };
        let ln_two = hp.ln(&hp.int(2));
        let ln_pi = hp.add(&self.ln_half_pi, &ln_two);
        let ln_jac = hp.add(&hp.add(&ln_gap, &ln_pi), &hp.sub(&ln_cosh, &ln_1pr));
        let ln_f = self.ln_f(hp, &ln_x);
        hp.add(&ln_f, &ln_jac)
    }

    /// Log of the exp-sinh term on `[c, ∞)`: `x = c + e^v`, `v = (π/2)·sinh s`.
    fn ln_term_outer(&self, hp: &mut Hp, s: f64) -> BigFloat {
        let (sinh, ln_cosh) = Self::hyperbolic(hp, s);
        let v = hp.mul(&self.half_pi, &sinh);
        let ev = hp.exp_or_zero(&v).unwrap_or_else(|| hp.int(0));
        let x = hp.add(&self.c, &ev);
        let ln_x = hp.ln(&x);
        let ln_jac = hp.add(&hp.add(&v, &self.ln_half_pi), &ln_cosh);
        let ln_f = self.ln_f(hp, &ln_x);
        hp.add(&ln_f, &ln_jac)
    }
}

/// Adds `e^{ln_term(s)}` over `s = offset + step·j`, `j ≥ 0`, and over the
/// mirrored negative nodes, stopping each sweep once terms are negligible.
fn sweep(
    hp: &mut Hp,
    offset: f64,
    step: f64,
    ln_peak: &mut f64,
    ln_term: &dyn Fn(&mut Hp, f64) -> BigFloat,
) -> BigFloat {
    let mut sum = hp.int(0);
    for sign in [1.0, -1.0] {
        let mut j = 0u64;
        loop {
            let s = sign * (offset + step * j as f64);
            j += 1;
            if s == 0.0 && sign < 0.0 {
                continue;
            }
            if s.abs() > S_MAX {
                break;
            }
            let lt = ln_term(hp, s);
            let lt_f = approx_f64(&lt);
            if lt_f > *ln_peak {
                *ln_peak = lt_f;
            }
            if let Some(term) = hp.exp_or_zero(&lt) {
                sum = hp.add(&sum, &term);
            }
            if s.abs() > 1.0 && lt_f < *ln_peak - LOG_DROP {
                break;
            }
        }
    }
    sum
}

/// Trapezoid levels until successive estimates agree; returns the integral
/// and the last level-to-level change.
fn integrate(hp: &mut Hp, ln_term: &dyn Fn(&mut Hp, f64) -> BigFloat) -> Result<(BigFloat, f64)> {
    let mut ln_peak = f64::NEG_INFINITY;
    let mut sum = sweep(hp, 0.0, 1.0, &mut ln_peak, ln_term);
    let mut estimate = sum.clone();
    for level in 1..=MAX_LEVEL {
        let h = 0.5f64.powi(level as i32);
        let odd = sweep(hp, h, 2.0 * h, &mut ln_peak, ln_term);
        sum = hp.add(&sum, &odd);
        let next = hp.mul(&sum, &hp.num(h));
        let change = approx_f64(&hp.sub(&next, &estimate)).abs();
        let scale = approx_f64(&next).abs();
        estimate = next;
        let rel = change / scale;
        if level >= MIN_LEVEL && rel <= LEVEL_TOL {
            return Ok((estimate, change));
        }
        if level == MAX_LEVEL {
            if rel <= ACCEPT_TOL {
                return Ok((estimate, change));
            }
            return Err(Error::Convergence(format!(
                "quadrature stalled at relative change {rel:e}"
            )));
        }
    }
    unreachable!("loop returns on the final level")
}

/// Γ_k(t) from its defining integral.
pub fn gamma_k_quad(t: f64, k: f64) -> Result<HPValue> {
    require_positive("t", t)?;
    require_positive("k", k)?;
    let mut hp = Hp::new();
    let f = Integrand::new(&mut hp, t, k);
    let (inner, e1) = integrate(&mut hp, &|hp, s| f.ln_term_inner(hp, s))?;
    let (outer, e2) = integrate(&mut hp, &|hp, s| f.ln_term_outer(hp, s))?;
    let value = hp.add(&inner, &outer);
    let scale = approx_f64(&value).abs();
    if !(scale.is_finite() && scale > 0.0) {
        return Err(Error::Convergence(
            "quadrature produced a non-positive value".into(),
        ));
    }
    Ok(HPValue::new(value, (e1 + e2) / scale))
}
