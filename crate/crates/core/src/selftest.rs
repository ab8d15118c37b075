//! Cross-validation of every fast path against the [`oracle`](crate::oracle),
//! plus reduction and functional-equation regressions.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::family::{gamma_k, gamma_p, gamma_q, psi_k_with, psi_p, psi_q};
use crate::inequality::{
    prior_bounds_k, prior_bounds_p, prior_bounds_q, sandwich_bounds, Auxiliary, GenParams,
};
use crate::oracle::{
    cross_validate, gamma_hp, gamma_k_quad, psi_hp, psi_k_hp, psi_p_hp, psi_q_hp, HPValue,
};
use crate::special::psi_series_with;
use crate::{gamma, Constants, FamilyParam, Result, SeriesControl};

pub const SERIES_REL_TOL: f64 = 1e-10;
pub const GAMMA_REL_TOL: f64 = 1e-12;
pub const FUNCTIONAL_REL_TOL: f64 = 1e-10;
pub const REDUCTION_REL_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy)]
pub struct SelftestOptions {
    pub quick: bool,
    pub seed: u64,
    pub constants: Constants,
}

impl Default for SelftestOptions {
    fn default() -> Self {
        SelftestOptions {
            quick: false,
            seed: 0x5eed,
            constants: Constants::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteResult {
    pub name: &'static str,
    pub passed: usize,
    pub total: usize,
    pub failures: Vec<String>,
}

impl SuiteResult {
    pub fn ok(&self) -> bool {
        self.passed == self.total
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SelftestReport {
    pub suites: Vec<SuiteResult>,
}

impl SelftestReport {
    pub fn all_passed(&self) -> bool {
        self.suites.iter().all(SuiteResult::ok)
    }

    pub fn failing_suites(&self) -> Vec<&'static str> {
        self.suites
            .iter()
            .filter(|s| !s.ok())
            .map(|s| s.name)
            .collect()
    }
}

/// Runs every case in parallel; a case is a label and a check that returns
/// `Ok(true)` on agreement. Errors count as failures.
fn suite<C, F>(name: &'static str, cases: Vec<C>, check: F) -> SuiteResult
where
    C: Send + Sync,
    F: Fn(&C) -> (String, Result<bool>) + Sync,
{
    let outcomes: Vec<(String, Result<bool>)> = cases.par_iter().map(&check).collect();
    let total = outcomes.len();
    let failures: Vec<String> = outcomes
        .into_iter()
        .filter_map(|(label, r)| match r {
            Ok(true) => None,
            Ok(false) => Some(label),
            Err(e) => Some(format!("{label}: {e}")),
        })
        .collect();
    SuiteResult {
        name,
        passed: total - failures.len(),
        total,
        failures,
    }
}

fn log_uniform(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    (rng.gen_range(lo.ln()..hi.ln())).exp()
}

fn agree(fast: f64, oracle: Result<HPValue>, tol: f64) -> Result<bool> {
    Ok(cross_validate(fast, &oracle?, tol))
}

fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * b.abs().max(f64::MIN_POSITIVE)
}

pub fn run(opts: &SelftestOptions) -> SelftestReport {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let n = if opts.quick { 25 } else { 200 };
    let n_quad = if opts.quick { 3 } else { 12 };
    let n_small = if opts.quick { 10 } else { 50 };
    let ctrl = SeriesControl::default();
    let consts = opts.constants;

    let ts: Vec<f64> = (0..n).map(|_| log_uniform(&mut rng, 0.01, 50.0)).collect();
    let psi = suite("psi", ts, |&t| {
        let fast = psi_series_with(t, &ctrl, &consts).and_then(|r| r.require(&ctrl));
        (
            format!("psi(t={t})"),
            fast.and_then(|f| agree(f, psi_hp(t), SERIES_REL_TOL)),
        )
    });

    let cases: Vec<(f64, u64)> = (0..n)
        .map(|_| (log_uniform(&mut rng, 0.01, 50.0), rng.gen_range(1..=2000)))
        .collect();
    let psi_p_suite = suite("psi_p", cases, |&(t, p)| {
        (
            format!("psi_p(t={t}, p={p})"),
            psi_p(t, p).and_then(|f| agree(f, psi_p_hp(t, p), SERIES_REL_TOL)),
        )
    });

    let cases: Vec<(f64, f64)> = (0..n)
        .map(|_| (log_uniform(&mut rng, 0.01, 50.0), rng.gen_range(0.01..0.95)))
        .collect();
    let psi_q_suite = suite("psi_q", cases, |&(t, q)| {
        let fast = psi_q(t, q, &ctrl).and_then(|r| r.require(&ctrl));
        (
            format!("psi_q(t={t}, q={q})"),
            fast.and_then(|f| agree(f, psi_q_hp(t, q), SERIES_REL_TOL)),
        )
    });

    let cases: Vec<(f64, f64)> = (0..n)
        .map(|_| (log_uniform(&mut rng, 0.01, 50.0), rng.gen_range(0.5..10.0)))
        .collect();
    let psi_k_suite = suite("psi_k", cases, |&(t, k)| {
        let fast = psi_k_with(t, k, &ctrl, &consts).and_then(|r| r.require(&ctrl));
        (
            format!("psi_k(t={t}, k={k})"),
            fast.and_then(|f| agree(f, psi_k_hp(t, k), SERIES_REL_TOL)),
        )
    });

    let ts: Vec<f64> = (0..n_small)
        .map(|_| log_uniform(&mut rng, 0.02, 60.0))
        .collect();
    let gamma_suite = suite("gamma", ts, |&t| {
        let check = gamma(t).and_then(|f| Ok(rel_close(f, gamma_hp(t)?.to_f64(), GAMMA_REL_TOL)));
        (format!("gamma(t={t})"), check)
    });

    let cases: Vec<(f64, f64)> = (0..n_quad)
        .map(|_| (rng.gen_range(0.05..20.0), rng.gen_range(1.0..10.0)))
        .collect();
    let gamma_k_suite = suite("gamma_k", cases, |&(t, k)| {
        let check = gamma_k(t, k)
            .and_then(|f| Ok(rel_close(f, gamma_k_quad(t, k)?.to_f64(), GAMMA_REL_TOL)));
        (format!("gamma_k(t={t}, k={k})"), check)
    });

    let cases: Vec<(FamilyParam, f64, f64)> = (0..10)
        .flat_map(|_| {
            let alpha = rng.gen_range(1.0..5.0);
            let t = rng.gen_range(0.05..0.95);
            [
                (FamilyParam::P(rng.gen_range(1..=500)), alpha, t),
                (FamilyParam::Q(rng.gen_range(0.05..0.9)), alpha, t),
                (FamilyParam::K(rng.gen_range(1.0..6.0)), alpha, t),
            ]
        })
        .collect();
    let reductions = suite("reductions", cases, |&(fam, alpha, t)| {
        (
            format!("reduction({fam:?}, alpha={alpha}, t={t})"),
            reduction_matches(fam, alpha, t, &ctrl),
        )
    });

    let cases: Vec<(f64, u64, f64, f64)> = (0..n_small)
        .map(|_| {
            (
                rng.gen_range(0.05..20.0),
                rng.gen_range(1..=500),
                rng.gen_range(0.05..0.9),
                rng.gen_range(0.5..5.0),
            )
        })
        .collect();
    let functional = suite("functional", cases, |&(t, p, q, k)| {
        (
            format!("functional(t={t}, p={p}, q={q}, k={k})"),
            functional_equations_hold(t, p, q, k, &ctrl),
        )
    });

    SelftestReport {
        suites: vec![
            psi,
            psi_p_suite,
            psi_q_suite,
            psi_k_suite,
            gamma_suite,
            gamma_k_suite,
            reductions,
            functional,
        ],
    }
}

/// With `a = b = β = 1` the generalized bounds must equal the original ones.
fn reduction_matches(fam: FamilyParam, alpha: f64, t: f64, ctrl: &SeriesControl) -> Result<bool> {
    let gp = GenParams::new(1.0, 1.0, alpha, 1.0)?;
    let aux = Auxiliary::new(gp, fam)?.with_ctrl(*ctrl);
    let b = sandwich_bounds(&aux, t)?;
    let prior = match fam {
        FamilyParam::P(p) => prior_bounds_p(alpha, p, t)?,
        FamilyParam::Q(q) => prior_bounds_q(alpha, q, t, ctrl)?,
        FamilyParam::K(k) => prior_bounds_k(alpha, k, t)?,
    };
    Ok(rel_close(b.ln_lower.exp(), prior.0, REDUCTION_REL_TOL)
        && rel_close(b.ln_middle.exp(), prior.1, REDUCTION_REL_TOL)
        && rel_close(b.ln_upper.exp(), prior.2, REDUCTION_REL_TOL))
}

fn functional_equations_hold(t: f64, p: u64, q: f64, k: f64, ctrl: &SeriesControl) -> Result<bool> {
    let pf = p as f64;
    let p_ok = rel_close(
        gamma_p(t + 1.0, p)?,
        pf * t / (t + pf + 1.0) * gamma_p(t, p)?,
        FUNCTIONAL_REL_TOL,
    );
    let gq = |x: f64| gamma_q(x, q, ctrl).and_then(|r| r.require(ctrl));
    let q_ok = rel_close(
        gq(t + 1.0)?,
        -(t * q.ln()).exp_m1() / (1.0 - q) * gq(t)?,
        FUNCTIONAL_REL_TOL,
    );
    let k_ok = rel_close(gamma_k(t + k, k)?, t * gamma_k(t, k)?, FUNCTIONAL_REL_TOL);
    Ok(p_ok && q_ok && k_ok)
}
