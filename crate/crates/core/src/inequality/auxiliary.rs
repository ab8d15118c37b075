use serde::Serialize;

use super::lemma::{lemma_expr_k, lemma_expr_p, lemma_expr_q_with, require_k_hypotheses};
use super::GenParams;
use crate::family::{ln_gamma_k, ln_gamma_p, ln_gamma_q};
use crate::{ln_gamma, Error, FamilyParam, Result, SeriesControl, EULER_GAMMA};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum AuxKind {
    Omega,
    Phi,
    Theta,
}

impl AuxKind {
    pub fn name(&self) -> &'static str {
        match self {
            AuxKind::Omega => "omega",
            AuxKind::Phi => "phi",
            AuxKind::Theta => "theta",
        }
    }
}

/// One of Ω, φ, θ with its parameters bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Auxiliary {
    pub gp: GenParams,
    pub family: FamilyParam,
    pub ctrl: SeriesControl,
}

impl Auxiliary {
    /// Binds `gp` to a family. θ additionally requires `a ≥ b` and `k ≥ 1`.
    pub fn new(gp: GenParams, family: FamilyParam) -> Result<Self> {
        gp.validate()?;
        family.validate()?;
        if let FamilyParam::K(k) = family {
            require_k_hypotheses(gp.a, gp.b, k)?;
        }
        Ok(Auxiliary {
            gp,
            family,
            ctrl: SeriesControl::default(),
        })
    }

    pub fn omega(gp: GenParams, p: u64) -> Result<Self> {
        Self::new(gp, FamilyParam::p(p)?)
    }

    pub fn phi(gp: GenParams, q: f64) -> Result<Self> {
        Self::new(gp, FamilyParam::q(q)?)
    }

    pub fn theta(gp: GenParams, k: f64) -> Result<Self> {
        Self::new(gp, FamilyParam::k(k)?)
    }

    pub fn with_ctrl(mut self, ctrl: SeriesControl) -> Self {
        self.ctrl = ctrl;
        self
    }

    pub fn kind(&self) -> AuxKind {
        match self.family {
            FamilyParam::P(_) => AuxKind::Omega,
            FamilyParam::Q(_) => AuxKind::Phi,
            FamilyParam::K(_) => AuxKind::Theta,
        }
    }

    pub(crate) fn arg_checked(&self, t: f64) -> Result<f64> {
        let x = self.gp.arg(t);
        if t.is_finite() && x > 0.0 {
            Ok(x)
        } else {
            Err(Error::Domain(format!(
                "α + β·t > 0 required (got {x} at t = {t})"
            )))
        }
    }

    /// `ln Γ_•(x)` for the bound family.
    pub(crate) fn ln_deformed_gamma(&self, x: f64) -> Result<f64> {
        match self.family {
            FamilyParam::P(p) => ln_gamma_p(x, p),
            FamilyParam::Q(q) => ln_gamma_q(x, q, &self.ctrl)?.require(&self.ctrl),
            FamilyParam::K(k) => ln_gamma_k(x, k),
        }
    }

    /// `a·ln Γ(x) − b·ln Γ_•(x)`, the logarithm of the sandwiched quotient.
    pub(crate) fn ln_quotient(&self, x: f64) -> Result<f64> {
        Ok(self.gp.a * ln_gamma(x)? - self.gp.b * self.ln_deformed_gamma(x)?)
    }

    /// Slope in `t` of the non-Gamma factors of the auxiliary function:
    /// `bβ ln p + aβγ`, `−bβ ln(1−q) + aβγ`, or `(kaβγ − bβγ)/k + (bβ/k) ln k`.
    pub(crate) fn exponential_rate(&self) -> f64 {
        let GenParams { a, b, beta, .. } = self.gp;
        let g = EULER_GAMMA;
        match self.family {
            FamilyParam::P(p) => b * beta * (p as f64).ln() + a * beta * g,
            FamilyParam::Q(q) => -b * beta * (-q).ln_1p() + a * beta * g,
            FamilyParam::K(k) => (k * a * beta * g - b * beta * g) / k + (b * beta / k) * k.ln(),
        }
    }

    /// `(a − b)·ln(α+βt)` for θ, zero otherwise.
    pub(crate) fn power_factor(&self, x: f64) -> f64 {
        match self.family {
            FamilyParam::K(_) => (self.gp.a - self.gp.b) * x.ln(),
            _ => 0.0,
        }
    }

    /// Logarithm of Ω, φ or θ at `t`.
    pub fn ln_value(&self, t: f64) -> Result<f64> {
        let x = self.arg_checked(t)?;
        Ok(self.power_factor(x) + t * self.exponential_rate() + self.ln_quotient(x)?)
    }

    pub fn value(&self, t: f64) -> Result<f64> {
        let v = self.ln_value(t)?.exp();
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::Overflow(format!(
                "{}({t}) exceeds the f64 range",
                self.kind().name()
            )))
        }
    }

    /// The monotonicity hypothesis at `t`: `α + βt > 1` for Ω and φ.
    /// θ's hypotheses were checked on construction.
    pub fn require_monotone_hypothesis(&self, t: f64) -> Result<()> {
        let x = self.arg_checked(t)?;
        match self.family {
            FamilyParam::K(_) => Ok(()),
            _ if x > 1.0 => Ok(()),
            _ => Err(Error::Hypothesis(format!(
                "α + β·t > 1 required for family {} (got {x} at t = {t})",
                self.family.name()
            ))),
        }
    }

    /// Derivative of `ln` of the auxiliary function, in the factored form
    /// `β·lemma(a, b, α+βt, ·)`.
    pub fn log_deriv(&self, t: f64) -> Result<f64> {
        let GenParams { a, b, beta, .. } = self.gp;
        let x = self.arg_checked(t)?;
        let lemma = match self.family {
            FamilyParam::P(p) => lemma_expr_p(a, b, x, p)?,
            FamilyParam::Q(q) => lemma_expr_q_with(a, b, x, q, &self.ctrl)?,
            FamilyParam::K(k) => lemma_expr_k(a, b, x, k)?,
        };
        Ok(beta * lemma)
    }
}

/// `ln Ω(t)`.
pub fn ln_omega(t: f64, gp: &GenParams, p: u64) -> Result<f64> {
    Auxiliary::omega(*gp, p)?.ln_value(t)
}

/// `Ω(t) = p^{bβt} e^{aβγt} Γ(α+βt)^a / Γ_p(α+βt)^b`.
pub fn omega(t: f64, gp: &GenParams, p: u64) -> Result<f64> {
    Auxiliary::omega(*gp, p)?.value(t)
}

pub fn ln_phi(t: f64, gp: &GenParams, q: f64) -> Result<f64> {
    Auxiliary::phi(*gp, q)?.ln_value(t)
}

/// `φ(t) = (1−q)^{−bβt} e^{aβγt} Γ(α+βt)^a / Γ_q(α+βt)^b`.
pub fn phi(t: f64, gp: &GenParams, q: f64) -> Result<f64> {
    Auxiliary::phi(*gp, q)?.value(t)
}

pub fn ln_theta(t: f64, gp: &GenParams, k: f64) -> Result<f64> {
    Auxiliary::theta(*gp, k)?.ln_value(t)
}

/// `θ(t) = (α+βt)^{a−b} e^{t(kaβγ−bβγ)/k} Γ(α+βt)^a / (k^{−bβt/k} Γ_k(α+βt)^b)`.
pub fn theta(t: f64, gp: &GenParams, k: f64) -> Result<f64> {
    Auxiliary::theta(*gp, k)?.value(t)
}

/// `β·lemma_expr_p(a, b, α+βt, p)`.
pub fn log_deriv_omega(t: f64, gp: &GenParams, p: u64) -> Result<f64> {
    Auxiliary::omega(*gp, p)?.log_deriv(t)
}

/// `β·lemma_expr_q(a, b, α+βt, q)`.
pub fn log_deriv_phi(t: f64, gp: &GenParams, q: f64) -> Result<f64> {
    Auxiliary::phi(*gp, q)?.log_deriv(t)
}

/// `β·lemma_expr_k(a, b, α+βt, k)`.
pub fn log_deriv_theta(t: f64, gp: &GenParams, k: f64) -> Result<f64> {
    Auxiliary::theta(*gp, k)?.log_deriv(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::inequality::lemma_expr_p;

    const H: f64 = 1e-5;

    #[test]
    fn omega_unit_params() {
        let gp = GenParams::unit();
        assert!((omega(0.0, &gp, 1).unwrap() - 2.0).abs() < 1e-14);
        let expect = 6.0 * EULER_GAMMA.exp();
        assert!((omega(1.0, &gp, 1).unwrap() - expect).abs() < 1e-13);
        assert!(omega(0.2, &gp, 1).unwrap() < omega(0.7, &gp, 1).unwrap());
    }

    #[test]
    fn phi_unit_params() {
        let gp = GenParams::unit();
        assert!((phi(0.0, &gp, 0.5).unwrap() - 1.0).abs() < 1e-14);
        let expect = 2.0 * EULER_GAMMA.exp();
        assert!((phi(1.0, &gp, 0.5).unwrap() - expect).abs() < 1e-12);
    }

    #[test]
    fn theta_collapses_when_a_equals_b_and_k_is_one() {
        let gp = GenParams::new(1.7, 1.7, 0.4, 2.2).unwrap();
        for &t in &[0.0, 0.3, 1.0, 4.0] {
            assert_eq!(theta(t, &gp, 1.0).unwrap(), 1.0);
            assert_eq!(log_deriv_theta(t, &gp, 1.0).unwrap(), 0.0);
        }
    }

    #[test]
    fn theta_at_zero() {
        let gp = GenParams::new(2.0, 1.0, 1.0, 1.0).unwrap();
        let gamma_2_of_1 = (std::f64::consts::PI / 2.0).sqrt();
        assert!((theta(0.0, &gp, 2.0).unwrap() - 1.0 / gamma_2_of_1).abs() < 1e-14);
        let (t0, t1, t2) = (
            theta(0.0, &gp, 2.0).unwrap(),
            theta(0.5, &gp, 2.0).unwrap(),
            theta(1.0, &gp, 2.0).unwrap(),
        );
        assert!(t0 <= t1 && t1 <= t2);
    }

    #[test]
    fn theta_rejects_theorem_violations() {
        let gp = GenParams::new(1.0, 2.0, 1.0, 1.0).unwrap();
        assert!(matches!(theta(0.5, &gp, 2.0), Err(Error::Hypothesis(_))));
        let gp = GenParams::unit();
        assert!(matches!(theta(0.5, &gp, 0.5), Err(Error::Hypothesis(_))));
    }

    #[test]
    fn log_deriv_is_beta_times_lemma() {
        let gp = GenParams::new(1.0, 1.0, 1.2, 1.0).unwrap();
        let d = log_deriv_omega(0.5, &gp, 3).unwrap();
        assert_eq!(d, lemma_expr_p(1.0, 1.0, 1.7, 3).unwrap());
        assert!(d > 0.0);
    }

    #[test]
    fn log_deriv_matches_finite_difference() {
        let gp = GenParams::new(1.0, 1.0, 1.5, 1.0).unwrap();
        let t = 0.4;
        let fd = (ln_omega(t + H, &gp, 5).unwrap() - ln_omega(t - H, &gp, 5).unwrap()) / (2.0 * H);
        assert!((fd - log_deriv_omega(t, &gp, 5).unwrap()).abs() < 1e-6);

        let gp = GenParams::new(0.5, 2.0, 3.0, 1.0).unwrap();
        let fd = (ln_phi(t + H, &gp, 0.7).unwrap() - ln_phi(t - H, &gp, 0.7).unwrap()) / (2.0 * H);
        assert!((fd - log_deriv_phi(t, &gp, 0.7).unwrap()).abs() < 1e-6);

        let gp = GenParams::new(2.0, 1.0, 1.5, 0.5).unwrap();
        let fd =
            (ln_theta(t + H, &gp, 3.0).unwrap() - ln_theta(t - H, &gp, 3.0).unwrap()) / (2.0 * H);
        assert!((fd - log_deriv_theta(t, &gp, 3.0).unwrap()).abs() < 1e-6);
    }

    #[test]
    fn monotone_hypothesis_for_omega_and_phi() {
        let gp = GenParams::new(1.0, 1.0, 0.5, 1.0).unwrap();
        let aux = Auxiliary::phi(gp, 0.5).unwrap();
        assert!(matches!(
            aux.require_monotone_hypothesis(0.2),
            Err(Error::Hypothesis(_))
        ));
        assert!(aux.require_monotone_hypothesis(0.6).is_ok());
        assert!(matches!(aux.log_deriv(0.2), Err(Error::Hypothesis(_))));
        // Evaluation itself only needs a positive argument.
        assert!(aux.value(0.2).is_ok());
        assert!(matches!(aux.value(-0.6), Err(Error::Domain(_))));
    }
}
