use serde::Serialize;

use crate::{Error, Result};

/// Euler–Mascheroni constant, 0.57721566490153286060 (rounded to `f64`).
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_860_60;

/// Fixed constants used by the psi-type series.
///
/// Only exists as a value so the self-test can inject a corrupted constant;
/// library callers use [`Constants::default`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Constants {
    pub euler_gamma: f64,
}

impl Default for Constants {
    fn default() -> Self {
        Constants {
            euler_gamma: EULER_GAMMA,
        }
    }
}

/// Truncation budget and absolute tolerance for infinite series and products.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SeriesControl {
    max_terms: usize,
    tol: f64,
}

impl SeriesControl {
    pub const DEFAULT_MAX_TERMS: usize = 10_000_000;
    pub const DEFAULT_TOL: f64 = 1e-12;
    pub const ACCURACY_FLOOR: f64 = 1e-17;

    pub fn new(max_terms: usize, tol: f64) -> Result<Self> {
        if max_terms < 1 {
            return Err(Error::Domain("max_terms ≥ 1 required".into()));
        }
        if !(tol > 0.0 && tol.is_finite()) {
            return Err(Error::Domain(format!("tol > 0 required (got {tol})")));
        }
        Ok(SeriesControl { max_terms, tol })
    }

    pub fn with_tol(tol: f64) -> Result<Self> {
        Self::new(Self::DEFAULT_MAX_TERMS, tol)
    }

    pub fn max_terms(&self) -> usize {
        self.max_terms
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    /// Bound the truncation aims for: `tol`, but never looser than
    /// [`Self::ACCURACY_FLOOR`], so a loose tolerance does not cost digits
    /// that a few more terms would recover.
    pub(crate) fn target(&self) -> f64 {
        self.tol.min(Self::ACCURACY_FLOOR)
    }
}

impl Default for SeriesControl {
    fn default() -> Self {
        SeriesControl {
            max_terms: Self::DEFAULT_MAX_TERMS,
            tol: Self::DEFAULT_TOL,
        }
    }
}

/// A series or product evaluation together with its a-posteriori tail bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EvalResult {
    pub value: f64,
    /// Bound on the truncation error of `value`.
    pub err_bound: f64,
    pub terms_used: usize,
    /// False when `max_terms` ran out before `err_bound ≤ tol`.
    pub converged: bool,
}

impl EvalResult {
    pub(crate) fn new(value: f64, err_bound: f64, terms_used: usize, tol: f64) -> Self {
        EvalResult {
            value,
            err_bound,
            terms_used,
            converged: err_bound <= tol,
        }
    }

    /// The value, or [`Error::ToleranceNotMet`] if the budget ran out.
    pub fn require(self, ctrl: &SeriesControl) -> Result<f64> {
        if self.converged {
            Ok(self.value)
        } else {
            Err(Error::ToleranceNotMet {
                err_bound: self.err_bound,
                tol: ctrl.tol(),
                terms_used: self.terms_used,
            })
        }
    }

    pub(crate) fn map(self, f: impl FnOnce(f64) -> f64) -> Self {
        EvalResult {
            value: f(self.value),
            ..self
        }
    }
}
