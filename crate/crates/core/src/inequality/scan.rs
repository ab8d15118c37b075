use rayon::prelude::*;
use serde::Serialize;

use super::Auxiliary;
use crate::{Error, Result};

/// Values of Ω, φ or θ along a grid with the smallest observed increments.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MonotoneScan {
    pub grid: Vec<f64>,
    pub values: Vec<f64>,
    /// Minimum of `values[i+1] − values[i]`; `+∞` for a one-point grid.
    pub min_forward_diff: f64,
    /// Minimum of the log-derivative over the grid.
    pub derivative_min: f64,
    #[serde(skip)]
    pub log_derivs: Vec<f64>,
}

impl MonotoneScan {
    pub fn pass(&self, tol: f64) -> bool {
        self.min_forward_diff >= -tol && self.derivative_min >= -tol
    }
}

/// Evaluates `aux` and its log-derivative on a strictly increasing grid of
/// admissible points.
pub fn scan_monotone(aux: &Auxiliary, grid: &[f64]) -> Result<MonotoneScan> {
    if grid.is_empty() {
        return Err(Error::Domain("scan grid must be nonempty".into()));
    }
    if let Some(&t) = grid.iter().find(|&&t| !(t >= 0.0 && t.is_finite())) {
        return Err(Error::Domain(format!(
            "scan grid points must be ≥ 0 (got {t})"
        )));
    }
    if let Some(w) = grid.windows(2).find(|w| !(w[1] > w[0])) {
        return Err(Error::Domain(format!(
            "scan grid must be strictly increasing ({} then {})",
            w[0], w[1]
        )));
    }
    for &t in grid {
        aux.require_monotone_hypothesis(t)?;
    }

    let rows: Vec<(f64, f64, f64)> = grid
        .par_iter()
        .map(|&t| -> Result<(f64, f64, f64)> {
            let ln_v = aux.ln_value(t)?;
            Ok((ln_v, aux.value(t)?, aux.log_deriv(t)?))
        })
        .collect::<Result<_>>()?;

    let min_forward_diff = rows
        .windows(2)
        .map(|w| w[0].1 * (w[1].0 - w[0].0).exp_m1())
        .fold(f64::INFINITY, f64::min);
    let log_derivs: Vec<f64> = rows.iter().map(|r| r.2).collect();
    let derivative_min = log_derivs.iter().copied().fold(f64::INFINITY, f64::min);
    Ok(MonotoneScan {
        grid: grid.to_vec(),
        values: rows.iter().map(|r| r.1).collect(),
        min_forward_diff,
        derivative_min,
        log_derivs,
    })
}
