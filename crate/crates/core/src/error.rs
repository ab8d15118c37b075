use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain where the function is defined.
    #[error("domain error: {0}")]
    Domain(String),
    /// Arguments are evaluable but violate the hypotheses of the lemma or
    /// theorem being checked.
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("overflow: {0}")]
    Overflow(String),
    #[error(
        "tolerance not met: error bound {err_bound:e} exceeds {tol:e} after {terms_used} terms"
    )]
    ToleranceNotMet {
        err_bound: f64,
        tol: f64,
        terms_used: usize,
    },
    #[error("convergence failure: {0}")]
    Convergence(String),
}

impl Error {
    /// Process exit code used by the command-line front-end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Domain(_) | Error::Hypothesis(_) => 2,
            Error::ToleranceNotMet { .. } => 3,
            Error::Overflow(_) | Error::Convergence(_) => 1,
        }
    }
}
