//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("sieve limit {available} too small: operation needs prime powers up to {needed}")]
    SieveCapacity { needed: u64, available: u64 },

    #[error(
        "quadrature did not converge after {panels} panel splits \
         (partial value {value:e}, error estimate {error_estimate:e}, tol {tol:e})"
    )]
    QuadratureNonConvergence {
        value: f64,
        error_estimate: f64,
        panels: usize,
        tol: f64,
    },

    #[error("quadrature tail cutoff too small for tol {tol:e} (tail bound {tail_bound:e})")]
    TailBound { tail_bound: f64, tol: f64 },

    #[error(
        "zero side of the explicit formula is only conditionally convergent for {kind}: \
         the |h| envelope decays slower than 1/t^2; use a fejer window instead"
    )]
    ConditionallyConvergent { kind: String },

    #[error(
        "imaginary residue {residue:e} of the Weil vector exceeds {limit:e}; \
         internal inconsistency in the complex evaluation path"
    )]
    ImaginaryResidue { residue: f64, limit: f64 },

    #[error("constraint vector is not a unit vector (norm {norm})")]
    NonUnitVector { norm: f64 },

    #[error(
        "degenerate rank-one constraint: |<xi, M xi>| = {value:e} <= {threshold:e} \
         (always the case for even real xi, whose diagonal expectation cancels); \
         use the kill builder instead"
    )]
    DegenerateConstraint { value: f64, threshold: f64 },

    #[error(
        "QL iteration did not converge for eigenvalue index {index} after {iterations} sweeps"
    )]
    EigenNonConvergence { index: usize, iterations: usize },

    #[error(
        "secular solver failed to bracket a root in interval {interval} of {total}; \
         fall back to the dense solver"
    )]
    SecularBracketing { interval: usize, total: usize },

    #[error("expected a unit vector (norm {norm})")]
    NonUnitState { norm: f64 },

    #[error("zeros file {path}: {kind}")]
    ZerosFormat {
        path: String,
        kind: ZerosFormatError,
    },

    #[error("Hardy Z sign-change check failed at zero index {index} (gamma = {gamma})")]
    ZeroSignChange { index: usize, gamma: f64 },

    #[error("zero-count estimate requires T > 2*pi (got {t})")]
    ZeroCountDomain { t: f64 },

    #[error("need {needed} {what}, only {available} available")]
    Shortfall {
        what: &'static str,
        needed: usize,
        available: usize,
    },

    #[error("{what} must exceed 1 (got {value})")]
    LogDomain { what: &'static str, value: f64 },

    #[error("Gram construction limited to N <= {max} (requested N = {requested})")]
    GramTooLarge { requested: usize, max: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("io error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

#[derive(Debug, Error)]
pub enum ZerosFormatError {
    #[error("file contains no ordinates")]
    Empty,
    #[error("line {line}: cannot parse '{content}' as a positive decimal ordinate")]
    Parse { line: usize, content: String },
    #[error("line {line}: ordinate {value} is not positive")]
    NonPositive { line: usize, value: f64 },
    #[error("line {line}: ordinate {value} does not exceed its predecessor {previous}")]
    NotAscending {
        line: usize,
        value: f64,
        previous: f64,
    },
}

impl Error {
    /// True for failures of numerical machinery (as opposed to bad inputs).
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::QuadratureNonConvergence { .. }
                | Error::TailBound { .. }
                | Error::ImaginaryResidue { .. }
                | Error::EigenNonConvergence { .. }
                | Error::SecularBracketing { .. }
                | Error::ZeroSignChange { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
