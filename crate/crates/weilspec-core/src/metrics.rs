//! Pairing spectra with zero tables and the dissonance metrics: the mean
//! absolute error, the uniform error, the `1/(4 ln lambda)` lower bound,
//! the prime-count calibration of `lambda`, and the `E ln kappa` product.

use crate::error::{Error, Result};
use crate::oplab::Spectrum;
use crate::specfun::nth_prime;
use crate::zeros::ZerosTable;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairingMode {
    /// Pair the k-th zero with the k-th smallest positive eigenvalue.
    SortedIndex,
    /// Pair each zero with the closest eigenvalue (eigenvalues may repeat).
    NearestEigenvalue,
}

impl PairingMode {
    pub fn as_str(&self) -> &'static str {
        match self {
            PairingMode::SortedIndex => "sorted",
            PairingMode::NearestEigenvalue => "nearest",
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct PairRow {
    /// 1-based zero index.
    pub index: usize,
    pub zero: f64,
    pub eigenvalue: f64,
    pub distance: f64,
}

/// Scored pairing of a spectrum against a zero table.
#[derive(Debug, Clone)]
pub struct ErrorReport {
    pub rows: Vec<PairRow>,
    /// Mean absolute error over the compared range.
    pub epsilon: f64,
    /// Uniform (max) error over the compared range.
    pub uniform: f64,
    /// `1/(4 ln lambda)`.
    pub bound: f64,
    /// `uniform * ln kappa`, set by harnesses where `kappa` is defined.
    pub kappa_product: Option<f64>,
    pub pairing: PairingMode,
    pub lambda: f64,
    pub requested: usize,
    pub count: usize,
}

/// Pair the first `count` zeros against the spectrum and score the result.
pub fn pair_and_score(
    spectrum: &Spectrum,
    zeros: &ZerosTable,
    mode: PairingMode,
    count: usize,
    lambda: f64,
) -> Result<ErrorReport> {
    if lambda.is_nan() || lambda <= 1.0 {
        return Err(Error::LogDomain {
            what: "lambda",
            value: lambda,
        });
    }
    zeros.require_count(count)?;
    if mode == PairingMode::SortedIndex && spectrum.positive().len() < count {
        return Err(Error::Shortfall {
            what: "positive eigenvalues",
            needed: count,
            available: spectrum.positive().len(),
        });
    }

    let mut rows = Vec::with_capacity(count);
    match mode {
        PairingMode::SortedIndex => {
            let positive = spectrum.positive();
            for k in 1..=count {
                let zero = zeros.gamma(k);
                let eigenvalue = positive[k - 1];
                rows.push(PairRow {
                    index: k,
                    zero,
                    eigenvalue,
                    distance: (eigenvalue - zero).abs(),
                });
            }
        }
        PairingMode::NearestEigenvalue => {
            let all = spectrum.eigenvalues();
            for k in 1..=count {
                let zero = zeros.gamma(k);
                let eigenvalue = nearest(all, zero);
                rows.push(PairRow {
                    index: k,
                    zero,
                    eigenvalue,
                    distance: (eigenvalue - zero).abs(),
                });
            }
        }
    }

    let epsilon = rows.iter().map(|r| r.distance).sum::<f64>() / count.max(1) as f64;
    let uniform = rows.iter().map(|r| r.distance).fold(0.0, f64::max);
    Ok(ErrorReport {
        rows,
        epsilon,
        uniform,
        bound: 0.25 / lambda.ln(),
        kappa_product: None,
        pairing: mode,
        lambda,
        requested: count,
        count,
    })
}

/// Closest element of an ascending slice; ties resolve to the smaller value.
fn nearest(ascending: &[f64], target: f64) -> f64 {
    debug_assert!(!ascending.is_empty());
    let idx = ascending.partition_point(|&v| v < target);
    if idx == 0 {
        return ascending[0];
    }
    if idx == ascending.len() {
        return ascending[idx - 1];
    }
    let below = ascending[idx - 1];
    let above = ascending[idx];
    if (target - below) <= (above - target) {
        below
    } else {
        above
    }
}

/// The lower-bound check: `(1/(4 ln lambda), epsilon >= bound)`.
pub fn bound_check(report: &ErrorReport) -> Result<(f64, bool)> {
    if report.lambda.is_nan() || report.lambda <= 1.0 {
        return Err(Error::LogDomain {
            what: "lambda",
            value: report.lambda,
        });
    }
    let bound = 0.25 / report.lambda.ln();
    Ok((bound, report.epsilon >= bound))
}

/// `lambda(N) = exp(p_N / N)`: the window scaled so `N ln lambda = p_N`,
/// carrying the information of the first N primes.
pub fn calibrate_lambda(n: usize) -> Result<f64> {
    let p = nth_prime(n)?;
    Ok((p as f64 / n as f64).exp())
}

/// The conjectured inverse-logarithmic product `E(kappa) ln kappa`.
pub fn conjecture_product(uniform: f64, kappa: f64) -> Result<f64> {
    if kappa.is_nan() || kappa <= 1.0 {
        return Err(Error::LogDomain {
            what: "kappa",
            value: kappa,
        });
    }
    Ok(uniform * kappa.ln())
}
