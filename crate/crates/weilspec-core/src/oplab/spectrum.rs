//! Ordered spectra of the constrained operator.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolverKind {
    Dense,
    Secular,
}

impl SolverKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            SolverKind::Dense => "dense",
            SolverKind::Secular => "secular",
        }
    }
}

/// Ascending eigenvalues `nu_{-N} <= ... <= nu_N`, indexed after sorting so
/// that `nu_0` is the median-rank element.
#[derive(Debug, Clone)]
pub struct Spectrum {
    eigenvalues: Vec<f64>,
    n_max: usize,
    solver: SolverKind,
}

impl Spectrum {
    pub(crate) fn new(mut eigenvalues: Vec<f64>, n_max: usize, solver: SolverKind) -> Spectrum {
        debug_assert_eq!(eigenvalues.len(), 2 * n_max + 1);
        eigenvalues.sort_by(f64::total_cmp);
        Spectrum {
            eigenvalues,
            n_max,
            solver,
        }
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn dimension(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn solver(&self) -> SolverKind {
        self.solver
    }

    /// `nu_k` for `k = -N..N` (sorted rank `N + k`).
    pub fn nu(&self, k: i64) -> f64 {
        self.eigenvalues[(self.n_max as i64 + k) as usize]
    }

    /// The positive-index half `nu_1, ..., nu_N`.
    pub fn positive(&self) -> &[f64] {
        &self.eigenvalues[self.n_max + 1..]
    }

    /// Rank of the eigenvalue of minimal absolute value.
    pub fn min_abs_rank(&self) -> usize {
        let mut best = 0;
        for (i, v) in self.eigenvalues.iter().enumerate() {
            if v.abs() < self.eigenvalues[best].abs() {
                best = i;
            }
        }
        best
    }

    /// The constrained kernel: the minimal-|.| eigenvalue must sit at the
    /// median rank and be at most `tol` in magnitude.
    pub fn validate_kernel(&self, tol: f64) -> Result<()> {
        let rank = self.min_abs_rank();
        let value = self.eigenvalues[rank];
        if rank != self.n_max || value.abs() > tol {
            return Err(Error::InvalidArgument(format!(
                "kernel eigenvalue check failed: min |nu| = {value:e} at rank {rank} \
                 (expected rank {} with |nu| <= {tol:e})",
                self.n_max
            )));
        }
        Ok(())
    }

    /// `max_k |nu_k + nu_{-k}|`, the deviation from origin symmetry.
    pub fn symmetry_defect(&self) -> f64 {
        let n = self.n_max as i64;
        (1..=n)
            .map(|k| (self.nu(k) + self.nu(-k)).abs())
            .fold(0.0, f64::max)
    }
}
