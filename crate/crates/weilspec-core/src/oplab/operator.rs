//! Generator and position matrices on the window basis, and the rank-one
//! constrained compression `D`.

use super::basis::FourierBasis;
use crate::error::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::PI;

/// How the rank-one constraint `D xi = 0` is imposed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BuilderKind {
    /// Compression to the orthogonal complement: `D = Q M Q`, `Q = I - xi xi^T`.
    Kill,
    /// Rank-one modification: `D = M - (M xi)(M xi)^T / <xi, M xi>`.
    Perturb,
}

impl BuilderKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            BuilderKind::Kill => "kill",
            BuilderKind::Perturb => "perturb",
        }
    }
}

/// The compression of the scaling generator is diagonal in the periodic
/// basis: `M = diag(omega_k)`. Boundary terms of `<phi_j, -i phi_k'>`
/// vanish because products of basis modes are `2 ell`-periodic.
pub fn build_generator(basis: &FourierBasis) -> Vec<f64> {
    basis.frequencies()
}

/// Position matrix `X_{jk} = <phi_j, x phi_k>`; zero on the diagonal and
/// `i ell (-1)^{k-j} / (pi (j-k))` off it. Hermitian, row-major.
pub fn build_position(basis: &FourierBasis) -> Vec<Complex64> {
    let n = basis.dimension();
    let ell = basis.window().half_width();
    let mut x = vec![Complex64::new(0.0, 0.0); n * n];
    for row in 0..n {
        for col in 0..n {
            if row == col {
                continue;
            }
            let j = row as i64 - basis.n_max() as i64;
            let k = col as i64 - basis.n_max() as i64;
            let sign = if (k - j).rem_euclid(2) == 0 {
                1.0
            } else {
                -1.0
            };
            x[row * n + col] = Complex64::new(0.0, sign * ell / (PI * (j - k) as f64));
        }
    }
    x
}

/// Second-moment matrix `<phi_j, x^2 phi_k>`: `ell^2/3` on the diagonal and
/// `2 (-1)^{k-j} ell^2 / (pi (j-k))^2` off it. Real symmetric, row-major.
/// This is the matrix of the full operator `x^2` on the span, not the
/// square of the compressed position matrix.
pub fn build_position_squared(basis: &FourierBasis) -> Vec<f64> {
    let n = basis.dimension();
    let ell = basis.window().half_width();
    let mut x2 = vec![0.0; n * n];
    for row in 0..n {
        for col in 0..n {
            let diff = row as i64 - col as i64;
            x2[row * n + col] = if diff == 0 {
                ell * ell / 3.0
            } else {
                let sign = if diff.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
                2.0 * sign * ell * ell / (PI * PI * (diff * diff) as f64)
            };
        }
    }
    x2
}

/// A diagonal-plus-low-rank operator
/// `D = diag(mu) + alpha (w xi^T + xi w^T) + beta xi xi^T + gamma w w^T`
/// with `w = diag(mu) xi`. Both builders fit this form; the dense
/// symmetric matrix is materialised on demand.
#[derive(Debug, Clone)]
pub struct ConstrainedOperator {
    mu: Vec<f64>,
    xi_hat: Vec<f64>,
    w: Vec<f64>,
    xi_m_xi: f64,
    alpha: f64,
    beta: f64,
    gamma: f64,
    builder: BuilderKind,
}

const UNIT_NORM_TOL: f64 = 1e-12;
const DEGENERACY_FACTOR: f64 = 1e-8;
const KERNEL_RESIDUAL_FACTOR: f64 = 1e-10;

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn check_unit(xi_hat: &[f64]) -> Result<()> {
    let norm = dot(xi_hat, xi_hat).sqrt();
    if (norm - 1.0).abs() > UNIT_NORM_TOL {
        return Err(Error::NonUnitVector { norm });
    }
    Ok(())
}

/// `D = Q M Q` with `Q = I - xi xi^T`. Expanding,
/// `D = M - w xi^T - xi w^T + <xi, M xi> xi xi^T`; for even real `xi` the
/// diagonal expectation cancels and the last term vanishes.
pub fn constrain_kill(mu: Vec<f64>, xi_hat: &[f64]) -> Result<ConstrainedOperator> {
    assert_eq!(mu.len(), xi_hat.len());
    check_unit(xi_hat)?;
    let w: Vec<f64> = mu.iter().zip(xi_hat).map(|(m, x)| m * x).collect();
    let xi_m_xi = dot(xi_hat, &w);
    let op = ConstrainedOperator {
        mu,
        xi_hat: xi_hat.to_vec(),
        w,
        xi_m_xi,
        alpha: -1.0,
        beta: xi_m_xi,
        gamma: 0.0,
        builder: BuilderKind::Kill,
    };
    op.check_kernel();
    Ok(op)
}

/// `D = M - (M xi)(M xi)^T / <xi, M xi>`. Degenerates when the diagonal
/// expectation vanishes, which is always the case for even real `xi`
/// against the odd diagonal `omega_k`.
pub fn constrain_perturb(mu: Vec<f64>, xi_hat: &[f64]) -> Result<ConstrainedOperator> {
    assert_eq!(mu.len(), xi_hat.len());
    check_unit(xi_hat)?;
    let w: Vec<f64> = mu.iter().zip(xi_hat).map(|(m, x)| m * x).collect();
    let xi_m_xi = dot(xi_hat, &w);
    let scale = mu.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let threshold = DEGENERACY_FACTOR * scale;
    if xi_m_xi.abs() <= threshold {
        return Err(Error::DegenerateConstraint {
            value: xi_m_xi.abs(),
            threshold,
        });
    }
    let op = ConstrainedOperator {
        mu,
        xi_hat: xi_hat.to_vec(),
        w,
        xi_m_xi,
        alpha: 0.0,
        beta: 0.0,
        gamma: -1.0 / xi_m_xi,
        builder: BuilderKind::Perturb,
    };
    op.check_kernel();
    Ok(op)
}

impl ConstrainedOperator {
    pub fn dimension(&self) -> usize {
        self.mu.len()
    }

    pub fn n_max(&self) -> usize {
        (self.mu.len() - 1) / 2
    }

    pub fn builder(&self) -> BuilderKind {
        self.builder
    }

    pub fn mu(&self) -> &[f64] {
        &self.mu
    }

    pub fn xi_hat(&self) -> &[f64] {
        &self.xi_hat
    }

    #[cfg(test)]
    pub(crate) fn w(&self) -> &[f64] {
        &self.w
    }

    pub fn xi_m_xi(&self) -> f64 {
        self.xi_m_xi
    }

    /// `max_k |mu_k|`, the norm of the unconstrained diagonal.
    pub fn diag_norm(&self) -> f64 {
        self.mu.iter().fold(0.0f64, |m, x| m.max(x.abs()))
    }

    /// `out = D v` in O(n).
    pub fn apply(&self, v: &[f64], out: &mut [f64]) {
        let xv = dot(&self.xi_hat, v);
        let wv = dot(&self.w, v);
        for i in 0..v.len() {
            out[i] = self.mu[i] * v[i]
                + self.alpha * (self.w[i] * xv + self.xi_hat[i] * wv)
                + self.beta * self.xi_hat[i] * xv
                + self.gamma * self.w[i] * wv;
        }
    }

    /// Residual `||D xi|| / ||diag||` of the defining constraint.
    pub fn kernel_residual(&self) -> f64 {
        let mut out = vec![0.0; self.dimension()];
        self.apply(&self.xi_hat.clone(), &mut out);
        dot(&out, &out).sqrt() / self.diag_norm().max(f64::MIN_POSITIVE)
    }

    fn check_kernel(&self) {
        debug_assert!(
            self.kernel_residual() <= KERNEL_RESIDUAL_FACTOR,
            "constraint residual {} above {KERNEL_RESIDUAL_FACTOR}",
            self.kernel_residual()
        );
    }

    /// Dense symmetric matrix, row-major. Exactly symmetric by construction.
    pub fn dense(&self) -> Vec<f64> {
        let n = self.dimension();
        let mut a = vec![0.0; n * n];
        for i in 0..n {
            for j in i..n {
                let mut v = self.alpha * (self.w[i] * self.xi_hat[j] + self.xi_hat[i] * self.w[j])
                    + self.beta * self.xi_hat[i] * self.xi_hat[j]
                    + self.gamma * self.w[i] * self.w[j];
                if i == j {
                    v += self.mu[i];
                }
                a[i * n + j] = v;
                a[j * n + i] = v;
            }
        }
        a
    }
}
