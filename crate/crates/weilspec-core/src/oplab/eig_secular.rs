//! O(n^2) eigensolver for the kill-builder operator.
//!
//! For unit even real `xi` the compact form is `D = M - w xi^T - xi w^T`
//! with `w = M xi` and `xi^T M xi = 0`. Its characteristic determinant
//! factors through the 2x2 secular determinant of the resolvent bilinear
//! forms `f_ab(s)` of `(xi, w)`,
//!
//! ```text
//! f11 f22 - (f12 - 1)^2  =  -( -s a(s) ),   a(s) = sum_k xi_k^2 / (mu_k - s),
//! ```
//!
//! because `f12 = 1 + s a(s)` and `f22 = s f12` collapse the determinant to
//! `-s a(s)`. The spectrum is therefore `{0}` (the constrained kernel)
//! together with one root of `a` in each interlacing interval
//! `(mu_j, mu_{j+1})` of the active poles. Components with `xi_k = 0`
//! deflate to exact eigenvalues at `mu_k`.

use super::operator::{BuilderKind, ConstrainedOperator};
use super::spectrum::{SolverKind, Spectrum};
use crate::error::{Error, Result};

const DEFLATION_TOL: f64 = 1e-14;
const MAX_ROOT_ITER: usize = 120;

/// Weyl function `a(s)` and its derivative over the active poles.
fn weyl(active: &[(f64, f64)], s: f64) -> (f64, f64) {
    let mut a = 0.0;
    let mut da = 0.0;
    for &(mu, x2) in active {
        let d = mu - s;
        let r = x2 / d;
        a += r;
        da += r / d;
    }
    (a, da)
}

/// Root of `a` in the open interval `(lo, hi)` between consecutive active
/// poles; `a` increases from -inf to +inf there.
fn bracketed_root(
    active: &[(f64, f64)],
    lo: f64,
    hi: f64,
    index: usize,
    total: usize,
) -> Result<f64> {
    let width = hi - lo;
    let mut a = lo + 1e-3 * width;
    let mut b = hi - 1e-3 * width;
    // Expand toward the poles until the signs bracket.
    let mut guard = 0;
    while weyl(active, a).0 > 0.0 {
        a = lo + (a - lo) * 0.25;
        guard += 1;
        if guard > 200 || a <= lo {
            return Err(Error::SecularBracketing {
                interval: index,
                total,
            });
        }
    }
    guard = 0;
    while weyl(active, b).0 < 0.0 {
        b = hi - (hi - b) * 0.25;
        guard += 1;
        if guard > 200 || b >= hi {
            return Err(Error::SecularBracketing {
                interval: index,
                total,
            });
        }
    }

    let mut s = 0.5 * (a + b);
    for _ in 0..MAX_ROOT_ITER {
        let (f, df) = weyl(active, s);
        if f < 0.0 {
            a = s;
        } else if f > 0.0 {
            b = s;
        } else {
            return Ok(s);
        }
        let newton = s - f / df;
        let next = if newton > a && newton < b {
            newton
        } else {
            0.5 * (a + b)
        };
        let scale = s.abs().max(width);
        if (next - s).abs() <= 4.0 * f64::EPSILON * scale {
            return Ok(next);
        }
        s = next;
    }
    Ok(0.5 * (a + b))
}

/// Spectrum of a kill-builder operator from the secular equation,
/// one bracketed root per interlacing interval. O(n^2) total.
pub fn eig_secular(op: &ConstrainedOperator) -> Result<Spectrum> {
    if op.builder() != BuilderKind::Kill {
        return Err(Error::InvalidArgument(
            "secular solver requires the kill builder's compact form".into(),
        ));
    }
    let scale = op.diag_norm();
    if op.xi_m_xi().abs() > 1e-8 * scale {
        return Err(Error::InvalidArgument(format!(
            "secular solver requires xi^T M xi = 0 (got {:e}); use the dense solver",
            op.xi_m_xi()
        )));
    }

    let mu = op.mu();
    let xi = op.xi_hat();
    let n = mu.len();
    let mut eigenvalues = Vec::with_capacity(n);
    let mut active: Vec<(f64, f64)> = Vec::with_capacity(n);
    for k in 0..n {
        if xi[k].abs() <= DEFLATION_TOL {
            eigenvalues.push(mu[k]); // deflated: e_k is an exact eigenvector
        } else {
            active.push((mu[k], xi[k] * xi[k]));
        }
    }
    active.sort_by(|p, q| p.0.total_cmp(&q.0));
    let intervals = active.len().saturating_sub(1);
    for i in 0..intervals {
        let root = bracketed_root(&active, active[i].0, active[i + 1].0, i, intervals)?;
        eigenvalues.push(root);
    }
    eigenvalues.push(0.0); // the constrained kernel, D xi = 0
    Ok(Spectrum::new(eigenvalues, op.n_max(), SolverKind::Secular))
}

#[cfg(test)]
/// The literal 2x2 secular determinant `f11 f22 - (f12 - 1)^2` from the
/// resolvent bilinear forms of `(xi, w)`. Shares its root set with the
/// factored form used by the solver; exposed for cross-checking.
pub(crate) fn secular_determinant(op: &ConstrainedOperator, s: f64) -> f64 {
    let mu = op.mu();
    let xi = op.xi_hat();
    let w = op.w();
    let mut f11 = 0.0;
    let mut f12 = 0.0;
    let mut f22 = 0.0;
    for k in 0..mu.len() {
        let d = mu[k] - s;
        f11 += xi[k] * xi[k] / d;
        f12 += xi[k] * w[k] / d;
        f22 += w[k] * w[k] / d;
    }
    f11 * f22 - (f12 - 1.0) * (f12 - 1.0)
}
