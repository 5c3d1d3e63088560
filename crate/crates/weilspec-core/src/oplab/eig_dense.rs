//! Dense symmetric eigensolver: Householder reduction to tridiagonal form
//! followed by implicit-shift QL iteration.

use super::operator::ConstrainedOperator;
use super::spectrum::{SolverKind, Spectrum};
use crate::error::{Error, Result};

const MAX_QL_SWEEPS: usize = 60;

/// Householder reduction of the symmetric `a` (row-major, destroyed) to
/// tridiagonal form: `d` receives the diagonal, `e[i]` the coupling between
/// rows `i` and `i+1` (`e[n-1]` unused). When `q` is non-empty (identity on
/// entry) the orthogonal similarity is accumulated into it.
fn householder_tridiag(a: &mut [f64], n: usize, d: &mut [f64], e: &mut [f64], q: &mut [f64]) {
    let mut v = vec![0.0; n];
    let mut p = vec![0.0; n];
    for k in 0..n.saturating_sub(2) {
        // Column k below the diagonal.
        let m = n - k - 1;
        let mut norm2 = 0.0;
        for i in 0..m {
            let x = a[(k + 1 + i) * n + k];
            v[i] = x;
            norm2 += x * x;
        }
        let norm = norm2.sqrt();
        if norm == 0.0 {
            d[k] = a[k * n + k];
            e[k] = 0.0;
            continue;
        }
        let alpha = if v[0] > 0.0 { -norm } else { norm };
        v[0] -= alpha;
        let vnorm = v[..m].iter().map(|x| x * x).sum::<f64>().sqrt();
        if vnorm == 0.0 {
            d[k] = a[k * n + k];
            e[k] = alpha;
            continue;
        }
        for x in v[..m].iter_mut() {
            *x /= vnorm;
        }

        // Symmetric rank-2 update of the trailing block B <- B - v q^T - q v^T
        // with p = B v, kappa = v^T p, qvec = 2p - 2 kappa v.
        for i in 0..m {
            let mut s = 0.0;
            for j in 0..m {
                s += a[(k + 1 + i) * n + (k + 1 + j)] * v[j];
            }
            p[i] = s;
        }
        let kappa: f64 = v[..m].iter().zip(&p[..m]).map(|(x, y)| x * y).sum();
        for i in 0..m {
            p[i] = 2.0 * (p[i] - kappa * v[i]);
        }
        for i in 0..m {
            for j in 0..m {
                a[(k + 1 + i) * n + (k + 1 + j)] -= v[i] * p[j] + p[i] * v[j];
            }
        }

        d[k] = a[k * n + k];
        e[k] = alpha;
        a[(k + 1) * n + k] = alpha;
        a[k * n + (k + 1)] = alpha;
        for i in 1..m {
            a[(k + 1 + i) * n + k] = 0.0;
            a[k * n + (k + 1 + i)] = 0.0;
        }

        if !q.is_empty() {
            // Q <- Q (I - 2 v v^T) acting on columns k+1.. .
            for row in 0..n {
                let mut s = 0.0;
                for j in 0..m {
                    s += q[row * n + (k + 1 + j)] * v[j];
                }
                s *= 2.0;
                for j in 0..m {
                    q[row * n + (k + 1 + j)] -= s * v[j];
                }
            }
        }
    }
    if n >= 2 {
        d[n - 2] = a[(n - 2) * n + (n - 2)];
        e[n - 2] = a[(n - 1) * n + (n - 2)];
    }
    d[n - 1] = a[(n - 1) * n + (n - 1)];
    e[n - 1] = 0.0;
}

/// Implicit-shift QL on the tridiagonal (`d`, `e` with `e[i]` coupling `i`
/// and `i+1`). Rotations accumulate into the columns of `q` when non-empty.
fn ql_implicit(d: &mut [f64], e: &mut [f64], q: &mut [f64], n: usize) -> Result<()> {
    e[n - 1] = 0.0;
    let mut f = 0.0f64;
    let mut tst1 = 0.0f64;
    let eps = f64::EPSILON;
    for l in 0..n {
        tst1 = tst1.max(d[l].abs() + e[l].abs());
        let mut m = l;
        while m < n - 1 {
            if e[m].abs() <= eps * tst1 {
                break;
            }
            m += 1;
        }

        if m > l {
            let mut iter = 0;
            loop {
                iter += 1;
                if iter > MAX_QL_SWEEPS {
                    return Err(Error::EigenNonConvergence {
                        index: l,
                        iterations: MAX_QL_SWEEPS,
                    });
                }

                // Shift from the leading 2x2 block.
                let g = d[l];
                let mut p = (d[l + 1] - g) / (2.0 * e[l]);
                let mut r = p.hypot(1.0);
                if p < 0.0 {
                    r = -r;
                }
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                let dl1 = d[l + 1];
                let mut h = g - d[l];
                for item in d.iter_mut().take(n).skip(l + 2) {
                    *item -= h;
                }
                f += h;

                // QL sweep from m down to l.
                p = d[m];
                let mut c = 1.0;
                let mut c2 = c;
                let mut c3 = c;
                let el1 = e[l + 1];
                let mut s = 0.0;
                let mut s2 = 0.0;
                for i in (l..m).rev() {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    let g = c * e[i];
                    h = c * p;
                    r = p.hypot(e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);

                    if !q.is_empty() {
                        for k in 0..n {
                            let h = q[k * n + i + 1];
                            q[k * n + i + 1] = s * q[k * n + i] + c * h;
                            q[k * n + i] = c * q[k * n + i] - s * h;
                        }
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;

                if e[l].abs() <= eps * tst1 {
                    break;
                }
            }
        }
        d[l] += f;
        e[l] = 0.0;
    }
    Ok(())
}

/// Eigen-decomposition of a symmetric matrix (row-major, destroyed).
/// Returns ascending eigenvalues and, if requested, matching eigenvectors
/// as columns of a row-major matrix.
pub fn eigh(a: &mut [f64], n: usize, vectors: bool) -> Result<(Vec<f64>, Option<Vec<f64>>)> {
    assert_eq!(a.len(), n * n);
    if n == 1 {
        return Ok((vec![a[0]], vectors.then(|| vec![1.0])));
    }
    let mut d = vec![0.0; n];
    let mut e = vec![0.0; n];
    let mut q = if vectors {
        let mut q = vec![0.0; n * n];
        for i in 0..n {
            q[i * n + i] = 1.0;
        }
        q
    } else {
        Vec::new()
    };
    householder_tridiag(a, n, &mut d, &mut e, &mut q);
    ql_implicit(&mut d, &mut e, &mut q, n)?;

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| d[i].total_cmp(&d[j]));
    let values: Vec<f64> = order.iter().map(|&i| d[i]).collect();
    let vecs = if vectors {
        let mut sorted = vec![0.0; n * n];
        for (new_col, &old_col) in order.iter().enumerate() {
            for row in 0..n {
                sorted[row * n + new_col] = q[row * n + old_col];
            }
        }
        Some(sorted)
    } else {
        None
    };
    Ok((values, vecs))
}

/// Full spectrum of the constrained operator via the dense solver.
pub fn eig_dense(op: &ConstrainedOperator) -> Result<Spectrum> {
    let n = op.dimension();
    let mut a = op.dense();
    let (values, _) = eigh(&mut a, n, false)?;
    Ok(Spectrum::new(values, op.n_max(), SolverKind::Dense))
}

/// Dense spectrum plus eigenvectors (columns, row-major).
pub fn eig_dense_with_vectors(op: &ConstrainedOperator) -> Result<(Spectrum, Vec<f64>)> {
    let n = op.dimension();
    let mut a = op.dense();
    let (values, vectors) = eigh(&mut a, n, true)?;
    Ok((
        Spectrum::new(values, op.n_max(), SolverKind::Dense),
        vectors.expect("vectors requested"),
    ))
}
