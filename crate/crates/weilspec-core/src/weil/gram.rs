//! The Weil Gram matrix: the sesquilinear form `W(phi_j, phi_k)` on the
//! window span, with frequency side `h_j(t) conj(h_k(t))` and log side the
//! cross-correlation `F = g_j * g~_k`.

use super::kernel::ArchKernel;
use crate::error::{Error, Result};
use crate::oplab::eigh;
use crate::specfun::MangoldtTable;
use num_complex::Complex64;
use std::f64::consts::PI;

/// Dense Gram assembly is O(N^2 * grid); keep it to desk scales.
pub const GRAM_MAX_N: usize = 128;

#[derive(Debug, Clone)]
pub struct GramMatrix {
    n_max: usize,
    /// Row-major, real symmetric (symmetrised after the Hermiticity check).
    entries: Vec<f64>,
    hermiticity_defect: f64,
    im_residue: f64,
    arch_error: f64,
}

impl GramMatrix {
    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn dimension(&self) -> usize {
        2 * self.n_max + 1
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn entry(&self, j: i64, k: i64) -> f64 {
        let n = self.dimension();
        let off = self.n_max as i64;
        self.entries[(j + off) as usize * n + (k + off) as usize]
    }

    /// `max |G_jk - conj(G_kj)|` over the independently computed entries.
    pub fn hermiticity_defect(&self) -> f64 {
        self.hermiticity_defect
    }

    pub fn im_residue(&self) -> f64 {
        self.im_residue
    }

    pub fn arch_error(&self) -> f64 {
        self.arch_error
    }
}

/// Cross-correlation `F_jk(x) = Int g_j(y) conj(g_k(y - x)) dy` of two
/// window modes; supported on `(-2 ell, 2 ell)` and piecewise exponential.
fn cross_correlation(ell: f64, j: i64, k: i64, x: f64) -> Complex64 {
    if x.abs() >= 2.0 * ell {
        return Complex64::new(0.0, 0.0);
    }
    let omega_j = PI * j as f64 / ell;
    let omega_k = PI * k as f64 / ell;
    if j == k {
        return Complex64::from_polar(1.0 - x.abs() / (2.0 * ell), omega_k * x);
    }
    let delta = omega_j - omega_k;
    let sign = if (j - k).rem_euclid(2) == 0 {
        1.0
    } else {
        -1.0
    };
    let phase = Complex64::from_polar(1.0, omega_k * x);
    let osc = Complex64::from_polar(1.0, delta * x);
    let num = if x >= 0.0 {
        Complex64::new(1.0, 0.0) - osc
    } else {
        osc - Complex64::new(1.0, 0.0)
    };
    phase * num * sign / (Complex64::new(0.0, delta) * 2.0 * ell)
}

/// `Int_0^{2 ell} e^{c x} dx` and `Int_{-2 ell}^0 e^{c x} dx`.
fn exp_int_pos(c: Complex64, two_ell: f64) -> Complex64 {
    ((c * two_ell).exp() - 1.0) / c
}
fn exp_int_neg(c: Complex64, two_ell: f64) -> Complex64 {
    (Complex64::new(1.0, 0.0) - (-c * two_ell).exp()) / c
}

/// Pole term `F^(i/2) + F^(-i/2) = Int F(x) 2 cosh(x/2) dx` in closed form.
fn pole_pair(ell: f64, j: i64, k: i64) -> Complex64 {
    let two_ell = 2.0 * ell;
    let omega_j = PI * j as f64 / ell;
    let omega_k = PI * k as f64 / ell;
    let mut total = Complex64::new(0.0, 0.0);
    for s in [0.5f64, -0.5] {
        if j == k {
            // Int_{-L}^{L} (1 - |x|/L) e^{cx} dx = (e^{Lc} + e^{-Lc} - 2)/(L c^2),
            // the triangle transform at the complex frequency c = s + i w.
            let c = Complex64::new(s, omega_k);
            total += ((c * two_ell).exp() + (-c * two_ell).exp() - 2.0) / (c * c * two_ell);
        } else {
            let delta = omega_j - omega_k;
            let sign = if (j - k).rem_euclid(2) == 0 {
                1.0
            } else {
                -1.0
            };
            let scale = sign / (Complex64::new(0.0, delta) * two_ell);
            let ck = Complex64::new(s, omega_k);
            let cj = Complex64::new(s, omega_j);
            // x >= 0: (e^{ck x} - e^{cj x}); x < 0: (e^{cj x} - e^{ck x}).
            let pos = exp_int_pos(ck, two_ell) - exp_int_pos(cj, two_ell);
            let neg = exp_int_neg(cj, two_ell) - exp_int_neg(ck, two_ell);
            total += scale * (pos + neg);
        }
    }
    total
}

/// Weil Gram matrix. Entries are computed independently for `(j, k)` and
/// `(k, j)`; Hermiticity within 1e-9 is verified, then the matrix is
/// symmetrised for the eigensolver.
pub fn weil_gram(ell: f64, n_max: usize, mangoldt: &MangoldtTable, tol: f64) -> Result<GramMatrix> {
    if n_max > GRAM_MAX_N {
        return Err(Error::GramTooLarge {
            requested: n_max,
            max: GRAM_MAX_N,
        });
    }
    let two_ell = 2.0 * ell;
    mangoldt.require_limit(two_ell.exp().floor() as u64)?;
    // Size the grid from the worst pair bound, not the mode bound: the
    // pair tail carries extra 1/(T0 - omega_max)^3 terms.
    let mut min_panels = 4 * n_max;
    let kernel = loop {
        let kernel = ArchKernel::build_with_min_panels(ell, n_max, tol, min_panels)?;
        let worst = kernel.pair_integral(n_max as i64, n_max as i64).1;
        if worst <= tol {
            break kernel;
        }
        min_panels = min_panels * 2 + 64;
        if min_panels > 1 << 20 {
            return Err(Error::TailBound {
                tail_bound: worst,
                tol,
            });
        }
    };
    let primes: Vec<(f64, f64)> = mangoldt
        .entries()
        .iter()
        .take_while(|e| ((e.n as f64).ln()) < two_ell)
        .map(|e| ((e.n as f64).ln(), e.weight / (e.n as f64).sqrt()))
        .collect();

    let dim = 2 * n_max + 1;
    let off = n_max as i64;
    let ln_pi = PI.ln();
    let mut complex_entries = vec![Complex64::new(0.0, 0.0); dim * dim];
    let mut arch_error = 0.0f64;
    for j in -off..=off {
        for k in -off..=off {
            let mut value = pole_pair(ell, j, k);
            let mut prime = Complex64::new(0.0, 0.0);
            for &(log_n, weight) in &primes {
                prime += (cross_correlation(ell, j, k, log_n)
                    + cross_correlation(ell, j, k, -log_n))
                    * weight;
            }
            value -= prime;
            let (integral, err) = kernel.pair_integral(j, k);
            if err > tol {
                return Err(Error::TailBound {
                    tail_bound: err,
                    tol,
                });
            }
            arch_error = arch_error.max(err);
            let f0 = if j == k { 1.0 } else { 0.0 };
            value += Complex64::new(-f0 * ln_pi + integral / (2.0 * PI), 0.0);
            complex_entries[(j + off) as usize * dim + (k + off) as usize] = value;
        }
    }

    let scale = complex_entries.iter().fold(0.0f64, |m, z| m.max(z.norm()));
    let mut hermiticity_defect = 0.0f64;
    let mut im_residue = 0.0f64;
    for a in 0..dim {
        for b in 0..dim {
            let jk = complex_entries[a * dim + b];
            let kj = complex_entries[b * dim + a];
            hermiticity_defect = hermiticity_defect.max((jk - kj.conj()).norm());
            im_residue = im_residue.max(jk.im.abs());
        }
    }
    if hermiticity_defect > 1e-9 * scale.max(1.0) {
        return Err(Error::InvalidArgument(format!(
            "Gram matrix fails the Hermiticity check: defect {hermiticity_defect:e}"
        )));
    }
    let mut entries = vec![0.0; dim * dim];
    for a in 0..dim {
        for b in 0..dim {
            entries[a * dim + b] =
                0.5 * (complex_entries[a * dim + b].re + complex_entries[b * dim + a].re);
        }
    }
    Ok(GramMatrix {
        n_max,
        entries,
        hermiticity_defect,
        im_residue,
        arch_error,
    })
}

/// Minimal eigenvalue and its unit eigenvector.
pub fn min_eigenpair(gram: &GramMatrix) -> Result<(f64, Vec<f64>)> {
    let n = gram.dimension();
    let mut a = gram.entries.clone();
    let (values, vectors) = eigh(&mut a, n, true)?;
    let v = vectors.expect("vectors requested");
    let column: Vec<f64> = (0..n).map(|r| v[r * n]).collect();
    Ok((values[0], column))
}
