//! The truncated Weil vector on the window basis.

use super::gram::{min_eigenpair, weil_gram};
use super::kernel::ArchKernel;
use super::testfn::WindowedTestFunction;
use crate::error::{Error, Result};
use crate::specfun::MangoldtTable;
use num_complex::Complex64;
use std::f64::consts::PI;

/// Which reading of "the vector corresponding to the truncated Weil
/// quadratic form" to construct.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum XiMethod {
    /// Riesz representative of `f -> W(f)` on the span:
    /// `xi_k = W(phi_k)`. The default.
    Riesz,
    /// Unit eigenvector of the minimal eigenvalue of the Weil Gram matrix,
    /// sign-normalised so the centre component is non-negative.
    Gram,
}

impl XiMethod {
    pub fn as_str(&self) -> &'static str {
        match self {
            XiMethod::Riesz => "riesz",
            XiMethod::Gram => "gram",
        }
    }
}

/// Coefficients of the truncated Weil vector, `k = -N..N`, real after the
/// imaginary residue of the complex evaluation has been checked.
#[derive(Debug, Clone)]
pub struct XiVector {
    half_width: f64,
    n_max: usize,
    components: Vec<f64>,
    norm: f64,
    method: XiMethod,
    im_residue: f64,
    min_gram_eigenvalue: Option<f64>,
}

impl XiVector {
    pub fn half_width(&self) -> f64 {
        self.half_width
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn dimension(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[f64] {
        &self.components
    }

    /// Component of mode `k` (`k = -N..N`).
    pub fn component(&self, k: i64) -> f64 {
        self.components[(self.n_max as i64 + k) as usize]
    }

    pub fn norm(&self) -> f64 {
        self.norm
    }

    pub fn method(&self) -> XiMethod {
        self.method
    }

    /// Largest imaginary part seen before the real cast.
    pub fn im_residue(&self) -> f64 {
        self.im_residue
    }

    /// Minimal Gram eigenvalue (gram method only); its sign is reported,
    /// never asserted; truncation may break positivity.
    pub fn min_gram_eigenvalue(&self) -> Option<f64> {
        self.min_gram_eigenvalue
    }

    /// `max_k |xi_k - xi_{-k}|`.
    pub fn evenness_defect(&self) -> f64 {
        let n = self.n_max as i64;
        (1..=n)
            .map(|k| (self.component(k) - self.component(-k)).abs())
            .fold(0.0, f64::max)
    }

    /// Unit-normalised copy of the components.
    pub fn unit(&self) -> Vec<f64> {
        self.components.iter().map(|x| x / self.norm).collect()
    }
}

const IM_RESIDUE_FACTOR: f64 = 1e-9;

/// Build the truncated Weil vector for the window `[-ell, ell]` and mode
/// cutoff `n_max`. `tol` is the archimedean quadrature budget per entry.
pub fn build_xi(
    ell: f64,
    n_max: usize,
    mangoldt: &MangoldtTable,
    tol: f64,
    method: XiMethod,
) -> Result<XiVector> {
    if !ell.is_finite() || ell <= 0.0 {
        return Err(Error::LogDomain {
            what: "window half-width",
            value: ell,
        });
    }
    assert!(n_max >= 1, "need at least one nonzero mode");
    match method {
        XiMethod::Riesz => build_riesz(ell, n_max, mangoldt, tol),
        XiMethod::Gram => build_gram(ell, n_max, mangoldt, tol),
    }
}

fn build_riesz(ell: f64, n_max: usize, mangoldt: &MangoldtTable, tol: f64) -> Result<XiVector> {
    mangoldt.require_limit(ell.exp().floor() as u64)?;
    let kernel = ArchKernel::build(ell, n_max, tol)?;
    let amp = 1.0 / (2.0 * ell).sqrt();
    let ln_pi = PI.ln();

    // Prime-power data shared across modes.
    let primes: Vec<(f64, f64)> = mangoldt
        .entries()
        .iter()
        .take_while(|e| ((e.n as f64).ln()) < ell)
        .map(|e| ((e.n as f64).ln(), e.weight / (e.n as f64).sqrt()))
        .collect();

    let n = n_max as i64;
    let mut complex_components = Vec::with_capacity(2 * n_max + 1);
    for k in -n..=n {
        let f = WindowedTestFunction::fourier_mode(ell, k);
        // Pole: complex pair sum.
        let (plus, minus) = f.h_exp_moments();
        let mut value = plus + minus;
        // Prime side: complex g evaluations.
        let omega = PI * k as f64 / ell;
        let mut prime = Complex64::new(0.0, 0.0);
        for &(log_n, weight) in &primes {
            let g_pair = Complex64::from_polar(amp, omega * log_n)
                + Complex64::from_polar(amp, -omega * log_n);
            prime += g_pair * weight;
        }
        value -= prime;
        // Archimedean: -g(0) ln pi + (1/2pi) Int h K.
        let (integral, err) = kernel.mode_integral(k);
        if err > tol {
            return Err(Error::TailBound {
                tail_bound: err,
                tol,
            });
        }
        value += Complex64::new(-amp * ln_pi + integral / (2.0 * PI), 0.0);
        complex_components.push(value);
    }

    let max_abs = complex_components
        .iter()
        .fold(0.0f64, |m, z| m.max(z.norm()));
    let im_residue = complex_components
        .iter()
        .fold(0.0f64, |m, z| m.max(z.im.abs()));
    let limit = IM_RESIDUE_FACTOR * max_abs;
    if im_residue > limit {
        return Err(Error::ImaginaryResidue {
            residue: im_residue,
            limit,
        });
    }
    let components: Vec<f64> = complex_components.iter().map(|z| z.re).collect();
    let norm = components.iter().map(|x| x * x).sum::<f64>().sqrt();
    assert!(norm > 0.0, "Weil vector must not vanish for lambda > 1");
    Ok(XiVector {
        half_width: ell,
        n_max,
        components,
        norm,
        method: XiMethod::Riesz,
        im_residue,
        min_gram_eigenvalue: None,
    })
}

fn build_gram(ell: f64, n_max: usize, mangoldt: &MangoldtTable, tol: f64) -> Result<XiVector> {
    let gram = weil_gram(ell, n_max, mangoldt, tol)?;
    let (min_eigenvalue, mut vector) = min_eigenpair(&gram)?;
    // Sign normalisation: centre component non-negative.
    if vector[n_max] < 0.0 {
        for x in vector.iter_mut() {
            *x = -*x;
        }
    }
    let candidate = XiVector {
        half_width: ell,
        n_max,
        components: vector,
        norm: 1.0,
        method: XiMethod::Gram,
        im_residue: gram.im_residue(),
        min_gram_eigenvalue: Some(min_eigenvalue),
    };
    let max_abs = candidate
        .components
        .iter()
        .fold(0.0f64, |m, x| m.max(x.abs()));
    let defect = candidate.evenness_defect();
    if defect > 1e-8 * max_abs {
        return Err(Error::InvalidArgument(format!(
            "gram minimal eigenvector is not even (defect {defect:e}); \
             the minimal eigenvalue lives in the odd parity sector here"
        )));
    }
    Ok(candidate)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weil::dist::{w_arch, w_pole, w_prime};

    #[test]
    fn accounting_identity_small_case() {
        // xi_k = w_pole(phi_k) + w_arch(phi_k) + w_prime(phi_k), ell=1, N=1.
        let table = MangoldtTable::sieve(10);
        let xi = build_xi(1.0, 1, &table, 1e-9, XiMethod::Riesz).unwrap();
        for k in [-1i64, 0, 1] {
            let f = WindowedTestFunction::fourier_mode(1.0, k);
            let expect = w_pole(&f) + w_arch(&f, 1e-9).unwrap().0 + w_prime(&f, &table).unwrap();
            assert!(
                (xi.component(k) - expect).abs() < 1e-9,
                "k = {k}: {} vs {expect}",
                xi.component(k)
            );
        }
    }

    #[test]
    fn even_components_brute_force_both_sides() {
        let ell = 50f64.ln();
        let table = MangoldtTable::sieve(50);
        let xi = build_xi(ell, 25, &table, 1e-9, XiMethod::Riesz).unwrap();
        for k in 1..=25i64 {
            assert!(
                (xi.component(k) - xi.component(-k)).abs() <= 1e-10,
                "k = {k}"
            );
        }
        assert!(xi.evenness_defect() <= 1e-10);
    }

    #[test]
    fn reality_residue_is_tracked() {
        let table = MangoldtTable::sieve(10);
        let xi = build_xi(1.0, 1, &table, 1e-9, XiMethod::Riesz).unwrap();
        let max_abs = xi.components().iter().fold(0.0f64, |m, x| m.max(x.abs()));
        assert!(xi.im_residue() <= 1e-9 * max_abs);
        assert!(xi.norm() > 0.0);
    }

    #[test]
    fn sieve_capacity_is_checked() {
        let table = MangoldtTable::sieve(10);
        match build_xi(50f64.ln(), 5, &table, 1e-8, XiMethod::Riesz) {
            // floor(exp(ln 50)) is 49 or 50 depending on the rounding of exp.
            Err(Error::SieveCapacity { needed, .. }) => assert!((49..=50).contains(&needed)),
            other => panic!("expected capacity error, got {other:?}"),
        }
    }
}
