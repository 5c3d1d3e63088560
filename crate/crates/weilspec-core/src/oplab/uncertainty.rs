//! Position/generator uncertainty products and the compressed-commutator
//! report.

use super::basis::FourierBasis;
use super::operator::{build_position, build_position_squared, ConstrainedOperator};
use crate::error::{Error, Result};
use num_complex::Complex64;

#[derive(Debug, Clone, Copy)]
pub struct UncertaintyReport {
    /// Position spread `sigma_u` of the state; always at most the window
    /// half-width `ell`.
    pub sigma_u: f64,
    /// Spread of the constrained operator on the state.
    pub sigma_zeta: f64,
    /// The Heisenberg product `sigma_u * sigma_zeta` (reported, not asserted).
    pub product: f64,
}

fn norm_sqr(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum()
}

/// Spreads of a unit state under the position matrix and the constrained
/// operator: `sigma^2 = <psi, A^2 psi> - <psi, A psi>^2`.
///
/// Asserts the premise `sigma_u <= ell` (position is bounded by the window,
/// so a fortiori `sigma_u <= 2 ln lambda`).
pub fn uncertainty_report(
    psi: &[Complex64],
    basis: &FourierBasis,
    op: &ConstrainedOperator,
) -> Result<UncertaintyReport> {
    let n = basis.dimension();
    assert_eq!(psi.len(), n);
    assert_eq!(op.dimension(), n);
    let norm = norm_sqr(psi).sqrt();
    if (norm - 1.0).abs() > 1e-10 {
        return Err(Error::NonUnitState { norm });
    }

    // Position side. The second moment uses the matrix of the full x^2 on
    // the span (not the square of the compressed X): for a state inside the
    // window this is the true position variance, which |x| <= ell bounds.
    let x = build_position(basis);
    let x2 = build_position_squared(basis);
    let mut mean_x = Complex64::new(0.0, 0.0);
    let mut mean_x2 = Complex64::new(0.0, 0.0);
    for i in 0..n {
        let mut xi_row = Complex64::new(0.0, 0.0);
        let mut x2_row = Complex64::new(0.0, 0.0);
        for j in 0..n {
            xi_row += x[i * n + j] * psi[j];
            x2_row += x2[i * n + j] * psi[j];
        }
        mean_x += psi[i].conj() * xi_row;
        mean_x2 += psi[i].conj() * x2_row;
    }
    debug_assert!(mean_x.im.abs() < 1e-9, "position expectation must be real");
    debug_assert!(mean_x2.im.abs() < 1e-9);
    let sigma_u_sq = mean_x2.re - mean_x.re * mean_x.re;
    let sigma_u = sigma_u_sq.max(0.0).sqrt();
    let ell = basis.window().half_width();
    assert!(
        sigma_u <= ell * (1.0 + 1e-9) + 1e-12,
        "sigma_u = {sigma_u} exceeds the window half-width {ell}"
    );

    // Generator side: D is real symmetric; apply it to both components.
    let re: Vec<f64> = psi.iter().map(|z| z.re).collect();
    let im: Vec<f64> = psi.iter().map(|z| z.im).collect();
    let mut dre = vec![0.0; n];
    let mut dim = vec![0.0; n];
    op.apply(&re, &mut dre);
    op.apply(&im, &mut dim);
    let d_psi: Vec<Complex64> = dre
        .iter()
        .zip(&dim)
        .map(|(&a, &b)| Complex64::new(a, b))
        .collect();
    let mean_d: Complex64 = psi.iter().zip(&d_psi).map(|(p, q)| p.conj() * q).sum();
    let sigma_zeta_sq = norm_sqr(&d_psi) - mean_d.re * mean_d.re;
    let sigma_zeta = sigma_zeta_sq.max(0.0).sqrt();

    Ok(UncertaintyReport {
        sigma_u,
        sigma_zeta,
        product: sigma_u * sigma_zeta,
    })
}

/// One row of the compressed-commutator report.
#[derive(Debug, Clone, Copy)]
pub struct CommutatorRow {
    /// Block half-size; the block spans mode indices `-m..=m`.
    pub m: usize,
    pub block_dim: usize,
    /// `max |C_jk - delta_jk|` over the block, `C = i(XM - MX)`.
    pub max_deviation: f64,
    /// Frobenius norm of `C - I` over the block.
    pub frobenius_deviation: f64,
}

/// Deviation of central blocks of `i(XM - MX)` from the identity, emitted
/// as a table. For this periodic basis the compressed commutator equals
/// `s s^T - I` exactly (`s_k = (-1)^k`), so the deviation does not shrink;
/// the table documents that behaviour rather than asserting convergence.
pub fn commutator_identity_table(basis: &FourierBasis, half_sizes: &[usize]) -> Vec<CommutatorRow> {
    let n = basis.dimension();
    let x = build_position(basis);
    let mu: Vec<f64> = basis.frequencies();
    let mut rows = Vec::new();
    for &m in half_sizes {
        let m = m.min(basis.n_max());
        let lo = basis.n_max() - m;
        let hi = basis.n_max() + m;
        let mut max_dev = 0.0f64;
        let mut fro = 0.0f64;
        for j in lo..=hi {
            for k in lo..=hi {
                // (XM - MX)_{jk} = X_jk (mu_k - mu_j)
                let c = Complex64::new(0.0, 1.0) * x[j * n + k] * (mu[k] - mu[j]);
                let target = if j == k { 1.0 } else { 0.0 };
                let dev = (c - target).norm();
                max_dev = max_dev.max(dev);
                fro += dev * dev;
            }
        }
        rows.push(CommutatorRow {
            m,
            block_dim: 2 * m + 1,
            max_deviation: max_dev,
            frobenius_deviation: fro.sqrt(),
        });
    }
    rows
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oplab::basis::LogWindow;
    use crate::oplab::operator::{build_generator, constrain_kill};

    fn setup(lambda: f64, n_max: usize) -> (FourierBasis, ConstrainedOperator) {
        let basis = FourierBasis::new(LogWindow::new(lambda).unwrap(), n_max);
        let mu = build_generator(&basis);
        let dim = basis.dimension();
        let raw: Vec<f64> = (0..dim)
            .map(|i| 1.0 + 0.2 * (((i * i) % 13) as f64 / 13.0))
            .collect();
        // Symmetrise to an even vector and normalise.
        let mut even = raw.clone();
        for i in 0..dim {
            even[i] = 0.5 * (raw[i] + raw[dim - 1 - i]);
        }
        let norm: f64 = even.iter().map(|x| x * x).sum::<f64>().sqrt();
        for x in even.iter_mut() {
            *x /= norm;
        }
        let op = constrain_kill(mu, &even).unwrap();
        (basis, op)
    }

    #[test]
    fn center_mode_position_spread() {
        // psi = phi_0: sigma_u^2 = <phi_0, x^2 phi_0> = ell^2 / 3.
        let (basis, op) = setup(50.0, 8);
        let n = basis.dimension();
        let mut psi = vec![Complex64::new(0.0, 0.0); n];
        psi[basis.offset(0)] = Complex64::new(1.0, 0.0);
        let rep = uncertainty_report(&psi, &basis, &op).unwrap();
        let ell = basis.window().half_width();
        assert!((rep.sigma_u - ell / 3f64.sqrt()).abs() < 1e-12);
        assert!(rep.sigma_u <= ell);
    }

    #[test]
    fn kernel_state_has_zero_generator_spread() {
        let (basis, op) = setup(20.0, 6);
        let psi: Vec<Complex64> = op
            .xi_hat()
            .iter()
            .map(|&x| Complex64::new(x, 0.0))
            .collect();
        let rep = uncertainty_report(&psi, &basis, &op).unwrap();
        assert!(rep.sigma_zeta < 1e-10 * op.diag_norm());
    }

    #[test]
    fn rejects_non_unit_state() {
        let (basis, op) = setup(10.0, 3);
        let psi = vec![Complex64::new(1.0, 0.0); basis.dimension()];
        assert!(matches!(
            uncertainty_report(&psi, &basis, &op),
            Err(Error::NonUnitState { .. })
        ));
    }

    #[test]
    fn commutator_equals_sign_dyad_minus_identity() {
        // i(XM - MX) = s s^T - I with s_k = (-1)^k: deviation from the
        // identity is exactly 1 in every block entry magnitude.
        let basis = FourierBasis::new(LogWindow::new(30.0).unwrap(), 12);
        let rows = commutator_identity_table(&basis, &[1, 3, 6]);
        for row in rows {
            assert!((row.max_deviation - 1.0).abs() < 1e-12);
            let dim = row.block_dim as f64;
            // ||ss^T - 2I_block + I...||_F for the exact structure:
            // diag entries deviate by 1, off-diag by 1.
            assert!((row.frobenius_deviation - dim).abs() < 1e-9);
        }
    }
}
