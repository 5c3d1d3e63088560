//! Hardy Z-function on the critical line, used to verify ingested zero
//! tables: `Z(t) = exp(i theta(t)) zeta(1/2 + it)` is real and changes
//! sign exactly at the on-line zeros.

use super::table::ZerosTable;
use crate::error::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::PI;

/// Bernoulli numbers B_2, B_4, ..., B_24.
const BERNOULLI: [f64; 12] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
];

/// Riemann-Siegel phase `theta(t) = arg Gamma(1/4 + it/2) - (t/2) ln pi`,
/// by its asymptotic expansion; accurate to ~1e-10 for `t >= 10`.
pub fn riemann_siegel_theta(t: f64) -> f64 {
    assert!(t >= 10.0, "theta expansion used below t = 10");
    let t2 = t * t;
    t / 2.0 * (t / (2.0 * PI)).ln() - t / 2.0 - PI / 8.0
        + 1.0 / (48.0 * t)
        + 7.0 / (5760.0 * t * t2)
        + 31.0 / (80640.0 * t * t2 * t2)
}

/// `zeta(1/2 + it)` by Euler-Maclaurin summation. Desk-fast for `|t|`
/// up to a few hundred; the verification cap keeps usage at `t <= ~160`.
pub fn zeta_half_line(t: f64) -> Complex64 {
    let s = Complex64::new(0.5, t);
    let m = (1.3 * t.abs() + 16.0).ceil() as usize;
    let mf = m as f64;

    let mut sum = Complex64::new(0.0, 0.0);
    for n in 1..m {
        let nf = n as f64;
        // n^{-s} = exp(-s ln n)
        sum += (-s * nf.ln()).exp();
    }
    let m_pow = (-s * mf.ln()).exp(); // M^{-s}
    sum += m_pow * mf / (s - 1.0); // M^{1-s}/(s-1)
    sum += m_pow * 0.5;

    // Correction terms B_{2k}/(2k)! * M^{1-s-2k} * prod_{j=0}^{2k-2}(s+j).
    let mut poly = s; // running product of (s + j)
    let mut factorial = 1.0f64; // (2k)!
    let mut m_shift = m_pow / mf; // M^{1-s-2k} starting at k=1: M^{-s-1}
    for (k, b) in BERNOULLI.iter().enumerate() {
        let two_k = 2 * (k + 1);
        factorial *= (two_k - 1) as f64 * two_k as f64;
        if k > 0 {
            let j0 = (two_k - 3) as f64;
            poly *= (s + j0) * (s + j0 + 1.0);
            m_shift /= mf * mf;
        }
        sum += poly * m_shift * (b / factorial);
    }
    sum
}

/// Hardy's real rotation of zeta on the critical line.
pub fn hardy_z(t: f64) -> f64 {
    let theta = riemann_siegel_theta(t);
    let z = Complex64::from_polar(1.0, theta) * zeta_half_line(t);
    debug_assert!(
        z.im.abs() <= 1e-8 * (1.0 + z.re.abs()),
        "Z(t) should be real, got {z} at t = {t}"
    );
    z.re
}

#[derive(Debug, Clone, Copy)]
pub struct ZeroCheck {
    /// 1-based index into the table.
    pub index: usize,
    pub gamma: f64,
    pub z_below: f64,
    pub z_above: f64,
    pub sign_change: bool,
    /// Smaller |Z| at the bracket edges; how much room the check had.
    pub margin: f64,
}

#[derive(Debug, Clone)]
pub struct ZeroCheckReport {
    pub rows: Vec<ZeroCheck>,
    pub tolerance: f64,
}

impl ZeroCheckReport {
    pub fn all_pass(&self) -> bool {
        self.rows.iter().all(|r| r.sign_change)
    }

    pub fn first_failure(&self) -> Option<&ZeroCheck> {
        self.rows.iter().find(|r| !r.sign_change)
    }
}

/// Cap on how many leading zeros the Euler-Maclaurin oracle verifies;
/// beyond this the count-consistency check takes over.
pub const VERIFY_CAP: usize = 50;

/// Sign-change report for the first `count` table ordinates, each bracketed
/// in `[gamma - tol, gamma + tol]`.
pub fn zero_check_report(table: &ZerosTable, count: usize, tol: f64) -> Result<ZeroCheckReport> {
    if count > VERIFY_CAP.min(table.count()) {
        return Err(Error::InvalidArgument(format!(
            "verification capped at the first {} zeros (requested {count}, table has {})",
            VERIFY_CAP,
            table.count()
        )));
    }
    if tol < 1e-6 {
        return Err(Error::InvalidArgument(format!(
            "bracket tolerance must be at least 1e-6 (got {tol:e})"
        )));
    }
    let mut rows = Vec::with_capacity(count);
    for index in 1..=count {
        let gamma = table.gamma(index);
        let z_below = hardy_z(gamma - tol);
        let z_above = hardy_z(gamma + tol);
        rows.push(ZeroCheck {
            index,
            gamma,
            z_below,
            z_above,
            sign_change: z_below.signum() != z_above.signum(),
            margin: z_below.abs().min(z_above.abs()),
        });
    }
    Ok(ZeroCheckReport {
        rows,
        tolerance: tol,
    })
}

/// As `zero_check_report`, but an error naming the first failing index.
pub fn verify_first_zeros(table: &ZerosTable, count: usize, tol: f64) -> Result<ZeroCheckReport> {
    let report = zero_check_report(table, count, tol)?;
    if let Some(fail) = report.first_failure() {
        return Err(Error::ZeroSignChange {
            index: fail.index,
            gamma: fail.gamma,
        });
    }
    Ok(report)
}
