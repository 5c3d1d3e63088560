//! Digamma on the right half-plane, specialised to the critical quarter-line.

use num_complex::Complex64;

// Stirling-series coefficients B_{2n}/(2n) for
// psi(z) ~ ln z - 1/(2z) - sum_n B_{2n} / (2n z^{2n}).
const STIRLING: [f64; 7] = [
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32760.0,
    1.0 / 12.0,
];

/// Minimum modulus at which the 7-term Stirling tail is below 1e-15.
const SHIFT_RADIUS: f64 = 10.0;

/// Complex digamma for Re z > 0: recurrence `psi(z) = psi(z+1) - 1/z`
/// shifts the argument up to |z| >= 10, then the asymptotic series applies.
pub fn digamma(z: Complex64) -> Complex64 {
    assert!(z.re > 0.0, "digamma implemented for Re z > 0 only");
    let mut shift = Complex64::new(0.0, 0.0);
    let mut w = z;
    while w.norm_sqr() < SHIFT_RADIUS * SHIFT_RADIUS {
        shift -= w.inv();
        w += 1.0;
    }
    let inv2 = w.inv() * w.inv();
    let mut series = Complex64::new(0.0, 0.0);
    let mut power = inv2;
    for c in STIRLING {
        series += power * c;
        power *= inv2;
    }
    shift + w.ln() - w.inv() * 0.5 - series
}

/// `Re psi(1/4 + i t/2)`, the archimedean kernel of the Weil distribution.
/// Even in `t`; absolute accuracy ~1e-13.
pub fn re_digamma_quarter_line(t: f64) -> f64 {
    assert!(t.is_finite());
    digamma(Complex64::new(0.25, 0.5 * t.abs())).re
}
