//! The Weil explicit-formula distribution
//!
//! ```text
//! W(g) = h(i/2) + h(-i/2) - g(0) ln pi
//!        + (1/2pi) Int h(t) Re psi(1/4 + it/2) dt
//!        - sum_{n>=2} Lambda(n) n^{-1/2} (g(ln n) + g(-ln n))
//! ```
//!
//! in the critical-line normalisation, for which `W(g) = sum_gamma h(gamma)`
//! over all nontrivial zeros (`gamma` and `-gamma` both counted).

use super::kernel::ArchKernel;
use super::testfn::WindowedTestFunction;
use crate::error::{Error, Result};
use crate::specfun::{integrate_adaptive_with_nodes, re_digamma_quarter_line, MangoldtTable};
use crate::zeros::{zero_count_estimate, ZerosTable};
use num_complex::Complex64;
use std::f64::consts::PI;

/// The three terms of `W` and their sum. Exactly
/// `total = pole_term + archimedean_term + prime_term` by construction.
#[derive(Debug, Clone, Copy)]
pub struct WeilBreakdown {
    pub pole_term: f64,
    pub archimedean_term: f64,
    pub prime_term: f64,
    pub total: f64,
    pub quadrature_error: f64,
}

/// Pole ("trivial zero") contribution `h(i/2) + h(-i/2)`.
pub fn w_pole(f: &WindowedTestFunction) -> f64 {
    let (plus, minus) = f.h_exp_moments();
    let sum = plus + minus;
    debug_assert!(sum.im.abs() <= 1e-12 * (1.0 + sum.re.abs()));
    sum.re
}

/// Prime-power side `-sum Lambda(n) n^{-1/2} (g(ln n) + g(-ln n))`,
/// a finite sum over `ln n` inside the support.
pub fn w_prime(f: &WindowedTestFunction, mangoldt: &MangoldtTable) -> Result<f64> {
    let support = f.support_half_width();
    mangoldt.require_limit(support.exp().floor() as u64)?;
    let mut sum = Complex64::new(0.0, 0.0);
    for entry in mangoldt.entries() {
        let log_n = (entry.n as f64).ln();
        if log_n >= support {
            break;
        }
        let weight = entry.weight / (entry.n as f64).sqrt();
        sum += (f.g(log_n) + f.g(-log_n)) * weight;
    }
    debug_assert!(sum.im.abs() <= 1e-10 * (1.0 + sum.re.abs()));
    Ok(-sum.re)
}

/// Archimedean term
/// `-g(0) ln pi + (1/2pi) Int h(t) Re psi(1/4 + it/2) dt`,
/// returned with its quadrature error (`<= tol` or an error is raised).
///
/// Mode windows go through the shared-grid kernel (the integrand is only
/// conditionally convergent; the analytic tail does the cancellation).
/// Fejer windows use adaptive panels split at the phase nodes plus a
/// four-fold integration-by-parts tail.
pub fn w_arch(f: &WindowedTestFunction, tol: f64) -> Result<(f64, f64)> {
    assert!(tol > 0.0);
    let g0 = f.g(0.0);
    debug_assert!(g0.im == 0.0);
    let (integral, err) = match *f {
        WindowedTestFunction::FourierMode { half_width, index } => {
            let kernel = ArchKernel::build(half_width, index.unsigned_abs() as usize, tol * PI)?;
            kernel.mode_integral(index)
        }
        WindowedTestFunction::Fejer { half_width } => fejer_arch_integral(half_width, tol * PI)?,
    };
    let err = err / (2.0 * PI);
    if err > tol {
        return Err(Error::TailBound {
            tail_bound: err,
            tol,
        });
    }
    Ok((-g0.re * PI.ln() + integral / (2.0 * PI), err))
}

/// `Int_R h(t) K(t) dt` for the fejer window: adaptive panels on
/// `[0, T0]` (the integrand is even), analytic tail past the cutoff.
fn fejer_arch_integral(a: f64, tol: f64) -> Result<(f64, f64)> {
    let f = WindowedTestFunction::fejer(a);
    // Grow the cutoff until the analytic-tail residual fits the budget.
    let mut t0 = f.node_at_or_above(200.0_f64.max(8.0 / a));
    let mut tail = fejer_tail(a, t0);
    for _ in 0..40 {
        if tail.bound <= 0.4 * tol {
            break;
        }
        t0 = f.node_at_or_above(t0 * 2.0);
        tail = fejer_tail(a, t0);
    }
    if tail.bound > 0.4 * tol {
        return Err(Error::TailBound {
            tail_bound: tail.bound,
            tol,
        });
    }
    let nodes = f.phase_nodes(t0);
    let mut integrand = |t: f64| 2.0 * f.h(t).re * re_digamma_quarter_line(t);
    let quad = integrate_adaptive_with_nodes(&mut integrand, 0.0, t0, 0.5 * tol, &nodes)?;
    Ok((quad.value + tail.value, quad.error_estimate + tail.bound))
}

struct Tail {
    value: f64,
    bound: f64,
}

/// `Int_{T0}^inf [h(t) + h(-t)] K(t) dt` for the fejer window, from
/// `K(t) = ln(t/2) - 1/(24 t^2) + r(t)`:
/// the non-oscillatory parts in closed form, the `cos(at)` parts by
/// integration by parts at a node (`sin(a T0) = 0`).
fn fejer_tail(a: f64, t0: f64) -> Tail {
    let l = (0.5 * t0).ln();
    let cos_a = (a * t0).cos().round(); // +-1 at a node
    debug_assert!((a * t0).sin().abs() < 1e-6);

    let log_part = (l + 1.0) / t0;
    let quad_part = -1.0 / (72.0 * t0.powi(3));
    // Int_T cos(at) v dt, v = ln(t/2)/t^2: boundary terms v', v'''.
    let v1 = (1.0 - 2.0 * l) / t0.powi(3);
    let v3 = (26.0 - 24.0 * l) / t0.powi(5);
    let osc_part = -cos_a * (-v1 / (a * a) + v3 / (a * a * a * a));

    let v4_int = (120.0 * (l + 0.2) + 154.0) / (5.0 * t0.powi(5));
    let bound = (4.0 / a)
        * (v4_int / (a * a * a * a) + 1.0 / (24.0 * a * t0.powi(4)) + 0.0044 / t0.powi(5));

    Tail {
        value: (4.0 / a) * (log_part + quad_part + osc_part),
        bound,
    }
}

/// Full Weil distribution with its per-term breakdown.
pub fn weil_eval(
    f: &WindowedTestFunction,
    mangoldt: &MangoldtTable,
    tol: f64,
) -> Result<WeilBreakdown> {
    let pole_term = w_pole(f);
    let prime_term = w_prime(f, mangoldt)?;
    let (archimedean_term, quadrature_error) = w_arch(f, tol)?;
    Ok(WeilBreakdown {
        pole_term,
        archimedean_term,
        prime_term,
        total: pole_term + archimedean_term + prime_term,
        quadrature_error,
    })
}

/// Zero side `sum_{j <= count} [h(gamma_j) + h(-gamma_j)]` with a bound on
/// the dropped tail: `2 Int_{gamma_count}^inf H(t) (1/2pi) ln(t/2pi) dt`
/// for the monotone envelope `H` of `|h|` and the zero-density main term.
/// `count = 0` returns `(0, +inf)` as an explicit no-information marker.
pub fn zero_side(f: &WindowedTestFunction, zeros: &ZerosTable, count: usize) -> (f64, f64) {
    if count == 0 {
        return (0.0, f64::INFINITY);
    }
    assert!(count <= zeros.count(), "not enough zeros in the table");
    let mut sum = 0.0;
    for j in 1..=count {
        let gamma = zeros.gamma(j);
        sum += f.h(gamma).re + f.h(-gamma).re;
    }
    let tail = match f.h_envelope() {
        Some((c, p)) => {
            debug_assert!(p == 2.0, "envelope exponent fixed at 2 here");
            // 2 * (1/2pi) Int_G^inf (c/t^2) ln(t/2pi) dt
            //   = (c/pi) (ln(G/2pi) + 1)/G.
            let g = zeros.gamma(count);
            (c / PI) * ((g / (2.0 * PI)).ln() + 1.0) / g
        }
        None => f64::INFINITY,
    };
    (sum, tail)
}

/// Two-sided check of the explicit formula on a concrete zero table.
#[derive(Debug, Clone)]
pub struct ExplicitFormulaReport {
    pub weil: WeilBreakdown,
    pub zero_sum: f64,
    pub difference: f64,
    pub tail_bound: f64,
    pub count: usize,
    pub tolerance: f64,
    pub pass: bool,
}

/// Evaluate both sides of `W(g) = sum_gamma h(gamma)` independently and
/// compare: `pass = |difference| <= tol + tail_bound + quadrature_error`.
///
/// Refused for test functions whose `|h|` has no integrable envelope
/// (sharp Fourier modes): the zero side then converges only conditionally
/// and a truncated sum carries no usable error bound.
pub fn verify_explicit_formula(
    f: &WindowedTestFunction,
    mangoldt: &MangoldtTable,
    zeros: &ZerosTable,
    count: usize,
    tol: f64,
) -> Result<ExplicitFormulaReport> {
    if f.h_envelope().is_none() {
        return Err(Error::ConditionallyConvergent {
            kind: f.kind_name().to_string(),
        });
    }
    zeros.require_count(count)?;
    let weil = weil_eval(f, mangoldt, (tol * 1e-4).max(1e-10))?;
    let (zero_sum, tail_bound) = zero_side(f, zeros, count);
    let difference = (weil.total - zero_sum).abs();
    let budget = tol + tail_bound + weil.quadrature_error;
    Ok(ExplicitFormulaReport {
        weil,
        zero_sum,
        difference,
        tail_bound,
        count,
        tolerance: tol,
        pass: difference <= budget,
    })
}

/// Consistency of a zero table against the counting main term:
/// `estimate(gamma_j)` should stay within `slack` of `j` for every entry.
pub fn count_consistency(zeros: &ZerosTable, slack: f64) -> Result<usize> {
    let mut worst = 0.0f64;
    for (i, &gamma) in zeros.ordinates().iter().enumerate() {
        let j = (i + 1) as f64;
        let estimate = zero_count_estimate(gamma)?;
        worst = worst.max((estimate - j).abs());
        if (estimate - j).abs() > slack {
            return Err(Error::InvalidArgument(format!(
                "zero-count estimate {estimate:.2} at gamma_{} = {gamma} strays \
                 beyond {slack} from its index",
                i + 1
            )));
        }
    }
    Ok(zeros.count())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::integrate_adaptive;

    fn sieve(limit: u64) -> MangoldtTable {
        MangoldtTable::sieve(limit)
    }

    #[test]
    fn pole_values() {
        let f = WindowedTestFunction::fourier_mode(1.0, 0);
        assert!((w_pole(&f) - 2.9477).abs() < 1e-4);
        let f = WindowedTestFunction::fourier_mode(1.0, 1);
        assert!((w_pole(&f) + 0.07283).abs() < 2e-5);
        let f = WindowedTestFunction::fejer(1.0);
        assert!((w_pole(&f) - 2.04202).abs() < 1e-5);
    }

    #[test]
    fn pole_cross_checked_by_quadrature() {
        // h(i/2) + h(-i/2) = Int g(x) 2 cosh(x/2) dx for real even parts.
        for f in [
            WindowedTestFunction::fejer(2.0),
            WindowedTestFunction::fourier_mode(1.3, 2),
        ] {
            let s = f.support_half_width();
            let quad = integrate_adaptive(|x| (f.g(x) * 2.0 * (0.5 * x).cosh()).re, -s, s, 1e-11)
                .unwrap()
                .value;
            assert!((w_pole(&f) - quad).abs() < 1e-9, "{f:?}");
        }
    }

    #[test]
    fn prime_term_hand_values() {
        let table = sieve(100);
        // fejer(a = 0.5): no prime power with ln n < 0.5.
        let f = WindowedTestFunction::fejer(0.5);
        assert_eq!(w_prime(&f, &table).unwrap(), 0.0);
        // fejer(a = 1): single term n = 2.
        let f = WindowedTestFunction::fejer(1.0);
        let expect = -2f64.ln() / 2f64.sqrt() * 2.0 * (1.0 - 2f64.ln());
        assert!((w_prime(&f, &table).unwrap() - expect).abs() < 1e-12);
        assert!((w_prime(&f, &table).unwrap() + 0.3008).abs() < 2e-4);
        // fourier_mode(ell = 1, k = 0): -ln 2.
        let f = WindowedTestFunction::fourier_mode(1.0, 0);
        assert!((w_prime(&f, &table).unwrap() + 2f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn prime_term_requires_sieve_capacity() {
        let table = sieve(10);
        let f = WindowedTestFunction::fejer(4.0); // needs primes to e^4 ~ 54
        match w_prime(&f, &table) {
            Err(Error::SieveCapacity { needed, available }) => {
                assert_eq!(needed, 54);
                assert_eq!(available, 10);
            }
            other => panic!("expected capacity error, got {other:?}"),
        }
    }

    #[test]
    #[allow(clippy::excessive_precision)]
    fn arch_matches_independent_oracles() {
        // mpmath references for Int h K dt (see kernel.rs for provenance).
        let cases = [
            (WindowedTestFunction::fejer(1.0), -3.194_848_755_549_015),
            (WindowedTestFunction::fejer(2.0), -8.801_003_614_047_624),
            (
                WindowedTestFunction::fourier_mode(1.0, 0),
                -7.687_116_809_580_866_5,
            ),
            (
                WindowedTestFunction::fourier_mode(1.0, 1),
                1.590_461_522_176_912_06,
            ),
        ];
        for (f, integral) in cases {
            let expect = -f.g(0.0).re * PI.ln() + integral / (2.0 * PI);
            let (value, err) = w_arch(&f, 1e-8).unwrap();
            assert!(err <= 1e-8);
            assert!(
                (value - expect).abs() <= err + 2e-8,
                "{f:?}: got {value}, expect {expect}"
            );
        }
    }

    #[test]
    fn fejer_arch_agrees_with_wide_cutoff_brute_force() {
        // Adaptive quadrature out to T = 1e5 with the dominant closed-form
        // tail appended; this is the coarse oracle, good to ~1e-7.
        let a = 2.0;
        let f = WindowedTestFunction::fejer(a);
        let t1 = f.node_at_or_above(1e5);
        let nodes = f.phase_nodes(t1);
        let mut integrand = |t: f64| 2.0 * f.h(t).re * re_digamma_quarter_line(t);
        let brute = integrate_adaptive_with_nodes(&mut integrand, 0.0, t1, 1e-7, &nodes)
            .unwrap()
            .value
            + (4.0 / a) * (((0.5 * t1).ln() + 1.0) / t1);
        let (value, _) = w_arch(&f, 1e-8).unwrap();
        let expect = -PI.ln() + brute / (2.0 * PI);
        assert!((value - expect).abs() < 1e-6, "got {value}, brute {expect}");
    }

    #[test]
    fn fejer_tail_consistent_with_panel_quadrature() {
        let a = 1.0;
        let f = WindowedTestFunction::fejer(a);
        let t0 = f.node_at_or_above(300.0);
        let t1 = f.node_at_or_above(3000.0);
        let near = fejer_tail(a, t0);
        let far = fejer_tail(a, t1);
        let nodes: Vec<f64> = f.phase_nodes(t1).into_iter().filter(|&t| t > t0).collect();
        let mut integrand = |t: f64| 2.0 * f.h(t).re * re_digamma_quarter_line(t);
        let between = integrate_adaptive_with_nodes(&mut integrand, t0, t1, 1e-11, &nodes)
            .unwrap()
            .value;
        assert!(
            (near.value - far.value - between).abs() <= near.bound + far.bound + 1e-10,
            "tail difference {:e} vs integral {between:e}",
            near.value - far.value
        );
    }

    #[test]
    fn breakdown_is_exact_accounting() {
        let table = sieve(60);
        let f = WindowedTestFunction::fourier_mode(50f64.ln(), 3);
        let b = weil_eval(&f, &table, 1e-9).unwrap();
        assert_eq!(b.total, b.pole_term + b.archimedean_term + b.prime_term);
        // And the terms match the standalone operations.
        assert_eq!(b.pole_term, w_pole(&f));
        assert_eq!(b.prime_term, w_prime(&f, &table).unwrap());
    }

    #[test]
    fn small_support_skips_primes() {
        let table = sieve(10);
        let f = WindowedTestFunction::fejer(0.25);
        let b = weil_eval(&f, &table, 1e-9).unwrap();
        assert_eq!(b.prime_term, 0.0);
        assert_eq!(b.total, b.pole_term + b.archimedean_term);
    }

    #[test]
    fn zero_side_without_zeros_is_marked() {
        let zeros = ZerosTable::from_ordinates(vec![14.134725141734694], "inline").unwrap();
        let f = WindowedTestFunction::fejer(2.0);
        let (sum, tail) = zero_side(&f, &zeros, 0);
        assert_eq!(sum, 0.0);
        assert!(tail.is_infinite());
    }

    #[test]
    fn mode_zero_side_is_refused_for_verification() {
        let zeros = ZerosTable::from_ordinates(vec![14.134725141734694], "inline").unwrap();
        let table = sieve(10);
        let f = WindowedTestFunction::fourier_mode(1.0, 0);
        match verify_explicit_formula(&f, &table, &zeros, 1, 1e-2) {
            Err(Error::ConditionallyConvergent { kind }) => assert_eq!(kind, "fourier_mode"),
            other => panic!("expected refusal, got {other:?}"),
        }
    }
}
