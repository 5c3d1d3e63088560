//! Shared quadrature grid for the archimedean term.
//!
//! The kernel `K(t) = Re psi(1/4 + it/2)` is test-function independent, so
//! one grid serves all 2N+1 window modes. Panels live between consecutive
//! sinc phase nodes `t = pi m / ell`; in the scaled coordinate
//! `tau = t ell / pi` a grid point is `tau = m + x` with `x` a fixed
//! Gauss-Legendre node in (0, 1), which keeps `tau -+ k` exact for every
//! mode index `k`. Beyond the cutoff `T0 = pi M / ell` the integral is
//! finished analytically: `K(t) = ln(t/2) - 1/(24 t^2) + r(t)` with
//! `|r(t)| <= 0.011 / t^4` for `t >= 4`, and the oscillatory pieces are
//! integrated by parts four times, with every boundary term evaluated and
//! the remainder bounded.

use crate::error::{Error, Result};
use crate::specfun::{gl15_unit, re_digamma_quarter_line};
use std::f64::consts::PI;

/// One grid point: panel index `m`, intra-panel coordinate `x in (0,1)`,
/// and precomputed products.
struct GridPoint {
    m: i64,
    x: f64,
    /// `weight * K(t) * sin(pi x) * (pi / ell)` (for single-sinc integrands).
    coeff: f64,
    /// `weight * K(t) * sin^2(pi x) / pi^2 * (pi / ell)` (for sinc pairs).
    coeff2: f64,
}

pub(crate) struct ArchKernel {
    ell: f64,
    /// Number of unit panels; the cutoff is `T0 = pi * panels / ell`.
    panels: usize,
    n_max: usize,
    points: Vec<GridPoint>,
}

/// Remainder after the asymptotic form of the kernel, valid for t >= 4.
const KERNEL_REMAINDER_C4: f64 = 0.011;

impl ArchKernel {
    /// Grid for modes `|k| <= n_max`, with the tail buffer sized so that the
    /// analytic-tail residual stays below `tol` for every mode.
    pub(crate) fn build(ell: f64, n_max: usize, tol: f64) -> Result<ArchKernel> {
        Self::build_with_min_panels(ell, n_max, tol, 0)
    }

    /// As `build`, but additionally requiring `panels >= min_panels`
    /// (the Gram tail wants `T0 >= 4 omega_max`, i.e. `panels >= 4 N`).
    pub(crate) fn build_with_min_panels(
        ell: f64,
        n_max: usize,
        tol: f64,
        min_panels: usize,
    ) -> Result<ArchKernel> {
        assert!(ell > 0.0 && tol > 0.0);
        let mut buffer = 64usize;
        let panels = loop {
            let panels = (n_max + buffer).max(min_panels + buffer);
            let worst = mode_tail_bound(ell, panels, n_max);
            if worst <= 0.5 * tol {
                break panels;
            }
            buffer *= 2;
            if buffer > 1 << 22 {
                return Err(Error::TailBound {
                    tail_bound: worst,
                    tol,
                });
            }
        };

        // Subdivide the panels nearest t = 0, where the kernel's complex
        // singularity at t = i/2 limits polynomial convergence.
        let near_splits = ((PI / ell) / 1.1).ceil().max(1.0) as usize;
        let gl = gl15_unit();
        let dt = PI / ell;
        let mut points = Vec::with_capacity(panels * 15 + near_splits * 30);
        for m in 0..panels {
            let splits = if m < 2 { near_splits } else { 1 };
            let sub = 1.0 / splits as f64;
            for s in 0..splits {
                let x0 = s as f64 * sub;
                for &(node, weight) in gl.iter() {
                    let x = x0 + sub * node;
                    let t = (m as f64 + x) * dt;
                    let k_val = re_digamma_quarter_line(t);
                    let w = weight * sub * dt * k_val;
                    let sin_pix = (PI * x).sin();
                    points.push(GridPoint {
                        m: m as i64,
                        x,
                        coeff: w * sin_pix,
                        coeff2: w * sin_pix * sin_pix / (PI * PI),
                    });
                }
            }
        }
        Ok(ArchKernel {
            ell,
            panels,
            n_max,
            points,
        })
    }

    pub(crate) fn cutoff(&self) -> f64 {
        PI * self.panels as f64 / self.ell
    }

    /// `Int_R h_k(t) K(t) dt` for the window mode `k`, with an error bound.
    ///
    /// On the grid, `h_k(t) + h_k(-t) = sqrt(2 ell) (-1)^(m+k) sin(pi x)
    /// [1/(pi(m-k+x)) + 1/(pi(m+k+x))]`.
    pub(crate) fn mode_integral(&self, k: i64) -> (f64, f64) {
        let ka = k.unsigned_abs() as usize;
        assert!(ka <= self.n_max, "mode {k} beyond kernel capacity");
        let mut sum = 0.0;
        let mut sum_abs = 0.0;
        for p in &self.points {
            let sign = if (p.m + k) & 1 == 0 { 1.0 } else { -1.0 };
            let da = PI * ((p.m - k) as f64 + p.x);
            let db = PI * ((p.m + k) as f64 + p.x);
            let term = sign * p.coeff * (1.0 / da + 1.0 / db);
            sum += term;
            sum_abs += term.abs();
        }
        let amp = (2.0 * self.ell).sqrt();
        let (tail, bound) = self.mode_tail(k);
        let roundoff = f64::EPSILON * (self.points.len() as f64).sqrt() * amp * sum_abs;
        (amp * sum + tail, bound + roundoff)
    }

    /// Tail `Int_{T0}^inf [h_k(t) + h_k(-t)] K(t) dt` for mode `k` (without
    /// the `sqrt(2 ell)` amplitude folded into the value? -- amplitude is
    /// included), plus a rigorous bound on everything dropped.
    fn mode_tail(&self, k: i64) -> (f64, f64) {
        let ell = self.ell;
        let amp = (2.0 * ell).sqrt();
        let m = self.panels as i64;
        let ka = k.abs();
        let t0 = self.cutoff();
        let mut value = 0.0;
        let mut bound = 0.0;
        for c_sign in [-1i64, 1] {
            // Branch sinc((t + c) ell), c = c_sign * omega_k.
            let shift = c_sign * ka;
            let a = PI * (m + shift) as f64 / ell; // lower limit after u = t + c
            let cos_a = if (m + shift) & 1 == 0 { 1.0 } else { -1.0 };
            let _ = shift; // shift folded into a and cos_a

            // ln(t/2) part: v(u) = ln((u - c)/2) / u, boundary terms with
            // q = 1/(u-c) at u = A (where u - c = T0).
            let q = 1.0 / t0;
            let l = (0.5 * t0).ln();
            let v0 = l / a;
            let v2 = -q * q / a - 2.0 * q / (a * a) + 2.0 * l / (a * a * a);
            value += amp / ell * cos_a * (v0 / ell - v2 / (ell * ell * ell));
            bound += amp / ell * v4_integral_bound(a, t0, l) / (ell * ell * ell * ell);

            // -1/(24 t^2) part: p(u) = 1/(u (u-c)^2), one boundary term.
            let p0 = 1.0 / (a * t0 * t0);
            value -= amp / (24.0 * ell * ell) * cos_a * p0;
            let a_min = a.min(t0);
            bound += amp / (24.0 * ell * ell)
                * (1.0 / (t0 * t0 * a) + 2.0 / (3.0 * a_min * a_min * a_min));

            // Kernel remainder r(t).
            bound += amp / ell * KERNEL_REMAINDER_C4 / (a_min * 3.0 * t0 * t0 * t0);
        }
        (value, bound)
    }

    /// `Int_R h_j(t) conj(h_k(t)) K(t) dt` for a mode pair (Gram entries),
    /// with an error bound. Requires `T0 >= 4 omega_max` for the tail
    /// series; `build_with_min_panels(.., 4 * n_max)` guarantees it.
    pub(crate) fn pair_integral(&self, j: i64, k: i64) -> (f64, f64) {
        let ja = j.unsigned_abs() as usize;
        let ka = k.unsigned_abs() as usize;
        assert!(ja <= self.n_max && ka <= self.n_max);
        let mut sum = 0.0;
        let mut sum_abs = 0.0;
        let sign = if (j + k) & 1 == 0 { 1.0 } else { -1.0 };
        for p in &self.points {
            let pj = (p.m + j) as f64 + p.x;
            let pk = (p.m + k) as f64 + p.x;
            let mj = (p.m - j) as f64 + p.x;
            let mk = (p.m - k) as f64 + p.x;
            let term = sign * p.coeff2 * (1.0 / (pj * pk) + 1.0 / (mj * mk));
            sum += term;
            sum_abs += term.abs();
        }
        let (tail, bound) = self.pair_tail(j, k);
        let roundoff = f64::EPSILON * (self.points.len() as f64).sqrt() * 2.0 * self.ell * sum_abs;
        (2.0 * self.ell * sum + tail, bound + roundoff)
    }

    /// Tail for the pair integrand
    /// `F(t) = (-1)^(j+k) (1 - cos(2 t ell)) G(t) / ell` with
    /// `G(t) = 1/((t+wj)(t+wk)) + 1/((t-wj)(t-wk))`.
    fn pair_tail(&self, j: i64, k: i64) -> (f64, f64) {
        let ell = self.ell;
        let t0 = self.cutoff();
        let wj = PI * j as f64 / ell;
        let wk = PI * k as f64 / ell;
        let w_max = wj.abs().max(wk.abs());
        debug_assert!(t0 >= 4.0 * w_max || w_max == 0.0);
        let sign = if (j + k) & 1 == 0 { 1.0 } else { -1.0 };
        let a_gap = t0 - w_max;

        // Non-oscillatory part: series in 1/t of
        // Int G(t) (ln(t/2) - 1/(24 t^2)) dt over [T0, inf).
        let l0 = (0.5 * t0).ln();
        let mut non_osc = 0.0;
        for (a, b) in [(-wj, -wk), (wj, wk)] {
            // 1/((t-a)(t-b)) = sum_m h_m / t^(m+2).
            let mut h = 1.0; // h_0
            let mut h_prev = 0.0;
            let mut t_pow = t0; // T0^(m+1)
            for m in 0..60 {
                let mf = (m + 1) as f64;
                let log_int = (l0 + 1.0 / mf) / (mf * t_pow);
                let quad_int = 1.0 / ((mf + 2.0) * t_pow * t0 * t0);
                non_osc += h * (log_int - quad_int / 24.0);
                // Recurrence h_{m+1} = (a+b) h_m - a b h_{m-1}.
                let h_next = (a + b) * h - a * b * h_prev;
                h_prev = h;
                h = h_next;
                t_pow *= t0;
                if (h / t_pow).abs() * (l0 + 1.0) * 4.0 < 1e-18 {
                    break;
                }
            }
        }
        // Series truncation: geometric with ratio <= (w_max/T0)^2 <= 1/16.
        let ratio = (w_max / t0) * (w_max / t0);
        let trunc = (l0 + 1.0) / t0 * ratio.powi(30) / (1.0 - ratio.min(0.5));

        // Oscillatory part: -Int cos(2 t ell) G(t) ln(t/2) dt, one explicit
        // boundary term after two integrations by parts (sin vanishes at the
        // node, cos(2 T0 ell) = 1).
        let g_of = |t: f64| 1.0 / ((t + wj) * (t + wk)) + 1.0 / ((t - wj) * (t - wk));
        let g_prime = |t: f64| {
            let b1 = (t + wj) * (t + wk);
            let b2 = (t - wj) * (t - wk);
            -((2.0 * t + wj + wk) / (b1 * b1) + (2.0 * t - wj - wk) / (b2 * b2))
        };
        let v_prime = g_prime(t0) * l0 + g_of(t0) / t0;
        let osc = v_prime / (4.0 * ell * ell);
        let v2_bound = (6.0 * (l0 + 1.0) + 10.0) / (3.0 * a_gap * a_gap * a_gap);
        let osc_bound = v2_bound / (4.0 * ell * ell)
            + (1.0 / 12.0) / (a_gap * a_gap * t0)
            + KERNEL_REMAINDER_C4 * 4.0 / (3.0 * a_gap * a_gap * t0 * t0 * t0);

        let value = sign / ell * (non_osc + osc);
        let bound = (trunc + osc_bound) / ell;
        (value, bound)
    }
}

/// Bound on `Int_A^inf |v''''| du` for `v(u) = ln((u-c)/2)/u`, expressed
/// via the worse of the two branch geometries.
fn v4_integral_bound(a: f64, t0: f64, l_t0: f64) -> f64 {
    let a_min = a.min(t0);
    let a4 = a_min * a_min * a_min * a_min;
    (12.5 + 6.0 * l_t0.max(0.0) + 1.5) / a4
}

/// Conservative worst-mode tail bound used to size the grid buffer.
fn mode_tail_bound(ell: f64, panels: usize, n_max: usize) -> f64 {
    let amp = (2.0 * ell).sqrt();
    let t0 = PI * panels as f64 / ell;
    let a_short = PI * (panels - n_max) as f64 / ell;
    let l = (0.5 * t0).ln().max(1.0);
    let ell4 = ell * ell * ell * ell;
    let per_branch = v4_integral_bound(a_short, t0, l) / ell4
        + (1.0 / (24.0 * ell)) * (1.0 / (t0 * t0 * a_short) + 1.0 / (a_short * a_short * a_short))
        + KERNEL_REMAINDER_C4 / (a_short * t0 * t0 * t0);
    2.0 * amp / ell * per_branch
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::integrate_adaptive_with_nodes;
    use crate::weil::testfn::WindowedTestFunction;

    /// Brute-force `Int_{t_lo}^{t_hi} [h_k(t) + h_k(-t)] K(t) dt`.
    fn brute_mode(ell: f64, k: i64, t_lo: f64, t_hi: f64, tol: f64) -> f64 {
        let f = WindowedTestFunction::fourier_mode(ell, k);
        let nodes: Vec<f64> = {
            let mut v = Vec::new();
            let mut m = 1.0;
            while m * PI / ell < t_hi {
                let t = m * PI / ell;
                if t > t_lo {
                    v.push(t);
                }
                m += 1.0;
            }
            v
        };
        let mut integrand = |t: f64| (f.h(t).re + f.h(-t).re) * re_digamma_quarter_line(t);
        integrate_adaptive_with_nodes(&mut integrand, t_lo, t_hi, tol, &nodes)
            .unwrap()
            .value
    }

    #[test]
    #[allow(clippy::excessive_precision)]
    fn mode_integral_matches_independent_oracle() {
        // Reference values from mpmath quadosc (dps = 25) for
        // Int_R h_k(t) Re psi(1/4 + it/2) dt; truncated quadrature cannot
        // reach these (the integrand is only conditionally convergent).
        let cases = [
            (1.0, 0i64, -7.687_116_809_580_866_5),
            (1.0, 1, 1.590_461_522_176_912_06),
            (50f64.ln(), 3, 0.345_286_347_827_089_783),
        ];
        for (ell, k, oracle) in cases {
            let kernel = ArchKernel::build(ell, k.unsigned_abs() as usize, 1e-10).unwrap();
            let (value, bound) = kernel.mode_integral(k);
            assert!(bound <= 1e-10);
            assert!(
                (value - oracle).abs() <= bound + 1e-10,
                "ell={ell} k={k}: kernel {value}, oracle {oracle}"
            );
        }
    }

    #[test]
    fn mode_integral_even_in_k() {
        let kernel = ArchKernel::build(1.7, 9, 1e-9).unwrap();
        for k in 1..=9i64 {
            let (plus, _) = kernel.mode_integral(k);
            let (minus, _) = kernel.mode_integral(-k);
            assert_eq!(plus, minus, "k = {k}");
        }
    }

    #[test]
    fn mode_tail_matches_brute_force_difference() {
        // tail(T0) - tail(T1) must equal the integral over [T0, T1].
        let ell = 1.3f64;
        let k = 2i64;
        let small = ArchKernel::build(ell, 2, 1e-8).unwrap();
        let big = ArchKernel::build_with_min_panels(ell, 2, 1e-8, small.panels * 4).unwrap();
        let (tail_small, b_small) = small.mode_tail(k);
        let (tail_big, b_big) = big.mode_tail(k);
        let between = brute_mode(ell, k, small.cutoff(), big.cutoff(), 1e-12);
        assert!(
            (tail_small - tail_big - between).abs() <= b_small + b_big + 1e-11,
            "tail difference {:e} vs integral {:e}",
            tail_small - tail_big,
            between
        );
    }

    #[test]
    #[allow(clippy::excessive_precision)]
    fn pair_integral_matches_independent_oracle() {
        // mpmath references (dps = 25; panel quadrature to 400 pi plus
        // analytic tails) for Int_R h_j(t) h_k(t) K(t) dt, ell = 1. The
        // (0,0) value coincides with the fejer(a=2) integral: |h_0|^2 is
        // the Fejer kernel of the doubled window.
        let cases = [
            (0i64, 0i64, -8.801_003_614_047_624),
            (1, 0, -1.503_677_140_164_915),
            (2, -1, -1.012_110_527_179_83),
            (3, 3, 9.745_567_077_051_706),
        ];
        let kernel = ArchKernel::build_with_min_panels(1.0, 3, 1e-9, 12).unwrap();
        for (j, k, oracle) in cases {
            let (value, bound) = kernel.pair_integral(j, k);
            assert!(
                (value - oracle).abs() <= bound + 1e-9,
                "pair ({j},{k}): kernel {value}, oracle {oracle}, bound {bound:e}"
            );
        }
    }

    #[test]
    fn buffer_grows_with_tighter_tolerance() {
        let loose = ArchKernel::build(2.0, 10, 1e-6).unwrap();
        let tight = ArchKernel::build(2.0, 10, 1e-11).unwrap();
        assert!(tight.panels > loose.panels);
        let (_, b_loose) = loose.mode_integral(10);
        let (_, b_tight) = tight.mode_integral(10);
        assert!(b_loose <= 1e-6);
        assert!(b_tight <= 1e-11);
    }

    #[test]
    fn pair_value_stable_across_cutoffs() {
        for min_panels in [12usize, 100, 400, 2000, 8000] {
            let kernel = ArchKernel::build_with_min_panels(1.0, 3, 1e-9, min_panels).unwrap();
            let (value, bound) = kernel.pair_integral(0, 0);
            println!(
                "min_panels {min_panels}: T0 = {:8.1}  value = {value:.12}  bound = {bound:e}",
                kernel.cutoff()
            );
        }
    }
}
