//! Windowed test functions with closed-form Fourier transforms.

use num_complex::Complex64;
use std::f64::consts::PI;

/// A compactly supported test function `g` on the log line, with transform
/// `h(t) = Int g(x) e^{itx} dx` and exponential moments `h(+-i/2)`.
///
/// * `FourierMode { half_width: ell, index: k }`:
///   `g(x) = (2 ell)^{-1/2} exp(i pi k x / ell)` on `[-ell, ell]`, giving
///   `h(t) = sqrt(2 ell) sinc((t + omega_k) ell)` with `omega_k = pi k/ell`.
/// * `Fejer { half_width: a }`: `g(x) = 1 - |x|/a` on `[-a, a]`, giving
///   `h(t) = 2 (1 - cos(a t)) / (a t^2) >= 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum WindowedTestFunction {
    FourierMode { half_width: f64, index: i64 },
    Fejer { half_width: f64 },
}

fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-5 {
        1.0 - x * x / 6.0 * (1.0 - x * x / 20.0)
    } else {
        x.sin() / x
    }
}

impl WindowedTestFunction {
    pub fn fourier_mode(half_width: f64, index: i64) -> Self {
        assert!(half_width > 0.0);
        WindowedTestFunction::FourierMode { half_width, index }
    }

    pub fn fejer(half_width: f64) -> Self {
        assert!(half_width > 0.0);
        WindowedTestFunction::Fejer { half_width }
    }

    pub fn support_half_width(&self) -> f64 {
        match *self {
            WindowedTestFunction::FourierMode { half_width, .. } => half_width,
            WindowedTestFunction::Fejer { half_width } => half_width,
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            WindowedTestFunction::FourierMode { .. } => "fourier_mode",
            WindowedTestFunction::Fejer { .. } => "fejer",
        }
    }

    /// `g(x)`; vanishes outside the support (boundary convention: a point
    /// exactly on the support edge evaluates to 0).
    pub fn g(&self, x: f64) -> Complex64 {
        match *self {
            WindowedTestFunction::FourierMode { half_width, index } => {
                if x.abs() >= half_width {
                    return Complex64::new(0.0, 0.0);
                }
                let omega = PI * index as f64 / half_width;
                Complex64::from_polar(1.0 / (2.0 * half_width).sqrt(), omega * x)
            }
            WindowedTestFunction::Fejer { half_width } => {
                if x.abs() >= half_width {
                    return Complex64::new(0.0, 0.0);
                }
                Complex64::new(1.0 - x.abs() / half_width, 0.0)
            }
        }
    }

    /// `h(t)` for real `t`. Real-valued for both kinds (the mode transform
    /// is a shifted sinc, the fejer transform a squared sinc).
    pub fn h(&self, t: f64) -> Complex64 {
        match *self {
            WindowedTestFunction::FourierMode { half_width, index } => {
                let omega = PI * index as f64 / half_width;
                let val = (2.0 * half_width).sqrt() * sinc((t + omega) * half_width);
                Complex64::new(val, 0.0)
            }
            WindowedTestFunction::Fejer { half_width } => {
                let u = 0.5 * t * half_width;
                let s = sinc(u);
                Complex64::new(half_width * s * s, 0.0)
            }
        }
    }

    /// The pair `(h(i/2), h(-i/2))`, individually complex for asymmetric
    /// modes; their sum is the pole term of the Weil distribution.
    pub fn h_exp_moments(&self) -> (Complex64, Complex64) {
        match *self {
            WindowedTestFunction::FourierMode { half_width, index } => {
                let ell = half_width;
                let omega = PI * index as f64 / ell;
                let sign = if index.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
                let amp = 2.0 * sign * (0.5 * ell).sinh() / (2.0 * ell).sqrt();
                let plus = Complex64::new(0.5, -omega).inv() * amp;
                let minus = Complex64::new(0.5, omega).inv() * amp;
                (plus, minus)
            }
            WindowedTestFunction::Fejer { half_width } => {
                let a = half_width;
                // h(is) = 2 (cosh(a s) - 1) / (a s^2) at s = +-1/2.
                let v = 8.0 * ((0.5 * a).cosh() - 1.0) / a;
                (Complex64::new(v, 0.0), Complex64::new(v, 0.0))
            }
        }
    }

    /// Monotone decreasing envelope `H` with `|h(t)| <= H(t)` for large `t`,
    /// as `(c, p)` meaning `H(t) = c / t^p`. `None` when no integrable
    /// envelope exists (sharp modes decay like `1/t` only).
    pub fn h_envelope(&self) -> Option<(f64, f64)> {
        match *self {
            WindowedTestFunction::FourierMode { .. } => None,
            WindowedTestFunction::Fejer { half_width } => Some((4.0 / half_width, 2.0)),
        }
    }

    /// Phase nodes of `h(t) + h(-t)` on `(0, t_max)`, for quadrature panels.
    pub(crate) fn phase_nodes(&self, t_max: f64) -> Vec<f64> {
        let period = match *self {
            WindowedTestFunction::FourierMode { half_width, .. } => PI / half_width,
            WindowedTestFunction::Fejer { half_width } => 2.0 * PI / half_width,
        };
        let mut nodes = Vec::new();
        let mut m = 1usize;
        loop {
            let t = m as f64 * period;
            if t >= t_max {
                break;
            }
            nodes.push(t);
            m += 1;
        }
        nodes
    }

    /// Smallest node multiple >= `t_min`, so cutoffs land on a phase node.
    pub(crate) fn node_at_or_above(&self, t_min: f64) -> f64 {
        let period = match *self {
            WindowedTestFunction::FourierMode { half_width, .. } => PI / half_width,
            WindowedTestFunction::Fejer { half_width } => 2.0 * PI / half_width,
        };
        (t_min / period).ceil().max(1.0) * period
    }
}
