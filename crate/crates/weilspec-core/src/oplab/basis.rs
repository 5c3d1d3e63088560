//! The logarithmic window and its periodic Fourier basis.

use crate::error::{Error, Result};

/// The interval `[-ln lambda, ln lambda]`, image of `[1/lambda, lambda]`
/// under `x = ln u`. Total length `L = 2 ln lambda`.
#[derive(Debug, Clone, Copy)]
pub struct LogWindow {
    lambda: f64,
    half_width: f64,
}

impl LogWindow {
    pub fn new(lambda: f64) -> Result<LogWindow> {
        if !lambda.is_finite() || lambda <= 1.0 {
            return Err(Error::LogDomain {
                what: "lambda",
                value: lambda,
            });
        }
        Ok(LogWindow {
            lambda,
            half_width: lambda.ln(),
        })
    }

    /// Window from its half-width `ell = ln lambda` directly.
    pub fn from_half_width(ell: f64) -> Result<LogWindow> {
        if !ell.is_finite() || ell <= 0.0 {
            return Err(Error::LogDomain {
                what: "window half-width",
                value: ell,
            });
        }
        Ok(LogWindow {
            lambda: ell.exp(),
            half_width: ell,
        })
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    /// `ell = ln lambda`.
    pub fn half_width(&self) -> f64 {
        self.half_width
    }

    /// `L = 2 ln lambda`.
    pub fn length(&self) -> f64 {
        2.0 * self.half_width
    }
}

/// The (2N+1)-dimensional span of the periodic modes
/// `phi_k(x) = (2 ell)^{-1/2} exp(i pi k x / ell)`, `k = -N..N`.
/// Its reproducing kernel is the Dirichlet kernel of order N.
#[derive(Debug, Clone, Copy)]
pub struct FourierBasis {
    window: LogWindow,
    n_max: usize,
}

impl FourierBasis {
    pub fn new(window: LogWindow, n_max: usize) -> FourierBasis {
        FourierBasis { window, n_max }
    }

    pub fn window(&self) -> &LogWindow {
        &self.window
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn dimension(&self) -> usize {
        2 * self.n_max + 1
    }

    /// Mode frequency `omega_k = pi k / ell`.
    pub fn frequency(&self, k: i64) -> f64 {
        std::f64::consts::PI * k as f64 / self.window.half_width()
    }

    /// All frequencies, ascending (`k = -N..N`).
    pub fn frequencies(&self) -> Vec<f64> {
        self.index_range().map(|k| self.frequency(k)).collect()
    }

    /// Mode indices `-N..=N` in storage order.
    pub fn index_range(&self) -> impl Iterator<Item = i64> {
        let n = self.n_max as i64;
        -n..=n
    }

    /// Storage offset of mode `k` (mode `-N` sits at 0).
    pub fn offset(&self, k: i64) -> usize {
        (k + self.n_max as i64) as usize
    }
}
