//! Numerics for windowed compressions of the scaling generator `-i d/dx` on a
//! logarithmic window, constrained to annihilate the truncated Weil vector, and
//! for measuring the dissonance between their spectra and tables of Riemann
//! zeta zeros.
//!
//! The crate is organised around the pipeline
//!
//! ```text
//! specfun  ->  weil  ->  oplab  ->  metrics  ->  scan
//!                         ^
//!                       zeros
//! ```
//!
//! * [`specfun`]: von Mangoldt sieve, digamma on the critical quarter-line,
//!   adaptive quadrature.
//! * [`weil`]: the Weil explicit-formula distribution on windowed test
//!   functions, the truncated Weil vector, and the Weil Gram matrix.
//! * [`oplab`]: Fourier window basis, generator and position matrices, the
//!   rank-one-constrained operator, dense and secular eigensolvers.
//! * [`zeros`]: zero-table ingestion and a Hardy Z-function verification
//!   oracle.
//! * [`metrics`]: spectrum/zero pairing, the mean and uniform errors, the
//!   `1/(4 ln lambda)` lower bound and the `E(kappa) ln kappa` product.
//! * [`scan`]: the kappa-sweep harness (`kappa = N = lambda`).
//! * [`plot`]: static SVG figures (error curves, spectrum/zero rug plots).

pub mod error;
pub mod metrics;
pub mod oplab;
pub mod plot;
pub mod scan;
pub mod specfun;
pub mod weil;
pub mod zeros;

pub use error::{Error, Result};
