//! Number-theoretic and special-function primitives.

mod digamma;
mod mangoldt;
mod quad;

pub use digamma::{digamma, re_digamma_quarter_line};
pub use mangoldt::{nth_prime, MangoldtEntry, MangoldtTable, MAX_SIEVE_LIMIT};
pub(crate) use quad::gl15_unit;
pub use quad::{
    integrate_adaptive, integrate_adaptive_with_nodes, integrate_gl15, QuadratureResult,
};
