//! The Weil explicit-formula distribution on windowed test functions and
//! the truncated Weil vector.

mod dist;
mod gram;
pub(crate) mod kernel;
mod testfn;
mod xi;

pub use dist::{
    count_consistency, verify_explicit_formula, w_arch, w_pole, w_prime, weil_eval, zero_side,
    ExplicitFormulaReport, WeilBreakdown,
};
pub use gram::{min_eigenpair, weil_gram, GramMatrix, GRAM_MAX_N};
pub use testfn::WindowedTestFunction;
pub use xi::{build_xi, XiMethod, XiVector};
