//! Fourier basis of the log window, the constrained compression of the
//! scaling generator, and its eigensolvers.

mod basis;
mod eig_dense;
mod eig_secular;
mod operator;
mod spectrum;
mod uncertainty;

pub use basis::{FourierBasis, LogWindow};
pub use eig_dense::{eig_dense, eig_dense_with_vectors, eigh};
pub use eig_secular::eig_secular;
pub use operator::{
    build_generator, build_position, build_position_squared, constrain_kill, constrain_perturb,
    BuilderKind, ConstrainedOperator,
};
pub use spectrum::{SolverKind, Spectrum};
pub use uncertainty::{
    commutator_identity_table, uncertainty_report, CommutatorRow, UncertaintyReport,
};
