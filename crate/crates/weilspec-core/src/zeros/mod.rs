//! Zero-table ingestion and an independent desk-scale verification oracle.

mod hardy;
mod table;

pub use hardy::{
    hardy_z, riemann_siegel_theta, verify_first_zeros, zero_check_report, zeta_half_line,
    ZeroCheck, ZeroCheckReport, VERIFY_CAP,
};
pub use table::{zero_count_estimate, ZerosTable};
