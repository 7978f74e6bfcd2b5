//! Ordered A-cycle integrals: integration regions encoded by `χ` tables, the
//! functions `g_{b,a}` and their quasi-elliptic continuation, the coefficients
//! `c_J`, block sums `G_S` and the resulting `T_n^Ω`.

mod fay;
mod gba;
mod integral;
mod ordering;

pub use integral::{c_j_cyclic, c_j_extended, c_j_gw_bernoulli, c_j_sequences, g_block, h_n, tn_omega, tn_omega_determinant, tn_omega_partitions, wick_partition_residuals, MAX_PAIRS};
pub use gba::{gba_continue, gba_series, qe_fourier, GbaKey};
pub use ordering::{Ordering, OrderingKind};
pub use fay::{fay_frobenius_check, MAX_FAY_N};
