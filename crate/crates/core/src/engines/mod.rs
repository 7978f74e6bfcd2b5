//! The n-point function engines (Bell-polynomial, Bloch–Okounkov determinant,
//! recursion, ordered A-cycle, infinite wedge) and the structural checks on the
//! quasi-elliptic output.

mod agreement;
mod bell;
mod bo;
mod recursion;
mod symbolic;
mod wedge;

pub use bell::{bell_partition_sum, tn_bell, MAX_N};
pub use bo::{theta_third_derivative, tn_bo, MAX_N_RAY};
pub use recursion::{tn_compositions, tn_recursion};
pub use wedge::{eigenvalue_series, fn_wedge, genus_of, gw_extract, tn_wedge, GwBracket, WedgeCoefficients, MAX_BRACKET_Q, MAX_WEDGE_Q};
pub use symbolic::{anomaly_check, anomaly_residual, completed_shift, completed_tn_by_splitting, completion_check, completion_hat, d_g2, difference_check, difference_residual, pole_checks, qe_shift, regularity_failures, residue_residual};
pub use agreement::{engine_agreement, tn_on_ray, vanishing_check, ENGINES};
