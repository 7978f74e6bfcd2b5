//! Complex floating-point evaluation of `θ`, the quasi-elliptic generators and the
//! completed n-point functions, for the elliptic and modular transformation laws.

mod context;
mod eval;
mod transform;

pub use context::NumericContext;
pub use eval::{laurent_eval, qe_eval_num, qseries_eval, series_consistency};
pub use transform::{sample_points, transform_checks};
