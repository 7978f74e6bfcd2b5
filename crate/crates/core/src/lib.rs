//! Exact series engines for the stationary Gromov–Witten n-point functions of an
//! elliptic curve, with the quasi-elliptic symbolic layer and a float backend for
//! the transformation laws.
//!
//! Conventions used throughout: `u = e^z`, primes are `d/dz`, the period lattice
//! is `2πiZ + 2πiτZ`, and `θ` is the odd Jacobi theta function with `θ'(0) = 1`.

pub mod combinatorics;
pub mod engines;
pub mod fit;
pub mod numeric;
pub mod ordered;
pub mod qe;
pub mod report;
pub mod special;
pub mod verify;
pub mod series;

pub use series::{int, rat, FourierU, Laurent, QSeries, Rational, Ray, Subset};

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("not invertible: {0}")]
    NonUnit(String),
    #[error("non-generic ray: {0}")]
    NonGenericRay(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("internal mismatch: {0}")]
    Mismatch(String),
}
