//! Exact truncated series: rationals, q-series, Laurent series, Fourier series and rays.

mod fourier;
mod laurent;
mod qseries;
mod rational;
mod ray;

pub use fourier::{fourier_to_laurent, FourierFamilies, FourierU, GeometricFamily};
pub use laurent::{laurent_det, Laurent, Mismatch};
pub use qseries::QSeries;
pub use rational::{binomial, factorial, format_rational, int, parse_rational, pow_i, rat, to_f64, Rational};
pub use ray::{Ray, Subset};
