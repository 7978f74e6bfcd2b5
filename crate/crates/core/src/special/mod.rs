//! Theta function, Eisenstein series, Eisenstein–Kronecker functions, the Szegő kernel
//! and Weierstrass functions as exact truncated series.

mod fourier_forms;
mod identities;
mod szego;
mod theta;

pub use fourier_forms::{estar_fourier, logderiv_fourier, MAX_ANNULUS};
pub use identities::{boson_2pt_check, boson_families, weierstrass_and_addition, wp, zeta};
pub use szego::{
    eulerian_families, eulerian_fourier, szego_bell, szego_direct, szego_families, szego_fourier, SzegoExpansion,
};
pub use theta::{eisenstein_g, ThetaExpansion};
