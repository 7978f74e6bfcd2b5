use crate::series::{int, rat, FourierU, QSeries};
use crate::Error;

use super::theta::ThetaExpansion;

/// Largest annulus index accepted; all others follow from the shift rule anyway.
pub const MAX_ANNULUS: i32 = 8;

/// `θ'/θ` as a Fourier series on annulus `m`, in the recentred variable `w = q^{-m} u`.
///
/// On the fundamental annulus `θ'/θ = -1/2 - sum_{k≠0} u^k/(1 - q^k)`; the annulus-`m`
/// expansion follows from `θ'/θ(q^m w) = θ'/θ(w) - m`.
pub fn logderiv_fourier(annulus: i32, k_max: usize, q_order: usize) -> Result<FourierU, Error> {
    if annulus.abs() > MAX_ANNULUS {
        return Err(Error::Unsupported(format!("annulus {annulus} beyond ±{MAX_ANNULUS}")));
    }
    if k_max < 1 || q_order < 1 {
        return Err(Error::Invalid("Fourier orders must be at least 1".into()));
    }
    let mut f = FourierU::constant(QSeries::constant(rat(-1, 2) - int(annulus as i64), q_order), annulus, k_max);
    for k in 1..=k_max {
        let one_minus = (&QSeries::one(q_order) - &QSeries::monomial(int(1), k, q_order)).inv()?;
        f.set(k as i64, -&one_minus);
        f.set(-(k as i64), &QSeries::monomial(int(1), k, q_order) * &one_minus);
    }
    Ok(f)
}

/// `E*_m = (ln θ)^{(m)} + 2G_m` on annulus `m`, via the Euler operator applied to `θ'/θ`.
pub fn estar_fourier(th: &ThetaExpansion, m: usize, annulus: i32, k_max: usize) -> Result<FourierU, Error> {
    let q = th.q_order();
    let mut f = logderiv_fourier(annulus, k_max, q)?;
    for _ in 1..m {
        f = f.euler_derivative();
    }
    let g = FourierU::constant(th.eisenstein(m).scale(&int(2)), annulus, k_max);
    Ok(&f + &g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_terms_by_annulus() {
        assert_eq!(logderiv_fourier(0, 4, 4).unwrap().coeff(0), &QSeries::constant(rat(-1, 2), 4));
        assert_eq!(logderiv_fourier(-1, 4, 4).unwrap().coeff(0), &QSeries::constant(rat(1, 2), 4));
        let one_minus_q = QSeries::from_ints(&[1, -1], 4).inv().unwrap();
        assert_eq!(logderiv_fourier(0, 4, 4).unwrap().coeff(1), &-&one_minus_q);
        assert!(logderiv_fourier(20, 4, 4).is_err());
    }

    #[test]
    fn estar_two_has_constant_from_eisenstein() {
        let th = ThetaExpansion::new(5, 6).unwrap();
        let e2 = estar_fourier(&th, 2, 0, 5).unwrap();
        // -sum_{k≠0} k u^k/(1-q^k) has no constant term
        assert_eq!(e2.coeff(0), &th.eisenstein(2).scale(&int(2)));
    }
}
