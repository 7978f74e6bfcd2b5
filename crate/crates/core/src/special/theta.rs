use std::sync::OnceLock;

use num_traits::Zero;

use crate::combinatorics::{complete_bell, BellRing};
use crate::series::{factorial, int, rat, Laurent, QSeries, Rational};
use crate::Error;

/// Expansion of the odd Jacobi theta function `θ(z)` about `z = 0`, normalized by
/// `θ'(0) = 1`, together with the Eisenstein series read off from it and caches of
/// the derived Laurent series.
///
/// `θ(z) = (e^{z/2} - e^{-z/2}) prod_{k≥1} (1 - q^k e^z)(1 - q^k e^{-z}) / (1 - q^k)^2
///       = z exp(-sum_{k≥1} 2G_{2k} z^{2k}/(2k)!)`.
#[derive(Debug)]
pub struct ThetaExpansion {
    q_order: usize,
    z_order: i32,
    theta: Laurent,
    eisenstein: Vec<QSeries>,
    estar: Vec<OnceLock<Laurent>>,
    ratio: Vec<OnceLock<Laurent>>,
}

impl ThetaExpansion {
    /// Builds `θ` through `q^q_order` and `z^z_order` and checks the product form against
    /// the exponential form.
    pub fn new(q_order: usize, z_order: usize) -> Result<Self, Error> {
        if q_order < 1 || z_order < 1 {
            return Err(Error::Invalid("theta expansion needs q- and z-order at least 1".into()));
        }
        let z_order = z_order as i32;
        let theta = triple_product(q_order, z_order);
        let eisenstein = read_eisenstein(&theta)?;
        let log_form = exponential_form(&eisenstein, q_order, z_order)?;
        theta
            .compare(&log_form)
            .map_err(|m| Error::Mismatch(format!("theta product and exponential forms differ at {m}")))?;
        let slots = (z_order as usize) + 2;
        Ok(ThetaExpansion {
            q_order,
            z_order,
            theta,
            eisenstein,
            estar: (0..slots).map(|_| OnceLock::new()).collect(),
            ratio: (0..slots).map(|_| OnceLock::new()).collect(),
        })
    }

    /// Enough z-order to evaluate products of up to `max_pole` total pole order on rays
    /// through `t^t_order`.
    pub fn for_orders(q_order: usize, t_order: i32, max_pole: usize) -> Result<Self, Error> {
        Self::new(q_order, (t_order.max(0) as usize) + 2 * max_pole + 3)
    }

    pub fn q_order(&self) -> usize {
        self.q_order
    }

    pub fn z_order(&self) -> i32 {
        self.z_order
    }

    pub fn theta(&self) -> &Laurent {
        &self.theta
    }

    /// `G_k` for `0 ≤ k < z_order`; zero for odd `k`, `G_0 = 1/2`.
    pub fn eisenstein(&self, k: usize) -> QSeries {
        self.eisenstein
            .get(k)
            .cloned()
            .unwrap_or_else(|| panic!("G_{k} needs a theta expansion of z-order above {k}"))
    }

    pub fn max_eisenstein(&self) -> usize {
        self.eisenstein.len() - 1
    }

    /// `θ^{(m)}(0)`.
    pub fn theta_derivative_at_zero(&self, m: usize) -> QSeries {
        self.theta.coeff(m as i32).scale(&factorial(m))
    }

    /// `E*_m(z) = (ln θ)^{(m)} + 2G_m = (-1)^{m-1}(m-1)! z^{-m} - sum_{2k>m} 2G_{2k} z^{2k-m}/(2k-m)!`.
    pub fn estar(&self, m: usize) -> &Laurent {
        assert!(m >= 1, "E*_m needs m >= 1");
        self.estar[m].get_or_init(|| {
            let top = self.z_order - 1 - m as i32;
            let mut coeffs = Vec::new();
            for e in -(m as i32)..=top {
                let c = if e == -(m as i32) {
                    let sign = if m % 2 == 1 { int(1) } else { int(-1) };
                    QSeries::constant(sign * factorial(m - 1), self.q_order)
                } else {
                    let two_k = e + m as i32;
                    if e > 0 && two_k % 2 == 0 {
                        self.eisenstein(two_k as usize).scale(&(int(-2) / factorial(e as usize)))
                    } else {
                        QSeries::zero(self.q_order)
                    }
                };
                coeffs.push(c);
            }
            Laurent::from_coeffs(-(m as i32), coeffs, self.q_order)
        })
    }

    /// `(ln θ)^{(m)}`, computed by differentiating the logarithm of the product form.
    pub fn log_derivative(&self, m: usize) -> Laurent {
        assert!(m >= 1);
        let log_reg = self.theta.shift_exp(-1).log().expect("θ/z has constant term 1");
        let mut d = log_reg;
        for _ in 0..m {
            d = d.derivative();
        }
        let sign = if m % 2 == 1 { int(1) } else { int(-1) };
        let pole = Laurent::monomial(sign * factorial(m - 1), -(m as i32), d.max_exp(), self.q_order);
        &d + &pole
    }

    /// `θ^{(m)}/θ` by direct differentiation and division.
    pub fn theta_ratio(&self, m: usize) -> &Laurent {
        self.ratio[m].get_or_init(|| {
            let mut d = self.theta.clone();
            for _ in 0..m {
                d = d.derivative();
            }
            d.div(&self.theta).expect("θ has unit leading coefficient")
        })
    }

    /// `θ^{(m)}/θ` via Faà di Bruno: `𝐁_m((ln θ)', ..., (ln θ)^{(m)})`.
    pub fn theta_ratio_bell(&self, m: usize) -> Laurent {
        if m == 0 {
            return Laurent::one(self.z_order, self.q_order);
        }
        let xs: Vec<Laurent> = (1..=m).map(|k| self.log_derivative(k)).collect();
        complete_bell(&xs).pop().unwrap()
    }
}

impl BellRing for Laurent {
    fn bell_one(&self) -> Self {
        Laurent::one(self.max_exp() - self.min_exp(), self.q_order())
    }
    fn bell_add(&self, other: &Self) -> Self {
        self + other
    }
    fn bell_mul(&self, other: &Self) -> Self {
        self * other
    }
    fn bell_scale(&self, c: &Rational) -> Self {
        self.scale(c)
    }
}

fn triple_product(q_order: usize, z_order: i32) -> Laurent {
    // e^{z/2} - e^{-z/2} = sum_{m odd} z^m / (2^{m-1} m!)
    let mut coeffs = Vec::new();
    for m in 0..=z_order {
        let c = if m % 2 == 1 {
            Rational::new(1.into(), (num_bigint::BigInt::from(1) << (m - 1) as usize) * factorial(m as usize).numer())
        } else {
            Rational::zero()
        };
        coeffs.push(QSeries::constant(c, q_order));
    }
    let mut acc = Laurent::from_coeffs(0, coeffs, q_order);
    // (1 - q^k e^z)(1 - q^k e^{-z})/(1 - q^k)^2 = 1 - 2 q^k (cosh z - 1)/(1 - q^k)^2
    for k in 1..=q_order {
        let one_minus = &QSeries::one(q_order) - &QSeries::monomial(int(1), k, q_order);
        let w = QSeries::monomial(int(-2), k, q_order) * (&one_minus * &one_minus).inv().expect("unit");
        let mut fc = Vec::new();
        for j in 0..=z_order {
            fc.push(if j == 0 {
                QSeries::one(q_order)
            } else if j % 2 == 0 {
                w.scale(&factorial(j as usize).recip())
            } else {
                QSeries::zero(q_order)
            });
        }
        acc = &acc * &Laurent::from_coeffs(0, fc, q_order);
    }
    acc
}

/// `G_{2k} = -(2k)!/2 [z^{2k}] ln(θ/z)`, with `G_0 = 1/2` and odd entries zero.
fn read_eisenstein(theta: &Laurent) -> Result<Vec<QSeries>, Error> {
    let q = theta.q_order();
    let log_reg = theta.shift_exp(-1).log()?;
    let mut g = vec![QSeries::constant(rat(1, 2), q)];
    for k in 1..=log_reg.max_exp() {
        g.push(if k % 2 == 0 {
            log_reg.coeff(k).scale(&(-factorial(k as usize) / int(2)))
        } else {
            QSeries::zero(q)
        });
    }
    Ok(g)
}

fn exponential_form(g: &[QSeries], q_order: usize, z_order: i32) -> Result<Laurent, Error> {
    let mut coeffs = vec![QSeries::zero(q_order)];
    for k in 1..z_order {
        coeffs.push(if k % 2 == 0 {
            g[k as usize].scale(&(int(-2) / factorial(k as usize)))
        } else {
            QSeries::zero(q_order)
        });
    }
    Ok(Laurent::from_coeffs(0, coeffs, q_order).exp()?.shift_exp(1))
}

/// `G_k` through `q^q_order`, read from the logarithm of the theta expansion.
pub fn eisenstein_g(k: usize, q_order: usize) -> Result<QSeries, Error> {
    if k % 2 == 1 {
        return Ok(QSeries::zero(q_order));
    }
    Ok(ThetaExpansion::new(q_order, k + 1)?.eisenstein(k))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sigma(n: usize, p: u32) -> i64 {
        (1..=n).filter(|d| n % d == 0).map(|d| (d as i64).pow(p)).sum()
    }

    #[test]
    fn normalization_and_parity() {
        let th = ThetaExpansion::new(6, 9).unwrap();
        assert!(th.theta().coeff(0).is_zero());
        assert_eq!(th.theta().coeff(1), QSeries::one(6));
        for k in (0..=9).step_by(2) {
            assert!(th.theta().coeff(k).is_zero());
        }
        // q^0: 2 sinh(z/2) = z + z^3/24, and -G_2(0) = 1/24
        assert_eq!(th.theta().coeff(3).coeff(0), rat(1, 24));
        assert_eq!(th.theta().coeff(3), -&th.eisenstein(2));
    }

    #[test]
    fn eisenstein_against_divisor_sums() {
        let n = 8;
        let g2 = eisenstein_g(2, n).unwrap();
        let g4 = eisenstein_g(4, n).unwrap();
        assert_eq!(g2.coeff(0), rat(-1, 24));
        assert_eq!(g4.coeff(0), rat(1, 240));
        for k in 1..=n {
            assert_eq!(g2.coeff(k), int(sigma(k, 1)));
            assert_eq!(g4.coeff(k), int(sigma(k, 3)));
        }
        assert!(eisenstein_g(3, n).unwrap().is_zero());
    }

    #[test]
    fn estar_matches_log_derivatives() {
        let th = ThetaExpansion::new(5, 14).unwrap();
        for m in 1..=6 {
            let lhs = th.estar(m);
            let two_g = Laurent::constant(th.eisenstein(m).scale(&int(2)), lhs.max_exp());
            let rhs = &th.log_derivative(m) + &two_g;
            assert!(lhs.compare(&rhs).is_ok(), "m = {m}");
        }
        assert_eq!(th.estar(3).coeff(-3), QSeries::constant(int(2), 5));
        assert_eq!(th.estar(1).coeff(1), th.eisenstein(2).scale(&int(-2)));
    }

    #[test]
    fn ratio_identities() {
        let th = ThetaExpansion::new(5, 14).unwrap();
        for m in 0..=6 {
            assert!(th.theta_ratio(m).compare(&th.theta_ratio_bell(m)).is_ok(), "Faà di Bruno m = {m}");
            // (θ^{(m)}/θ)' = θ^{(m+1)}/θ - (θ'/θ)(θ^{(m)}/θ)
            let lhs = th.theta_ratio(m).derivative();
            let rhs = th.theta_ratio(m + 1) - &(th.theta_ratio(1) * th.theta_ratio(m));
            assert!(lhs.compare(&rhs).is_ok(), "derivative law m = {m}");
        }
        assert_eq!(th.theta_derivative_at_zero(3), th.eisenstein(2).scale(&int(-6)));
    }

    #[test]
    fn inverse_theta_matches_exponential() {
        let th = ThetaExpansion::new(6, 10).unwrap();
        let inv = th.theta().inv().unwrap();
        assert_eq!(inv.coeff(-1), QSeries::one(6));
        assert_eq!(inv.coeff(1), th.eisenstein(2));
    }
}
