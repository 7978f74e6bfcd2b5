use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;

use super::laurent::Laurent;
use super::qseries::QSeries;
use super::rational::{binomial, factorial, int, pow_i, Rational};
use crate::combinatorics::bernoulli;
use crate::Error;

/// Truncated Fourier series in `u = e^z` valid on the annulus `|q^(m+1)| < |u| < |q^m|`.
///
/// Coefficients are stored in the recentred variable `w = q^(-m) u`, so that the
/// coefficient of `w^k` is an honest power series in `q` for every `k`. On the
/// fundamental annulus (`m = 0`) this is the plain coefficient of `u^k`.
/// For a function holomorphic on the annulus, coefficients of negative powers of
/// `w` are `O(q^|k|)`; products rely on this to stay exact.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FourierU {
    annulus: i32,
    k_max: usize,
    coeffs: Vec<QSeries>,
    q_order: usize,
}

impl FourierU {
    pub fn zero(annulus: i32, k_max: usize, q_order: usize) -> Self {
        FourierU { annulus, k_max, coeffs: vec![QSeries::zero(q_order); 2 * k_max + 1], q_order }
    }

    pub fn constant(c: QSeries, annulus: i32, k_max: usize) -> Self {
        let mut out = Self::zero(annulus, k_max, c.order());
        out.coeffs[k_max] = c;
        out
    }

    pub fn annulus(&self) -> i32 {
        self.annulus
    }

    pub fn k_max(&self) -> usize {
        self.k_max
    }

    pub fn q_order(&self) -> usize {
        self.q_order
    }

    /// Coefficient of `w^k`, `w = q^(-m) u`.
    pub fn coeff(&self, k: i64) -> &QSeries {
        assert!(k.unsigned_abs() as usize <= self.k_max, "Fourier index {k} beyond K = {}", self.k_max);
        &self.coeffs[(k + self.k_max as i64) as usize]
    }

    pub fn set(&mut self, k: i64, c: QSeries) {
        let q = self.q_order;
        let idx = (k + self.k_max as i64) as usize;
        self.coeffs[idx] = c.truncate(q);
    }

    pub fn truncate(&self, k_max: usize, q_order: usize) -> Self {
        let k_max = k_max.min(self.k_max);
        let q_order = q_order.min(self.q_order);
        let mut out = Self::zero(self.annulus, k_max, q_order);
        for k in -(k_max as i64)..=k_max as i64 {
            out.set(k, self.coeff(k).truncate(q_order));
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Self {
        FourierU { coeffs: self.coeffs.iter().map(|x| x.scale(c)).collect(), ..self.clone() }
    }

    /// The Euler operator `u d/du`, i.e. `d/dz`.
    pub fn euler_derivative(&self) -> Self {
        let mut out = self.clone();
        for k in -(self.k_max as i64)..=self.k_max as i64 {
            out.set(k, self.coeff(k).scale(&int(k)));
        }
        out
    }

    fn check_same_annulus(&self, other: &FourierU) {
        assert_eq!(self.annulus, other.annulus, "Fourier series on different annuli cannot be combined");
    }

    /// Exact comparison on the shared index and q range.
    pub fn compare(&self, other: &FourierU) -> Result<(), String> {
        if self.annulus != other.annulus {
            return Err(format!("annulus {} vs {}", self.annulus, other.annulus));
        }
        let k = self.k_max.min(other.k_max) as i64;
        let n = self.q_order.min(other.q_order);
        for i in -k..=k {
            if self.coeff(i).truncate(n) != other.coeff(i).truncate(n) {
                return Err(format!("coefficient u^{i}: {} vs {}", self.coeff(i), other.coeff(i)));
            }
        }
        Ok(())
    }
}

impl<'a> Add for &'a FourierU {
    type Output = FourierU;
    fn add(self, rhs: &FourierU) -> FourierU {
        self.check_same_annulus(rhs);
        let k = self.k_max.min(rhs.k_max);
        let q = self.q_order.min(rhs.q_order);
        let mut out = FourierU::zero(self.annulus, k, q);
        for i in -(k as i64)..=k as i64 {
            out.set(i, self.coeff(i) + rhs.coeff(i));
        }
        out
    }
}

impl<'a> Neg for &'a FourierU {
    type Output = FourierU;
    fn neg(self) -> FourierU {
        self.scale(&int(-1))
    }
}

impl<'a> Sub for &'a FourierU {
    type Output = FourierU;
    fn sub(self, rhs: &FourierU) -> FourierU {
        self + &(-rhs)
    }
}

impl<'a> Mul for &'a FourierU {
    type Output = FourierU;
    /// The output index range shrinks by `q_order + 1`: terms beyond the stored range are
    /// `O(q^(q_order+1))` only for indices that far inside it.
    fn mul(self, rhs: &FourierU) -> FourierU {
        self.check_same_annulus(rhs);
        let q = self.q_order.min(rhs.q_order);
        let k_in = self.k_max.min(rhs.k_max) as i64;
        let k_out = (k_in - q as i64 - 1).max(0);
        let mut out = FourierU::zero(self.annulus, k_out as usize, q);
        for k in -k_out..=k_out {
            let mut acc = QSeries::zero(q);
            for j in -k_in..=k_in {
                let l = k - j;
                if l.abs() > k_in {
                    continue;
                }
                let (a, b) = (self.coeff(j), rhs.coeff(l));
                if a.is_zero() || b.is_zero() {
                    continue;
                }
                acc = &acc + &(a * b);
            }
            out.set(k, acc);
        }
        out
    }
}

/// `coeff * sum_{k>=1} k^k_power q^(q_shift k) u^(sign k) / (1 - q^k)^denom_power`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeometricFamily {
    pub coeff: Rational,
    pub k_power: u32,
    pub q_shift: i64,
    pub sign: i8,
    pub denom_power: u32,
}

/// A Fourier series given as a constant plus finitely many geometric families.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FourierFamilies {
    pub constant: Rational,
    pub families: Vec<GeometricFamily>,
}

impl FourierFamilies {
    pub fn new(constant: Rational) -> Self {
        FourierFamilies { constant, families: Vec::new() }
    }

    pub fn with(mut self, coeff: Rational, k_power: u32, q_shift: i64, sign: i8, denom_power: u32) -> Self {
        self.families.push(GeometricFamily { coeff, k_power, q_shift, sign, denom_power });
        self
    }

    pub fn concat(&self, other: &FourierFamilies) -> Self {
        let mut families = self.families.clone();
        families.extend(other.families.iter().cloned());
        FourierFamilies { constant: &self.constant + &other.constant, families }
    }

    /// Raw coefficients in the fundamental annulus.
    pub fn to_fourier(&self, k_max: usize, q_order: usize) -> Result<FourierU, Error> {
        let mut out = FourierU::constant(QSeries::constant(self.constant.clone(), q_order), 0, k_max);
        for f in &self.families {
            if f.q_shift < 0 || (f.sign < 0 && f.q_shift == 0) {
                return Err(Error::Unsupported("family not suppressed on the fundamental annulus".into()));
            }
            for k in 1..=k_max as i64 {
                let denom = (&QSeries::one(q_order) - &QSeries::monomial(int(1), k as usize, q_order))
                    .pow(f.denom_power as usize)
                    .inv()?;
                let num = QSeries::monomial(&f.coeff * pow_i(&int(k), f.k_power as i32), (f.q_shift * k) as usize, q_order);
                let idx = if f.sign > 0 { k } else { -k };
                let term = &num * &denom;
                out.set(idx, out.coeff(idx) + &term);
            }
        }
        Ok(out)
    }
}

/// Laurent expansion in `z` (with `u = e^z`) of a family description, through `z^max_exp`.
///
/// Each `1/(1-q^k)^b` is expanded as `sum_j C(j+b-1, b-1) q^(kj)`; the shifted geometric
/// sums with positive q-power truncate, while the single sum `sum_k k^p u^(±k)` left at
/// `q^0` is replaced by the derivatives of the Bernoulli form of `u/(1-u)`.
pub fn fourier_to_laurent(f: &FourierFamilies, max_exp: i32, q_order: usize) -> Result<Laurent, Error> {
    let mut out = Laurent::constant(QSeries::constant(f.constant.clone(), q_order), max_exp);
    for fam in &f.families {
        if fam.q_shift < 0 {
            return Err(Error::Unsupported("family with negative q-suppression does not truncate".into()));
        }
        let s = int(fam.sign as i64);
        for j in 0..=q_order {
            let e = fam.q_shift as usize + j;
            let mult = match fam.denom_power {
                0 if j == 0 => fam.coeff.clone(),
                0 => continue,
                b => &fam.coeff * binomial(j + b as usize - 1, b as usize - 1),
            };
            if e == 0 {
                let mut l = bernoulli_geometric(max_exp + fam.k_power as i32, q_order);
                for _ in 0..fam.k_power {
                    l = l.derivative();
                }
                let term = l.scale_var(&s).scale(&mult).truncate(max_exp);
                out = &out + &term;
                continue;
            }
            let mut k = 1usize;
            while e * k <= q_order {
                let weight = &mult * pow_i(&int(k as i64), fam.k_power as i32);
                let mut coeffs = Vec::new();
                for i in 0..=max_exp.max(0) {
                    let c = &weight * pow_i(&(&s * int(k as i64)), i) / factorial(i as usize);
                    coeffs.push(QSeries::monomial(c, e * k, q_order));
                }
                let term = Laurent::from_coeffs(0, coeffs, q_order).truncate(max_exp);
                out = &out + &term;
                k += 1;
            }
        }
    }
    Ok(out)
}

/// `e^x/(1-e^x) = -1/x - sum_{m>=1} B_m x^(m-1)/m!` through `x^max_exp`.
fn bernoulli_geometric(max_exp: i32, q_order: usize) -> Laurent {
    let mut coeffs = Vec::new();
    for e in -1..=max_exp {
        let m = (e + 1) as usize;
        let mut c = -bernoulli(m) / factorial(m);
        if e == 0 {
            c -= int(1);
        }
        coeffs.push(QSeries::constant(c, q_order));
    }
    Laurent::from_coeffs(-1, coeffs, q_order)
}

impl FourierU {
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(QSeries::is_zero)
    }
}

impl Zero for FourierFamilies {
    fn zero() -> Self {
        FourierFamilies::default()
    }
    fn is_zero(&self) -> bool {
        self.constant.is_zero() && self.families.iter().all(|f| f.coeff.is_zero())
    }
}

impl Add for FourierFamilies {
    type Output = FourierFamilies;
    fn add(self, rhs: FourierFamilies) -> FourierFamilies {
        self.concat(&rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    #[test]
    fn geometric_closed_form() {
        let f = FourierFamilies::new(int(0)).with(int(1), 0, 0, 1, 0);
        let l = fourier_to_laurent(&f, 2, 3).unwrap();
        assert_eq!(l.coeff(-1), QSeries::constant(int(-1), 3));
        assert_eq!(l.coeff(0), QSeries::constant(rat(-1, 2), 3));
        assert_eq!(l.coeff(1), QSeries::constant(rat(-1, 12), 3));
        assert_eq!(l.coeff(2), QSeries::zero(3));
    }

    #[test]
    fn zero_maps_to_zero() {
        let l = fourier_to_laurent(&FourierFamilies::default(), 4, 4).unwrap();
        assert!(l.is_zero());
    }

    #[test]
    fn rejects_negative_suppression() {
        let f = FourierFamilies::new(int(0)).with(int(1), 0, -1, 1, 1);
        assert!(fourier_to_laurent(&f, 3, 3).is_err());
    }

    #[test]
    fn product_of_constants() {
        let a = FourierU::constant(QSeries::constant(int(2), 3), 0, 6);
        let b = FourierU::constant(QSeries::constant(int(3), 3), 0, 6);
        let p = &a * &b;
        assert_eq!(p.k_max(), 2);
        assert_eq!(p.coeff(0), &QSeries::constant(int(6), 3));
    }
}
