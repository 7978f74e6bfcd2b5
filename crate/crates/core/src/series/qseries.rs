use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde_json::{json, Value};

use super::rational::{format_rational, int, parse_rational, Rational};
use crate::Error;

/// Truncated power series in `q`: coefficients of `q^0..=q^order` are exact.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QSeries {
    coeffs: Vec<Rational>,
}

impl QSeries {
    pub fn zero(order: usize) -> Self {
        QSeries { coeffs: vec![Rational::zero(); order + 1] }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(Rational::one(), order)
    }

    pub fn constant(c: Rational, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// `c * q^k` (zero when `k` exceeds the order).
    pub fn monomial(c: Rational, k: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    /// Pads with zeros or truncates to exactly `order + 1` coefficients.
    pub fn from_coeffs(mut coeffs: Vec<Rational>, order: usize) -> Self {
        coeffs.resize(order + 1, Rational::zero());
        QSeries { coeffs }
    }

    pub fn from_ints(c: &[i64], order: usize) -> Self {
        Self::from_coeffs(c.iter().map(|&x| int(x)).collect(), order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> &Rational {
        &self.coeffs[0]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::from_coeffs(self.coeffs[..=order.min(self.order())].to_vec(), order.min(self.order()))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        QSeries { coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    /// Multiplication by `q^s`.
    pub fn shift(&self, s: usize) -> Self {
        let n = self.order();
        let mut out = Self::zero(n);
        for k in 0..=n {
            if k + s > n {
                break;
            }
            out.coeffs[k + s] = self.coeffs[k].clone();
        }
        out
    }

    pub fn inv(&self) -> Result<Self, Error> {
        let a0 = &self.coeffs[0];
        if a0.is_zero() {
            return Err(Error::NonUnit("q-series with zero constant term".into()));
        }
        let n = self.order();
        let inv0 = a0.recip();
        let mut b: Vec<Rational> = Vec::with_capacity(n + 1);
        b.push(inv0.clone());
        for k in 1..=n {
            let mut s = Rational::zero();
            for j in 1..=k {
                if !self.coeffs[j].is_zero() {
                    s += &self.coeffs[j] * &b[k - j];
                }
            }
            b.push(-s * &inv0);
        }
        Ok(QSeries { coeffs: b })
    }

    pub fn exp(&self) -> Result<Self, Error> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::NonUnit("exp needs zero constant term".into()));
        }
        let n = self.order();
        let mut g = vec![Rational::zero(); n + 1];
        g[0] = Rational::one();
        for k in 1..=n {
            let mut s = Rational::zero();
            for j in 1..=k {
                if !self.coeffs[j].is_zero() {
                    s += int(j as i64) * &self.coeffs[j] * &g[k - j];
                }
            }
            g[k] = s / int(k as i64);
        }
        Ok(QSeries { coeffs: g })
    }

    pub fn log(&self) -> Result<Self, Error> {
        if !self.coeffs[0].is_one() {
            return Err(Error::NonUnit("log needs constant term 1".into()));
        }
        let n = self.order();
        let d = self.derivative();
        let quot = &d * &self.inv()?;
        let mut out = Self::zero(n);
        for k in 1..=n {
            out.coeffs[k] = quot.coeff(k - 1) / int(k as i64);
        }
        Ok(out)
    }

    /// `d/dq`, keeping the order (the top coefficient becomes unknown and is zeroed).
    fn derivative(&self) -> Self {
        let n = self.order();
        let mut out = Self::zero(n);
        for k in 1..=n {
            out.coeffs[k - 1] = &self.coeffs[k] * int(k as i64);
        }
        out
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = Self::one(self.order());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// The Euler function `(q)_inf = prod (1 - q^k)`.
    pub fn euler(order: usize) -> Self {
        let mut acc = Self::one(order);
        for k in 1..=order {
            let mut f = Self::one(order);
            f.coeffs[k] = -Rational::one();
            acc = &acc * &f;
        }
        acc
    }

    pub fn to_json(&self) -> Value {
        json!({
            "var": "q",
            "minExp": 0,
            "order": self.order(),
            "coeffs": self.coeffs.iter().map(format_rational).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self, Error> {
        let bad = |m: &str| Error::Parse(format!("q-series json: {m}"));
        if v.get("var").and_then(Value::as_str) != Some("q") {
            return Err(bad("var must be \"q\""));
        }
        let order = v.get("order").and_then(Value::as_u64).ok_or_else(|| bad("order"))? as usize;
        let arr = v.get("coeffs").and_then(Value::as_array).ok_or_else(|| bad("coeffs"))?;
        if arr.len() != order + 1 {
            return Err(bad("coefficient count must be order + 1"));
        }
        let coeffs = arr
            .iter()
            .map(|c| c.as_str().ok_or_else(|| bad("coefficient")).and_then(parse_rational))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(QSeries { coeffs })
    }
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})q")?,
                _ => write!(f, "({c})q^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(q^{})", self.order() + 1)
    }
}

impl<'a> Add for &'a QSeries {
    type Output = QSeries;
    fn add(self, rhs: &QSeries) -> QSeries {
        let n = self.order().min(rhs.order());
        QSeries { coeffs: (0..=n).map(|k| &self.coeffs[k] + &rhs.coeffs[k]).collect() }
    }
}

impl<'a> Sub for &'a QSeries {
    type Output = QSeries;
    fn sub(self, rhs: &QSeries) -> QSeries {
        let n = self.order().min(rhs.order());
        QSeries { coeffs: (0..=n).map(|k| &self.coeffs[k] - &rhs.coeffs[k]).collect() }
    }
}

impl<'a> Neg for &'a QSeries {
    type Output = QSeries;
    fn neg(self) -> QSeries {
        QSeries { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl<'a> Mul for &'a QSeries {
    type Output = QSeries;
    fn mul(self, rhs: &QSeries) -> QSeries {
        let n = self.order().min(rhs.order());
        let mut out = vec![Rational::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(n + 1 - i) {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        QSeries { coeffs: out }
    }
}

impl Add for QSeries {
    type Output = QSeries;
    fn add(self, rhs: QSeries) -> QSeries {
        &self + &rhs
    }
}

impl Sub for QSeries {
    type Output = QSeries;
    fn sub(self, rhs: QSeries) -> QSeries {
        &self - &rhs
    }
}

impl Mul for QSeries {
    type Output = QSeries;
    fn mul(self, rhs: QSeries) -> QSeries {
        &self * &rhs
    }
}

impl Neg for QSeries {
    type Output = QSeries;
    fn neg(self) -> QSeries {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn telescoping() {
        let n = 8;
        let one_minus_q = QSeries::from_ints(&[1, -1], n);
        let geometric = QSeries::from_coeffs(vec![int(1); n + 1], n);
        assert_eq!(&one_minus_q * &geometric, QSeries::one(n));
    }

    #[test]
    fn exp_log_inverse_pair() {
        let f = QSeries::from_ints(&[1, 1, 1], 10);
        assert_eq!(f.log().unwrap().exp().unwrap(), f);
    }

    #[test]
    fn partition_numbers() {
        let p = QSeries::euler(5).inv().unwrap();
        assert_eq!(p, QSeries::from_ints(&[1, 1, 2, 3, 5, 7], 5));
    }

    #[test]
    fn illegal_leading_terms() {
        assert!(QSeries::zero(3).inv().is_err());
        assert!(QSeries::one(3).exp().is_err());
        assert!(QSeries::from_ints(&[2], 3).log().is_err());
    }

    #[test]
    fn orders_take_minimum() {
        let a = QSeries::one(3);
        let b = QSeries::one(5);
        assert_eq!((&a + &b).order(), 3);
        assert_eq!((&a * &b).order(), 3);
    }

    #[test]
    fn json_round_trip() {
        let f = QSeries::from_coeffs(vec![crate::rat(-1, 24), int(1), int(3)], 4);
        assert_eq!(QSeries::from_json(&f.to_json()).unwrap(), f);
    }
}
