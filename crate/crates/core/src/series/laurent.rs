use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde_json::{json, Value};

use super::qseries::QSeries;
use super::rational::{format_rational, int, parse_rational, pow_i, Rational};
use crate::Error;

/// Truncated Laurent series in one formal variable with `QSeries` coefficients.
///
/// Coefficients of `x^min_exp ..= x^max_exp()` are exact; everything above
/// `max_exp()` is unknown. Every coefficient has the same q-order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Laurent {
    min_exp: i32,
    coeffs: Vec<QSeries>,
    q_order: usize,
}

/// First coefficient where two series differ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub exp: i32,
    pub q_power: usize,
    pub left: Rational,
    pub right: Rational,
}

impl std::fmt::Display for Mismatch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "coefficient t^{} q^{}: {} != {}", self.exp, self.q_power, self.left, self.right)
    }
}

impl Laurent {
    /// The zero series known on `min_exp..=max_exp`.
    pub fn zero(min_exp: i32, max_exp: i32, q_order: usize) -> Self {
        let len = (max_exp - min_exp + 1).max(0) as usize;
        Laurent { min_exp, coeffs: vec![QSeries::zero(q_order); len], q_order }
    }

    pub fn constant(c: QSeries, max_exp: i32) -> Self {
        let q_order = c.order();
        let mut out = Self::zero(0, max_exp, q_order);
        if max_exp >= 0 {
            out.coeffs[0] = c;
        }
        out
    }

    pub fn one(max_exp: i32, q_order: usize) -> Self {
        Self::constant(QSeries::one(q_order), max_exp)
    }

    /// `c * x^k`, known through `max_exp`.
    pub fn monomial(c: Rational, k: i32, max_exp: i32, q_order: usize) -> Self {
        let lo = k.min(max_exp + 1);
        let mut out = Self::zero(lo, max_exp, q_order);
        if k <= max_exp {
            out.coeffs[(k - lo) as usize] = QSeries::constant(c, q_order);
        }
        out
    }

    /// `c * x^k` for a q-series `c`, known through `max_exp`.
    pub fn term(c: QSeries, k: i32, max_exp: i32) -> Self {
        let q_order = c.order();
        let lo = k.min(max_exp + 1);
        let mut out = Self::zero(lo, max_exp, q_order);
        if k <= max_exp {
            out.coeffs[(k - lo) as usize] = c;
        }
        out
    }

    /// Builds from explicit coefficients of `x^min_exp, x^(min_exp+1), ...`.
    pub fn from_coeffs(min_exp: i32, coeffs: Vec<QSeries>, q_order: usize) -> Self {
        let coeffs = coeffs.into_iter().map(|c| QSeries::from_coeffs(c.coeffs().to_vec(), q_order)).collect();
        Laurent { min_exp, coeffs, q_order }
    }

    pub fn min_exp(&self) -> i32 {
        self.min_exp
    }

    /// Highest exponent whose coefficient is exact (the z-order).
    pub fn max_exp(&self) -> i32 {
        self.min_exp + self.coeffs.len() as i32 - 1
    }

    pub fn q_order(&self) -> usize {
        self.q_order
    }

    pub fn get(&self, k: i32) -> Option<&QSeries> {
        if k < self.min_exp || k > self.max_exp() {
            None
        } else {
            Some(&self.coeffs[(k - self.min_exp) as usize])
        }
    }

    /// Coefficient of `x^k`; zero below the stored range.
    ///
    /// Panics when `k` lies above the known range, because that coefficient is not determined.
    pub fn coeff(&self, k: i32) -> QSeries {
        assert!(k <= self.max_exp(), "coefficient x^{k} beyond truncation order {}", self.max_exp());
        self.get(k).cloned().unwrap_or_else(|| QSeries::zero(self.q_order))
    }

    pub fn iter(&self) -> impl Iterator<Item = (i32, &QSeries)> {
        self.coeffs.iter().enumerate().map(move |(i, c)| (self.min_exp + i as i32, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(QSeries::is_zero)
    }

    /// Lowest exponent with a nonzero coefficient, if any.
    pub fn valuation(&self) -> Option<i32> {
        self.iter().find(|(_, c)| !c.is_zero()).map(|(k, _)| k)
    }

    /// Drops exactly-zero leading coefficients.
    pub fn normalized(&self) -> Self {
        match self.valuation() {
            Some(v) => Laurent {
                min_exp: v,
                coeffs: self.coeffs[(v - self.min_exp) as usize..].to_vec(),
                q_order: self.q_order,
            },
            None => self.clone(),
        }
    }

    pub fn truncate(&self, max_exp: i32) -> Self {
        let max_exp = max_exp.min(self.max_exp());
        let len = (max_exp - self.min_exp + 1).max(0) as usize;
        Laurent { min_exp: self.min_exp, coeffs: self.coeffs[..len].to_vec(), q_order: self.q_order }
    }

    pub fn truncate_q(&self, q_order: usize) -> Self {
        let q_order = q_order.min(self.q_order);
        Laurent {
            min_exp: self.min_exp,
            coeffs: self.coeffs.iter().map(|c| c.truncate(q_order)).collect(),
            q_order,
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        self.map(|s| s.scale(c))
    }

    pub fn mul_q(&self, s: &QSeries) -> Self {
        let q_order = self.q_order.min(s.order());
        Laurent { min_exp: self.min_exp, coeffs: self.coeffs.iter().map(|c| c * s).collect(), q_order }
    }

    fn map(&self, f: impl Fn(&QSeries) -> QSeries) -> Self {
        Laurent { min_exp: self.min_exp, coeffs: self.coeffs.iter().map(f).collect(), q_order: self.q_order }
    }

    /// Multiplication by `x^s`.
    pub fn shift_exp(&self, s: i32) -> Self {
        Laurent { min_exp: self.min_exp + s, coeffs: self.coeffs.clone(), q_order: self.q_order }
    }

    /// Substitutes `x -> a x`.
    pub fn scale_var(&self, a: &Rational) -> Self {
        assert!(!a.is_zero(), "scale_var by zero");
        Laurent {
            min_exp: self.min_exp,
            coeffs: self.iter().map(|(k, c)| c.scale(&pow_i(a, k))).collect(),
            q_order: self.q_order,
        }
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.is_empty() {
            return self.clone();
        }
        let coeffs: Vec<QSeries> = self.iter().map(|(k, c)| c.scale(&int(k as i64))).collect();
        Laurent { min_exp: self.min_exp - 1, coeffs, q_order: self.q_order }
    }

    pub fn inv(&self) -> Result<Self, Error> {
        let a = self.normalized();
        if a.is_zero() {
            return Err(Error::NonUnit("inverse of a zero Laurent series".into()));
        }
        let lead = &a.coeffs[0];
        let lead_inv = lead
            .inv()
            .map_err(|_| Error::NonUnit("Laurent leading coefficient is not a unit q-series".into()))?;
        let n = a.coeffs.len();
        let mut b: Vec<QSeries> = Vec::with_capacity(n);
        b.push(lead_inv.clone());
        for k in 1..n {
            let mut s = QSeries::zero(self.q_order);
            for j in 1..=k {
                if !a.coeffs[j].is_zero() {
                    s = &s + &(&a.coeffs[j] * &b[k - j]);
                }
            }
            b.push(-&(&s * &lead_inv));
        }
        Ok(Laurent { min_exp: -a.min_exp, coeffs: b, q_order: self.q_order })
    }

    pub fn div(&self, rhs: &Laurent) -> Result<Self, Error> {
        Ok(self * &rhs.inv()?)
    }

    pub fn pow(&self, e: usize) -> Self {
        if e == 0 {
            return Laurent::one(self.max_exp() - self.min_exp, self.q_order);
        }
        let mut acc = self.clone();
        for _ in 1..e {
            acc = &acc * self;
        }
        acc
    }

    /// `exp` of a series with no negative powers whose constant coefficient is `O(q)`.
    pub fn exp(&self) -> Result<Self, Error> {
        let a = self.normalized();
        if !a.is_zero() && a.min_exp < 0 {
            return Err(Error::NonUnit("exp of a series with a pole".into()));
        }
        let max = self.max_exp();
        if max < 0 {
            return Ok(Laurent::zero(0, max, self.q_order));
        }
        let n = max as usize;
        let mut f: Vec<QSeries> =
            (0..=n as i32).map(|k| self.get(k).cloned().unwrap_or_else(|| QSeries::zero(self.q_order))).collect();
        let e0 = f[0].exp()?;
        f[0] = QSeries::zero(self.q_order);
        let mut g = vec![QSeries::zero(self.q_order); n + 1];
        g[0] = QSeries::one(self.q_order);
        for k in 1..=n {
            let mut s = QSeries::zero(self.q_order);
            for j in 1..=k {
                if !f[j].is_zero() {
                    s = &s + &(&f[j] * &g[k - j]).scale(&int(j as i64));
                }
            }
            g[k] = s.scale(&Rational::new(1.into(), (k as i64).into()));
        }
        let coeffs = g.iter().map(|c| c * &e0).collect();
        Ok(Laurent { min_exp: 0, coeffs, q_order: self.q_order })
    }

    /// `log` of a power series whose constant term has q-constant 1.
    pub fn log(&self) -> Result<Self, Error> {
        let a = self.normalized();
        if a.min_exp != 0 || !a.coeffs[0].constant_term().is_one() {
            return Err(Error::NonUnit("log needs a power series with constant term 1 + O(q)".into()));
        }
        let c0 = a.coeffs[0].log()?;
        let quot = a.derivative().div(&a)?;
        let max = a.max_exp();
        let mut coeffs = vec![c0];
        for k in 1..=max {
            coeffs.push(quot.coeff(k - 1).scale(&Rational::new(1.into(), (k as i64).into())));
        }
        Ok(Laurent { min_exp: 0, coeffs, q_order: self.q_order })
    }

    /// Exact comparison on the shared known range.
    pub fn compare(&self, other: &Laurent) -> Result<(), Mismatch> {
        let lo = self.min_exp.min(other.min_exp);
        let hi = self.max_exp().min(other.max_exp());
        let n = self.q_order.min(other.q_order);
        for k in lo..=hi {
            let a = self.coeff(k);
            let b = other.coeff(k);
            for j in 0..=n {
                if a.coeff(j) != b.coeff(j) {
                    return Err(Mismatch { exp: k, q_power: j, left: a.coeff(j), right: b.coeff(j) });
                }
            }
        }
        Ok(())
    }

    pub fn to_json(&self, var: &str) -> Value {
        json!({
            "var": var,
            "minExp": self.min_exp,
            "order": self.max_exp(),
            "qOrder": self.q_order,
            "coeffs": self
                .coeffs
                .iter()
                .map(|c| c.coeffs().iter().map(format_rational).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self, Error> {
        let bad = |m: &str| Error::Parse(format!("laurent json: {m}"));
        let min_exp = v.get("minExp").and_then(Value::as_i64).ok_or_else(|| bad("minExp"))? as i32;
        let order = v.get("order").and_then(Value::as_i64).ok_or_else(|| bad("order"))? as i32;
        let q_order = v.get("qOrder").and_then(Value::as_u64).ok_or_else(|| bad("qOrder"))? as usize;
        let rows = v.get("coeffs").and_then(Value::as_array).ok_or_else(|| bad("coeffs"))?;
        if rows.len() as i32 != (order - min_exp + 1).max(0) {
            return Err(bad("row count must match minExp..=order"));
        }
        let mut coeffs = Vec::with_capacity(rows.len());
        for row in rows {
            let row = row.as_array().ok_or_else(|| bad("row"))?;
            if row.len() != q_order + 1 {
                return Err(bad("row length must be qOrder + 1"));
            }
            let c = row
                .iter()
                .map(|c| c.as_str().ok_or_else(|| bad("coefficient")).and_then(parse_rational))
                .collect::<Result<Vec<_>, _>>()?;
            coeffs.push(QSeries::from_coeffs(c, q_order));
        }
        Ok(Laurent { min_exp, coeffs, q_order })
    }
}

impl<'a> Add for &'a Laurent {
    type Output = Laurent;
    fn add(self, rhs: &Laurent) -> Laurent {
        let lo = self.min_exp.min(rhs.min_exp);
        let hi = self.max_exp().min(rhs.max_exp());
        let q = self.q_order.min(rhs.q_order);
        let mut out = Laurent::zero(lo, hi, q);
        for k in lo..=hi {
            let mut c = QSeries::zero(q);
            if let Some(a) = self.get(k) {
                c = &c + a;
            }
            if let Some(b) = rhs.get(k) {
                c = &c + b;
            }
            out.coeffs[(k - lo) as usize] = c;
        }
        out
    }
}

impl<'a> Neg for &'a Laurent {
    type Output = Laurent;
    fn neg(self) -> Laurent {
        self.map(|c| -c)
    }
}

impl<'a> Sub for &'a Laurent {
    type Output = Laurent;
    fn sub(self, rhs: &Laurent) -> Laurent {
        self + &(-rhs)
    }
}

impl<'a> Mul for &'a Laurent {
    type Output = Laurent;
    fn mul(self, rhs: &Laurent) -> Laurent {
        let q = self.q_order.min(rhs.q_order);
        let lo = self.min_exp + rhs.min_exp;
        let hi = (self.max_exp() + rhs.min_exp).min(rhs.max_exp() + self.min_exp);
        let mut out = Laurent::zero(lo, hi, q);
        for (i, a) in self.iter() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.iter() {
                if i + j > hi {
                    break;
                }
                if b.is_zero() {
                    continue;
                }
                let slot = &mut out.coeffs[(i + j - lo) as usize];
                *slot = &*slot + &(a * b);
            }
        }
        out
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for Laurent {
            type Output = Laurent;
            fn $m(self, rhs: Laurent) -> Laurent {
                (&self).$m(&rhs)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    #[test]
    fn laurent_unit() {
        let z = Laurent::monomial(int(1), 1, 6, 3);
        let zi = z.inv().unwrap();
        assert_eq!(zi.min_exp(), -1);
        let p = &z * &zi;
        assert!(p.compare(&Laurent::one(p.max_exp(), 3)).is_ok());
    }

    #[test]
    fn monomial_scaling() {
        let z2 = Laurent::monomial(int(1), 2, 5, 2);
        assert_eq!(z2.scale_var(&int(3)).coeff(2), QSeries::constant(int(9), 2));
    }

    #[test]
    fn exp_log_round_trip() {
        let f = Laurent::from_coeffs(
            0,
            vec![QSeries::from_ints(&[1, 2], 4), QSeries::from_ints(&[0, 1], 4), QSeries::constant(rat(1, 3), 4)],
            4,
        );
        let back = f.log().unwrap().exp().unwrap();
        assert!(back.compare(&f).is_ok());
    }

    #[test]
    fn division_tracks_precision() {
        let z = Laurent::monomial(int(1), 1, 4, 2);
        let one = Laurent::one(4, 2);
        let sum = &z + &one;
        let q = one.div(&sum).unwrap();
        assert_eq!(q.max_exp(), 4);
        assert_eq!(q.coeff(3), QSeries::constant(int(-1), 2));
        assert!(Laurent::zero(0, 3, 2).inv().is_err());
    }

    #[test]
    fn product_precision_uses_poles() {
        let a = Laurent::monomial(int(1), -2, 5, 1);
        let b = Laurent::monomial(int(1), 0, 5, 1);
        assert_eq!((&a * &b).max_exp(), 3);
    }
}

/// Determinant of a square matrix of Laurent series by cofactor expansion along the
/// first row (intended for the small matrices of the determinant formulas).
pub fn laurent_det(m: &[Vec<Laurent>]) -> Laurent {
    fn rec(m: &[Vec<Laurent>], rows: &[usize], cols: &[usize]) -> Laurent {
        if rows.len() == 1 {
            return m[rows[0]][cols[0]].clone();
        }
        let r = rows[0];
        let rest_rows = &rows[1..];
        let mut acc: Option<Laurent> = None;
        for (pos, &c) in cols.iter().enumerate() {
            let e = &m[r][c];
            if e.is_zero() {
                continue;
            }
            let rest_cols: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
            let term = e * &rec(m, rest_rows, &rest_cols);
            acc = Some(match (acc, pos % 2 == 0) {
                (None, true) => term,
                (None, false) => -&term,
                (Some(a), true) => &a + &term,
                (Some(a), false) => &a - &term,
            });
        }
        acc.unwrap_or_else(|| m[r][cols[0]].scale(&crate::series::int(0)))
    }
    assert!(!m.is_empty() && m.iter().all(|r| r.len() == m.len()), "square matrix required");
    let idx: Vec<usize> = (0..m.len()).collect();
    rec(m, &idx, &idx)
}
