//! Exact fitting of q-series by polynomials in `G_2, G_4, G_6`.

use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::series::{format_rational, QSeries, Rational};
use crate::special::eisenstein_g;
use crate::Error;

/// Exponents `(a, b, c)` of `G_2^a G_4^b G_6^c` with `2a + 4b + 6c = weight`.
pub fn basis(weight: usize) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    if weight % 2 != 0 {
        return out;
    }
    for c in 0..=weight / 6 {
        for b in 0..=(weight - 6 * c) / 4 {
            let rest = weight - 6 * c - 4 * b;
            out.push((rest / 2, b, c));
        }
    }
    out.sort();
    out
}

/// A successful fit: `series = sum coeff · G_2^a G_4^b G_6^c` through the known order.
#[derive(Clone, Debug, PartialEq)]
pub struct QuasimodularFit {
    pub weight: usize,
    pub terms: Vec<((usize, usize, usize), Rational)>,
    pub checked_through: usize,
}

impl QuasimodularFit {
    pub fn polynomial(&self) -> String {
        let mono = |(a, b, c): (usize, usize, usize)| {
            let mut parts = Vec::new();
            for (k, e) in [(2, a), (4, b), (6, c)] {
                match e {
                    0 => {}
                    1 => parts.push(format!("G_{k}")),
                    e => parts.push(format!("G_{k}^{e}")),
                }
            }
            if parts.is_empty() {
                "1".to_string()
            } else {
                parts.join("*")
            }
        };
        let body: Vec<String> = self
            .terms
            .iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(m, c)| if c.is_one() && *m != (0, 0, 0) { mono(*m) } else { format!("({})*{}", format_rational(c), mono(*m)) })
            .collect();
        if body.is_empty() {
            "0".into()
        } else {
            body.join(" + ")
        }
    }

    pub fn to_json(&self) -> Value {
        json!({"weight": self.weight, "polynomial": self.polynomial(), "checkedThrough": self.checked_through})
    }
}

/// Solves `A x = b` exactly (least-index pivoting); `None` if inconsistent.
fn solve(mut a: Vec<Vec<Rational>>, mut b: Vec<Rational>) -> Option<Vec<Rational>> {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        b.swap(r, p);
        let inv = Rational::one() / &a[r][c];
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        b[r] *= &inv;
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for k in 0..cols {
                    let v = &f * &a[r][k];
                    a[i][k] -= v;
                }
                let v = &f * &b[r];
                b[i] -= v;
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    if (r..rows).any(|i| !b[i].is_zero()) {
        return None;
    }
    let mut x = vec![Rational::zero(); cols];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = b[i].clone();
    }
    Some(x)
}

/// Smallest even weight `w ≤ max_weight` whose monomial basis reproduces `series`
/// exactly: the system is solved on the leading `dim + 5` coefficients and then
/// verified on every remaining known coefficient.
pub fn quasimodular_fit(series: &QSeries, max_weight: usize) -> Result<Option<QuasimodularFit>, Error> {
    let order = series.order();
    let g: Vec<QSeries> = [2, 4, 6].iter().map(|&k| eisenstein_g(k, order)).collect::<Result<_, _>>()?;
    for w in (0..=max_weight).step_by(2) {
        let monos = basis(w);
        let dim = monos.len();
        if order + 1 < dim + 5 {
            return Err(Error::Invalid(format!("weight {w} needs at least {} coefficients, have {}", dim + 5, order + 1)));
        }
        let values: Vec<QSeries> = monos.iter().map(|&(a, b, c)| &(&g[0].pow(a) * &g[1].pow(b)) * &g[2].pow(c)).collect();
        let lead = dim + 5;
        let a: Vec<Vec<Rational>> = (0..lead).map(|k| values.iter().map(|v| v.coeff(k)).collect()).collect();
        let b: Vec<Rational> = (0..lead).map(|k| series.coeff(k)).collect();
        let Some(x) = solve(a, b) else { continue };
        let fitted = values.iter().zip(&x).fold(QSeries::zero(order), |acc, (v, c)| &acc + &v.scale(c));
        if &fitted == series {
            return Ok(Some(QuasimodularFit { weight: w, terms: monos.into_iter().zip(x).collect(), checked_through: order }));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::{int, rat};

    #[test]
    fn basis_sizes() {
        assert_eq!(basis(0), vec![(0, 0, 0)]);
        assert_eq!(basis(6).len(), 3);
        assert_eq!(basis(12).len(), 7);
        assert!(basis(3).is_empty());
    }

    #[test]
    fn fits_known_forms() {
        let g2 = eisenstein_g(2, 20).unwrap();
        let f = quasimodular_fit(&g2, 8).unwrap().unwrap();
        assert_eq!((f.weight, f.polynomial()), (2, "G_2".to_string()));
        let f2 = quasimodular_fit(&g2.pow(2), 8).unwrap().unwrap();
        assert_eq!(f2.weight, 4);
        assert_eq!(f2.terms.iter().find(|(m, _)| *m == (2, 0, 0)).unwrap().1, int(1));
        let mixed = &g2.pow(2).scale(&rat(3, 2)) + &eisenstein_g(4, 20).unwrap();
        assert_eq!(quasimodular_fit(&mixed, 8).unwrap().unwrap().weight, 4);
        // q/(1-q) is not quasimodular
        let junk = QSeries::from_coeffs((0..=20).map(|k| if k == 0 { int(0) } else { int(1) }).collect(), 20);
        assert!(quasimodular_fit(&junk, 8).unwrap().is_none());
    }
}
