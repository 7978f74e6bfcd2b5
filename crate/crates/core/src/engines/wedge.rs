use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::combinatorics::{bernoulli, integer_partitions};
use crate::series::{factorial, format_rational, int, pow_i, rat, Laurent, QSeries, Rational, Ray};
use crate::Error;

/// Largest q-order accepted by the wedge engine.
pub const MAX_WEDGE_Q: usize = 12;
/// Largest q-order for single-bracket extraction.
pub const MAX_BRACKET_Q: usize = 20;

/// Taylor coefficients `[z^{-1}], [z^0], ..., [z^top]` of the regularized eigenvalue
/// `w(λ, z) = 1/(e^{z/2} - e^{-z/2}) + sum_k (e^{z(λ_k - k + 1/2)} - e^{z(-k + 1/2)})`.
pub fn eigenvalue_series(lambda: &[usize], top: i32) -> Vec<Rational> {
    let mut out = Vec::with_capacity((top + 2).max(0) as usize);
    for m in -1..=top {
        // z/(e^{z/2} - e^{-z/2}) = sum_k B_k(1/2) z^k/k!, B_k(1/2) = (2^{1-k} - 1) B_k
        let k = (m + 1) as usize;
        let bk_half = (pow_i(&rat(1, 2), k as i32 - 1) - int(1)) * bernoulli(k);
        let mut c = bk_half / factorial(k);
        if m >= 1 {
            let mu = m as i32;
            let mut s = Rational::zero();
            for (idx, &part) in lambda.iter().enumerate() {
                let kk = idx as i64 + 1;
                let a = int(part as i64 - kk) + rat(1, 2);
                let b = int(-kk) + rat(1, 2);
                s += pow_i(&a, mu) - pow_i(&b, mu);
            }
            c += s / factorial(m as usize);
        }
        out.push(c);
    }
    out
}

fn check_q(q_order: usize) -> Result<(), Error> {
    if q_order > MAX_WEDGE_Q {
        return Err(Error::Unsupported(format!("wedge q-order above {MAX_WEDGE_Q}")));
    }
    Ok(())
}

/// Multivariate coefficients of `F_n = sum_λ q^{|λ|} prod_i w(λ, z_i)`: a map from
/// exponent vectors `(m_1, ..., m_n)`, `m_i ≥ -1`, `sum m_i ≤ max_total`, to q-series.
#[derive(Clone, Debug, PartialEq)]
pub struct WedgeCoefficients {
    pub n: usize,
    pub q_order: usize,
    pub max_total: i32,
    pub coeffs: BTreeMap<Vec<i32>, QSeries>,
}

fn exponent_vectors(n: usize, max_total: i32) -> Vec<Vec<i32>> {
    fn rec(n: usize, budget: i32, cur: &mut Vec<i32>, out: &mut Vec<Vec<i32>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        let rest = (n - cur.len() - 1) as i32;
        // the remaining variables need at least -1 each
        for m in -1..=budget + rest {
            cur.push(m);
            rec(n, budget - m, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, max_total, &mut Vec::new(), &mut out);
    out
}

/// The wedge trace `F_n` through `q^q_order`, all monomials of total degree ≤ `max_total`.
pub fn fn_wedge(n: usize, q_order: usize, max_total: i32) -> Result<WedgeCoefficients, Error> {
    check_q(q_order)?;
    if n == 0 {
        return Err(Error::Invalid("F_n needs n ≥ 1".into()));
    }
    let vectors = exponent_vectors(n, max_total);
    let top = max_total + n as i32 - 1;
    let partitions = integer_partitions(q_order);
    let per_lambda: Vec<(usize, Vec<Rational>)> = partitions
        .par_iter()
        .map(|lambda| {
            let w = eigenvalue_series(lambda, top);
            let vals = vectors
                .iter()
                .map(|v| v.iter().fold(Rational::one(), |acc, &m| acc * &w[(m + 1) as usize]))
                .collect();
            (lambda.iter().sum(), vals)
        })
        .collect();
    let mut table = vec![vec![Rational::zero(); q_order + 1]; vectors.len()];
    for (size, vals) in per_lambda {
        for (slot, v) in table.iter_mut().zip(vals) {
            slot[size] += v;
        }
    }
    let coeffs = vectors.into_iter().zip(table).map(|(v, c)| (v, QSeries::from_coeffs(c, q_order))).collect();
    Ok(WedgeCoefficients { n, q_order, max_total, coeffs })
}

impl WedgeCoefficients {
    /// `F_n(c_1 t, ..., c_n t)` as a Laurent series in `t`, exact through `t^max_total`.
    pub fn on_ray(&self, ray: &Ray) -> Result<Laurent, Error> {
        if ray.len() != self.n {
            return Err(Error::Invalid(format!("ray has {} entries, expected {}", ray.len(), self.n)));
        }
        let min = -(self.n as i32);
        let mut coeffs = vec![QSeries::zero(self.q_order); (self.max_total - min + 1) as usize];
        for (v, c) in &self.coeffs {
            let w = v.iter().zip(ray.dir()).fold(Rational::one(), |acc, (&m, d)| acc * pow_i(d, m));
            let e: i32 = v.iter().sum();
            let slot = &mut coeffs[(e - min) as usize];
            *slot = &*slot + &c.scale(&w);
        }
        Ok(Laurent::from_coeffs(min, coeffs, self.q_order))
    }

    pub fn to_json(&self) -> Value {
        let entries: Vec<Value> = self
            .coeffs
            .iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(v, c)| json!({"zexp": v, "qcoeffs": c.coeffs().iter().map(format_rational).collect::<Vec<_>>()}))
            .collect();
        json!({"engine": "wedge", "n": self.n, "qOrder": self.q_order, "maxTotal": self.max_total, "coefficients": entries})
    }
}

/// `θ(Σz) (q)_∞ F_n` on a ray, which equals `T_n`.
pub fn tn_wedge(n: usize, ray: &Ray, th: &crate::special::ThetaExpansion, t_order: i32) -> Result<Laurent, Error> {
    let w = fn_wedge(n, th.q_order(), t_order)?;
    let f = w.on_ray(ray)?;
    let sum: Rational = ray.dir().iter().sum();
    let theta = th.theta().scale_var(&sum);
    Ok((&theta * &f).mul_q(&QSeries::euler(th.q_order())))
}

/// A stationary bracket `<prod τ_{ℓ_i}(ω)>` read off the wedge trace.
#[derive(Clone, Debug, PartialEq)]
pub struct GwBracket {
    pub ell: Vec<i32>,
    pub genus: i32,
    /// Disconnected series: `[prod z_i^{ℓ_i+1}] F_n`.
    pub disconnected: QSeries,
    /// `(q)_∞` times the disconnected series.
    pub normalized: QSeries,
}

impl GwBracket {
    pub fn to_json(&self) -> Value {
        let s = |q: &QSeries| q.coeffs().iter().map(format_rational).collect::<Vec<_>>();
        json!({"ell": self.ell, "genus": self.genus, "disconnected": s(&self.disconnected), "normalized": s(&self.normalized)})
    }
}

/// Genus from the dimension axiom `2g - 2 + n = sum (ℓ_i + 1)`.
pub fn genus_of(ell: &[i32]) -> Result<i32, Error> {
    if ell.is_empty() || ell.iter().any(|&l| l < -2) {
        return Err(Error::Invalid("exponents must be ≥ -2 and nonempty".into()));
    }
    let two_g = ell.iter().map(|l| l + 1).sum::<i32>() + 2 - ell.len() as i32;
    if two_g < 0 || two_g % 2 != 0 {
        return Err(Error::Invalid(format!("no integer genus ≥ 0 satisfies the dimension axiom for {ell:?}")));
    }
    Ok(two_g / 2)
}

/// Reads the coefficient of `prod z_i^{ℓ_i+1}` directly (one monomial, all partitions).
pub fn gw_extract(ell: &[i32], q_order: usize) -> Result<GwBracket, Error> {
    if q_order > MAX_BRACKET_Q {
        return Err(Error::Unsupported(format!("bracket q-order above {MAX_BRACKET_Q}")));
    }
    let genus = genus_of(ell)?;
    let top = ell.iter().map(|l| l + 1).max().unwrap_or(-1);
    let mut c = vec![Rational::zero(); q_order + 1];
    for lambda in integer_partitions(q_order) {
        let w = eigenvalue_series(&lambda, top);
        let v = ell.iter().fold(Rational::one(), |acc, &l| acc * &w[(l + 2) as usize]);
        c[lambda.iter().sum::<usize>()] += v;
    }
    let disconnected = QSeries::from_coeffs(c, q_order);
    let normalized = &disconnected * &QSeries::euler(q_order);
    Ok(GwBracket { ell: ell.to_vec(), genus, disconnected, normalized })
}
