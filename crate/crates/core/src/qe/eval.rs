use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;

use crate::series::{factorial, int, Laurent, QSeries, Rational, Ray, Subset};
use crate::special::ThetaExpansion;
use crate::Error;

use super::expr::{Gen, QEExpr};

/// Laurent series in one formal variable `x` with `QEExpr` coefficients, exact for
/// exponents up to the bound it was built with.
pub type SymbolicLaurent = BTreeMap<i32, QEExpr>;

fn generator_on_ray(g: Gen, th: &ThetaExpansion, ray: &Ray) -> Result<Laurent, Error> {
    Ok(match g {
        Gen::E(m, s) => th.estar(m as usize).scale_var(&ray.slope(s)?),
        Gen::G(k) => Laurent::constant(th.eisenstein(k as usize), th.z_order()),
        Gen::Z(i) => Laurent::term(QSeries::constant(ray.dir()[i as usize].clone(), th.q_order()), 1, th.z_order()),
        Gen::A(_) => return Err(Error::Unsupported("the completion symbol has no q-series expansion".into())),
    })
}

/// Specializes `z_i -> c_i t` and expands every generator as a series in `t`.
pub fn qe_eval(e: &QEExpr, th: &ThetaExpansion, ray: &Ray) -> Result<Laurent, Error> {
    let mut cache: HashMap<(Gen, u32), Laurent> = HashMap::new();
    for g in e.generators() {
        cache.insert((g, 1), generator_on_ray(g, th, ray)?);
    }
    for (m, _) in e.terms() {
        for (g, p) in m {
            for k in 2..=*p {
                if !cache.contains_key(&(*g, k)) {
                    let v = &cache[&(*g, k - 1)] * &cache[&(*g, 1)];
                    cache.insert((*g, k), v);
                }
            }
        }
    }
    let terms: Vec<_> = e.terms().collect();
    let parts: Vec<Laurent> = terms
        .par_iter()
        .map(|(m, c)| {
            let mut acc: Option<Laurent> = None;
            for (g, p) in m.iter() {
                let f = &cache[&(*g, *p)];
                acc = Some(match acc {
                    None => f.clone(),
                    Some(a) => &a * f,
                });
            }
            match acc {
                None => Laurent::constant(QSeries::constant((*c).clone(), th.q_order()), th.z_order()),
                Some(a) => a.scale(c),
            }
        })
        .collect();
    Ok(parts
        .into_iter()
        .fold(Laurent::zero(0, th.z_order(), th.q_order()), |acc, p| &acc + &p))
}

/// `E*_m(x) = (-1)^{m-1}(m-1)! x^{-m} - sum_{2k>m} 2G_{2k} x^{2k-m}/(2k-m)!` through `x^hi`.
pub fn estar_symbolic_laurent(m: usize, hi: i32) -> SymbolicLaurent {
    let mut out = SymbolicLaurent::new();
    let sign = if m % 2 == 1 { int(1) } else { int(-1) };
    out.insert(-(m as i32), QEExpr::constant(sign * factorial(m - 1)));
    let mut two_k = m + 1;
    while (two_k as i32 - m as i32) <= hi {
        if two_k % 2 == 0 {
            let e = two_k - m;
            out.insert(e as i32, QEExpr::g(two_k).scale(&(int(-2) / factorial(e))));
        }
        two_k += 1;
    }
    out
}

fn mul_symbolic(a: &SymbolicLaurent, b: &SymbolicLaurent, hi: i32) -> SymbolicLaurent {
    let mut out = SymbolicLaurent::new();
    for (i, x) in a {
        for (j, y) in b {
            if i + j > hi {
                continue;
            }
            let slot = out.entry(i + j).or_insert_with(QEExpr::zero);
            *slot = &*slot + &(x * y);
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

/// Expands every generator `E*_m(z_S)` as a Laurent series in the formal variable
/// `x = z_S` (all other generators are coefficients), exact through `x^hi`.
pub fn expand_in_argument(e: &QEExpr, s: Subset, hi: i32) -> SymbolicLaurent {
    let mut out = SymbolicLaurent::new();
    for (m, c) in e.terms() {
        let pole: i32 = m
            .iter()
            .map(|(g, p)| match g {
                Gen::E(k, t) if *t == s => *k as i32 * *p as i32,
                _ => 0,
            })
            .sum();
        let work = hi + pole;
        let mut series = SymbolicLaurent::new();
        let mut rest = QEExpr::constant(c.clone());
        series.insert(0, QEExpr::one());
        for (g, p) in m {
            match g {
                Gen::E(k, t) if *t == s => {
                    let f = estar_symbolic_laurent(*k as usize, work);
                    for _ in 0..*p {
                        series = mul_symbolic(&series, &f, work);
                    }
                }
                _ => rest = &rest * &QEExpr::gen(*g).pow(*p),
            }
        }
        for (k, v) in series {
            if k > hi {
                continue;
            }
            let slot = out.entry(k).or_insert_with(QEExpr::zero);
            *slot = &*slot + &(&v * &rest);
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

/// Converts a rational constant into a one-term `QEExpr`, for readability at call sites.
pub fn qc(r: Rational) -> QEExpr {
    QEExpr::constant(r)
}
