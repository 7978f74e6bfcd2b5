use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_traits::{One, Zero};

use crate::combinatorics::{bernoulli, stirling1};
use crate::qe::{Gen, QEExpr};
use crate::series::{binomial, factorial, int, pow_i, rat, FourierU, QSeries, Rational, Subset};
use crate::special::{estar_fourier, ThetaExpansion};
use crate::Error;

/// Index pair of `g_{b,a}`, `0 ≤ a ≤ b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GbaKey {
    pub b: usize,
    pub a: usize,
}

impl GbaKey {
    pub fn new(b: usize, a: usize) -> Result<Self, Error> {
        if a > b {
            return Err(Error::Invalid(format!("g_{{b,a}} needs 0 ≤ a ≤ b, got b = {b}, a = {a}")));
        }
        Ok(Self { b, a })
    }

    /// The annulus `|q|^a < |u| < |q|^{a-1}`, inside the region of convergence.
    pub fn annulus(&self) -> i32 {
        self.a as i32 - 1
    }
}

/// `g_{b,a}(u) = (-1)^a 2^{-b} + sum_{k≠0} (-1)^b q^{(b-a)k}/(1-q^k)^b u^k` on the
/// annulus of [`GbaKey::annulus`], in the recentred variable `w = q^{1-a} u`, where the
/// coefficients become `(-1)^b q^{(b-1)k}/(1-q^k)^b` (`k > 0`) and `q^j/(1-q^j)^b`
/// (`k = -j < 0`).
pub fn gba_series(key: GbaKey, k_max: usize, q_order: usize) -> Result<FourierU, Error> {
    let (b, a) = (key.b, key.a);
    let constant = pow_i(&rat(1, 2), b as i32) * if a % 2 == 0 { int(1) } else { int(-1) };
    let mut f = FourierU::constant(QSeries::constant(constant, q_order), key.annulus(), k_max);
    if b == 0 {
        return Ok(f);
    }
    let sign = if b % 2 == 0 { int(1) } else { int(-1) };
    for k in 1..=k_max {
        let den = (&QSeries::one(q_order) - &QSeries::monomial(int(1), k, q_order)).pow(b).inv()?;
        f.set(k as i64, &QSeries::monomial(sign.clone(), (b - 1) * k, q_order) * &den);
        f.set(-(k as i64), &QSeries::monomial(int(1), k, q_order) * &den);
    }
    Ok(f)
}

/// `sum_{k≠0} q^k A_l(q^k)/(1-q^k)^{l+1} w^k = B_{l+1}/(l+1) - 𝐁_{l+1}(E*)/(l+1)`, `l ≥ 1`.
fn eulerian_qe(l: usize, s: Subset) -> QEExpr {
    let d = int(l as i64 + 1);
    QEExpr::constant(bernoulli(l + 1) / &d) - QEExpr::bell_estar(l + 1, s).scale(&(Rational::one() / d))
}

/// `P_n(w) = sum_{k≠0} x/(1-x)^{n+1} w^k` at `x = q^k`, `n ≥ 1`, through the Stirling
/// inversion `(-1)^n n! x/(1-x)^{n+1} = sum_l s(n,l) (-1)^l x A_l(x)/(1-x)^{l+1}`.
fn pole_family_qe(n: usize, s: Subset) -> QEExpr {
    let pref = if n % 2 == 0 { int(1) } else { int(-1) } / factorial(n);
    let mut out = QEExpr::zero();
    for l in 1..=n {
        let c = stirling1(n, l) * if l % 2 == 0 { int(1) } else { int(-1) };
        if !c.is_zero() {
            out = out + eulerian_qe(l, s).scale(&(&pref * c));
        }
    }
    out
}

fn continue_uncached(key: GbaKey) -> QEExpr {
    let (b, a) = (key.b, key.a);
    let constant = pow_i(&rat(1, 2), b as i32) * if a % 2 == 0 { int(1) } else { int(-1) };
    // F_b(w) = sum_{k≠0} (-1)^b x^{b-1}/(1-x)^b w^k with x = q^k
    let f = match b {
        0 => return QEExpr::one(),
        1 => QEExpr::constant(rat(1, 2)) + QEExpr::estar(1, 1),
        _ => {
            // x^{b-1}/(1-x)^b = sum_i C(b-2,i) (-1)^i x/(1-x)^{b-i}
            let mut acc = QEExpr::zero();
            for i in 0..=b - 2 {
                let c = binomial(b - 2, i) * if i % 2 == 0 { int(1) } else { int(-1) };
                acc = acc + pole_family_qe(b - i - 1, 1).scale(&c);
            }
            acc.scale(&if b % 2 == 0 { int(1) } else { int(-1) })
        }
    };
    // g_{b,a}(u) = (-1)^a 2^{-b} + F_b(q^{1-a} u)
    QEExpr::constant(constant) + f.shift_var(0, &int(1 - a as i64))
}

/// Analytic continuation of `g_{b,a}` as a quasi-elliptic expression in `E*_m(z_S)`
/// and `G_k`.
pub fn gba_continue(key: GbaKey, s: Subset) -> QEExpr {
    static CACHE: OnceLock<Mutex<HashMap<GbaKey, QEExpr>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let base = {
        let hit = cache.lock().expect("g_{b,a} cache poisoned").get(&key).cloned();
        match hit {
            Some(e) => e,
            None => {
                let e = continue_uncached(key);
                cache.lock().expect("g_{b,a} cache poisoned").insert(key, e.clone());
                e
            }
        }
    };
    if s == 1 {
        base
    } else {
        base.relabel(|_| s)
    }
}

/// Fourier expansion on `annulus` of an expression whose generators all share one
/// argument `z_S` (plus Eisenstein series and constants).
pub fn qe_fourier(e: &QEExpr, th: &ThetaExpansion, annulus: i32, k_max: usize) -> Result<FourierU, Error> {
    let q = th.q_order();
    let depth: u32 = e.terms().map(|(m, _)| m.iter().filter(|(g, _)| matches!(g, Gen::E(..))).map(|(_, p)| *p).sum()).max().unwrap_or(0);
    let k_work = k_max + depth as usize * (q + 1);
    let mut args = e.generators().into_iter().filter_map(|g| match g {
        Gen::E(_, s) => Some(s),
        _ => None,
    });
    if let Some(s0) = args.next() {
        if args.any(|s| s != s0) {
            return Err(Error::Unsupported("Fourier expansion needs a single argument".into()));
        }
    }
    let mut gens: HashMap<Gen, FourierU> = HashMap::new();
    for g in e.generators() {
        let f = match g {
            Gen::E(m, _) => estar_fourier(th, m as usize, annulus, k_work)?,
            Gen::G(k) => FourierU::constant(th.eisenstein(k as usize), annulus, k_work),
            _ => return Err(Error::Unsupported(format!("{g} has no single-variable Fourier expansion"))),
        };
        gens.insert(g, f);
    }
    let mut out = FourierU::zero(annulus, k_max, q);
    for (m, c) in e.terms() {
        let mut term = FourierU::constant(QSeries::constant(c.clone(), q), annulus, k_work);
        for (g, p) in m {
            for _ in 0..*p {
                term = &term * &gens[g];
            }
        }
        out = &out + &term.truncate(k_max, q);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn key(b: usize, a: usize) -> GbaKey {
        GbaKey::new(b, a).unwrap()
    }

    #[test]
    fn small_cases() {
        assert_eq!(gba_continue(key(0, 0), 1), QEExpr::one());
        assert_eq!(gba_continue(key(1, 0), 1), QEExpr::estar(1, 1));
        assert_eq!(gba_continue(key(1, 1), 1), QEExpr::estar(1, 1));
        // g_{2,1} = -1/4 + B_2/2 - (θ''/2θ + G_2)
        let expected = QEExpr::constant(rat(-1, 4) + bernoulli(2) / int(2))
            - QEExpr::theta_ratio(2, 1).scale(&rat(1, 2))
            - QEExpr::g(2);
        assert_eq!(gba_continue(key(2, 1), 1), expected);
        assert_eq!(gba_continue(key(2, 0), 1) - gba_continue(key(2, 1), 1), QEExpr::estar(1, 1));
        assert!(GbaKey::new(1, 2).is_err());
    }

    #[test]
    fn leading_part_independent_of_a() {
        for b in 1..=4 {
            let lead = gba_continue(key(b, 0), 1).weight_part(b as i64);
            assert!(!lead.is_zero());
            for a in 1..=b {
                assert_eq!(gba_continue(key(b, a), 1).weight_part(b as i64), lead);
            }
        }
    }

    #[test]
    fn continuation_matches_series() {
        let th = ThetaExpansion::new(6, 10).unwrap();
        for b in 0..=3 {
            for a in 0..=b {
                let k = key(b, a);
                let lhs = gba_series(k, 6, 6).unwrap();
                let rhs = qe_fourier(&gba_continue(k, 1), &th, k.annulus(), 6).unwrap();
                assert!(lhs.compare(&rhs).is_ok(), "b = {b}, a = {a}: {:?}", lhs.compare(&rhs));
            }
        }
    }
}
