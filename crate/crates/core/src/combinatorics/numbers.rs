use std::sync::{Mutex, OnceLock};

use num_traits::{One, Zero};

use super::enumerate::permutations;
use super::perm::des;
use crate::series::{binomial, factorial, int, Rational};

/// Dense polynomial, coefficients in increasing degree.
pub type Poly = Vec<Rational>;

/// Bernoulli numbers with `t/(e^t - 1) = sum B_m t^m/m!`, so `B_1 = -1/2`.
pub fn bernoulli(n: usize) -> Rational {
    static TABLE: OnceLock<Mutex<Vec<Rational>>> = OnceLock::new();
    let table = TABLE.get_or_init(|| Mutex::new(vec![Rational::one()]));
    let mut b = table.lock().expect("bernoulli table poisoned");
    while b.len() <= n {
        let m = b.len();
        let mut s = Rational::zero();
        for (k, bk) in b.iter().enumerate() {
            s += binomial(m + 1, k) * bk;
        }
        b.push(-s / int(m as i64 + 1));
    }
    b[n].clone()
}

/// Stirling numbers of the second kind `S(n, k)`.
pub fn stirling2(n: usize, k: usize) -> Rational {
    let mut row = vec![Rational::one()];
    for i in 1..=n {
        let mut next = vec![Rational::zero(); i + 1];
        for j in 1..=i {
            let stay = if j < i { &row[j] * int(j as i64) } else { Rational::zero() };
            next[j] = &row[j - 1] + stay;
        }
        row = next;
    }
    row.get(k).cloned().unwrap_or_else(Rational::zero)
}

/// Signed Stirling numbers of the first kind `s(n, k)`, `x(x-1)...(x-n+1) = sum s(n,k) x^k`.
pub fn stirling1(n: usize, k: usize) -> Rational {
    let mut row = vec![Rational::one()];
    for i in 1..=n {
        let mut next = vec![Rational::zero(); i + 1];
        for j in 1..=i {
            let stay = if j < i { &row[j] * int(-(i as i64 - 1)) } else { Rational::zero() };
            next[j] = &row[j - 1] + stay;
        }
        row = next;
    }
    row.get(k).cloned().unwrap_or_else(Rational::zero)
}

/// Eulerian polynomial `A_m(x) = sum_{σ ∈ S_m} x^des(σ)` by counting descents.
pub fn eulerian(m: usize) -> Poly {
    let mut p = vec![Rational::zero(); m.max(1)];
    if m == 0 {
        return vec![Rational::one()];
    }
    let perms = permutations(&(1..=m).collect::<Vec<_>>()).expect("m within guard");
    for s in perms {
        p[des(&s)] += Rational::one();
    }
    p
}

/// Eulerian polynomial from Frobenius's formula `A_m(x) = sum_l l! S(m,l) (x-1)^(m-l)`.
pub fn eulerian_frobenius(m: usize) -> Poly {
    let mut out = vec![Rational::zero(); m.max(1)];
    for l in 0..=m {
        let c = factorial(l) * stirling2(m, l);
        if c.is_zero() {
            continue;
        }
        let e = m - l;
        for i in 0..=e {
            // (x - 1)^e
            let t = &c * binomial(e, i) * if (e - i) % 2 == 0 { int(1) } else { int(-1) };
            if i < out.len() {
                out[i] += t;
            } else {
                assert!(t.is_zero(), "Frobenius formula produced degree above m-1");
            }
        }
    }
    if m == 0 {
        return vec![Rational::one()];
    }
    out
}

/// `sum_l s(n,l) S(l,k) = δ_{nk}` and `sum_l S(n,l) s(l,k) = δ_{nk}` for all `n, k ≤ m`.
pub fn stirling_inversion_holds(m: usize) -> bool {
    for n in 0..=m {
        for k in 0..=m {
            let delta = if n == k { Rational::one() } else { Rational::zero() };
            let a: Rational = (0..=m).map(|l| stirling1(n, l) * stirling2(l, k)).sum();
            let b: Rational = (0..=m).map(|l| stirling2(n, l) * stirling1(l, k)).sum();
            if a != delta || b != delta {
                return false;
            }
        }
    }
    true
}
