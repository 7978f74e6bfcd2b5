use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::combinatorics::{bernoulli, cycles_standard, elements, mask, partition_sign, permutations, set_partitions, subsets_of};
use crate::qe::QEExpr;
use crate::series::{int, pow_i, rat, Rational, Subset};
use crate::Error;

use super::gba::{gba_continue, GbaKey};
use super::ordering::Ordering;

/// Largest number of variable pairs accepted by the ordered-integral routes.
pub const MAX_PAIRS: usize = 5;

fn sign(k: usize) -> Rational {
    if k % 2 == 0 {
        int(1)
    } else {
        int(-1)
    }
}

fn check_subset(j: Subset, ord: &Ordering) -> Result<Vec<usize>, Error> {
    if j == 0 {
        return Err(Error::Invalid("c_J needs a nonempty J".into()));
    }
    let js = elements(j);
    if js.iter().any(|&i| i >= ord.n()) {
        return Err(Error::Invalid(format!("J = {j:#b} exceeds n = {}", ord.n())));
    }
    Ok(js)
}

/// `c_J` from its definition: the full-cycle part of the bordered determinant over
/// `J ∪ {0}` with entries `1` (row `0`), `-1` (column `0`) and `½(-1)^{χ_{i j̄}}`.
pub fn c_j_cyclic(j: Subset, ord: &Ordering) -> Result<Rational, Error> {
    let js = check_subset(j, ord)?;
    let r = js.len();
    // local index 0 is the border, local index a+1 is js[a]
    let entry = |x: usize, y: usize| -> Rational {
        match (x, y) {
            (0, 0) => Rational::zero(),
            (0, _) => int(1),
            (_, 0) => int(-1),
            (x, y) => rat(1, 2) * sign(ord.chi(js[x - 1], js[y - 1]) as usize),
        }
    };
    let mut total = Rational::zero();
    for sigma in permutations(&(0..=r).collect::<Vec<_>>())? {
        let cycles = cycles_standard(&sigma);
        if cycles.len() != 1 {
            continue;
        }
        let prod = (0..=r).fold(sign(r), |acc, x| acc * entry(x, sigma[x]));
        total += prod;
    }
    Ok(total)
}

/// `c_J = (-1/2)^{|J|-1} sum over orderings (j_1..j_r) of J of (-1)^{sum_{a<r} χ_{j_a j̄_{a+1}}}`.
pub fn c_j_sequences(j: Subset, ord: &Ordering) -> Result<Rational, Error> {
    let js = check_subset(j, ord)?;
    let mut total = Rational::zero();
    for s in permutations(&js)? {
        let chi: usize = s.windows(2).map(|w| ord.chi(w[0], w[1]) as usize).sum();
        total += sign(chi);
    }
    Ok(total * pow_i(&rat(-1, 2), js.len() as i32 - 1))
}

/// `c_J` through the extended index set `J ∪ {0}` with `χ_{0 ī} = 0`, `χ_{i 0̄} = 1`:
/// `4 (-1)^{|J|}/(|J|+1) · 2^{-|J|-1} sum_{τ ∈ S(J∪0)} (-1)^{χ_τ}`.
pub fn c_j_extended(j: Subset, ord: &Ordering) -> Result<Rational, Error> {
    let js = check_subset(j, ord)?;
    let r = js.len();
    let chi = |x: Option<usize>, y: Option<usize>| -> usize {
        match (x, y) {
            (None, _) => 0,
            (Some(_), None) => 1,
            (Some(a), Some(b)) => ord.chi(a, b) as usize,
        }
    };
    let mut ext: Vec<Option<usize>> = vec![None];
    ext.extend(js.iter().map(|&i| Some(i)));
    let mut total = Rational::zero();
    for s in permutations(&ext)? {
        let c: usize = (0..=r).map(|a| chi(s[a], s[(a + 1) % (r + 1)])).sum();
        total += sign(c);
    }
    Ok(total * int(4) * sign(r) / int(r as i64 + 1) * pow_i(&rat(1, 2), r as i32 + 1))
}

/// Closed form for the chronological ordering: `c_J = 4 (2^m - 1) B_m / m`, `m = |J| + 1`.
pub fn c_j_gw_bernoulli(size: usize) -> Rational {
    let m = size + 1;
    int(4) * (pow_i(&int(2), m as i32) - int(1)) * bernoulli(m) / int(m as i64)
}

/// `G_S = sum_{τ ∈ S(S)} g_{|S|, χ_τ}(u_S)` over all orderings of `S`.
pub fn g_block(s: Subset, ord: &Ordering) -> Result<QEExpr, Error> {
    let es = elements(s);
    if es.is_empty() {
        return Err(Error::Invalid("G_S needs a nonempty S".into()));
    }
    let b = es.len();
    let mut counts = vec![0usize; b + 1];
    for t in permutations(&es)? {
        counts[ord.cyclic_chi(&t)] += 1;
    }
    Ok(counts
        .iter()
        .enumerate()
        .filter(|(_, &c)| c > 0)
        .map(|(a, &c)| gba_continue(GbaKey { b, a }, s).scale(&int(c as i64)))
        .sum())
}

/// `H_n(z_S) = (2^n - 1) B_n/n - B_n/n + 𝐁_n(E*(z_S))/n`.
pub fn h_n(n: usize, s: Subset) -> QEExpr {
    let d = int(n as i64);
    let bn = bernoulli(n);
    let c = (pow_i(&int(2), n as i32) - int(2)) * &bn / &d;
    QEExpr::constant(c) + QEExpr::bell_estar(n, s).scale(&(Rational::one() / d))
}

fn check_n(ord: &Ordering) -> Result<usize, Error> {
    let n = ord.n();
    if n == 0 || n > MAX_PAIRS {
        return Err(Error::Invalid(format!("T_n^Ω needs 1 ≤ n ≤ {MAX_PAIRS}, got {n}")));
    }
    Ok(n)
}

/// Route A: expand the bordered determinant, take the `v`-constant term of each
/// permutation — the cycle through the border gives `c_J`, every other cycle
/// `C` gives `g_{|C|, χ_C}(u_C)`.
pub fn tn_omega_determinant(ord: &Ordering) -> Result<QEExpr, Error> {
    let n = check_n(ord)?;
    let full: Subset = (1 << n) - 1;
    let js: Vec<Subset> = subsets_of(full).into_iter().filter(|&j| j != 0).collect();
    let parts: Result<Vec<QEExpr>, Error> = js
        .par_iter()
        .map(|&j| {
            let c = c_j_cyclic(j, ord)?;
            if c.is_zero() {
                return Ok(QEExpr::zero());
            }
            let rest = elements(full & !j);
            let mut acc = QEExpr::zero();
            for img in permutations(&rest)? {
                // σ(rest[x]) = img[x]
                let local: Vec<usize> = img.iter().map(|v| rest.iter().position(|r| r == v).unwrap()).collect();
                let mut term = QEExpr::one();
                let mut sgn = 0;
                for cyc in cycles_standard(&local) {
                    let seq: Vec<usize> = cyc.iter().map(|&x| rest[x]).collect();
                    sgn += seq.len() - 1;
                    let key = GbaKey { b: seq.len(), a: ord.cyclic_chi(&seq) };
                    term = &term * &gba_continue(key, mask(&seq));
                }
                acc = acc + term.scale(&sign(sgn));
            }
            Ok(acc.scale(&c))
        })
        .collect();
    Ok(parts?.into_iter().sum())
}

/// Route B: sum over set partitions of the complement of `J`, with block weights
/// `(-1)^{|B|-1} G_B/|B|` and `c_J` from the extended index set.
pub fn tn_omega_partitions(ord: &Ordering) -> Result<QEExpr, Error> {
    let n = check_n(ord)?;
    let full: Subset = (1 << n) - 1;
    let mut total = QEExpr::zero();
    for j in subsets_of(full).into_iter().filter(|&j| j != 0) {
        let c = c_j_extended(j, ord)?;
        if c.is_zero() {
            continue;
        }
        let mut inner = QEExpr::zero();
        for pi in set_partitions(full & !j)? {
            let mut term = QEExpr::one();
            for &blk in &pi {
                let size = elements(blk).len();
                let w = sign(size - 1) / int(size as i64);
                term = &term * &g_block(blk, ord)?.scale(&w);
            }
            inner = inner + term;
        }
        total = total + inner.scale(&c);
    }
    Ok(total)
}

/// `T_n^Ω`, computed by both routes and required to agree.
pub fn tn_omega(ord: &Ordering) -> Result<QEExpr, Error> {
    let a = tn_omega_determinant(ord)?;
    let b = tn_omega_partitions(ord)?;
    if a != b {
        return Err(Error::Mismatch(format!("T_{}^Ω routes disagree: {}", ord.n(), &a - &b)));
    }
    Ok(a)
}

/// Partition-lattice relation between the two orderings:
/// `T_n^{Ω_GW}(u) = sum_π T_ℓ^{Ω_Wick}(u_{π_1}, ..., u_{π_ℓ})` and its Möbius inverse
/// `T_n^{Ω_Wick}(u) = sum_π μ(π) T_ℓ^{Ω_GW}(u_π)`, `μ(π) = prod_B (-1)^{|B|-1}(|B|-1)!`,
/// where `u_B = prod_{i∈B} u_i`. Returns the two residuals (both zero when they hold).
pub fn wick_partition_residuals(n: usize) -> Result<(QEExpr, QEExpr), Error> {
    let full: Subset = (1 << n) - 1;
    let wick: Vec<QEExpr> = (1..=n).map(|l| tn_omega(&Ordering::wick(l))).collect::<Result<_, _>>()?;
    let gw: Vec<QEExpr> = (1..=n).map(|l| tn_omega(&Ordering::gw(l))).collect::<Result<_, _>>()?;
    let mut from_wick = QEExpr::zero();
    let mut from_gw = QEExpr::zero();
    for pi in set_partitions(full)? {
        let l = pi.len();
        let sizes: Vec<usize> = pi.iter().map(|b| elements(*b).len()).collect();
        let merge = |e: &QEExpr| e.relabel(|i| pi[i]);
        let mu: Rational = sizes.iter().map(|&k| crate::series::factorial(k - 1)).product::<Rational>() * partition_sign(&sizes);
        from_wick = from_wick + merge(&wick[l - 1]);
        from_gw = from_gw + merge(&gw[l - 1]).scale(&mu);
    }
    Ok((&gw[n - 1] - &from_wick, &wick[n - 1] - &from_gw))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::subsets_of;

    #[test]
    fn c_j_routes_agree() {
        for n in 1..=4 {
            for (k, ord) in [Ordering::wick(n), Ordering::gw(n), Ordering::random_custom(n, 11), Ordering::random_bound(n, 5)].iter().enumerate() {
                for j in subsets_of((1 << n) - 1).into_iter().filter(|&j| j != 0) {
                    let a = c_j_cyclic(j, ord).unwrap();
                    assert_eq!(a, c_j_sequences(j, ord).unwrap(), "n={n} ord#{k} J={j:b}");
                    assert_eq!(a, c_j_extended(j, ord).unwrap(), "n={n} ord#{k} J={j:b}");
                }
            }
        }
        assert_eq!(c_j_sequences(0b11, &Ordering::wick(2)).unwrap(), int(-1));
        assert!(c_j_cyclic(0, &Ordering::gw(2)).is_err());
    }

    #[test]
    fn c_j_gw_is_bernoulli() {
        for n in 1..=5 {
            let full = (1 << n) - 1;
            assert_eq!(c_j_sequences(full, &Ordering::gw(n)).unwrap(), c_j_gw_bernoulli(n), "|J| = {n}");
        }
        assert_eq!(c_j_gw_bernoulli(1), int(1));
    }

    #[test]
    fn blocks_and_h() {
        assert_eq!(g_block(1, &Ordering::gw(1)).unwrap(), QEExpr::estar(1, 1));
        for n in 1..=5 {
            let full = (1 << n) - 1;
            let g = g_block(full, &Ordering::gw(n)).unwrap();
            let lhs = g.scale(&(sign(n - 1) / int(n as i64)));
            assert_eq!(lhs, h_n(n, full), "n = {n}");
            assert_eq!(h_n(n, full).constant_term(), (pow_i(&int(2), n as i32) - int(2)) * bernoulli(n) / int(n as i64));
        }
    }

    #[test]
    fn small_integrals() {
        for ord in [Ordering::gw(1), Ordering::wick(1)] {
            assert_eq!(tn_omega(&ord).unwrap(), QEExpr::one());
        }
        let gw2 = QEExpr::estar(1, 0b01) + QEExpr::estar(1, 0b10);
        assert_eq!(tn_omega(&Ordering::gw(2)).unwrap(), gw2);
        assert_eq!(tn_omega(&Ordering::wick(2)).unwrap(), gw2 - QEExpr::one());
    }

    #[test]
    fn t3_leading_part() {
        let t3 = tn_omega(&Ordering::gw(3)).unwrap();
        let mut lead = QEExpr::zero();
        for (i, j) in [(0, 1), (0, 2), (1, 2)] {
            let s = (1 << i) | (1 << j);
            lead = lead + QEExpr::estar(1, 1 << i) * QEExpr::estar(1, 1 << j) + QEExpr::theta_ratio(2, s).scale(&rat(1, 2)) + QEExpr::g(2);
        }
        assert_eq!(t3.weight_part(2), lead);
    }

    #[test]
    fn diagonal_and_bound_invariance() {
        for n in 1..=3 {
            let gw = tn_omega(&Ordering::gw(n)).unwrap();
            for seed in 0..5 {
                let c = Ordering::random_custom(n, seed);
                assert_eq!(tn_omega(&c).unwrap(), tn_omega(&c.with_random_diagonal(seed + 100)).unwrap());
                assert_eq!(tn_omega(&Ordering::random_bound(n, seed)).unwrap(), gw, "n = {n}, seed = {seed}");
            }
        }
    }

    #[test]
    fn wick_partition_identity_small() {
        for n in 1..=4 {
            let (a, b) = wick_partition_residuals(n).unwrap();
            assert!(a.is_zero(), "forward n = {n}: {a}");
            assert!(b.is_zero(), "inverse n = {n}: {b}");
        }
    }
}
