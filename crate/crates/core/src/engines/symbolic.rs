use crate::combinatorics::{elements, set_partitions, subsets_of};
use crate::qe::{expand_in_argument, Gen, QEExpr};
use crate::report::{all_ok, CheckReport};
use crate::series::{int, Rational, Subset};
use crate::Error;

use super::bell::{check_n, tn_bell, MAX_N};

fn sign(k: usize) -> Rational {
    int(if k % 2 == 0 { 1 } else { -1 })
}

fn equal(name: &str, lhs: &QEExpr, rhs: &QEExpr) -> Result<(), String> {
    if lhs == rhs {
        Ok(())
    } else {
        Err(format!("{name}: residual {}", lhs - rhs))
    }
}

/// `T_m` placed on merged slots: variable `i` of `T_m` becomes `slots[i]`.
fn tn_on_slots(slots: &[Subset]) -> Result<QEExpr, Error> {
    Ok(tn_bell(slots.len())?.relabel(|i| slots[i]))
}

/// `u_i -> q u_i`: `E*_1(S) -> E*_1(S) - 1` for `S ∋ i`, all other generators fixed.
pub fn qe_shift(e: &QEExpr, i: usize) -> QEExpr {
    e.shift_var(i, &int(1))
}

/// `T_n(q u_1, ...) - T_n = sum_{∅ ≠ I ⊆ [n]∖1} (-1)^{|I|} T_{n-|I|}(u_1 u_I, ...)`.
pub fn difference_residual(n: usize) -> Result<QEExpr, Error> {
    check_n(n, MAX_N)?;
    let t = tn_bell(n)?;
    let lhs = &qe_shift(&t, 0) - &t;
    let full: Subset = (1 << n) - 1;
    let mut rhs = QEExpr::zero();
    for i in subsets_of(full & !1).into_iter().filter(|&i| i != 0) {
        let mut slots = vec![1 | i];
        slots.extend(elements(full & !(1 | i)).into_iter().map(|k| 1 << k));
        rhs = rhs + tn_on_slots(&slots)?.scale(&sign(i.count_ones() as usize));
    }
    Ok(lhs - rhs)
}

/// The derivation `∂_{G_2}`: `G_2 -> 1`, `E*_1(S) -> -2 z_S`, other generators constant.
pub fn d_g2(e: &QEExpr) -> QEExpr {
    e.derive(|g| match g {
        Gen::G(2) => QEExpr::one(),
        Gen::E(1, s) => QEExpr::z(s).scale(&int(-2)),
        _ => QEExpr::zero(),
    })
}

/// `∂_{G_2} T_n + 2 sum_{i<j} (z_i + z_j) T_{n-1}(z_i + z_j, ...)`.
pub fn anomaly_residual(n: usize) -> Result<QEExpr, Error> {
    check_n(n, MAX_N)?;
    let lhs = d_g2(&tn_bell(n)?);
    let mut rhs = QEExpr::zero();
    for i in 0..n {
        for j in i + 1..n {
            let pair = (1 << i) | (1 << j);
            let mut slots = vec![pair];
            slots.extend((0..n).filter(|&k| k != i && k != j).map(|k| 1 << k));
            rhs = rhs + QEExpr::z(pair).scale(&int(-2)) * tn_on_slots(&slots)?;
        }
    }
    Ok(lhs - rhs)
}

/// Elliptic completion: `E*_1(S) -> E*_1(S) + 𝐀(S)`.
pub fn completion_hat(e: &QEExpr) -> QEExpr {
    e.substitute(|g| match g {
        Gen::E(1, s) => Some(QEExpr::gen(g) + QEExpr::completion_symbol(s)),
        _ => None,
    })
}

/// The completed `T_n` by direct enumeration of block splittings `π_k = π'_k ⊔ π''_k`:
/// `sum_j sum_π prod_k sum_{π'_k ⊔ π''_k} 𝐀(z_{π_k})^{|π''_k|} 𝐁_{|π'_k|}(z_{π_k})/|π_k|`.
pub fn completed_tn_by_splitting(n: usize) -> Result<QEExpr, Error> {
    check_n(n, MAX_N)?;
    let full: Subset = (1 << n) - 1;
    let mut total = QEExpr::zero();
    for j in 0..n {
        for pi in set_partitions(full & !(1 << j))? {
            let mut term = QEExpr::one();
            for &blk in &pi {
                let size = blk.count_ones() as usize;
                let mut block = QEExpr::zero();
                for inner in subsets_of(blk) {
                    let k = inner.count_ones() as usize;
                    block = block + QEExpr::completion_symbol(blk).pow((size - k) as u32) * QEExpr::bell_estar(k, blk);
                }
                term = &term * &block.scale(&(Rational::from_integer(1.into()) / int(size as i64)));
            }
            total = total + term;
        }
    }
    Ok(total)
}

/// The combined shift `E*_1(S) -> E*_1(S) - 1`, `𝐀(S) -> 𝐀(S) + 1` for `S ∋ i`.
pub fn completed_shift(e: &QEExpr, i: usize) -> QEExpr {
    e.substitute(|g| match g {
        Gen::E(1, s) if s >> i & 1 == 1 => Some(QEExpr::gen(g) - QEExpr::one()),
        Gen::A(s) if s >> i & 1 == 1 => Some(QEExpr::gen(g) + QEExpr::one()),
        _ => None,
    })
}

/// The `z_1^{-1}` part of `T_n` (from the generators with argument `z_1`) minus
/// `T_{n-1}(z_2, ..., z_n)`.
pub fn residue_residual(n: usize) -> Result<QEExpr, Error> {
    check_n(n, MAX_N)?;
    if n < 2 {
        return Err(Error::Invalid("the residue check needs n ≥ 2".into()));
    }
    let expansion = expand_in_argument(&tn_bell(n)?, 1, 0);
    let res = expansion.get(&-1).cloned().unwrap_or_default();
    if let Some((k, _)) = expansion.iter().find(|(k, _)| **k < -1) {
        return Err(Error::Mismatch(format!("T_{n} has a pole of order {} at z_1 = 0", -k)));
    }
    let rest = tn_bell(n - 1)?.relabel(|i| 1 << (i + 1));
    Ok(res - rest)
}

/// Pole orders of `T_n` along `z_I = 0` for every `|I| ≥ 2` (all should be ≤ 0).
pub fn regularity_failures(n: usize) -> Result<Vec<(Subset, i32)>, Error> {
    check_n(n, MAX_N)?;
    let t = tn_bell(n)?;
    let full: Subset = (1 << n) - 1;
    let mut bad = Vec::new();
    for s in subsets_of(full).into_iter().filter(|s| s.count_ones() >= 2) {
        let exp = expand_in_argument(&t, s, 0);
        if let Some((&k, _)) = exp.iter().next() {
            if k < 0 {
                bad.push((s, k));
            }
        }
    }
    Ok(bad)
}

fn zero_or(name: &str, r: Result<QEExpr, Error>) -> Result<(), String> {
    match r {
        Ok(e) if e.is_zero() => Ok(()),
        Ok(e) => Err(format!("{name}: residual {e}")),
        Err(e) => Err(format!("{name}: {e}")),
    }
}

pub fn difference_check(n: usize) -> CheckReport {
    CheckReport::exact(format!("difference equation n={n}"), zero_or("difference", difference_residual(n)))
}

pub fn anomaly_check(n: usize) -> CheckReport {
    CheckReport::exact(format!("G2 anomaly n={n}"), zero_or("anomaly", anomaly_residual(n)))
}

/// Completion matches the block-splitting enumeration and is fixed by the combined shift.
pub fn completion_check(n: usize) -> CheckReport {
    let run = || -> Result<(), String> {
        let t = tn_bell(n).map_err(|e| e.to_string())?;
        let hat = completion_hat(&t);
        let split = completed_tn_by_splitting(n).map_err(|e| e.to_string())?;
        equal("completion vs splitting", &hat, &split)?;
        all_ok((0..n).map(|i| equal(&format!("shift in variable {}", i + 1), &completed_shift(&hat, i), &hat)))
    };
    CheckReport::exact(format!("completion n={n}"), run())
}

/// Residue at `z_1 = 0` and regularity on the diagonals `z_I = 0`, `|I| ≥ 2`.
pub fn pole_checks(n: usize) -> Vec<CheckReport> {
    let reg = match regularity_failures(n) {
        Ok(v) if v.is_empty() => Ok(()),
        Ok(v) => Err(format!("poles along {v:?}")),
        Err(e) => Err(e.to_string()),
    };
    vec![
        CheckReport::exact(format!("residue at z1=0 n={n}"), zero_or("residue", residue_residual(n))),
        CheckReport::exact(format!("regular on z_I=0 n={n}"), reg),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn difference_equation() {
        let t2 = tn_bell(2).unwrap();
        assert_eq!(&qe_shift(&t2, 0) - &t2, QEExpr::constant(int(-1)));
        for n in 1..=4 {
            assert!(difference_residual(n).unwrap().is_zero(), "n = {n}");
        }
    }

    #[test]
    fn anomaly() {
        assert_eq!(d_g2(&tn_bell(2).unwrap()), QEExpr::z(0b11).scale(&int(-2)));
        for n in 1..=4 {
            assert!(anomaly_residual(n).unwrap().is_zero(), "n = {n}");
        }
    }

    #[test]
    fn completion() {
        assert_eq!(completion_hat(&QEExpr::estar(1, 1)), QEExpr::estar(1, 1) + QEExpr::completion_symbol(1));
        for n in 1..=4 {
            assert!(completion_check(n).pass, "{:?}", completion_check(n));
        }
    }

    #[test]
    fn poles() {
        for n in 2..=4 {
            for r in pole_checks(n) {
                assert!(r.pass, "{r:?}");
            }
        }
    }
}
