use rayon::prelude::*;

use crate::combinatorics::{elements, set_partitions};
use crate::qe::QEExpr;
use crate::series::{int, Rational, Subset};
use crate::Error;

/// Largest `n` accepted by the symbolic engines.
pub const MAX_N: usize = 5;

pub(crate) fn check_n(n: usize, max: usize) -> Result<(), Error> {
    if n == 0 || n > max {
        return Err(Error::Invalid(format!("n must lie in 1..={max}, got {n}")));
    }
    Ok(())
}

/// `sum_{π ∈ Π(S)} prod_k 𝐁_{|π_k|}(E*(z_{π_k}))/|π_k|`; the empty set gives `1`.
pub fn bell_partition_sum(s: Subset) -> Result<QEExpr, Error> {
    let parts = set_partitions(s)?;
    Ok(parts
        .par_iter()
        .map(|pi| {
            pi.iter().fold(QEExpr::one(), |acc, &blk| {
                let m = elements(blk).len();
                &acc * &QEExpr::bell_estar(m, blk).scale(&(Rational::from_integer(1.into()) / int(m as i64)))
            })
        })
        .collect::<Vec<_>>()
        .into_iter()
        .sum())
}

/// `T_n = sum_{j ∈ [n]} sum_{π ∈ Π([n] ∖ j)} prod_k 𝐁_{|π_k|}(z_{π_k})/|π_k|`, a
/// quasi-elliptic expression of pure weight `n - 1`.
pub fn tn_bell(n: usize) -> Result<QEExpr, Error> {
    check_n(n, MAX_N)?;
    let full: Subset = (1 << n) - 1;
    let mut total = QEExpr::zero();
    for j in 0..n {
        total = total + bell_partition_sum(full & !(1 << j))?;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::rat;

    #[test]
    fn small_n() {
        assert_eq!(tn_bell(1).unwrap(), QEExpr::one());
        assert_eq!(tn_bell(2).unwrap(), QEExpr::estar(1, 1) + QEExpr::estar(1, 2));
        let mut t3 = QEExpr::zero();
        for (i, j) in [(0, 1), (0, 2), (1, 2)] {
            let s = (1 << i) | (1 << j);
            t3 = t3 + QEExpr::estar(1, 1 << i) * QEExpr::estar(1, 1 << j) + QEExpr::theta_ratio(2, s).scale(&rat(1, 2)) + QEExpr::g(2);
        }
        assert_eq!(tn_bell(3).unwrap(), t3);
        assert!(tn_bell(0).is_err());
    }

    #[test]
    fn pure_weight() {
        for n in 1..=MAX_N {
            assert!(tn_bell(n).unwrap().is_pure_weight(n as i64 - 1), "n = {n}");
        }
    }
}
