use super::enumerate::set_partitions;
use super::elements;
use crate::series::{binomial, Rational};

/// The operations complete Bell polynomials need from their coefficient ring.
pub trait BellRing: Clone {
    fn bell_one(&self) -> Self;
    fn bell_add(&self, other: &Self) -> Self;
    fn bell_mul(&self, other: &Self) -> Self;
    fn bell_scale(&self, c: &Rational) -> Self;
}

impl BellRing for Rational {
    fn bell_one(&self) -> Self {
        Rational::from_integer(1.into())
    }
    fn bell_add(&self, other: &Self) -> Self {
        self + other
    }
    fn bell_mul(&self, other: &Self) -> Self {
        self * other
    }
    fn bell_scale(&self, c: &Rational) -> Self {
        self * c
    }
}

/// `𝐁_0, ..., 𝐁_m` for `m = xs.len()`, via `𝐁_{n+1} = sum_k C(n,k) 𝐁_{n-k} x_{k+1}`;
/// `xs[k]` holds `x_{k+1}`. Panics on empty input (no ring element to take a unit from).
pub fn complete_bell<R: BellRing>(xs: &[R]) -> Vec<R> {
    let one = xs.first().expect("complete_bell needs at least x_1 to fix the ring").bell_one();
    let mut b = vec![one];
    for n in 0..xs.len() {
        let mut acc: Option<R> = None;
        for k in 0..=n {
            let term = b[n - k].bell_mul(&xs[k]).bell_scale(&binomial(n, k));
            acc = Some(match acc {
                None => term,
                Some(a) => a.bell_add(&term),
            });
        }
        b.push(acc.unwrap());
    }
    b
}

/// `𝐁_m` as the set-partition sum `sum_π prod_blocks x_|block|`.
pub fn complete_bell_by_partitions<R: BellRing>(xs: &[R], m: usize) -> R {
    let one = xs.first().expect("need x_1").bell_one();
    if m == 0 {
        return one;
    }
    let mut acc: Option<R> = None;
    for p in set_partitions((1u32 << m) - 1).expect("m within guard") {
        let mut term = one.clone();
        for b in p {
            term = term.bell_mul(&xs[elements(b).len() - 1]);
        }
        acc = Some(match acc {
            None => term,
            Some(a) => a.bell_add(&term),
        });
    }
    acc.unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::int;

    #[test]
    fn bell_three() {
        let xs = vec![int(2), int(3), int(5)];
        // x1^3 + 3 x1 x2 + x3
        assert_eq!(complete_bell(&xs)[3], int(8 + 18 + 5));
        assert_eq!(complete_bell_by_partitions(&xs, 3), int(31));
        assert_eq!(complete_bell(&xs)[1], int(2));
    }
}
