use std::collections::BTreeSet;

use num_traits::Zero;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::rational::{format_rational, int, Rational};
use crate::Error;

/// Direction `(c_1, ..., c_n)` along which each `z_i` becomes `c_i t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ray {
    dir: Vec<Rational>,
}

/// Subsets of `{0, .., n-1}` are bitmasks throughout the crate.
pub type Subset = u32;

impl Ray {
    /// Any direction; genericity is checked where a pole actually lives.
    pub fn new(dir: Vec<Rational>) -> Self {
        Ray { dir }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Ray { dir: c.iter().map(|&x| int(x)).collect() }
    }

    /// A ray whose nonempty subset sums are nonzero and pairwise distinct.
    pub fn generic(dir: Vec<Rational>) -> Result<Self, Error> {
        let r = Ray { dir };
        if !r.is_generic() {
            return Err(Error::NonGenericRay(r.describe()));
        }
        Ok(r)
    }

    /// A ray with total sum zero whose proper nonempty subset sums are nonzero.
    pub fn zero_sum(dir: Vec<Rational>) -> Result<Self, Error> {
        let r = Ray { dir };
        let n = r.len();
        let full: Subset = (1 << n) - 1;
        if !r.subset_sum(full).is_zero() {
            return Err(Error::NonGenericRay(format!("{} does not sum to zero", r.describe())));
        }
        for s in 1..full {
            if r.subset_sum(s).is_zero() {
                return Err(Error::NonGenericRay(r.describe()));
            }
        }
        Ok(r)
    }

    /// Seeded random generic ray with small nonzero integer entries. Entries lie in
    /// `[-9, 9]` for `n ≤ 4`; the range doubles per extra entry so that distinct subset
    /// sums stay likely.
    pub fn random_generic(n: usize, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let bound: i64 = 9 << n.saturating_sub(4);
        loop {
            let dir: Vec<Rational> = (0..n)
                .map(|_| {
                    let mut v = 0i64;
                    while v == 0 {
                        v = rng.gen_range(-bound..=bound);
                    }
                    int(v)
                })
                .collect();
            let r = Ray { dir };
            if r.is_generic() {
                return r;
            }
        }
    }

    pub fn len(&self) -> usize {
        self.dir.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dir.is_empty()
    }

    pub fn dir(&self) -> &[Rational] {
        &self.dir
    }

    pub fn subset_sum(&self, s: Subset) -> Rational {
        let mut acc = Rational::zero();
        for (i, c) in self.dir.iter().enumerate() {
            if s >> i & 1 == 1 {
                acc += c;
            }
        }
        acc
    }

    /// Slope of the argument `z_S`, rejecting a vanishing one (a pole would sit on the ray).
    pub fn slope(&self, s: Subset) -> Result<Rational, Error> {
        let v = self.subset_sum(s);
        if v.is_zero() {
            return Err(Error::NonGenericRay(format!("{} has vanishing sum on subset {s:#b}", self.describe())));
        }
        Ok(v)
    }

    pub fn is_generic(&self) -> bool {
        let n = self.len();
        let mut seen = BTreeSet::new();
        for s in 1..(1u32 << n) {
            let v = self.subset_sum(s);
            if v.is_zero() || !seen.insert(v) {
                return false;
            }
        }
        true
    }

    /// Permutes the entries: entry `i` of the result is entry `perm[i]` of `self`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        Ray { dir: perm.iter().map(|&p| self.dir[p].clone()).collect() }
    }

    pub fn describe(&self) -> String {
        let parts: Vec<String> = self.dir.iter().map(format_rational).collect();
        format!("ray ({})", parts.join(", "))
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.dir.iter().map(format_rational).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subset_sums() {
        let r = Ray::from_ints(&[1, 2]);
        assert_eq!(r.subset_sum(0b11), int(3));
        assert!(r.is_generic());
        assert!(Ray::from_ints(&[1, -1]).slope(0b11).is_err());
        assert!(!Ray::from_ints(&[1, 1]).is_generic());
    }

    #[test]
    fn zero_sum_rays() {
        assert!(Ray::zero_sum(vec![int(1), int(2), int(-3)]).is_ok());
        assert!(Ray::zero_sum(vec![int(1), int(2)]).is_err());
    }

    #[test]
    fn random_rays_are_reproducible() {
        assert_eq!(Ray::random_generic(4, 7), Ray::random_generic(4, 7));
        assert!(Ray::random_generic(4, 7).is_generic());
    }
}
