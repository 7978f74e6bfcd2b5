use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OrderingKind {
    Wick,
    Gw,
    Bound,
    Custom,
}

/// Characteristic table of an integration region: `chi[i][j]` is `χ_{i j̄}`, the
/// annulus index of `P_i/Q_j`. Diagonal entries are carried but never read by
/// the integral formulas.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawOrdering")]
pub struct Ordering {
    n: usize,
    chi: Vec<Vec<u8>>,
    kind: OrderingKind,
}

#[derive(Deserialize)]
struct RawOrdering {
    n: usize,
    chi: Vec<Vec<u8>>,
    kind: OrderingKind,
}

impl TryFrom<RawOrdering> for Ordering {
    type Error = Error;
    fn try_from(r: RawOrdering) -> Result<Self, Error> {
        let o = Ordering::custom(r.chi)?;
        if o.n != r.n {
            return Err(Error::Invalid(format!("table has {} rows but n = {}", o.n, r.n)));
        }
        let o = Ordering { kind: r.kind, ..o };
        o.validate()?;
        Ok(o)
    }
}

impl Ordering {
    /// All off-diagonal entries zero.
    pub fn wick(n: usize) -> Self {
        Self { n, chi: vec![vec![0; n]; n], kind: OrderingKind::Wick }
    }

    /// Chronological ordering: `χ_{i j̄} = 1` iff `i > j`.
    pub fn gw(n: usize) -> Self {
        let chi = (0..n).map(|i| (0..n).map(|j| u8::from(i > j)).collect()).collect();
        Self { n, chi, kind: OrderingKind::Gw }
    }

    /// Bound pairs in the chronological order `order` (a permutation of `0..n`):
    /// `χ_{i j̄} = 1` iff `i` comes after `j`.
    pub fn bound(order: &[usize]) -> Result<Self, Error> {
        let n = order.len();
        let mut pos = vec![usize::MAX; n];
        for (p, &i) in order.iter().enumerate() {
            if i >= n || pos[i] != usize::MAX {
                return Err(Error::Invalid(format!("{order:?} is not a permutation")));
            }
            pos[i] = p;
        }
        let chi = (0..n).map(|i| (0..n).map(|j| u8::from(pos[i] > pos[j])).collect()).collect();
        Ok(Self { n, chi, kind: OrderingKind::Bound })
    }

    pub fn custom(chi: Vec<Vec<u8>>) -> Result<Self, Error> {
        let n = chi.len();
        if chi.iter().any(|r| r.len() != n) {
            return Err(Error::Invalid("χ table must be square".into()));
        }
        if chi.iter().flatten().any(|&x| x > 1) {
            return Err(Error::Invalid("χ entries must be 0 or 1".into()));
        }
        Ok(Self { n, chi, kind: OrderingKind::Custom })
    }

    /// A bound ordering from a seeded random permutation.
    pub fn random_bound(n: usize, seed: u64) -> Self {
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        Self::bound(&order).expect("shuffle is a permutation")
    }

    /// An arbitrary seeded table (off-diagonal and diagonal entries independent).
    pub fn random_custom(n: usize, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let chi = (0..n).map(|_| (0..n).map(|_| rng.gen_range(0..=1)).collect()).collect();
        Self { n, chi, kind: OrderingKind::Custom }
    }

    /// Same table with seeded random diagonal entries.
    pub fn with_random_diagonal(&self, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut out = self.clone();
        for i in 0..self.n {
            out.chi[i][i] = rng.gen_range(0..=1);
        }
        out
    }

    /// Relabels pairs: pair `i` of the result is pair `perm[i]` of `self`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let chi = (0..self.n).map(|i| (0..self.n).map(|j| self.chi[perm[i]][perm[j]]).collect()).collect();
        Self { n: self.n, chi, kind: self.kind }
    }

    fn validate(&self) -> Result<(), Error> {
        let off = |i: usize, j: usize| i != j;
        let ok = match self.kind {
            OrderingKind::Wick => (0..self.n).all(|i| (0..self.n).all(|j| !off(i, j) || self.chi[i][j] == 0)),
            OrderingKind::Gw => (0..self.n).all(|i| (0..self.n).all(|j| !off(i, j) || self.chi[i][j] == u8::from(i > j))),
            OrderingKind::Bound => (0..self.n).all(|i| (0..self.n).all(|j| !off(i, j) || self.chi[i][j] + self.chi[j][i] == 1)),
            OrderingKind::Custom => true,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Invalid(format!("χ table does not satisfy the {:?} invariant", self.kind)))
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn kind(&self) -> OrderingKind {
        self.kind
    }

    pub fn table(&self) -> &[Vec<u8>] {
        &self.chi
    }

    /// `χ_{i j̄}`.
    pub fn chi(&self, i: usize, j: usize) -> u8 {
        self.chi[i][j]
    }

    /// Cyclic `χ` of a sequence `(i_1, ..., i_r)`: `sum_a χ_{i_a ī_{a+1}}` with
    /// indices mod `r`; a single index contributes nothing.
    pub fn cyclic_chi(&self, seq: &[usize]) -> usize {
        if seq.len() < 2 {
            return 0;
        }
        (0..seq.len()).map(|a| self.chi[seq[a]][seq[(a + 1) % seq.len()]] as usize).sum()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("ordering serializes")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self, Error> {
        serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::cdes;

    #[test]
    fn invariants() {
        let gw = Ordering::gw(4);
        assert_eq!(gw.chi(0, 1), 0);
        assert_eq!(gw.chi(2, 1), 1);
        assert!(Ordering::wick(3).table().iter().flatten().all(|&x| x == 0));
        let b = Ordering::random_bound(5, 7);
        for i in 0..5 {
            for j in 0..5 {
                if i != j {
                    assert_eq!(b.chi(i, j) + b.chi(j, i), 1);
                }
            }
        }
        assert_eq!(Ordering::bound(&[0, 1, 2]).unwrap().table(), gw_table(3));
    }

    fn gw_table(n: usize) -> Vec<Vec<u8>> {
        Ordering::gw(n).table().to_vec()
    }

    #[test]
    fn gw_cyclic_chi_is_cdes() {
        let gw = Ordering::gw(4);
        for s in crate::combinatorics::permutations(&[0usize, 1, 2, 3]).unwrap() {
            assert_eq!(gw.cyclic_chi(&s), cdes(&s));
        }
    }

    #[test]
    fn json_round_trip_and_validation() {
        let o = Ordering::random_bound(4, 3);
        assert_eq!(Ordering::from_json(&o.to_json()).unwrap(), o);
        let bad = serde_json::json!({"n": 2, "chi": [[0, 1], [1, 0]], "kind": "gw"});
        assert!(Ordering::from_json(&bad).is_err());
        let wrong_n = serde_json::json!({"n": 3, "chi": [[0, 1], [0, 0]], "kind": "custom"});
        assert!(Ordering::from_json(&wrong_n).is_err());
    }
}
