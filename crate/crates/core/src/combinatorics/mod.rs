//! Index sets (set partitions, compositions, integer partitions, permutations) and
//! the polynomial families summed over them.

mod bell;
mod enumerate;
mod numbers;
mod perm;

pub use bell::{complete_bell, complete_bell_by_partitions, BellRing};
pub use enumerate::{
    compositions, integer_partitions, permutations, set_partitions, subsets_of, MAX_GROUND_SET,
};
pub use numbers::{
    bernoulli, eulerian, eulerian_frobenius, stirling1, stirling2, stirling_inversion_holds, Poly,
};
pub use perm::{cdes, cdes_of_sequence, cycles_standard, des, partition_sign};

/// Elements of a bitmask subset in increasing order.
pub fn elements(s: crate::Subset) -> Vec<usize> {
    (0..32).filter(|i| s >> i & 1 == 1).collect()
}

pub fn mask(elems: &[usize]) -> crate::Subset {
    elems.iter().fold(0, |m, &i| m | 1 << i)
}
