use crate::series::{int, Rational};

/// Number of descents `σ(i) > σ(i+1)`, `1 ≤ i < n`, of a sequence.
pub fn des<T: Ord>(s: &[T]) -> usize {
    s.windows(2).filter(|w| w[0] > w[1]).count()
}

/// Cyclic descents of a sequence: `σ(i) > σ(i+1)` with the successor of the last
/// entry being the first, `1 ≤ i ≤ n`.
pub fn cdes_of_sequence<T: Ord>(s: &[T]) -> usize {
    if s.len() < 2 {
        return 0;
    }
    des(s) + usize::from(s[s.len() - 1] > s[0])
}

/// Cyclic descents of a permutation in one-line notation.
pub fn cdes<T: Ord>(s: &[T]) -> usize {
    cdes_of_sequence(s)
}

/// Cycle decomposition in standard form: each cycle starts with its largest element,
/// cycles ordered by increasing first element. `perm[i]` is the image of `i`.
pub fn cycles_standard(perm: &[usize]) -> Vec<Vec<usize>> {
    let n = perm.len();
    let mut seen = vec![false; n];
    let mut cycles = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut c = Vec::new();
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            c.push(i);
            i = perm[i];
        }
        let top = (0..c.len()).max_by_key(|&k| c[k]).unwrap();
        c.rotate_left(top);
        cycles.push(c);
    }
    cycles.sort_by_key(|c| c[0]);
    cycles
}

/// `(-1)^π = (-1)^(n - ℓ)` for a set partition with `ℓ` blocks of an `n`-set.
pub fn partition_sign(block_sizes: &[usize]) -> Rational {
    let n: usize = block_sizes.iter().sum();
    if (n - block_sizes.len()) % 2 == 0 {
        int(1)
    } else {
        int(-1)
    }
}
