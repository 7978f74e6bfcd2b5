use super::{elements, mask};
use crate::{Error, Subset};

/// Guard against combinatorial explosion.
pub const MAX_GROUND_SET: usize = 12;

fn guard(n: usize) -> Result<(), Error> {
    if n > MAX_GROUND_SET {
        return Err(Error::Invalid(format!("ground set of size {n} exceeds {MAX_GROUND_SET}")));
    }
    Ok(())
}

/// All set partitions of `ground`, each as blocks sorted by minimum element; the
/// empty set has exactly one (empty) partition.
pub fn set_partitions(ground: Subset) -> Result<Vec<Vec<Subset>>, Error> {
    let elems = elements(ground);
    guard(elems.len())?;
    let mut out = Vec::new();
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    fn rec(i: usize, elems: &[usize], blocks: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Subset>>) {
        if i == elems.len() {
            out.push(blocks.iter().map(|b| mask(b)).collect());
            return;
        }
        for b in 0..blocks.len() {
            blocks[b].push(elems[i]);
            rec(i + 1, elems, blocks, out);
            blocks[b].pop();
        }
        blocks.push(vec![elems[i]]);
        rec(i + 1, elems, blocks, out);
        blocks.pop();
    }
    rec(0, &elems, &mut blocks, &mut out);
    Ok(out)
}

/// All ordered set partitions (compositions) of `ground`.
pub fn compositions(ground: Subset) -> Result<Vec<Vec<Subset>>, Error> {
    let mut out = Vec::new();
    for p in set_partitions(ground)? {
        for perm in permutations(&(0..p.len()).collect::<Vec<_>>())? {
            out.push(perm.iter().map(|&i| p[i]).collect());
        }
    }
    Ok(out)
}

/// All permutations of `items` in lexicographic order of positions.
pub fn permutations<T: Clone>(items: &[T]) -> Result<Vec<Vec<T>>, Error> {
    guard(items.len())?;
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..items.len()).collect();
    loop {
        out.push(idx.iter().map(|&i| items[i].clone()).collect());
        // next lexicographic permutation
        let Some(i) = (1..idx.len()).rev().find(|&i| idx[i - 1] < idx[i]) else { break };
        let j = (i..idx.len()).rev().find(|&j| idx[j] > idx[i - 1]).unwrap();
        idx.swap(i - 1, j);
        idx[i..].reverse();
    }
    Ok(out)
}

/// Integer partitions of every size `0..=max`, by size then in reverse-lexicographic order.
pub fn integer_partitions(max: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    fn rec(rest: usize, cap: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for p in (1..=rest.min(cap)).rev() {
            cur.push(p);
            rec(rest - p, p, cur, out);
            cur.pop();
        }
    }
    for n in 0..=max {
        rec(n, n, &mut Vec::new(), &mut out);
    }
    out
}

/// All subsets of `s` (as bitmasks), including the empty set and `s` itself.
pub fn subsets_of(s: Subset) -> Vec<Subset> {
    let mut out = Vec::new();
    let mut t = s;
    loop {
        out.push(t);
        if t == 0 {
            break;
        }
        t = (t - 1) & s;
    }
    out.reverse();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bell_numbers() {
        let counts: Vec<usize> = (0..6).map(|n| set_partitions((1 << n) - 1).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 5, 15, 52]);
    }

    #[test]
    fn small_integer_partitions() {
        let p = integer_partitions(4);
        let expect: Vec<Vec<usize>> = vec![
            vec![], vec![1], vec![2], vec![1, 1], vec![3], vec![2, 1], vec![1, 1, 1],
            vec![4], vec![3, 1], vec![2, 2], vec![2, 1, 1], vec![1, 1, 1, 1],
        ];
        assert_eq!(p, expect);
    }

    #[test]
    fn composition_counts() {
        assert_eq!(compositions(0b1).unwrap(), vec![vec![0b1]]);
        assert_eq!(compositions(0b111).unwrap().len(), 13);
    }

    #[test]
    fn guards_and_subsets() {
        assert!(set_partitions((1 << 13) - 1).is_err());
        assert_eq!(subsets_of(0b101), vec![0, 0b1, 0b100, 0b101]);
        assert_eq!(permutations(&[1, 2, 3]).unwrap().len(), 6);
    }
}
