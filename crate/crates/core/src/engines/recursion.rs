use crate::combinatorics::{compositions, subsets_of};
use crate::series::{Laurent, Ray, Subset};
use crate::special::ThetaExpansion;
use crate::Error;

use super::bo::{ratio_at, MAX_N_RAY};

fn sign(k: usize) -> crate::Rational {
    crate::series::int(if k % 2 == 0 { 1 } else { -1 })
}

fn check(n: usize, ray: &Ray) -> Result<(), Error> {
    super::bell::check_n(n, MAX_N_RAY)?;
    if ray.len() != n {
        return Err(Error::Invalid(format!("ray has {} entries, expected {n}", ray.len())));
    }
    Ok(())
}

/// Solves `T_S = sum_{I ⊊ S} (-1)^{|S|-|I|-1} θ^{(|S|-|I|)}/θ(z_I) · T_I` bottom-up over
/// subsets, with `T_∅ = 1` and `θ^{(k)}/θ(z_∅) := θ^{(k)}(0)`.
pub fn tn_recursion(n: usize, ray: &Ray, th: &ThetaExpansion) -> Result<Laurent, Error> {
    check(n, ray)?;
    let full: Subset = (1 << n) - 1;
    let mut table: Vec<Option<Laurent>> = vec![None; 1 << n];
    table[0] = Some(Laurent::one(th.z_order(), th.q_order()));
    let mut order: Vec<Subset> = (1..=full).collect();
    order.sort_by_key(|s| s.count_ones());
    for s in order {
        let size = s.count_ones() as usize;
        let mut acc = Laurent::zero(0, th.z_order(), th.q_order());
        for i in subsets_of(s).into_iter().filter(|&i| i != s) {
            let k = size - i.count_ones() as usize;
            let t_i = table[i as usize].as_ref().expect("smaller subsets first");
            let term = &ratio_at(th, k, i, ray)? * t_i;
            acc = &acc + &term.scale(&sign(k - 1));
        }
        table[s as usize] = Some(acc);
    }
    Ok(table[full as usize].take().unwrap())
}

/// Closed form of the recursion: `T_n = sum over ordered set compositions (γ_1, ..., γ_ℓ)`
/// of `(-1)^{n-ℓ} θ^{(|γ_1|)}(0) prod_{k≥2} θ^{(|γ_k|)}/θ(z_{γ_1 ∪ ... ∪ γ_{k-1}})`.
pub fn tn_compositions(n: usize, ray: &Ray, th: &ThetaExpansion) -> Result<Laurent, Error> {
    check(n, ray)?;
    let full: Subset = (1 << n) - 1;
    let mut acc = Laurent::zero(0, th.z_order(), th.q_order());
    for comp in compositions(full)? {
        let mut prefix: Subset = 0;
        let mut term = Laurent::one(th.z_order(), th.q_order());
        for blk in &comp {
            term = &term * &ratio_at(th, blk.count_ones() as usize, prefix, ray)?;
            prefix |= blk;
        }
        acc = &acc + &term.scale(&sign(n - comp.len()));
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::compositions;

    #[test]
    fn recursion_and_closed_form_agree() {
        let th = ThetaExpansion::for_orders(4, 5, 4).unwrap();
        assert!(tn_recursion(1, &Ray::from_ints(&[2]), &th).unwrap().compare(&Laurent::one(5, 4)).is_ok());
        for ray in [Ray::from_ints(&[1, 2]), Ray::from_ints(&[1, 3, 7]), Ray::from_ints(&[2, -5, 4, 11])] {
            let a = tn_recursion(ray.len(), &ray, &th).unwrap();
            let b = tn_compositions(ray.len(), &ray, &th).unwrap();
            assert!(a.compare(&b).is_ok(), "n = {}", ray.len());
        }
        assert_eq!(compositions(0b111).unwrap().len(), 13);
    }
}
