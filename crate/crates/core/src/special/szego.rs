use crate::combinatorics::{bernoulli, complete_bell, eulerian};
use crate::series::{factorial, fourier_to_laurent, int, pow_i, FourierFamilies, FourierU, Laurent, QSeries};
use crate::Error;

use super::theta::ThetaExpansion;

/// Laurent coefficients `[c^m] S(z, c)` for `m = -1 ..= m_max`, each a Laurent series in `z`,
/// where `S(z, c) = θ(z + c)/(θ(z) θ(c))`.
#[derive(Clone, Debug)]
pub struct SzegoExpansion {
    pub coeffs: Vec<Laurent>,
}

impl SzegoExpansion {
    pub fn c_coeff(&self, m: i32) -> &Laurent {
        &self.coeffs[(m + 1) as usize]
    }
}

/// Direct ratio: `θ(z+c)/θ(z) = sum_j (θ^{(j)}/θ)(z) c^j/j!`, times the expansion of `1/θ(c)`.
pub fn szego_direct(th: &ThetaExpansion, m_max: i32) -> Result<SzegoExpansion, Error> {
    let inv_c = th.theta().inv()?;
    let mut coeffs = Vec::new();
    for m in -1..=m_max {
        let mut acc: Option<Laurent> = None;
        for j in 0..=(m + 1) as usize {
            let c = inv_c.coeff(m - j as i32);
            if c.is_zero() {
                continue;
            }
            let term = th.theta_ratio(j).mul_q(&c).scale(&factorial(j).recip());
            acc = Some(match acc {
                None => term,
                Some(a) => &a + &term,
            });
        }
        coeffs.push(acc.expect("the j = m + 1 term is always present"));
    }
    Ok(SzegoExpansion { coeffs })
}

/// Exponential form: `m! [c^m] S = 𝐁_{m+1}(E*_1, ..., E*_{m+1})/(m+1)`, `[c^{-1}] S = 1`.
pub fn szego_bell(th: &ThetaExpansion, m_max: i32) -> SzegoExpansion {
    let xs: Vec<Laurent> = (1..=(m_max + 1) as usize).map(|k| th.estar(k).clone()).collect();
    let bells = complete_bell(&xs);
    let mut coeffs = vec![Laurent::one(th.z_order(), th.q_order())];
    for m in 0..=m_max as usize {
        coeffs.push(bells[m + 1].scale(&(factorial(m + 1).recip())));
    }
    SzegoExpansion { coeffs }
}

/// Fourier families of `[c^m] S` from
/// `S = ½(e^z+1)/(e^z-1) + ½(e^c+1)/(e^c-1) - sum_{n≥1} sum_{d|n} (e^{dz+(n/d)c} - e^{-dz-(n/d)c}) q^n`.
pub fn szego_families(m: i32, q_order: usize) -> FourierFamilies {
    if m == -1 {
        return FourierFamilies::new(int(1));
    }
    let m = m as usize;
    let mut f = if m == 0 {
        // ½(u+1)/(u-1) = -1/2 - sum_{k≥1} u^k
        FourierFamilies::new(-crate::rat(1, 2)).with(int(-1), 0, 0, 1, 0)
    } else {
        FourierFamilies::new(bernoulli(m + 1) / factorial(m + 1))
    };
    let sign = if m % 2 == 0 { int(1) } else { int(-1) };
    for e in 1..=q_order as i64 {
        let w = pow_i(&int(e), m as i32) / factorial(m);
        f = f.with(-&w, 0, e, 1, 0).with(&sign * &w, 0, e, -1, 0);
    }
    f
}

/// The Fourier construction converted to `z` by `fourier_to_laurent`.
pub fn szego_fourier(th: &ThetaExpansion, m_max: i32, z_order: i32) -> Result<SzegoExpansion, Error> {
    let coeffs = (-1..=m_max)
        .map(|m| fourier_to_laurent(&szego_families(m, th.q_order()), z_order, th.q_order()))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(SzegoExpansion { coeffs })
}

/// `𝒜_{m+1}(u) = sum_{k≠0} q^k A_m(q^k)/(1-q^k)^{m+1} u^k` on the fundamental annulus,
/// built from the Eulerian polynomial `A_m`.
pub fn eulerian_fourier(m: usize, k_max: usize, q_order: usize) -> Result<FourierU, Error> {
    assert!(m >= 1);
    let a = eulerian(m);
    let mut out = FourierU::zero(0, k_max, q_order);
    let sign = if (m + 1) % 2 == 0 { int(1) } else { int(-1) };
    for k in 1..=k_max {
        // x A_m(x)/(1-x)^{m+1} at x = q^k; at x = q^{-k} it equals (-1)^{m+1} times the same at q^k
        let mut num = QSeries::zero(q_order);
        for (i, c) in a.iter().enumerate() {
            num = &num + &QSeries::monomial(c.clone(), k * (i + 1), q_order);
        }
        let den = (&QSeries::one(q_order) - &QSeries::monomial(int(1), k, q_order)).pow(m + 1).inv()?;
        let val = &num * &den;
        out.set(k as i64, val.clone());
        out.set(-(k as i64), val.scale(&sign));
    }
    Ok(out)
}

/// The same series as families `sum_{n≥1} n^m sum_k q^{nk} (u^k + (-1)^{m+1} u^{-k})`.
pub fn eulerian_families(m: usize, q_order: usize) -> FourierFamilies {
    let sign = if (m + 1) % 2 == 0 { int(1) } else { int(-1) };
    let mut f = FourierFamilies::new(int(0));
    for n in 1..=q_order as i64 {
        let w = pow_i(&int(n), m as i32);
        f = f.with(w.clone(), 0, n, 1, 0).with(&sign * &w, 0, n, -1, 0);
    }
    f
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn three_constructions_agree() {
        let th = ThetaExpansion::new(5, 14).unwrap();
        let a = szego_direct(&th, 4).unwrap();
        let b = szego_bell(&th, 4);
        let c = szego_fourier(&th, 4, 6).unwrap();
        for m in -1..=4 {
            assert!(a.c_coeff(m).compare(b.c_coeff(m)).is_ok(), "direct vs bell m = {m}");
            assert!(a.c_coeff(m).compare(c.c_coeff(m)).is_ok(), "direct vs fourier m = {m}");
        }
        assert!(b.c_coeff(0).compare(th.estar(1)).is_ok());
        assert!(a.c_coeff(-1).compare(&Laurent::one(10, 5)).is_ok());
    }

    #[test]
    fn eulerian_family_agreement() {
        for m in 1..=4 {
            let direct = eulerian_fourier(m, 6, 6).unwrap();
            let fam = eulerian_families(m, 6).to_fourier(6, 6).unwrap();
            assert!(direct.compare(&fam).is_ok(), "m = {m}");
        }
    }
}
