use num_traits::Zero;

use crate::combinatorics::permutations;
use crate::series::{factorial, Laurent, QSeries, Ray, Subset};
use crate::special::ThetaExpansion;
use crate::Error;

/// Largest `n` for the determinant and recursion engines.
pub const MAX_N_RAY: usize = 4;

/// `θ^{(k)}/θ` at `z_S` on the ray, or `θ^{(k)}(0)` for `S = ∅`.
pub(crate) fn ratio_at(th: &ThetaExpansion, k: usize, s: Subset, ray: &Ray) -> Result<Laurent, Error> {
    if s == 0 {
        return Ok(Laurent::constant(th.theta_derivative_at_zero(k), th.z_order()));
    }
    Ok(th.theta_ratio(k).scale_var(&ray.slope(s)?))
}

fn det(m: &[Vec<Option<Laurent>>], rows: &[usize], col: usize, zero: &Laurent) -> Laurent {
    if rows.is_empty() {
        return Laurent::one(zero.max_exp(), zero.q_order());
    }
    let mut acc = zero.clone();
    for (pos, &r) in rows.iter().enumerate() {
        let Some(e) = &m[r][col] else { continue };
        let rest: Vec<usize> = rows.iter().copied().filter(|&x| x != r).collect();
        let minor = det(m, &rest, col + 1, zero);
        let term = e * &minor;
        acc = if pos % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

/// Bloch–Okounkov: `T_n = sum_σ det M_n(σ)` with the upper-Hessenberg matrix
/// `M(i,j) = θ^{(j-i+1)}/((j-i+1)! θ)(z_{σ1} + ... + z_{σ(n-j)})` (last column
/// `θ^{(n-i+1)}(0)/(n-i+1)!`, subdiagonal `1`, zero below).
pub fn tn_bo(n: usize, ray: &Ray, th: &ThetaExpansion) -> Result<Laurent, Error> {
    super::bell::check_n(n, MAX_N_RAY)?;
    if ray.len() != n {
        return Err(Error::Invalid(format!("ray has {} entries, expected {n}", ray.len())));
    }
    let zero = Laurent::zero(0, th.z_order(), th.q_order());
    let mut total = zero.clone();
    for sigma in permutations(&(0..n).collect::<Vec<_>>())? {
        let prefix = |len: usize| sigma[..len].iter().fold(0 as Subset, |a, &i| a | 1 << i);
        let mut m = vec![vec![None; n]; n];
        for i in 1..=n {
            for j in (i.max(2) - 1)..=n {
                let d = j + 1 - i;
                let entry = if d == 0 {
                    Laurent::one(th.z_order(), th.q_order())
                } else {
                    let s = if j == n { 0 } else { prefix(n - j) };
                    ratio_at(th, d, s, ray)?.scale(&(crate::series::int(1) / factorial(d)))
                };
                if !entry.is_zero() {
                    m[i - 1][j - 1] = Some(entry);
                }
            }
        }
        total = &total + &det(&m, &(0..n).collect::<Vec<_>>(), 0, &zero);
    }
    Ok(total)
}

/// `θ'''(0) = -6 G_2`, the constant appearing in the three-point determinant.
pub fn theta_third_derivative(th: &ThetaExpansion) -> QSeries {
    let v = th.theta_derivative_at_zero(3);
    debug_assert!((&v + &th.eisenstein(2).scale(&crate::series::int(6))).coeffs().iter().all(|c| c.is_zero()));
    v
}
