use num_traits::Zero;

use crate::report::CheckReport;
use crate::series::{laurent_det, Laurent, Rational, Ray};
use crate::special::ThetaExpansion;
use crate::Error;

/// Largest `n` for the multi-secant check.
pub const MAX_FAY_N: usize = 3;

struct Points<'a> {
    n: usize,
    dir: &'a [Rational],
    th: &'a ThetaExpansion,
}

impl Points<'_> {
    fn p(&self, i: usize) -> &Rational {
        &self.dir[i]
    }
    fn q(&self, j: usize) -> &Rational {
        &self.dir[self.n + j]
    }
    fn c(&self) -> &Rational {
        &self.dir[2 * self.n]
    }
    /// `θ(a t)` for a nonzero slope `a`.
    fn theta(&self, a: &Rational) -> Result<Laurent, Error> {
        if a.is_zero() {
            return Err(Error::NonGenericRay(format!("vanishing argument on ray {:?}", self.dir)));
        }
        Ok(self.th.theta().scale_var(a))
    }
    /// `θ^{(k)}/θ(a t)`.
    fn ratio(&self, k: usize, a: &Rational) -> Result<Laurent, Error> {
        if a.is_zero() {
            return Err(Error::NonGenericRay(format!("vanishing argument on ray {:?}", self.dir)));
        }
        Ok(self.th.theta_ratio(k).scale_var(a))
    }
    /// `Θ_{2n} = prod_{i<j} θ(P_i-P_j)θ(Q_i-Q_j) / (prod_i θ(P_i-Q_i) prod_{i<j} θ(P_i-Q_j)θ(Q_i-P_j))`.
    fn big_theta(&self) -> Result<Laurent, Error> {
        let one = Laurent::one(self.th.z_order(), self.th.q_order());
        let (mut num, mut den) = (one.clone(), one);
        for i in 0..self.n {
            den = &den * &self.theta(&(self.p(i) - self.q(i)))?;
            for j in i + 1..self.n {
                num = &num * &self.theta(&(self.p(i) - self.p(j)))?;
                num = &num * &self.theta(&(self.q(i) - self.q(j)))?;
                den = &den * &self.theta(&(self.p(i) - self.q(j)))?;
                den = &den * &self.theta(&(self.q(i) - self.p(j)))?;
            }
        }
        num.div(&den)
    }
    fn total(&self) -> Rational {
        (0..self.n).map(|i| self.p(i) - self.q(i)).sum()
    }
}

fn compare(name: String, lhs: Laurent, rhs: Laurent, t_order: i32) -> CheckReport {
    let known = lhs.max_exp().min(rhs.max_exp());
    let r = if known < t_order {
        Err(format!("precision lost: known through t^{known} only"))
    } else {
        lhs.truncate(t_order).compare(&rhs.truncate(t_order)).map_err(|m| m.to_string())
    };
    CheckReport::exact(name, r)
}

/// `θ(Σ(P_i - Q_i)) Θ_{2n} = det 𝒵_n` (bordered matrix of `θ'/θ(P_i - Q_j)`), and with
/// `include_c` also `θ(c)^{n-1} θ(c + Σ(P_i - Q_i)) Θ_{2n} = det(θ(c + P_i - Q_j)/θ(P_i - Q_j))`,
/// all specialized to the ray `(P_1..P_n, Q_1..Q_n[, c]) = dir · t`.
pub fn fay_frobenius_check(n: usize, ray: &Ray, include_c: bool, q_order: usize, t_order: i32) -> Result<Vec<CheckReport>, Error> {
    if n == 0 || n > MAX_FAY_N {
        return Err(Error::Invalid(format!("multi-secant check needs 1 ≤ n ≤ {MAX_FAY_N}")));
    }
    let want = 2 * n + usize::from(include_c);
    if ray.len() != want {
        return Err(Error::Invalid(format!("ray must have {want} entries, got {}", ray.len())));
    }
    let th = ThetaExpansion::new(q_order, (t_order + 4 * (n * n) as i32 + 8) as usize)?;
    let pts = Points { n, dir: ray.dir(), th: &th };
    let big = pts.big_theta()?;
    let lhs = &pts.theta(&pts.total())? * &big;
    let zq = (th.z_order(), th.q_order());
    let mut z = vec![vec![Laurent::zero(0, zq.0, zq.1); n + 1]; n + 1];
    for k in 1..=n {
        z[0][k] = Laurent::one(zq.0, zq.1);
        z[k][0] = Laurent::one(zq.0, zq.1).scale(&crate::series::int(-1));
        for j in 1..=n {
            z[k][j] = pts.ratio(1, &(pts.p(k - 1) - pts.q(j - 1)))?;
        }
    }
    let mut out = vec![compare(format!("Frobenius-Stickelberger n={n} on {}", ray.describe()), lhs, laurent_det(&z), t_order)];
    if include_c {
        let c = pts.c().clone();
        let mut lhs_c = &pts.theta(&c)?.pow(n - 1) * &pts.theta(&(&c + pts.total()))?;
        lhs_c = &lhs_c * &big;
        let mut s = vec![vec![Laurent::zero(0, zq.0, zq.1); n]; n];
        for (i, row) in s.iter_mut().enumerate() {
            for (j, e) in row.iter_mut().enumerate() {
                let d = pts.p(i) - pts.q(j);
                *e = pts.theta(&(&c + &d))?.div(&pts.theta(&d)?)?;
            }
        }
        out.push(compare(format!("Fay multi-secant n={n} on {}", ray.describe()), lhs_c, laurent_det(&s), t_order));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        let r1 = fay_frobenius_check(1, &Ray::from_ints(&[3, 1, 5]), true, 4, 4).unwrap();
        assert!(r1.iter().all(|r| r.pass), "{r1:?}");
        let r2 = fay_frobenius_check(2, &Ray::from_ints(&[1, 2, 4, 8]), false, 4, 4).unwrap();
        assert!(r2.iter().all(|r| r.pass), "{r2:?}");
        let r3 = fay_frobenius_check(2, &Ray::from_ints(&[1, 2, 4, 8, 17]), true, 3, 3).unwrap();
        assert!(r3.iter().all(|r| r.pass), "{r3:?}");
        assert!(fay_frobenius_check(2, &Ray::from_ints(&[1, 1, 1, 8]), false, 3, 3).is_err());
    }
}
