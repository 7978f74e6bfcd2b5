use crate::report::{all_ok, CheckReport};
use crate::series::{fourier_to_laurent, int, FourierFamilies, FourierU, Laurent, Ray};
use crate::Error;

use super::fourier_forms::estar_fourier;
use super::theta::ThetaExpansion;

/// `℘(z) = -E*_2(z)`.
pub fn wp(th: &ThetaExpansion) -> Laurent {
    -th.estar(2)
}

/// `ζ(z) = θ'/θ(z) + 2G_2 z`.
pub fn zeta(th: &ThetaExpansion) -> Laurent {
    let e1 = th.estar(1);
    let lin = Laurent::term(th.eisenstein(2).scale(&int(2)), 1, e1.max_exp());
    e1 + &lin
}

fn check_range(name: &str, l: &Laurent, r: &Laurent, t_order: i32) -> Result<(), String> {
    let hi = l.max_exp().min(r.max_exp());
    if hi < t_order {
        return Err(format!("{name}: only known through t^{hi}, wanted t^{t_order}"));
    }
    l.truncate(t_order).compare(&r.truncate(t_order)).map_err(|m| format!("{name}: {m}"))
}

/// ℘ and ζ addition formulas on a ray `(c_1, c_2)` and the three-term identity
/// `(ζ_1+ζ_2+ζ_3)^2 = ℘_1+℘_2+℘_3` on a zero-sum ray `(c_1, c_2, c_3)`.
pub fn weierstrass_and_addition(q_order: usize, t_order: i32) -> Result<Vec<CheckReport>, Error> {
    let th = ThetaExpansion::new(q_order, (t_order + 12) as usize)?;
    let p = wp(&th);
    let dp = p.derivative();
    let z = zeta(&th);
    let mut out = Vec::new();

    out.push(CheckReport::exact(
        "weierstrass:wp-even",
        all_ok(p.iter().filter(|(k, c)| k % 2 != 0 && !c.is_zero()).map(|(k, _)| Err(format!("odd coefficient z^{k}")))),
    ));

    let ray = Ray::generic(vec![int(1), int(3)])?;
    let (a, b) = (ray.slope(1)?, ray.slope(2)?);
    let s = ray.slope(3)?;
    let (pa, pb, ps) = (p.scale_var(&a), p.scale_var(&b), p.scale_var(&s));
    let (dpa, dpb) = (dp.scale_var(&a), dp.scale_var(&b));
    let ratio = (&dpa - &dpb).div(&(&pa - &pb))?;
    let rhs = &(&(-&pa) - &pb) + &(&ratio * &ratio).scale(&crate::rat(1, 4));
    out.push(CheckReport::exact("weierstrass:wp-addition", check_range("wp addition", &ps, &rhs, t_order)));

    let (za, zb, zs) = (z.scale_var(&a), z.scale_var(&b), z.scale_var(&s));
    let rhs = &(&za + &zb) + &ratio.scale(&crate::rat(1, 2));
    out.push(CheckReport::exact("weierstrass:zeta-addition", check_range("zeta addition", &zs, &rhs, t_order)));

    let zr = Ray::zero_sum(vec![int(1), int(2), int(-3)])?;
    let cs: Vec<_> = (0..3).map(|i| zr.dir()[i].clone()).collect();
    let zsum = cs.iter().fold(Laurent::zero(0, th.z_order(), q_order), |acc, c| &acc + &z.scale_var(c));
    let psum = cs.iter().fold(Laurent::zero(0, th.z_order(), q_order), |acc, c| &acc + &p.scale_var(c));
    out.push(CheckReport::exact(
        "weierstrass:three-term",
        check_range("three-term identity", &(&zsum * &zsum), &psum, t_order),
    ));
    Ok(out)
}

/// The two-point family `sum_{k≠0} k q^k/(1-q^k) x^{-k}` (`x = v/u`) rewritten on the
/// fundamental annulus: `sum_{k≥1} k q^k x^{-k}/(1-q^k) + sum_{k≥1} k x^k/(1-q^k)`.
pub fn boson_families() -> FourierFamilies {
    FourierFamilies::new(int(0)).with(int(1), 1, 1, -1, 1).with(int(1), 1, 0, 1, 1)
}

/// Compares the two-point family with `℘ + 2G_2` both as Fourier coefficients and as
/// Laurent series in `z`.
pub fn boson_2pt_check(k_max: usize, q_order: usize) -> Result<Vec<CheckReport>, Error> {
    let th = ThetaExpansion::new(q_order, 14)?;
    let fam = boson_families();
    let lhs = fam.to_fourier(k_max, q_order)?;
    let two_g2 = FourierU::constant(th.eisenstein(2).scale(&int(2)), 0, k_max + q_order + 2);
    let rhs = &(-&estar_fourier(&th, 2, 0, k_max + q_order + 2)?) + &two_g2;
    let fourier = lhs.compare(&rhs).and_then(|_| {
        if lhs.coeff(0).is_zero() {
            Ok(())
        } else {
            Err("nonzero k = 0 coefficient".into())
        }
    });
    let t_order = 8;
    let lz = fourier_to_laurent(&fam, t_order, q_order)?;
    let rz = &wp(&th) + &Laurent::constant(th.eisenstein(2).scale(&int(2)), th.z_order());
    Ok(vec![
        CheckReport::exact("boson:fourier", fourier),
        CheckReport::exact("boson:laurent", check_range("boson laurent", &lz, &rz, t_order)),
    ])
}
