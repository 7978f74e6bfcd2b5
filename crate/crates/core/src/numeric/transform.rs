use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::combinatorics::subsets_of;
use crate::engines::{completion_hat, qe_shift, tn_bell};
use crate::qe::QEExpr;
use crate::report::CheckReport;
use crate::Error;

use super::context::NumericContext;
use super::eval::qe_eval_num;

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };
/// Samples keep every subset sum at least this far from the lattice.
const SAMPLE_CLEARANCE: f64 = 0.2;

/// Seeded sample points `z_i = 2πi(x_i + y_i τ)` whose subset sums avoid the lattice.
pub fn sample_points(n: usize, ctx: &NumericContext, count: usize, seed: u64) -> Vec<Vec<Complex64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let zs: Vec<Complex64> = (0..n)
            .map(|_| 2.0 * PI * I * (Complex64::new(rng.gen_range(0.05..0.95), 0.0) + rng.gen_range(0.05..0.95) * ctx.tau))
            .collect();
        let ok = subsets_of((1 << n) - 1).into_iter().filter(|&s| s != 0).all(|s| {
            let z: Complex64 = crate::combinatorics::elements(s).iter().map(|&i| zs[i]).sum();
            ctx.lattice_distance(z) > SAMPLE_CLEARANCE
        });
        if ok {
            out.push(zs);
        }
    }
    out
}

fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm().max(1.0)
}

/// Largest relative deviation of `f(transformed) / factor` from `f` over the samples.
fn law(
    e: &QEExpr,
    ctx: &NumericContext,
    samples: &[Vec<Complex64>],
    transform: impl Fn(&[Complex64]) -> (Vec<Complex64>, Complex64, Complex64),
    defect: Option<&QEExpr>,
) -> Result<f64, Error> {
    let mut worst: f64 = 0.0;
    for zs in samples {
        let (zt, tau_t, factor) = transform(zs);
        let ctx_t = NumericContext::new(tau_t, ctx.tol, ctx.guard)?;
        let lhs = qe_eval_num(e, &zt, &ctx_t)?;
        let mut rhs = factor * qe_eval_num(e, zs, ctx)?;
        if let Some(d) = defect {
            rhs += qe_eval_num(d, zs, ctx)?;
        }
        worst = worst.max(rel(lhs, rhs));
    }
    Ok(worst)
}

/// Transformation laws of the completed `T̂_n` (and the defect of the uncompleted `T_n`).
pub fn transform_checks(n: usize, ctx: &NumericContext, samples: usize, seed: u64) -> Result<Vec<CheckReport>, Error> {
    if !(2..=3).contains(&n) {
        return Err(Error::Invalid("transformation checks run for n ∈ {2, 3}".into()));
    }
    let t = tn_bell(n)?;
    let hat = completion_hat(&t);
    let pts = sample_points(n, ctx, samples, seed);
    let tau = ctx.tau;
    let w = (n - 1) as i32;
    let one = Complex64::new(1.0, 0.0);
    let shift = |i: usize, by: Complex64| {
        move |zs: &[Complex64]| {
            let mut z = zs.to_vec();
            z[i] += by;
            (z, tau, one)
        }
    };
    let m = pts.len() * n;
    let mut reports = Vec::new();
    let mut worst_a: f64 = 0.0;
    let mut worst_b: f64 = 0.0;
    for i in 0..n {
        worst_a = worst_a.max(law(&hat, ctx, &pts, shift(i, 2.0 * PI * I), None)?);
        worst_b = worst_b.max(law(&hat, ctx, &pts, shift(i, 2.0 * PI * I * tau), None)?);
    }
    reports.push(CheckReport::numeric(format!("T{n}^ z_i -> z_i + 2πi"), worst_a, m, ctx.tol));
    reports.push(CheckReport::numeric(format!("T{n}^ z_i -> z_i + 2πiτ"), worst_b, m, ctx.tol));
    let s = law(&hat, ctx, &pts, |zs| (zs.iter().map(|z| z / tau).collect(), -one / tau, tau.powi(w)), None)?;
    reports.push(CheckReport::numeric(format!("T{n}^ S: weight {w}"), s, pts.len(), ctx.tol));
    let tt = law(&hat, ctx, &pts, |zs| (zs.to_vec(), tau + 1.0, one), None)?;
    reports.push(CheckReport::numeric(format!("T{n}^ T: invariant"), tt, pts.len(), ctx.tol));
    // ST: first τ -> τ + 1, then τ -> -1/τ: (z, τ) -> (z/(τ+1), -1/(τ+1)), factor (τ+1)^{n-1}
    let st = law(&hat, ctx, &pts, |zs| (zs.iter().map(|z| z / (tau + 1.0)).collect(), -one / (tau + 1.0), (tau + 1.0).powi(w)), None)?;
    reports.push(CheckReport::numeric(format!("T{n}^ ST: weight {w}"), st, pts.len(), ctx.tol));
    // uncompleted: T_n(z_1 + 2πiτ) = T_n + (qe_shift(T_n) - T_n)
    let defect = &qe_shift(&t, 0) - &t;
    let d = law(&t, ctx, &pts, shift(0, 2.0 * PI * I * tau), Some(&defect))?;
    let bare = law(&t, ctx, &pts, shift(0, 2.0 * PI * I * tau), None)?;
    let mut r = CheckReport::numeric(format!("T{n} quasi-periodicity defect"), d, pts.len(), ctx.tol);
    if bare <= ctx.tol {
        r.pass = false;
        r.detail = format!("uncompleted T{n} unexpectedly elliptic (deviation {bare:.2e})");
    }
    reports.push(r);
    Ok(reports)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_and_three_points() {
        let ctx = NumericContext::with_tau(Complex64::new(0.3, 0.8)).unwrap();
        for n in 2..=3 {
            for r in transform_checks(n, &ctx, 4, 1).unwrap() {
                assert!(r.pass, "{r:?}");
            }
        }
    }
}
