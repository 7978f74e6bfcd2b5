use std::collections::HashMap;

use num_complex::Complex64;

use crate::qe::{Gen, QEExpr};
use crate::report::CheckReport;
use crate::series::{to_f64, Laurent, QSeries, Subset};
use crate::special::ThetaExpansion;
use crate::Error;

use super::context::NumericContext;

fn arg(zs: &[Complex64], s: Subset) -> Complex64 {
    crate::combinatorics::elements(s).iter().map(|&i| zs[i]).sum()
}

/// Floating-point value of a quasi-elliptic expression at `z = zs` and `ctx.tau`.
pub fn qe_eval_num(e: &QEExpr, zs: &[Complex64], ctx: &NumericContext) -> Result<Complex64, Error> {
    let mut values: HashMap<Gen, Complex64> = HashMap::new();
    for g in e.generators() {
        let v = match g {
            Gen::E(m, s) => ctx.estar(m as usize, arg(zs, s))?,
            Gen::G(k) => ctx.eisenstein(k as usize),
            Gen::A(s) => ctx.completion(arg(zs, s)),
            Gen::Z(i) => zs[i as usize],
        };
        values.insert(g, v);
    }
    Ok(e.terms()
        .map(|(m, c)| m.iter().fold(Complex64::new(to_f64(c), 0.0), |acc, (g, p)| acc * values[g].powi(*p as i32)))
        .sum())
}

/// Sums a truncated q-series at a numeric `q`.
pub fn qseries_eval(s: &QSeries, q: Complex64) -> Complex64 {
    s.coeffs().iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * q + to_f64(c))
}

/// Sums a truncated Laurent series in `z` with q-series coefficients.
pub fn laurent_eval(l: &Laurent, z: Complex64, q: Complex64) -> Complex64 {
    l.iter().map(|(k, c)| qseries_eval(c, q) * z.powi(k)).sum()
}

/// Float generators against the exact series layer at `|q| ≤ 0.1`, small `z`.
pub fn series_consistency(ctx: &NumericContext, points: &[Complex64], m_max: usize) -> Result<CheckReport, Error> {
    if ctx.q().norm() > 0.1 {
        return Err(Error::Invalid("series consistency needs |q| ≤ 0.1".into()));
    }
    let th = ThetaExpansion::new(14, 20)?;
    let mut err: f64 = 0.0;
    let mut samples = 0;
    for &z in points {
        for m in 1..=m_max {
            let exact = laurent_eval(th.estar(m), z, ctx.q());
            let float = ctx.estar(m, z)?;
            err = err.max((exact - float).norm() / exact.norm().max(1.0));
            samples += 1;
        }
        let t = laurent_eval(th.theta(), z, ctx.q());
        err = err.max((t - ctx.theta(z)).norm() / t.norm().max(1.0));
        samples += 1;
    }
    for k in [2, 4, 6] {
        let s = qseries_eval(&crate::special::eisenstein_g(k, 14)?, ctx.q());
        err = err.max((s - ctx.eisenstein(k)).norm() / s.norm().max(1.0));
        samples += 1;
    }
    Ok(CheckReport::numeric("float generators = series layer", err, samples, ctx.tol))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_match_series() {
        let ctx = NumericContext::with_tau(Complex64::new(0.0, 0.37)).unwrap();
        let pts = [Complex64::new(0.2, 0.1), Complex64::new(-0.3, 0.25), Complex64::new(0.05, -0.4)];
        let r = series_consistency(&ctx, &pts, 4).unwrap();
        assert!(r.pass, "{r:?}");
    }

    #[test]
    fn estar_one_at_tau_08i() {
        let ctx = NumericContext::with_tau(Complex64::new(0.0, 0.8)).unwrap();
        let th = ThetaExpansion::new(11, 16).unwrap();
        let z = Complex64::new(0.3, -0.2);
        let v = qe_eval_num(&QEExpr::estar(1, 1), &[z], &ctx).unwrap();
        assert!((v - laurent_eval(th.estar(1), z, ctx.q())).norm() < 1e-8);
    }
}
