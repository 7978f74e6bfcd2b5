//! Named verification suites: each returns one report per check, shared by the CLI
//! and the acceptance tests.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::combinatorics::{
    bernoulli, complete_bell, complete_bell_by_partitions, compositions, eulerian, eulerian_frobenius, set_partitions, stirling_inversion_holds,
};
use crate::engines::{self, engine_agreement, gw_extract, tn_bell, vanishing_check};
use crate::fit::quasimodular_fit;
use crate::numeric::{series_consistency, transform_checks, NumericContext};
use crate::ordered::{self, fay_frobenius_check, gba_continue, gba_series, qe_fourier, GbaKey, Ordering};
use crate::qe::QEExpr;
use crate::report::{all_ok, CheckReport};
use crate::series::{factorial, fourier_to_laurent, int, rat, Laurent, QSeries, Rational, Ray};
use crate::special::{
    boson_2pt_check, eisenstein_g, eulerian_families, eulerian_fourier, szego_bell, szego_direct, szego_families, szego_fourier,
    weierstrass_and_addition, ThetaExpansion,
};
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Series,
    Special,
    Combinatorics,
    Ordered,
    Engines,
    Numeric,
    All,
}

impl std::str::FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        serde_json::from_value(serde_json::Value::String(s.to_string())).map_err(|_| Error::Parse(format!("unknown suite {s}")))
    }
}

/// Orders and sampling used by the suites.
#[derive(Clone, Debug)]
pub struct VerifyConfig {
    /// Largest n for the engine and structure suites.
    pub n: usize,
    pub b_max: usize,
    pub q_order: usize,
    pub t_order: i32,
    pub k_max: usize,
    /// Orders used for n = 4 engine agreement.
    pub reduced_orders: (usize, i32),
    pub rays: usize,
    pub seed: u64,
    pub taus: Vec<Complex64>,
    pub samples: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            n: 3,
            b_max: 4,
            q_order: 10,
            t_order: 10,
            k_max: 10,
            reduced_orders: (6, 6),
            rays: 3,
            seed: 1,
            taus: vec![Complex64::new(0.3, 0.8), Complex64::new(0.0, 1.2)],
            samples: 10,
        }
    }
}

fn fail(name: &str, e: Error) -> CheckReport {
    CheckReport::exact(name, Err(e.to_string()))
}

fn lift(name: &str, r: Result<Vec<CheckReport>, Error>) -> Vec<CheckReport> {
    r.unwrap_or_else(|e| vec![fail(name, e)])
}

fn laurent_eq(a: &Laurent, b: &Laurent) -> Result<(), String> {
    a.compare(b).map_err(|m| m.to_string())
}

fn expr_eq(a: &QEExpr, b: &QEExpr) -> Result<(), String> {
    if a == b {
        Ok(())
    } else {
        Err(format!("residual {}", a - b))
    }
}

/// Seeded generic rays of length `n`; the seeds are `seed, seed+1, ...`.
pub fn seeded_rays(n: usize, count: usize, seed: u64) -> Vec<Ray> {
    (0..count as u64).map(|k| Ray::random_generic(n, seed + k)).collect()
}

pub fn suite_series(cfg: &VerifyConfig) -> Vec<CheckReport> {
    let q = cfg.q_order;
    let mut out = Vec::new();
    let s = QSeries::from_coeffs((0..=q as i64).map(|k| rat(k * k - 3, k + 2)).collect(), q);
    // log needs constant term 1
    let s1 = s.scale(&(Rational::from_integer(1.into()) / s.constant_term()));
    let round1 = s1.log().and_then(|l| l.exp()).map_err(|e| e.to_string()).and_then(|e| if e == s1 { Ok(()) } else { Err("exp(log s) != s".into()) });
    out.push(CheckReport::exact("qseries exp(log s) = s", round1));
    let inv = s.inv().map_err(|e| e.to_string()).and_then(|i| if (&i * &s) == QSeries::one(q) { Ok(()) } else { Err("s·s^{-1} != 1".into()) });
    out.push(CheckReport::exact("qseries inverse", inv));
    let euler = QSeries::euler(q);
    let pent = (0..=q).map(|k| {
        // Euler's pentagonal theorem
        let mut c = 0i64;
        for j in -(q as i64)..=(q as i64) {
            if j * (3 * j - 1) / 2 == k as i64 {
                c += if j % 2 == 0 { 1 } else { -1 };
            }
        }
        int(c)
    });
    out.push(CheckReport::exact(
        "(q)_∞ pentagonal theorem",
        if euler == QSeries::from_coeffs(pent.collect(), q) { Ok(()) } else { Err("(q)_∞ mismatch".into()) },
    ));
    let th = ThetaExpansion::new(q.min(8), 12);
    out.push(match th {
        Ok(th) => {
            let json = th.theta().to_json("z");
            let back = Laurent::from_json(&json).map_err(|e| e.to_string()).and_then(|l| if &l == th.theta() { Ok(()) } else { Err("JSON round trip changed θ".into()) });
            CheckReport::exact("laurent JSON round trip", back)
        }
        Err(e) => fail("laurent JSON round trip", e),
    });
    out
}

pub fn suite_combinatorics(_cfg: &VerifyConfig) -> Vec<CheckReport> {
    let mut out = Vec::new();
    let b = (0..=8).map(bernoulli).collect::<Vec<_>>();
    let expected = [rat(1, 1), rat(-1, 2), rat(1, 6), int(0), rat(-1, 30), int(0), rat(1, 42), int(0), rat(-1, 30)];
    out.push(CheckReport::exact("Bernoulli numbers", if b == expected { Ok(()) } else { Err(format!("{b:?}")) }));
    out.push(CheckReport::exact(
        "Eulerian = Frobenius formula (m ≤ 7)",
        all_ok((1..=7).map(|m| if eulerian(m) == eulerian_frobenius(m) { Ok(()) } else { Err(format!("m = {m}")) })),
    ));
    out.push(CheckReport::exact("Stirling inversion (m ≤ 10)", if stirling_inversion_holds(10) { Ok(()) } else { Err("failed".into()) }));
    let counts: Vec<usize> = (0..=6).map(|n| set_partitions((1u32 << n) - 1).map(|p| p.len()).unwrap_or(0)).collect();
    out.push(CheckReport::exact("Bell numbers", if counts == [1, 1, 2, 5, 15, 52, 203] { Ok(()) } else { Err(format!("{counts:?}")) }));
    let fubini: Vec<usize> = (1..=4).map(|n| compositions((1u32 << n) - 1).map(|p| p.len()).unwrap_or(0)).collect();
    out.push(CheckReport::exact("ordered set compositions", if fubini == [1, 3, 13, 75] { Ok(()) } else { Err(format!("{fubini:?}")) }));
    let xs: Vec<Rational> = (1..=6).map(|k| rat(k, k + 1)).collect();
    let rec = complete_bell(&xs);
    out.push(CheckReport::exact(
        "complete Bell: recursion = set partitions",
        all_ok((0..=6).map(|m| if rec[m] == complete_bell_by_partitions(&xs, m) { Ok(()) } else { Err(format!("m = {m}")) })),
    ));
    out
}

pub fn suite_special(cfg: &VerifyConfig) -> Vec<CheckReport> {
    let q = cfg.q_order;
    let mut out = Vec::new();
    let th = match ThetaExpansion::new(q, 24) {
        Ok(t) => t,
        Err(e) => return vec![fail("theta expansion", e)],
    };
    out.push(CheckReport::exact("θ product = exponential form, θ'(0) = 1", if th.theta_derivative_at_zero(1) == QSeries::one(q) { Ok(()) } else { Err("θ'(0) != 1".into()) }));
    let t3 = &th.theta_derivative_at_zero(3) + &th.eisenstein(2).scale(&int(6));
    out.push(CheckReport::exact("θ'''(0) = -6 G_2", if t3.is_zero() { Ok(()) } else { Err(format!("{t3}")) }));
    out.push(CheckReport::exact(
        "E*_m = (ln θ)^(m) + 2G_m (m ≤ 6)",
        all_ok((1..=6).map(|m| laurent_eq(th.estar(m), &(&th.log_derivative(m) + &Laurent::constant(th.eisenstein(m).scale(&int(2)), th.z_order()))))),
    ));
    out.push(CheckReport::exact("θ^(m)/θ = Bell(ln θ derivatives) (m ≤ 6)", all_ok((1..=6).map(|m| laurent_eq(th.theta_ratio(m), &th.theta_ratio_bell(m))))));
    // Szegő kernel coefficients three ways
    let szego = (|| -> Result<(), String> {
        let a = szego_direct(&th, 6).map_err(|e| e.to_string())?;
        let b = szego_bell(&th, 6);
        let c = szego_fourier(&th, 6, 12).map_err(|e| e.to_string())?;
        all_ok((-1..=6).map(|m| laurent_eq(a.c_coeff(m), b.c_coeff(m)).and_then(|_| laurent_eq(a.c_coeff(m), c.c_coeff(m))).map_err(|e| format!("m = {m}: {e}"))))
    })();
    out.push(CheckReport::exact("Szegő coefficients: direct = Bell = Fourier (m ≤ 6)", szego));
    out.push(CheckReport::exact("Eulerian continuation identity (m ≤ 5)", eulerian_identity(&th, cfg.k_max, 5)));
    out.push(CheckReport::exact(
        "G_2 = [z^1] 1/θ",
        th.theta()
            .inv()
            .map_err(|e| e.to_string())
            .and_then(|i| if i.coeff(1) == th.eisenstein(2) { Ok(()) } else { Err("[z^1] 1/θ != G_2".into()) }),
    ));
    out.extend(lift("Weierstrass identities", weierstrass_and_addition(q.min(8), 8)));
    out.extend(lift("boson two-point identity", boson_2pt_check(8, 8)));
    out
}

/// `𝒜_{m+1} = B_{m+1}/(m+1) - m! [c^m] S(z, c) = B_{m+1}/(m+1) - 𝐁_{m+1}(E*)/(m+1)`, checked
/// on Fourier coefficients, on Laurent coefficients, and through the symbolic layer.
pub fn eulerian_identity(th: &ThetaExpansion, k_max: usize, m_max: usize) -> Result<(), String> {
    let q = th.q_order();
    let bell = szego_bell(th, m_max as i32);
    for m in 1..=m_max {
        let direct = eulerian_fourier(m, k_max, q).map_err(|e| e.to_string())?;
        let c = rat(1, 1) * bernoulli(m + 1) / int(m as i64 + 1);
        let from_szego = szego_families(m as i32, q).to_fourier(k_max, q).map_err(|e| e.to_string())?;
        let rhs = &crate::FourierU::constant(QSeries::constant(c.clone(), q), 0, k_max) - &from_szego.scale(&factorial(m));
        direct.compare(&rhs).map_err(|e| format!("Fourier m = {m}: {e}"))?;
        let lhs_l = fourier_to_laurent(&eulerian_families(m, q), 8, q).map_err(|e| e.to_string())?;
        let rhs_l = &Laurent::constant(QSeries::constant(c.clone(), q), 8) - &bell.c_coeff(m as i32).scale(&factorial(m));
        laurent_eq(&lhs_l, &rhs_l).map_err(|e| format!("Laurent m = {m}: {e}"))?;
        let sym = QEExpr::constant(c) - QEExpr::bell_estar(m + 1, 1).scale(&(rat(1, 1) / int(m as i64 + 1)));
        let sym_f = qe_fourier(&sym, th, 0, k_max).map_err(|e| e.to_string())?;
        direct.compare(&sym_f).map_err(|e| format!("symbolic m = {m}: {e}"))?;
    }
    Ok(())
}

pub fn suite_ordered(cfg: &VerifyConfig) -> Vec<CheckReport> {
    let mut out = Vec::new();
    out.push(CheckReport::exact(format!("g_(b,a) continuation = series (b ≤ {})", cfg.b_max), gba_agreement(cfg.b_max, cfg.k_max, cfg.q_order)));
    let gba_lead = all_ok((1..=cfg.b_max).map(|b| {
        let lead = gba_continue(GbaKey { b, a: 0 }, 1).weight_part(b as i64);
        all_ok((1..=b).map(|a| expr_eq(&gba_continue(GbaKey { b, a }, 1).weight_part(b as i64), &lead)))
    }));
    out.push(CheckReport::exact("g_(b,a) leading part independent of a", gba_lead));
    let small = (|| -> Result<(), String> {
        let e = |e: Error| e.to_string();
        let g21 = QEExpr::constant(rat(-1, 4) + bernoulli(2) / int(2)) - QEExpr::theta_ratio(2, 1).scale(&rat(1, 2)) - QEExpr::g(2);
        expr_eq(&gba_continue(GbaKey { b: 2, a: 1 }, 1), &g21)?;
        expr_eq(&(gba_continue(GbaKey { b: 2, a: 0 }, 1) - gba_continue(GbaKey { b: 2, a: 1 }, 1)), &QEExpr::estar(1, 1))?;
        expr_eq(&ordered::tn_omega(&Ordering::gw(1)).map_err(e)?, &QEExpr::one())?;
        let t2 = QEExpr::estar(1, 1) + QEExpr::estar(1, 2);
        expr_eq(&ordered::tn_omega(&Ordering::gw(2)).map_err(e)?, &t2)?;
        expr_eq(&ordered::tn_omega(&Ordering::wick(2)).map_err(e)?, &(t2 - QEExpr::one()))
    })();
    out.push(CheckReport::exact("small ordered integrals (g_(2,1), T_1, T_2 GW/Wick)", small));
    let nmax = cfg.n.clamp(1, ordered::MAX_PAIRS);
    let cj = all_ok((1..=nmax.min(4)).flat_map(|n| {
        let tables = vec![Ordering::wick(n), Ordering::gw(n), Ordering::random_custom(n, cfg.seed), Ordering::random_bound(n, cfg.seed)];
        tables.into_iter().flat_map(move |o| {
            (1u32..(1 << n)).map(move |j| {
                let a = ordered::c_j_cyclic(j, &o).map_err(|e| e.to_string())?;
                let b = ordered::c_j_sequences(j, &o).map_err(|e| e.to_string())?;
                let c = ordered::c_j_extended(j, &o).map_err(|e| e.to_string())?;
                if a == b && b == c {
                    Ok(())
                } else {
                    Err(format!("n = {n}, J = {j:b}: {a} / {b} / {c}"))
                }
            })
        })
    }));
    out.push(CheckReport::exact("c_J: determinant = sequences = extended", cj));
    let cj_gw = all_ok((1..=5).map(|n| {
        let v = ordered::c_j_sequences((1 << n) - 1, &Ordering::gw(n)).map_err(|e| e.to_string())?;
        if v == ordered::c_j_gw_bernoulli(n) { Ok(()) } else { Err(format!("|J| = {n}: {v}")) }
    }));
    out.push(CheckReport::exact("c_J (GW) = 4(2^m-1)B_m/m, m = |J|+1", cj_gw));
    let h = all_ok((1..=5).map(|n| {
        let full = (1 << n) - 1;
        let g = ordered::g_block(full, &Ordering::gw(n)).map_err(|e| e.to_string())?;
        let sign = if n % 2 == 1 { int(1) } else { int(-1) };
        expr_eq(&g.scale(&(sign / int(n as i64))), &ordered::h_n(n, full))
    }));
    out.push(CheckReport::exact("(-1)^(n-1) G_n^GW / n = H_n (n ≤ 5)", h));
    let routes = all_ok((1..=nmax).map(|n| {
        let o = Ordering::random_custom(n, cfg.seed + 7);
        let a = ordered::tn_omega_determinant(&o).map_err(|e| e.to_string())?;
        let b = ordered::tn_omega_partitions(&o).map_err(|e| e.to_string())?;
        expr_eq(&a, &b)
    }));
    out.push(CheckReport::exact("T_n^Ω: determinant route = partition route", routes));
    let inv = all_ok((1..=nmax).flat_map(|n| {
        (0..5u64).map(move |s| {
            let e = |e: Error| e.to_string();
            let gw = ordered::tn_omega(&Ordering::gw(n)).map_err(e)?;
            let c = Ordering::random_custom(n, cfg.seed + s);
            expr_eq(&ordered::tn_omega(&c).map_err(e)?, &ordered::tn_omega(&c.with_random_diagonal(cfg.seed + 100 + s)).map_err(e)?)?;
            let b = Ordering::random_bound(n, cfg.seed + s);
            expr_eq(&ordered::tn_omega(&b).map_err(e)?, &gw)
        })
    }));
    out.push(CheckReport::exact(format!("diagonal invariance and bound collapse (n ≤ {nmax}, 5 tables)"), inv));
    let wick = all_ok((1..=nmax.min(4)).map(|n| {
        let (a, b) = ordered::wick_partition_residuals(n).map_err(|e| e.to_string())?;
        if a.is_zero() && b.is_zero() { Ok(()) } else { Err(format!("n = {n}: {a} | {b}")) }
    }));
    out.push(CheckReport::exact("Wick ↔ GW partition identity", wick));
    for (n, ray) in [(1, Ray::from_ints(&[3, 1, 5])), (2, Ray::from_ints(&[1, 2, 4, 8, 17]))] {
        out.extend(lift("Fay/Frobenius-Stickelberger", fay_frobenius_check(n, &ray, true, 6, 6)));
    }
    out
}

/// `gba_series = Fourier(gba_continue)` for all `0 ≤ a ≤ b ≤ b_max`.
pub fn gba_agreement(b_max: usize, k_max: usize, q_order: usize) -> Result<(), String> {
    let th = ThetaExpansion::new(q_order, b_max + 4).map_err(|e| e.to_string())?;
    all_ok((0..=b_max).flat_map(|b| {
        let th = &th;
        (0..=b).map(move |a| {
            let key = GbaKey { b, a };
            let s = gba_series(key, k_max, q_order).map_err(|e| e.to_string())?;
            let f = qe_fourier(&gba_continue(key, 1), th, key.annulus(), k_max).map_err(|e| e.to_string())?;
            s.compare(&f).map_err(|e| format!("b = {b}, a = {a}: {e}"))
        })
    }))
}

/// Orders used for engine agreement at a given `n`.
pub fn agreement_orders(n: usize, cfg: &VerifyConfig) -> (usize, i32) {
    if n >= 4 {
        cfg.reduced_orders
    } else {
        (cfg.q_order, cfg.t_order)
    }
}

pub fn suite_engines(cfg: &VerifyConfig) -> Vec<CheckReport> {
    let mut out = Vec::new();
    let nmax = cfg.n.clamp(1, engines::MAX_N_RAY);
    for n in 1..=nmax {
        let (q, t) = agreement_orders(n, cfg);
        for ray in seeded_rays(n, cfg.rays, cfg.seed) {
            out.extend(lift("engine agreement", engine_agreement(n, &ray, q, t)));
        }
    }
    let sym_n = cfg.n.clamp(1, 3);
    let pure = all_ok((1..=engines::MAX_N).map(|n| match tn_bell(n) {
        Ok(t) if t.is_pure_weight(n as i64 - 1) => Ok(()),
        Ok(_) => Err(format!("T_{n} is not pure weight {}", n - 1)),
        Err(e) => Err(e.to_string()),
    }));
    out.push(CheckReport::exact("T_n pure weight n-1 (n ≤ 5)", pure));
    for n in 1..=sym_n {
        out.push(engines::difference_check(n));
        out.push(engines::anomaly_check(n));
        out.push(engines::completion_check(n));
    }
    for n in 2..=sym_n.max(2) {
        out.extend(engines::pole_checks(n));
    }
    out.push(vanishing_check(2, &Ray::from_ints(&[1, -1]), cfg.q_order.min(8), 8));
    out.push(vanishing_check(3, &Ray::from_ints(&[1, 2, -3]), cfg.q_order.min(8), 8));
    out.extend(gw_checks(cfg));
    out
}

/// Bracket extraction: `<τ_0(ω)>` normalized equals `G_2` (wedge and `[z^1] 1/θ`), the
/// `ψ^{-2}` convention, and exact quasimodular fits through `q^20`.
pub fn gw_checks(cfg: &VerifyConfig) -> Vec<CheckReport> {
    let q = cfg.q_order;
    let g2 = (|| -> Result<(), String> {
        let b = gw_extract(&[0], q).map_err(|e| e.to_string())?;
        let g = eisenstein_g(2, q).map_err(|e| e.to_string())?;
        let th = ThetaExpansion::new(q, 4).map_err(|e| e.to_string())?;
        let via_theta = th.theta().inv().map_err(|e| e.to_string())?.coeff(1);
        if b.normalized != g {
            return Err(format!("wedge bracket {} != G_2", b.normalized));
        }
        if via_theta != g {
            return Err("[z^1] 1/θ != G_2".into());
        }
        Ok(())
    })();
    let conv = gw_extract(&[-2], q).map_err(|e| e.to_string()).and_then(|b| if b.normalized == QSeries::one(q) { Ok(()) } else { Err(format!("{}", b.normalized)) });
    let fits = all_ok([vec![0], vec![1, 1]].iter().map(|ell| {
        let b = gw_extract(ell, 20).map_err(|e| e.to_string())?;
        match quasimodular_fit(&b.normalized, 12).map_err(|e| e.to_string())? {
            Some(_) => Ok(()),
            None => Err(format!("no quasimodular fit for {ell:?}")),
        }
    }));
    vec![
        CheckReport::exact("<τ_0(ω)> normalized = G_2 (wedge, 1/θ)", g2),
        CheckReport::exact("<ωψ^-2> convention = 1", conv),
        CheckReport::exact("quasimodular fits through q^20 for ℓ = (0), (1,1)", fits),
    ]
}

pub fn suite_numeric(cfg: &VerifyConfig) -> Vec<CheckReport> {
    let mut out = Vec::new();
    match NumericContext::with_tau(Complex64::new(0.0, 0.37)) {
        Ok(ctx) => {
            let pts = [Complex64::new(0.2, 0.1), Complex64::new(-0.3, 0.25), Complex64::new(0.05, -0.4)];
            out.push(series_consistency(&ctx, &pts, 4).unwrap_or_else(|e| fail("float generators = series layer", e)));
        }
        Err(e) => out.push(fail("numeric context", e)),
    }
    for &tau in &cfg.taus {
        let ctx = match NumericContext::with_tau(tau) {
            Ok(c) => c,
            Err(e) => {
                out.push(fail("numeric context", e));
                continue;
            }
        };
        for n in 2..=cfg.n.clamp(2, 3) {
            out.extend(lift("transformation laws", transform_checks(n, &ctx, cfg.samples, cfg.seed).map(|v| {
                v.into_iter()
                    .map(|mut r| {
                        r.check = format!("{} at τ = {}", r.check, tau);
                        r
                    })
                    .collect()
            })));
        }
    }
    out
}

pub fn run_suite(suite: Suite, cfg: &VerifyConfig) -> Vec<CheckReport> {
    match suite {
        Suite::Series => suite_series(cfg),
        Suite::Special => suite_special(cfg),
        Suite::Combinatorics => suite_combinatorics(cfg),
        Suite::Ordered => suite_ordered(cfg),
        Suite::Engines => suite_engines(cfg),
        Suite::Numeric => suite_numeric(cfg),
        Suite::All => [Suite::Series, Suite::Combinatorics, Suite::Special, Suite::Ordered, Suite::Engines, Suite::Numeric]
            .iter()
            .flat_map(|s| run_suite(*s, cfg))
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick() -> VerifyConfig {
        VerifyConfig { n: 2, b_max: 2, q_order: 4, t_order: 4, k_max: 4, rays: 1, samples: 2, taus: vec![Complex64::new(0.3, 0.8)], ..Default::default() }
    }

    #[test]
    fn quick_suites_pass() {
        for suite in [Suite::Series, Suite::Combinatorics, Suite::Special, Suite::Ordered, Suite::Engines, Suite::Numeric] {
            for r in run_suite(suite, &quick()) {
                assert!(r.pass, "{suite:?}: {r:?}");
            }
        }
        assert_eq!("engines".parse::<Suite>().unwrap(), Suite::Engines);
        assert!("bogus".parse::<Suite>().is_err());
    }
}
