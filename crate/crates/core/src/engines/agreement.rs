use rayon::prelude::*;

use crate::ordered::{tn_omega, Ordering};
use crate::qe::qe_eval;
use crate::report::CheckReport;
use crate::series::{Laurent, Ray};
use crate::special::ThetaExpansion;
use crate::Error;

use super::bell::tn_bell;
use super::bo::tn_bo;
use super::recursion::{tn_compositions, tn_recursion};
use super::wedge::tn_wedge;

/// Names of the ray-level engines, in report order.
pub const ENGINES: [&str; 6] = ["bell", "bo", "recursion", "compositions", "omega-gw", "wedge"];

/// `T_n` on one ray from one engine.
pub fn tn_on_ray(engine: &str, n: usize, ray: &Ray, th: &ThetaExpansion, t_order: i32) -> Result<Laurent, Error> {
    let v = match engine {
        "bell" => qe_eval(&tn_bell(n)?, th, ray)?,
        "bo" => tn_bo(n, ray, th)?,
        "recursion" => tn_recursion(n, ray, th)?,
        "compositions" => tn_compositions(n, ray, th)?,
        "omega-gw" => qe_eval(&tn_omega(&Ordering::gw(n))?, th, ray)?,
        "wedge" => tn_wedge(n, ray, th, t_order)?,
        other => return Err(Error::Invalid(format!("unknown engine {other}"))),
    };
    if v.max_exp() < t_order {
        return Err(Error::Mismatch(format!("{engine} lost precision: known through t^{} only", v.max_exp())));
    }
    Ok(v.truncate(t_order).normalized())
}

/// Evaluates every engine on `ray` and compares each against the Bell engine.
pub fn engine_agreement(n: usize, ray: &Ray, q_order: usize, t_order: i32) -> Result<Vec<CheckReport>, Error> {
    let th = ThetaExpansion::for_orders(q_order, t_order, n + 1)?;
    let values: Vec<Result<Laurent, Error>> = ENGINES.par_iter().map(|e| tn_on_ray(e, n, ray, &th, t_order)).collect();
    let reference = match &values[0] {
        Ok(v) => v.clone(),
        Err(e) => return Err(e.clone()),
    };
    Ok(ENGINES
        .iter()
        .zip(values)
        .skip(1)
        .map(|(name, v)| {
            let r = v.map_err(|e| e.to_string()).and_then(|v| v.compare(&reference).map_err(|m| m.to_string()));
            CheckReport::exact(format!("T{n} {name} = bell on {}", ray.describe()), r)
        })
        .collect())
}

/// `T_n = 0` on a zero-sum ray (all proper subset sums nonzero), `n ≥ 2`.
pub fn vanishing_check(n: usize, ray: &Ray, q_order: usize, t_order: i32) -> CheckReport {
    let run = || -> Result<(), String> {
        if ray.dir().iter().sum::<crate::Rational>() != num_traits::Zero::zero() {
            return Err("ray is not zero-sum".into());
        }
        let th = ThetaExpansion::for_orders(q_order, t_order, n).map_err(|e| e.to_string())?;
        let v = qe_eval(&tn_bell(n).map_err(|e| e.to_string())?, &th, ray).map_err(|e| e.to_string())?;
        if v.max_exp() < t_order {
            return Err(format!("precision lost: t^{}", v.max_exp()));
        }
        match v.truncate(t_order).normalized().is_zero() {
            true => Ok(()),
            false => Err(format!("nonzero value {}", v.truncate(t_order).to_json("t"))),
        }
    };
    CheckReport::exact(format!("T{n} vanishes on {}", ray.describe()), run())
}
