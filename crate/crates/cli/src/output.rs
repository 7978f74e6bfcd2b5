//! JSON and CSV renderings of engine results, brackets and reports.

use gwell_core::engines::{GwBracket, WedgeCoefficients};
use gwell_core::series::{format_rational, Laurent, Ray};
use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// `{"engine", "n", "ray", "series"}`; `seed` is included when the ray was drawn at random.
pub fn npoint_json(engine: &str, n: usize, ray: Option<&Ray>, seed: Option<u64>, series: &Laurent) -> Value {
    let mut v = json!({
        "engine": engine,
        "n": n,
        "ray": ray.map(Ray::to_strings),
        "series": series.to_json("t"),
    });
    if let Some(s) = seed {
        v["seed"] = json!(s);
    }
    v
}

/// One row per nonzero `t^i q^j` coefficient.
pub fn laurent_csv(series: &Laurent) -> String {
    let mut out = String::from("t_exp,q_exp,coeff\n");
    for (i, c) in series.iter() {
        for (j, x) in c.coeffs().iter().enumerate() {
            if *x != num_traits::Zero::zero() {
                out.push_str(&format!("{i},{j},{}\n", format_rational(x)));
            }
        }
    }
    out
}

/// One row per nonzero `z^m q^j` coefficient; the exponent vector is `;`-separated.
pub fn wedge_csv(w: &WedgeCoefficients) -> String {
    let mut out = String::from("zexp,q_exp,coeff\n");
    for (v, c) in &w.coeffs {
        let key = v.iter().map(i32::to_string).collect::<Vec<_>>().join(";");
        for (j, x) in c.coeffs().iter().enumerate() {
            if *x != num_traits::Zero::zero() {
                out.push_str(&format!("{key},{j},{}\n", format_rational(x)));
            }
        }
    }
    out
}

/// A bracket row, or a flagged row when the exponents violate the dimension axiom.
pub enum BracketRow {
    Ok(GwBracket),
    Flagged { ell: Vec<i32>, error: String },
}

impl BracketRow {
    pub fn to_json(&self) -> Value {
        match self {
            BracketRow::Ok(b) => b.to_json(),
            BracketRow::Flagged { ell, error } => json!({"ell": ell, "error": error}),
        }
    }
}

fn ell_key(ell: &[i32]) -> String {
    ell.iter().map(i32::to_string).collect::<Vec<_>>().join(";")
}

pub fn brackets_csv(rows: &[BracketRow]) -> String {
    let mut out = String::from("ell,genus,kind,q_exp,coeff\n");
    for row in rows {
        match row {
            BracketRow::Ok(b) => {
                for (kind, s) in [("disconnected", &b.disconnected), ("normalized", &b.normalized)] {
                    for (j, x) in s.coeffs().iter().enumerate() {
                        out.push_str(&format!("{},{},{kind},{j},{}\n", ell_key(&b.ell), b.genus, format_rational(x)));
                    }
                }
            }
            BracketRow::Flagged { ell, .. } => out.push_str(&format!("{},,axiom-violation,,\n", ell_key(ell))),
        }
    }
    out
}
