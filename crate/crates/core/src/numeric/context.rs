use std::f64::consts::PI;

use num_complex::Complex64;

use crate::combinatorics::{bernoulli, eulerian};
use crate::series::to_f64;
use crate::Error;

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };
const MAX_TERMS: usize = 20_000;

/// Floating-point evaluation point for `τ`, with the truncation and pole-guard policy.
#[derive(Clone, Debug)]
pub struct NumericContext {
    pub tau: Complex64,
    pub tol: f64,
    /// Minimum distance from a lattice point at which a pole-carrying generator is evaluated.
    pub guard: f64,
    q: Complex64,
}

impl NumericContext {
    pub fn new(tau: Complex64, tol: f64, guard: f64) -> Result<Self, Error> {
        if tau.im <= 0.0 {
            return Err(Error::Invalid(format!("im τ must be positive, got {tau}")));
        }
        if !(tol > 0.0 && guard > 0.0) {
            return Err(Error::Invalid("tolerance and guard must be positive".into()));
        }
        let q = (2.0 * PI * I * tau).exp();
        Ok(Self { tau, tol, guard, q })
    }

    /// Default tolerance `1e-8` and guard `1e-3`.
    pub fn with_tau(tau: Complex64) -> Result<Self, Error> {
        Self::new(tau, 1e-8, 1e-3)
    }

    pub fn q(&self) -> Complex64 {
        self.q
    }

    /// Number of product/Lambert terms so that the dropped tail at `z` is below `tol/10`
    /// (with margin), accounting for `|e^{±z}|`.
    pub fn product_terms(&self, z: Complex64) -> usize {
        let lq = self.q.norm().ln();
        let need = ((self.tol * 1e-6).ln() - z.re.abs()) / lq;
        (need.ceil().max(1.0) as usize + 2).min(MAX_TERMS)
    }

    /// Distance from `z` to the nearest point of `2πiZ + 2πiτZ`.
    pub fn lattice_distance(&self, z: Complex64) -> f64 {
        let w = z / (2.0 * PI * I);
        let y = w.im / self.tau.im;
        let x = w.re - y * self.tau.re;
        let (a, b) = (x.round(), y.round());
        let mut best = f64::INFINITY;
        for da in -1..=1 {
            for db in -1..=1 {
                let p = 2.0 * PI * I * (Complex64::new(a + da as f64, 0.0) + (b + db as f64) * self.tau);
                best = best.min((z - p).norm());
            }
        }
        best
    }

    fn guard_check(&self, z: Complex64) -> Result<(), Error> {
        let d = self.lattice_distance(z);
        if d < self.guard {
            return Err(Error::Invalid(format!("argument {z} within {d:.2e} of a pole (guard {:.0e})", self.guard)));
        }
        Ok(())
    }

    /// `θ(z) = (e^{z/2} - e^{-z/2}) prod_k (1 - q^k e^z)(1 - q^k e^{-z})/(1 - q^k)^2`.
    pub fn theta(&self, z: Complex64) -> Complex64 {
        let (u, ui) = (z.exp(), (-z).exp());
        let mut acc = (z / 2.0).exp() - (-z / 2.0).exp();
        let mut qk = Complex64::new(1.0, 0.0);
        for _ in 1..=self.product_terms(z) {
            qk *= self.q;
            let one = Complex64::new(1.0, 0.0);
            acc *= (one - qk * u) * (one - qk * ui) / ((one - qk) * (one - qk));
        }
        acc
    }

    /// `(ln θ)^{(m)}(z)`, `m ≥ 1`, from the differentiated product:
    /// `-δ_{m1}/2 - sum_{k≥0} y A_{m-1}(y)/(1-y)^m |_{y=q^k e^z} + (-1)^{m-1} sum_{k≥1} (same)|_{y=q^k e^{-z}}`.
    pub fn log_theta_derivative(&self, m: usize, z: Complex64) -> Result<Complex64, Error> {
        assert!(m >= 1);
        self.guard_check(z)?;
        let a: Vec<f64> = eulerian(m - 1).iter().map(to_f64).collect();
        let term = |y: Complex64| -> Complex64 {
            let poly = a.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * y + c);
            y * poly / (Complex64::new(1.0, 0.0) - y).powi(m as i32)
        };
        let sign = if m % 2 == 1 { 1.0 } else { -1.0 };
        let (u, ui) = (z.exp(), (-z).exp());
        let mut acc = if m == 1 { Complex64::new(-0.5, 0.0) } else { Complex64::new(0.0, 0.0) };
        acc -= term(u);
        let mut qk = Complex64::new(1.0, 0.0);
        for _ in 1..=self.product_terms(z) {
            qk *= self.q;
            acc += -term(qk * u) + sign * term(qk * ui);
        }
        Ok(acc)
    }

    /// `G_k = -B_k/(2k) + sum_n n^{k-1} q^n/(1-q^n)` for even `k ≥ 2`; `G_0 = 1/2`, odd `k` gives `0`.
    pub fn eisenstein(&self, k: usize) -> Complex64 {
        if k == 0 {
            return Complex64::new(0.5, 0.0);
        }
        if k % 2 == 1 {
            return Complex64::new(0.0, 0.0);
        }
        let mut acc = Complex64::new(-to_f64(&bernoulli(k)) / (2.0 * k as f64), 0.0);
        let mut qn = Complex64::new(1.0, 0.0);
        for n in 1..=self.product_terms(Complex64::new(0.0, 0.0)) {
            qn *= self.q;
            acc += (n as f64).powi(k as i32 - 1) * qn / (Complex64::new(1.0, 0.0) - qn);
        }
        acc
    }

    /// `E*_m(z) = (ln θ)^{(m)}(z) + 2 G_m`.
    pub fn estar(&self, m: usize, z: Complex64) -> Result<Complex64, Error> {
        Ok(self.log_theta_derivative(m, z)? + 2.0 * self.eisenstein(m))
    }

    /// `𝐀(z) = im(z/2πi)/im τ`.
    pub fn completion(&self, z: Complex64) -> Complex64 {
        Complex64::new((z / (2.0 * PI * I)).im / self.tau.im, 0.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> NumericContext {
        NumericContext::with_tau(Complex64::new(0.3, 0.8)).unwrap()
    }

    #[test]
    fn theta_basic_laws() {
        let c = ctx();
        assert!(c.theta(Complex64::new(0.0, 0.0)).norm() < 1e-14);
        let z = Complex64::new(0.4, 1.3);
        assert!((c.theta(-z) + c.theta(z)).norm() < 1e-12);
        let lhs = c.theta(z + 2.0 * PI * I * c.tau);
        let rhs = -(-PI * I * c.tau).exp() * (-z).exp() * c.theta(z);
        assert!((lhs - rhs).norm() / rhs.norm() < 1e-10);
        assert!((c.completion(2.0 * PI * I * c.tau) - 1.0).norm() < 1e-14);
    }

    #[test]
    fn log_derivative_matches_finite_difference() {
        let c = ctx();
        let z = Complex64::new(0.4, 1.3);
        let h = 1e-5;
        let fd = (c.theta(z + h).ln() - c.theta(z - h).ln()) / (2.0 * h);
        assert!((fd - c.log_theta_derivative(1, z).unwrap()).norm() < 1e-8);
        let fd2 = (c.log_theta_derivative(1, z + h).unwrap() - c.log_theta_derivative(1, z - h).unwrap()) / (2.0 * h);
        assert!((fd2 - c.log_theta_derivative(2, z).unwrap()).norm() < 1e-7);
        assert!(c.log_theta_derivative(1, Complex64::new(1e-5, 0.0)).is_err());
    }
}
