use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::combinatorics::{complete_bell, elements, BellRing};
use crate::series::{int, Rational, Subset};

/// Generators of the quasi-elliptic ring. Subsets are bitmasks over variable indices
/// `0..n` (variable `i` is `z_{i+1}` in one-based notation).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Gen {
    /// `E*_m(z_S)`, `z_S = sum_{i∈S} z_i`.
    E(u8, Subset),
    /// `G_k` (even `k ≥ 2`).
    G(u8),
    /// Completion symbol `𝐀(z_S)`.
    A(Subset),
    /// Linear symbol `z_i`.
    Z(u8),
}

impl Gen {
    pub fn weight(&self) -> i64 {
        match *self {
            Gen::E(m, _) => m as i64,
            Gen::G(k) => k as i64,
            Gen::A(_) => 1,
            Gen::Z(_) => -1,
        }
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let set = |s: Subset| elements(s).iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(",");
        match *self {
            Gen::E(m, s) => write!(f, "E{m}[{}]", set(s)),
            Gen::G(k) => write!(f, "G{k}"),
            Gen::A(s) => write!(f, "A[{}]", set(s)),
            Gen::Z(i) => write!(f, "z{}", i + 1),
        }
    }
}

/// Sorted generator powers; the empty monomial is `1`.
pub type Monomial = BTreeMap<Gen, u32>;

/// Rational-linear combination of monomials in normal form (no zero coefficients).
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct QEExpr {
    terms: BTreeMap<Monomial, Rational>,
}

pub fn monomial_weight(m: &Monomial) -> i64 {
    m.iter().map(|(g, p)| g.weight() * *p as i64).sum()
}

impl QEExpr {
    pub fn zero() -> Self {
        QEExpr::default()
    }

    pub fn constant(c: Rational) -> Self {
        let mut e = QEExpr::zero();
        e.add_term(Monomial::new(), c);
        e
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn gen(g: Gen) -> Self {
        let mut m = Monomial::new();
        m.insert(g, 1);
        let mut e = QEExpr::zero();
        e.add_term(m, Rational::one());
        e
    }

    /// `E*_m(z_S)`.
    pub fn estar(m: usize, s: Subset) -> Self {
        Self::gen(Gen::E(m as u8, s))
    }

    /// `G_k`; zero for odd `k`, `1/2` for `k = 0`.
    pub fn g(k: usize) -> Self {
        match k {
            0 => Self::constant(crate::rat(1, 2)),
            k if k % 2 == 1 => Self::zero(),
            k => Self::gen(Gen::G(k as u8)),
        }
    }

    pub fn completion_symbol(s: Subset) -> Self {
        Self::gen(Gen::A(s))
    }

    /// `z_S = sum_{i∈S} z_i`.
    pub fn z(s: Subset) -> Self {
        elements(s).into_iter().fold(Self::zero(), |acc, i| acc + Self::gen(Gen::Z(i as u8)))
    }

    /// `(ln θ)^{(m)}(z_S) = E*_m - 2G_m`.
    pub fn log_theta_derivative(m: usize, s: Subset) -> Self {
        Self::estar(m, s) - Self::g(m).scale(&int(2))
    }

    /// `θ^{(k)}/θ(z_S) = 𝐁_k((ln θ)', ..., (ln θ)^{(k)})`.
    pub fn theta_ratio(k: usize, s: Subset) -> Self {
        if k == 0 {
            return Self::one();
        }
        let xs: Vec<QEExpr> = (1..=k).map(|m| Self::log_theta_derivative(m, s)).collect();
        complete_bell(&xs).pop().unwrap()
    }

    /// `𝐁_m(E*_1(z_S), ..., E*_m(z_S))`.
    pub fn bell_estar(m: usize, s: Subset) -> Self {
        if m == 0 {
            return Self::one();
        }
        let xs: Vec<QEExpr> = (1..=m).map(|k| Self::estar(k, s)).collect();
        complete_bell(&xs).pop().unwrap()
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The coefficient of the empty monomial.
    pub fn constant_term(&self) -> Rational {
        self.terms.get(&Monomial::new()).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        QEExpr { terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect() }
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Distinct weights of the monomials present.
    pub fn weights(&self) -> Vec<i64> {
        let mut w: Vec<i64> = self.terms.keys().map(monomial_weight).collect();
        w.sort();
        w.dedup();
        w
    }

    pub fn is_pure_weight(&self, w: i64) -> bool {
        self.terms.keys().all(|m| monomial_weight(m) == w)
    }

    /// Homogeneous component of weight `w`.
    pub fn weight_part(&self, w: i64) -> Self {
        QEExpr {
            terms: self.terms.iter().filter(|(m, _)| monomial_weight(m) == w).map(|(m, v)| (m.clone(), v.clone())).collect(),
        }
    }

    pub fn generators(&self) -> Vec<Gen> {
        let mut g: Vec<Gen> = self.terms.keys().flat_map(|m| m.keys().copied()).collect();
        g.sort();
        g.dedup();
        g
    }

    /// Ring morphism fixing constants: each generator is replaced by `f(g)` or kept when `None`.
    pub fn substitute(&self, f: impl Fn(Gen) -> Option<QEExpr>) -> Self {
        let mut cache: BTreeMap<Gen, QEExpr> = BTreeMap::new();
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let mut term = Self::constant(c.clone());
            for (g, p) in m {
                let img = cache.entry(*g).or_insert_with(|| f(*g).unwrap_or_else(|| Self::gen(*g)));
                term = &term * &img.pow(*p);
            }
            out = out + term;
        }
        out
    }

    /// Derivation determined by its values on generators (Leibniz rule).
    pub fn derive(&self, d: impl Fn(Gen) -> QEExpr) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            for (g, p) in m {
                let dg = d(*g);
                if dg.is_zero() {
                    continue;
                }
                let mut rest = m.clone();
                if *p == 1 {
                    rest.remove(g);
                } else {
                    rest.insert(*g, p - 1);
                }
                let mut r = Self::zero();
                r.add_term(rest, c * int(*p as i64));
                out = out + &r * &dg;
            }
        }
        out
    }

    /// Renames variables: variable `i` becomes the sum of the variables in `f(i)`, so an
    /// argument `z_S` becomes `z_{∪ f(i)}` (the images must be disjoint).
    pub fn relabel(&self, f: impl Fn(usize) -> Subset) -> Self {
        let map_set = |s: Subset| elements(s).into_iter().fold(0, |acc, i| acc | f(i));
        self.substitute(|g| {
            Some(match g {
                Gen::E(m, s) => Self::gen(Gen::E(m, map_set(s))),
                Gen::A(s) => Self::gen(Gen::A(map_set(s))),
                Gen::Z(i) => Self::z(f(i as usize)),
                Gen::G(_) => return None,
            })
        })
    }

    /// The shift `u_i -> q u_i` on the generators: `E*_1(S) -> E*_1(S) - amount` for `S ∋ i`.
    pub fn shift_var(&self, i: usize, amount: &Rational) -> Self {
        self.substitute(|g| match g {
            Gen::E(1, s) if s >> i & 1 == 1 => Some(Self::gen(g) - Self::constant(amount.clone())),
            _ => None,
        })
    }
}

impl fmt::Display for QEExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})")?;
            for (g, p) in m {
                if *p == 1 {
                    write!(f, "*{g}")?;
                } else {
                    write!(f, "*{g}^{p}")?;
                }
            }
        }
        Ok(())
    }
}

impl<'a> Add for &'a QEExpr {
    type Output = QEExpr;
    fn add(self, rhs: &QEExpr) -> QEExpr {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<'a> Neg for &'a QEExpr {
    type Output = QEExpr;
    fn neg(self) -> QEExpr {
        self.scale(&int(-1))
    }
}

impl<'a> Sub for &'a QEExpr {
    type Output = QEExpr;
    fn sub(self, rhs: &QEExpr) -> QEExpr {
        self + &(-rhs)
    }
}

impl<'a> Mul for &'a QEExpr {
    type Output = QEExpr;
    fn mul(self, rhs: &QEExpr) -> QEExpr {
        let mut acc: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                let mut m = m1.clone();
                for (g, p) in m2 {
                    *m.entry(*g).or_insert(0) += p;
                }
                *acc.entry(m).or_insert_with(Rational::zero) += c1 * c2;
            }
        }
        acc.retain(|_, v| !v.is_zero());
        QEExpr { terms: acc }
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for QEExpr {
            type Output = QEExpr;
            fn $m(self, rhs: QEExpr) -> QEExpr {
                (&self).$m(&rhs)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl Neg for QEExpr {
    type Output = QEExpr;
    fn neg(self) -> QEExpr {
        -&self
    }
}

impl BellRing for QEExpr {
    fn bell_one(&self) -> Self {
        QEExpr::one()
    }
    fn bell_add(&self, other: &Self) -> Self {
        self + other
    }
    fn bell_mul(&self, other: &Self) -> Self {
        self * other
    }
    fn bell_scale(&self, c: &Rational) -> Self {
        self.scale(c)
    }
}

impl std::iter::Sum for QEExpr {
    fn sum<I: Iterator<Item = QEExpr>>(iter: I) -> Self {
        iter.fold(QEExpr::zero(), |a, b| a + b)
    }
}
