//! Symbolic quasi-elliptic expressions: polynomials in `E*_m(z_S)`, `G_{2k}`, the
//! completion symbol `𝐀(z_S)` and linear symbols `z_i`, graded by weight.

mod eval;
mod expr;

pub use eval::{estar_symbolic_laurent, expand_in_argument, qc, qe_eval, SymbolicLaurent};
pub use expr::{monomial_weight, Gen, Monomial, QEExpr};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::{int, Ray};
    use crate::special::ThetaExpansion;

    #[test]
    fn theta_ratio_two() {
        // θ''/θ = E*_1^2 + E*_2 - 2G_2
        let lhs = QEExpr::theta_ratio(2, 1);
        let rhs = QEExpr::estar(1, 1).pow(2) + QEExpr::estar(2, 1) - QEExpr::g(2).scale(&int(2));
        assert_eq!(lhs, rhs);
        assert!(QEExpr::bell_estar(3, 1).is_pure_weight(3));
    }

    #[test]
    fn eval_matches_series_layer() {
        let th = ThetaExpansion::new(5, 12).unwrap();
        let ray = Ray::from_ints(&[1, 1]);
        let e2 = qe_eval(&QEExpr::estar(2, 0b11), &th, &ray).unwrap();
        assert!(e2.compare(&th.estar(2).scale_var(&int(2))).is_ok());
        let g2 = qe_eval(&QEExpr::g(2), &th, &ray).unwrap();
        assert_eq!(g2.coeff(0), th.eisenstein(2));
        assert!(qe_eval(&QEExpr::estar(1, 0b11), &th, &Ray::from_ints(&[1, -1])).is_err());
    }

    #[test]
    fn eval_is_multiplicative() {
        let th = ThetaExpansion::new(4, 14).unwrap();
        let ray = Ray::from_ints(&[2, 5]);
        let a = QEExpr::estar(1, 1) + QEExpr::g(2);
        let b = QEExpr::estar(2, 0b11) - QEExpr::z(0b10);
        let lhs = qe_eval(&(&a * &b), &th, &ray).unwrap();
        let rhs = &qe_eval(&a, &th, &ray).unwrap() * &qe_eval(&b, &th, &ray).unwrap();
        assert!(lhs.compare(&rhs).is_ok());
    }

    #[test]
    fn shift_and_relabel() {
        let e = QEExpr::estar(1, 0b01) + QEExpr::estar(1, 0b10);
        assert_eq!(e.shift_var(0, &int(1)) - e.clone(), QEExpr::constant(int(-1)));
        // merge variable 0 with variable 2
        let r = QEExpr::estar(1, 0b01).relabel(|i| if i == 0 { 0b101 } else { 1 << i });
        assert_eq!(r, QEExpr::estar(1, 0b101));
    }

    #[test]
    fn bell_two_is_regular() {
        let s = expand_in_argument(&QEExpr::bell_estar(2, 1), 1, 2);
        assert!(s.keys().all(|&k| k >= 0), "{s:?}");
        let r = expand_in_argument(&QEExpr::estar(1, 1), 1, 1);
        assert_eq!(r[&-1], QEExpr::one());
    }
}
