use gwell_core::combinatorics::eulerian;
use gwell_core::engines::{genus_of, tn_on_ray};
use gwell_core::ordered::{self, tn_omega, Ordering};
use gwell_core::qe::{qe_eval, QEExpr};
use gwell_core::series::{factorial, format_rational, parse_rational, rat, Laurent, QSeries, Ray};
use gwell_core::special::ThetaExpansion;
use proptest::prelude::*;

fn qseries(order: usize) -> impl Strategy<Value = QSeries> {
    prop::collection::vec((-20i64..20, 1i64..6), order + 1).prop_map(move |c| QSeries::from_coeffs(c.into_iter().map(|(a, b)| rat(a, b)).collect(), order))
}

fn unit_qseries(order: usize) -> impl Strategy<Value = QSeries> {
    qseries(order).prop_filter("unit", |s| !s.coeff(0).eq(&rat(0, 1)))
}

fn small_generator() -> impl Strategy<Value = QEExpr> {
    prop_oneof![
        (1usize..4, 1u32..4).prop_map(|(m, s)| QEExpr::estar(m, s)),
        (1usize..3, 1u32..4).prop_map(|(k, s)| QEExpr::theta_ratio(k, s)),
        (1usize..3).prop_map(|k| QEExpr::g(2 * k)),
        (-3i64..4).prop_map(|c| QEExpr::constant(rat(c, 2))),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rational_text_round_trip(a in -1000i64..1000, b in 1i64..1000) {
        let r = rat(a, b);
        prop_assert_eq!(parse_rational(&format_rational(&r)).unwrap(), r);
    }

    #[test]
    fn qseries_ring_laws(a in qseries(6), b in qseries(6), c in qseries(6)) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }

    #[test]
    fn qseries_inverse_and_log(s in unit_qseries(7)) {
        prop_assert_eq!(&s.inv().unwrap() * &s, QSeries::one(7));
        let normalized = s.scale(&(rat(1, 1) / s.coeff(0)));
        prop_assert_eq!(normalized.log().unwrap().exp().unwrap(), normalized);
    }

    #[test]
    fn qseries_json_round_trip(s in qseries(8)) {
        prop_assert_eq!(QSeries::from_json(&s.to_json()).unwrap(), s);
    }

    #[test]
    fn laurent_json_round_trip(rows in prop::collection::vec(qseries(4), 1..6), min in -3i32..2) {
        let l = Laurent::from_coeffs(min, rows, 4);
        let json = l.to_json("t");
        let back = Laurent::from_json(&json).unwrap();
        prop_assert_eq!(back.to_json("t"), json);
        prop_assert_eq!(back, l);
    }

    #[test]
    fn ordering_json_round_trip(n in 1usize..6, seed in any::<u64>()) {
        for o in [Ordering::random_custom(n, seed), Ordering::random_bound(n, seed), Ordering::gw(n), Ordering::wick(n)] {
            prop_assert_eq!(Ordering::from_json(&o.to_json()).unwrap(), o);
        }
    }

    #[test]
    fn random_rays_are_generic(n in 1usize..6, seed in any::<u64>()) {
        let r = Ray::random_generic(n, seed);
        prop_assert_eq!(r.len(), n);
        prop_assert!(r.is_generic());
        prop_assert_eq!(Ray::random_generic(n, seed), r);
    }

    #[test]
    fn eulerian_coefficients_sum_to_factorial(m in 1usize..9) {
        let total = eulerian(m).into_iter().fold(rat(0, 1), |a, b| a + b);
        prop_assert_eq!(total, factorial(m));
    }

    #[test]
    fn dimension_axiom(ell in prop::collection::vec(-2i32..6, 1..5)) {
        let sum: i32 = ell.iter().map(|l| l + 1).sum();
        match genus_of(&ell) {
            Ok(g) => prop_assert_eq!(2 * g - 2 + ell.len() as i32, sum),
            Err(_) => prop_assert!((sum + 2 - ell.len() as i32) % 2 != 0 || sum + 2 < ell.len() as i32),
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn qe_eval_is_multiplicative(a in small_generator(), b in small_generator(), seed in 0u64..1000) {
        let th = ThetaExpansion::for_orders(4, 3, 8).unwrap();
        let ray = Ray::random_generic(2, seed);
        let t = 3;
        let lhs = qe_eval(&(&a * &b), &th, &ray).unwrap().truncate(t).normalized();
        let rhs = (&qe_eval(&a, &th, &ray).unwrap() * &qe_eval(&b, &th, &ray).unwrap()).truncate(t).normalized();
        prop_assert!(lhs.compare(&rhs).is_ok());
    }

    #[test]
    fn c_j_routes_agree(n in 1usize..5, seed in any::<u64>()) {
        let o = Ordering::random_custom(n, seed);
        for j in 1u32..(1 << n) {
            let a = ordered::c_j_cyclic(j, &o).unwrap();
            prop_assert_eq!(&a, &ordered::c_j_sequences(j, &o).unwrap());
            prop_assert_eq!(&a, &ordered::c_j_extended(j, &o).unwrap());
        }
    }

    #[test]
    fn ordered_integral_ignores_the_diagonal(n in 1usize..4, seed in any::<u64>()) {
        let o = Ordering::random_custom(n, seed);
        prop_assert_eq!(tn_omega(&o).unwrap(), tn_omega(&o.with_random_diagonal(seed ^ 0x5eed)).unwrap());
    }

    #[test]
    fn bound_orderings_collapse_to_gw(n in 1usize..4, seed in any::<u64>()) {
        prop_assert_eq!(tn_omega(&Ordering::random_bound(n, seed)).unwrap(), tn_omega(&Ordering::gw(n)).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn engines_are_symmetric_in_the_ray(seed in 0u64..10_000, engine in prop::sample::select(vec!["bell", "bo", "recursion", "wedge"])) {
        let th = ThetaExpansion::for_orders(3, 3, 4).unwrap();
        let ray = Ray::random_generic(3, seed);
        let base = tn_on_ray(engine, 3, &ray, &th, 3).unwrap();
        for perm in [[1, 0, 2], [2, 0, 1]] {
            let permuted = tn_on_ray(engine, 3, &ray.permuted(&perm), &th, 3).unwrap();
            prop_assert!(permuted.compare(&base).is_ok(), "{} {:?}", engine, perm);
        }
    }
}
