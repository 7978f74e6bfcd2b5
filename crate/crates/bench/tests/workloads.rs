//! The benchmarked workloads, run once at small orders so a broken bench shows up in `cargo test`.

use gwell_core::engines::{fn_wedge, gw_extract, tn_on_ray, ENGINES};
use gwell_core::series::Ray;
use gwell_core::special::ThetaExpansion;

#[test]
fn bench_workloads_run() {
    let ray = Ray::random_generic(2, 1);
    let th = ThetaExpansion::for_orders(3, 2, 3).unwrap();
    let reference = tn_on_ray("bell", 2, &ray, &th, 2).unwrap();
    for engine in ENGINES {
        assert!(tn_on_ray(engine, 2, &ray, &th, 2).unwrap().compare(&reference).is_ok(), "{engine}");
    }
    assert!(!fn_wedge(3, 2, 0).unwrap().coeffs.is_empty());
    assert_eq!(gw_extract(&[1, 1], 4).unwrap().genus, 2);
}
