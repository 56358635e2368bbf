use ellsum::analytic::{pv_kernel_closed_form, pv_kernel_integral};
use ellsum::catalog::expr::{parse, ValueEnv};
use ellsum::catalog::{catalog, eval_rhs, verify, Domain};
use ellsum::dd::Dd;
use ellsum::elliptic::{legendre_residual, EllipticValues, Modulus};
use ellsum::gamma::gamma;
use ellsum::modulus::{modulus_from_x, ratio_x};
use ellsum::series::{hyperbolic_sum, sum_range};
use proptest::prelude::*;

fn series_specs() -> Vec<ellsum::series::SeriesSpec> {
    let mut v: Vec<_> = catalog()
        .iter()
        .flat_map(|e| e.readings.iter())
        .flat_map(|r| r.lhs.series.iter().chain(&r.rhs.series))
        .map(|t| t.spec)
        .collect();
    v.dedup_by_key(|s| s.to_string());
    v
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn legendre_holds(k in 0.001f64..0.999) {
        let ev = EllipticValues::new(Modulus::new(k).unwrap());
        prop_assert!(legendre_residual(&ev) <= 1e-13);
    }

    #[test]
    fn ratio_inverts(x in 0.11f64..18.0) {
        let back = ratio_x(modulus_from_x(x).unwrap());
        prop_assert!(((back - x) / x).abs() <= 1e-12, "{back} vs {x}");
    }

    #[test]
    fn gamma_recurrence(z in 0.1f64..60.0) {
        let (a, b) = (gamma(z + 1.0).unwrap(), z * gamma(z).unwrap());
        prop_assert!(((a - b) / a).abs() <= 1e-13);
    }

    #[test]
    fn tail_bound_covers_remainder(x in 0.3f64..5.0, pick in 0usize..1000) {
        let specs = series_specs();
        let s = specs[pick % specs.len()];
        let r = hyperbolic_sum(&s, x, 1e-8).unwrap();
        let rest = sum_range(&s, x, r.terms + 1, 8 * r.terms + 50).to_f64();
        prop_assert!(rest.abs() <= r.tail_bound, "{s} at {x}");
    }

    #[test]
    fn complementary_triangle(x in 0.3f64..4.0) {
        let a = verify("T3.53", &[x], 5e-12).unwrap()[0].lhs;
        let b = eval_rhs("E2.24", 1.0 / x).unwrap();
        prop_assert!(((a - b) / b).abs() <= 5e-12);
    }

    #[test]
    fn dd_add_sub_round_trip(a in -1e6f64..1e6, b in -1e6f64..1e6) {
        let s = Dd::new(a) + Dd::new(b);
        prop_assert_eq!((s - Dd::new(b)).to_f64(), a);
    }

    #[test]
    fn expr_integer_arithmetic(a in -1000i32..1000, b in 1i32..1000) {
        let src = format!("({a})*{b}+{b}-({a})");
        let v = parse(&src).unwrap().eval::<Dd, _>(&ValueEnv { ell: None, x: f64::NAN }).unwrap().to_f64();
        prop_assert_eq!(v, (a * b + b - a) as f64);
    }

    #[test]
    fn pv_matches_closed_form(c in 0.01f64..500.0) {
        let (q, e) = (pv_kernel_integral(c).unwrap(), pv_kernel_closed_form(c).unwrap());
        prop_assert!((q - e).abs() <= 1e-10 * e.abs().max(1e-3), "c = {c}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn x_domain_entries_hold(x in 0.3f64..5.0, pick in 0usize..1000) {
        let ids: Vec<_> = catalog().iter().filter(|e| matches!(e.domain, Domain::XDomain)).map(|e| e.id).collect();
        let id = ids[pick % ids.len()];
        for r in verify(id, &[x], 5e-12).unwrap() {
            prop_assert!(r.pass || !r.gating(), "{id} {} at {x}: rel {:e}", r.reading, r.rel_err);
        }
    }
}
