use ellsum::catalog::{
    catalog, derivative_consistency, eval_rhs, lookup, nasim_residual, verify, Domain, DERIVATIVE_LINKS,
};
use ellsum::dd::Dd;
use ellsum::elliptic::{ellip_e, ellip_k, Modulus};
use std::f64::consts::{FRAC_1_SQRT_2, PI};

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

#[test]
fn printed_entries_look_right() {
    let e = lookup("E2.36").unwrap();
    assert_eq!(e.readings[0].lhs.to_string(), "sum_n cosh(pi n x)/sinh^2(pi n x)");
    assert_eq!(e.readings[0].rhs.to_string(), "(1+k^2)/(3*pi^2)*K^2-1/12");
    let c = lookup("C1.9").unwrap();
    assert!(matches!(c.domain, Domain::Fixed { x, .. } if x == 2.0));
    assert_eq!(c.readings[0].rhs.to_string(), "1/(16*pi^2)*(Gamma(1/4)^4/(8*pi^2)-1)");
    assert!(catalog().len() >= 60);
}

#[test]
fn rhs_at_lemniscatic_point() {
    let m = Modulus::new(FRAC_1_SQRT_2).unwrap();
    let (k, e) = (ellip_k(m), ellip_e(m));
    assert!(rel(eval_rhs("E2.1", 1.0).unwrap(), k * (k - e) / (PI * PI)) < 1e-14);
    assert!(
        rel(
            eval_rhs("T2.39", 1.0).unwrap(),
            4.0 * FRAC_1_SQRT_2 * k * k * e / PI.powi(3)
        ) < 1e-14
    );
    let exact = ((Dd::ONE / 3.0 - Dd::PI.recip()) * 0.25).to_f64();
    assert!(rel(eval_rhs("C5.64", 1.0).unwrap(), exact) <= f64::EPSILON);
}

#[test]
fn verify_examples() {
    let pts = [1.0, 2f64.sqrt(), 3f64.sqrt(), 2.0];
    let r = verify("E2.2", &pts, 5e-12).unwrap();
    assert_eq!(r.len(), 8);
    assert!(r.iter().all(|r| r.pass));
    assert!(verify("T3.53", &[1.7], 5e-12).unwrap()[0].pass);
    assert!(verify("E2.49", &[0.9], 1e-11).unwrap()[0].pass);
}

#[test]
fn flagged_readings_are_reported() {
    let r = verify("C4", &[2.0], 5e-12).unwrap();
    assert!(r.iter().any(|r| r.gating() && r.pass));
    assert!(r.iter().any(|r| !r.gating() && !r.pass));
    let r = verify("T2.41", &[1.0], 5e-12).unwrap();
    assert!(r[0].pass && !r[1].pass && !r[1].gating());
}

#[test]
fn reflection_residuals() {
    for x in [1.0 / 3.0, 0.5, 1.0, 2.0, 3.0] {
        let (a, b) = nasim_residual(x).unwrap();
        assert!(a.abs() <= 1e-12 && b.abs() <= 1e-12, "x = {x}");
    }
    assert!(nasim_residual(11.0).is_err());
    let fixed = verify("E2.24", &[1.0], 5e-12).unwrap()[0].lhs;
    assert!((fixed - (1.0 / 6.0 - 1.0 / (2.0 * PI))).abs() < 1e-15);
}

#[test]
fn complementary_triangle() {
    for x in [0.6, 1.0, 1.7, 2.0, 3.0] {
        let a = verify("T3.53", &[x], 5e-12).unwrap()[0].lhs;
        assert!(rel(a, eval_rhs("E2.24", 1.0 / x).unwrap()) <= 5e-12, "x = {x}");
    }
}

#[test]
fn derivative_links() {
    for link in &DERIVATIVE_LINKS {
        for k in [0.2, 0.5, 0.8] {
            assert!(
                derivative_consistency(link, k).unwrap() <= 1e-10,
                "{} -> {}",
                link.source,
                link.target
            );
        }
    }
}

#[test]
fn every_entry_sweeps_on_default_grid() {
    let grid = [0.6, 1.0, 2f64.sqrt(), 3f64.sqrt(), 2.0, 3.0];
    for e in catalog() {
        for r in verify(e.id, &grid, 5e-12).unwrap() {
            assert!(
                r.pass || !r.gating(),
                "{} {} x = {}: rel {:e}",
                r.id,
                r.reading,
                r.point,
                r.rel_err
            );
        }
    }
}
