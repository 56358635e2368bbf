//! One line per acceptance criterion; exits non-zero if any fails.

use ellsum::analytic::cot_mellin_check;
use ellsum::catalog::{catalog, derivative_consistency, lookup, Domain, ReadingStatus, DERIVATIVE_LINKS, SERIES_TOL};
use ellsum::elliptic::{deriv_e, deriv_k, ellip_e, ellip_k, legendre_residual, EllipticValues, Modulus};
use ellsum::parallel::Mode;
use ellsum::report::{analytic_rows, run, Grid, RunConfig};
use ellsum::series::{hyperbolic_sum, sum_range};
use ellsum::{alpha_residual, nasim_residual, ratio_x, singular_value};
use std::time::{Duration, Instant};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn five_point<F: Fn(f64) -> f64>(f: F, k: f64, h: f64) -> f64 {
    (f(k - 2.0 * h) - 8.0 * f(k - h) + 8.0 * f(k + h) - f(k + 2.0 * h)) / (12.0 * h)
}

fn elliptic_kernel() -> Outcome {
    let mut worst_legendre = 0.0f64;
    for i in 0..100 {
        // log-spaced in [1e-4, 1 - 1e-4], mirrored so both ends are dense
        let t = 1e-4 * (0.5e4f64).powf(i as f64 / 99.0);
        for k in [t, 1.0 - t] {
            let m = Modulus::new(k).unwrap();
            worst_legendre = worst_legendre.max(legendre_residual(&EllipticValues::new(m)));
        }
    }
    let mut worst_deriv = 0.0f64;
    for i in 0..19 {
        let k = 0.05 + 0.05 * i as f64;
        let m = Modulus::new(k).unwrap();
        let fk = five_point(|k| ellip_k(Modulus::new(k).unwrap()), k, 1e-5);
        let fe = five_point(|k| ellip_e(Modulus::new(k).unwrap()), k, 1e-5);
        worst_deriv = worst_deriv
            .max(((deriv_k(m) - fk) / fk).abs())
            .max(((deriv_e(m) - fe) / fe).abs());
    }
    outcome(
        worst_legendre <= 1e-11 && worst_deriv <= 1e-7,
        format!("legendre max {worst_legendre:.1e} (<= 1e-11), derivative rel max {worst_deriv:.1e} (<= 1e-7)"),
    )
}

fn singular_values() -> Outcome {
    let mut k_err = 0.0f64;
    let mut a_err = 0.0f64;
    for r in 1..=4 {
        let sv = singular_value(r).unwrap();
        let agm = ellip_k(Modulus::new(sv.k_r).unwrap());
        k_err = k_err.max(((agm - sv.big_k_r) / sv.big_k_r).abs());
        a_err = a_err.max(alpha_residual(r).unwrap());
        assert!((ratio_x(Modulus::new(sv.k_r).unwrap()) - (r as f64).sqrt()).abs() <= 1e-11);
    }
    outcome(
        k_err <= 5e-13 && a_err <= 1e-12,
        format!("K(k_r) rel max {k_err:.1e} (<= 5e-13), alpha max {a_err:.1e} (<= 1e-12)"),
    )
}

fn catalog_sweep() -> Outcome {
    let rep = run(&RunConfig::default()).unwrap();
    let s = rep.summary();
    let both = |id: &str, status: ReadingStatus| {
        rep.results.iter().any(|r| r.id == id && r.status == status)
            && rep.results.iter().any(|r| r.id == id && r.gating())
    };
    let recorded = both("T2.41", ReadingStatus::Discrepancy) && both("C4", ReadingStatus::Alternate);
    outcome(
        rep.passed() && s.identities >= 60 && recorded,
        format!(
            "{} identities, {} rows, {} gating failures, flagged readings recorded: {recorded}",
            s.identities, s.rows, s.gating_failures
        ),
    )
}

fn special_values() -> Outcome {
    let fixed: Vec<_> = catalog()
        .iter()
        .filter(|e| matches!(e.domain, Domain::Fixed { .. }))
        .map(|e| e.id)
        .collect();
    let mut failed = Vec::new();
    for id in &fixed {
        for r in ellsum::verify(id, &[], 5e-12).unwrap() {
            if r.gating() && !r.pass {
                failed.push(format!("{id}:{}", r.reading));
            }
        }
    }
    // two printed examples, checked against their literal constants
    let g4 = ellsum::gamma_constant(ellsum::GammaTag::Quarter).value;
    let pi = std::f64::consts::PI;
    let s215 = hyperbolic_sum(
        &lookup("C2.15").unwrap().readings[0].lhs.series[0].spec,
        1.0,
        SERIES_TOL,
    )
    .unwrap()
    .value;
    let e215 = ((s215 - g4 * g4 / (8.0 * pi * pi * pi.sqrt())) / s215).abs();
    let s264 = hyperbolic_sum(
        &lookup("C5.64").unwrap().readings[0].lhs.series[0].spec,
        1.0,
        SERIES_TOL,
    )
    .unwrap()
    .value;
    let e264 = ((s264 - 0.25 * (1.0 / 3.0 - 1.0 / pi)) / s264).abs();
    outcome(
        failed.is_empty() && e215 <= 5e-12 && e264 <= 5e-12,
        format!(
            "{} special-value entries, failures {:?}; examples rel {e215:.1e}, {e264:.1e}",
            fixed.len(),
            failed
        ),
    )
}

fn reflection() -> Outcome {
    let mut worst = 0.0f64;
    for x in [1.0 / 3.0, 0.5, 1.0, 2.0, 3.0] {
        let (a, b) = nasim_residual(x).unwrap();
        worst = worst.max(a.abs()).max(b.abs());
    }
    let grid = Grid::Default.points();
    let mut ok = true;
    for id in ["T3.53", "T3.54", "C4"] {
        ok &= ellsum::verify(id, &grid, 5e-12)
            .unwrap()
            .iter()
            .all(|r| r.pass || !r.gating());
    }
    let mut tri = 0.0f64;
    for &x in &grid {
        let a = ellsum::verify("T3.53", &[x], 5e-12).unwrap()[0].lhs;
        let b = ellsum::eval_rhs("E2.24", 1.0 / x).unwrap();
        tri = tri.max(((a - b) / b).abs());
    }
    outcome(
        worst <= 1e-12 && ok && tri <= 5e-12,
        format!("reflection residual max {worst:.1e} (<= 1e-12), complementary entries pass: {ok}, triangle {tri:.1e}"),
    )
}

fn analytics() -> Outcome {
    let rows = analytic_rows(Mode::Parallel);
    let failed: Vec<_> = rows
        .iter()
        .filter(|r| !r.pass && !r.check.starts_with("nasim"))
        .map(|r| format!("{}@{}", r.check, r.point))
        .collect();
    let cot = [0.25, 0.5, 0.75]
        .iter()
        .map(|&s| cot_mellin_check(s).unwrap().abs())
        .fold(0.0, f64::max);
    let worst = |name: &str| {
        rows.iter()
            .filter(|r| r.check == name)
            .map(|r| r.value.abs())
            .fold(0.0, f64::max)
    };
    outcome(
        failed.is_empty(),
        format!(
            "voronoi {:.1e}, pv rel {:.1e}, hilbert {:.1e}, cot {cot:.1e}; failures {:?}",
            worst("voronoi_residual"),
            worst("pv_kernel_vs_ei"),
            worst("hilbert_equation_residual"),
            failed
        ),
    )
}

fn derivative_links() -> Outcome {
    let mut worst = 0.0f64;
    for link in &DERIVATIVE_LINKS {
        for k in [0.3, std::f64::consts::FRAC_1_SQRT_2, 0.9] {
            worst = worst.max(derivative_consistency(link, k).unwrap());
        }
    }
    outcome(
        worst <= 1e-10,
        format!("3 links x 3 moduli, rel max {worst:.1e} (<= 1e-10)"),
    )
}

fn tail_soundness() -> Outcome {
    let mut checked = 0;
    let mut violations = Vec::new();
    let mut seen = Vec::new();
    for e in catalog() {
        for r in &e.readings {
            for t in r.lhs.series.iter().chain(&r.rhs.series) {
                if !seen.contains(&t.spec) {
                    seen.push(t.spec);
                }
            }
        }
    }
    for spec in &seen {
        for x in Grid::Default.points().into_iter().chain([0.5]) {
            for tol in [1e-6, 1e-10, SERIES_TOL] {
                let s = hyperbolic_sum(spec, x, tol).unwrap();
                let more = sum_range(spec, x, s.terms + 1, 10 * s.terms).to_f64();
                checked += 1;
                if more.abs() > s.tail_bound {
                    violations.push(format!("{spec} x={x} tol={tol}"));
                }
            }
        }
    }
    outcome(
        violations.is_empty(),
        format!(
            "{} specs, {checked} sums extended 10x, violations {:?}",
            seen.len(),
            violations
        ),
    )
}

type Criterion = (&'static str, fn() -> Outcome, Option<Duration>);

fn main() {
    let criteria: [Criterion; 8] = [
        ("elliptic kernel", elliptic_kernel, Some(Duration::from_secs(1))),
        ("singular values", singular_values, Some(Duration::from_secs(1))),
        ("catalog sweep", catalog_sweep, Some(Duration::from_secs(30))),
        ("special values", special_values, None),
        ("reflection formulas", reflection, None),
        ("analytic checks", analytics, Some(Duration::from_secs(60))),
        ("derivative consistency", derivative_links, None),
        ("tail-bound soundness", tail_soundness, None),
    ];
    let mut all = true;
    for (i, (name, f, limit)) in criteria.iter().enumerate() {
        let t0 = Instant::now();
        let o = f();
        let dt = t0.elapsed();
        let in_time = limit.is_none_or(|l| dt <= l);
        let pass = o.pass && in_time;
        all &= pass;
        println!(
            "criterion {}: {} {name}: {} [{:.2?}{}]",
            i + 1,
            if pass { "PASS" } else { "FAIL" },
            o.detail,
            dt,
            limit.map(|l| format!(" of {l:?}")).unwrap_or_default()
        );
    }
    if !all {
        std::process::exit(1);
    }
}
