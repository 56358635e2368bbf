//! Checks of the divisor-sum, principal-value and Mellin integral formulas
//! attached to S(x).

use crate::dd::Dd;
use crate::error::{range, Result};
use crate::quadrature::{composite, integrate_from};
use crate::series::{cosech_value, e1_scaled, ei_scaled, sieve, ArithmeticTable, EULER_GAMMA};
use serde::Serialize;
use std::f64::consts::{LN_2, PI};

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PVQuadratureSettings {
    /// Half-width of the window t in [1 - δ, 1 + δ] handled by pairing t = 1 ± u.
    pub delta_exclusion: f64,
    pub panel_tol: f64,
    pub max_panels: usize,
}

impl Default for PVQuadratureSettings {
    fn default() -> Self {
        PVQuadratureSettings {
            delta_exclusion: 0.5,
            panel_tol: 1e-14,
            max_panels: 2000,
        }
    }
}

/// Bounds of the rate accepted by [`pv_kernel_integral`].
pub const PV_C_MIN: f64 = 0.01;
pub const PV_C_MAX: f64 = 500.0;

/// PV ∫_0^∞ e^{-ct} t/(1-t^2) dt with default settings.
pub fn pv_kernel_integral(c: f64) -> Result<f64> {
    pv_kernel_integral_with(c, &PVQuadratureSettings::default())
}

pub fn pv_kernel_integral_with(c: f64, s: &PVQuadratureSettings) -> Result<f64> {
    if !(PV_C_MIN..=PV_C_MAX).contains(&c) {
        return Err(range(format!(
            "PV kernel rate c = {c} outside [{PV_C_MIN}, {PV_C_MAX}]"
        )));
    }
    let delta = s.delta_exclusion;
    if !(delta > 0.0 && delta < 1.0) {
        return Err(range(format!("delta_exclusion = {delta} outside (0, 1)")));
    }
    // Paired integrand on u in (0, δ]:
    // F(1-u) + F(1+u) = 2 e^{-c} [(2 - u^2) sinh(cu)/u - cosh(cu)] / (4 - u^2)
    let paired = |u: f64| {
        let near = (-c * (1.0 - u)).exp();
        let far = (-c * (1.0 + u)).exp();
        let sinh_over_u = if u == 0.0 {
            c * (-c).exp()
        } else {
            near * -(-2.0 * c * u).exp_m1() / (2.0 * u)
        };
        let cosh = 0.5 * (near + far);
        2.0 * ((2.0 - u * u) * sinh_over_u - cosh) / (4.0 - u * u)
    };
    let plain = |t: f64| (-c * t).exp() * t / (1.0 - t * t);
    // right tail t = 1 + δ + v/c
    let t0 = 1.0 + delta;
    let tail = |v: f64| {
        let t = t0 + v / c;
        plain(t) / c
    };
    let tol = s.panel_tol;
    let mid = integrate_from(&paired, &[0.0, delta], tol * 1e-2, tol, s.max_panels)?;
    let left = integrate_from(&plain, &[0.0, 1.0 - delta], tol * 1e-2, tol, s.max_panels)?;
    let right = integrate_from(&tail, &[0.0, 1.0, 5.0, 20.0, 60.0], tol * 1e-2, tol, s.max_panels)?;
    Ok((Dd::new(mid.value) + left.value + right.value).to_f64())
}

/// The same integral from the exponential integral:
/// (1/2)[e^{-c} Ei(c) + e^{c} Ei(-c)].
pub fn pv_kernel_closed_form(c: f64) -> Result<f64> {
    Ok(0.5 * (ei_scaled(c)? - e1_scaled(c)?))
}

/// e^{-w} Ei(w) + e^{w} Ei(-w) by the route suited to the size of w.
pub fn ei_combination(w: f64) -> Result<f64> {
    if w <= 40.0 {
        Ok(ei_scaled(w)? - e1_scaled(w)?)
    } else if w <= PV_C_MAX {
        Ok(2.0 * pv_kernel_integral(w)?)
    } else {
        Ok(2.0 * watson_series(w))
    }
}

/// Σ_j (2j+1)! / w^{2j+2}, summed while terms shrink.
fn watson_series(w: f64) -> f64 {
    let w2 = 1.0 / (w * w);
    let mut t = w2;
    let mut acc = Dd::new(t);
    for j in 1..60 {
        let f = ((2 * j) * (2 * j + 1)) as f64;
        let next = t * f * w2;
        if next >= t || next < 1e-18 * acc.hi {
            break;
        }
        t = next;
        acc += t;
    }
    acc.to_f64()
}

/// Band for [`voronoi_residual`].
pub const VORONOI_X: (f64, f64) = (0.5, 4.0);
pub const VORONOI_MIN_TERMS: usize = 2000;

fn voronoi_check(x: f64, n_max: usize) -> Result<()> {
    if !(VORONOI_X.0..=VORONOI_X.1).contains(&x) {
        return Err(range(format!("x = {x} outside [{}, {}]", VORONOI_X.0, VORONOI_X.1)));
    }
    if n_max < VORONOI_MIN_TERMS {
        return Err(range(format!("n_max = {n_max} below {VORONOI_MIN_TERMS}")));
    }
    Ok(())
}

fn voronoi_partial(x: f64, table: &ArithmeticTable) -> Result<Dd> {
    let mut acc = Dd::ZERO;
    let scale = 2.0 / (PI * x);
    for n in 1..=table.n_max {
        let w = 4.0 * PI * n as f64 / x;
        let term = (-PI * n as f64 * x).exp() + scale * ei_combination(w)?;
        acc += table.d(n) as f64 * term;
    }
    Ok(acc)
}

fn voronoi_rhs(x: f64) -> f64 {
    0.25 + (EULER_GAMMA - (PI * x).ln()) / (PI * x)
}

/// Residual of the divisor-sum formula for S with the sum cut at `n_max`
/// and nothing added for the remainder.
pub fn voronoi_truncated_residual(x: f64, n_max: usize) -> Result<f64> {
    voronoi_check(x, n_max)?;
    let table = sieve(n_max)?;
    Ok((voronoi_partial(x, &table)? - voronoi_rhs(x)).to_f64())
}

/// ζ(2j+2)^2 for j = 0, 1, 2.
fn zeta_even_squared() -> [Dd; 3] {
    let p2 = Dd::PI.sqr();
    let p4 = p2.sqr();
    [p4 / 36.0, p4.sqr() / 8100.0, p4.powi(3) / 893_025.0]
}

/// Residual of the divisor-sum formula with the remainder n > n_max
/// added from the large-w expansion of the Ei combination:
/// (4/(πx)) Σ_j (2j+1)! (x/4π)^{2j+2} [ζ(2j+2)^2 - Σ_{n<=N} d(n)/n^{2j+2}].
pub fn voronoi_residual(x: f64, n_max: usize) -> Result<f64> {
    voronoi_check(x, n_max)?;
    let table = sieve(n_max)?;
    let partial = voronoi_partial(x, &table)?;
    let z = zeta_even_squared();
    let mut tail = Dd::ZERO;
    let a = x / (4.0 * PI);
    let mut fact = 1.0; // (2j+1)!
    for (j, zj) in z.iter().enumerate() {
        let p = 2 * j as i32 + 2;
        let mut s = Dd::ZERO;
        for n in 1..=table.n_max {
            s += table.d(n) as f64 / (n as f64).powi(p);
        }
        tail += (*zj - s) * (fact * a.powi(p));
        fact *= ((2 * j + 2) * (2 * j + 3)) as f64;
    }
    let tail = tail * (4.0 / (PI * x));
    Ok((partial + tail - voronoi_rhs(x)).to_f64())
}

pub const HILBERT_X: (f64, f64) = (0.3, 3.0);
pub const HILBERT_PANELS: usize = 32;

/// f(t) = S(t) - 2 S(2t).
pub fn hilbert_f(t: f64) -> Result<f64> {
    Ok(cosech_value(t)? - 2.0 * cosech_value(2.0 * t)?)
}

/// Residual of f(x) + (2/π) PV∫ f(t) xt/(1-(xt)^2) dt - ln 2/(πx) with the
/// default panel count.
pub fn hilbert_equation_residual(x: f64) -> Result<f64> {
    hilbert_equation_residual_with(x, HILBERT_PANELS)
}

/// As [`hilbert_equation_residual`] using `panels` fixed Kronrod panels on
/// each piece. With u = xt the integral is (1/x) PV∫ f(u/x) u/(1-u^2) du;
/// u in [0, 2] is paired around u = 1 and [2, U] is integrated directly,
/// U chosen so that e^{-πU/x} is below 1e-17.
pub fn hilbert_equation_residual_with(x: f64, panels: usize) -> Result<f64> {
    if !(HILBERT_X.0..=HILBERT_X.1).contains(&x) {
        return Err(range(format!("x = {x} outside [{}, {}]", HILBERT_X.0, HILBERT_X.1)));
    }
    if panels == 0 {
        return Err(range("panel count must be positive"));
    }
    // evaluated once up front so that errors surface
    hilbert_f(1.0 / x)?;
    let g = |u: f64| hilbert_f(u / x).unwrap_or(f64::NAN) * u / (1.0 - u * u);
    let paired = |v: f64| {
        let (a, b) = (1.0 - v, 1.0 + v);
        let fa = hilbert_f(a / x).unwrap_or(f64::NAN);
        let fb = hilbert_f(b / x).unwrap_or(f64::NAN);
        (fa * a / (2.0 - v) - fb * b / (2.0 + v)) / v
    };
    let upper = 2.0 + 40.0 * x / PI;
    let near = composite(&paired, 0.0, 1.0, panels);
    let far = composite(&g, 2.0, upper, panels);
    let integral = (Dd::new(near) + far) / x;
    let r = Dd::new(hilbert_f(x)?) + integral * (2.0 / PI) - LN_2 / (PI * x);
    let r = r.to_f64();
    if !r.is_finite() {
        return Err(crate::error::Error::Convergence(
            "non-finite integrand in (0, U]".into(),
        ));
    }
    Ok(r)
}

/// (1/π) PV∫_0^∞ t^{s-1}/(1-t) dt - cot(πs) for real s in [0.1, 0.9].
///
/// Pieces: [0, 1/2] with w = t^s, the pair t = 1 ± u for u in (0, 1/2], and
/// [3/2, ∞) with v = t^{s-1}.
pub fn cot_mellin_check(s: f64) -> Result<f64> {
    Ok(cot_mellin_integral(s)? / PI - 1.0 / (PI * s).tan())
}

pub fn cot_mellin_integral(s: f64) -> Result<f64> {
    if !(0.1..=0.9).contains(&s) {
        return Err(range(format!("s = {s} outside [0.1, 0.9]")));
    }
    let tol = 1e-15;
    let left = |w: f64| 1.0 / (1.0 - w.powf(1.0 / s));
    let wl = 0.5f64.powf(s);
    let l = integrate_from(&left, &[0.0, wl], 0.0, tol, 2000)?.value / s;
    let pair = |u: f64| {
        if u == 0.0 {
            2.0 * (1.0 - s)
        } else {
            ((1.0 - u).powf(s - 1.0) - (1.0 + u).powf(s - 1.0)) / u
        }
    };
    let m = integrate_from(&pair, &[0.0, 0.5], 0.0, tol, 2000)?.value;
    let q = 1.0 - s;
    let right = |v: f64| 1.0 / (1.0 - v.powf(1.0 / q));
    let vr = (2.0f64 / 3.0).powf(q);
    let r = -integrate_from(&right, &[0.0, vr], 0.0, tol, 2000)?.value / q;
    Ok((Dd::new(l) + m + r).to_f64())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::exp_integral_ei;

    #[test]
    fn pv_matches_ei_closed_form() {
        for c in [1.0, 5.0, 20.0] {
            let q = pv_kernel_integral(c).unwrap();
            let e = 0.5 * ((-c).exp() * exp_integral_ei(c).unwrap() + c.exp() * exp_integral_ei(-c).unwrap());
            assert!(((q - e) / e).abs() < 1e-10, "c = {c}: {q} vs {e}");
        }
        assert!((pv_kernel_integral(1.0).unwrap() - 0.050_413_7).abs() < 1e-6);
    }

    #[test]
    fn pv_large_rate_asymptote() {
        let c = 400.0;
        let v = pv_kernel_integral(c).unwrap();
        assert!((v * c * c - 1.0).abs() < 0.01);
    }

    #[test]
    fn pv_independent_of_pairing_window() {
        let s = PVQuadratureSettings::default();
        let a = pv_kernel_integral_with(3.0, &s).unwrap();
        let half = PVQuadratureSettings {
            delta_exclusion: s.delta_exclusion / 2.0,
            ..s
        };
        let b = pv_kernel_integral_with(3.0, &half).unwrap();
        assert!((a - b).abs() < 1e-11);
        assert!(pv_kernel_integral(0.001).is_err());
        assert!(pv_kernel_integral(501.0).is_err());
    }

    #[test]
    fn pv_kernel_changes_sign_once() {
        let z = 0.879_087_753_159_252;
        assert!(pv_kernel_closed_form(z).unwrap().abs() < 1e-14);
        assert!(pv_kernel_integral(0.8).unwrap() < 0.0);
        assert!(pv_kernel_integral(0.95).unwrap() > 0.0);
    }

    #[test]
    fn watson_series_joins_quadrature() {
        let q = pv_kernel_integral(500.0).unwrap();
        let w = watson_series(500.0);
        assert!(((q - w) / q).abs() < 1e-10);
    }

    #[test]
    fn cot_mellin_values() {
        assert!(cot_mellin_check(0.5).unwrap().abs() < 1e-8);
        assert!(cot_mellin_integral(0.5).unwrap().abs() < 1e-8);
        assert!(cot_mellin_check(0.25).unwrap().abs() < 1e-8);
        let a = cot_mellin_integral(0.25).unwrap();
        let b = cot_mellin_integral(0.75).unwrap();
        assert!((a + b).abs() < 1e-8);
        assert!(cot_mellin_check(0.05).is_err());
    }

    #[test]
    fn hilbert_f_leading_terms() {
        let x = 3.0;
        let f = hilbert_f(x).unwrap();
        let q = (-PI * x).exp();
        // S(x) - 2S(2x) = 2q - 2q^2 + 4q^3 + ...
        let lead = 2.0 * q * (1.0 - q);
        assert!(f > 0.0);
        assert!(((f - lead) / f).abs() < 1e-6);
    }
}
