//! The period ratio x(k) = K(k')/K(k), its inverse, and singular values.

use crate::dd::Dd;
use crate::elliptic::{EllipticDd, Modulus};
use crate::error::{range, Result};
use crate::gamma::{gamma_constant, GammaTag};
use serde::Serialize;
use std::f64::consts::PI;
use std::sync::OnceLock;

/// Supported band for `modulus_from_x`. Wider bands push k or k' past the
/// modulus clamp.
pub const X_MIN: f64 = 0.11;
pub const X_MAX: f64 = 18.0;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RatioPoint {
    pub x: f64,
    pub modulus: Modulus,
    pub nome: f64,
}

impl RatioPoint {
    pub fn new(x: f64) -> Result<RatioPoint> {
        Ok(RatioPoint {
            x,
            modulus: modulus_from_x(x)?,
            nome: (-PI * x).exp(),
        })
    }
}

pub(crate) fn ratio_dd(m: &Modulus) -> Dd {
    let v = EllipticDd::new(m);
    v.big_kp / v.big_k
}

pub fn ratio_x(m: Modulus) -> f64 {
    ratio_dd(&m).to_f64()
}

/// dx/dk = -pi / (2 k (1 - k^2) K^2).
pub fn deriv_x(m: Modulus) -> f64 {
    deriv_x_dd(&m).to_f64()
}

pub(crate) fn deriv_x_dd(m: &Modulus) -> Dd {
    let v = EllipticDd::new(m);
    -Dd::PI / (v.k * v.kp.sqr() * v.big_k.sqr() * 2.0)
}

/// Theta quotient (θ2/θ3)^2 in the nome q.
fn theta_seed(q: f64) -> f64 {
    let mut t2 = 0.0;
    let mut n = 0u32;
    loop {
        let e = (n * (n + 1)) as f64;
        let term = q.powf(e);
        t2 += term;
        if term < 1e-17 {
            break;
        }
        n += 1;
    }
    let t2 = 2.0 * q.powf(0.25) * t2;
    let mut t3 = 1.0;
    let mut n = 1u32;
    loop {
        let term = 2.0 * q.powf((n * n) as f64);
        t3 += term;
        if term < 1e-17 {
            break;
        }
        n += 1;
    }
    let r = t2 / t3;
    r * r
}

fn modulus_above_one(x: f64) -> Result<Modulus> {
    let k0 = theta_seed((-PI * x).exp());
    let m0 = Modulus::new(k0)?;
    let step = (ratio_dd(&m0) - x) / deriv_x_dd(&m0);
    Modulus::new((Dd::new(k0) - step).to_f64())
}

/// Modulus k with K(k')/K(k) = x.
pub fn modulus_from_x(x: f64) -> Result<Modulus> {
    if !(X_MIN..=X_MAX).contains(&x) {
        return Err(range(format!("x = {x} outside [{X_MIN}, {X_MAX}]")));
    }
    if x >= 1.0 {
        modulus_above_one(x)
    } else {
        Modulus::from_complement(modulus_above_one(1.0 / x)?.k)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SingularValue {
    pub r: u32,
    pub k_r: f64,
    /// K(k_r) from the gamma-constant closed form.
    pub big_k_r: f64,
    pub alpha_r: f64,
}

fn check_r(r: u32) -> Result<()> {
    if (1..=4).contains(&r) {
        Ok(())
    } else {
        Err(range(format!("singular value r = {r} not tabulated (1..=4)")))
    }
}

fn radical_k(r: u32) -> Dd {
    let s2 = Dd::new(2.0).sqrt();
    let s3 = Dd::new(3.0).sqrt();
    match r {
        1 => s2.recip(),
        2 => s2 - 1.0,
        3 => s2 * (s3 - 1.0) * 0.25,
        _ => Dd::new(3.0) - s2 * 2.0,
    }
}

fn gamma_form_k(r: u32) -> f64 {
    let g4 = gamma_constant(GammaTag::Quarter).value;
    let g8 = gamma_constant(GammaTag::Eighth).value;
    let g38 = gamma_constant(GammaTag::ThreeEighths).value;
    let g3 = gamma_constant(GammaTag::Third).value;
    let sp = PI.sqrt();
    let s2 = 2f64.sqrt();
    match r {
        1 => g4 * g4 / (4.0 * sp),
        2 => (s2 + 1.0).sqrt() * g8 * g38 / (2f64.powf(13.0 / 4.0) * sp),
        3 => 3f64.powf(0.25) * g3.powi(3) / (2f64.powf(7.0 / 3.0) * PI),
        _ => (s2 + 1.0) * g4 * g4 / (2f64.powf(3.5) * sp),
    }
}

fn tabulated_alpha(r: u32) -> Dd {
    let s2 = Dd::new(2.0).sqrt();
    let s3 = Dd::new(3.0).sqrt();
    match r {
        1 => Dd::new(0.5),
        2 => s2 - 1.0,
        3 => (s3 - 1.0) * 0.5,
        _ => (s2 - 1.0).sqr() * 2.0,
    }
}

pub fn singular_value(r: u32) -> Result<SingularValue> {
    check_r(r)?;
    static TABLE: OnceLock<[SingularValue; 4]> = OnceLock::new();
    let t = TABLE.get_or_init(|| {
        [1, 2, 3, 4].map(|r| SingularValue {
            r,
            k_r: radical_k(r).to_f64(),
            big_k_r: gamma_form_k(r),
            alpha_r: tabulated_alpha(r).to_f64(),
        })
    });
    Ok(t[(r - 1) as usize])
}

/// The two printed expressions of the alpha function at k_r.
pub fn alpha_branches(r: u32) -> Result<(f64, f64)> {
    check_r(r)?;
    let m = Modulus::new(radical_k(r).to_f64())?;
    let v = EllipticDd::new(&m);
    let q = Dd::PI / (v.big_k.sqr() * 4.0);
    let first = v.big_ep / v.big_k - q;
    let sr = Dd::new(r as f64).sqrt();
    let second = q + sr * (Dd::ONE - v.big_e / v.big_k);
    Ok((first.to_f64(), second.to_f64()))
}

/// Largest deviation of either alpha expression from the tabulated α(r).
pub fn alpha_residual(r: u32) -> Result<f64> {
    let (a, b) = alpha_branches(r)?;
    let t = tabulated_alpha(r).to_f64();
    Ok((a - t).abs().max((b - t).abs()))
}
