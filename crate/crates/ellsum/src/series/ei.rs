//! Exponential integral Ei(z) for real nonzero z.

use super::cosech::EULER_GAMMA;
use crate::dd::Dd;
use crate::error::{range, Error, Result};

const SERIES_MAX: f64 = 40.0;

/// γ + ln|z| + Σ z^k / (k k!)
fn ei_series(z: f64) -> f64 {
    let mut acc = Dd::new(EULER_GAMMA) + z.abs().ln();
    let mut pw = 1.0;
    for k in 1..500 {
        pw *= z / k as f64;
        let t = pw / k as f64;
        acc += t;
        if t.abs() < 1e-17 * acc.hi.abs() {
            break;
        }
    }
    acc.to_f64()
}

/// Σ k!/w^k, stopped at the smallest term; e^{-w} Ei(w) = (1/w) times this.
fn asymptotic_sum(w: f64) -> f64 {
    let mut acc = Dd::ONE;
    let mut t = 1.0;
    for k in 1..200 {
        let next = t * k as f64 / w;
        if next >= t || next < 1e-17 {
            break;
        }
        t = next;
        acc += t;
    }
    acc.to_f64()
}

/// e^{w} E1(w) for w > 1 by the continued fraction (modified Lentz).
fn e1_cf_scaled(w: f64) -> f64 {
    const TINY: f64 = 1e-300;
    let mut b = w + 1.0;
    let mut c = 1.0 / TINY;
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..1000 {
        let a = -((i * i) as f64);
        b += 2.0;
        d = 1.0 / (a * d + b);
        c = b + a / c;
        let del = c * d;
        h *= del;
        if (del - 1.0).abs() < 1e-16 {
            break;
        }
    }
    h
}

fn check(z: f64) -> Result<()> {
    if z == 0.0 {
        return Err(Error::Singularity("Ei(0) is -infinity".into()));
    }
    if !z.is_finite() || z.abs() > 700.0 {
        return Err(range(format!("Ei argument {z} outside |z| <= 700")));
    }
    Ok(())
}

pub fn exp_integral_ei(z: f64) -> Result<f64> {
    check(z)?;
    Ok(if z > 0.0 {
        if z <= SERIES_MAX {
            ei_series(z)
        } else {
            z.exp() / z * asymptotic_sum(z)
        }
    } else if z >= -1.0 {
        ei_series(z)
    } else {
        -e1_cf_scaled(-z) * z.exp()
    })
}

/// e^{-w} Ei(w) for w > 0.
pub fn ei_scaled(w: f64) -> Result<f64> {
    if !(w > 0.0) {
        return Err(range(format!("scaled Ei needs w > 0, got {w}")));
    }
    if w > SERIES_MAX {
        Ok(asymptotic_sum(w) / w)
    } else {
        Ok((-w).exp() * ei_series(w))
    }
}

/// e^{w} E1(w) = -e^{w} Ei(-w) for w > 0.
pub fn e1_scaled(w: f64) -> Result<f64> {
    if !(w > 0.0) || !w.is_finite() {
        return Err(range(format!("scaled E1 needs w > 0, got {w}")));
    }
    if w > 1.0 {
        Ok(e1_cf_scaled(w))
    } else {
        Ok(-w.exp() * ei_series(-w))
    }
}
