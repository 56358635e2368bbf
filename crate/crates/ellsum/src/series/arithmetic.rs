//! Divisor sieve and the Lambert-type series built on it.

use crate::dd::Dd;
use crate::error::{range, Error, Result};
use serde::Serialize;
use std::f64::consts::PI;

pub const SIEVE_MAX: usize = 10_000_000;

/// d(n) and σ(n) for 1 <= n <= n_max. Slot 0 is unused.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ArithmeticTable {
    pub n_max: usize,
    pub d: Vec<u32>,
    pub sigma: Vec<u64>,
}

impl ArithmeticTable {
    #[inline]
    pub fn d(&self, n: usize) -> u32 {
        self.d[n]
    }

    #[inline]
    pub fn sigma(&self, n: usize) -> u64 {
        self.sigma[n]
    }
}

pub fn sieve(n_max: usize) -> Result<ArithmeticTable> {
    if !(1..=SIEVE_MAX).contains(&n_max) {
        return Err(range(format!("sieve bound {n_max} outside 1..={SIEVE_MAX}")));
    }
    let mut d = vec![0u32; n_max + 1];
    let mut sigma = vec![0u64; n_max + 1];
    for i in 1..=n_max {
        for j in (i..=n_max).step_by(i) {
            d[j] += 1;
            sigma[j] += i as u64;
        }
    }
    Ok(ArithmeticTable { n_max, d, sigma })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LambertSum {
    pub value: f64,
    pub tail_bound: f64,
    pub terms: usize,
}

/// Σ_{n > N} n^α e^{-ρ n}, bounded by its first term over a geometric ratio.
fn power_exp_tail(alpha: i32, rho: f64, n: usize) -> Option<f64> {
    let m0 = (n + 1) as f64;
    let lr = -rho + alpha as f64 / m0;
    if lr >= 0.0 {
        return None;
    }
    Some(m0.powi(alpha) * (-rho * m0).exp() / -lr.exp_m1() * (1.0 + 1e-12))
}

fn terms_needed(alpha: i32, rho: f64, tol: f64) -> Result<(usize, f64)> {
    let mut n = 8;
    loop {
        if let Some(b) = power_exp_tail(alpha, rho, n) {
            if b <= tol {
                return Ok((n, b));
            }
        }
        if n > super::MAX_TERMS {
            return Err(Error::Convergence(format!(
                "Lambert tail above {tol} after {} terms",
                super::MAX_TERMS
            )));
        }
        n += 1 + n / 8;
    }
}

fn check(x: f64, tol: f64) -> Result<()> {
    if !(x >= 0.05) || !x.is_finite() {
        return Err(range(format!("Lambert series needs x >= 0.05, got {x}")));
    }
    if !(tol >= super::MIN_TOL) {
        return Err(range(format!("tol = {tol} below {}", super::MIN_TOL)));
    }
    Ok(())
}

/// Σ σ(n) e^{-2πnx}; the tail uses σ(n) <= n^2.
pub fn lambert_sigma(x: f64, tol: f64) -> Result<LambertSum> {
    check(x, tol)?;
    let rho = 2.0 * PI * x;
    let (n, bound) = terms_needed(2, rho, tol)?;
    let table = sieve(n)?;
    let mut acc = Dd::ZERO;
    for i in 1..=n {
        acc += table.sigma(i) as f64 * (-rho * i as f64).exp();
    }
    Ok(LambertSum {
        value: acc.to_f64(),
        tail_bound: bound,
        terms: n,
    })
}

/// Σ d(n) (e^{-πnx} - e^{-2πnx}); the tail uses d(n) <= n.
pub fn lambert_d(x: f64, tol: f64) -> Result<LambertSum> {
    check(x, tol)?;
    let rho = PI * x;
    let (n, bound) = terms_needed(1, rho, tol)?;
    let table = sieve(n)?;
    let mut acc = Dd::ZERO;
    for i in 1..=n {
        let t = rho * i as f64;
        acc += table.d(i) as f64 * (-t).exp() * -(-t).exp_m1();
    }
    Ok(LambertSum {
        value: acc.to_f64(),
        tail_bound: bound,
        terms: n,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_table() {
        let t = sieve(100).unwrap();
        assert_eq!((t.d(6), t.sigma(6)), (4, 12));
        assert_eq!((t.d(1), t.sigma(1)), (1, 1));
        assert_eq!((t.d(97), t.sigma(97)), (2, 98));
        let total: u32 = (1..=100).map(|n| t.d(n)).sum();
        assert_eq!(total, 482);
        assert!(sieve(0).is_err());
    }

    #[test]
    fn nasim_fixed_point() {
        let l = lambert_sigma(1.0, 1e-15).unwrap();
        let want = 1.0 / 24.0 - 1.0 / (8.0 * PI);
        assert!(((l.value - want) / want).abs() < 1e-13);
        assert!((want - 0.001_877_930_893_692_832_7).abs() < 1e-17);
    }

    #[test]
    fn single_term_dominance() {
        let l = lambert_sigma(20.0, 1e-15).unwrap();
        let t = (-40.0 * PI).exp();
        assert!(((l.value - t) / t).abs() < 1e-12);
        let l = lambert_d(25.0, 1e-15).unwrap();
        let t = (-25.0 * PI).exp();
        assert!(((l.value - t) / t).abs() < 1e-12);
        assert!(lambert_d(0.01, 1e-12).is_err());
    }
}
