//! Direct summation of hyperbolic series with explicit geometric tail bounds.
//!
//! Every supported summand is rewritten in terms of `u = exp(-θ)` and
//! `w = u^2`, with `θ = π a m x`, as `C0 u^d N(w) / D(w)^γ`. That form never
//! overflows and gives the envelope used by [`tail_bound`].

// Range guards are written as !(x >= lo) so NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod arithmetic;
mod cosech;
mod ei;

pub use arithmetic::{lambert_d, lambert_sigma, sieve, ArithmeticTable, LambertSum};
pub use cosech::{cosech_small_x, cosech_sum, cosech_value, EULER_GAMMA};
pub use ei::{e1_scaled, ei_scaled, exp_integral_ei};

use crate::dd::Dd;
use crate::error::{range, Error, Result};
use serde::Serialize;
use std::f64::consts::PI;
use std::fmt;

pub const MAX_TERMS: usize = 1_000_000;
pub const MIN_X: f64 = 1e-2;
pub const MIN_TOL: f64 = 1e-15;
/// Smallest decay rate per unit index accepted by the tail envelope.
pub const MIN_RHO: f64 = 0.03;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Sign {
    Plus,
    /// (-1)^(n-1) on the n-th term.
    Alternating,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Numerator {
    One,
    Cosh,
    Sinh,
    /// 3 + cosh(2θ)
    ThreePlusCosh2,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Denominator {
    Sinh,
    Cosh,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Frequency {
    Half,
    One,
    Two,
}

impl Frequency {
    pub fn value(self) -> f64 {
        match self {
            Frequency::Half => 0.5,
            Frequency::One => 1.0,
            Frequency::Two => 2.0,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum IndexForm {
    /// m = n
    N,
    /// m = 2n - 1
    Odd,
}

impl IndexForm {
    #[inline]
    pub fn index(self, n: usize) -> f64 {
        match self {
            IndexForm::N => n as f64,
            IndexForm::Odd => (2 * n - 1) as f64,
        }
    }

    fn step(self) -> f64 {
        match self {
            IndexForm::N => 1.0,
            IndexForm::Odd => 2.0,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Defect {
    None,
    TanhMinusOne,
    CothMinusOne,
}

/// One series family: Σ sign(n) m^α f(π a m x) with m = n or 2n - 1.
///
/// With `defect = None`, f is numerator^β / denominator^γ; otherwise f is
/// tanh - 1 or coth - 1 and the ratio fields are ignored.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SeriesSpec {
    pub sign: Sign,
    pub alpha: i32,
    pub numerator: Numerator,
    pub beta: u32,
    pub denominator: Denominator,
    pub gamma: u32,
    pub frequency: Frequency,
    pub index: IndexForm,
    pub defect: Defect,
}

impl SeriesSpec {
    /// numerator^β / denominator^γ with α = 0, a = 1, m = n, no sign.
    pub const fn ratio(numerator: Numerator, denominator: Denominator, gamma: u32) -> SeriesSpec {
        let beta = match numerator {
            Numerator::One => 0,
            _ => 1,
        };
        SeriesSpec {
            sign: Sign::Plus,
            alpha: 0,
            numerator,
            beta,
            denominator,
            gamma,
            frequency: Frequency::One,
            index: IndexForm::N,
            defect: Defect::None,
        }
    }

    pub const fn defect(defect: Defect) -> SeriesSpec {
        SeriesSpec {
            sign: Sign::Plus,
            alpha: 0,
            numerator: Numerator::One,
            beta: 0,
            denominator: Denominator::Sinh,
            gamma: 1,
            frequency: Frequency::One,
            index: IndexForm::N,
            defect,
        }
    }

    pub const fn alpha(mut self, alpha: i32) -> SeriesSpec {
        self.alpha = alpha;
        self
    }

    pub const fn freq(mut self, f: Frequency) -> SeriesSpec {
        self.frequency = f;
        self
    }

    pub const fn odd(mut self) -> SeriesSpec {
        self.index = IndexForm::Odd;
        self
    }

    pub const fn alternating(mut self) -> SeriesSpec {
        self.sign = Sign::Alternating;
        self
    }

    fn numerator_degree(&self) -> u32 {
        match self.numerator {
            Numerator::One => 0,
            Numerator::Cosh | Numerator::Sinh => self.beta,
            Numerator::ThreePlusCosh2 => 2 * self.beta,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(-1..=3).contains(&self.alpha) {
            return Err(range(format!("alpha = {} outside -1..=3", self.alpha)));
        }
        if self.defect != Defect::None {
            return Ok(());
        }
        if !(1..=3).contains(&self.gamma) {
            return Err(range(format!("gamma = {} outside 1..=3", self.gamma)));
        }
        let beta_ok = match self.numerator {
            Numerator::One => self.beta == 0,
            _ => self.beta == 1,
        };
        if !beta_ok {
            return Err(range(format!(
                "beta = {} does not fit numerator {:?}",
                self.beta, self.numerator
            )));
        }
        if self.gamma <= self.numerator_degree() {
            return Err(range("series diverges: denominator power must exceed numerator growth"));
        }
        Ok(())
    }

    /// (C0, d): the term is C0 u^d N(w)/D(w)^γ.
    fn envelope(&self) -> (f64, i32) {
        match self.defect {
            Defect::TanhMinusOne => (-2.0, 2),
            Defect::CothMinusOne => (2.0, 2),
            Defect::None => {
                let g = self.gamma as i32;
                let deg = self.numerator_degree() as i32;
                let c0 = match self.numerator {
                    Numerator::ThreePlusCosh2 => 2f64.powi(g - 1),
                    _ => 2f64.powi(g - deg),
                };
                (c0, g - deg)
            }
        }
    }

    /// Decay rate of the envelope per unit of m.
    pub fn rho(&self, x: f64) -> f64 {
        let (_, d) = self.envelope();
        PI * self.frequency.value() * x * d as f64
    }

    fn kernel(&self, theta: f64) -> f64 {
        let (c0, d) = self.envelope();
        let w = (-2.0 * theta).exp();
        let one_minus_w = -(-2.0 * theta).exp_m1();
        let ud = (-(d as f64) * theta).exp();
        match self.defect {
            Defect::TanhMinusOne => c0 * ud / (1.0 + w),
            Defect::CothMinusOne => c0 * ud / one_minus_w,
            Defect::None => {
                let num = match self.numerator {
                    Numerator::One => 1.0,
                    Numerator::Cosh => 1.0 + w,
                    Numerator::Sinh => one_minus_w,
                    Numerator::ThreePlusCosh2 => 1.0 + w * (6.0 + w),
                };
                let den = match self.denominator {
                    Denominator::Sinh => one_minus_w,
                    Denominator::Cosh => 1.0 + w,
                };
                c0 * ud * num / den.powi(self.gamma as i32)
            }
        }
    }

    /// The n-th summand (n >= 1).
    pub fn term(&self, n: usize, x: f64) -> f64 {
        let m = self.index.index(n);
        let theta = PI * self.frequency.value() * m * x;
        let s = match self.sign {
            Sign::Alternating if n.is_multiple_of(2) => -1.0,
            _ => 1.0,
        };
        s * m.powi(self.alpha) * self.kernel(theta)
    }

    /// Bound on sup of |N(w)| / D(w)^γ for w <= w0.
    fn envelope_constant(&self, w0: f64) -> f64 {
        let (c0, _) = self.envelope();
        let (nmax, dmin) = match self.defect {
            Defect::TanhMinusOne => (1.0, 1.0),
            Defect::CothMinusOne => (1.0, 1.0 - w0),
            Defect::None => {
                let nmax = match self.numerator {
                    Numerator::One | Numerator::Sinh => 1.0,
                    Numerator::Cosh => 1.0 + w0,
                    Numerator::ThreePlusCosh2 => 1.0 + w0 * (6.0 + w0),
                };
                let dmin = match self.denominator {
                    Denominator::Sinh => (1.0 - w0).powi(self.gamma as i32),
                    Denominator::Cosh => 1.0,
                };
                (nmax, dmin)
            }
        };
        c0.abs() * nmax / dmin
    }
}

fn power_label(base: &str, p: i32) -> String {
    match p {
        0 => String::new(),
        1 => base.to_string(),
        _ => format!("{base}^{p}"),
    }
}

impl fmt::Display for SeriesSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = match self.index {
            IndexForm::N => "n",
            IndexForm::Odd => "(2n-1)",
        };
        let arg = match self.frequency {
            Frequency::Half => format!("pi {m} x/2"),
            Frequency::One => format!("pi {m} x"),
            Frequency::Two => format!("2 pi {m} x"),
        };
        let sign = match self.sign {
            Sign::Plus => "",
            Sign::Alternating => "(-1)^(n-1) ",
        };
        let (pre, lead) = match self.alpha {
            -1 => (format!("1/{m} "), String::new()),
            a => (String::new(), power_label(m, a)),
        };
        let body = match self.defect {
            Defect::TanhMinusOne => format!("[tanh({arg}) - 1]"),
            Defect::CothMinusOne => format!("[coth({arg}) - 1]"),
            Defect::None => {
                let num = match self.numerator {
                    Numerator::One => "1".to_string(),
                    Numerator::Cosh => format!("cosh({arg})"),
                    Numerator::Sinh => format!("sinh({arg})"),
                    Numerator::ThreePlusCosh2 => {
                        let dbl = match self.frequency {
                            Frequency::Half => format!("pi {m} x"),
                            Frequency::One => format!("2 pi {m} x"),
                            Frequency::Two => format!("4 pi {m} x"),
                        };
                        format!("(3 + cosh({dbl}))")
                    }
                };
                let den = match self.denominator {
                    Denominator::Sinh => "sinh",
                    Denominator::Cosh => "cosh",
                };
                let pw = if self.gamma == 1 {
                    String::new()
                } else {
                    format!("^{}", self.gamma)
                };
                format!("{num}/{den}{pw}({arg})")
            }
        };
        let lead = if lead.is_empty() { lead } else { format!("{lead} ") };
        write!(f, "sum_n {sign}{pre}{lead}{body}")
    }
}

/// Result of a bound-terminated summation.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SeriesSum {
    pub value: f64,
    pub tail_bound: f64,
    pub terms: usize,
}

/// Upper bound on Σ_{n > N} |term(n)|.
pub fn tail_bound(spec: &SeriesSpec, x: f64, n: usize) -> Result<f64> {
    spec.validate()?;
    if n < 8 {
        return Err(range(format!("tail bound needs N >= 8, got {n}")));
    }
    let rho = spec.rho(x);
    if !(rho >= MIN_RHO) {
        return Err(range(format!("decay rate {rho} below {MIN_RHO}")));
    }
    let m0 = spec.index.index(n + 1);
    let s = spec.index.step();
    let w0 = (-2.0 * PI * spec.frequency.value() * m0 * x).exp();
    let c = spec.envelope_constant(w0);
    let alpha = spec.alpha as f64;
    let log_ratio = if spec.alpha >= 0 {
        -rho * s + alpha * s / m0
    } else {
        -rho * s
    };
    if log_ratio >= 0.0 {
        return Err(range("envelope ratio not below one; raise N"));
    }
    let head = c * m0.powi(spec.alpha) * (-rho * m0).exp();
    Ok(head / -log_ratio.exp_m1() * (1.0 + 1e-12))
}

/// Σ_{n=from}^{to} term(n) with double-double accumulation.
pub fn sum_range(spec: &SeriesSpec, x: f64, from: usize, to: usize) -> Dd {
    let mut acc = Dd::ZERO;
    for n in from..=to {
        acc += spec.term(n, x);
    }
    acc
}

fn check_args(x: f64, tol: f64) -> Result<()> {
    if !(x >= MIN_X) || !x.is_finite() {
        return Err(range(format!("x = {x} below summation band (x >= {MIN_X})")));
    }
    if !(tol >= MIN_TOL) {
        return Err(range(format!("tol = {tol} below {MIN_TOL}")));
    }
    Ok(())
}

/// Sum a series family until the proven tail is at most `tol·max(1, |partial|)`.
pub fn hyperbolic_sum(spec: &SeriesSpec, x: f64, tol: f64) -> Result<SeriesSum> {
    spec.validate()?;
    check_args(x, tol)?;
    let mut acc = Dd::ZERO;
    for n in 1..=MAX_TERMS {
        acc += spec.term(n, x);
        if n >= 8 {
            let bound = tail_bound(spec, x, n)?;
            let v = acc.to_f64();
            if bound <= tol * v.abs().max(1.0) {
                return Ok(SeriesSum {
                    value: v,
                    tail_bound: bound,
                    terms: n,
                });
            }
        }
    }
    Err(Error::Convergence(format!(
        "{spec} at x = {x}: tail above {tol} after {MAX_TERMS} terms"
    )))
}
