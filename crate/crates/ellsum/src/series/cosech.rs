//! S(x) = Σ 1/sinh(πnx), directly and by its small-x expansion.

use super::{hyperbolic_sum, Denominator, Numerator, SeriesSpec, SeriesSum};
use crate::error::Result;
use std::f64::consts::PI;

pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

const COSECH: SeriesSpec = SeriesSpec::ratio(Numerator::One, Denominator::Sinh, 1);

/// Below this the expansion is used by [`cosech_value`]; its truncation
/// error there is about 3e-20.
pub const SMALL_X: f64 = 0.1;

// Bernoulli numbers B_2, B_4, ..., B_22.
const BERNOULLI: [f64; 11] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
];

pub fn cosech_sum(x: f64, tol: f64) -> Result<SeriesSum> {
    hyperbolic_sum(&COSECH, x, tol)
}

/// Residue expansion
/// S(x) = (γ - ln(πx/2))/(πx) + 2 Σ_{m odd} (1 - 2^-m) ζ(-m)^2 (2πx)^m / m!,
/// truncated after m = 21.
pub fn cosech_small_x(x: f64) -> f64 {
    let t = PI * x;
    let lead = (EULER_GAMMA - (t / 2.0).ln()) / t;
    let y = 2.0 * t;
    let mut pw = y; // y^m / m!
    let mut acc = 0.0;
    for (i, b) in BERNOULLI.iter().enumerate() {
        let m = 2 * i + 1;
        let zeta = -b / (m + 1) as f64;
        acc += 2.0 * (1.0 - 0.5f64.powi(m as i32)) * zeta * zeta * pw;
        pw *= y * y / ((m + 1) * (m + 2)) as f64;
    }
    lead + acc
}

/// S(x) for any x > 0: expansion below [`SMALL_X`], direct sum above.
pub fn cosech_value(x: f64) -> Result<f64> {
    if x < SMALL_X {
        if !(x > 0.0) {
            return Err(crate::error::domain(format!("S(x) needs x > 0, got {x}")));
        }
        Ok(cosech_small_x(x))
    } else {
        Ok(cosech_sum(x, super::MIN_TOL)?.value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_values() {
        let cases = [
            (1.0, 0.090_493_124_755_791_55),
            (2.0, 0.003_741_886_222_191_067_4),
            (0.7, 0.252_234_652_516_407_37),
            (2f64.sqrt(), 0.023_807_197_430_709_845),
        ];
        for (x, want) in cases {
            let got = cosech_sum(x, 1e-15).unwrap().value;
            assert!(((got - want) / want).abs() < 1e-14, "S({x})");
        }
    }

    #[test]
    fn expansion_meets_direct_sum() {
        for x in [0.1, 0.12, 0.15] {
            let d = cosech_sum(x, 1e-15).unwrap().value;
            let e = cosech_small_x(x);
            assert!(((d - e) / d).abs() < 1e-13, "x = {x}: {d} vs {e}");
        }
        let want = 19.873_410_532_508_422;
        assert!(((cosech_small_x(0.05) - want) / want).abs() < 1e-14);
    }

    #[test]
    fn first_term_at_ten() {
        let s = cosech_sum(10.0, 1e-15).unwrap().value;
        let t = 2.0 * (-10.0 * PI).exp();
        assert!(((s - t) / t).abs() < 1e-12);
    }
}
