//! Adaptive Gauss-Kronrod (7/15) quadrature with global bisection.

use crate::dd::Dd;
use crate::error::{Error, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_47,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_225,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_83,
];
// Gauss weights for XGK[1], XGK[3], XGK[5], XGK[7]
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadResult {
    pub value: f64,
    pub error: f64,
    pub panels: usize,
}

#[derive(Clone, Copy, Debug)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

/// One 15-point Kronrod panel with the QUADPACK error heuristic.
pub fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut k = fc * WGK[7];
    let mut g = fc * WG[3];
    let mut fv = [(0.0, 0.0); 7];
    for (j, slot) in fv.iter_mut().enumerate() {
        let dx = h * XGK[j];
        let (f1, f2) = (f(c - dx), f(c + dx));
        *slot = (f1, f2);
        k += WGK[j] * (f1 + f2);
        if j % 2 == 1 {
            g += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = 0.5 * k;
    let mut asc = WGK[7] * (fc - mean).abs();
    for (j, (f1, f2)) in fv.iter().enumerate() {
        asc += WGK[j] * ((f1 - mean).abs() + (f2 - mean).abs());
    }
    let h = h.abs();
    let asc = asc * h;
    let mut err = ((k - g) * h).abs();
    if asc != 0.0 && err != 0.0 {
        err = asc * (200.0 * err / asc).powf(1.5).min(1.0);
    }
    (k * h, err.max(f64::EPSILON * (k * h).abs()))
}

fn total(panels: &[Panel]) -> (f64, f64, f64) {
    let mut v = Dd::ZERO;
    let mut e = 0.0;
    let mut mass = 0.0;
    for p in panels {
        v += p.value;
        e += p.error;
        mass += p.value.abs();
    }
    (v.to_f64(), e, mass)
}

/// Integrate `f` over `[a, b]` to `max(abs_tol, rel_tol·|I|)`.
pub fn integrate<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    abs_tol: f64,
    rel_tol: f64,
    max_panels: usize,
) -> Result<QuadResult> {
    integrate_from(&f, &[a, b], abs_tol, rel_tol, max_panels)
}

/// As [`integrate`] but starting from the given breakpoints.
pub fn integrate_from<F: Fn(f64) -> f64>(
    f: &F,
    points: &[f64],
    abs_tol: f64,
    rel_tol: f64,
    max_panels: usize,
) -> Result<QuadResult> {
    let mut panels: Vec<Panel> = points
        .windows(2)
        .map(|w| {
            let (value, error) = gk15(f, w[0], w[1]);
            Panel {
                a: w[0],
                b: w[1],
                value,
                error,
            }
        })
        .collect();
    loop {
        let (value, error, mass) = total(&panels);
        if !value.is_finite() {
            return Err(Error::Convergence("integrand produced a non-finite value".into()));
        }
        // below 8 eps of the absolute mass the estimate is rounding noise
        if error <= abs_tol.max(rel_tol * value.abs()).max(8.0 * f64::EPSILON * mass) {
            return Ok(QuadResult {
                value,
                error,
                panels: panels.len(),
            });
        }
        if panels.len() >= max_panels {
            return Err(Error::Convergence(format!(
                "quadrature stopped at {} panels with error estimate {error:e}",
                panels.len()
            )));
        }
        let (i, _) = panels.iter().enumerate().fold(
            (0, -1.0),
            |best, (i, p)| if p.error > best.1 { (i, p.error) } else { best },
        );
        let p = panels.swap_remove(i);
        let m = 0.5 * (p.a + p.b);
        for (a, b) in [(p.a, m), (m, p.b)] {
            let (value, error) = gk15(f, a, b);
            panels.push(Panel { a, b, value, error });
        }
    }
}

/// Composite rule on `panels` equal sub-intervals, no adaptivity.
pub fn composite<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, panels: usize) -> f64 {
    let h = (b - a) / panels as f64;
    let mut acc = Dd::ZERO;
    for i in 0..panels {
        let lo = a + h * i as f64;
        let hi = if i + 1 == panels { b } else { lo + h };
        acc += gk15(f, lo, hi).0;
    }
    acc.to_f64()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_is_exact() {
        let (v, _) = gk15(&|x: f64| x.powi(20), 0.0, 1.0);
        assert!((v - 1.0 / 21.0).abs() < 1e-15);
    }

    #[test]
    fn adaptive_handles_peaks() {
        let f = |x: f64| 1.0 / (1e-4 + (x - 0.3).powi(2));
        let want = ((0.7f64 / 1e-2).atan() + (0.3f64 / 1e-2).atan()) / 1e-2;
        let r = integrate(f, 0.0, 1.0, 0.0, 1e-12, 500).unwrap();
        assert!(((r.value - want) / want).abs() < 1e-12);
    }

    #[test]
    fn reports_non_convergence() {
        let r = integrate(|x: f64| x.sin() / x.powi(3), 1e-9, 1.0, 0.0, 1e-14, 4);
        assert!(matches!(r, Err(Error::Convergence(_))));
    }
}
