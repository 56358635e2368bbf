//! Complete elliptic integrals K and E by the arithmetic-geometric mean.
//!
//! The iteration runs in double-double so that closed forms with heavy
//! cancellation can be evaluated well below binary64 roundoff. Public values
//! are rounded to `f64`.

use crate::dd::Dd;
use crate::error::{domain, range, Result};
use serde::Serialize;

/// Moduli closer than this to 0 or 1 are rejected.
pub const K_CLAMP: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
enum Primary {
    K,
    KPrime,
}

/// An elliptic modulus `k` in `(0, 1)` together with `k' = sqrt(1 - k^2)`.
///
/// Whichever of the two was supplied is kept exactly; the other is derived
/// as `sqrt((1 - a)(1 + a))` in double-double.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Modulus {
    pub k: f64,
    pub k_prime: f64,
    #[serde(skip)]
    primary: Primary,
}

fn complement(a: f64) -> Dd {
    let one = Dd::ONE;
    ((one - a) * (one + a)).sqrt()
}

fn check(k: f64, what: &str) -> Result<()> {
    if !k.is_finite() {
        return Err(domain(format!("{what} = {k} is not finite")));
    }
    if k <= K_CLAMP || k >= 1.0 - K_CLAMP {
        return Err(range(format!("{what} = {k} outside ({K_CLAMP}, 1 - {K_CLAMP})")));
    }
    Ok(())
}

impl Modulus {
    pub fn new(k: f64) -> Result<Modulus> {
        check(k, "k")?;
        Ok(Modulus {
            k,
            k_prime: complement(k).to_f64(),
            primary: Primary::K,
        })
    }

    /// Build the modulus whose complement is `k_prime`.
    pub fn from_complement(k_prime: f64) -> Result<Modulus> {
        check(k_prime, "k'")?;
        let k = complement(k_prime).to_f64();
        check(k, "k")?;
        Ok(Modulus {
            k,
            k_prime,
            primary: Primary::KPrime,
        })
    }

    /// The complementary modulus `k'` as a `Modulus`.
    pub fn complementary(&self) -> Modulus {
        Modulus {
            k: self.k_prime,
            k_prime: self.k,
            primary: match self.primary {
                Primary::K => Primary::KPrime,
                Primary::KPrime => Primary::K,
            },
        }
    }

    /// `(k, k')` in double-double, consistent to ~1e-32.
    pub fn pair_dd(&self) -> (Dd, Dd) {
        match self.primary {
            Primary::K => (Dd::new(self.k), complement(self.k)),
            Primary::KPrime => (complement(self.k_prime), Dd::new(self.k_prime)),
        }
    }
}

/// Outcome of an AGM run: the mean and the `c_n` sequence with `c_0` supplied by the caller.
#[derive(Clone, Debug)]
pub struct AgmRun {
    pub mean: Dd,
    pub c: Vec<Dd>,
}

pub(crate) fn agm_dd(a0: Dd, b0: Dd, c0: Dd) -> AgmRun {
    let (mut a, mut b) = (a0, b0);
    let mut c = vec![c0];
    for _ in 0..64 {
        let diff = (a - b).abs();
        let ulp = f64::EPSILON * f64::EPSILON * a.hi.abs();
        if diff.hi <= 4.0 * ulp {
            break;
        }
        let an = (a + b) * 0.5;
        let bn = (a * b).sqrt();
        c.push((a - b) * 0.5);
        a = an;
        b = bn;
    }
    // one last averaging step
    AgmRun { mean: (a + b) * 0.5, c }
}

/// Arithmetic-geometric mean of two positive reals.
pub fn agm(a: f64, b: f64) -> Result<f64> {
    if !(a > 0.0 && b > 0.0) || !a.is_finite() || !b.is_finite() {
        return Err(domain(format!("agm needs positive finite arguments, got ({a}, {b})")));
    }
    Ok(agm_dd(Dd::new(a), Dd::new(b), Dd::ZERO).mean.to_f64())
}

/// K and E for modulus `k` given `(k, k')` in double-double.
pub(crate) fn k_and_e(k: Dd, kp: Dd) -> (Dd, Dd) {
    let run = agm_dd(Dd::ONE, kp, k);
    let big_k = Dd::PI / (run.mean * 2.0);
    let mut s = Dd::ZERO;
    let mut w = 0.5;
    for cn in &run.c {
        s += cn.sqr() * w;
        w *= 2.0;
    }
    (big_k, big_k * (Dd::ONE - s))
}

/// K(k), E(k), K(k'), E(k') in double-double.
#[derive(Clone, Copy, Debug)]
pub struct EllipticDd {
    pub k: Dd,
    pub kp: Dd,
    pub big_k: Dd,
    pub big_e: Dd,
    pub big_kp: Dd,
    pub big_ep: Dd,
}

impl EllipticDd {
    pub fn new(m: &Modulus) -> EllipticDd {
        let (k, kp) = m.pair_dd();
        let (big_k, big_e) = k_and_e(k, kp);
        let (big_kp, big_ep) = k_and_e(kp, k);
        EllipticDd {
            k,
            kp,
            big_k,
            big_e,
            big_kp,
            big_ep,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct EllipticValues {
    pub modulus: Modulus,
    pub big_k: f64,
    pub big_k_prime: f64,
    pub big_e: f64,
    pub big_e_prime: f64,
}

impl EllipticValues {
    pub fn new(m: Modulus) -> EllipticValues {
        let v = EllipticDd::new(&m);
        EllipticValues {
            modulus: m,
            big_k: v.big_k.to_f64(),
            big_k_prime: v.big_kp.to_f64(),
            big_e: v.big_e.to_f64(),
            big_e_prime: v.big_ep.to_f64(),
        }
    }
}

pub fn ellip_k(m: Modulus) -> f64 {
    let (k, kp) = m.pair_dd();
    k_and_e(k, kp).0.to_f64()
}

pub fn ellip_e(m: Modulus) -> f64 {
    let (k, kp) = m.pair_dd();
    k_and_e(k, kp).1.to_f64()
}

/// dK/dk = (E - k'^2 K) / (k k'^2).
pub fn deriv_k(m: Modulus) -> f64 {
    let (k, kp) = m.pair_dd();
    let (big_k, big_e) = k_and_e(k, kp);
    let kp2 = kp.sqr();
    ((big_e - kp2 * big_k) / (k * kp2)).to_f64()
}

/// dE/dk = (E - K) / k.
pub fn deriv_e(m: Modulus) -> f64 {
    let (k, kp) = m.pair_dd();
    let (big_k, big_e) = k_and_e(k, kp);
    ((big_e - big_k) / k).to_f64()
}

/// E K' + E' K - K K' - pi/2.
pub fn legendre_residual(ev: &EllipticValues) -> f64 {
    let t = [
        ev.big_e * ev.big_k_prime,
        ev.big_e_prime * ev.big_k,
        -ev.big_k_prime * ev.big_k,
        -std::f64::consts::FRAC_PI_2,
    ];
    let mut acc = crate::dd::Accumulator::new();
    for x in t {
        acc.add(x);
    }
    acc.value()
}
