//! A small expression language for closed forms, kept in printed order.
//!
//! Atoms: `K`, `E`, `Kp`, `Ep` (complete integrals at k and k'), `k`, `kp`,
//! `x`, `pi`, `Gamma(p/q)`, decimal literals. Functions: `sqrt`, `log`.
//! Operators: `+ - * /` and `^` with an integer or `(p/q)` exponent.
//!
//! Evaluation is generic over [`Scalar`], so one parsed form gives both
//! double-double values and derivatives in k via [`Dual`].

use crate::dd::Dd;
use crate::elliptic::{deriv_e, deriv_k, EllipticDd, Modulus};
use crate::error::{Error, Result};
use crate::gamma::{gamma_constant, GammaTag};
use crate::modulus::deriv_x;
use std::ops::{Add, Div, Mul, Neg, Sub};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Atom {
    K,
    E,
    Kp,
    Ep,
    Mk,
    Mkp,
    X,
    Pi,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Num(f64),
    Atom(Atom),
    Gamma(GammaTag),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i32, u32),
    Sqrt(Box<Expr>),
    Log(Box<Expr>),
}

pub trait Scalar:
    Copy + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Div<Output = Self> + Neg<Output = Self>
{
    fn constant(c: Dd) -> Self;
    fn sqrt(self) -> Self;
    fn ln(self) -> Self;
    fn pow_rational(self, p: i32, q: u32) -> Self;
}

impl Scalar for Dd {
    fn constant(c: Dd) -> Self {
        c
    }
    fn sqrt(self) -> Self {
        Dd::sqrt(self)
    }
    fn ln(self) -> Self {
        Dd::ln(self)
    }
    fn pow_rational(self, p: i32, q: u32) -> Self {
        Dd::pow_rational(self, p, q)
    }
}

/// Value and first derivative with respect to the modulus k.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Dual {
    pub v: f64,
    pub d: f64,
}

impl Dual {
    pub fn new(v: f64, d: f64) -> Dual {
        Dual { v, d }
    }
}

impl Add for Dual {
    type Output = Dual;
    fn add(self, b: Dual) -> Dual {
        Dual::new(self.v + b.v, self.d + b.d)
    }
}

impl Sub for Dual {
    type Output = Dual;
    fn sub(self, b: Dual) -> Dual {
        Dual::new(self.v - b.v, self.d - b.d)
    }
}

impl Mul for Dual {
    type Output = Dual;
    fn mul(self, b: Dual) -> Dual {
        Dual::new(self.v * b.v, self.d * b.v + self.v * b.d)
    }
}

impl Div for Dual {
    type Output = Dual;
    fn div(self, b: Dual) -> Dual {
        Dual::new(self.v / b.v, (self.d * b.v - self.v * b.d) / (b.v * b.v))
    }
}

impl Neg for Dual {
    type Output = Dual;
    fn neg(self) -> Dual {
        Dual::new(-self.v, -self.d)
    }
}

impl Scalar for Dual {
    fn constant(c: Dd) -> Self {
        Dual::new(c.to_f64(), 0.0)
    }
    fn sqrt(self) -> Self {
        let r = self.v.sqrt();
        Dual::new(r, self.d / (2.0 * r))
    }
    fn ln(self) -> Self {
        Dual::new(self.v.ln(), self.d / self.v)
    }
    fn pow_rational(self, p: i32, q: u32) -> Self {
        let e = p as f64 / q as f64;
        let v = if q == 1 { self.v.powi(p) } else { self.v.powf(e) };
        let d = if p == 0 { 0.0 } else { e * v / self.v * self.d };
        Dual::new(v, d)
    }
}

/// Values for the atoms.
pub trait Env<T: Scalar> {
    fn atom(&self, a: Atom) -> Result<T>;
}

/// Double-double values at one modulus and ratio x; `ell` may be absent for
/// forms that use only constants and x.
pub struct ValueEnv {
    pub ell: Option<EllipticDd>,
    pub x: f64,
}

impl Env<Dd> for ValueEnv {
    fn atom(&self, a: Atom) -> Result<Dd> {
        let need = || Error::Range("closed form needs a modulus at this point".into());
        Ok(match a {
            Atom::Pi => Dd::PI,
            Atom::X => Dd::new(self.x),
            Atom::K => self.ell.ok_or_else(need)?.big_k,
            Atom::E => self.ell.ok_or_else(need)?.big_e,
            Atom::Kp => self.ell.ok_or_else(need)?.big_kp,
            Atom::Ep => self.ell.ok_or_else(need)?.big_ep,
            Atom::Mk => self.ell.ok_or_else(need)?.k,
            Atom::Mkp => self.ell.ok_or_else(need)?.kp,
        })
    }
}

/// Values and d/dk at one modulus, with x = x(k).
pub struct DualEnv {
    k: Dual,
    kp: Dual,
    big_k: Dual,
    big_e: Dual,
    big_kp: Dual,
    big_ep: Dual,
    x: Dual,
}

impl DualEnv {
    pub fn new(m: Modulus) -> DualEnv {
        let v = EllipticDd::new(&m);
        let c = m.complementary();
        let dkp = -m.k / m.k_prime;
        DualEnv {
            k: Dual::new(m.k, 1.0),
            kp: Dual::new(m.k_prime, dkp),
            big_k: Dual::new(v.big_k.to_f64(), deriv_k(m)),
            big_e: Dual::new(v.big_e.to_f64(), deriv_e(m)),
            big_kp: Dual::new(v.big_kp.to_f64(), deriv_k(c) * dkp),
            big_ep: Dual::new(v.big_ep.to_f64(), deriv_e(c) * dkp),
            x: Dual::new((v.big_kp / v.big_k).to_f64(), deriv_x(m)),
        }
    }
}

impl Env<Dual> for DualEnv {
    fn atom(&self, a: Atom) -> Result<Dual> {
        Ok(match a {
            Atom::Pi => Dual::new(std::f64::consts::PI, 0.0),
            Atom::X => self.x,
            Atom::K => self.big_k,
            Atom::E => self.big_e,
            Atom::Kp => self.big_kp,
            Atom::Ep => self.big_ep,
            Atom::Mk => self.k,
            Atom::Mkp => self.kp,
        })
    }
}

impl Expr {
    pub fn eval<T: Scalar, V: Env<T>>(&self, env: &V) -> Result<T> {
        Ok(match self {
            Expr::Num(c) => T::constant(Dd::new(*c)),
            Expr::Atom(a) => env.atom(*a)?,
            Expr::Gamma(g) => T::constant(Dd::new(gamma_constant(*g).value)),
            Expr::Neg(a) => -a.eval(env)?,
            Expr::Add(a, b) => a.eval(env)? + b.eval(env)?,
            Expr::Sub(a, b) => a.eval(env)? - b.eval(env)?,
            Expr::Mul(a, b) => a.eval(env)? * b.eval(env)?,
            Expr::Div(a, b) => a.eval(env)? / b.eval(env)?,
            Expr::Pow(a, p, q) => a.eval(env)?.pow_rational(*p, *q),
            Expr::Sqrt(a) => a.eval(env)?.sqrt(),
            Expr::Log(a) => a.eval(env)?.ln(),
        })
    }

    /// True if any complete-integral or modulus atom occurs.
    pub fn needs_modulus(&self) -> bool {
        match self {
            Expr::Atom(a) => !matches!(a, Atom::X | Atom::Pi),
            Expr::Num(_) | Expr::Gamma(_) => false,
            Expr::Neg(a) | Expr::Pow(a, _, _) | Expr::Sqrt(a) | Expr::Log(a) => a.needs_modulus(),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                a.needs_modulus() || b.needs_modulus()
            }
        }
    }

    pub fn uses_eighth_gamma(&self) -> bool {
        match self {
            Expr::Gamma(g) => matches!(g, GammaTag::Eighth | GammaTag::ThreeEighths),
            Expr::Num(_) | Expr::Atom(_) => false,
            Expr::Neg(a) | Expr::Pow(a, _, _) | Expr::Sqrt(a) | Expr::Log(a) => a.uses_eighth_gamma(),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                a.uses_eighth_gamma() || b.uses_eighth_gamma()
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(f64),
    Ident(String),
    Op(char),
}

fn lex(src: &str) -> std::result::Result<Vec<Tok>, String> {
    let mut out = Vec::new();
    let cs: Vec<char> = src.chars().collect();
    let mut i = 0;
    while i < cs.len() {
        let c = cs[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() || c == '.' {
            let start = i;
            while i < cs.len() && (cs[i].is_ascii_digit() || cs[i] == '.') {
                i += 1;
            }
            let s: String = cs[start..i].iter().collect();
            out.push(Tok::Num(s.parse().map_err(|_| format!("bad number `{s}`"))?));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < cs.len() && cs[i].is_ascii_alphanumeric() {
                i += 1;
            }
            out.push(Tok::Ident(cs[start..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(format!("unexpected character `{c}`"));
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

type PResult<T> = std::result::Result<T, String>;

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> PResult<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(format!("expected `{c}` at token {}", self.pos))
        }
    }

    fn integer(&mut self) -> PResult<i64> {
        match self.peek() {
            Some(Tok::Num(v)) if v.fract() == 0.0 => {
                let v = *v as i64;
                self.pos += 1;
                Ok(v)
            }
            _ => Err(format!("expected integer at token {}", self.pos)),
        }
    }

    fn expr(&mut self) -> PResult<Expr> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> PResult<Expr> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat('*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat('/') {
                lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> PResult<Expr> {
        if self.eat('-') {
            Ok(Expr::Neg(Box::new(self.unary()?)))
        } else {
            self.power()
        }
    }

    fn exponent(&mut self) -> PResult<(i32, u32)> {
        if self.eat('(') {
            let neg = self.eat('-');
            let p = self.integer()?;
            let q = if self.eat('/') { self.integer()? } else { 1 };
            self.expect(')')?;
            if q <= 0 {
                return Err("exponent denominator must be positive".into());
            }
            let p = if neg { -p } else { p };
            Ok((p as i32, q as u32))
        } else {
            let neg = self.eat('-');
            let p = self.integer()?;
            Ok((if neg { -p } else { p } as i32, 1))
        }
    }

    fn power(&mut self) -> PResult<Expr> {
        let base = self.atom()?;
        if self.eat('^') {
            let (p, q) = self.exponent()?;
            Ok(Expr::Pow(Box::new(base), p, q))
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> PResult<Expr> {
        let tok = self.peek().cloned().ok_or("unexpected end of input")?;
        self.pos += 1;
        match tok {
            Tok::Num(v) => Ok(Expr::Num(v)),
            Tok::Op('(') => {
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Tok::Ident(name) => match name.as_str() {
                "K" => Ok(Expr::Atom(Atom::K)),
                "E" => Ok(Expr::Atom(Atom::E)),
                "Kp" => Ok(Expr::Atom(Atom::Kp)),
                "Ep" => Ok(Expr::Atom(Atom::Ep)),
                "k" => Ok(Expr::Atom(Atom::Mk)),
                "kp" => Ok(Expr::Atom(Atom::Mkp)),
                "x" => Ok(Expr::Atom(Atom::X)),
                "pi" => Ok(Expr::Atom(Atom::Pi)),
                "sqrt" | "log" => {
                    self.expect('(')?;
                    let e = Box::new(self.expr()?);
                    self.expect(')')?;
                    Ok(if name == "sqrt" { Expr::Sqrt(e) } else { Expr::Log(e) })
                }
                "Gamma" => {
                    self.expect('(')?;
                    let p = self.integer()?;
                    self.expect('/')?;
                    let q = self.integer()?;
                    self.expect(')')?;
                    let tag = GammaTag::from_ratio(p as u32, q as u32).map_err(|e| e.to_string())?;
                    Ok(Expr::Gamma(tag))
                }
                other => Err(format!("unknown name `{other}`")),
            },
            Tok::Op(c) => Err(format!("unexpected `{c}`")),
        }
    }
}

pub fn parse(src: &str) -> Result<Expr> {
    let err = |msg: String| Error::Parse {
        expr: src.to_string(),
        msg,
    };
    let toks = lex(src).map_err(err)?;
    let mut p = Parser { toks, pos: 0 };
    let e = p.expr().map_err(err)?;
    if p.pos != p.toks.len() {
        return Err(err(format!("trailing input at token {}", p.pos)));
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn val(src: &str, x: f64) -> f64 {
        let env = ValueEnv { ell: None, x };
        parse(src).unwrap().eval::<Dd, _>(&env).unwrap().to_f64()
    }

    #[test]
    fn precedence_and_powers() {
        assert_eq!(val("1+2*3", 0.0), 7.0);
        assert_eq!(val("-2^2", 0.0), -4.0);
        assert_eq!(val("(1+1)^3/4", 0.0), 2.0);
        assert!((val("2^(-1/3)*2^(1/3)", 0.0) - 1.0).abs() < 1e-16);
        assert!((val("1/6*(1+1/x^2)-1/(pi*x)", 2.0) - (1.25 / 6.0 - 0.5 / std::f64::consts::PI)).abs() < 1e-16);
        assert!((val("sqrt(2)^2", 0.0) - 2.0).abs() < 1e-16);
        assert!((val("log(x)", std::f64::consts::E) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn gamma_atoms() {
        let g = val("Gamma(1/4)^2/(4*sqrt(pi))", 0.0);
        assert!((g - 1.854_074_677_301_372).abs() < 1e-15);
        assert!(parse("Gamma(1/5)").is_err());
    }

    #[test]
    fn parse_errors() {
        for bad in ["1+", "K*(E", "foo", "2^x", "1 $ 2", "sqrt 2"] {
            assert!(parse(bad).is_err(), "{bad}");
        }
        let needs = ValueEnv { ell: None, x: 1.0 };
        assert!(parse("K").unwrap().eval::<Dd, _>(&needs).is_err());
    }

    #[test]
    fn dual_matches_difference() {
        let e = parse("K*(K-E)/pi^2").unwrap();
        let f = |k: f64| {
            let m = Modulus::new(k).unwrap();
            let env = ValueEnv {
                ell: Some(EllipticDd::new(&m)),
                x: 1.0,
            };
            e.eval::<Dd, _>(&env).unwrap().to_f64()
        };
        let h = 1e-6;
        let fd = (f(0.6 + h) - f(0.6 - h)) / (2.0 * h);
        let d = e.eval::<Dual, _>(&DualEnv::new(Modulus::new(0.6).unwrap())).unwrap();
        assert!(((d.d - fd) / fd).abs() < 1e-8);
        let kp = parse("Kp*kp").unwrap();
        let g = |k: f64| {
            let m = Modulus::new(k).unwrap();
            let env = ValueEnv {
                ell: Some(EllipticDd::new(&m)),
                x: 1.0,
            };
            kp.eval::<Dd, _>(&env).unwrap().to_f64()
        };
        let fd = (g(0.6 + h) - g(0.6 - h)) / (2.0 * h);
        let d = kp.eval::<Dual, _>(&DualEnv::new(Modulus::new(0.6).unwrap())).unwrap();
        assert!(((d.d - fd) / fd).abs() < 1e-8);
    }
}
