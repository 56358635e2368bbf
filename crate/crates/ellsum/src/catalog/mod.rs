//! The identity catalog and its verifier.
//!
//! Each entry pairs a left side built from series families (and Lambert
//! sums) with a right side that is a closed form, a series, or both. Closed
//! forms are stored as source text in [`expr`] syntax and parsed once.

mod entries;
pub mod expr;

use crate::dd::Dd;
use crate::elliptic::EllipticDd;
use crate::error::{range, Error, Result};
use crate::modulus::{modulus_from_x, ratio_x};
use crate::series::{hyperbolic_sum, lambert_d, lambert_sigma, SeriesSpec};
use expr::{parse, Dual, DualEnv, Expr, ValueEnv};
use serde::{Deserialize, Deserializer, Serialize};
use std::fmt;
use std::sync::OnceLock;

/// Tolerance requested from every series on either side.
pub const SERIES_TOL: f64 = 1e-15;
/// Default relative tolerance of a sweep.
pub const DEFAULT_TOL: f64 = 5e-12;
/// Multiplier applied to the tolerance when a closed form uses Γ(1/8), Γ(3/8).
pub const EIGHTH_GAMMA_FACTOR: f64 = 20.0;
/// Below this |rhs| the comparison is absolute.
pub const NEAR_ZERO: f64 = 1e-6;
/// Ratio band for x-domain entries.
pub const X_BAND: (f64, f64) = (0.05, 20.0);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Argument {
    Direct,
    Reciprocal,
}

/// coeff · π^pi_power · x^x_power · Σ spec at x or 1/x.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SeriesTerm {
    pub num: i64,
    pub den: i64,
    pub pi_power: i32,
    pub x_power: i32,
    pub argument: Argument,
    pub spec: SeriesSpec,
}

impl SeriesTerm {
    pub fn new(spec: SeriesSpec) -> SeriesTerm {
        SeriesTerm {
            num: 1,
            den: 1,
            pi_power: 0,
            x_power: 0,
            argument: Argument::Direct,
            spec,
        }
    }

    pub fn times(mut self, num: i64, den: i64) -> SeriesTerm {
        self.num *= num;
        self.den *= den;
        self
    }

    pub fn pi(mut self, p: i32) -> SeriesTerm {
        self.pi_power = p;
        self
    }

    pub fn x_pow(mut self, p: i32) -> SeriesTerm {
        self.x_power = p;
        self
    }

    pub fn reciprocal(mut self) -> SeriesTerm {
        self.argument = Argument::Reciprocal;
        self
    }

    fn coefficient(&self, x: f64) -> Dd {
        Dd::new(self.num as f64) / self.den as f64 * Dd::PI.powi(self.pi_power) * Dd::new(x).powi(self.x_power)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LambertKind {
    /// Σ σ(n) e^{-2πn(s x)}
    Sigma,
    /// Σ d(n) (e^{-πn(s x)} - e^{-2πn(s x)})
    Divisor,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LambertTerm {
    pub coeff: i64,
    pub kind: LambertKind,
    pub scale: u32,
}

#[derive(Clone, Debug)]
pub struct Closed {
    pub source: &'static str,
    pub expr: Expr,
}

/// A sum of series terms, Lambert terms and at most one closed form.
#[derive(Clone, Debug, Default)]
pub struct Side {
    pub series: Vec<SeriesTerm>,
    pub lambert: Vec<LambertTerm>,
    pub closed: Option<Closed>,
}

impl Side {
    pub fn series(terms: Vec<SeriesTerm>) -> Side {
        Side {
            series: terms,
            ..Side::default()
        }
    }

    pub fn closed(source: &'static str) -> Side {
        Side::default().with_closed(source)
    }

    pub fn lambert(terms: Vec<LambertTerm>) -> Side {
        Side {
            lambert: terms,
            ..Side::default()
        }
    }

    pub fn with_closed(mut self, source: &'static str) -> Side {
        let expr = parse(source).unwrap_or_else(|e| panic!("catalog closed form: {e}"));
        self.closed = Some(Closed { source, expr });
        self
    }

    fn needs_modulus(&self) -> bool {
        self.closed.as_ref().is_some_and(|c| c.expr.needs_modulus())
    }

    fn uses_eighth_gamma(&self) -> bool {
        self.closed.as_ref().is_some_and(|c| c.expr.uses_eighth_gamma())
    }

    /// Value and the summed tail bounds of its series parts.
    pub fn eval(&self, x: f64, env: &ValueEnv) -> Result<(f64, f64)> {
        let mut acc = Dd::ZERO;
        let mut tail = 0.0;
        for t in &self.series {
            let arg = match t.argument {
                Argument::Direct => x,
                Argument::Reciprocal => 1.0 / x,
            };
            let s = hyperbolic_sum(&t.spec, arg, SERIES_TOL)?;
            let c = t.coefficient(x);
            acc += c * s.value;
            tail += c.hi.abs() * s.tail_bound;
        }
        for l in &self.lambert {
            let arg = l.scale as f64 * x;
            let s = match l.kind {
                LambertKind::Sigma => lambert_sigma(arg, SERIES_TOL)?,
                LambertKind::Divisor => lambert_d(arg, SERIES_TOL)?,
            };
            acc += s.value * l.coeff as f64;
            tail += (l.coeff as f64).abs() * s.tail_bound;
        }
        if let Some(c) = &self.closed {
            acc += c.expr.eval::<Dd, _>(env)?;
        }
        Ok((acc.to_f64(), tail))
    }

    /// One string per additive part, for export and reports.
    pub fn parts(&self) -> Vec<String> {
        let mut out = Vec::new();
        for t in &self.series {
            let mut s = t.spec.to_string();
            if t.argument == Argument::Reciprocal {
                s = s.replace(" x", "/x");
            }
            let mut c = String::new();
            if (t.num, t.den) != (1, 1) {
                c = if t.den == 1 {
                    format!("{}", t.num)
                } else {
                    format!("{}/{}", t.num, t.den)
                };
            }
            if t.pi_power != 0 {
                c = format!("{}{}pi^{}", c, if c.is_empty() { "" } else { " " }, t.pi_power);
            }
            if t.x_power != 0 {
                c = format!("{}{}x^{}", c, if c.is_empty() { "" } else { " " }, t.x_power);
            }
            if c == "-1" {
                out.push(format!("-{s}"));
            } else if c.is_empty() {
                out.push(s);
            } else {
                out.push(format!("{c} * {s}"));
            }
        }
        for l in &self.lambert {
            let xs = if l.scale == 1 {
                "x".to_string()
            } else {
                format!("{}x", l.scale)
            };
            let s = match l.kind {
                LambertKind::Sigma => format!("sum_n sigma(n) exp(-2 pi n {xs})"),
                LambertKind::Divisor => format!("sum_n d(n) [exp(-pi n {xs}) - exp(-2 pi n {xs})]"),
            };
            out.push(if l.coeff == 1 { s } else { format!("{} * {s}", l.coeff) });
        }
        if let Some(c) = &self.closed {
            out.push(c.source.to_string());
        }
        out
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.parts().join(" + ").replace("+ -", "- "))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReadingStatus {
    /// Must pass for a sweep to succeed.
    Gating,
    /// A competing reading; recorded, never gating.
    Alternate,
    /// Entered as printed and expected to disagree; recorded, never gating.
    Discrepancy,
}

#[derive(Clone, Debug)]
pub struct Reading {
    pub label: &'static str,
    pub lhs: Side,
    pub rhs: Side,
    pub status: ReadingStatus,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Domain {
    XDomain,
    Fixed { label: &'static str, x: f64 },
}

#[derive(Clone, Debug)]
pub struct Identity {
    pub id: &'static str,
    pub domain: Domain,
    pub readings: Vec<Reading>,
}

impl Identity {
    /// Printed-equation label derived from the id.
    pub fn equation(&self) -> String {
        let rest = &self.id[1..];
        if rest.starts_with('2') || rest == "3.4" {
            format!("({rest})")
        } else {
            self.id.to_string()
        }
    }

    /// `lhs = rhs` of the first reading.
    pub fn anchor(&self) -> String {
        let r = &self.readings[0];
        format!("{} = {}", r.lhs, r.rhs)
    }

    fn gating(&self) -> &Reading {
        self.readings
            .iter()
            .find(|r| r.status == ReadingStatus::Gating)
            .unwrap_or(&self.readings[0])
    }

    pub fn tolerance(&self, tol: f64) -> f64 {
        if self
            .readings
            .iter()
            .any(|r| r.rhs.uses_eighth_gamma() || r.lhs.uses_eighth_gamma())
        {
            tol * EIGHTH_GAMMA_FACTOR
        } else {
            tol
        }
    }

    /// Points this identity is checked at for a requested grid.
    pub fn points(&self, grid: &[f64]) -> Vec<f64> {
        match self.domain {
            Domain::XDomain => grid.to_vec(),
            Domain::Fixed { x, .. } => vec![x],
        }
    }
}

pub fn catalog() -> &'static [Identity] {
    static CATALOG: OnceLock<Vec<Identity>> = OnceLock::new();
    CATALOG.get_or_init(entries::build)
}

pub fn lookup(id: &str) -> Result<&'static Identity> {
    catalog()
        .iter()
        .find(|e| e.id == id)
        .ok_or_else(|| Error::UnknownId(id.to_string()))
}

fn env_at(x: f64, need_modulus: bool) -> Result<ValueEnv> {
    let ell = if need_modulus {
        Some(EllipticDd::new(&modulus_from_x(x)?))
    } else {
        None
    };
    Ok(ValueEnv { ell, x })
}

fn check_point(e: &Identity, x: f64) -> Result<()> {
    match e.domain {
        Domain::XDomain => {
            if !(X_BAND.0..=X_BAND.1).contains(&x) {
                return Err(range(format!("x = {x} outside [{}, {}]", X_BAND.0, X_BAND.1)));
            }
        }
        Domain::Fixed { label, x: at } => {
            if (x - at).abs() > 1e-12 * at {
                return Err(range(format!("{} is fixed at x = {label}, got {x}", e.id)));
            }
        }
    }
    Ok(())
}

/// The gating right side of `id` at `point`.
pub fn eval_rhs(id: &str, point: f64) -> Result<f64> {
    let e = lookup(id)?;
    check_point(e, point)?;
    let r = e.gating();
    let env = env_at(point, r.rhs.needs_modulus())?;
    Ok(r.rhs.eval(point, &env)?.0)
}

// JSON writes non-finite numbers as null; read them back as NaN.
fn nan_null<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<f64, D::Error> {
    Ok(Option::<f64>::deserialize(d)?.unwrap_or(f64::NAN))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationResult {
    pub id: String,
    pub reading: String,
    pub status: ReadingStatus,
    pub anchor: String,
    pub point: f64,
    #[serde(deserialize_with = "nan_null")]
    pub lhs: f64,
    #[serde(deserialize_with = "nan_null")]
    pub rhs: f64,
    #[serde(deserialize_with = "nan_null")]
    pub abs_err: f64,
    #[serde(deserialize_with = "nan_null")]
    pub rel_err: f64,
    #[serde(deserialize_with = "nan_null")]
    pub tail_bound: f64,
    pub tol: f64,
    pub pass: bool,
    pub note: Option<String>,
}

impl VerificationResult {
    /// Failures of non-gating readings do not fail a run.
    pub fn gating(&self) -> bool {
        self.status == ReadingStatus::Gating
    }
}

/// Relative test, or absolute `tol·(1 + |lhs|)` when |rhs| is near zero.
pub fn within(lhs: f64, rhs: f64, tol: f64) -> bool {
    let abs_err = (lhs - rhs).abs();
    if rhs.abs() < NEAR_ZERO {
        abs_err <= tol * (1.0 + lhs.abs())
    } else {
        abs_err <= tol * rhs.abs()
    }
}

fn check_reading(e: &Identity, r: &Reading, x: f64) -> Result<(f64, f64, f64)> {
    check_point(e, x)?;
    let env = env_at(x, r.lhs.needs_modulus() || r.rhs.needs_modulus())?;
    let (lhs, t1) = r.lhs.eval(x, &env)?;
    let (rhs, t2) = r.rhs.eval(x, &env)?;
    Ok((lhs, rhs, t1 + t2))
}

/// Check one (identity, reading, point) cell; errors become failed rows.
pub fn verify_cell(e: &Identity, reading: usize, x: f64, tol: f64) -> VerificationResult {
    let r = &e.readings[reading];
    let tol = e.tolerance(tol);
    let mut out = VerificationResult {
        id: e.id.to_string(),
        reading: r.label.to_string(),
        status: r.status,
        anchor: format!("{} = {}", r.lhs, r.rhs),
        point: x,
        lhs: f64::NAN,
        rhs: f64::NAN,
        abs_err: f64::NAN,
        rel_err: f64::NAN,
        tail_bound: f64::NAN,
        tol,
        pass: false,
        note: None,
    };
    match check_reading(e, r, x) {
        Ok((lhs, rhs, tail)) => {
            out.lhs = lhs;
            out.rhs = rhs;
            out.abs_err = (lhs - rhs).abs();
            out.rel_err = out.abs_err / rhs.abs();
            out.tail_bound = tail;
            out.pass = within(lhs, rhs, tol);
        }
        Err(err) => out.note = Some(err.to_string()),
    }
    out
}

/// Every reading of `id` at every point (fixed-point entries use their own
/// point once). Numeric failures are reported as failed rows.
pub fn verify(id: &str, points: &[f64], tol: f64) -> Result<Vec<VerificationResult>> {
    let e = lookup(id)?;
    let mut out = Vec::new();
    for x in e.points(points) {
        for i in 0..e.readings.len() {
            out.push(verify_cell(e, i, x, tol));
        }
    }
    Ok(out)
}

/// Residuals of the two reflection formulas for Σ 1/sinh² and Σ 1/cosh².
pub fn nasim_residual(x: f64) -> Result<(f64, f64)> {
    if !(0.1..=10.0).contains(&x) {
        return Err(range(format!("x = {x} outside [0.1, 10]")));
    }
    let first = lookup("E2.51")?.gating();
    let second = lookup("E2.52")?.gating();
    let env = env_at(x, false)?;
    let r = |rd: &Reading| -> Result<f64> { Ok(rd.lhs.eval(x, &env)?.0 - rd.rhs.eval(x, &env)?.0) };
    Ok((r(first)?, r(second)?))
}

/// RHS(target) = scale · d RHS(source)/dx, both read from the catalog.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DerivativeLink {
    pub source: &'static str,
    pub target: &'static str,
    pub scale: f64,
}

pub const DERIVATIVE_LINKS: [DerivativeLink; 3] = [
    DerivativeLink {
        source: "E2.1",
        target: "E2.2",
        scale: -2.0 / std::f64::consts::PI,
    },
    DerivativeLink {
        source: "E2.10",
        target: "E2.12",
        scale: -2.0 / std::f64::consts::PI,
    },
    DerivativeLink {
        source: "E2.25",
        target: "T2.39",
        scale: -1.0 / std::f64::consts::PI,
    },
];

fn closed_of(id: &str) -> Result<&'static Expr> {
    let r = lookup(id)?.gating();
    r.rhs
        .closed
        .as_ref()
        .map(|c| &c.expr)
        .ok_or_else(|| range(format!("{id} has no closed right side")))
}

/// Relative gap between RHS(target) and scale · dRHS(source)/dk / (dx/dk) at k.
pub fn derivative_consistency(link: &DerivativeLink, k: f64) -> Result<f64> {
    let m = crate::elliptic::Modulus::new(k)?;
    let d: Dual = closed_of(link.source)?.eval(&DualEnv::new(m))?;
    let predicted = link.scale * d.d / crate::modulus::deriv_x(m);
    let env = ValueEnv {
        ell: Some(EllipticDd::new(&m)),
        x: ratio_x(m),
    };
    let want = closed_of(link.target)?.eval::<Dd, _>(&env)?.to_f64();
    Ok(((predicted - want) / want).abs())
}

#[derive(Clone, Debug, Serialize)]
pub struct ReadingExport {
    pub label: String,
    pub status: ReadingStatus,
    pub lhs_spec: Vec<String>,
    pub rhs_terms: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CatalogEntry {
    pub id: String,
    pub equation: String,
    pub lhs_spec: Vec<String>,
    pub rhs_terms: Vec<String>,
    pub domain: Domain,
    pub anchor: String,
    pub readings: Vec<ReadingExport>,
}

pub fn export() -> Vec<CatalogEntry> {
    catalog()
        .iter()
        .map(|e| {
            let g = e.gating();
            CatalogEntry {
                id: e.id.to_string(),
                equation: e.equation(),
                lhs_spec: g.lhs.parts(),
                rhs_terms: g.rhs.parts(),
                domain: e.domain,
                anchor: e.anchor(),
                readings: e
                    .readings
                    .iter()
                    .map(|r| ReadingExport {
                        label: r.label.to_string(),
                        status: r.status,
                        lhs_spec: r.lhs.parts(),
                        rhs_terms: r.rhs.parts(),
                    })
                    .collect(),
            }
        })
        .collect()
}

pub fn export_json() -> String {
    serde_json::to_string_pretty(&export()).expect("catalog serializes")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_unique_and_enough() {
        let c = catalog();
        assert!(c.len() >= 60);
        let mut ids: Vec<_> = c.iter().map(|e| e.id).collect();
        ids.sort();
        ids.dedup();
        assert_eq!(ids.len(), c.len());
    }

    #[test]
    fn lookup_examples() {
        let e = lookup("E2.36").unwrap();
        assert_eq!(e.readings[0].rhs.parts(), vec!["(1+k^2)/(3*pi^2)*K^2-1/12".to_string()]);
        assert!(matches!(lookup("C1.9").unwrap().domain, Domain::Fixed { x, .. } if x == 2.0));
        assert!(matches!(lookup("E9.99"), Err(Error::UnknownId(_))));
    }

    #[test]
    fn rhs_examples() {
        let exact = 0.25 * (1.0 / 3.0 - 1.0 / std::f64::consts::PI);
        assert!((eval_rhs("C5.64", 1.0).unwrap() - exact).abs() < 1e-16);
        assert!(eval_rhs("C5.64", 2.0).is_err());
        assert!(eval_rhs("E2.1", 30.0).is_err());
    }

    #[test]
    fn near_zero_switches_to_absolute() {
        assert!(within(1e-17, 2e-17, 5e-12));
        assert!(!within(1.0, 1.0 + 1e-10, 5e-12));
    }

    #[test]
    fn failures_become_rows() {
        let r = verify("E2.1", &[0.01], 5e-12).unwrap();
        assert_eq!(r.len(), 1);
        assert!(!r[0].pass && r[0].note.is_some());
    }

    #[test]
    fn export_has_every_entry() {
        let v: serde_json::Value = serde_json::from_str(&export_json()).unwrap();
        assert_eq!(v.as_array().unwrap().len(), catalog().len());
        assert!(v[0]["lhs_spec"][0].as_str().unwrap().starts_with("sum_n"));
    }
}
