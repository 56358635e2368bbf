//! Sweep configuration, execution and report rendering (text, JSON, CSV).

use crate::analytic::{
    cot_mellin_check, hilbert_equation_residual, pv_kernel_closed_form, pv_kernel_integral, voronoi_residual,
};
use crate::catalog::{catalog, nasim_residual, Identity, VerificationResult, X_BAND};
use crate::elliptic::{ellip_k, Modulus};
use crate::error::{range, Error, Result};
use crate::modulus::{alpha_branches, alpha_residual, singular_value};
use crate::parallel::{self, Mode};
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;

pub const TOL_RANGE: (f64, f64) = (1e-14, 1e-3);

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Csv,
}

impl FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            _ => Err(format!("unknown format `{s}` (text, json, csv)")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Grid {
    Default,
    Dense,
}

impl FromStr for Grid {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "default" => Ok(Grid::Default),
            "dense" => Ok(Grid::Dense),
            _ => Err(format!("unknown grid `{s}` (default, dense)")),
        }
    }
}

impl Grid {
    pub fn label(self) -> &'static str {
        match self {
            Grid::Default => "default",
            Grid::Dense => "dense",
        }
    }

    /// Default: {0.6, 1, √2, √3, 2, 3}. Dense: 25 geometric points on [0.25, 4].
    pub fn points(self) -> Vec<f64> {
        match self {
            Grid::Default => vec![0.6, 1.0, 2f64.sqrt(), 3f64.sqrt(), 2.0, 3.0],
            Grid::Dense => (0..25).map(|i| 0.25 * 16f64.powf(i as f64 / 24.0)).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub id_filter: Option<String>,
    pub points: Vec<f64>,
    pub grid_label: String,
    pub tol: f64,
    pub mode: Mode,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            id_filter: None,
            points: Grid::Default.points(),
            grid_label: Grid::Default.label().to_string(),
            tol: crate::catalog::DEFAULT_TOL,
            mode: Mode::Parallel,
        }
    }
}

impl RunConfig {
    /// Rejects bad tolerances and lists every out-of-band point.
    pub fn validate(&self) -> Result<()> {
        if !(TOL_RANGE.0..=TOL_RANGE.1).contains(&self.tol) {
            return Err(range(format!(
                "tol = {} outside [{:e}, {:e}]",
                self.tol, TOL_RANGE.0, TOL_RANGE.1
            )));
        }
        if self.points.is_empty() {
            return Err(range("no points given"));
        }
        let bad: Vec<String> = self
            .points
            .iter()
            .filter(|x| !(X_BAND.0..=X_BAND.1).contains(*x))
            .map(|x| format!("x = {x} outside [{}, {}]", X_BAND.0, X_BAND.1))
            .collect();
        if !bad.is_empty() {
            return Err(range(bad.join("; ")));
        }
        Ok(())
    }
}

/// Catalog entries whose id matches the glob, in catalog order.
pub fn select(filter: Option<&str>) -> Result<Vec<&'static Identity>> {
    let Some(pat) = filter else {
        return Ok(catalog().iter().collect());
    };
    let p = glob::Pattern::new(pat).map_err(|e| Error::Parse {
        expr: pat.to_string(),
        msg: e.to_string(),
    })?;
    let out: Vec<_> = catalog().iter().filter(|e| p.matches(e.id)).collect();
    if out.is_empty() {
        return Err(Error::UnknownId(pat.to_string()));
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunMeta {
    pub tol: f64,
    pub grid: Vec<f64>,
    pub grid_label: String,
    pub timestamp: u64,
    pub version: String,
}

impl RunMeta {
    pub fn new(tol: f64, grid: Vec<f64>, grid_label: &str) -> RunMeta {
        let timestamp = std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        RunMeta {
            tol,
            grid,
            grid_label: grid_label.to_string(),
            timestamp,
            version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub run_meta: RunMeta,
    pub results: Vec<VerificationResult>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub identities: usize,
    pub rows: usize,
    pub passed: usize,
    pub gating_failures: usize,
    pub recorded_mismatches: usize,
}

impl Report {
    pub fn gating_failures(&self) -> impl Iterator<Item = &VerificationResult> {
        self.results.iter().filter(|r| r.gating() && !r.pass)
    }

    pub fn passed(&self) -> bool {
        self.gating_failures().next().is_none()
    }

    pub fn summary(&self) -> Summary {
        let mut ids: Vec<&str> = self.results.iter().map(|r| r.id.as_str()).collect();
        ids.dedup();
        Summary {
            identities: ids.len(),
            rows: self.results.len(),
            passed: self.results.iter().filter(|r| r.pass).count(),
            gating_failures: self.gating_failures().count(),
            recorded_mismatches: self.results.iter().filter(|r| !r.gating() && !r.pass).count(),
        }
    }
}

pub fn run(config: &RunConfig) -> Result<Report> {
    config.validate()?;
    let ids = select(config.id_filter.as_deref())?;
    let results = parallel::sweep(&ids, &config.points, config.tol, config.mode);
    Ok(Report {
        run_meta: RunMeta::new(config.tol, config.points.clone(), &config.grid_label),
        results,
    })
}

fn fmt_num(v: f64) -> String {
    if v.is_nan() {
        "-".to_string()
    } else {
        format!("{v:.3e}")
    }
}

fn text_row(out: &mut String, r: &VerificationResult) {
    let mark = match (r.pass, r.gating()) {
        (true, _) => "ok",
        (false, true) => "FAIL",
        (false, false) => "differs",
    };
    let _ = writeln!(
        out,
        "{:<7} {:<13} {:>8.5} {:>23.16e} {:>23.16e} {:>10} {:>10} {:>8}",
        r.id,
        r.reading,
        r.point,
        r.lhs,
        r.rhs,
        fmt_num(r.rel_err),
        fmt_num(r.tail_bound),
        mark
    );
    if let (Some(note), false) = (&r.note, r.pass) {
        let _ = writeln!(out, "        note: {note}");
    }
}

fn render_text(report: &Report) -> String {
    let mut out = String::new();
    let m = &report.run_meta;
    let _ = writeln!(
        out,
        "ellsum {}  tol {:e}  grid {} ({} points)",
        m.version,
        m.tol,
        m.grid_label,
        m.grid.len()
    );
    let _ = writeln!(
        out,
        "{:<7} {:<13} {:>8} {:>23} {:>23} {:>10} {:>10} {:>8}",
        "id", "reading", "x", "lhs", "rhs", "rel_err", "tail", "result"
    );
    for r in &report.results {
        text_row(&mut out, r);
    }
    let s = report.summary();
    let _ = writeln!(
        out,
        "\n{} identities, {} rows: {} pass, {} gating failures, {} recorded readings differ",
        s.identities, s.rows, s.passed, s.gating_failures, s.recorded_mismatches
    );
    let recorded: Vec<_> = report.results.iter().filter(|r| !r.gating() && !r.pass).collect();
    if !recorded.is_empty() {
        let _ = writeln!(out, "\nRECORDED (non-gating readings)");
        for r in recorded {
            let _ = writeln!(
                out,
                "  {} [{}:{:?}] x = {}: {}",
                r.id, r.reading, r.status, r.point, r.anchor
            );
        }
    }
    if !report.passed() {
        let _ = writeln!(out, "\nFAILURES");
        for r in report.gating_failures() {
            text_row(&mut out, r);
        }
    }
    out
}

fn csv_string<T: Serialize>(rows: &[T]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).map_err(|e| Error::Io(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Io(e.to_string()))
}

pub fn render(report: &Report, format: Format) -> Result<String> {
    match format {
        Format::Text => Ok(render_text(report)),
        Format::Json => serde_json::to_string_pretty(report).map_err(|e| Error::Io(e.to_string())),
        Format::Csv => csv_string(&report.results),
    }
}

/// Write to `path`, or stdout when `None`.
pub fn write_out(text: &str, path: Option<&Path>) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| Error::Io(format!("{}: {e}", p.display()))),
        None => {
            use std::io::Write;
            let mut o = std::io::stdout().lock();
            o.write_all(text.as_bytes()).map_err(|e| Error::Io(e.to_string()))
        }
    }
}

pub fn emit_report(report: &Report, format: Format, path: Option<&Path>) -> Result<()> {
    if report.results.is_empty() {
        return Err(range("empty report"));
    }
    write_out(&render(report, format)?, path)
}

pub fn read_json(text: &str) -> Result<Report> {
    serde_json::from_str(text).map_err(|e| Error::Io(e.to_string()))
}

pub fn read_csv(text: &str) -> Result<Vec<VerificationResult>> {
    csv::Reader::from_reader(text.as_bytes())
        .deserialize()
        .collect::<std::result::Result<_, _>>()
        .map_err(|e| Error::Io(e.to_string()))
}

/// A scalar check with its limit, used by `analytic` and `singular` output.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckRow {
    pub check: String,
    pub point: f64,
    pub value: f64,
    pub limit: f64,
    pub pass: bool,
    pub note: Option<String>,
}

impl CheckRow {
    fn from_result(check: &str, point: f64, limit: f64, v: Result<f64>) -> CheckRow {
        match v {
            Ok(value) => CheckRow {
                check: check.to_string(),
                point,
                value,
                limit,
                pass: value.abs() <= limit,
                note: None,
            },
            Err(e) => CheckRow {
                check: check.to_string(),
                point,
                value: f64::NAN,
                limit,
                pass: false,
                note: Some(e.to_string()),
            },
        }
    }
}

/// The 20-point rate grid c_i = 0.01·(5e4)^{i/19}.
pub fn pv_grid() -> Vec<f64> {
    (0..20).map(|i| 0.01 * 5e4f64.powf(i as f64 / 19.0)).collect()
}

pub const VORONOI_TERMS: usize = 4000;

/// Analytic checks with their limits, in fixed order.
pub fn analytic_rows(mode: Mode) -> Vec<CheckRow> {
    #[derive(Clone, Copy)]
    enum Job {
        Voronoi(f64),
        Pv(f64),
        Hilbert(f64),
        Cot(f64),
        Nasim(f64),
    }
    let mut jobs = vec![Job::Voronoi(1.0), Job::Voronoi(2.0)];
    jobs.extend(pv_grid().into_iter().map(Job::Pv));
    jobs.extend([Job::Hilbert(1.0), Job::Hilbert(2.0)]);
    jobs.extend([0.25, 0.5, 0.75].map(Job::Cot));
    jobs.extend([1.0 / 3.0, 0.5, 1.0, 2.0, 3.0].map(Job::Nasim));
    let rows: Vec<Vec<CheckRow>> = parallel::map(&jobs, mode, |j| match *j {
        Job::Voronoi(x) => vec![CheckRow::from_result(
            "voronoi_residual",
            x,
            1e-8,
            voronoi_residual(x, VORONOI_TERMS),
        )],
        Job::Pv(c) => {
            let rel = pv_kernel_integral(c).and_then(|q| {
                let e = pv_kernel_closed_form(c)?;
                Ok((q - e) / e)
            });
            vec![CheckRow::from_result("pv_kernel_vs_ei", c, 1e-10, rel)]
        }
        Job::Hilbert(x) => vec![CheckRow::from_result(
            "hilbert_equation_residual",
            x,
            1e-6,
            hilbert_equation_residual(x),
        )],
        Job::Cot(s) => vec![CheckRow::from_result("cot_mellin_check", s, 1e-8, cot_mellin_check(s))],
        Job::Nasim(x) => match nasim_residual(x) {
            Ok((a, b)) => vec![
                CheckRow::from_result("nasim_residual_sinh", x, 1e-12, Ok(a)),
                CheckRow::from_result("nasim_residual_cosh", x, 1e-12, Ok(b)),
            ],
            Err(e) => vec![CheckRow::from_result("nasim_residual", x, 1e-12, Err(e))],
        },
    });
    rows.into_iter().flatten().collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SingularRow {
    pub r: u32,
    pub k_radical: &'static str,
    pub k_r: f64,
    pub big_k_agm: f64,
    pub big_k_gamma: f64,
    pub gamma_form: &'static str,
    pub big_k_rel_err: f64,
    pub alpha_r: f64,
    pub alpha_first: f64,
    pub alpha_second: f64,
    pub alpha_residual: f64,
    pub pass: bool,
}

fn singular_labels(r: u32) -> (&'static str, &'static str) {
    match r {
        1 => ("1/sqrt(2)", "Gamma(1/4)^2/(4 sqrt(pi))"),
        2 => ("sqrt(2)-1", "sqrt(sqrt(2)+1) Gamma(1/8) Gamma(3/8)/(2^(13/4) sqrt(pi))"),
        3 => ("(sqrt(6)-sqrt(2))/4", "3^(1/4) Gamma(1/3)^3/(2^(7/3) pi)"),
        _ => ("3-2 sqrt(2)", "(sqrt(2)+1) Gamma(1/4)^2/(2^(7/2) sqrt(pi))"),
    }
}

pub fn singular_rows(r: Option<u32>) -> Result<Vec<SingularRow>> {
    let rs: Vec<u32> = match r {
        Some(r) => vec![r],
        None => vec![1, 2, 3, 4],
    };
    rs.into_iter()
        .map(|r| {
            let sv = singular_value(r)?;
            let agm = ellip_k(Modulus::new(sv.k_r)?);
            let (a1, a2) = alpha_branches(r)?;
            let res = alpha_residual(r)?;
            let rel = ((agm - sv.big_k_r) / sv.big_k_r).abs();
            let (k_radical, gamma_form) = singular_labels(r);
            Ok(SingularRow {
                r,
                k_radical,
                k_r: sv.k_r,
                big_k_agm: agm,
                big_k_gamma: sv.big_k_r,
                gamma_form,
                big_k_rel_err: rel,
                alpha_r: sv.alpha_r,
                alpha_first: a1,
                alpha_second: a2,
                alpha_residual: res,
                pass: rel <= 5e-13 && res <= 1e-12,
            })
        })
        .collect()
}

#[derive(Serialize)]
struct TableRow<'a> {
    id: &'a str,
    equation: &'a str,
    domain: String,
    anchor: &'a str,
}

/// The catalog (optionally filtered by glob) as JSON, CSV or aligned text.
pub fn render_table(filter: Option<&str>, format: Format) -> Result<String> {
    let keep: Vec<&str> = select(filter)?.iter().map(|e| e.id).collect();
    let entries: Vec<_> = crate::catalog::export()
        .into_iter()
        .filter(|e| keep.contains(&e.id.as_str()))
        .collect();
    if format == Format::Json {
        return serde_json::to_string_pretty(&entries).map_err(|e| Error::Io(e.to_string()));
    }
    let rows: Vec<TableRow> = entries
        .iter()
        .map(|e| TableRow {
            id: &e.id,
            equation: &e.equation,
            domain: match e.domain {
                crate::catalog::Domain::XDomain => "x".to_string(),
                crate::catalog::Domain::Fixed { label, .. } => format!("x = {label}"),
            },
            anchor: &e.anchor,
        })
        .collect();
    if format == Format::Csv {
        return csv_string(&rows);
    }
    let mut out = String::new();
    for r in rows {
        let _ = writeln!(out, "{:<7} {:<8} {:<12} {}", r.id, r.equation, r.domain, r.anchor);
    }
    Ok(out)
}

pub fn render_checks(rows: &[CheckRow], format: Format) -> Result<String> {
    match format {
        Format::Json => serde_json::to_string_pretty(rows).map_err(|e| Error::Io(e.to_string())),
        Format::Csv => csv_string(rows),
        Format::Text => {
            let mut out = String::new();
            let _ = writeln!(
                out,
                "{:<26} {:>12} {:>12} {:>9} {:>7}",
                "check", "point", "value", "limit", "result"
            );
            for r in rows {
                let _ = writeln!(
                    out,
                    "{:<26} {:>12.6} {:>12} {:>9.0e} {:>7}",
                    r.check,
                    r.point,
                    fmt_num(r.value),
                    r.limit,
                    if r.pass { "ok" } else { "FAIL" }
                );
                if let Some(n) = &r.note {
                    let _ = writeln!(out, "    note: {n}");
                }
            }
            let failed: Vec<_> = rows.iter().filter(|r| !r.pass).collect();
            if !failed.is_empty() {
                let _ = writeln!(out, "\nFAILURES");
                for r in failed {
                    let _ = writeln!(out, "{} at {}: {}", r.check, r.point, fmt_num(r.value));
                }
            }
            Ok(out)
        }
    }
}

pub fn render_singular(rows: &[SingularRow], format: Format) -> Result<String> {
    match format {
        Format::Json => serde_json::to_string_pretty(rows).map_err(|e| Error::Io(e.to_string())),
        Format::Csv => csv_string(rows),
        Format::Text => {
            let mut out = String::new();
            for s in rows {
                let _ = writeln!(out, "r = {}", s.r);
                let _ = writeln!(out, "  k_r        = {} = {:.17}", s.k_radical, s.k_r);
                let _ = writeln!(out, "  K(k_r) agm = {:.17}", s.big_k_agm);
                let _ = writeln!(
                    out,
                    "  K(k_r)     = {} = {:.17}  (rel {:.1e})",
                    s.gamma_form, s.big_k_gamma, s.big_k_rel_err
                );
                let _ = writeln!(
                    out,
                    "  alpha(r)   = {:.17}  branches {:.17} {:.17}  (resid {:.1e})  {}",
                    s.alpha_r,
                    s.alpha_first,
                    s.alpha_second,
                    s.alpha_residual,
                    if s.pass { "ok" } else { "FAIL" }
                );
            }
            Ok(out)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> RunConfig {
        RunConfig {
            id_filter: Some("E2.1*".into()),
            points: vec![1.0, 2.0],
            ..RunConfig::default()
        }
    }

    #[test]
    fn glob_selects_in_order() {
        let ids: Vec<_> = select(Some("E2.1*")).unwrap().iter().map(|e| e.id).collect();
        assert_eq!(ids, ["E2.1", "E2.10", "E2.11", "E2.12", "E2.13"]);
        assert!(select(Some("Z*")).is_err());
    }

    #[test]
    fn config_rejects_bad_input() {
        let mut c = small();
        c.tol = 1e-16;
        assert!(c.validate().is_err());
        let c = RunConfig {
            points: vec![1.0, 40.0, 0.001],
            ..small()
        };
        let msg = c.validate().unwrap_err().to_string();
        assert!(msg.contains("40") && msg.contains("0.001"));
    }

    #[test]
    fn json_round_trip_keeps_counts() {
        let rep = run(&small()).unwrap();
        assert!(rep.passed());
        let back = read_json(&render(&rep, Format::Json).unwrap()).unwrap();
        assert_eq!(back.summary(), rep.summary());
        let rows = read_csv(&render(&rep, Format::Csv).unwrap()).unwrap();
        assert_eq!(rows.len(), rep.results.len());
    }

    #[test]
    fn failure_banner_comes_last() {
        let mut rep = run(&small()).unwrap();
        rep.results[1].pass = false;
        let text = render(&rep, Format::Text).unwrap();
        let banner = text.rfind("FAILURES").unwrap();
        assert!(text[banner..].contains(&rep.results[1].id));
        assert!(!rep.passed());
    }

    #[test]
    fn dense_grid_in_band() {
        let g = Grid::Dense.points();
        assert!((g[0] - 0.25).abs() < 1e-15 && (g[24] - 4.0).abs() < 1e-12);
    }
}
