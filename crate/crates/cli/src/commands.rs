use clap::ValueEnum;
use cubelval_core::arith::is_cube_free;
use cubelval_core::averaging;
use cubelval_core::descent::{self, bsd_check};
use cubelval_core::hecke;
use cubelval_core::lfunc::{self, LAlg, LValueReport, LfuncError};
use cubelval_core::tate;
use cubelval_core::twist::{self, TwistInvariants};
use rayon::prelude::*;
use serde::Serialize;

use crate::cache::{self, Entry};
use crate::config::RunConfig;
use crate::error::{CliError, EXIT_RECOGNITION, EXIT_VERIFICATION};
use crate::fixtures;
use crate::json::{self, Analysis, Descent, Phi, PhiDocument, Rational, Tamagawa};
use crate::verify;

/// What a command prints and the status it exits with.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Output {
    pub text: String,
    /// Printed to stderr.
    pub summary: Option<String>,
    pub exit: i32,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, summary: None, exit: 0 }
    }
}

fn check_lambda(lambda: u64) -> Result<TwistInvariants, CliError> {
    if lambda < 2 {
        return Err(CliError::Input(format!("lambda must be greater than 1, got {lambda}")));
    }
    Ok(twist::invariants(lambda)?)
}

fn tamagawa(lambda: u64) -> Result<Tamagawa, CliError> {
    let locals = tate::bad_reduction(lambda)?;
    Ok(Tamagawa {
        product: locals.iter().map(|l| l.tamagawa).product(),
        local: locals.iter().map(json::Local::from).collect(),
    })
}

fn cache_params(cfg: &RunConfig, rank: Option<u32>) -> String {
    format!("tol={:e};max_den={};rank={:?}", cfg.tol, cfg.max_den, rank)
}

pub fn analyze(lambda: u64, rank: Option<u32>, cfg: &RunConfig) -> Result<Output, CliError> {
    cfg.validate()?;
    let inv = check_lambda(lambda)?;
    let params = cache_params(cfg, rank);
    if let Some(dir) = &cfg.cache {
        if let Some(hit) = cache::load(dir, lambda, cfg.digits)? {
            if hit.params == params {
                return Ok(Output::ok(hit.report));
            }
        }
    }

    let conductor = tate::conductor(lambda)?;
    let opts = cfg.l_options();
    let table = hecke::coefficients(lambda, lfunc::coefficients_needed(conductor, cfg.digits))
        .map_err(|e| CliError::Compute(e.to_string()))?;
    let omega = lfunc::period(lambda)?;
    let mut doc = Analysis::skeleton(
        &inv,
        twist::root_number(&inv),
        conductor,
        tamagawa(lambda)?,
        omega,
        cfg.digits,
        lfunc::ord3_bound(&inv),
    );
    let report = match lfunc::report_from_table(&inv, conductor, &table, &opts) {
        Ok(r) => r,
        Err(LfuncError::Recognition(_)) => {
            let cv = lfunc::central_value_with(&inv, conductor, &table, cfg.digits)?;
            doc.n_max = Some(cv.n_max);
            doc.l_value = Some(json::dd_string(cv.value));
            doc.lalg_numeric = Some(json::dd_string(cv.value / omega));
            let text = serde_json::to_string_pretty(&doc)?;
            return Ok(Output { text, summary: Some("L-value not recognised".into()), exit: EXIT_RECOGNITION });
        }
        Err(e) => return Err(e.into()),
    };
    doc.n_max = Some(report.n_max);
    doc.l_value = Some(json::dd_string(report.l_numeric));
    doc.lalg_numeric = Some(json::dd_string(report.lalg_numeric));
    doc.lalg = Some(Rational::from_lalg(&report.lalg));
    doc.ord3 = Some(report.ord3.into());
    doc.bound_satisfied = Some(report.bound_satisfied);
    let d = descent::descent_report(lambda, &report.lalg, rank)?;
    doc.descent = Some(Descent::from(&d));
    let text = serde_json::to_string_pretty(&doc)?;

    if let Some(dir) = &cfg.cache {
        cache::store(dir, &Entry { lambda, digits: cfg.digits, params, table, report: text.clone() })?;
    }
    Ok(Output::ok(text))
}

#[derive(Clone, Debug, Serialize)]
struct TableLine {
    lambda: u64,
    e: u32,
    r: u32,
    s: u32,
    key: i64,
    lalg_expected: u64,
    lalg_computed: String,
    pass: bool,
}

/// Recomputes the table of central values.
pub fn table(cfg: &RunConfig) -> Result<Output, CliError> {
    cfg.validate()?;
    let rows: Vec<_> = fixtures::main_table()?
        .into_iter()
        .filter(|row| cfg.long_running || verify::in_default_gate(row.lambda))
        .collect();
    let opts = cfg.l_options();
    let lines: Vec<TableLine> = cfg.pool()?.install(|| {
        rows.par_iter()
            .map(|row| {
                let inv = twist::invariants(row.lambda)?;
                let computed = match lfunc::algebraic_l_value(row.lambda, &opts) {
                    Ok(r) => Some(r.lalg),
                    Err(LfuncError::Recognition(_)) => None,
                    Err(e) => return Err(CliError::from(e)),
                };
                Ok(TableLine {
                    lambda: row.lambda,
                    e: inv.e,
                    r: inv.r,
                    s: inv.s,
                    key: inv.r as i64 - inv.e as i64 + 1,
                    lalg_expected: row.lalg,
                    lalg_computed: computed.as_ref().map_or("unrecognised".into(), |l| l.to_string()),
                    pass: matches!(&computed, Some(l @ LAlg::Rational(_)) if l.to_string() == row.lalg.to_string()),
                })
            })
            .collect::<Result<_, CliError>>()
    })?;
    let failed = lines.iter().filter(|l| !l.pass).count();
    let mut w = csv::Writer::from_writer(Vec::new());
    for l in &lines {
        w.serialize(l)?;
    }
    let text = String::from_utf8(w.into_inner().map_err(|e| CliError::Compute(e.to_string()))?).expect("utf-8");
    Ok(Output {
        text,
        summary: Some(format!("{} rows, {failed} failed", lines.len())),
        exit: if failed == 0 { 0 } else { EXIT_VERIFICATION },
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Check {
    Bounds,
    Rootnumber,
    Tamagawa,
    Bsd,
}

#[derive(Clone, Debug, Serialize)]
pub struct ScanLine {
    pub lambda: u64,
    pub check: Check,
    pub ok: bool,
    pub detail: String,
}

fn needs_l(checks: &[Check]) -> bool {
    checks.iter().any(|c| *c != Check::Tamagawa)
}

fn tamagawa_check(inv: &TwistInvariants) -> Result<(bool, String), CliError> {
    let lambda = inv.lambda;
    let locals = tate::bad_reduction(lambda)?;
    for l in &locals {
        let expected = tate::tamagawa_table(lambda, l.p)?;
        if expected != l.tamagawa {
            return Ok((false, format!("c_{} = {} by Tate, {} by table", l.p, l.tamagawa, expected)));
        }
    }
    if inv.e > 0 {
        let prod: u64 = locals.iter().map(|l| l.tamagawa).product();
        if prod != 3u64.pow(inv.s) {
            return Ok((false, format!("product of c_q is {prod}, expected 3^{}", inv.s)));
        }
        let n: u64 = locals.iter().map(|l| l.p.pow(l.conductor_exponent)).product();
        let delta = inv.rad_d();
        if n != 243 * delta * delta {
            return Ok((false, format!("conductor {n} differs from 243*{delta}^2")));
        }
    }
    Ok((true, String::new()))
}

/// `ε = -1` exactly when the central value vanishes.
pub fn vanishing_matches_root_number(r: &LValueReport) -> bool {
    let small = r.l_numeric.abs().to_f64() < 1e-8 * r.omega_lambda.to_f64();
    small == (r.epsilon == -1)
}

fn scan_one(lambda: u64, checks: &[Check], cfg: &RunConfig) -> Result<Vec<ScanLine>, CliError> {
    let inv = twist::invariants(lambda)?;
    let report = if needs_l(checks) {
        match lfunc::algebraic_l_value(lambda, &cfg.l_options()) {
            Ok(r) => Ok(r),
            Err(LfuncError::Recognition(f)) => Err(f.to_string()),
            Err(e) => return Err(e.into()),
        }
    } else {
        Err(String::new())
    };
    let mut out = Vec::new();
    for &check in checks {
        let (ok, detail) = match (check, &report) {
            (Check::Tamagawa, _) => tamagawa_check(&inv)?,
            (_, Err(f)) => (false, format!("recognition failed: {f}")),
            (Check::Bounds, Ok(r)) => (r.bound_satisfied, format!("ord3 {} bound {}", r.ord3, r.bound)),
            (Check::Rootnumber, Ok(r)) => (
                vanishing_matches_root_number(r),
                format!("epsilon {} |L| {:.3e}", r.epsilon, r.l_numeric.abs().to_f64()),
            ),
            (Check::Bsd, Ok(r)) => match bsd_check(lambda, &r.lalg) {
                Ok((sha, ok)) => (ok, format!("sha {sha}")),
                Err(descent::DescentError::Undefined) => (true, "L vanishes".into()),
                Err(e) => return Err(e.into()),
            },
        };
        out.push(ScanLine { lambda, check, ok, detail });
    }
    Ok(out)
}

pub fn scan_lines(min: u64, max: u64, checks: &[Check], cfg: &RunConfig) -> Result<Vec<ScanLine>, CliError> {
    let lambdas: Vec<u64> = (min.max(2)..=max).filter(|&l| is_cube_free(l)).collect();
    let nested: Vec<Vec<ScanLine>> = cfg.pool()?.install(|| {
        lambdas.par_iter().map(|&l| scan_one(l, checks, cfg)).collect::<Result<_, _>>()
    })?;
    Ok(nested.into_iter().flatten().collect())
}

pub fn scan(min: u64, max: u64, checks: &[Check], cfg: &RunConfig) -> Result<Output, CliError> {
    cfg.validate()?;
    if min > max {
        return Err(CliError::Input(format!("empty range {min}..{max}")));
    }
    if checks.is_empty() {
        return Err(CliError::Input("no checks selected".into()));
    }
    let lines = scan_lines(min, max, checks, cfg)?;
    let bad = lines.iter().filter(|l| !l.ok).count();
    let mut w = csv::Writer::from_writer(Vec::new());
    for l in &lines {
        w.serialize(l)?;
    }
    let text = String::from_utf8(w.into_inner().map_err(|e| CliError::Compute(e.to_string()))?).expect("utf-8");
    Ok(Output {
        text,
        summary: Some(format!("{} checks, {bad} violations", lines.len())),
        exit: if bad == 0 { 0 } else { EXIT_VERIFICATION },
    })
}

pub fn phi(lambda: u64, chi: Option<Vec<u8>>, cfg: &RunConfig) -> Result<Output, CliError> {
    cfg.validate()?;
    check_lambda(lambda)?;
    let opts = cfg.l_options();
    let reports = match chi {
        Some(c) => vec![averaging::phi(lambda, &c, &opts)?],
        None => averaging::phi_all_characters(lambda, &opts)?,
    };
    let certified = reports.iter().all(|r| r.certified);
    let doc = PhiDocument {
        lambda,
        bound: reports[0].bound.to_string(),
        certified,
        characters: reports.iter().map(Phi::from).collect(),
    };
    Ok(Output {
        text: serde_json::to_string_pretty(&doc)?,
        summary: (!certified).then(|| "some terms fall below the bound".into()),
        exit: if certified { 0 } else { EXIT_RECOGNITION },
    })
}

#[derive(Clone, Debug, Serialize)]
struct DescentDocument {
    lambda: u64,
    e: u32,
    r: u32,
    s: u32,
    t: i32,
    d: u32,
    hypothesis_h: bool,
    epsilon: i32,
    lalg: Rational,
    descent: Descent,
}

pub fn descent(lambda: u64, rank: Option<u32>, cfg: &RunConfig) -> Result<Output, CliError> {
    cfg.validate()?;
    let inv = check_lambda(lambda)?;
    let report = lfunc::algebraic_l_value(lambda, &cfg.l_options())?;
    let d = descent::descent_report(lambda, &report.lalg, rank)?;
    let doc = DescentDocument {
        lambda,
        e: inv.e,
        r: inv.r,
        s: inv.s,
        t: inv.t,
        d: inv.d,
        hypothesis_h: inv.hypothesis_h,
        epsilon: report.epsilon,
        lalg: Rational::from_lalg(&report.lalg),
        descent: Descent::from(&d),
    };
    Ok(Output::ok(serde_json::to_string_pretty(&doc)?))
}

pub fn verify(cfg: &RunConfig) -> Result<Output, CliError> {
    cfg.validate()?;
    let results = verify::run_all(cfg)?;
    let failed = results.iter().filter(|r| !r.passed).count();
    let text = if cfg.json {
        serde_json::to_string_pretty(&results)?
    } else {
        results.iter().map(|r| r.line()).collect::<Vec<_>>().join("\n")
    };
    Ok(Output {
        text,
        summary: Some(format!("{} criteria, {failed} failed", results.len())),
        exit: if failed == 0 { 0 } else { EXIT_VERIFICATION },
    })
}
