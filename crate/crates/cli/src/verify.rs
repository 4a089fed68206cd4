//! Configuration, suite dispatch and report rendering for `qcartan verify`.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::Instant;

use num_rational::BigRational;
use serde::Serialize;
use thiserror::Error;

use qcartan_core::dual::Normalization;
use qcartan_core::ncalg::{Algebra, AlgebraError};
use qcartan_core::qscalar::{parse_rational, ScalarError};
use qcartan_core::report::{CheckRow, Report};
use qcartan_core::suites::{Engine, Options, SuiteError, SUITES};

use crate::checks;
use crate::dsl::ParseError;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read instance `{path}`: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("invalid instance `{path}`: {source}")]
    Instance { path: PathBuf, source: AlgebraError },
    #[error("invalid value for --q: {0}")]
    Q(ScalarError),
    #[error("unknown suite `{0}`; expected one of {1} or `all`")]
    UnknownSuite(String, String),
    #[error(transparent)]
    Suite(SuiteError),
    #[error("built-in expression does not parse: {0}")]
    Expression(ParseError),
}

#[derive(Debug, Error)]
pub enum RunError {
    #[error(transparent)]
    Suite(#[from] SuiteError),
    #[error(transparent)]
    Expression(#[from] ParseError),
}

/// Every suite name accepted by `--suite`, in run order.
pub fn suite_names() -> Vec<&'static str> {
    let mut names = SUITES.to_vec();
    names.push(checks::SUITE);
    names
}

pub fn resolve(name: &str) -> Result<Vec<&'static str>, ConfigError> {
    let all = suite_names();
    if name == "all" {
        return Ok(all);
    }
    all.iter()
        .find(|s| **s == name)
        .map(|s| vec![*s])
        .ok_or_else(|| ConfigError::UnknownSuite(name.to_string(), all.join(", ")))
}

pub fn parse_q(s: &str) -> Result<BigRational, ConfigError> {
    parse_rational(s).map_err(ConfigError::Q)
}

pub fn load_instance(path: &Path) -> Result<Algebra, ConfigError> {
    let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    Algebra::from_json(&text).map_err(|source| ConfigError::Instance {
        path: path.to_path_buf(),
        source,
    })
}

/// A validated run: nothing here has evaluated a check yet.
pub struct Plan {
    pub engine: Engine,
    pub suites: Vec<&'static str>,
}

impl Plan {
    pub fn new(alg: Algebra, suite: &str, opts: Options) -> Result<Plan, ConfigError> {
        let suites = resolve(suite)?;
        let engine = Engine::new(Arc::new(alg), opts).map_err(ConfigError::Suite)?;
        if suites.iter().any(|s| *s != "hopf-axioms") {
            engine.cartan().map_err(ConfigError::Suite)?;
        }
        if suites.contains(&checks::SUITE) {
            checks::parsed().map_err(ConfigError::Expression)?;
        }
        Ok(Plan { engine, suites })
    }

    pub fn run(&self) -> Result<Run, RunError> {
        let mut out = Run::default();
        for s in &self.suites {
            let start = Instant::now();
            let rep = if *s == checks::SUITE {
                let q0 = self.engine.options().q.as_ref();
                checks::run(self.engine.cartan()?, q0)?
            } else {
                self.engine.run(s)?
            };
            out.timings.push(SuiteTiming {
                name: s,
                checks: rep.len(),
                failed: rep.failures().count(),
                elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
            });
            out.report.extend(rep);
        }
        Ok(out)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteTiming {
    pub name: &'static str,
    pub checks: usize,
    pub failed: usize,
    pub elapsed_ms: f64,
}

#[derive(Debug, Default)]
pub struct Run {
    pub report: Report,
    pub timings: Vec<SuiteTiming>,
}

pub fn normalization_name(n: Normalization) -> &'static str {
    match n {
        Normalization::Lambda => "lambda",
        Normalization::Raw => "raw",
    }
}

#[derive(Debug, Serialize)]
pub struct JsonReport<'a> {
    pub instance: String,
    pub suite: &'a str,
    pub q: Option<String>,
    pub normalization: &'static str,
    pub degree_cap: usize,
    pub passed: bool,
    pub total: usize,
    pub failed: usize,
    pub suites: &'a [SuiteTiming],
    pub rows: &'a [CheckRow],
    pub skipped: &'a [String],
}

pub struct Meta<'a> {
    pub instance: &'a Path,
    pub suite: &'a str,
    pub opts: &'a Options,
}

pub fn render_json(run: &Run, meta: &Meta<'_>) -> String {
    let rep = &run.report;
    let doc = JsonReport {
        instance: meta.instance.display().to_string(),
        suite: meta.suite,
        q: meta.opts.q.as_ref().map(|q| q.to_string()),
        normalization: normalization_name(meta.opts.normalization),
        degree_cap: meta.opts.degree_cap,
        passed: rep.all_passed(),
        total: rep.len(),
        failed: rep.failures().count(),
        suites: &run.timings,
        rows: &rep.rows,
        skipped: &rep.skipped,
    };
    serde_json::to_string_pretty(&doc).expect("report serializes")
}

pub fn render_text(run: &Run, meta: &Meta<'_>) -> String {
    let rep = &run.report;
    let mut out = String::new();
    let q = meta
        .opts
        .q
        .as_ref()
        .map_or("symbolic".to_string(), |q| format!("q = {q}"));
    let _ = writeln!(
        out,
        "instance {} | suite {} | {} | normalization {} | degree cap {}",
        meta.instance.display(),
        meta.suite,
        q,
        normalization_name(meta.opts.normalization),
        meta.opts.degree_cap
    );
    for row in &rep.rows {
        let verdict = if row.equal { "PASS" } else { "FAIL" };
        match &row.witness {
            Some(w) => {
                let _ = writeln!(out, "{verdict} {} [{w}]", row.check);
            }
            None => {
                let _ = writeln!(out, "{verdict} {}", row.check);
            }
        }
        if !row.equal {
            let _ = writeln!(out, "    lhs: {}", row.lhs);
            let _ = writeln!(out, "    rhs: {}", row.rhs);
        }
    }
    for s in &rep.skipped {
        let _ = writeln!(out, "SKIP {s}");
    }
    for t in &run.timings {
        let _ = writeln!(
            out,
            "suite {}: {} checks, {} failed, {:.1} ms",
            t.name, t.checks, t.failed, t.elapsed_ms
        );
    }
    let failed = rep.failures().count();
    let _ = writeln!(
        out,
        "{} checks, {} passed, {} failed, {} skipped",
        rep.len(),
        rep.len() - failed,
        failed,
        rep.skipped.len()
    );
    out
}

pub fn exit_code(run: &Run) -> i32 {
    if run.report.all_passed() {
        EXIT_PASS
    } else {
        EXIT_FAIL
    }
}
