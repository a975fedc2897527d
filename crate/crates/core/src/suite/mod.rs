//! Verification sweeps: named suites of independent cases, executed on a
//! worker pool (or sequentially) and gathered into a sorted report.

mod cases;

use std::collections::BTreeMap;
use std::fmt;
use std::io::Write;
use std::path::Path;
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use cases::suite_cases;

/// The named suites.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SuiteName {
    Appendix,
    Binom,
    Trinom,
    Connect,
    Virasoro,
    Section3,
    Props,
    Bailey,
    Limits,
    All,
}

impl SuiteName {
    pub const ALL: [SuiteName; 10] = [
        SuiteName::Appendix,
        SuiteName::Binom,
        SuiteName::Trinom,
        SuiteName::Connect,
        SuiteName::Virasoro,
        SuiteName::Section3,
        SuiteName::Props,
        SuiteName::Bailey,
        SuiteName::Limits,
        SuiteName::All,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SuiteName::Appendix => "appendix",
            SuiteName::Binom => "binom",
            SuiteName::Trinom => "trinom",
            SuiteName::Connect => "connect",
            SuiteName::Virasoro => "virasoro",
            SuiteName::Section3 => "section3",
            SuiteName::Props => "props",
            SuiteName::Bailey => "bailey",
            SuiteName::Limits => "limits",
            SuiteName::All => "all",
        }
    }
}

impl fmt::Display for SuiteName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SuiteName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SuiteName::ALL
            .into_iter()
            .find(|n| n.as_str() == s)
            .ok_or_else(|| Error::Precondition(format!("unknown suite {s:?}")))
    }
}

/// Sweep options. `None` keeps each suite's default range.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SuiteOptions {
    /// Replaces every `L` range (and the Bailey `M`).
    pub lmax: Option<i64>,
    /// Replaces every series order, in whole powers of `q`.
    pub order: Option<i64>,
    /// Restricts pair sweeps to `(p, p')`.
    pub pair: Option<(i64, i64)>,
    /// Restricts the `n` sweeps of prop 5 and its limit.
    pub n: Option<i64>,
    /// Worker threads; `None` uses the pool default.
    pub threads: Option<usize>,
    pub seed: u64,
    /// Record elapsed milliseconds (makes reports run-dependent).
    pub timings: bool,
}

impl SuiteOptions {
    pub fn validate(&self) -> Result<()> {
        if let Some(l) = self.lmax {
            if l < 0 {
                return Err(Error::Precondition(format!("--lmax must be >= 0, got {l}")));
            }
        }
        if let Some(o) = self.order {
            if o < 0 {
                return Err(Error::Precondition(format!("--order must be >= 0, got {o}")));
            }
        }
        if let Some((p, pp)) = self.pair {
            if p < 1 || pp <= p || num_integer::gcd(p, pp) != 1 {
                return Err(Error::InvalidPair { p, pp, reason: "need coprime 1 <= p < p'".into() });
            }
        }
        if let Some(n) = self.n {
            if n < 1 {
                return Err(Error::Precondition(format!("--n must be >= 1, got {n}")));
            }
        }
        if self.threads == Some(0) {
            return Err(Error::Precondition("--threads must be >= 1".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

pub type Params = BTreeMap<String, serde_json::Value>;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Case {
    pub id: String,
    pub params: Params,
    pub status: Status,
    pub millis: u64,
    pub detail: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub error: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub cases: Vec<Case>,
    pub summary: Summary,
}

impl SuiteReport {
    /// Sorts the cases by id and recomputes the summary.
    pub fn new(suite: &str, mut cases: Vec<Case>) -> Self {
        cases.sort_by(|a, b| a.id.cmp(&b.id));
        let mut summary = Summary::default();
        for c in &cases {
            match c.status {
                Status::Pass => summary.pass += 1,
                Status::Fail => summary.fail += 1,
                Status::Error => summary.error += 1,
            }
        }
        Self { suite: suite.to_string(), cases, summary }
    }

    pub fn all_pass(&self) -> bool {
        self.summary.fail == 0 && self.summary.error == 0
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serialises");
        s.push('\n');
        s
    }
}

/// Outcome of one check: `Ok(None)` passes, `Ok(Some(detail))` fails.
pub type Verdict = Result<Option<String>>;

/// A case before execution.
pub struct CaseSpec {
    pub id: String,
    pub params: Params,
    pub run: Box<dyn Fn() -> Verdict + Send + Sync>,
}

impl CaseSpec {
    pub fn new(id: impl Into<String>, params: Params, run: impl Fn() -> Verdict + Send + Sync + 'static) -> Self {
        Self { id: id.into(), params, run: Box::new(run) }
    }

    fn execute(&self, timings: bool) -> Case {
        let start = Instant::now();
        let verdict = std::panic::catch_unwind(std::panic::AssertUnwindSafe(|| (self.run)()));
        let millis = if timings { start.elapsed().as_millis() as u64 } else { 0 };
        let (status, detail) = match verdict {
            Ok(Ok(None)) => (Status::Pass, String::new()),
            Ok(Ok(Some(d))) => (Status::Fail, d),
            Ok(Err(e)) => (Status::Error, e.to_string()),
            Err(_) => (Status::Error, "panic during evaluation".to_string()),
        };
        Case { id: self.id.clone(), params: self.params.clone(), status, millis, detail }
    }
}

/// How the case list is executed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Execution {
    /// Worker pool (falls back to sequential without the `parallel` feature).
    Parallel,
    Sequential,
}

pub fn execute_sequential(specs: &[CaseSpec], timings: bool) -> Vec<Case> {
    specs.iter().map(|s| s.execute(timings)).collect()
}

#[cfg(feature = "parallel")]
pub fn execute_parallel(specs: &[CaseSpec], threads: Option<usize>, timings: bool) -> Result<Vec<Case>> {
    use rayon::prelude::*;
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(t) = threads {
        builder = builder.num_threads(t);
    }
    let pool = builder
        .build()
        .map_err(|e| Error::Precondition(format!("thread pool: {e}")))?;
    Ok(pool.install(|| specs.par_iter().map(|s| s.execute(timings)).collect()))
}

#[cfg(not(feature = "parallel"))]
pub fn execute_parallel(specs: &[CaseSpec], _threads: Option<usize>, timings: bool) -> Result<Vec<Case>> {
    Ok(execute_sequential(specs, timings))
}

pub fn run_suite(name: SuiteName, opts: &SuiteOptions) -> Result<SuiteReport> {
    run_suite_with(name, opts, Execution::Parallel)
}

pub fn run_suite_with(name: SuiteName, opts: &SuiteOptions, exec: Execution) -> Result<SuiteReport> {
    opts.validate()?;
    let specs = suite_cases(name, opts)?;
    let cases = match exec {
        Execution::Parallel => execute_parallel(&specs, opts.threads, opts.timings)?,
        Execution::Sequential => execute_sequential(&specs, opts.timings),
    };
    Ok(SuiteReport::new(name.as_str(), cases))
}

/// Report output format.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

/// Text lists every non-passing case and the summary (every case when
/// `verbose`); JSON is the full report.
pub fn render_report(report: &SuiteReport, format: Format, verbose: bool) -> String {
    match format {
        Format::Json => report.to_json(),
        Format::Text => {
            let mut out = String::new();
            for c in &report.cases {
                if verbose || c.status != Status::Pass {
                    let tag = match c.status {
                        Status::Pass => "pass ",
                        Status::Fail => "FAIL ",
                        Status::Error => "ERROR",
                    };
                    out.push_str(&format!("{tag} {}", c.id));
                    if !c.detail.is_empty() {
                        out.push_str(&format!("  {}", c.detail));
                    }
                    out.push('\n');
                }
            }
            let s = report.summary;
            out.push_str(&format!(
                "suite {}: {} cases, {} pass, {} fail, {} error\n",
                report.suite,
                report.cases.len(),
                s.pass,
                s.fail,
                s.error
            ));
            out
        }
    }
}

/// Writes the report to `path`, or to standard output when `path` is `None`.
pub fn emit_report(report: &SuiteReport, format: Format, path: Option<&Path>) -> std::io::Result<()> {
    let body = render_report(report, format, false);
    match path {
        Some(p) => std::fs::write(p, body),
        None => std::io::stdout().lock().write_all(body.as_bytes()),
    }
}
