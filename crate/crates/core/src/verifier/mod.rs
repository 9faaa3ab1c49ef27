//! Named checks over the whole library, selected by glob and run on a
//! worker pool. Results are ordered by id, so reports are reproducible.

mod checks;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::OnceLock;
use std::time::Instant;

use serde::Serialize;
use thiserror::Error;

use crate::modular_forms::{eta_power, QSeries};
use crate::par::{self, Execution};

pub use checks::registry;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Config {
    pub pmax: u64,
    /// Largest `p` for which `#S(F_{p^2})` is counted.
    pub p2max: u64,
    pub series_order: usize,
    pub isometry_bound: i64,
    pub hesse_samples: usize,
    pub exec: Execution,
    pub timings: bool,
}

impl Config {
    pub fn with_pmax(pmax: u64) -> Self {
        Self {
            pmax,
            p2max: 43,
            series_order: default_series_order(pmax),
            isometry_bound: 10,
            hesse_samples: 100,
            exec: Execution::default(),
            timings: false,
        }
    }
}

impl Default for Config {
    fn default() -> Self {
        Self::with_pmax(199)
    }
}

pub fn default_series_order(pmax: u64) -> usize {
    4 * pmax as usize + 16
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    ConditionalPass,
    Skipped,
    Fail,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::ConditionalPass => "conditional-pass",
            Status::Skipped => "skipped",
            Status::Fail => "fail",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub check_id: String,
    pub claim_ref: String,
    pub inputs: BTreeMap<String, String>,
    pub expected: String,
    pub computed: String,
    pub status: Status,
    /// Conjectures a conditional pass rests on; empty otherwise.
    pub tags: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_us: Option<u64>,
}

/// What a check body reports before a status is assigned.
#[derive(Clone, Debug, Default)]
pub struct Outcome {
    pub inputs: Vec<(String, String)>,
    pub expected: String,
    pub computed: String,
    pub holds: bool,
    pub assumptions: Vec<&'static str>,
    pub skipped: bool,
}

impl Outcome {
    pub fn new(expected: impl fmt::Display, computed: impl fmt::Display, holds: bool) -> Self {
        Self {
            expected: expected.to_string(),
            computed: computed.to_string(),
            holds,
            ..Self::default()
        }
    }

    /// Expected and computed agree as rendered strings.
    pub fn compare(expected: impl fmt::Display, computed: impl fmt::Display) -> Self {
        let (e, c) = (expected.to_string(), computed.to_string());
        let holds = e == c;
        Self::new(e, c, holds)
    }

    pub fn error(e: impl fmt::Display) -> Self {
        Self::new("no error", format!("error: {e}"), false)
    }

    pub fn skip(reason: impl fmt::Display) -> Self {
        Self {
            expected: "-".into(),
            computed: reason.to_string(),
            skipped: true,
            ..Self::default()
        }
    }

    pub fn input(mut self, k: &str, v: impl fmt::Display) -> Self {
        self.inputs.push((k.into(), v.to_string()));
        self
    }

    pub fn assuming(mut self, tag: &'static str) -> Self {
        self.assumptions.push(tag);
        self
    }

    fn status(&self) -> Status {
        if self.skipped {
            Status::Skipped
        } else if !self.holds {
            Status::Fail
        } else if self.assumptions.is_empty() {
            Status::Pass
        } else {
            Status::ConditionalPass
        }
    }
}

type Body = Box<dyn Fn(&Context) -> Outcome + Send + Sync>;

pub struct Check {
    pub id: String,
    pub claim: String,
    body: Body,
}

impl Check {
    pub fn new(
        id: impl Into<String>,
        claim: impl Into<String>,
        body: impl Fn(&Context) -> Outcome + Send + Sync + 'static,
    ) -> Self {
        Self {
            id: id.into(),
            claim: claim.into(),
            body: Box::new(body),
        }
    }
}

/// Configuration plus expansions shared by several checks.
pub struct Context {
    pub config: Config,
    weight2: OnceLock<Result<QSeries, String>>,
    weight3: OnceLock<Result<QSeries, String>>,
}

impl Context {
    pub fn new(config: Config) -> Self {
        Self {
            config,
            weight2: OnceLock::new(),
            weight3: OnceLock::new(),
        }
    }

    /// `eta(6 tau)^4`.
    pub fn weight2(&self) -> Result<&QSeries, String> {
        let n = self.config.series_order;
        self.weight2
            .get_or_init(|| eta_power(6, 4, n).map_err(|e| e.to_string()))
            .as_ref()
            .map_err(Clone::clone)
    }

    /// `eta(4 tau)^6`.
    pub fn weight3(&self) -> Result<&QSeries, String> {
        let n = self.config.series_order;
        self.weight3
            .get_or_init(|| eta_power(4, 6, n).map_err(|e| e.to_string()))
            .as_ref()
            .map_err(Clone::clone)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RunError {
    #[error("invalid pattern {0:?}")]
    BadPattern(String),
    #[error("pattern {0:?} matches no check")]
    NoMatch(String),
    #[error("check {check_id} panicked: {message}")]
    Panic { check_id: String, message: String },
}

/// Compare ids with digit runs read as numbers, so `p7 < p11`.
pub fn natural_cmp(a: &str, b: &str) -> Ordering {
    fn chunks(s: &str) -> Vec<(bool, &str)> {
        let mut out = Vec::new();
        let mut start = 0;
        let bytes = s.as_bytes();
        for i in 1..=bytes.len() {
            if i == bytes.len() || bytes[i].is_ascii_digit() != bytes[start].is_ascii_digit() {
                out.push((bytes[start].is_ascii_digit(), &s[start..i]));
                start = i;
            }
        }
        out
    }
    let (ca, cb) = (chunks(a), chunks(b));
    for (x, y) in ca.iter().zip(&cb) {
        let ord = match (x, y) {
            ((true, u), (true, v)) => u.len().cmp(&v.len()).then_with(|| u.cmp(v)),
            ((_, u), (_, v)) => u.cmp(v),
        };
        if ord != Ordering::Equal {
            return ord;
        }
    }
    ca.len().cmp(&cb.len())
}

/// Checks whose id matches any pattern; all checks when `patterns` is
/// empty. Every pattern must match something.
pub fn select<'a>(checks: &'a [Check], patterns: &[String]) -> Result<Vec<&'a Check>, RunError> {
    let compiled = patterns
        .iter()
        .map(|p| glob::Pattern::new(p).map_err(|_| RunError::BadPattern(p.clone())))
        .collect::<Result<Vec<_>, _>>()?;
    for (p, raw) in compiled.iter().zip(patterns) {
        if !checks.iter().any(|c| p.matches(&c.id)) {
            return Err(RunError::NoMatch(raw.clone()));
        }
    }
    let mut out: Vec<&Check> = checks
        .iter()
        .filter(|c| compiled.is_empty() || compiled.iter().any(|p| p.matches(&c.id)))
        .collect();
    out.sort_by(|a, b| natural_cmp(&a.id, &b.id));
    Ok(out)
}

fn panic_message(e: Box<dyn std::any::Any + Send>) -> String {
    e.downcast_ref::<&str>()
        .map(|s| s.to_string())
        .or_else(|| e.downcast_ref::<String>().cloned())
        .unwrap_or_else(|| "non-string panic payload".into())
}

fn execute(check: &Check, ctx: &Context) -> Result<CheckResult, RunError> {
    let start = Instant::now();
    let outcome = catch_unwind(AssertUnwindSafe(|| (check.body)(ctx))).map_err(|e| RunError::Panic {
        check_id: check.id.clone(),
        message: panic_message(e),
    })?;
    let status = outcome.status();
    let tags = if status == Status::ConditionalPass {
        outcome.assumptions.iter().map(|t| t.to_string()).collect()
    } else {
        vec![]
    };
    Ok(CheckResult {
        check_id: check.id.clone(),
        claim_ref: check.claim.clone(),
        inputs: outcome.inputs.into_iter().collect(),
        expected: outcome.expected,
        computed: outcome.computed,
        status,
        tags,
        wall_time_us: ctx.config.timings.then(|| start.elapsed().as_micros() as u64),
    })
}

/// Run the selected checks concurrently; results come back in id order.
pub fn run(patterns: &[String], config: Config) -> Result<Vec<CheckResult>, RunError> {
    let checks = registry(&config);
    let chosen = select(&checks, patterns)?;
    let exec = config.exec;
    let ctx = Context::new(config);
    par::map_vec(&chosen, exec, |c| execute(c, &ctx))
        .into_iter()
        .collect()
}

pub fn any_failed(results: &[CheckResult]) -> bool {
    results.iter().any(|r| r.status == Status::Fail)
}

/// One JSON object per line.
pub fn to_json_lines(results: &[CheckResult]) -> String {
    results
        .iter()
        .map(|r| serde_json::to_string(r).expect("plain data serializes") + "\n")
        .collect()
}

pub fn to_text(results: &[CheckResult]) -> String {
    let mut out = String::new();
    for r in results {
        out.push_str(&format!("{:<16} {}\n", r.status.to_string(), r.check_id));
        out.push_str(&format!("    claim:    {}\n", r.claim_ref));
        if !r.inputs.is_empty() {
            let inputs: Vec<String> = r.inputs.iter().map(|(k, v)| format!("{k}={v}")).collect();
            out.push_str(&format!("    inputs:   {}\n", inputs.join(", ")));
        }
        out.push_str(&format!("    expected: {}\n", r.expected));
        out.push_str(&format!("    computed: {}\n", r.computed));
        if !r.tags.is_empty() {
            out.push_str(&format!("    assumes:  {}\n", r.tags.join(", ")));
        }
        if let Some(t) = r.wall_time_us {
            out.push_str(&format!("    time:     {t} us\n"));
        }
    }
    let count = |s: Status| results.iter().filter(|r| r.status == s).count();
    out.push_str(&format!(
        "{} checks: {} pass, {} conditional-pass, {} skipped, {} fail\n",
        results.len(),
        count(Status::Pass),
        count(Status::ConditionalPass),
        count(Status::Skipped),
        count(Status::Fail),
    ));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> Config {
        Config {
            p2max: 11,
            hesse_samples: 80,
            ..Config::with_pmax(31)
        }
    }

    #[test]
    fn natural_order() {
        let mut ids = vec!["S5.lefschetz.p13", "S5.lefschetz.p5", "S5.lefschetz.p101", "LAT.x"];
        ids.sort_by(|a, b| natural_cmp(a, b));
        assert_eq!(ids, ["LAT.x", "S5.lefschetz.p5", "S5.lefschetz.p13", "S5.lefschetz.p101"]);
    }

    #[test]
    fn ids_are_unique_and_claims_present() {
        let checks = registry(&Config::default());
        let mut ids: Vec<&str> = checks.iter().map(|c| c.id.as_str()).collect();
        let n = ids.len();
        ids.sort();
        ids.dedup();
        assert_eq!(ids.len(), n);
        assert!(checks.iter().all(|c| !c.claim.is_empty()));
        for id in ["S5.lefschetz.p13", "S5.lefschetz.p5", "LAT.prop10.p7", "ID.base-change"] {
            assert!(ids.contains(&id), "{id}");
        }
    }

    #[test]
    fn selection_errors() {
        let checks = registry(&small());
        assert_eq!(
            select(&checks, &["NOPE.*".into()]).err(),
            Some(RunError::NoMatch("NOPE.*".into()))
        );
        assert!(matches!(select(&checks, &["[".into()]), Err(RunError::BadPattern(_))));
        assert_eq!(select(&checks, &[]).unwrap().len(), checks.len());
    }

    #[test]
    fn status_rules() {
        assert_eq!(Outcome::compare(1, 1).status(), Status::Pass);
        assert_eq!(Outcome::compare(1, 2).status(), Status::Fail);
        assert_eq!(Outcome::compare(1, 1).assuming("artin-tate").status(), Status::ConditionalPass);
        assert_eq!(Outcome::compare(1, 2).assuming("artin-tate").status(), Status::Fail);
        assert_eq!(Outcome::skip("x").status(), Status::Skipped);
    }

    #[test]
    fn panics_are_reported() {
        let c = Check::new("T.panic", "none", |_| panic!("boom"));
        let ctx = Context::new(small());
        assert_eq!(
            execute(&c, &ctx),
            Err(RunError::Panic { check_id: "T.panic".into(), message: "boom".into() })
        );
    }

    #[test]
    fn lattice_checks_pass_and_are_deterministic() {
        let cfg = small();
        let a = run(&["LAT.*".into()], cfg.clone()).unwrap();
        let b = run(&["LAT.*".into()], Config { exec: Execution::Sequential, ..cfg }).unwrap();
        assert_eq!(to_json_lines(&a), to_json_lines(&b));
        assert!(!any_failed(&a), "{}", to_text(&a));
        let p7 = a.iter().find(|r| r.check_id == "LAT.prop10.p7").unwrap();
        assert_eq!(p7.status, Status::ConditionalPass);
        assert_eq!(p7.tags, ["artin-tate"]);
        assert!(p7.expected.contains("2, 6, 14, 42"));
        assert!(a.iter().all(|r| r.wall_time_us.is_none()));
    }
}
