//! Named verification suites over a corpus, and the report they produce.

pub mod corpus;
mod suites;

pub use corpus::{Corpus, Named};

use crate::grothendieck::Caps;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use std::fmt::Write as _;
use std::str::FromStr;
use std::time::Instant;

pub const REPORT_VERSION: u32 = 1;
/// failures listed per record, the count is always exact
pub const MAX_LISTED: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Informational,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Record {
    pub suite: String,
    /// the statement checked, or "plumbing"
    pub anchor: String,
    pub case: String,
    pub status: Status,
    pub witness: Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_ms: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub version: u32,
    pub records: Vec<Record>,
}

impl Default for Report {
    fn default() -> Self {
        Report { version: REPORT_VERSION, records: Vec::new() }
    }
}

impl Report {
    pub fn new(records: Vec<Record>) -> Report {
        Report { version: REPORT_VERSION, records }
    }

    pub fn passed(&self) -> bool {
        self.records.iter().all(|r| r.status != Status::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Record> {
        self.records.iter().filter(|r| r.status == Status::Fail)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialise")
    }

    pub fn from_json(s: &str) -> serde_json::Result<Report> {
        serde_json::from_str(s)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            let status = match r.status {
                Status::Pass => "pass",
                Status::Fail => "FAIL",
                Status::Informational => "info",
            };
            let _ = write!(out, "[{status}] {}: {} ({})", r.suite, r.case, r.anchor);
            if let Some(ms) = r.wall_ms {
                let _ = write!(out, " {ms} ms");
            }
            out.push('\n');
            if r.status != Status::Pass && !r.witness.is_null() {
                let _ = writeln!(out, "    {}", r.witness);
            }
        }
        let fails = self.failures().count();
        let _ = writeln!(out, "{} records, {} failing", self.records.len(), fails);
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    Taxonomy,
    Straighten,
    Dualize,
    ArTw,
    CrossCheck,
    Mates,
    Mapping,
    Unit,
    Gray,
    Localize,
    Square,
}

impl Suite {
    pub const ALL: [Suite; 11] = [
        Suite::Taxonomy,
        Suite::Straighten,
        Suite::Dualize,
        Suite::ArTw,
        Suite::CrossCheck,
        Suite::Mates,
        Suite::Mapping,
        Suite::Unit,
        Suite::Gray,
        Suite::Localize,
        Suite::Square,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Taxonomy => "taxonomy",
            Suite::Straighten => "straighten",
            Suite::Dualize => "dualize",
            Suite::ArTw => "artw",
            Suite::CrossCheck => "crosscheck",
            Suite::Mates => "mates",
            Suite::Mapping => "mapping",
            Suite::Unit => "unit",
            Suite::Gray => "gray",
            Suite::Localize => "localize",
            Suite::Square => "square",
        }
    }
}

#[derive(Debug, thiserror::Error)]
#[error("unknown suite `{0}`")]
pub struct UnknownSuite(pub String);

impl FromStr for Suite {
    type Err = UnknownSuite;
    fn from_str(s: &str) -> Result<Suite, UnknownSuite> {
        Suite::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| UnknownSuite(s.to_string()))
    }
}

/// `all` or a comma separated list of suite names.
pub fn parse_selection(s: &str) -> Result<Vec<Suite>, UnknownSuite> {
    if s == "all" {
        return Ok(Suite::ALL.to_vec());
    }
    let mut v = s.split(',').map(|x| x.trim().parse()).collect::<Result<Vec<Suite>, _>>()?;
    v.sort();
    v.dedup();
    Ok(v)
}

#[derive(Clone, Copy, Debug)]
pub struct Options {
    pub caps: Caps,
    /// informational negatives become failures
    pub strict: bool,
    /// attach wall times, which makes output run dependent
    pub timings: bool,
}

impl Default for Options {
    fn default() -> Self {
        Options { caps: SUITE_CAPS, strict: false, timings: false }
    }
}

/// Equivalence search caps used by the suites unless overridden.
pub const SUITE_CAPS: Caps = Caps { objects: 40, morphisms: 400 };

pub fn run_suite(suite: Suite, corpus: &Corpus, opts: &Options) -> Vec<Record> {
    let start = Instant::now();
    let mut records = suites::run(suite, corpus, opts);
    if opts.timings {
        let ms = start.elapsed().as_millis() as u64;
        for r in &mut records {
            r.wall_ms = Some(ms);
        }
    }
    records
}

pub fn run(selection: &[Suite], corpus: &Corpus, opts: &Options) -> Report {
    Report::new(selection.iter().flat_map(|&s| run_suite(s, corpus, opts)).collect())
}

/// Checks of one kind across many cases.
#[derive(Clone, Debug)]
struct Tally {
    check: String,
    anchor: &'static str,
    checked: usize,
    failures: Vec<String>,
}

impl Tally {
    fn record(&self, suite: Suite) -> Record {
        let status = if self.failures.is_empty() { Status::Pass } else { Status::Fail };
        Record {
            suite: suite.name().into(),
            anchor: self.anchor.into(),
            case: self.check.clone(),
            status,
            witness: json!({
                "checked": self.checked,
                "failure_count": self.failures.len(),
                "failures": self.failures.iter().take(MAX_LISTED).collect::<Vec<_>>(),
            }),
            wall_ms: None,
        }
    }
}

#[cfg(test)]
mod tests;
