use std::fmt::Write as _;
use std::str::FromStr;

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::radical::{CandidateMargin, RootPairResult};
use crate::{Error, Result};

/// Variable assignments at one point, in grid order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Bindings(pub Vec<(String, String)>);

impl Serialize for Bindings {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            m.serialize_entry(k, v)?;
        }
        m.end()
    }
}

impl std::fmt::Display for Bindings {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for (i, (k, v)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(";")?;
            }
            write!(f, "{k}={v}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub bindings: Bindings,
    pub lhs: String,
    pub rhs: String,
}

/// One evaluated point, kept only for verbose reports.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Item {
    pub bindings: Bindings,
    pub lhs: String,
    pub rhs: String,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PointError {
    pub bindings: Bindings,
    pub message: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    AllHold,
    Counterexample,
    Error,
    Undecided,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::AllHold => "all_hold",
            Status::Counterexample => "counterexample",
            Status::Error => "error",
            Status::Undecided => "undecided",
        }
    }

    /// Process exit code for a run ending in this status.
    pub fn exit_code(self) -> i32 {
        match self {
            Status::AllHold => 0,
            Status::Counterexample => 1,
            Status::Error => 2,
            Status::Undecided => 3,
        }
    }

    /// The status of a run made of several reports.
    pub fn combine(statuses: impl IntoIterator<Item = Status>) -> Status {
        statuses.into_iter().max_by_key(|s| s.rank()).unwrap_or(Status::AllHold)
    }

    fn rank(self) -> u8 {
        match self {
            Status::AllHold => 0,
            Status::Error => 1,
            Status::Undecided => 2,
            Status::Counterexample => 3,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub identity: String,
    pub params: Bindings,
    pub range: String,
    /// Points with a verdict.
    pub checked_count: u64,
    /// Points without one: outside the hypotheses, or failed to evaluate.
    pub skipped_count: u64,
    /// All counterexamples found, including those past the storage cap.
    pub counterexample_count: u64,
    pub counterexamples: Vec<Counterexample>,
    pub error_count: u64,
    pub errors: Vec<PointError>,
    pub candidates: Option<Vec<RootPairResult>>,
    pub margins: Option<Vec<CandidateMargin>>,
    pub duration_ms: u64,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub items: Option<Vec<Item>>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Format {
    #[default]
    Text,
    Json,
    Csv,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            _ => Err(Error::Usage(format!("unknown format '{s}' (text, json, csv)"))),
        }
    }
}

pub const CSV_HEADER: [&str; 5] = ["identity", "binding", "lhs", "rhs", "holds"];

/// Renders one report. CSV rows are verbose items when present, otherwise
/// stored counterexamples; `csv_header` controls the header line.
pub fn emit_report(r: &CheckReport, format: Format) -> Vec<u8> {
    match format {
        Format::Json => {
            let mut out = serde_json::to_vec(r).expect("report serializes");
            out.push(b'\n');
            out
        }
        Format::Csv => emit_csv(r, true),
        Format::Text => emit_text(r).into_bytes(),
    }
}

/// CSV rows for `r`, with or without the header line.
pub fn emit_csv(r: &CheckReport, header: bool) -> Vec<u8> {
    let mut w = csv::Writer::from_writer(Vec::new());
    if header {
        w.write_record(CSV_HEADER).expect("in-memory write");
    }
    let row = |w: &mut csv::Writer<Vec<u8>>, b: &Bindings, lhs: &str, rhs: &str, holds: bool| {
        let holds = if holds { "true" } else { "false" };
        w.write_record([r.identity.as_str(), &b.to_string(), lhs, rhs, holds])
            .expect("in-memory write");
    };
    match &r.items {
        Some(items) => items.iter().for_each(|i| row(&mut w, &i.bindings, &i.lhs, &i.rhs, i.holds)),
        None => r
            .counterexamples
            .iter()
            .for_each(|c| row(&mut w, &c.bindings, &c.lhs, &c.rhs, false)),
    }
    w.into_inner().expect("in-memory flush")
}

fn emit_text(r: &CheckReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "identity: {}", r.identity);
    if !r.params.0.is_empty() {
        let _ = writeln!(s, "params: {}", r.params.to_string().replace(';', " "));
    }
    let _ = writeln!(s, "range: {}", r.range);
    let _ = writeln!(
        s,
        "checked: {}  skipped: {}  errors: {}  counterexamples: {}",
        r.checked_count, r.skipped_count, r.error_count, r.counterexample_count
    );
    for c in &r.counterexamples {
        let _ = writeln!(s, "  counterexample {}: lhs = {}, rhs = {}", c.bindings.to_string().replace(';', " "), c.lhs, c.rhs);
    }
    if r.counterexample_count > r.counterexamples.len() as u64 {
        let _ = writeln!(s, "  ... {} more not stored", r.counterexample_count - r.counterexamples.len() as u64);
    }
    for e in &r.errors {
        let _ = writeln!(s, "  error {}: {}", e.bindings.to_string().replace(';', " "), e.message);
    }
    if let Some(cands) = &r.candidates {
        let _ = writeln!(s, "candidates:");
        for c in cands {
            let _ = writeln!(
                s,
                "  k={} n={} lhs={} rhs={} {}",
                c.k,
                c.n,
                c.lhs_floor,
                c.rhs_floor,
                if c.holds { "holds" } else { "FAILS" }
            );
        }
    }
    if let Some(margins) = &r.margins {
        let _ = writeln!(s, "margins:");
        for m in margins {
            let _ = writeln!(s, "  k={} n={} gap={} bound={} within_bound={}", m.k, m.n, m.gap, m.bound, m.within_bound);
        }
    }
    if let Some(items) = &r.items {
        let _ = writeln!(s, "items:");
        for i in items {
            let _ = writeln!(s, "  {}: lhs = {}, rhs = {}, holds = {}", i.bindings.to_string().replace(';', " "), i.lhs, i.rhs, i.holds);
        }
    }
    let _ = writeln!(s, "duration_ms: {}", r.duration_ms);
    let _ = writeln!(s, "status: {}", r.status.as_str());
    s
}
