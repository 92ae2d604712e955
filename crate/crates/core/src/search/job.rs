use std::path::PathBuf;

use super::builtin::run_builtin;
use super::report::{emit_csv, emit_report, CheckReport, Format, Status};
use super::sweep::{Coord, SweepOptions};
use crate::dsl::{check_statement, parse_statements};
use crate::exact::Precision;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Target {
    Builtin(String),
    /// A statement file: one statement per line, `#` comments.
    DslFile(PathBuf),
    /// Statement text with the name used in report identities.
    DslSource { name: String, source: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JobSpec {
    pub target: Target,
    pub params: Vec<(String, String)>,
    pub ranges: Vec<Coord>,
    pub worker_count: usize,
    pub precision_cap_bits: u32,
    pub format: Format,
    pub counterexample_cap: usize,
    pub verbose: bool,
    pub timing: bool,
}

pub const MIN_PRECISION_CAP_BITS: u32 = 64;

impl JobSpec {
    pub fn new(target: Target) -> Self {
        Self {
            target,
            params: Vec::new(),
            ranges: Vec::new(),
            worker_count: 1,
            precision_cap_bits: Precision::DEFAULT_CAP_BITS,
            format: Format::Text,
            counterexample_cap: 100,
            verbose: false,
            timing: true,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.worker_count < 1 {
            return Err(Error::Usage("worker count must be at least 1".into()));
        }
        if self.precision_cap_bits < MIN_PRECISION_CAP_BITS {
            return Err(Error::Usage(format!(
                "precision cap must be at least {MIN_PRECISION_CAP_BITS} bits, got {}",
                self.precision_cap_bits
            )));
        }
        Ok(())
    }

    pub fn options(&self) -> SweepOptions {
        SweepOptions {
            workers: self.worker_count,
            precision: Precision::with_cap(self.precision_cap_bits),
            counterexample_cap: self.counterexample_cap,
            verbose: self.verbose,
            timing: self.timing,
        }
    }
}

/// Parses `name=LO..HI`.
pub fn parse_range(s: &str) -> Result<Coord> {
    let bad = || Error::Usage(format!("range must look like name=LO..HI, got '{s}'"));
    let (name, span) = s.split_once('=').ok_or_else(bad)?;
    let (lo, hi) = span.split_once("..").ok_or_else(bad)?;
    let name = name.trim();
    if name.is_empty() {
        return Err(bad());
    }
    let lo: num_bigint::BigInt = lo.trim().parse().map_err(|_| bad())?;
    let hi: num_bigint::BigInt = hi.trim().parse().map_err(|_| bad())?;
    if lo > hi {
        return Err(Error::Usage(format!("empty range '{s}'")));
    }
    Ok(Coord::new(name, lo, hi))
}

/// Runs a job: one report for a builtin, one per statement for DSL input.
pub fn run_job(job: &JobSpec) -> Result<Vec<CheckReport>> {
    job.validate()?;
    let opts = job.options();
    let (name, source) = match &job.target {
        Target::Builtin(id) => return Ok(vec![run_builtin(id, &job.params, &job.ranges, &opts)?]),
        Target::DslFile(path) => {
            let source = std::fs::read_to_string(path)
                .map_err(|e| Error::Usage(format!("cannot read {}: {e}", path.display())))?;
            let name = path.file_name().map_or_else(|| path.display().to_string(), |n| n.to_string_lossy().into_owned());
            (name, source)
        }
        Target::DslSource { name, source } => (name.clone(), source.clone()),
    };
    if !job.params.is_empty() || !job.ranges.is_empty() {
        return Err(Error::Usage("DSL statements carry their own ranges; --param and --range do not apply".into()));
    }
    parse_statements(&source)?
        .iter()
        .map(|(line, stmt)| check_statement(stmt, &format!("{name}:{line}"), &opts))
        .collect()
}

/// All reports in one format: JSON as one object per line, CSV under a
/// single header, text separated by blank lines.
pub fn render(reports: &[CheckReport], format: Format) -> Vec<u8> {
    let mut out = Vec::new();
    for (i, r) in reports.iter().enumerate() {
        match format {
            Format::Csv => out.extend(emit_csv(r, i == 0)),
            Format::Text if i > 0 => {
                out.push(b'\n');
                out.extend(emit_report(r, format));
            }
            _ => out.extend(emit_report(r, format)),
        }
    }
    if reports.is_empty() && format == Format::Csv {
        out.extend(emit_csv_header());
    }
    out
}

fn emit_csv_header() -> Vec<u8> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(super::report::CSV_HEADER).expect("in-memory write");
    w.into_inner().expect("in-memory flush")
}

/// Overall status of a batch of reports.
pub fn overall_status(reports: &[CheckReport]) -> Status {
    Status::combine(reports.iter().map(|r| r.status))
}
