use std::time::Instant;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::partition::run_chunks;
use super::report::{Bindings, CheckReport, Counterexample, Item, PointError, Status};
use crate::exact::Precision;
use crate::{Error, Result};

/// One swept variable, `lo..=hi`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coord {
    pub name: String,
    pub lo: BigInt,
    pub hi: BigInt,
}

impl Coord {
    pub fn new(name: impl Into<String>, lo: impl Into<BigInt>, hi: impl Into<BigInt>) -> Self {
        Self {
            name: name.into(),
            lo: lo.into(),
            hi: hi.into(),
        }
    }

    fn size(&self) -> Result<u64> {
        if self.lo > self.hi {
            return Err(Error::Usage(format!("empty range {}={}..{}", self.name, self.lo, self.hi)));
        }
        (&self.hi - &self.lo + 1u32)
            .to_u64()
            .ok_or_else(|| Error::Usage(format!("range for {} is too large", self.name)))
    }
}

/// Result of evaluating one grid point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Verdict { lhs: String, rhs: String, holds: bool },
    /// Outside the hypotheses of the identity.
    Skipped,
    Failed(Error),
}

impl Outcome {
    pub fn compare<T: ToString + PartialEq>(lhs: T, rhs: T) -> Self {
        Outcome::Verdict {
            holds: lhs == rhs,
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
        }
    }

    /// Precondition errors skip the point; every other error is recorded.
    pub fn from_result(r: Result<Outcome>) -> Self {
        match r {
            Ok(o) => o,
            Err(Error::Precondition(_)) => Outcome::Skipped,
            Err(e) => Outcome::Failed(e),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SweepOptions {
    pub workers: usize,
    pub precision: Precision,
    /// Counterexamples and errors stored per report; counting continues.
    pub counterexample_cap: usize,
    /// Keep every evaluated point in the report.
    pub verbose: bool,
    /// Measure wall time; when false `duration_ms` is 0.
    pub timing: bool,
}

impl Default for SweepOptions {
    fn default() -> Self {
        Self {
            workers: 1,
            precision: Precision::default(),
            counterexample_cap: 100,
            verbose: false,
            timing: true,
        }
    }
}

#[derive(Default)]
struct Tally {
    checked: u64,
    skipped: u64,
    cx_count: u64,
    cxs: Vec<Counterexample>,
    err_count: u64,
    errs: Vec<PointError>,
    undecided: bool,
    items: Vec<Item>,
}

pub fn range_text(coords: &[Coord]) -> String {
    coords
        .iter()
        .map(|c| format!("{}={}..{}", c.name, c.lo, c.hi))
        .collect::<Vec<_>>()
        .join(" ")
}

/// Evaluates `f` at every point of the grid (last coordinate fastest) and
/// merges the outcomes in grid order.
pub fn sweep<F>(identity: &str, params: Bindings, coords: &[Coord], opts: &SweepOptions, f: F) -> Result<CheckReport>
where
    F: Fn(&[BigInt]) -> Outcome + Sync,
{
    let start = Instant::now();
    let sizes = coords.iter().map(Coord::size).collect::<Result<Vec<_>>>()?;
    let total = sizes
        .iter()
        .try_fold(1u64, |acc, &s| acc.checked_mul(s))
        .ok_or_else(|| Error::Usage("grid has too many points".into()))?;
    let cap = opts.counterexample_cap;
    let tallies = run_chunks(total, opts.workers.max(1), |idx| {
        let mut t = Tally::default();
        let mut point = vec![BigInt::default(); coords.len()];
        for i in idx {
            let mut rest = i;
            for (j, c) in coords.iter().enumerate().rev() {
                point[j] = &c.lo + rest % sizes[j];
                rest /= sizes[j];
            }
            let bindings = || {
                Bindings(
                    coords
                        .iter()
                        .zip(&point)
                        .map(|(c, v)| (c.name.clone(), v.to_string()))
                        .collect(),
                )
            };
            match f(&point) {
                Outcome::Verdict { lhs, rhs, holds } => {
                    t.checked += 1;
                    if !holds {
                        t.cx_count += 1;
                        if t.cxs.len() < cap {
                            t.cxs.push(Counterexample {
                                bindings: bindings(),
                                lhs: lhs.clone(),
                                rhs: rhs.clone(),
                            });
                        }
                    }
                    if opts.verbose {
                        t.items.push(Item {
                            bindings: bindings(),
                            lhs,
                            rhs,
                            holds,
                        });
                    }
                }
                Outcome::Skipped => t.skipped += 1,
                Outcome::Failed(e) => {
                    t.skipped += 1;
                    t.err_count += 1;
                    t.undecided |= e.is_undecided();
                    if t.errs.len() < cap {
                        t.errs.push(PointError {
                            bindings: bindings(),
                            message: e.to_string(),
                        });
                    }
                }
            }
        }
        t
    });

    let mut all = Tally::default();
    for t in tallies {
        all.checked += t.checked;
        all.skipped += t.skipped;
        all.cx_count += t.cx_count;
        all.err_count += t.err_count;
        all.undecided |= t.undecided;
        all.cxs.extend(t.cxs);
        all.errs.extend(t.errs);
        all.items.extend(t.items);
    }
    all.cxs.truncate(cap);
    all.errs.truncate(cap);
    let mut report = CheckReport {
        identity: identity.to_string(),
        params,
        range: range_text(coords),
        checked_count: all.checked,
        skipped_count: all.skipped,
        counterexample_count: all.cx_count,
        counterexamples: all.cxs,
        error_count: all.err_count,
        errors: all.errs,
        candidates: None,
        margins: None,
        duration_ms: 0,
        status: Status::AllHold,
        items: opts.verbose.then_some(all.items),
    };
    report.status = derive_status(&report, all.undecided);
    if opts.timing {
        report.duration_ms = start.elapsed().as_millis() as u64;
    }
    Ok(report)
}

pub(crate) fn derive_status(r: &CheckReport, undecided: bool) -> Status {
    if r.counterexample_count > 0 {
        Status::Counterexample
    } else if undecided {
        Status::Undecided
    } else if r.error_count > 0 {
        Status::Error
    } else {
        Status::AllHold
    }
}
