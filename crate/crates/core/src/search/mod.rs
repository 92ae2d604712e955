//! Sweeping identities over integer grids and reporting the results.

mod builtin;
mod job;
mod partition;
mod report;
mod sweep;

pub use builtin::{run_builtin, BUILTIN_IDS};
pub use job::{overall_status, parse_range, render, run_job, JobSpec, Target, MIN_PRECISION_CAP_BITS};
pub use partition::partition_range;
pub(crate) use partition::run_chunks;
pub use report::{
    emit_csv, emit_report, Bindings, CheckReport, Counterexample, Format, Item, PointError, Status, CSV_HEADER,
};
pub use sweep::{range_text, sweep, Coord, Outcome, SweepOptions};
