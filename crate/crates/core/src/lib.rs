//! Exact verification of floor-function identities.
//!
//! Everything in the trusted path is integer or rational arithmetic. Real
//! radicals are handled as [`RadicalSum`]s whose floors and signs are decided
//! by dyadic interval refinement built on integer k-th roots.
//!
//! Layout:
//! - [`exact`]: integers, rationals, radicals, intervals, exact floors.
//! - [`checkers`]: Hermite-type identities, nested floor series and the
//!   monotone-inverse framework with its residue-avoidance instances.
//! - [`radical`]: k-th root pair and root sum identities, with their
//!   exception candidates and proof-step checks.
//! - [`dsl`]: a small language for stating quantified floor identities.
//! - [`search`]: range partitioning, builtin sweeps and report emission.

pub mod checkers;
pub mod dsl;
mod error;
pub mod exact;
pub mod radical;
pub mod search;
mod ser;

pub use error::{Error, Result};
pub use exact::{
    bound_radical_sum, floor_radical_sum, floor_rat, ikrt, is_perfect_kth_power,
    normalize_radical, padic_valuation, radical_rationality, sign_radical_sum, DyadicInterval,
    Integer, Precision, RadicalSum, RadicalTerm, Rational,
};

/// Whether a checker enforces the hypotheses of the identity it checks.
///
/// `Unchecked` evaluates anyway and reports the result flagged as outside
/// the hypotheses.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Mode {
    #[default]
    Checked,
    Unchecked,
}
