//! Exact integer, rational and radical arithmetic.

pub(crate) mod arith;
mod interval;
mod radical;

pub use arith::{floor_rat, ikrt, ikrt_unsigned, is_perfect_kth_power, padic_valuation};
pub(crate) use interval::reduce;
pub use interval::{bound_radical_sum, floor_radical_sum, sign_radical_sum, DyadicInterval, Precision};
pub use radical::{normalize_radical, radical_rationality, RadicalSum, RadicalTerm};

/// Arbitrary-precision signed integer.
pub type Integer = num_bigint::BigInt;

/// Arbitrary-precision rational, always in lowest terms with positive
/// denominator.
pub type Rational = num_rational::BigRational;
