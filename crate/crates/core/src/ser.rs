//! Serde helpers: big numbers are written as decimal strings.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serializer;

pub(crate) fn decimal<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

pub(crate) fn ratio<S: Serializer>(v: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}
