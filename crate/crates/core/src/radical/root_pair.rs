use std::cmp::Ordering;
use std::ops::RangeInclusive;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed};
use serde::Serialize;

use crate::checkers::Sides;
use crate::exact::arith::pow2;
use crate::exact::{
    floor_radical_sum, ikrt, is_perfect_kth_power, sign_radical_sum, Precision, RadicalSum,
    RadicalTerm,
};
use crate::search::run_chunks;
use crate::{Error, Result};

/// Both floors of the root pair identity at `(n, k)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RootPairResult {
    #[serde(serialize_with = "crate::ser::decimal")]
    pub n: BigInt,
    pub k: u32,
    /// `floor(n^(1/k) + (n+1)^(1/k))`
    #[serde(serialize_with = "crate::ser::decimal")]
    pub lhs_floor: BigInt,
    /// `floor((2^k n + 2^(k-1))^(1/k))`, i.e. `floor(2 (n + 1/2)^(1/k))`
    #[serde(serialize_with = "crate::ser::decimal")]
    pub rhs_floor: BigInt,
    pub holds: bool,
    /// `n == floor((3/2)^k)`
    pub is_candidate: bool,
    /// `n < 2^(k-3)`
    pub below_threshold: bool,
}

fn check_args(n: &BigInt, k: u32) -> Result<()> {
    if !n.is_positive() {
        return Err(Error::domain(format!("n must be positive, got {n}")));
    }
    if k < 2 {
        return Err(Error::domain(format!("k must be at least 2, got {k}")));
    }
    Ok(())
}

/// `2^k n + 2^(k-1)`, the integer radicand of `2 (n + 1/2)^(1/k)`.
fn midpoint_radicand(n: &BigInt, k: u32) -> BigInt {
    pow2(k) * n + pow2(k - 1)
}

fn pair_sum(n: &BigInt, k: u32) -> Result<RadicalSum> {
    Ok(RadicalSum::from_terms([
        RadicalTerm::root(n, k)?,
        RadicalTerm::root(&(n + 1), k)?,
    ]))
}

/// `n < 2^(k-3)`, exact for `k < 3` where the threshold is a fraction.
fn below_threshold(n: &BigInt, k: u32) -> bool {
    if k >= 3 {
        n < &pow2(k - 3)
    } else {
        n * pow2(3 - k) < BigInt::one()
    }
}

/// `floor((3/2)^k)`, the only `n` at which the identity can fail for `k`.
pub fn root_pair_candidate(k: u32) -> BigInt {
    Pow::pow(&BigInt::from(3), k) / pow2(k)
}

pub fn check_root_pair(n: &BigInt, k: u32, prec: Precision) -> Result<RootPairResult> {
    check_args(n, k)?;
    let lhs_floor = floor_radical_sum(&pair_sum(n, k)?, prec)?;
    let rhs_floor = ikrt(&midpoint_radicand(n, k), k)?;
    Ok(RootPairResult {
        holds: lhs_floor == rhs_floor,
        is_candidate: *n == root_pair_candidate(k),
        below_threshold: below_threshold(n, k),
        n: n.clone(),
        k,
        lhs_floor,
        rhs_floor,
    })
}

/// `floor(sqrt(n) + sqrt(n+1))` against `floor(sqrt(4n + 2))`.
pub fn ramanujan_sqrt_pair_sides(n: &BigInt, prec: Precision) -> Result<Sides> {
    let lhs = floor_radical_sum(&pair_sum(n, 2)?, prec)?;
    let rhs = floor_radical_sum(&RadicalTerm::root(&(n * 4 + 2), 2)?.into(), prec)?;
    Ok(Sides { lhs, rhs })
}

pub fn check_ramanujan_sqrt_pair(n: &BigInt, prec: Precision) -> Result<bool> {
    ramanujan_sqrt_pair_sides(n, prec).map(|s| s.holds())
}

/// `floor((2^k n + 2^(k-1) - 1)^(1/k)) == floor((2^k n + 2^(k-1))^(1/k))`,
/// together with the fact behind it: `2^k n + 2^(k-1)` is not a perfect
/// k-th power.
pub fn check_midpoint_floor_stable(n: &BigInt, k: u32) -> Result<bool> {
    check_args(n, k)?;
    let top = midpoint_radicand(n, k);
    let not_power = is_perfect_kth_power(&top, k)?.is_none();
    Ok(not_power && ikrt(&(&top - 1), k)? == ikrt(&top, k)?)
}

/// The strict bounds placing the root pair between consecutive radicands.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RootPairSandwich {
    /// `n >= 2^(k-3)` implies `(2^k n + 2^(k-1) - 1)^(1/k) < n^(1/k) + (n+1)^(1/k)`
    pub lower: bool,
    /// `n^(1/k) + (n+1)^(1/k) < (2^k n + 2^(k-1))^(1/k)`
    pub upper: bool,
}

pub fn check_root_pair_sandwich(n: &BigInt, k: u32, prec: Precision) -> Result<RootPairSandwich> {
    check_args(n, k)?;
    let pair = pair_sum(n, k)?;
    let top = midpoint_radicand(n, k);
    let lower = if below_threshold(n, k) {
        true
    } else {
        let below: RadicalSum = RadicalTerm::root(&(&top - 1), k)?.into();
        sign_radical_sum(&(&pair - &below), prec)? == Ordering::Greater
    };
    let above: RadicalSum = RadicalTerm::root(&top, k)?.into();
    let upper = sign_radical_sum(&(&above - &pair), prec)? == Ordering::Greater;
    Ok(RootPairSandwich { lower, upper })
}

/// Closeness of `2 (3/2)^k` to the odd integer `2n + 1` at the candidate
/// `n`, against the bound `1 / (4 (3/2)^k)` that an exception would need.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CandidateMargin {
    pub k: u32,
    #[serde(serialize_with = "crate::ser::decimal")]
    pub n: BigInt,
    /// `|2 (3/2)^k - (2n + 1)|`
    #[serde(serialize_with = "crate::ser::ratio")]
    pub gap: BigRational,
    /// `1 / (4 (3/2)^k)`
    #[serde(serialize_with = "crate::ser::ratio")]
    pub bound: BigRational,
    /// `gap < bound`
    pub within_bound: bool,
}

/// Exact margin at `n = floor((3/2)^k)`.
pub fn candidate_margin(k: u32) -> CandidateMargin {
    let three_halves = Pow::pow(&BigRational::new(3.into(), 2.into()), k);
    let n = root_pair_candidate(k);
    let odd = BigRational::from_integer(&n * 2 + 1);
    let gap = (&three_halves * BigRational::from_integer(2.into()) - odd).abs();
    let bound = (three_halves * BigRational::from_integer(4.into())).recip();
    CandidateMargin {
        within_bound: gap < bound,
        k,
        n,
        gap,
        bound,
    }
}

/// Outcome of [`scan_root_pairs`]: failures and candidates only.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RootPairScan {
    /// Grid points evaluated (candidates outside the grid not counted).
    pub checked: u64,
    /// Failures and candidates, in `(k, n)` order.
    pub results: Vec<RootPairResult>,
    /// One per `k` when candidates were requested.
    pub margins: Vec<CandidateMargin>,
}

impl RootPairScan {
    pub fn failures(&self) -> impl Iterator<Item = &RootPairResult> {
        self.results.iter().filter(|r| !r.holds)
    }
}

/// Checks every `(k, n)` of the grid (`ns = None` for a candidate-only
/// sweep), keeping failures; with `include_candidates` also checks
/// `floor((3/2)^k)` for every `k` and attaches its margin.
pub fn scan_root_pairs(
    ks: RangeInclusive<u32>,
    ns: Option<RangeInclusive<i64>>,
    include_candidates: bool,
    workers: usize,
    prec: Precision,
) -> Result<RootPairScan> {
    let k_count = u64::from(ks.end().saturating_sub(*ks.start()) + 1) * u64::from(!ks.is_empty());
    let n_count = ns
        .as_ref()
        .filter(|r| !r.is_empty())
        .map_or(0, |r| (r.end() - r.start()) as u64 + 1);
    let total = k_count * n_count;
    let (k0, n0) = (*ks.start(), ns.as_ref().map_or(0, |r| *r.start()));
    let chunks = run_chunks(total, workers, |idx| -> Result<Vec<RootPairResult>> {
        let mut kept = Vec::new();
        for i in idx {
            let k = k0 + (i / n_count) as u32;
            let n = BigInt::from(n0) + (i % n_count);
            let r = check_root_pair(&n, k, prec)?;
            if !r.holds || r.is_candidate {
                kept.push(r);
            }
        }
        Ok(kept)
    });
    let mut results = Vec::new();
    for c in chunks {
        results.extend(c?);
    }
    let mut margins = Vec::new();
    if include_candidates {
        for k in ks.clone() {
            let n = root_pair_candidate(k);
            if n.is_positive() && !results.iter().any(|r| r.k == k && r.n == n) {
                results.push(check_root_pair(&n, k, prec)?);
            }
            margins.push(candidate_margin(k));
        }
    } else {
        results.retain(|r| !r.holds);
    }
    results.sort_by(|a, b| (a.k, &a.n).cmp(&(b.k, &b.n)));
    Ok(RootPairScan {
        checked: total,
        results,
        margins,
    })
}
