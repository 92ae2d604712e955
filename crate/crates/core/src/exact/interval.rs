use std::cmp::Ordering;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, Zero};

use super::arith::{floor_rat, ikrt_unsigned};
use super::radical::{radical_rationality, RadicalSum, RadicalTerm};
use crate::{Error, Result};

/// Refinement schedule for interval evaluation of radical sums.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Precision {
    /// Fractional bits of the first round.
    pub start_bits: u32,
    /// Rounds double the bit count until this cap is reached.
    pub cap_bits: u32,
}

impl Precision {
    pub const DEFAULT_START_BITS: u32 = 64;
    pub const DEFAULT_CAP_BITS: u32 = 16384;

    pub fn with_cap(cap_bits: u32) -> Self {
        Precision {
            start_bits: Self::DEFAULT_START_BITS.min(cap_bits.max(1)),
            cap_bits,
        }
    }
}

impl Default for Precision {
    fn default() -> Self {
        Precision {
            start_bits: Self::DEFAULT_START_BITS,
            cap_bits: Self::DEFAULT_CAP_BITS,
        }
    }
}

/// Closed rational interval whose endpoints are dyadic offsets of the exact
/// rational part of a sum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DyadicInterval {
    pub low: BigRational,
    pub high: BigRational,
    pub frac_bits: u32,
}

impl DyadicInterval {
    pub fn width(&self) -> BigRational {
        &self.high - &self.low
    }

    pub fn contains(&self, q: &BigRational) -> bool {
        &self.low <= q && q <= &self.high
    }

    pub fn contains_interval(&self, other: &DyadicInterval) -> bool {
        self.low <= other.low && other.high <= self.high
    }

    /// The common floor of both endpoints, if they agree.
    pub fn floor(&self) -> Option<BigInt> {
        let lo = floor_rat(&self.low);
        (lo == floor_rat(&self.high)).then_some(lo)
    }

    /// The sign of every point of the interval, if it is constant and nonzero
    /// (or the interval is the single point zero).
    pub fn sign(&self) -> Option<Ordering> {
        let zero = BigRational::zero();
        if self.low > zero {
            Some(Ordering::Greater)
        } else if self.high < zero {
            Some(Ordering::Less)
        } else if self.low.is_zero() && self.high.is_zero() {
            Some(Ordering::Equal)
        } else {
            None
        }
    }
}

/// Rigorous enclosure of the value of `s`.
///
/// Each root `r^(1/k)` with coefficient `c` is bracketed by
/// `ikrt(r * 2^(k f), k) / 2^f` and the next dyadic, where
/// `f = frac_bits + e` and `2^e >= |c|`; every term therefore contributes
/// width at most `2^-frac_bits`. Intervals are nested in `frac_bits`.
pub fn bound_radical_sum(s: &RadicalSum, frac_bits: u32) -> DyadicInterval {
    let mut low = BigRational::zero();
    let mut high = BigRational::zero();
    for t in s.terms() {
        if t.is_constant() {
            low += t.coeff();
            high += t.coeff();
            continue;
        }
        let (lo, hi) = root_bounds(t, frac_bits);
        if t.coeff().is_negative() {
            low += t.coeff() * hi;
            high += t.coeff() * lo;
        } else {
            low += t.coeff() * lo;
            high += t.coeff() * hi;
        }
    }
    DyadicInterval {
        low,
        high,
        frac_bits,
    }
}

fn root_bounds(t: &RadicalTerm, frac_bits: u32) -> (BigRational, BigRational) {
    let c = t.coeff().abs();
    let ceil = c.numer().div_ceil(c.denom());
    let extra = u32::try_from(ceil.bits()).expect("coefficient too large");
    let f = frac_bits + extra;
    let k = t.degree();
    let scaled: BigUint = t.radicand() << (u64::from(k) * u64::from(f));
    let m = ikrt_unsigned(&scaled, k);
    let exact = Pow::pow(&m, k) == scaled;
    let denom = BigInt::one() << f;
    let m = BigInt::from_biguint(Sign::Plus, m);
    let lo = BigRational::new(m.clone(), denom.clone());
    let hi = if exact {
        lo.clone()
    } else {
        BigRational::new(m + 1, denom)
    };
    (lo, hi)
}

/// `Some(q)` when `a.root / b.root` is the rational `q` (coefficients
/// ignored).
fn radical_ratio(a: &RadicalTerm, b: &RadicalTerm) -> Option<BigRational> {
    let l = a.degree().lcm(&b.degree());
    let num: BigUint = Pow::pow(a.radicand(), l / a.degree());
    let den: BigUint = Pow::pow(b.radicand(), l / b.degree());
    let g = num.gcd(&den);
    let (num, den) = (num / &g, den / &g);
    let rn = ikrt_unsigned(&num, l);
    if Pow::pow(&rn, l) != num {
        return None;
    }
    let rd = ikrt_unsigned(&den, l);
    if Pow::pow(&rd, l) != den {
        return None;
    }
    Some(BigRational::new(
        BigInt::from_biguint(Sign::Plus, rn),
        BigInt::from_biguint(Sign::Plus, rd),
    ))
}

/// Value-preserving rewrite of `s` into a rational part plus radicals whose
/// pairwise ratios are irrational.
///
/// Rational terms are folded into the constant; irrational terms whose
/// ratio to an earlier representative is rational are merged into it.
/// Real radicals of positive rationals with pairwise irrational ratios are
/// linearly independent over the rationals, so the result is rational iff
/// it has no radical terms left.
pub(crate) fn reduce(s: &RadicalSum) -> RadicalSum {
    let mut constant = BigRational::zero();
    let mut classes: Vec<RadicalTerm> = Vec::new();
    for t in s.terms() {
        if let Some(v) = radical_rationality(t) {
            constant += v;
            continue;
        }
        let rep = classes
            .iter()
            .enumerate()
            .find_map(|(i, rep)| radical_ratio(t, rep).map(|ratio| (i, ratio)));
        match rep {
            Some((i, ratio)) => {
                let rep = &classes[i];
                let merged = rep.coeff() + t.coeff() * ratio;
                classes[i] = RadicalTerm::new(merged, rep.radicand().clone(), rep.degree())
                    .expect("degree already validated");
            }
            None => classes.push(t.clone()),
        }
    }
    classes.push(RadicalTerm::rational(constant));
    RadicalSum::from_terms(classes)
}

fn refine<T>(
    s: &RadicalSum,
    prec: Precision,
    decide: impl Fn(&DyadicInterval) -> Option<T>,
) -> Result<T> {
    let mut bits = prec.start_bits.max(1).min(prec.cap_bits.max(1));
    loop {
        let iv = bound_radical_sum(s, bits);
        if let Some(v) = decide(&iv) {
            return Ok(v);
        }
        if bits >= prec.cap_bits {
            return Err(Error::Undecided {
                bits,
                low: iv.low,
                high: iv.high,
            });
        }
        bits = bits.saturating_mul(2).min(prec.cap_bits);
    }
}

/// Exact floor of the real value of `s`.
///
/// Rational parts are resolved exactly; any sum still carrying a radical after
/// [`reduce`] is irrational, so refinement of its enclosure terminates.
pub fn floor_radical_sum(s: &RadicalSum, prec: Precision) -> Result<BigInt> {
    let s = reduce(s);
    if let Some(q) = s.as_rational() {
        return Ok(floor_rat(&q));
    }
    refine(&s, prec, DyadicInterval::floor)
}

/// Exact sign of the real value of `s`.
pub fn sign_radical_sum(s: &RadicalSum, prec: Precision) -> Result<Ordering> {
    let s = reduce(s);
    if let Some(q) = s.as_rational() {
        return Ok(q.cmp(&BigRational::zero()));
    }
    refine(&s, prec, DyadicInterval::sign)
}
