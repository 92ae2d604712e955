//! Test-side oracles in machine integers and 512-bit floats, independent of the
//! library's bignum routines.
#![allow(dead_code)]

use astro_float::{BigFloat, Consts, RoundingMode};

pub const FLOAT_BITS: usize = 512;

pub fn floor_div(a: i128, b: i128) -> i128 {
    assert!(b != 0);
    if b > 0 {
        a.div_euclid(b)
    } else {
        (-a).div_euclid(-b)
    }
}

/// `floor(v^(1/k))` by binary search with overflow-checked powers.
pub fn nth_root_u128(v: u128, k: u32) -> u128 {
    let fits = |r: u128| r.checked_pow(k).is_some_and(|p| p <= v);
    let (mut lo, mut hi) = (0u128, 1u128);
    while fits(hi) {
        hi *= 2;
    }
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if fits(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

/// Largest `e` with `a^e <= v`, for `a >= 2`, `v >= 1`.
pub fn ilog(a: u128, v: u128) -> u32 {
    let (mut e, mut p) = (0, 1u128);
    while let Some(q) = p.checked_mul(a).filter(|q| *q <= v) {
        p = q;
        e += 1;
    }
    e
}

/// A float enclosure `[lo, hi]` of a linear combination of real roots.
pub struct FloatSum {
    cc: Consts,
    value: BigFloat,
    err: BigFloat,
}

impl FloatSum {
    pub fn new() -> Self {
        let zero = BigFloat::from_u64(0, FLOAT_BITS);
        Self {
            cc: Consts::new().expect("constants cache"),
            value: zero.clone(),
            err: zero,
        }
    }

    /// Adds `num/den * radicand^(1/degree)`.
    pub fn add_root(&mut self, num: i64, den: u64, radicand: u64, degree: u32) {
        let p = FLOAT_BITS;
        let rm = RoundingMode::ToEven;
        if radicand == 0 || num == 0 {
            return;
        }
        let r = BigFloat::from_u64(radicand, p);
        let root = r
            .ln(p, rm, &mut self.cc)
            .div(&BigFloat::from_u64(degree as u64, p), p, rm)
            .exp(p, rm, &mut self.cc);
        let term = root.mul(&BigFloat::from_i64(num, p), p, rm).div(&BigFloat::from_u64(den, p), p, rm);
        // ln/exp/mul/div together lose well under 2^-400 relative at 512 bits
        let rel = BigFloat::from_u64(1, p).div(&BigFloat::from_u64(2, p).powi(400, p, rm), p, rm);
        let mut mag = term.clone();
        mag.set_sign(astro_float::Sign::Pos);
        self.err = self.err.add(&mag.mul(&rel, p, rm), p, RoundingMode::Up);
        self.value = self.value.add(&term, p, rm);
    }

    pub fn add_int(&mut self, v: i64) {
        self.value = self.value.add(&BigFloat::from_i64(v, FLOAT_BITS), FLOAT_BITS, RoundingMode::ToEven);
        self.err = self.err.add(&tiny(), FLOAT_BITS, RoundingMode::Up);
    }

    /// `Some(floor == f)` when the enclosure does not straddle an integer.
    pub fn floor_matches(&self, f: i64) -> Option<bool> {
        let p = FLOAT_BITS;
        let lo = self.value.sub(&self.err, p, RoundingMode::Down).sub(&tiny(), p, RoundingMode::Down);
        let hi = self.value.add(&self.err, p, RoundingMode::Up).add(&tiny(), p, RoundingMode::Up);
        let (flo, fhi) = (lo.floor(), hi.floor());
        if flo.cmp(&fhi) != Some(0) {
            return None;
        }
        Some(BigFloat::from_i64(f, p).cmp(&flo) == Some(0))
    }
}

fn tiny() -> BigFloat {
    let p = FLOAT_BITS;
    BigFloat::from_u64(1, p).div(&BigFloat::from_u64(2, p).powi(450, p, RoundingMode::ToEven), p, RoundingMode::Up)
}
