use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, Zero};

use crate::exact::floor_rat;
use crate::{Error, Result};

/// Per-level inner sums `sum_{i=1}^{n-1} floor(x/n^(j+1) + i/n)` for
/// `j = 0, 1, ...`, truncated where the tail `floor(x/n^J)` has settled at its
/// limit (0 for `x >= 0`, -1 otherwise); all later levels are zero.
pub fn nested_floor_series_levels(x: &BigRational, n: u64) -> Result<Vec<BigInt>> {
    if n < 2 {
        return Err(Error::domain("series base must be at least 2"));
    }
    let limit = if x.is_negative() { -BigInt::one() } else { BigInt::zero() };
    let base = BigInt::from(n);
    let mut levels = Vec::new();
    let mut scale = BigInt::one(); // n^j
    loop {
        let tail = floor_rat(&(x / BigRational::from_integer(scale.clone())));
        if tail == limit {
            return Ok(levels);
        }
        let next = &scale * &base;
        let denom = BigRational::from_integer(next.clone());
        let level: BigInt = (1..n)
            .map(|i| {
                let shifted = x + BigRational::from_integer(&scale * BigInt::from(i));
                floor_rat(&(shifted / &denom))
            })
            .sum();
        levels.push(level);
        scale = next;
    }
}

/// `sum_{j>=0} sum_{i=1}^{n-1} floor(x/n^(j+1) + i/n)`, summed level by
/// level until the remaining levels vanish.
pub fn nested_floor_series(x: &BigRational, n: u64) -> Result<BigInt> {
    Ok(nested_floor_series_levels(x, n)?.into_iter().sum())
}

/// `sum_{k>=0} floor((m + 2^k) / 2^(k+1))` for `m >= 0`.
pub fn halving_series(m: &BigInt) -> Result<BigInt> {
    if m.is_negative() {
        return Err(Error::domain("halving series needs m >= 0"));
    }
    let mut total = BigInt::zero();
    let mut k = 0u32;
    loop {
        let p = Pow::pow(&BigInt::from(2), k);
        if &p > m {
            // every remaining term is floor(((m + 2^k) / 2^(k+1)) < 1
            return Ok(total);
        }
        total += (m + &p) / (p * 2);
        k += 1;
    }
}
