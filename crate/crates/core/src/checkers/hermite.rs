use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::exact::floor_rat;
use crate::{Error, Result};

/// Both sides of an integer-valued identity at one point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sides {
    pub lhs: BigInt,
    pub rhs: BigInt,
}

impl Sides {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

fn ratio(n: &BigInt, d: i64) -> BigRational {
    BigRational::new(n.clone(), d.into())
}

/// `sum_{i<b} floor(t + i/b)` and `floor(b t)`.
pub fn hermite_sides(t: &BigRational, b: u64) -> Result<Sides> {
    if b == 0 {
        return Err(Error::domain("b must be at least 1"));
    }
    let bq = BigRational::from_integer(b.into());
    let lhs = (0..b)
        .map(|i| floor_rat(&(t + BigRational::new(i.into(), b.into()))))
        .sum();
    Ok(Sides {
        lhs,
        rhs: floor_rat(&(t * bq)),
    })
}

pub fn check_hermite(t: &BigRational, b: u64) -> Result<bool> {
    hermite_sides(t, b).map(|s| s.holds())
}

/// `floor(x/a)` and `sum_{i<b} floor((x + i a) / (a b))`.
pub fn hermite_scaled_sides(x: &BigRational, a: &BigInt, b: u64) -> Result<Sides> {
    if a.is_zero() {
        return Err(Error::domain("a must be nonzero"));
    }
    if b == 0 {
        return Err(Error::domain("b must be at least 1"));
    }
    let a_q = BigRational::from_integer(a.clone());
    let ab = BigRational::from_integer(a * BigInt::from(b));
    let lhs = floor_rat(&(x / &a_q));
    let rhs = (0..b)
        .map(|i| floor_rat(&((x + &a_q * BigRational::from_integer(i.into())) / &ab)))
        .sum();
    Ok(Sides { lhs, rhs })
}

/// Splitting `floor(x/a)` into `b` shifted floors of `x/(a b)`.
pub fn check_hermite_scaled(x: &BigRational, a: &BigInt, b: u64) -> Result<bool> {
    hermite_scaled_sides(x, a, b).map(|s| s.holds())
}

/// `floor(n/3) + floor((n+2)/6) + floor((n+4)/6)` against
/// `floor(n/2) + floor((n+3)/6)`.
pub fn ramanujan_sixths_sides(n: &BigInt) -> Sides {
    let f = |shift: i64, d: i64| floor_rat(&ratio(&(n + shift), d));
    Sides {
        lhs: f(0, 3) + f(2, 6) + f(4, 6),
        rhs: f(0, 2) + f(3, 6),
    }
}

pub fn check_ramanujan_sixths(n: &BigInt) -> bool {
    ramanujan_sixths_sides(n).holds()
}
