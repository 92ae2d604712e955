use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed};

use super::hermite::Sides;
use super::monotone::{floor_inverse, MonotoneFnSpec};
use crate::exact::{floor_radical_sum, normalize_radical, Precision, RadicalSum, RadicalTerm};
use crate::{Error, Mode, Result};

/// Floors that an identity claims are all equal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FloorChain {
    pub floors: Vec<BigInt>,
    /// False when evaluated in [`Mode::Unchecked`] outside the stated
    /// hypotheses.
    pub within_hypotheses: bool,
}

impl FloorChain {
    pub fn holds(&self) -> bool {
        self.floors.windows(2).all(|w| w[0] == w[1])
    }

    /// First floor, and the first floor differing from it (or the first
    /// again when all agree).
    pub fn witness_pair(&self) -> (BigInt, BigInt) {
        let first = self.floors[0].clone();
        let other = self.floors.iter().find(|f| **f != first).unwrap_or(&first).clone();
        (first, other)
    }
}

fn int(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}

fn half() -> BigRational {
    BigRational::new(1.into(), 2.into())
}

/// `floor(1/2 + sqrt(n + 1/2))` against `floor(1/2 + sqrt(n + 1/4))`.
pub fn ramanujan_shifted_sqrt_sides(n: &BigInt, prec: Precision) -> Result<Sides> {
    let side = |offset: BigRational| -> Result<BigInt> {
        let root = normalize_radical(&BigRational::one(), &(int(n.clone()) + offset), 2)?;
        floor_radical_sum(&(RadicalSum::from(root) + RadicalSum::from_rational(half())), prec)
    };
    Ok(Sides {
        lhs: side(half())?,
        rhs: side(BigRational::new(1.into(), 4.into()))?,
    })
}

pub fn check_ramanujan_shifted_sqrt(n: &BigInt, prec: Precision) -> Result<bool> {
    ramanujan_shifted_sqrt_sides(n, prec).map(|s| s.holds())
}

/// `floor((b + radicand^(1/k)) / a)`.
fn shifted_root_floor(b: &BigInt, radicand: &BigInt, k: u32, a: &BigInt, prec: Precision) -> Result<BigInt> {
    let inv_a = BigRational::new(BigInt::one(), a.clone());
    let root = RadicalTerm::from_int(inv_a.clone(), radicand, k)?;
    let s = RadicalSum::from(root) + RadicalSum::from_rational(int(b.clone()) * inv_a);
    floor_radical_sum(&s, prec)
}

fn positive(name: &str, v: &BigInt) -> Result<()> {
    if v.is_positive() {
        Ok(())
    } else {
        Err(Error::domain(format!("{name} must be a natural number, got {v}")))
    }
}

/// Floors of `(b + sqrt(4n + r)) / a` for `r = 1, 2, 3`, for `n >= 2b/a`.
pub fn check_sqrt_chain(n: &BigInt, a: &BigInt, b: &BigInt, mode: Mode, prec: Precision) -> Result<FloorChain> {
    positive("a", a)?;
    positive("b", b)?;
    let min_n = (b * BigInt::from(2)).div_ceil(a);
    let within = n >= &min_n;
    if !within && mode == Mode::Checked {
        return Err(Error::precondition(format!("n = {n} is below 2b/a (needs n >= {min_n})")));
    }
    let floors = (1..=3)
        .map(|r| shifted_root_floor(b, &(n * 4 + r), 2, a, prec))
        .collect::<Result<_>>()?;
    Ok(FloorChain {
        floors,
        within_hypotheses: within,
    })
}

/// Floors of `(b + cbrt(9n + r)) / a` for `r = 1..=7`.
pub fn check_cbrt_chain(n: &BigInt, a: &BigInt, b: &BigInt, prec: Precision) -> Result<FloorChain> {
    positive("n", n)?;
    positive("a", a)?;
    positive("b", b)?;
    let floors = (1..=7)
        .map(|r| shifted_root_floor(b, &(n * 9 + r), 3, a, prec))
        .collect::<Result<_>>()?;
    Ok(FloorChain {
        floors,
        within_hypotheses: true,
    })
}

/// Floors of `(log_a(a^m n + v) - c) / b` for `v = a^(m-1) ..= a^m - 1`,
/// each computed as `floor(f^-1(a^m n + v))` for `f(x) = a^(b x + c)`.
pub fn check_log_chain(
    n: &BigInt,
    a: &BigInt,
    b: &BigInt,
    c: &BigInt,
    m: u32,
    mode: Mode,
) -> Result<FloorChain> {
    positive("n", n)?;
    if a < &BigInt::from(2) {
        return Err(Error::domain("base a must be at least 2"));
    }
    if m < 2 {
        return Err(Error::domain("m must be at least 2"));
    }
    positive("b", b)?;
    if c.is_negative() {
        return Err(Error::domain("c must be nonnegative"));
    }
    let within = b >= &(BigInt::from(m) - 1 - c);
    if !within && mode == Mode::Checked {
        return Err(Error::precondition(format!("b = {b} is below m - 1 - c")));
    }
    let f = MonotoneFnSpec::exponential(a.clone(), b.clone(), c.clone())?;
    let hi: BigInt = Pow::pow(a, m);
    let lo: BigInt = Pow::pow(a, m - 1);
    let base = &hi * n;
    let mut floors = Vec::new();
    let mut v = lo;
    while v < hi {
        floors.push(floor_inverse(&f, &(&base + &v))?);
        v += 1;
    }
    Ok(FloorChain {
        floors,
        within_hypotheses: within,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(v: i64) -> BigInt {
        v.into()
    }

    fn p() -> Precision {
        Precision::default()
    }

    #[test]
    fn shifted_sqrt_examples() {
        for (n, f) in [(1, 1), (5, 2), (12, 4)] {
            let s = ramanujan_shifted_sqrt_sides(&b(n), p()).unwrap();
            assert_eq!((s.lhs, s.rhs), (b(f), b(f)));
        }
    }

    #[test]
    fn sqrt_chain_examples() {
        let c = check_sqrt_chain(&b(5), &b(2), &b(3), Mode::Checked, p()).unwrap();
        assert_eq!(c.floors, vec![b(3); 3]);
        assert!(check_sqrt_chain(&b(3), &b(2), &b(3), Mode::Checked, p()).unwrap().holds());
        assert!(check_sqrt_chain(&b(10), &b(1), &b(1), Mode::Checked, p()).unwrap().holds());
    }

    #[test]
    fn sqrt_chain_below_domain() {
        let err = check_sqrt_chain(&b(2), &b(2), &b(3), Mode::Checked, p()).unwrap_err();
        assert!(matches!(err, Error::Precondition(_)));
        let c = check_sqrt_chain(&b(2), &b(2), &b(3), Mode::Unchecked, p()).unwrap();
        assert!(!c.within_hypotheses);
    }

    #[test]
    fn cbrt_chain_examples() {
        let c = check_cbrt_chain(&b(1), &b(1), &b(1), p()).unwrap();
        assert_eq!(c.floors, vec![b(3); 7]);
        assert!(check_cbrt_chain(&b(1), &b(2), &b(3), p()).unwrap().holds());
        assert!(check_cbrt_chain(&b(100), &b(5), &b(7), p()).unwrap().holds());
    }

    #[test]
    fn log_chain_examples() {
        let c = check_log_chain(&b(1), &b(2), &b(1), &b(1), 2, Mode::Checked).unwrap();
        assert_eq!(c.floors, vec![b(1), b(1)]);
        assert!(check_log_chain(&b(3), &b(2), &b(2), &b(0), 2, Mode::Checked).unwrap().holds());
        let c = check_log_chain(&b(1), &b(3), &b(1), &b(0), 2, Mode::Checked).unwrap();
        assert_eq!(c.floors.len(), 6);
        assert!(c.holds());
    }

    #[test]
    fn log_chain_preconditions() {
        assert!(matches!(
            check_log_chain(&b(1), &b(2), &b(1), &b(0), 3, Mode::Checked),
            Err(Error::Precondition(_))
        ));
        assert!(check_log_chain(&b(1), &b(1), &b(1), &b(0), 3, Mode::Checked).is_err());
        let c = check_log_chain(&b(1), &b(2), &b(1), &b(0), 3, Mode::Unchecked).unwrap();
        assert!(!c.within_hypotheses);
    }
}
