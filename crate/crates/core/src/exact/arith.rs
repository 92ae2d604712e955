use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, Zero};

use crate::{Error, Result};

/// Floor toward negative infinity.
pub fn floor_rat(q: &BigRational) -> BigInt {
    q.numer().div_floor(q.denom())
}

/// Integer k-th root: the unique `r >= 0` with `r^k <= n < (r+1)^k`.
pub fn ikrt(n: &BigInt, k: u32) -> Result<BigInt> {
    if n.is_negative() {
        return Err(Error::domain(format!("k-th root of negative integer {n}")));
    }
    if k == 0 {
        return Err(Error::domain("root degree must be at least 1"));
    }
    Ok(BigInt::from_biguint(Sign::Plus, ikrt_unsigned(n.magnitude(), k)))
}

/// [`ikrt`] on a nonnegative magnitude. `k` must be at least 1.
pub fn ikrt_unsigned(n: &BigUint, k: u32) -> BigUint {
    debug_assert!(k >= 1);
    match k {
        1 => n.clone(),
        2 => n.sqrt(),
        _ => n.nth_root(k),
    }
}

/// Returns `r` with `r^k = n` when `n` is a perfect k-th power.
pub fn is_perfect_kth_power(n: &BigInt, k: u32) -> Result<Option<BigInt>> {
    let r = ikrt(n, k)?;
    Ok((Pow::pow(&r, k) == *n).then_some(r))
}

/// Exponent of the highest power of the prime `p` dividing `n`.
pub fn padic_valuation(n: &BigInt, p: u64) -> Result<u32> {
    if n.is_zero() {
        return Err(Error::domain("valuation of zero is infinite"));
    }
    if !is_prime(p) {
        return Err(Error::domain(format!("{p} is not prime")));
    }
    let p = BigInt::from(p);
    let mut m = n.abs();
    let mut v = 0;
    loop {
        let (q, r) = m.div_rem(&p);
        if !r.is_zero() {
            return Ok(v);
        }
        m = q;
        v += 1;
    }
}

pub(crate) fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime factors of `n > 0` in increasing order, without multiplicity.
pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub(crate) fn pow2(e: u32) -> BigInt {
    BigInt::one() << e
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn floor_examples() {
        assert_eq!(floor_rat(&q(7, 2)), 3.into());
        assert_eq!(floor_rat(&q(-5, 2)), (-3).into());
        assert_eq!(floor_rat(&q(4, 1)), 4.into());
    }

    #[test]
    fn ikrt_examples() {
        assert_eq!(ikrt(&8.into(), 3).unwrap(), 2.into());
        assert_eq!(ikrt(&26.into(), 3).unwrap(), 2.into());
        assert_eq!(ikrt(&27.into(), 3).unwrap(), 3.into());
        assert_eq!(ikrt(&pow2(100), 10).unwrap(), pow2(10));
        assert_eq!(ikrt(&0.into(), 5).unwrap(), 0.into());
    }

    #[test]
    fn ikrt_domain_errors() {
        assert!(matches!(ikrt(&(-1).into(), 2), Err(Error::Domain(_))));
        assert!(matches!(ikrt(&4.into(), 0), Err(Error::Domain(_))));
    }

    #[test]
    fn perfect_powers() {
        assert_eq!(is_perfect_kth_power(&36.into(), 3).unwrap(), None);
        // 2^3 * 4 + 2^2
        assert_eq!(is_perfect_kth_power(&(8 * 4 + 4).into(), 3).unwrap(), None);
        assert_eq!(is_perfect_kth_power(&1.into(), 7).unwrap(), Some(1.into()));
        assert_eq!(is_perfect_kth_power(&243.into(), 5).unwrap(), Some(3.into()));
    }

    #[test]
    fn valuations() {
        assert_eq!(padic_valuation(&40.into(), 2).unwrap(), 3);
        // l^(k-1) * (l*n + sum x) with l=2, k=2, n=1, xs=(0,1)
        assert_eq!(padic_valuation(&(2 * (2 + 1)).into(), 2).unwrap(), 1);
        assert_eq!(padic_valuation(&9.into(), 2).unwrap(), 0);
        assert_eq!(padic_valuation(&(-24).into(), 2).unwrap(), 3);
        assert!(padic_valuation(&0.into(), 2).is_err());
        assert!(padic_valuation(&8.into(), 4).is_err());
    }

    #[test]
    fn factors() {
        assert_eq!(prime_factors(1), Vec::<u64>::new());
        assert_eq!(prime_factors(12), vec![2, 3]);
        assert_eq!(prime_factors(97), vec![97]);
    }

    proptest! {
        #[test]
        fn floor_is_floor_division(p in -10_000i64..10_000, d in 1i64..500) {
            let z = floor_rat(&q(p, d));
            prop_assert!(&z * BigInt::from(d) <= BigInt::from(p));
            prop_assert!(BigInt::from(p) < (&z + 1) * BigInt::from(d));
        }

        #[test]
        fn ikrt_brackets(bytes in proptest::collection::vec(any::<u8>(), 0..32), k in 1u32..=64) {
            let n = BigInt::from_bytes_le(Sign::Plus, &bytes);
            let r = ikrt(&n, k).unwrap();
            prop_assert!(Pow::pow(&r, k) <= n);
            prop_assert!(Pow::pow(&(&r + BigInt::one()), k) > n);
        }

        #[test]
        fn valuation_is_additive(a in 1i64..100_000, b in -100_000i64..100_000, p in prop::sample::select(vec![2u64, 3, 5, 7, 11])) {
            prop_assume!(b != 0);
            let (a, b) = (BigInt::from(a), BigInt::from(b));
            prop_assert_eq!(
                padic_valuation(&(&a * &b), p).unwrap(),
                padic_valuation(&a, p).unwrap() + padic_valuation(&b, p).unwrap()
            );
        }
    }
}
