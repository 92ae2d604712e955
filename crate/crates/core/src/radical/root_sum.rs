use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, Zero};
use serde::Serialize;

use crate::exact::arith::prime_factors;
use crate::exact::{
    floor_radical_sum, ikrt, is_perfect_kth_power, sign_radical_sum, Precision, RadicalSum,
    RadicalTerm,
};
use crate::{Error, Mode, Result};

/// `floor(sum (n + x_i)^(1/k))` against `floor(l (n + S/l)^(1/k))` with
/// `S = sum x_i`, for a fixed `l = xs.len()` and `k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RootSumInstance {
    pub l: u64,
    pub k: u32,
    #[serde(serialize_with = "ser_ints")]
    pub xs: Vec<BigInt>,
    pub witness: Option<u64>,
    /// `l^(k-1) * sum x_i^2 / 2`
    #[serde(serialize_with = "crate::ser::ratio")]
    pub bound_n: BigRational,
}

fn ser_ints<S: serde::Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

impl RootSumInstance {
    pub fn new(l: u64, k: u32, xs: Vec<BigInt>) -> Result<Self> {
        if l == 0 {
            return Err(Error::domain("l must be at least 1"));
        }
        if k == 0 {
            return Err(Error::domain("k must be at least 1"));
        }
        if xs.len() as u64 != l {
            return Err(Error::domain(format!(
                "expected {l} shifts, got {}",
                xs.len()
            )));
        }
        let squares: BigInt = xs.iter().map(|x| x * x).sum();
        let bound_n = BigRational::new(Pow::pow(&BigInt::from(l), k - 1) * squares, 2.into());
        Ok(Self {
            witness: root_sum_witness(l, k, &xs),
            l,
            k,
            xs,
            bound_n,
        })
    }

    pub fn shift_sum(&self) -> BigInt {
        self.xs.iter().sum()
    }

    /// `l^k n + l^(k-1) S`, whose k-th root is the right-hand side.
    pub fn rhs_radicand(&self, n: &BigInt) -> BigInt {
        let l = BigInt::from(self.l);
        Pow::pow(&l, self.k - 1) * (&l * n + self.shift_sum())
    }

    pub fn above_bound(&self, n: &BigInt) -> bool {
        BigRational::from_integer(n.clone()) >= self.bound_n
    }

    fn lhs_sum(&self, n: &BigInt) -> Result<RadicalSum> {
        let terms = self
            .xs
            .iter()
            .map(|x| RadicalTerm::root(&(n + x), self.k))
            .collect::<Result<Vec<_>>>()?;
        Ok(RadicalSum::from_terms(terms))
    }

    /// Domain errors are unconditional; witness and bound failures only
    /// error in checked mode. Returns whether all hypotheses hold.
    fn hypotheses(&self, n: &BigInt, mode: Mode) -> Result<bool> {
        if let Some(x) = self.xs.iter().find(|x| (n + *x).is_negative()) {
            return Err(Error::domain(format!("n + {x} is negative at n = {n}")));
        }
        let mut problems = Vec::new();
        if self.witness.is_none() {
            problems.push("no prime p with p | l, p^k does not divide l, p does not divide the shift sum".to_string());
        }
        if !self.above_bound(n) {
            problems.push(format!("n = {n} is below {}", self.bound_n));
        }
        match (problems.is_empty(), mode) {
            (true, _) => Ok(true),
            (false, Mode::Unchecked) => Ok(false),
            (false, Mode::Checked) => Err(Error::precondition(problems.join("; "))),
        }
    }
}

/// Smallest prime `p` with `p | l`, `p^k` not dividing `l`, and `p` not
/// dividing `sum xs`.
pub fn root_sum_witness(l: u64, k: u32, xs: &[BigInt]) -> Option<u64> {
    let s: BigInt = xs.iter().sum();
    prime_factors(l).into_iter().find(|&p| {
        let pk = p.checked_pow(k);
        let pk_divides = pk.is_some_and(|pk| l % pk == 0);
        !pk_divides && !(&s % p).is_zero()
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RootSumCheck {
    #[serde(serialize_with = "crate::ser::decimal")]
    pub lhs_floor: BigInt,
    #[serde(serialize_with = "crate::ser::decimal")]
    pub rhs_floor: BigInt,
    pub holds: bool,
    pub within_hypotheses: bool,
    /// The right-hand radicand is not a perfect k-th power.
    pub rhs_never_integer: bool,
}

pub fn check_root_sum(
    n: &BigInt,
    inst: &RootSumInstance,
    mode: Mode,
    prec: Precision,
) -> Result<RootSumCheck> {
    let within_hypotheses = inst.hypotheses(n, mode)?;
    let lhs_floor = floor_radical_sum(&inst.lhs_sum(n)?, prec)?;
    let t = inst.rhs_radicand(n);
    let rhs_floor = ikrt(&t, inst.k)?;
    Ok(RootSumCheck {
        holds: lhs_floor == rhs_floor,
        within_hypotheses,
        rhs_never_integer: is_perfect_kth_power(&t, inst.k)?.is_none(),
        lhs_floor,
        rhs_floor,
    })
}

/// Each inequality of the argument, evaluated on one instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RootSumSteps {
    /// `sum (n + x_i)^(1/k) <= (l^k n + l^(k-1) S)^(1/k)`
    pub jensen: bool,
    /// `sum (n + x_i)^(1/k) >= l * (prod (n + x_i))^(1/(lk))`
    pub am_gm: bool,
    /// `l * (prod (n + x_i))^(1/(lk)) >= (l^k n + l^(k-1) S - 1)^(1/k)`
    pub log_bound: bool,
    /// The right-hand radicand is not a k-th power, and no k-th power
    /// lies strictly between it and its predecessor.
    pub never_integer: bool,
}

impl RootSumSteps {
    pub fn all(&self) -> bool {
        self.jensen && self.am_gm && self.log_bound && self.never_integer
    }
}

fn at_least(s: &RadicalSum, prec: Precision) -> Result<bool> {
    Ok(sign_radical_sum(s, prec)? != Ordering::Less)
}

pub fn root_sum_steps(
    n: &BigInt,
    inst: &RootSumInstance,
    mode: Mode,
    prec: Precision,
) -> Result<RootSumSteps> {
    inst.hypotheses(n, mode)?;
    let k = inst.k;
    let lk = u32::try_from(inst.l)
        .ok()
        .and_then(|l| l.checked_mul(k))
        .ok_or_else(|| Error::Unsupported(format!("root degree l*k too large for l = {}", inst.l)))?;
    let lhs = inst.lhs_sum(n)?;
    let t = inst.rhs_radicand(n);
    let rhs: RadicalSum = RadicalTerm::root(&t, k)?.into();
    let product: BigInt = inst.xs.iter().map(|x| n + x).product();
    let geo: RadicalSum = RadicalTerm::from_int(BigInt::from(inst.l).into(), &product, lk)?.into();
    let lowered: RadicalSum = RadicalTerm::root(&(&t - 1), k)?.into();

    let never_integer = match inst.witness {
        Some(p) => {
            let m = crate::exact::padic_valuation(&BigInt::from(inst.l), p)?;
            let v = crate::exact::padic_valuation(&t, p)?;
            v == (k - 1) * m && v % k != 0
        }
        None => true,
    } && is_perfect_kth_power(&t, k)?.is_none()
        && consecutive_power_gap(&t, k)?.is_none();

    Ok(RootSumSteps {
        jensen: at_least(&(&rhs - &lhs), prec)?,
        am_gm: at_least(&(&lhs - &geo), prec)?,
        log_bound: at_least(&(&geo - &lowered), prec)?,
        never_integer,
    })
}

/// An integer `a` with `t - 1 < a^k < t`, if any. Consecutive integers
/// leave no room, so this is `None` for every `t >= 1`; kept as a
/// standalone check of the final contradiction.
pub fn consecutive_power_gap(t: &BigInt, k: u32) -> Result<Option<BigInt>> {
    if k == 0 {
        return Err(Error::domain("k must be at least 1"));
    }
    if !t.is_positive() {
        return Err(Error::domain(format!("t must be positive, got {t}")));
    }
    let below = t - BigInt::one();
    let a = ikrt(&below, k)? + BigInt::one();
    let ak: BigInt = Pow::pow(&a, k);
    Ok((ak > below && &ak < t).then_some(a))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| x.into()).collect()
    }

    fn inst(k: u32, xs: &[i64]) -> RootSumInstance {
        RootSumInstance::new(xs.len() as u64, k, ints(xs)).unwrap()
    }

    fn p() -> Precision {
        Precision::default()
    }

    #[test]
    fn witness_examples() {
        assert_eq!(root_sum_witness(2, 2, &ints(&[0, 1])), Some(2));
        assert_eq!(root_sum_witness(3, 2, &ints(&[0, 1, 2])), None);
        assert_eq!(root_sum_witness(3, 2, &ints(&[0, 1, 3])), Some(3));
        assert_eq!(root_sum_witness(4, 2, &ints(&[0, 1, 2, 4])), None);
        assert_eq!(root_sum_witness(6, 2, &ints(&[0, 0, 0, 0, 0, 3])), Some(2));
        assert_eq!(root_sum_witness(1, 3, &ints(&[5])), None);
    }

    #[test]
    fn check_examples() {
        let i = inst(2, &[0, 1]);
        let r = check_root_sum(&1.into(), &i, Mode::Checked, p()).unwrap();
        assert!(r.holds && r.within_hypotheses && r.rhs_never_integer);
        assert_eq!(r.rhs_floor, 2.into());

        let i = inst(2, &[0, 1, 3]);
        assert_eq!(i.rhs_radicand(&15.into()), 147.into());
        let r = check_root_sum(&15.into(), &i, Mode::Checked, p()).unwrap();
        assert_eq!((r.lhs_floor.clone(), r.rhs_floor.clone()), (12.into(), 12.into()));
        assert!(r.holds);

        let i = inst(3, &[0, 1]);
        assert_eq!(i.rhs_radicand(&5.into()), 44.into());
        let r = check_root_sum(&5.into(), &i, Mode::Checked, p()).unwrap();
        assert_eq!((r.lhs_floor.clone(), r.rhs_floor.clone()), (3.into(), 3.into()));
    }

    #[test]
    fn preconditions() {
        let bad = inst(2, &[0, 1, 2]);
        let e = check_root_sum(&100.into(), &bad, Mode::Checked, p()).unwrap_err();
        assert!(matches!(e, Error::Precondition(_)));
        let r = check_root_sum(&100.into(), &bad, Mode::Unchecked, p()).unwrap();
        assert!(!r.within_hypotheses);
        assert!(matches!(
            root_sum_steps(&100.into(), &bad, Mode::Checked, p()),
            Err(Error::Precondition(_))
        ));

        let i = inst(2, &[0, 1, 3]);
        assert_eq!(i.bound_n, BigRational::new(15.into(), 1.into()));
        assert!(check_root_sum(&14.into(), &i, Mode::Checked, p()).is_err());
        let r = check_root_sum(&14.into(), &i, Mode::Unchecked, p()).unwrap();
        assert!(!r.within_hypotheses);

        let neg = inst(2, &[-3, 1]);
        assert!(matches!(
            check_root_sum(&2.into(), &neg, Mode::Unchecked, p()),
            Err(Error::Domain(_))
        ));
        assert!(RootSumInstance::new(2, 2, ints(&[1])).is_err());
    }

    #[test]
    fn step_examples() {
        let all = RootSumSteps { jensen: true, am_gm: true, log_bound: true, never_integer: true };
        assert_eq!(root_sum_steps(&15.into(), &inst(2, &[0, 1, 3]), Mode::Checked, p()).unwrap(), all);
        assert_eq!(root_sum_steps(&1.into(), &inst(2, &[0, 1]), Mode::Checked, p()).unwrap(), all);
    }

    // Negative shifts can break the log bound step above the bound while the
    // identity still holds: 178 * 168 * 183 < (176 + 2/9)^3.
    #[test]
    fn log_bound_fails_with_negative_shift() {
        let i = inst(2, &[2, -8, 7]);
        let n = BigInt::from(176);
        assert!(i.above_bound(&n));
        let s = root_sum_steps(&n, &i, Mode::Checked, p()).unwrap();
        assert!(s.jensen && s.am_gm && s.never_integer && !s.log_bound);
        assert!(check_root_sum(&n, &i, Mode::Checked, p()).unwrap().holds);
    }

    #[test]
    fn equal_shifts_are_exact_equalities() {
        let i = inst(3, &[2, 2, 2, 2, 2, 3]);
        let n = BigInt::from(20_000);
        let s = root_sum_steps(&n, &i, Mode::Checked, p()).unwrap();
        assert!(s.jensen && s.am_gm);
        let eq = inst(2, &[1, 1]);
        let u = root_sum_steps(&3.into(), &eq, Mode::Unchecked, p()).unwrap();
        assert!(u.jensen && u.am_gm);
    }

    #[test]
    fn no_power_between_consecutive() {
        for t in 1..3000i64 {
            for k in 1..6 {
                assert_eq!(consecutive_power_gap(&t.into(), k).unwrap(), None);
            }
        }
        assert!(consecutive_power_gap(&0.into(), 2).is_err());
    }

    proptest! {
        #[test]
        fn witness_valuation(l in 1u64..40, k in 1u32..7, xs_seed in proptest::collection::vec(-10i64..=10, 40), n in 0i64..10_000) {
            let xs = ints(&xs_seed[..l as usize]);
            if let Some(p) = root_sum_witness(l, k, &xs) {
                let i = RootSumInstance::new(l, k, xs).unwrap();
                let t = i.rhs_radicand(&n.into());
                prop_assume!(!t.is_zero());
                let m = crate::exact::padic_valuation(&BigInt::from(l), p).unwrap();
                let v = crate::exact::padic_valuation(&t, p).unwrap();
                prop_assert_eq!(v, (k - 1) * m);
                prop_assert!(v % k != 0);
                prop_assert!(is_perfect_kth_power(&t, k).unwrap().is_none());
            }
        }

        #[test]
        fn holds_above_bound(l in 2u64..=5, k in 2u32..=4, xs_seed in proptest::collection::vec(-6i64..=6, 5), offset in 0i64..200) {
            let i = RootSumInstance::new(l, k, ints(&xs_seed[..l as usize])).unwrap();
            prop_assume!(i.witness.is_some());
            let floor_bound = i.bound_n.ceil().to_integer();
            let min_n = i.xs.iter().map(|x| -x).max().unwrap().max(BigInt::zero());
            let n = floor_bound.max(min_n) + offset;
            let r = check_root_sum(&n, &i, Mode::Checked, p()).unwrap();
            prop_assert!(r.holds);
            prop_assert!(r.rhs_never_integer);
        }
    }
}
