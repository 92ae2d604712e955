use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, Zero};

use super::arith::ikrt_unsigned;
use crate::{Error, Result};

/// `coeff * radicand^(1/degree)` with a nonnegative integer radicand.
///
/// Degree 1 is the rational embedding; such terms are stored as
/// `(coeff * radicand) * 1^(1/1)` so that a sum has at most one of them.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RadicalTerm {
    coeff: BigRational,
    radicand: BigUint,
    degree: u32,
}

impl RadicalTerm {
    pub fn new(coeff: BigRational, radicand: BigUint, degree: u32) -> Result<Self> {
        if degree == 0 {
            return Err(Error::domain("root degree must be at least 1"));
        }
        Ok(Self::canonical(coeff, radicand, degree))
    }

    /// `coeff * radicand^(1/degree)` from a signed radicand.
    pub fn from_int(coeff: BigRational, radicand: &BigInt, degree: u32) -> Result<Self> {
        if radicand.is_negative() {
            return Err(Error::domain(format!("negative radicand {radicand}")));
        }
        Self::new(coeff, radicand.magnitude().clone(), degree)
    }

    /// `radicand^(1/degree)` with unit coefficient.
    pub fn root(radicand: &BigInt, degree: u32) -> Result<Self> {
        Self::from_int(BigRational::one(), radicand, degree)
    }

    pub fn rational(q: BigRational) -> Self {
        RadicalTerm {
            coeff: q,
            radicand: BigUint::one(),
            degree: 1,
        }
    }

    fn canonical(coeff: BigRational, radicand: BigUint, degree: u32) -> Self {
        if radicand.is_zero() {
            return Self::rational(BigRational::zero());
        }
        if degree == 1 || radicand.is_one() {
            let r = BigRational::from_integer(BigInt::from_biguint(Sign::Plus, radicand));
            return Self::rational(coeff * r);
        }
        RadicalTerm {
            coeff,
            radicand,
            degree,
        }
    }

    pub fn coeff(&self) -> &BigRational {
        &self.coeff
    }

    pub fn radicand(&self) -> &BigUint {
        &self.radicand
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_constant(&self) -> bool {
        self.degree == 1
    }

    fn key(&self) -> (u32, &BigUint) {
        (self.degree, &self.radicand)
    }
}

/// Rewrites `coeff * radicand^(1/k)` for a rational radicand `p/q` as a term
/// with an integer radicand.
///
/// If `q = s^k` the result is `(coeff/s) * p^(1/k)`, otherwise
/// `(coeff/q) * (p * q^(k-1))^(1/k)`.
pub fn normalize_radical(coeff: &BigRational, radicand: &BigRational, k: u32) -> Result<RadicalTerm> {
    if radicand.is_negative() {
        return Err(Error::domain(format!("negative radicand {radicand}")));
    }
    if k == 0 {
        return Err(Error::domain("root degree must be at least 1"));
    }
    let p = radicand.numer().magnitude();
    let q = radicand.denom().magnitude();
    let s = ikrt_unsigned(q, k);
    if Pow::pow(&s, k) == *q {
        let s = BigRational::from_integer(BigInt::from_biguint(Sign::Plus, s));
        return RadicalTerm::new(coeff / s, p.clone(), k);
    }
    let scaled = p * Pow::pow(q, k - 1);
    let q = BigRational::from_integer(BigInt::from_biguint(Sign::Plus, q.clone()));
    RadicalTerm::new(coeff / q, scaled, k)
}

/// The exact value of `t` when its radicand is a perfect `degree`-th power.
pub fn radical_rationality(t: &RadicalTerm) -> Option<BigRational> {
    if t.degree == 1 {
        return Some(t.coeff.clone());
    }
    let r = ikrt_unsigned(&t.radicand, t.degree);
    (Pow::pow(&r, t.degree) == t.radicand)
        .then(|| &t.coeff * BigRational::from_integer(BigInt::from_biguint(Sign::Plus, r)))
}

/// Finite sum of [`RadicalTerm`]s, sorted by `(degree, radicand)` with like
/// terms merged and zero terms dropped.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct RadicalSum {
    terms: Vec<RadicalTerm>,
}

impl RadicalSum {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_rational(q: BigRational) -> Self {
        Self::from_terms([RadicalTerm::rational(q)])
    }

    pub fn from_terms(terms: impl IntoIterator<Item = RadicalTerm>) -> Self {
        let mut terms: Vec<RadicalTerm> = terms.into_iter().collect();
        terms.sort_by(|a, b| a.key().cmp(&b.key()));
        let mut merged: Vec<RadicalTerm> = Vec::with_capacity(terms.len());
        for t in terms {
            match merged.last_mut() {
                Some(last) if last.key() == t.key() => last.coeff += t.coeff,
                _ => merged.push(t),
            }
        }
        merged.retain(|t| !t.coeff.is_zero());
        RadicalSum { terms: merged }
    }

    pub fn terms(&self) -> &[RadicalTerm] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The value, if the sum has no radical terms at all (no perfect-power
    /// detection is done here; see [`radical_rationality`]).
    pub fn as_rational(&self) -> Option<BigRational> {
        match self.terms.as_slice() {
            [] => Some(BigRational::zero()),
            [t] if t.is_constant() => Some(t.coeff.clone()),
            _ => None,
        }
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        Self::from_terms(self.terms.iter().map(|t| RadicalTerm {
            coeff: &t.coeff * q,
            ..t.clone()
        }))
    }
}

impl From<RadicalTerm> for RadicalSum {
    fn from(t: RadicalTerm) -> Self {
        Self::from_terms([t])
    }
}

impl Add for &RadicalSum {
    type Output = RadicalSum;

    fn add(self, rhs: &RadicalSum) -> RadicalSum {
        RadicalSum::from_terms(self.terms.iter().chain(&rhs.terms).cloned())
    }
}

impl Add for RadicalSum {
    type Output = RadicalSum;

    fn add(self, rhs: RadicalSum) -> RadicalSum {
        RadicalSum::from_terms(self.terms.into_iter().chain(rhs.terms))
    }
}

impl Neg for &RadicalSum {
    type Output = RadicalSum;

    fn neg(self) -> RadicalSum {
        self.scale(&-BigRational::one())
    }
}

impl Neg for RadicalSum {
    type Output = RadicalSum;

    fn neg(self) -> RadicalSum {
        -&self
    }
}

impl Sub for &RadicalSum {
    type Output = RadicalSum;

    fn sub(self, rhs: &RadicalSum) -> RadicalSum {
        self + &(-rhs)
    }
}

impl Sub for RadicalSum {
    type Output = RadicalSum;

    fn sub(self, rhs: RadicalSum) -> RadicalSum {
        &self - &rhs
    }
}

impl Mul<&BigRational> for &RadicalSum {
    type Output = RadicalSum;

    fn mul(self, rhs: &BigRational) -> RadicalSum {
        self.scale(rhs)
    }
}

impl fmt::Display for RadicalTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_constant() {
            return write!(f, "{}", self.coeff);
        }
        if !self.coeff.is_one() {
            write!(f, "{}*", self.coeff)?;
        }
        write!(f, "root({},{})", self.degree, self.radicand)
    }
}

impl fmt::Display for RadicalSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}
