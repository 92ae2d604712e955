use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};

use crate::{Error, Result};

/// Shape of the base function `g`, increasing on its domain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FnKind {
    /// `(a x - b)^k`
    Polynomial { a: BigInt, b: BigInt, k: u32 },
    /// `a^(b x + c)`
    Exponential { a: BigInt, b: BigInt, c: BigInt },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    Increasing,
    Decreasing,
}

/// A strictly monotone function that maps integers to integers.
///
/// The base `g` from [`FnKind`] is increasing on `[domain_low, oo)` (the
/// whole line when `domain_low` is absent, which only odd-degree
/// polynomials allow). The decreasing variant is `f(x) = g(-x)` on
/// `(-oo, -domain_low]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonotoneFnSpec {
    kind: FnKind,
    direction: Direction,
    domain_low: Option<BigInt>,
}

impl MonotoneFnSpec {
    pub fn new(kind: FnKind, direction: Direction, domain_low: Option<BigInt>) -> Result<Self> {
        match &kind {
            FnKind::Polynomial { a, b, k } => {
                if !a.is_positive() || b.is_negative() || *k < 2 {
                    return Err(Error::domain("polynomial needs a >= 1, b >= 0, k >= 2"));
                }
                if k % 2 == 0 {
                    match &domain_low {
                        Some(d) if a * d - b >= BigInt::zero() => {}
                        Some(d) => {
                            return Err(Error::domain(format!(
                                "(a x - b)^{k} is not increasing from x = {d}"
                            )))
                        }
                        None => return Err(Error::domain("even-degree polynomial needs a domain")),
                    }
                }
            }
            FnKind::Exponential { a, b, c } => {
                if *a < BigInt::from(2) || !b.is_positive() || c.is_negative() {
                    return Err(Error::domain("exponential needs a >= 2, b >= 1, c >= 0"));
                }
                match &domain_low {
                    Some(d) if b * d + c >= BigInt::zero() => {}
                    _ => {
                        return Err(Error::domain(
                            "exponential needs a domain on which b x + c >= 0",
                        ))
                    }
                }
            }
        }
        let spec = MonotoneFnSpec {
            kind,
            direction,
            domain_low,
        };
        if let Some(d) = &spec.domain_low {
            if spec.base(d)? >= spec.base(&(d + 1))? {
                return Err(Error::domain("function is not strictly monotone on its domain"));
            }
        }
        Ok(spec)
    }

    /// Increasing `(a x - b)^k`; even `k` defaults to the domain
    /// `[ceil(b/a), oo)`.
    pub fn polynomial(a: impl Into<BigInt>, b: impl Into<BigInt>, k: u32) -> Result<Self> {
        let (a, b) = (a.into(), b.into());
        let domain_low = if k % 2 == 0 && a.is_positive() {
            Some(b.div_ceil(&a))
        } else {
            None
        };
        Self::new(FnKind::Polynomial { a, b, k }, Direction::Increasing, domain_low)
    }

    /// Increasing `a^(b x + c)` on `[0, oo)`.
    pub fn exponential(a: impl Into<BigInt>, b: impl Into<BigInt>, c: impl Into<BigInt>) -> Result<Self> {
        let kind = FnKind::Exponential {
            a: a.into(),
            b: b.into(),
            c: c.into(),
        };
        Self::new(kind, Direction::Increasing, Some(BigInt::zero()))
    }

    pub fn with_domain_low(self, d: impl Into<BigInt>) -> Result<Self> {
        Self::new(self.kind, self.direction, Some(d.into()))
    }

    pub fn with_direction(self, direction: Direction) -> Result<Self> {
        Self::new(self.kind, direction, self.domain_low)
    }

    pub fn kind(&self) -> &FnKind {
        &self.kind
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    pub fn domain_low(&self) -> Option<&BigInt> {
        self.domain_low.as_ref()
    }

    /// Integer bounds `(low, high)` of the domain of `f`.
    fn bounds(&self) -> (Option<BigInt>, Option<BigInt>) {
        match self.direction {
            Direction::Increasing => (self.domain_low.clone(), None),
            Direction::Decreasing => (None, self.domain_low.as_ref().map(|d| -d)),
        }
    }

    pub fn in_domain(&self, x: &BigInt) -> bool {
        let (lo, hi) = self.bounds();
        lo.map_or(true, |lo| x >= &lo) && hi.map_or(true, |hi| x <= &hi)
    }

    fn base(&self, x: &BigInt) -> Result<BigInt> {
        Ok(match &self.kind {
            FnKind::Polynomial { a, b, k } => Pow::pow(&(a * x - b), *k),
            FnKind::Exponential { a, b, c } => {
                let e = (b * x + c)
                    .to_u32()
                    .ok_or_else(|| Error::domain("exponent out of range"))?;
                Pow::pow(a, e)
            }
        })
    }

    pub fn eval(&self, x: &BigInt) -> Result<BigInt> {
        if !self.in_domain(x) {
            return Err(Error::domain(format!("{x} is outside the domain")));
        }
        match self.direction {
            Direction::Increasing => self.base(x),
            Direction::Decreasing => self.base(&-x),
        }
    }

    /// Whether `v` lies in the image of the real domain, i.e. `f^-1(v)`
    /// exists.
    pub fn range_contains(&self, v: &BigInt) -> Result<bool> {
        Ok(match &self.domain_low {
            Some(d) => v >= &self.base(d)?,
            None => true,
        })
    }
}

/// Residues of `f` on the integers of its domain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidueProfile {
    pub modulus: u64,
    pub attained: BTreeSet<u64>,
    pub avoided: BTreeSet<u64>,
}

impl ResidueProfile {
    fn from_attained(modulus: u64, attained: BTreeSet<u64>) -> Self {
        let avoided = (0..modulus).filter(|r| !attained.contains(r)).collect();
        ResidueProfile {
            modulus,
            attained,
            avoided,
        }
    }

    pub fn residue(&self, y: &BigInt) -> u64 {
        y.mod_floor(&BigInt::from(self.modulus))
            .to_u64()
            .expect("residue below modulus")
    }

    /// First `y` in `lo..=hi` whose residue is attained.
    pub fn first_attained_in(&self, lo: &BigInt, hi: &BigInt) -> Option<BigInt> {
        let mut y = lo.clone();
        while &y <= hi {
            if self.attained.contains(&self.residue(&y)) {
                return Some(y);
            }
            if &y - lo >= BigInt::from(self.modulus) {
                break;
            }
            y += 1;
        }
        None
    }
}

/// `{ f(x) mod modulus : x in domain }`.
///
/// Polynomials are enumerated over one period of consecutive domain
/// integers. Exponentials need `modulus = a^m`; exponents below `m` are
/// enumerated and residue 0 covers the rest.
pub fn residue_scan(f: &MonotoneFnSpec, modulus: u64) -> Result<ResidueProfile> {
    if modulus < 2 {
        return Err(Error::domain("modulus must exceed 1"));
    }
    let n = BigInt::from(modulus);
    let mut attained = BTreeSet::new();
    match &f.kind {
        FnKind::Polynomial { .. } => {
            let start = match f.bounds() {
                (Some(lo), _) => lo,
                (None, Some(hi)) => hi - &n + 1,
                (None, None) => BigInt::zero(),
            };
            for i in 0..modulus {
                let v = f.eval(&(&start + BigInt::from(i)))?;
                attained.insert(v.mod_floor(&n).to_u64().expect("residue below modulus"));
            }
        }
        FnKind::Exponential { a, b, c } => {
            let m = exact_log(a, &n).ok_or_else(|| {
                Error::Unsupported(format!("modulus {modulus} is not a power of the base {a}"))
            })?;
            let mut x = f.domain_low.clone().expect("exponential has a domain");
            loop {
                let e = b * &x + c;
                if e >= BigInt::from(m) {
                    break;
                }
                let e = e.to_u32().expect("exponent below m");
                attained.insert(Pow::pow(a, e).mod_floor(&n).to_u64().expect("residue below modulus"));
                x += 1;
            }
            attained.insert(0);
        }
    }
    Ok(ResidueProfile::from_attained(modulus, attained))
}

fn exact_log(base: &BigInt, n: &BigInt) -> Option<u32> {
    let mut p = BigInt::one();
    let mut m = 0;
    while &p < n {
        p *= base;
        m += 1;
    }
    (&p == n).then_some(m)
}

/// Largest `x` in `[lo, hi]` with `ok(x)`, for `ok` true below some
/// threshold and false above it. Brackets by doubling, then bisects.
fn max_satisfying(
    lo: Option<BigInt>,
    hi: Option<BigInt>,
    ok: impl Fn(&BigInt) -> Result<bool>,
) -> Result<Option<BigInt>> {
    let mut low = match lo {
        Some(lo) => {
            if !ok(&lo)? {
                return Ok(None);
            }
            lo
        }
        None => {
            let start = hi.clone().unwrap_or_else(BigInt::zero);
            let mut step = BigInt::one();
            let mut x = start;
            while !ok(&x)? {
                x -= &step;
                step <<= 1;
            }
            x
        }
    };
    let mut high = match hi {
        Some(hi) => {
            if ok(&hi)? {
                return Ok(Some(hi));
            }
            hi
        }
        None => {
            let mut step = BigInt::one();
            let mut x = &low + 1;
            while ok(&x)? {
                low = x.clone();
                x += &step;
                step <<= 1;
            }
            x
        }
    };
    // ok(low) && !ok(high)
    while &high - &low > BigInt::one() {
        let mid: BigInt = (&low + &high) >> 1;
        if ok(&mid)? {
            low = mid;
        } else {
            high = mid;
        }
    }
    Ok(Some(low))
}

/// `floor(f^-1(v))` by integer bracketing and bisection on `f`.
///
/// Increasing: the `c` with `f(c) <= v < f(c+1)`. Decreasing: the `c` with
/// `f(c+1) < v <= f(c)`.
pub fn floor_inverse(f: &MonotoneFnSpec, v: &BigInt) -> Result<BigInt> {
    if !f.range_contains(v)? {
        return Err(Error::domain(format!("{v} is outside the range of f")));
    }
    let (lo, hi) = f.bounds();
    let found = match f.direction {
        Direction::Increasing => max_satisfying(lo, hi, |x| Ok(&f.eval(x)? <= v))?,
        Direction::Decreasing => max_satisfying(lo, hi, |x| Ok(&f.eval(x)? >= v))?,
    };
    found.ok_or_else(|| Error::domain(format!("{v} is outside the range of f")))
}

/// Floors of `f^-1` along one block of consecutive arguments.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainCheck {
    pub k: BigInt,
    pub values: Vec<(BigInt, BigInt)>,
    pub holds: bool,
}

/// Evaluates `floor(f^-1(v))` for `v = k*modulus + a - 1 ..= k*modulus + b`
/// (decreasing: `k*modulus + a ..= k*modulus + b + 1`), given that `f` avoids
/// every residue of `a..=b`.
pub fn check_inverse_chain(
    f: &MonotoneFnSpec,
    modulus: u64,
    a: &BigInt,
    b: &BigInt,
    k: &BigInt,
) -> Result<ChainCheck> {
    if a > b {
        return Err(Error::precondition(format!("empty residue window {a}..{b}")));
    }
    let profile = residue_scan(f, modulus)?;
    if let Some(y) = profile.first_attained_in(a, b) {
        return Err(Error::precondition(format!(
            "f attains residue {} (mod {modulus}) inside {a}..{b}",
            profile.residue(&y)
        )));
    }
    let base = k * BigInt::from(modulus);
    let (first, last) = match f.direction {
        Direction::Increasing => (&base + a - 1, &base + b),
        Direction::Decreasing => (&base + a, &base + b + 1),
    };
    let mut values = Vec::new();
    let mut v = first;
    while v <= last {
        if !f.range_contains(&v)? {
            return Err(Error::precondition(format!("chain argument {v} is outside the range of f")));
        }
        let c = floor_inverse(f, &v)?;
        values.push((v.clone(), c));
        v += 1;
    }
    let holds = values.windows(2).all(|w| w[0].1 == w[1].1);
    Ok(ChainCheck {
        k: k.clone(),
        values,
        holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{floor_radical_sum, Precision, RadicalSum, RadicalTerm, Rational};
    use proptest::prelude::*;

    fn set(xs: &[u64]) -> BTreeSet<u64> {
        xs.iter().copied().collect()
    }

    #[test]
    fn validation() {
        assert!(MonotoneFnSpec::polynomial(0, 1, 2).is_err());
        assert!(MonotoneFnSpec::polynomial(2, 1, 1).is_err());
        assert!(MonotoneFnSpec::polynomial(2, 1, 2).unwrap().with_domain_low(0).is_err());
        assert!(MonotoneFnSpec::polynomial(2, 1, 3).unwrap().domain_low().is_none());
        assert!(MonotoneFnSpec::exponential(1, 1, 0).is_err());
        assert!(MonotoneFnSpec::exponential(2, 1, 0).unwrap().with_domain_low(-1).is_err());
    }

    #[test]
    fn square_residues_mod_4() {
        let f = MonotoneFnSpec::polynomial(2, 1, 2).unwrap();
        let p = residue_scan(&f, 4).unwrap();
        assert_eq!(p.attained, set(&[1]));
        assert_eq!(p.avoided, set(&[0, 2, 3]));
    }

    #[test]
    fn cube_residues_mod_9() {
        for a in 1..6 {
            for b in 0..6 {
                let f = MonotoneFnSpec::polynomial(a, b, 3).unwrap();
                let p = residue_scan(&f, 9).unwrap();
                assert!(p.attained.is_subset(&set(&[0, 1, 8])), "a={a} b={b}");
            }
        }
    }

    #[test]
    fn exponential_residues() {
        let f = MonotoneFnSpec::exponential(2, 1, 1).unwrap();
        let p = residue_scan(&f, 4).unwrap();
        assert_eq!(p.attained, set(&[0, 2]));
        assert_eq!(p.avoided, set(&[1, 3]));
        assert!(matches!(residue_scan(&f, 6), Err(Error::Unsupported(_))));
    }

    #[test]
    fn floor_inverse_examples() {
        let f = MonotoneFnSpec::polynomial(2, 1, 2).unwrap().with_domain_low(1).unwrap();
        assert_eq!(floor_inverse(&f, &17.into()).unwrap(), 2.into());
        assert_eq!(floor_inverse(&f, &25.into()).unwrap(), 3.into());
        assert!(floor_inverse(&f, &0.into()).is_err());
        let g = MonotoneFnSpec::exponential(2, 1, 1).unwrap();
        assert_eq!(floor_inverse(&g, &6.into()).unwrap(), 1.into());
        assert_eq!(floor_inverse(&g, &2.into()).unwrap(), 0.into());
        assert!(floor_inverse(&g, &1.into()).is_err());
    }

    #[test]
    fn floor_inverse_odd_on_whole_line() {
        // (x - 0)^3: floor(cbrt(v)) for negative v rounds down
        let f = MonotoneFnSpec::polynomial(1, 0, 3).unwrap();
        assert_eq!(floor_inverse(&f, &(-9).into()).unwrap(), (-3).into());
        assert_eq!(floor_inverse(&f, &(-8).into()).unwrap(), (-2).into());
        assert_eq!(floor_inverse(&f, &26.into()).unwrap(), 2.into());
    }

    #[test]
    fn floor_inverse_decreasing() {
        // f(x) = (2(-x) - 1)^2 on x <= -1; f^-1(v) = -(1 + sqrt v)/2
        let f = MonotoneFnSpec::polynomial(2, 1, 2)
            .unwrap()
            .with_domain_low(1)
            .unwrap()
            .with_direction(Direction::Decreasing)
            .unwrap();
        // -(1 + sqrt 17)/2 = -2.56
        assert_eq!(floor_inverse(&f, &17.into()).unwrap(), (-3).into());
        assert_eq!(floor_inverse(&f, &25.into()).unwrap(), (-3).into());
        assert_eq!(floor_inverse(&f, &1.into()).unwrap(), (-1).into());
        for v in 1..400i64 {
            let v = BigInt::from(v);
            let c = floor_inverse(&f, &v).unwrap();
            assert!(f.eval(&c).unwrap() >= v);
            if f.in_domain(&(&c + 1)) {
                assert!(f.eval(&(&c + 1)).unwrap() < v);
            }
        }
    }

    #[test]
    fn chains() {
        let f = MonotoneFnSpec::polynomial(2, 1, 2).unwrap().with_domain_low(1).unwrap();
        for n in 1..200 {
            let c = check_inverse_chain(&f, 4, &2.into(), &2.into(), &n.into()).unwrap();
            assert!(c.holds);
            assert_eq!(c.values.len(), 2);
            assert_eq!(c.values[0].0, BigInt::from(4 * n + 1));
        }
        let g = MonotoneFnSpec::polynomial(2, 3, 2).unwrap();
        let c = check_inverse_chain(&g, 4, &2.into(), &3.into(), &5.into()).unwrap();
        assert!(c.holds);
        assert_eq!(c.values.iter().map(|v| v.1.clone()).collect::<Vec<_>>(), vec![3.into(); 3]);
        let err = check_inverse_chain(&f, 4, &1.into(), &2.into(), &5.into()).unwrap_err();
        assert!(matches!(err, Error::Precondition(m) if m.contains("residue 1")));
    }

    #[test]
    fn decreasing_chain_window() {
        let f = MonotoneFnSpec::polynomial(1, 0, 3)
            .unwrap()
            .with_direction(Direction::Decreasing)
            .unwrap();
        let c = check_inverse_chain(&f, 9, &2.into(), &7.into(), &3.into()).unwrap();
        let args: Vec<BigInt> = c.values.iter().map(|v| v.0.clone()).collect();
        assert_eq!(args.first(), Some(&BigInt::from(29)));
        assert_eq!(args.last(), Some(&BigInt::from(35)));
        assert!(c.holds);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]
        #[test]
        fn floor_inverse_matches_closed_form(a in 1i64..9, b in 0i64..20, k in 2u32..6, v in 0u64..10_000_000) {
            let f = MonotoneFnSpec::polynomial(a, b, k).unwrap();
            let v = BigInt::from(v);
            prop_assume!(f.range_contains(&v).unwrap());
            // (b + v^(1/k)) / a
            let root = RadicalTerm::new(Rational::new(1.into(), a.into()), v.magnitude().clone(), k).unwrap();
            let s = RadicalSum::from(root) + RadicalSum::from_rational(Rational::new(b.into(), a.into()));
            let expected = floor_radical_sum(&s, Precision::default()).unwrap();
            prop_assert_eq!(floor_inverse(&f, &v).unwrap(), expected);
        }

        #[test]
        fn exponential_floor_inverse_brackets(a in 2i64..6, b in 1i64..4, c in 0i64..4, v in 1u64..1_000_000) {
            let f = MonotoneFnSpec::exponential(a, b, c).unwrap();
            let v = BigInt::from(v);
            prop_assume!(f.range_contains(&v).unwrap());
            let x = floor_inverse(&f, &v).unwrap();
            prop_assert!(f.eval(&x).unwrap() <= v);
            prop_assert!(f.eval(&(&x + 1)).unwrap() > v);
        }
    }
}
