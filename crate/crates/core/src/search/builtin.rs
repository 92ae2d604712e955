use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::report::{Bindings, CheckReport, Counterexample};
use super::sweep::{derive_status, sweep, Coord, Outcome, SweepOptions};
use crate::checkers::{
    check_cbrt_chain, check_inverse_chain, check_log_chain, check_sqrt_chain, halving_series,
    hermite_scaled_sides, hermite_sides, nested_floor_series, ramanujan_shifted_sqrt_sides, ramanujan_sixths_sides, residue_scan,
    Direction, FloorChain, MonotoneFnSpec,
};
use crate::exact::floor_rat;
use crate::radical::{
    check_midpoint_floor_stable, check_root_pair, check_root_pair_sandwich, check_root_sum, ramanujan_sqrt_pair_sides,
    root_sum_steps, scan_root_pairs, RootSumInstance,
};
use crate::{Error, Mode, Result};

pub const BUILTIN_IDS: [&str; 14] = [
    "eq1",
    "eq2",
    "eq3",
    "hermite",
    "prop1",
    "corollary5",
    "corollary6",
    "corollary7",
    "corollary8",
    "corollary9",
    "prop2_chain",
    "theorem3",
    "theorem4",
    "lemmas",
];

/// Grid variables (with the value used when neither ranged nor fixed) and
/// scalar parameters (with defaults) of one builtin.
struct Decl {
    coords: &'static [(&'static str, Option<i64>)],
    params: &'static [(&'static str, &'static str)],
}

fn decl(id: &str) -> Option<Decl> {
    let d = |coords, params| Some(Decl { coords, params });
    match id {
        "eq1" | "eq2" | "eq3" => d(&[("n", None)], &[]),
        "hermite" => d(&[("t", None), ("b", Some(5))], &[("den", "12")]),
        "prop1" => d(&[("x", None), ("a", None), ("b", Some(3))], &[("den", "1")]),
        "corollary5" => d(&[("x", None), ("n", Some(2))], &[("den", "1")]),
        "corollary6" => d(&[("m", None)], &[]),
        "corollary7" => d(&[("n", None), ("a", Some(1)), ("b", Some(1))], &[("unchecked", "0")]),
        "corollary8" => d(&[("n", None), ("a", Some(1)), ("b", Some(1))], &[]),
        "corollary9" => d(
            &[("n", None), ("a", Some(2)), ("b", Some(1)), ("c", Some(0)), ("m", Some(2))],
            &[("unchecked", "0")],
        ),
        "prop2_chain" => d(
            &[("k", None)],
            &[
                ("fn", "poly"),
                ("a", "2"),
                ("b", "1"),
                ("deg", "2"),
                ("c", "0"),
                ("direction", "inc"),
                ("modulus", "4"),
                ("from", "2"),
                ("to", "3"),
            ],
        ),
        "theorem3" => d(&[("k", None), ("n", None)], &[("candidates", "0")]),
        "theorem4" => d(
            &[("n", None)],
            &[("l", ""), ("k", "2"), ("xs", ""), ("unchecked", "0"), ("steps", "0")],
        ),
        "lemmas" => d(&[("n", None), ("k", None)], &[]),
        _ => None,
    }
}

enum Src {
    Swept(usize),
    Fixed(BigInt),
}

/// Resolved inputs: which grid variable comes from where, and the scalar
/// parameter values.
struct Layout {
    coords: Vec<Coord>,
    sources: Vec<Src>,
    params: BTreeMap<&'static str, String>,
    shown: Bindings,
}

impl Layout {
    fn values(&self, point: &[BigInt]) -> Vec<BigInt> {
        self.sources
            .iter()
            .map(|s| match s {
                Src::Swept(i) => point[*i].clone(),
                Src::Fixed(v) => v.clone(),
            })
            .collect()
    }

    fn param(&self, name: &str) -> &str {
        &self.params[name]
    }

    fn int(&self, name: &str) -> Result<BigInt> {
        parse_int(name, self.param(name))
    }

    fn flag(&self, name: &str) -> Result<bool> {
        match self.param(name) {
            "0" | "false" | "no" => Ok(false),
            "1" | "true" | "yes" => Ok(true),
            v => Err(Error::Usage(format!("parameter {name} must be 0/1 or true/false, got '{v}'"))),
        }
    }

    fn mode(&self) -> Result<Mode> {
        Ok(if self.flag("unchecked")? { Mode::Unchecked } else { Mode::Checked })
    }

    /// Values the named grid variable takes.
    fn span(&self, idx: usize) -> (BigInt, BigInt) {
        match &self.sources[idx] {
            Src::Swept(i) => (self.coords[*i].lo.clone(), self.coords[*i].hi.clone()),
            Src::Fixed(v) => (v.clone(), v.clone()),
        }
    }
}

fn parse_int(name: &str, v: &str) -> Result<BigInt> {
    v.trim()
        .parse()
        .map_err(|_| Error::Usage(format!("parameter {name} must be an integer, got '{v}'")))
}

fn resolve(id: &str, d: &Decl, params: &[(String, String)], ranges: &[Coord]) -> Result<Layout> {
    for (k, _) in params {
        let known = d.coords.iter().any(|(c, _)| c == k) || d.params.iter().any(|(p, _)| p == k);
        if !known {
            return Err(Error::Usage(format!("unknown parameter '{k}' for {id}")));
        }
    }
    for r in ranges {
        if !d.coords.iter().any(|(c, _)| *c == r.name) {
            return Err(Error::Usage(format!("{id} has no range variable '{}'", r.name)));
        }
    }
    let given = |name: &str| params.iter().rev().find(|(k, _)| k == name).map(|(_, v)| v.as_str());
    let mut coords = Vec::new();
    let mut sources = Vec::new();
    let mut shown = Vec::new();
    for (name, default) in d.coords {
        let ranged: Vec<&Coord> = ranges.iter().filter(|r| r.name == *name).collect();
        match (ranged.as_slice(), given(name)) {
            ([_, _, ..], _) => return Err(Error::Usage(format!("range for '{name}' given twice"))),
            ([_], Some(_)) => return Err(Error::Usage(format!("'{name}' given as both a range and a parameter"))),
            ([r], None) => {
                sources.push(Src::Swept(coords.len()));
                coords.push((*r).clone());
            }
            ([], Some(v)) => {
                let v = parse_int(name, v)?;
                shown.push((name.to_string(), v.to_string()));
                sources.push(Src::Fixed(v));
            }
            ([], None) => match default {
                Some(v) => {
                    shown.push((name.to_string(), v.to_string()));
                    sources.push(Src::Fixed((*v).into()));
                }
                None => return Err(Error::Usage(format!("{id} needs --range {name}=LO..HI"))),
            },
        }
    }
    let mut resolved = BTreeMap::new();
    for (name, default) in d.params {
        let v = given(name).unwrap_or(default).to_string();
        shown.push((name.to_string(), v.clone()));
        resolved.insert(*name, v);
    }
    Ok(Layout {
        coords,
        sources,
        params: resolved,
        shown: Bindings(shown),
    })
}

fn small<T: TryFrom<BigInt>>(name: &str, v: &BigInt) -> Result<T> {
    T::try_from(v.clone()).map_err(|_| Error::precondition(format!("{name} = {v} is out of range")))
}

fn need(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::precondition(msg()))
    }
}

fn floors_outcome(c: &FloorChain) -> Outcome {
    let (lhs, rhs) = c.witness_pair();
    Outcome::compare(lhs, rhs)
}

type PointFn<'a> = Box<dyn Fn(&[BigInt]) -> Result<Outcome> + Sync + 'a>;

/// Sweeps builtin `id` over `ranges`. Grid variables not ranged may be fixed
/// through `params`, which also carries each builtin's scalar options.
pub fn run_builtin(id: &str, params: &[(String, String)], ranges: &[Coord], opts: &SweepOptions) -> Result<CheckReport> {
    let d = decl(id).ok_or_else(|| Error::Usage(format!("unknown builtin '{id}' (known: {})", BUILTIN_IDS.join(", "))))?;
    let mut lay = resolve(id, &d, params, ranges)?;
    let prec = opts.precision;
    let positive = |name: &'static str, v: &BigInt| need(v.is_positive(), || format!("{name} = {v} must be positive"));

    let f: PointFn = match id {
        "eq1" => Box::new(move |v| {
            positive("n", &v[0])?;
            let s = ramanujan_sixths_sides(&v[0]);
            Ok(Outcome::compare(s.lhs, s.rhs))
        }),
        "eq2" => Box::new(move |v| {
            positive("n", &v[0])?;
            let s = ramanujan_shifted_sqrt_sides(&v[0], prec)?;
            Ok(Outcome::compare(s.lhs, s.rhs))
        }),
        "eq3" => Box::new(move |v| {
            positive("n", &v[0])?;
            let s = ramanujan_sqrt_pair_sides(&v[0], prec)?;
            Ok(Outcome::compare(s.lhs, s.rhs))
        }),
        "hermite" => {
            let den = lay.int("den")?;
            if !den.is_positive() {
                return Err(Error::Usage("den must be positive".into()));
            }
            Box::new(move |v| {
                positive("b", &v[1])?;
                let t = BigRational::new(v[0].clone(), den.clone());
                let s = hermite_sides(&t, small("b", &v[1])?)?;
                Ok(Outcome::compare(s.lhs, s.rhs))
            })
        }
        "prop1" => {
            let den = lay.int("den")?;
            if !den.is_positive() {
                return Err(Error::Usage("den must be positive".into()));
            }
            Box::new(move |v| {
                need(!v[1].is_zero(), || "a must be nonzero".into())?;
                positive("b", &v[2])?;
                let x = BigRational::new(v[0].clone(), den.clone());
                let s = hermite_scaled_sides(&x, &v[1], small("b", &v[2])?)?;
                Ok(Outcome::compare(s.lhs, s.rhs))
            })
        }
        "corollary5" => {
            let den = lay.int("den")?;
            if !den.is_positive() {
                return Err(Error::Usage("den must be positive".into()));
            }
            Box::new(move |v| {
                need(v[1] >= BigInt::from(2), || format!("n = {} must be at least 2", v[1]))?;
                let x = BigRational::new(v[0].clone(), den.clone());
                let total = nested_floor_series(&x, small("n", &v[1])?)?;
                let expected = floor_rat(&x) + if x.is_negative() { BigInt::one() } else { BigInt::zero() };
                Ok(Outcome::compare(total, expected))
            })
        }
        "corollary6" => Box::new(move |v| {
            positive("m", &v[0])?;
            Ok(Outcome::compare(halving_series(&v[0])?, v[0].clone()))
        }),
        "corollary7" => {
            let mode = lay.mode()?;
            Box::new(move |v| {
                positive("n", &v[0])?;
                positive("a", &v[1])?;
                positive("b", &v[2])?;
                Ok(floors_outcome(&check_sqrt_chain(&v[0], &v[1], &v[2], mode, prec)?))
            })
        }
        "corollary8" => Box::new(move |v| {
            positive("n", &v[0])?;
            positive("a", &v[1])?;
            positive("b", &v[2])?;
            Ok(floors_outcome(&check_cbrt_chain(&v[0], &v[1], &v[2], prec)?))
        }),
        "corollary9" => {
            let mode = lay.mode()?;
            Box::new(move |v| {
                positive("n", &v[0])?;
                positive("b", &v[2])?;
                need(v[1] >= BigInt::from(2), || format!("a = {} must be at least 2", v[1]))?;
                need(!v[3].is_negative(), || format!("c = {} must be nonnegative", v[3]))?;
                let m: u32 = small("m", &v[4])?;
                need(m >= 2, || format!("m = {m} must be at least 2"))?;
                Ok(floors_outcome(&check_log_chain(&v[0], &v[1], &v[2], &v[3], m, mode)?))
            })
        }
        "prop2_chain" => {
            let (a, b) = (lay.int("a")?, lay.int("b")?);
            let kind = match lay.param("fn") {
                "poly" => {
                    let deg = lay.int("deg")?;
                    let deg = deg.to_u32().ok_or_else(|| Error::Usage(format!("deg = {deg} is out of range")))?;
                    MonotoneFnSpec::polynomial(a, b, deg)
                }
                "exp" => MonotoneFnSpec::exponential(a, b, lay.int("c")?),
                other => return Err(Error::Usage(format!("fn must be poly or exp, got '{other}'"))),
            }?;
            let direction = match lay.param("direction") {
                "inc" => Direction::Increasing,
                "dec" => Direction::Decreasing,
                other => return Err(Error::Usage(format!("direction must be inc or dec, got '{other}'"))),
            };
            let f = kind.with_direction(direction)?;
            let modulus = lay.int("modulus")?;
            let modulus = modulus
                .to_u64()
                .filter(|&m| m > 1)
                .ok_or_else(|| Error::Usage(format!("modulus = {modulus} must be an integer above 1")))?;
            let (from, to) = (lay.int("from")?, lay.int("to")?);
            if from > to {
                return Err(Error::Usage(format!("empty residue window {from}..{to}")));
            }
            let profile = residue_scan(&f, modulus)?;
            if let Some(y) = profile.first_attained_in(&from, &to) {
                return Err(Error::Precondition(format!(
                    "f attains residue {} (mod {modulus}) inside {from}..{to}; attained residues: {:?}",
                    profile.residue(&y),
                    profile.attained
                )));
            }
            Box::new(move |v| {
                let c = check_inverse_chain(&f, modulus, &from, &to, &v[0])?;
                let first = c.values[0].1.clone();
                let other = c.values.iter().map(|p| &p.1).find(|x| **x != first).unwrap_or(&first).clone();
                Ok(Outcome::compare(first, other))
            })
        }
        "theorem3" => Box::new(move |v| {
            positive("n", &v[1])?;
            need(v[0] >= BigInt::from(2), || format!("k = {} must be at least 2", v[0]))?;
            let r = check_root_pair(&v[1], small("k", &v[0])?, prec)?;
            Ok(Outcome::compare(r.lhs_floor, r.rhs_floor))
        }),
        "theorem4" => {
            let k = lay.int("k")?;
            let k: u32 = k.to_u32().filter(|&k| k >= 1).ok_or_else(|| Error::Usage(format!("k = {k} must be a positive integer")))?;
            let xs = lay
                .param("xs")
                .split(',')
                .filter(|s| !s.trim().is_empty())
                .map(|s| parse_int("xs", s))
                .collect::<Result<Vec<_>>>()?;
            if xs.is_empty() {
                return Err(Error::Usage("theorem4 needs xs=x1,x2,...".into()));
            }
            let l = match lay.param("l") {
                "" => xs.len() as u64,
                s => parse_int("l", s)?
                    .to_u64()
                    .ok_or_else(|| Error::Usage(format!("l = {s} must be a positive integer")))?,
            };
            if l != xs.len() as u64 {
                return Err(Error::Usage(format!("l = {l} but {} shifts were given", xs.len())));
            }
            if let Some(shown) = lay.shown.0.iter_mut().find(|(name, _)| name == "l") {
                shown.1 = l.to_string();
            }
            let inst = RootSumInstance::new(l, k, xs)?;
            let mode = lay.mode()?;
            let steps = lay.flag("steps")?;
            if inst.witness.is_none() && mode == Mode::Checked {
                return Err(Error::Precondition(format!(
                    "no prime p divides l = {l} with p^{k} not dividing l and p not dividing the shift sum {}",
                    inst.shift_sum()
                )));
            }
            Box::new(move |v| {
                let r = check_root_sum(&v[0], &inst, mode, prec)?;
                let mut out = Outcome::compare(r.lhs_floor, r.rhs_floor);
                if steps {
                    let s = root_sum_steps(&v[0], &inst, mode, prec)?;
                    let failed: Vec<&str> = [
                        ("jensen", s.jensen),
                        ("am_gm", s.am_gm),
                        ("log_bound", s.log_bound),
                        ("never_integer", s.never_integer),
                    ]
                    .into_iter()
                    .filter_map(|(n, ok)| (!ok).then_some(n))
                    .collect();
                    if let (Outcome::Verdict { rhs, holds, .. }, false) = (&mut out, failed.is_empty()) {
                        *holds = false;
                        rhs.push_str(&format!(" [failed steps: {}]", failed.join(" ")));
                    }
                }
                Ok(out)
            })
        }
        "lemmas" => Box::new(move |v| {
            positive("n", &v[0])?;
            need(v[1] >= BigInt::from(2), || format!("k = {} must be at least 2", v[1]))?;
            let k: u32 = small("k", &v[1])?;
            let stable = check_midpoint_floor_stable(&v[0], k)?;
            let s = check_root_pair_sandwich(&v[0], k, prec)?;
            let got = format!("stable={stable};lower={};upper={}", s.lower, s.upper);
            Ok(Outcome::compare(got, "stable=true;lower=true;upper=true".to_string()))
        }),
        _ => unreachable!("declared builtin without a checker"),
    };

    let mut report = sweep(id, lay.shown.clone(), &lay.coords, opts, |point| {
        Outcome::from_result(f(&lay.values(point)))
    })?;
    if id == "theorem3" && lay.flag("candidates")? {
        attach_candidates(&mut report, &lay, opts)?;
    }
    Ok(report)
}

/// Checks `floor((3/2)^k)` for every `k` of the sweep, with exact margins.
/// Failing candidates outside the grid join the counterexamples.
fn attach_candidates(report: &mut CheckReport, lay: &Layout, opts: &SweepOptions) -> Result<()> {
    let (klo, khi) = lay.span(0);
    let klo = klo.max(BigInt::from(2));
    if klo > khi {
        report.candidates = Some(Vec::new());
        report.margins = Some(Vec::new());
        return Ok(());
    }
    let to_k = |v: &BigInt| v.to_u32().ok_or_else(|| Error::Usage(format!("k = {v} is out of range")));
    let (nlo, nhi) = lay.span(1);
    let scan = scan_root_pairs(to_k(&klo)?..=to_k(&khi)?, None, true, opts.workers, opts.precision)?;
    for c in scan.results.iter().filter(|c| !c.holds && (c.n < nlo || c.n > nhi)) {
        report.counterexample_count += 1;
        if report.counterexamples.len() < opts.counterexample_cap {
            report.counterexamples.push(Counterexample {
                bindings: Bindings(vec![("k".into(), c.k.to_string()), ("n".into(), c.n.to_string())]),
                lhs: c.lhs_floor.to_string(),
                rhs: c.rhs_floor.to_string(),
            });
        }
    }
    report.candidates = Some(scan.results);
    report.margins = Some(scan.margins);
    let undecided = report.status == super::report::Status::Undecided;
    report.status = derive_status(report, undecided);
    Ok(())
}
