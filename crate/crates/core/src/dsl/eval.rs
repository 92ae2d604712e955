use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::ast::Expr;
use crate::exact::{floor_radical_sum, floor_rat, normalize_radical, reduce, Precision, RadicalSum};
use crate::{Error, Result};

pub type Env = BTreeMap<String, BigInt>;

/// A rational, or a radical sum that is known to be irrational.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EvalValue {
    Rational(BigRational),
    Radical(RadicalSum),
}

impl EvalValue {
    fn from_sum(s: RadicalSum) -> Self {
        let s = reduce(&s);
        match s.as_rational() {
            Some(q) => EvalValue::Rational(q),
            None => EvalValue::Radical(s),
        }
    }

    fn into_sum(self) -> RadicalSum {
        match self {
            EvalValue::Rational(q) => RadicalSum::from_rational(q),
            EvalValue::Radical(s) => s,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            EvalValue::Rational(q) => Some(q),
            EvalValue::Radical(_) => None,
        }
    }
}

impl fmt::Display for EvalValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EvalValue::Rational(q) => write!(f, "{q}"),
            EvalValue::Radical(s) => write!(f, "{s}"),
        }
    }
}

fn irrational(op: &str) -> Error {
    Error::Unsupported(format!("{op} of two irrational values"))
}

/// Exact value of `e` with variables taken from `env`.
pub fn eval_expr(e: &Expr, env: &Env, prec: Precision) -> Result<EvalValue> {
    use EvalValue::{Radical, Rational};
    Ok(match e {
        Expr::Int(v) => Rational(BigRational::from_integer(v.clone())),
        Expr::Var(v) => Rational(BigRational::from_integer(
            env.get(v).ok_or_else(|| Error::UnboundVariable(v.clone()))?.clone(),
        )),
        Expr::Add(a, b) | Expr::Sub(a, b) => {
            let (x, y) = (eval_expr(a, env, prec)?, eval_expr(b, env, prec)?);
            let add = matches!(e, Expr::Add(..));
            match (x, y) {
                (Rational(x), Rational(y)) => Rational(if add { x + y } else { x - y }),
                (x, y) => {
                    let (x, y) = (x.into_sum(), y.into_sum());
                    EvalValue::from_sum(if add { x + y } else { x - y })
                }
            }
        }
        Expr::Mul(a, b) => match (eval_expr(a, env, prec)?, eval_expr(b, env, prec)?) {
            (Rational(x), Rational(y)) => Rational(x * y),
            (Rational(q), Radical(s)) | (Radical(s), Rational(q)) => EvalValue::from_sum(s.scale(&q)),
            (Radical(_), Radical(_)) => return Err(irrational("product")),
        },
        Expr::Div(a, b) => {
            let x = eval_expr(a, env, prec)?;
            let q = match eval_expr(b, env, prec)? {
                Rational(q) if q.is_zero() => return Err(Error::DivisionByZero),
                Rational(q) => q.recip(),
                Radical(_) if matches!(x, Radical(_)) => return Err(irrational("quotient")),
                Radical(_) => return Err(Error::Unsupported("division by an irrational value".into())),
            };
            match x {
                Rational(x) => Rational(x * q),
                Radical(s) => EvalValue::from_sum(s.scale(&q)),
            }
        }
        Expr::Neg(a) => match eval_expr(a, env, prec)? {
            Rational(x) => Rational(-x),
            Radical(s) => Radical(-s),
        },
        Expr::Floor(a) => Rational(BigRational::from_integer(match eval_expr(a, env, prec)? {
            Rational(x) => floor_rat(&x),
            Radical(s) => floor_radical_sum(&s, prec)?,
        })),
        Expr::Root(k, a) => match eval_expr(a, env, prec)? {
            Rational(q) if q.is_negative() => {
                return Err(Error::domain(format!("negative radicand {q} in root({k}, {a})")))
            }
            Rational(q) => {
                let t = normalize_radical(&BigRational::one(), &q, *k)?;
                EvalValue::from_sum(t.into())
            }
            Radical(_) => return Err(Error::Unsupported(format!("nested radical in root({k}, {a})"))),
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::parse_statement;

    fn side(src: &str, n: i64) -> Result<EvalValue> {
        let s = parse_statement(&format!("forall n in {n}..{n} : {src} = 0")).unwrap();
        let env = Env::from([("n".to_string(), BigInt::from(n))]);
        eval_expr(&s.lhs, &env, Precision::default())
    }

    fn rat(n: i64) -> EvalValue {
        EvalValue::Rational(BigRational::from_integer(n.into()))
    }

    #[test]
    fn examples() {
        assert_eq!(side("floor((n+2)/6)", 7).unwrap(), rat(1));
        assert_eq!(side("floor(root(2,n) + root(2,n+1))", 1).unwrap(), rat(2));
        assert!(matches!(side("root(2, n - 2)", 1), Err(Error::Domain(_))));
    }

    #[test]
    fn exact_radical_cancellation() {
        assert_eq!(side("root(2, 8) - 2*root(2, 2)", 0).unwrap(), rat(0));
        assert_eq!(side("root(4, 4*n) - root(2, 2)", 1).unwrap(), rat(0));
        assert_eq!(side("root(3, n)", 27).unwrap(), rat(3));
        assert_eq!(side("root(2, 1/4) + n", 1).unwrap(), EvalValue::Rational(BigRational::new(3.into(), 2.into())));
        assert!(matches!(side("root(2, 2) + n", 1).unwrap(), EvalValue::Radical(_)));
        assert_eq!(side("floor(-root(2, 2))", 0).unwrap(), rat(-2));
        assert_eq!(side("floor(root(2, 2)/n)", 1).unwrap(), rat(1));
    }

    #[test]
    fn rejections() {
        assert_eq!(side("n/(n-1)", 1).unwrap_err(), Error::DivisionByZero);
        assert!(matches!(side("root(2,2)*root(2,3)", 0), Err(Error::Unsupported(_))));
        assert!(matches!(side("1/root(2,2)", 0), Err(Error::Unsupported(_))));
        assert!(matches!(side("root(2, root(2, 2))", 0), Err(Error::Unsupported(_))));
        assert_eq!(side("(n/3)*3", 2).unwrap(), rat(2));
    }
}
