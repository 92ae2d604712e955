use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Int(BigInt),
    Var(String),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Floor(Box<Expr>),
    /// `root(degree, radicand)`, degree at least 1.
    Root(u32, Box<Expr>),
}

/// `var in lo..hi`, inclusive on both ends.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Binding {
    pub var: String,
    pub lo: BigInt,
    pub hi: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityStatement {
    pub bindings: Vec<Binding>,
    pub lhs: Expr,
    pub rhs: Expr,
}

impl Expr {
    pub fn free_vars(&self) -> BTreeSet<&str> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars<'a>(&'a self, out: &mut BTreeSet<&'a str>) {
        match self {
            Expr::Int(_) => {}
            Expr::Var(v) => {
                out.insert(v);
            }
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
            Expr::Neg(a) | Expr::Floor(a) | Expr::Root(_, a) => a.collect_vars(out),
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) | Expr::Div(..) => 2,
            Expr::Neg(_) => 3,
            _ => 4,
        }
    }

    fn fmt_at(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        let paren = self.precedence() < min;
        if paren {
            f.write_str("(")?;
        }
        match self {
            Expr::Int(v) => write!(f, "{v}")?,
            Expr::Var(v) => f.write_str(v)?,
            Expr::Add(a, b) | Expr::Sub(a, b) => {
                let op = if matches!(self, Expr::Add(..)) { "+" } else { "-" };
                a.fmt_at(f, 1)?;
                write!(f, " {op} ")?;
                b.fmt_at(f, 2)?;
            }
            Expr::Mul(a, b) | Expr::Div(a, b) => {
                let op = if matches!(self, Expr::Mul(..)) { "*" } else { "/" };
                a.fmt_at(f, 2)?;
                f.write_str(op)?;
                b.fmt_at(f, 3)?;
            }
            Expr::Neg(a) => {
                f.write_str("-")?;
                a.fmt_at(f, 3)?;
            }
            Expr::Floor(a) => write!(f, "floor({a})")?,
            Expr::Root(k, a) => write!(f, "root({k}, {a})")?,
        }
        if paren {
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_at(f, 0)
    }
}

impl fmt::Display for Binding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in {}..{}", self.var, self.lo, self.hi)
    }
}

impl fmt::Display for IdentityStatement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.bindings.is_empty() {
            f.write_str("forall ")?;
            for (i, b) in self.bindings.iter().enumerate() {
                if i > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{b}")?;
            }
            f.write_str(" : ")?;
        }
        write!(f, "{} = {}", self.lhs, self.rhs)
    }
}
