use num_bigint::BigInt;

use super::ast::IdentityStatement;
use super::eval::{eval_expr, Env, EvalValue};
use crate::search::{sweep, Bindings, CheckReport, Coord, Outcome, SweepOptions};
use crate::{Error, Result};

fn rational_side(v: EvalValue, which: &str) -> Result<String> {
    match v {
        EvalValue::Rational(q) => Ok(q.to_string()),
        EvalValue::Radical(s) => Err(Error::Unsupported(format!(
            "{which} side evaluates to the irrational {s}; wrap it in floor(...)"
        ))),
    }
}

/// Compares both sides exactly at every binding of the statement's ranges.
pub fn check_statement(stmt: &IdentityStatement, identity: &str, opts: &SweepOptions) -> Result<CheckReport> {
    let coords: Vec<Coord> = stmt
        .bindings
        .iter()
        .map(|b| Coord::new(b.var.clone(), b.lo.clone(), b.hi.clone()))
        .collect();
    let params = Bindings(vec![("statement".to_string(), stmt.to_string())]);
    sweep(identity, params, &coords, opts, |point: &[BigInt]| {
        let env: Env = coords.iter().map(|c| c.name.clone()).zip(point.iter().cloned()).collect();
        Outcome::from_result((|| {
            let lhs = rational_side(eval_expr(&stmt.lhs, &env, opts.precision)?, "left")?;
            let rhs = rational_side(eval_expr(&stmt.rhs, &env, opts.precision)?, "right")?;
            Ok(Outcome::compare(lhs, rhs))
        })())
    })
}
