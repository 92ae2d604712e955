//! A small language for quantified floor identities.
//!
//! ```text
//! forall n in 1..100 : floor(root(2,n) + root(2,n+1)) = floor(root(2, 4*n+2))
//! ```
//!
//! Statements are parsed into an [`IdentityStatement`], evaluated exactly
//! with [`eval_expr`], and swept over their ranges by [`check_statement`].

mod ast;
mod check;
mod eval;
mod parser;

pub use ast::{Binding, Expr, IdentityStatement};
pub use check::check_statement;
pub use eval::{eval_expr, Env, EvalValue};
pub use parser::{parse_statement, parse_statements};
