use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::ast::{Binding, Expr, IdentityStatement};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Forall,
    In,
    Floor,
    Root,
    Plus,
    Minus,
    Star,
    Slash,
    LParen,
    RParen,
    Comma,
    Colon,
    Eq,
    DotDot,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Int(v) => format!("integer {v}"),
            Tok::Ident(v) => format!("identifier '{v}'"),
            Tok::Forall => "'forall'".into(),
            Tok::In => "'in'".into(),
            Tok::Floor => "'floor'".into(),
            Tok::Root => "'root'".into(),
            Tok::Plus => "'+'".into(),
            Tok::Minus => "'-'".into(),
            Tok::Star => "'*'".into(),
            Tok::Slash => "'/'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::Comma => "','".into(),
            Tok::Colon => "':'".into(),
            Tok::Eq => "'='".into(),
            Tok::DotDot => "'..'".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        column,
        message: message.into(),
    }
}

fn lex(src: &str, first_line: usize) -> Result<Vec<Spanned>> {
    let mut out = Vec::new();
    let (mut line, mut column) = (first_line, 1);
    let mut chars = src.chars().peekable();
    while let Some(&c) = chars.peek() {
        let (l0, c0) = (line, column);
        let mut bump = |chars: &mut std::iter::Peekable<std::str::Chars>| {
            let c = chars.next();
            if c == Some('\n') {
                line += 1;
                column = 1;
            } else {
                column += 1;
            }
            c
        };
        if c == '#' {
            while chars.peek().is_some_and(|&c| c != '\n') {
                bump(&mut chars);
            }
            continue;
        }
        if c.is_whitespace() {
            bump(&mut chars);
            continue;
        }
        let tok = if c.is_ascii_digit() {
            let mut digits = String::new();
            while let Some(&d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                digits.push(d);
                bump(&mut chars);
            }
            Tok::Int(digits.parse().expect("ascii digits"))
        } else if c.is_ascii_alphabetic() {
            let mut word = String::new();
            while let Some(&d) = chars.peek().filter(|d| d.is_ascii_alphanumeric()) {
                word.push(d);
                bump(&mut chars);
            }
            match word.as_str() {
                "forall" => Tok::Forall,
                "in" => Tok::In,
                "floor" => Tok::Floor,
                "root" => Tok::Root,
                _ => Tok::Ident(word),
            }
        } else {
            bump(&mut chars);
            match c {
                '+' => Tok::Plus,
                '-' => Tok::Minus,
                '*' => Tok::Star,
                '/' => Tok::Slash,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                ',' => Tok::Comma,
                ':' => Tok::Colon,
                '=' => Tok::Eq,
                '.' if chars.peek() == Some(&'.') => {
                    bump(&mut chars);
                    Tok::DotDot
                }
                _ => return Err(syntax(l0, c0, format!("unexpected character '{c}'"))),
            }
        };
        out.push(Spanned {
            tok,
            line: l0,
            column: c0,
        });
    }
    out.push(Spanned {
        tok: Tok::Eof,
        line,
        column,
    });
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Spanned {
        &self.toks[self.pos]
    }

    fn next(&mut self) -> Spanned {
        let t = self.toks[self.pos].clone();
        if t.tok != Tok::Eof {
            self.pos += 1;
        }
        t
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if &self.peek().tok == tok {
            self.next();
            true
        } else {
            false
        }
    }

    fn unexpected(&self, expected: &str) -> Error {
        let t = self.peek();
        syntax(t.line, t.column, format!("expected {expected}, found {}", t.tok.describe()))
    }

    fn expect(&mut self, tok: Tok) -> Result<()> {
        if self.eat(&tok) {
            Ok(())
        } else {
            Err(self.unexpected(&tok.describe()))
        }
    }

    fn statement(&mut self) -> Result<IdentityStatement> {
        let mut bindings = Vec::new();
        if self.eat(&Tok::Forall) {
            loop {
                bindings.push(self.binding(&bindings)?);
                if !self.eat(&Tok::Comma) {
                    break;
                }
            }
            self.expect(Tok::Colon)?;
        }
        let lhs = self.expr()?;
        self.expect(Tok::Eq)?;
        let rhs = self.expr()?;
        if self.peek().tok != Tok::Eof {
            return Err(self.unexpected("end of statement"));
        }
        let bound: BTreeSet<&str> = bindings.iter().map(|b| b.var.as_str()).collect();
        let mut free = lhs.free_vars();
        free.extend(rhs.free_vars());
        if let Some(v) = free.iter().find(|v| !bound.contains(*v)) {
            return Err(Error::UnboundVariable((*v).to_string()));
        }
        Ok(IdentityStatement { bindings, lhs, rhs })
    }

    fn binding(&mut self, seen: &[Binding]) -> Result<Binding> {
        let start = self.peek().clone();
        let Tok::Ident(var) = start.tok.clone() else {
            return Err(self.unexpected("variable name"));
        };
        self.next();
        if seen.iter().any(|b| b.var == var) {
            return Err(syntax(start.line, start.column, format!("variable '{var}' is bound twice")));
        }
        self.expect(Tok::In)?;
        let lo = self.signed_int()?;
        self.expect(Tok::DotDot)?;
        let hi = self.signed_int()?;
        if lo > hi {
            return Err(syntax(start.line, start.column, format!("empty range {lo}..{hi} for '{var}'")));
        }
        Ok(Binding { var, lo, hi })
    }

    fn signed_int(&mut self) -> Result<BigInt> {
        let neg = self.eat(&Tok::Minus);
        match self.peek().tok.clone() {
            Tok::Int(v) => {
                self.next();
                Ok(if neg { -v } else { v })
            }
            _ => Err(self.unexpected("integer")),
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut e = self.term()?;
        loop {
            if self.eat(&Tok::Plus) {
                e = Expr::Add(Box::new(e), Box::new(self.term()?));
            } else if self.eat(&Tok::Minus) {
                e = Expr::Sub(Box::new(e), Box::new(self.term()?));
            } else {
                return Ok(e);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut e = self.factor()?;
        loop {
            if self.eat(&Tok::Star) {
                e = Expr::Mul(Box::new(e), Box::new(self.factor()?));
            } else if self.eat(&Tok::Slash) {
                e = Expr::Div(Box::new(e), Box::new(self.factor()?));
            } else {
                return Ok(e);
            }
        }
    }

    fn factor(&mut self) -> Result<Expr> {
        let t = self.peek().clone();
        match t.tok {
            Tok::Int(v) => {
                self.next();
                Ok(Expr::Int(v))
            }
            Tok::Ident(v) => {
                self.next();
                Ok(Expr::Var(v))
            }
            Tok::Minus => {
                self.next();
                Ok(Expr::Neg(Box::new(self.factor()?)))
            }
            Tok::LParen => {
                self.next();
                let e = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(e)
            }
            Tok::Floor => {
                self.next();
                self.expect(Tok::LParen)?;
                let e = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(Expr::Floor(Box::new(e)))
            }
            Tok::Root => {
                self.next();
                self.expect(Tok::LParen)?;
                let d = self.peek().clone();
                let degree = match d.tok {
                    Tok::Int(v) => {
                        self.next();
                        v.to_u32()
                            .filter(|&k| k >= 1)
                            .ok_or_else(|| syntax(d.line, d.column, format!("root degree must be a positive 32-bit integer, got {v}")))?
                    }
                    _ => return Err(self.unexpected("root degree")),
                };
                self.expect(Tok::Comma)?;
                let e = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(Expr::Root(degree, Box::new(e)))
            }
            _ => Err(self.unexpected("expression")),
        }
    }
}

/// Parses one statement; newlines are ordinary whitespace.
pub fn parse_statement(src: &str) -> Result<IdentityStatement> {
    Parser {
        toks: lex(src, 1)?,
        pos: 0,
    }
    .statement()
}

/// Parses a file of newline-separated statements, skipping blank and
/// comment-only lines. Returns each statement with its 1-based line.
pub fn parse_statements(src: &str) -> Result<Vec<(usize, IdentityStatement)>> {
    let mut out = Vec::new();
    for (i, text) in src.lines().enumerate() {
        let toks = lex(text, i + 1)?;
        if toks.len() == 1 {
            continue;
        }
        out.push((i + 1, Parser { toks, pos: 0 }.statement()?));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(v: i64) -> Box<Expr> {
        Box::new(Expr::Int(v.into()))
    }

    fn var(v: &str) -> Box<Expr> {
        Box::new(Expr::Var(v.into()))
    }

    #[test]
    fn sixths_statement() {
        let s = parse_statement(
            "forall n in 1..100 : floor(n/3) + floor((n+2)/6) + floor((n+4)/6) = floor(n/2) + floor((n+3)/6)",
        )
        .unwrap();
        assert_eq!(s.bindings, vec![Binding { var: "n".into(), lo: 1.into(), hi: 100.into() }]);
        let third = Expr::Floor(Box::new(Expr::Div(var("n"), int(3))));
        let Expr::Add(left, _) = &s.lhs else { panic!("{:?}", s.lhs) };
        let Expr::Add(first, _) = left.as_ref() else { panic!() };
        assert_eq!(first.as_ref(), &third);
    }

    #[test]
    fn sqrt_pair_statement() {
        let s = parse_statement("forall n in 1..50 : floor(root(2,n) + root(2,n+1)) = floor(root(2, 4*n+2))").unwrap();
        let rhs = Expr::Floor(Box::new(Expr::Root(
            2,
            Box::new(Expr::Add(Box::new(Expr::Mul(int(4), var("n"))), int(2))),
        )));
        assert_eq!(s.rhs, rhs);
    }

    #[test]
    fn errors() {
        match parse_statement("floor(x").unwrap_err() {
            Error::Syntax { line, column, message } => {
                assert_eq!((line, column), (1, 8));
                assert!(message.contains("end of input"), "{message}");
            }
            e => panic!("{e:?}"),
        }
        assert_eq!(parse_statement("floor(x) = 1").unwrap_err(), Error::UnboundVariable("x".into()));
        assert!(matches!(parse_statement("forall n in 5..1 : n = n"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_statement("forall n in 1..2, n in 1..2 : n = n"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_statement("root(0, 2) = 1"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_statement("1 = 1 1"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_statement("1 = 2 $"), Err(Error::Syntax { column: 7, .. })));
        assert!(matches!(parse_statement("forall in 1..2 : 1 = 1"), Err(Error::Syntax { .. })));
    }

    #[test]
    fn positions_span_lines() {
        match parse_statement("forall n in 1..3 :\n  floor(n = n").unwrap_err() {
            Error::Syntax { line, column, .. } => assert_eq!((line, column), (2, 11)),
            e => panic!("{e:?}"),
        }
    }

    #[test]
    fn files() {
        let src = "# header\n\nforall n in 1..3 : n = n  # trailing\n   \n1 = 1\n";
        let got = parse_statements(src).unwrap();
        assert_eq!(got.iter().map(|(l, _)| *l).collect::<Vec<_>>(), vec![3, 5]);
        match parse_statements("1 = 1\n2 = (2\n").unwrap_err() {
            Error::Syntax { line, .. } => assert_eq!(line, 2),
            e => panic!("{e:?}"),
        }
    }

    #[test]
    fn negative_bounds_and_unary() {
        let s = parse_statement("forall x in -5..-1 : floor(-x/2) = -floor(x/2) - 1 + 1 - -0").unwrap();
        assert_eq!(s.bindings[0].lo, (-5).into());
        assert_eq!(s.bindings[0].hi, (-1).into());
        assert_eq!(parse_statement(&s.to_string()).unwrap(), s);
    }
}
