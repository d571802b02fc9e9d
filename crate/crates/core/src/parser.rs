//! Expression grammar for polynomial input.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := '-' factor | base ('^' uint)?
//! base   := rational | ident | '(' expr ')'
//! ```
//!
//! A rational literal is an integer optionally followed by `/integer`.
//! There is no division operator: quotients of polynomials are entered as
//! separate numerator and denominator expressions.

use thiserror::Error;

use crate::diffop::XPoly;
use crate::exactnum::{MPoly, RatFn, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at byte {pos}: {msg}")]
    SyntaxError { pos: usize, msg: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
}

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Num(Rational),
    Var(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

impl Expr {
    pub fn to_mpoly(&self) -> MPoly {
        match self {
            Expr::Num(q) => MPoly::constant(q.clone()),
            Expr::Var(v) => MPoly::var(v),
            Expr::Neg(e) => -e.to_mpoly(),
            Expr::Add(a, b) => a.to_mpoly() + b.to_mpoly(),
            Expr::Sub(a, b) => a.to_mpoly() - b.to_mpoly(),
            Expr::Mul(a, b) => a.to_mpoly() * b.to_mpoly(),
            Expr::Pow(a, e) => a.to_mpoly().pow(*e),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(String),
    Ident(String),
    Sym(char),
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            out.push((start, Tok::Int(text[start..i].to_string())));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((start, Tok::Ident(text[start..i].to_string())));
        } else if "+-*^()/".contains(c) {
            out.push((i, Tok::Sym(c)));
            i += 1;
        } else {
            return Err(ParseError::SyntaxError {
                pos: i,
                msg: format!("unexpected character `{}`", text[i..].chars().next().unwrap_or(c)),
            });
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
    vars: &'a [&'a str],
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |(p, _)| *p)
    }

    fn err<T>(&self, msg: &str) -> Result<T, ParseError> {
        Err(ParseError::SyntaxError {
            pos: self.pos(),
            msg: msg.to_string(),
        })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.factor()?;
        while self.eat('*') {
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.factor()?)));
        }
        let base = self.base()?;
        if self.eat('^') {
            match self.peek().cloned() {
                Some(Tok::Int(s)) => {
                    let e: u32 = match s.parse() {
                        Ok(e) => e,
                        Err(_) => return self.err("exponent out of range"),
                    };
                    self.at += 1;
                    Ok(Expr::Pow(Box::new(base), e))
                }
                _ => self.err("expected a nonnegative integer exponent"),
            }
        } else {
            Ok(base)
        }
    }

    fn base(&mut self) -> Result<Expr, ParseError> {
        match self.peek().cloned() {
            Some(Tok::Int(num)) => {
                self.at += 1;
                let mut q = Rational::from_integer(num.parse().expect("digits"));
                if self.eat('/') {
                    match self.peek().cloned() {
                        Some(Tok::Int(den)) => {
                            let d: num_bigint::BigInt = den.parse().expect("digits");
                            if num_traits::Zero::is_zero(&d) {
                                return self.err("zero denominator in literal");
                            }
                            self.at += 1;
                            q /= Rational::from_integer(d);
                        }
                        _ => return self.err("expected an integer denominator"),
                    }
                }
                Ok(Expr::Num(q))
            }
            Some(Tok::Ident(name)) => {
                if !self.vars.contains(&name.as_str()) {
                    return Err(ParseError::UnknownVariable(name));
                }
                self.at += 1;
                Ok(Expr::Var(name))
            }
            Some(Tok::Sym('(')) => {
                self.at += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return self.err("expected `)`");
                }
                Ok(e)
            }
            Some(_) => self.err("expected a number, variable or `(`"),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parses `text`, accepting only the identifiers in `vars`.
pub fn parse(text: &str, vars: &[&str]) -> Result<Expr, ParseError> {
    let toks = tokenize(text)?;
    let mut p = Parser {
        toks,
        at: 0,
        end: text.len(),
        vars,
    };
    let e = p.expr()?;
    if p.at != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(e)
}

pub fn parse_mpoly(text: &str, vars: &[&str]) -> Result<MPoly, ParseError> {
    Ok(parse(text, vars)?.to_mpoly())
}

/// Parses a polynomial in `x` whose coefficients may involve the other
/// declared variables.
pub fn parse_xpoly(text: &str, vars: &[&str]) -> Result<XPoly<RatFn>, ParseError> {
    let p = parse_mpoly(text, vars)?;
    Ok(XPoly::from_coeffs(
        p.coeffs_in("x").into_iter().map(RatFn::from_poly).collect(),
    ))
}

/// Like [`parse_xpoly`] but every coefficient must be a rational constant;
/// `None` when some parameter remains.
pub fn parse_xpoly_rational(text: &str, vars: &[&str]) -> Result<Option<XPoly<Rational>>, ParseError> {
    let p = parse_mpoly(text, vars)?;
    let cs: Option<Vec<Rational>> = p.coeffs_in("x").iter().map(MPoly::constant_value).collect();
    Ok(cs.map(XPoly::from_coeffs))
}
