//! Text format for polynomial 1-forms `A dx + B dy` over `K`.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' integer)?
//! atom   := integer | 'I' | 'R3' | 'x' | 'y' | 'dx' | 'dy' | '(' expr ')'
//! ```
//!
//! Division is only allowed by nonzero constants, so `3/2*x` is a rational
//! coefficient. Each term must be linear in exactly one differential.

use num_bigint::BigInt;
use thiserror::Error;

use crate::numfield::{FieldElem, Rational};
use crate::poly::{BiPoly, HPoly};

/// Largest exponent accepted after `^`.
pub const MAX_EXPONENT: usize = 64;

/// Largest nesting depth of parentheses and unary minus.
pub const MAX_DEPTH: usize = 200;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("product of differentials at byte {pos}")]
    MixedDifferentials { pos: usize },
    #[error("division by a non-constant or zero at byte {pos}")]
    NonPolynomialCoefficient { pos: usize },
    #[error("a term carries no differential")]
    MissingDifferential,
    #[error("unexpected differential in a polynomial at byte {pos}")]
    UnexpectedDifferential { pos: usize },
    #[error("coefficients are not homogeneous of one common degree")]
    NotHomogeneous,
}

/// A parsed 1-form: its `dx` and `dy` coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OneFormSource {
    pub text: String,
    pub a: HPoly,
    pub b: HPoly,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Tok {
    Num(usize, usize),
    Ident(usize, usize),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

/// Value of a subexpression: `s + dx·a + dy·b`.
#[derive(Clone, Default)]
struct Val {
    s: BiPoly,
    dx: BiPoly,
    dy: BiPoly,
}

impl Val {
    fn scalar(p: BiPoly) -> Self {
        Val { s: p, ..Default::default() }
    }

    fn has_diff(&self) -> bool {
        !self.dx.is_zero() || !self.dy.is_zero()
    }

    fn map(&self, f: impl Fn(&BiPoly) -> BiPoly) -> Val {
        Val { s: f(&self.s), dx: f(&self.dx), dy: f(&self.dy) }
    }
}

struct Parser<'a> {
    src: &'a str,
    toks: Vec<(usize, Tok)>,
    at: usize,
    /// Set once a differential symbol was read, so `0*dx` still counts.
    saw_dx: bool,
    saw_dy: bool,
    depth: usize,
}

fn tokenize(src: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'/' => Tok::Slash,
            b'^' => Tok::Caret,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((start, Tok::Num(start, i)));
                continue;
            }
            b'a'..=b'z' | b'A'..=b'Z' => {
                while i < bytes.len() && bytes[i].is_ascii_alphanumeric() {
                    i += 1;
                }
                out.push((start, Tok::Ident(start, i)));
                continue;
            }
            _ => {
                let ch = src[i..].chars().next().unwrap_or('?');
                return Err(ParseError::Syntax { pos: i, msg: format!("unexpected character {ch:?}") });
            }
        };
        out.push((start, tok));
        i += 1;
    }
    out.push((src.len(), Tok::End));
    Ok(out)
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Result<Self, ParseError> {
        Ok(Parser { src, toks: tokenize(src)?, at: 0, saw_dx: false, saw_dy: false, depth: 0 })
    }

    fn peek(&self) -> (usize, Tok) {
        self.toks[self.at]
    }

    fn bump(&mut self) -> (usize, Tok) {
        let t = self.toks[self.at];
        if t.1 != Tok::End {
            self.at += 1;
        }
        t
    }

    fn err<T>(&self, pos: usize, msg: &str) -> Result<T, ParseError> {
        Err(ParseError::Syntax { pos, msg: msg.to_string() })
    }

    fn expr(&mut self) -> Result<Val, ParseError> {
        let mut v = self.term()?;
        loop {
            match self.peek().1 {
                Tok::Plus => {
                    self.bump();
                    let r = self.term()?;
                    v = Val { s: v.s.add(&r.s), dx: v.dx.add(&r.dx), dy: v.dy.add(&r.dy) };
                }
                Tok::Minus => {
                    self.bump();
                    let r = self.term()?;
                    v = Val { s: v.s.sub(&r.s), dx: v.dx.sub(&r.dx), dy: v.dy.sub(&r.dy) };
                }
                _ => return Ok(v),
            }
        }
    }

    fn term(&mut self) -> Result<Val, ParseError> {
        let mut v = self.unary()?;
        loop {
            match self.peek() {
                (pos, Tok::Star) => {
                    self.bump();
                    let r = self.unary()?;
                    v = mul(&v, &r, pos)?;
                }
                (pos, Tok::Slash) => {
                    self.bump();
                    let r = self.unary()?;
                    let c = match (r.has_diff(), r.s.as_constant()) {
                        (false, Some(c)) if !c.is_zero() => c,
                        _ => return Err(ParseError::NonPolynomialCoefficient { pos }),
                    };
                    let inv = c.inv().expect("nonzero constant");
                    v = v.map(|p| p.scale(&inv));
                }
                _ => return Ok(v),
            }
        }
    }

    fn nested<T>(&mut self, pos: usize, f: impl FnOnce(&mut Self) -> Result<T, ParseError>) -> Result<T, ParseError> {
        if self.depth >= MAX_DEPTH {
            return self.err(pos, "nesting too deep");
        }
        self.depth += 1;
        let out = f(self);
        self.depth -= 1;
        out
    }

    fn unary(&mut self) -> Result<Val, ParseError> {
        if let (pos, Tok::Minus) = self.peek() {
            self.bump();
            return self.nested(pos, |p| Ok(p.unary()?.map(BiPoly::neg)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Val, ParseError> {
        let base = self.atom()?;
        if let (pos, Tok::Caret) = self.peek() {
            self.bump();
            let (epos, tok) = self.bump();
            let Tok::Num(s, e) = tok else {
                return self.err(epos, "expected an integer exponent");
            };
            let n: usize = match self.src[s..e].parse() {
                Ok(n) if (1..=MAX_EXPONENT).contains(&n) => n,
                _ => return self.err(epos, "exponent must be an integer between 1 and 64"),
            };
            if base.has_diff() {
                if n == 1 {
                    return Ok(base);
                }
                return Err(ParseError::MixedDifferentials { pos });
            }
            return Ok(Val::scalar(base.s.pow(n as u32)));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Val, ParseError> {
        let (pos, tok) = self.bump();
        match tok {
            Tok::Num(s, e) => {
                let n: BigInt = self.src[s..e].parse().expect("digits");
                Ok(Val::scalar(BiPoly::constant(FieldElem::from_rational(Rational::from_integer(n)))))
            }
            Tok::Ident(s, e) => {
                let one = || BiPoly::constant(FieldElem::one());
                match &self.src[s..e] {
                    "x" => Ok(Val::scalar(BiPoly::x())),
                    "y" => Ok(Val::scalar(BiPoly::y())),
                    "I" => Ok(Val::scalar(BiPoly::constant(FieldElem::i()))),
                    "R3" => Ok(Val::scalar(BiPoly::constant(FieldElem::sqrt3()))),
                    "dx" => {
                        self.saw_dx = true;
                        Ok(Val { dx: one(), ..Default::default() })
                    }
                    "dy" => {
                        self.saw_dy = true;
                        Ok(Val { dy: one(), ..Default::default() })
                    }
                    other => self.err(pos, &format!("unknown identifier {other:?}")),
                }
            }
            Tok::LParen => {
                let v = self.nested(pos, Self::expr)?;
                match self.bump() {
                    (_, Tok::RParen) => Ok(v),
                    (p, _) => self.err(p, "expected ')'"),
                }
            }
            Tok::End => self.err(pos, "unexpected end of input"),
            _ => self.err(pos, "expected a number, variable or '('"),
        }
    }

    fn finish(&mut self) -> Result<Val, ParseError> {
        let v = self.expr()?;
        match self.peek() {
            (_, Tok::End) => Ok(v),
            (pos, _) => self.err(pos, "unexpected token"),
        }
    }
}

fn mul(a: &Val, b: &Val, pos: usize) -> Result<Val, ParseError> {
    match (a.has_diff(), b.has_diff()) {
        (true, true) => Err(ParseError::MixedDifferentials { pos }),
        (false, _) => Ok(b.map(|p| p.mul(&a.s))),
        (true, false) => Ok(a.map(|p| p.mul(&b.s))),
    }
}

/// Parses a general 1-form into its (not necessarily homogeneous) `dx` and
/// `dy` coefficients.
pub fn parse_general_oneform(text: &str) -> Result<(BiPoly, BiPoly), ParseError> {
    let mut p = Parser::new(text)?;
    let v = p.finish()?;
    if !v.s.is_zero() || !(p.saw_dx || p.saw_dy) {
        return Err(ParseError::MissingDifferential);
    }
    Ok((v.dx, v.dy))
}

/// Parses a homogeneous 1-form. Both coefficients must be homogeneous of the
/// same degree; a zero coefficient takes the degree of the other one.
pub fn parse_oneform(text: &str) -> Result<(HPoly, HPoly), ParseError> {
    let (a, b) = parse_general_oneform(text)?;
    if !a.is_homogeneous() || !b.is_homogeneous() {
        return Err(ParseError::NotHomogeneous);
    }
    let d = match (a.total_degree(), b.total_degree()) {
        (Some(da), Some(db)) if da != db => return Err(ParseError::NotHomogeneous),
        (Some(d), _) | (None, Some(d)) => d,
        (None, None) => 0,
    };
    Ok((a.part(d), b.part(d)))
}

pub fn parse_source(text: &str) -> Result<OneFormSource, ParseError> {
    let (a, b) = parse_oneform(text)?;
    Ok(OneFormSource { text: text.to_string(), a, b })
}

/// Parses a polynomial without differentials.
pub fn parse_bipoly(text: &str) -> Result<BiPoly, ParseError> {
    let mut p = Parser::new(text)?;
    let v = p.finish()?;
    if v.has_diff() || p.saw_dx || p.saw_dy {
        let pos = text.find('d').unwrap_or(0);
        return Err(ParseError::UnexpectedDifferential { pos });
    }
    Ok(v.s)
}

/// Parses a homogeneous polynomial.
pub fn parse_polynomial(text: &str) -> Result<HPoly, ParseError> {
    let p = parse_bipoly(text)?;
    if !p.is_homogeneous() {
        return Err(ParseError::NotHomogeneous);
    }
    Ok(p.part(p.total_degree().unwrap_or(0)))
}

/// Parses a constant of `K`, e.g. `-3/2 + I*R3`.
pub fn parse_field_elem(text: &str) -> Result<FieldElem, ParseError> {
    parse_bipoly(text)?.as_constant().ok_or(ParseError::NotHomogeneous)
}

pub fn print_hpoly(p: &HPoly) -> String {
    p.to_string()
}

fn coefficient_factor(p: &HPoly) -> (bool, String) {
    let nz: Vec<&FieldElem> = p.coeffs().iter().filter(|c| !c.is_zero()).collect();
    if nz.is_empty() {
        return (false, "0".to_string());
    }
    let single = nz.len() == 1 && !(p.degree() == 0 && nz[0].is_compound());
    if single {
        if nz[0].is_negative_monomial() {
            return (true, (-p).to_string());
        }
        return (false, p.to_string());
    }
    (false, format!("({p})"))
}

/// Prints `A dx + B dy` in the parser grammar, expanded and x-descending.
pub fn print_oneform(a: &HPoly, b: &HPoly) -> String {
    let (na, sa) = coefficient_factor(a);
    let (nb, sb) = coefficient_factor(b);
    let sign_a = if na { "-" } else { "" };
    let sign_b = if nb { " - " } else { " + " };
    format!("{sign_a}{sa}*dx{sign_b}{sb}*dy")
}
