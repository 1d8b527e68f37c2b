//! Text format for Puiseux elements.
//!
//! ```text
//! element  := monomial "*" unit | series
//! unit     := "1" { "+" monomial } "+" "O(" monomial ")"
//! series   := term { "+" term } "+" "O(" monomial ")"
//! term     := "1" | monomial
//! monomial := "x" [ "^" ( "(" rational ")" | integer ) ]
//! rational := integer [ "/" positive-integer ]
//! ```
//!
//! In the product form the `O(·)` term is relative to the unit, as in
//! `x^(-5/3) * 1 + x^(1/3) + O(x^(2))`. A bare series is read with absolute
//! precision and decomposed, so `x^(1/2) + x^(1) + O(x^(2))` is the element
//! `x^(1/2) * 1 + x^(1/2) + O(x^(3/2))`.
//!
//! Output is canonical: `1 + x^(e1) + ... + O(x^(P))` for units, prefixed
//! with `x^(val) * ` when the valuation is nonzero. Exponents are always
//! parenthesized and reduced; whitespace on input is free.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::puiseux::{compose, decompose, L0Element, PuiseuxUnit, Rational, RawSeries};

pub fn format_unit(u: &PuiseuxUnit) -> String {
    let mut out = String::from("1");
    for e in u.exponents().skip(1) {
        out.push_str(&format!(" + x^({e})"));
    }
    out.push_str(&format!(" + O(x^({}))", u.aprec()));
    out
}

pub fn format_element(a: &L0Element) -> String {
    if a.val().is_zero() {
        format_unit(a.unit())
    } else {
        format!("x^({}) * {}", a.val(), format_unit(a.unit()))
    }
}

impl fmt::Display for PuiseuxUnit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_unit(self))
    }
}

impl fmt::Debug for PuiseuxUnit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_unit(self))
    }
}

impl fmt::Display for L0Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_element(self))
    }
}

impl fmt::Debug for L0Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_element(self))
    }
}

pub fn parse_element(s: &str) -> Result<L0Element> {
    let mut p = Parser::new(s)?;
    let a = p.element()?;
    p.finish()?;
    Ok(a)
}

/// Parses the unit form only (`1 + ... + O(...)`).
pub fn parse_unit(s: &str) -> Result<PuiseuxUnit> {
    let mut p = Parser::new(s)?;
    let u = p.unit()?;
    p.finish()?;
    Ok(u)
}

/// Parses a bare rational such as `-5/3` or `7`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let mut p = Parser::new(s)?;
    let r = p.rational()?;
    p.finish()?;
    Ok(r)
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    X,
    BigO,
    Caret,
    LParen,
    RParen,
    Star,
    Plus,
    Minus,
    Slash,
    Int(BigInt),
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::X => f.write_str("'x'"),
            Tok::BigO => f.write_str("'O'"),
            Tok::Caret => f.write_str("'^'"),
            Tok::LParen => f.write_str("'('"),
            Tok::RParen => f.write_str("')'"),
            Tok::Star => f.write_str("'*'"),
            Tok::Plus => f.write_str("'+'"),
            Tok::Minus => f.write_str("'-'"),
            Tok::Slash => f.write_str("'/'"),
            Tok::Int(n) => write!(f, "'{n}'"),
        }
    }
}

fn lex(s: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = s.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'x' => Tok::X,
            b'O' => Tok::BigO,
            b'^' => Tok::Caret,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'*' => Tok::Star,
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'/' => Tok::Slash,
            b'0'..=b'9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: BigInt = s[start..i].parse().expect("ascii digits");
                toks.push((start, Tok::Int(n)));
                continue;
            }
            _ => {
                let ch = s[i..].chars().next().unwrap_or('?');
                return Err(Error::Syntax { pos: i, msg: format!("unexpected character {ch:?}") });
            }
        };
        toks.push((i, tok));
        i += 1;
    }
    Ok(toks)
}

/// A summand of a series: `1` or `x^e`, with the byte offset it started at.
struct Term {
    pos: usize,
    exponent: Rational,
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    next: usize,
    end: usize,
}

impl Parser {
    fn new(s: &str) -> Result<Parser> {
        Ok(Parser { toks: lex(s)?, next: 0, end: s.len() })
    }

    fn pos(&self) -> usize {
        self.toks.get(self.next).map_or(self.end, |(p, _)| *p)
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.next).map(|(_, t)| t)
    }

    fn error<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax { pos: self.pos(), msg: msg.into() })
    }

    fn expect(&mut self, want: Tok) -> Result<()> {
        match self.peek() {
            Some(t) if *t == want => {
                self.next += 1;
                Ok(())
            }
            Some(t) => self.error(format!("expected {want}, found {t}")),
            None => self.error(format!("expected {want}, found end of input")),
        }
    }

    fn finish(&self) -> Result<()> {
        match self.peek() {
            None => Ok(()),
            Some(t) => self.error(format!("unexpected trailing {t}")),
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        let negative = self.peek() == Some(&Tok::Minus);
        if negative {
            self.next += 1;
        }
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.next += 1;
                Ok(if negative { -n } else { n })
            }
            Some(t) => self.error(format!("expected an integer, found {t}")),
            None => self.error("expected an integer, found end of input"),
        }
    }

    fn rational(&mut self) -> Result<Rational> {
        let num = self.integer()?;
        if self.peek() != Some(&Tok::Slash) {
            return Ok(Rational::from_integer(num));
        }
        self.next += 1;
        let den_pos = self.pos();
        let den = match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.next += 1;
                n
            }
            _ => return self.error("expected a positive denominator"),
        };
        if den.is_zero() {
            return Err(Error::Syntax { pos: den_pos, msg: "zero denominator".into() });
        }
        Ok(Rational::new(num, den))
    }

    /// `x`, `x^n`, `x^-n` or `x^(p/q)`.
    fn monomial(&mut self) -> Result<Rational> {
        self.expect(Tok::X)?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(Rational::from_integer(1.into()));
        }
        self.next += 1;
        if self.peek() == Some(&Tok::LParen) {
            self.next += 1;
            let r = self.rational()?;
            self.expect(Tok::RParen)?;
            Ok(r)
        } else {
            Ok(Rational::from_integer(self.integer()?))
        }
    }

    fn term(&mut self) -> Result<Term> {
        let pos = self.pos();
        match self.peek() {
            Some(Tok::Int(n)) if *n == BigInt::from(1) => {
                self.next += 1;
                Ok(Term { pos, exponent: Rational::zero() })
            }
            Some(Tok::X) => Ok(Term { pos, exponent: self.monomial()? }),
            Some(t) => self.error(format!("expected '1' or a power of x, found {t}")),
            None => self.error("expected '1' or a power of x, found end of input"),
        }
    }

    fn big_o(&mut self) -> Result<Rational> {
        self.expect(Tok::BigO)?;
        self.expect(Tok::LParen)?;
        let r = match self.peek() {
            Some(Tok::Int(n)) if *n == BigInt::from(1) => {
                self.next += 1;
                Rational::zero()
            }
            _ => self.monomial()?,
        };
        self.expect(Tok::RParen)?;
        Ok(r)
    }

    /// `term + term + ... + O(x^P)`; at least one term. Exponents must
    /// strictly increase.
    fn terms_and_precision(&mut self) -> Result<(Vec<Term>, Rational)> {
        let mut terms = vec![self.term()?];
        loop {
            self.expect(Tok::Plus)?;
            if self.peek() == Some(&Tok::BigO) {
                break;
            }
            let t = self.term()?;
            if t.exponent <= terms.last().expect("nonempty").exponent {
                return Err(Error::ExponentNotIncreasing { pos: t.pos });
            }
            terms.push(t);
        }
        let precision = self.big_o()?;
        Ok((terms, precision))
    }

    fn unit(&mut self) -> Result<PuiseuxUnit> {
        let start = self.pos();
        let (terms, precision) = self.terms_and_precision()?;
        if !terms[0].exponent.is_zero() {
            return Err(Error::NonUnitLeadingTerm { pos: start });
        }
        if !precision.is_positive() {
            return Err(Error::NonpositivePrecision(precision.to_string()));
        }
        let exponents: Vec<Rational> = terms.into_iter().map(|t| t.exponent).collect();
        PuiseuxUnit::from_exponents(&exponents, &precision)
    }

    fn element(&mut self) -> Result<L0Element> {
        if self.peek() == Some(&Tok::X) && self.is_product() {
            let val = self.monomial()?;
            self.expect(Tok::Star)?;
            let unit = self.unit()?;
            return Ok(compose(val, unit));
        }
        let (terms, precision) = self.terms_and_precision()?;
        let exponents: Vec<Rational> = terms.into_iter().map(|t| t.exponent).collect();
        let raw = RawSeries::from_terms(&exponents, &precision)?;
        let (val, unit) = decompose(&raw)?;
        Ok(compose(val, unit))
    }

    /// Looks past the leading monomial for a `*`.
    fn is_product(&self) -> bool {
        let mut i = self.next + 1;
        if self.toks.get(i).map(|(_, t)| t) == Some(&Tok::Caret) {
            i += 1;
            if self.toks.get(i).map(|(_, t)| t) == Some(&Tok::LParen) {
                while let Some((_, t)) = self.toks.get(i) {
                    i += 1;
                    if *t == Tok::RParen {
                        break;
                    }
                }
            } else {
                if self.toks.get(i).map(|(_, t)| t) == Some(&Tok::Minus) {
                    i += 1;
                }
                i += 1;
            }
        }
        self.toks.get(i).map(|(_, t)| t) == Some(&Tok::Star)
    }
}
