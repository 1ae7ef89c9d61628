//! Canonical polynomial text: terms sorted by the active order,
//! coefficients as exact fractions, plus a parser for the same format.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{Monomial, MonomialOrder, Poly};
use crate::error::{Error, Result};

fn monomial_text(m: &Monomial, names: &[String]) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.0.iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(names[i].clone()),
            _ => parts.push(format!("{}^{e}", names[i])),
        }
    }
    parts.join("*")
}

fn coeff_text(c: &BigRational) -> String {
    if c.denom().is_one() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// Render with terms in descending active order, `a - b` style separators.
pub fn poly_to_text(p: &Poly, names: &[String], order: &MonomialOrder) -> String {
    assert_eq!(p.nvars(), names.len(), "one name per variable");
    if p.is_zero() {
        return "0".into();
    }
    let mut terms: Vec<(&Monomial, &BigRational)> = p.terms().collect();
    terms.sort_by(|(a, _), (b, _)| order.cmp(b, a));
    let mut out = String::new();
    for (idx, (m, c)) in terms.iter().enumerate() {
        let abs = c.abs();
        if idx == 0 {
            if c.is_negative() {
                out.push('-');
            }
        } else if c.is_negative() {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        let mono = monomial_text(m, names);
        if mono.is_empty() {
            out.push_str(&coeff_text(&abs));
        } else if abs.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&coeff_text(&abs));
            out.push('*');
            out.push_str(&mono);
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Number(BigInt),
    Name(String),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
}

fn tokenize(text: &str) -> Result<Vec<Token>> {
    let mut tokens = Vec::new();
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            ' ' | '\t' => {
                chars.next();
            }
            '+' => {
                chars.next();
                tokens.push(Token::Plus);
            }
            '-' => {
                chars.next();
                tokens.push(Token::Minus);
            }
            '*' => {
                chars.next();
                tokens.push(Token::Star);
            }
            '^' => {
                chars.next();
                tokens.push(Token::Caret);
            }
            '/' => {
                chars.next();
                tokens.push(Token::Slash);
            }
            '0'..='9' => {
                let mut num = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_digit() {
                        num.push(d);
                        chars.next();
                    } else {
                        break;
                    }
                }
                tokens.push(Token::Number(num.parse().expect("digits parse")));
            }
            c if c.is_ascii_alphabetic() => {
                let mut name = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_alphanumeric() || d == '_' {
                        name.push(d);
                        chars.next();
                    } else {
                        break;
                    }
                }
                tokens.push(Token::Name(name));
            }
            other => {
                return Err(Error::Parse(format!("unexpected character '{other}'")));
            }
        }
    }
    Ok(tokens)
}

struct Parser<'a> {
    tokens: Vec<Token>,
    pos: usize,
    names: &'a [String],
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn var_index(&self, name: &str) -> Result<usize> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::Parse(format!("unknown variable '{name}'")))
    }

    fn parse_exponent(&mut self) -> Result<u32> {
        match self.next() {
            Some(Token::Number(n)) => n
                .to_string()
                .parse::<u32>()
                .map_err(|_| Error::Parse("exponent too large".into())),
            other => Err(Error::Parse(format!("expected exponent, got {other:?}"))),
        }
    }

    fn parse_factor(&mut self, nvars: usize) -> Result<Poly> {
        match self.next() {
            Some(Token::Number(n)) => {
                let mut value = BigRational::from_integer(n);
                if self.peek() == Some(&Token::Slash) {
                    self.next();
                    match self.next() {
                        Some(Token::Number(d)) if !d.is_zero() => {
                            value /= BigRational::from_integer(d);
                        }
                        other => {
                            return Err(Error::Parse(format!(
                                "expected nonzero denominator, got {other:?}"
                            )))
                        }
                    }
                }
                Ok(Poly::constant(value, nvars))
            }
            Some(Token::Name(name)) => {
                let idx = self.var_index(&name)?;
                let e = if self.peek() == Some(&Token::Caret) {
                    self.next();
                    self.parse_exponent()?
                } else {
                    1
                };
                Ok(Poly::from_term(BigRational::one(), {
                    let mut exps = vec![0u32; nvars];
                    exps[idx] = e;
                    Monomial(exps)
                }))
            }
            other => Err(Error::Parse(format!("expected factor, got {other:?}"))),
        }
    }

    fn parse_term(&mut self, nvars: usize) -> Result<Poly> {
        let mut p = self.parse_factor(nvars)?;
        while self.peek() == Some(&Token::Star) {
            self.next();
            p = p.mul(&self.parse_factor(nvars)?);
        }
        Ok(p)
    }

    fn parse_poly(&mut self) -> Result<Poly> {
        let nvars = self.names.len();
        let mut negate = false;
        if self.peek() == Some(&Token::Minus) {
            self.next();
            negate = true;
        } else if self.peek() == Some(&Token::Plus) {
            self.next();
        }
        let mut p = self.parse_term(nvars)?;
        if negate {
            p = p.neg();
        }
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.next();
                    p = p.add(&self.parse_term(nvars)?);
                }
                Some(Token::Minus) => {
                    self.next();
                    p = p.sub(&self.parse_term(nvars)?);
                }
                None => return Ok(p),
                other => return Err(Error::Parse(format!("unexpected token {other:?}"))),
            }
        }
    }
}

/// Parse one polynomial in the canonical text format against a fixed
/// variable name table.
pub fn parse_poly(text: &str, names: &[String]) -> Result<Poly> {
    let tokens = tokenize(text)?;
    if tokens.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    Parser { tokens, pos: 0, names }.parse_poly()
}

/// Standard variable name tables.
pub fn x_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("x{i}")).collect()
}

pub fn q_names(r: usize) -> Vec<String> {
    (1..=r).map(|j| format!("q{j}")).collect()
}
