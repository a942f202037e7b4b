//! Text grammar for Laurent polynomials in t: a sum of terms
//! `[+|-][coeff][t[^exp]]` with integer or `p/q` coefficients and integer
//! exponents, e.g. `-1t^-1 + 3 - 1t^1`. Whitespace is ignored everywhere;
//! duplicate exponents are summed. Canonical `Display` output parses back
//! to the same polynomial.

use std::fmt;

use concordance_core::laurent::{LaurentPolynomial, Var};
use concordance_core::scalar::{Int, Rational};

/// Parse failure at a 1-based character position of the original string.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyParseError {
    pub pos: usize,
    pub message: String,
}

impl fmt::Display for PolyParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "character {}: {}", self.pos, self.message)
    }
}

impl std::error::Error for PolyParseError {}

struct Scanner {
    /// Non-whitespace characters with their 1-based original positions.
    chars: Vec<(usize, char)>,
    at: usize,
    end_pos: usize,
}

impl Scanner {
    fn new(text: &str) -> Self {
        let chars: Vec<(usize, char)> = text
            .chars()
            .enumerate()
            .filter(|(_, c)| !c.is_whitespace())
            .map(|(i, c)| (i + 1, c))
            .collect();
        let end_pos = text.chars().count() + 1;
        Scanner { chars, at: 0, end_pos }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.at).map(|&(_, c)| c)
    }

    fn pos(&self) -> usize {
        self.chars.get(self.at).map_or(self.end_pos, |&(p, _)| p)
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        if c.is_some() {
            self.at += 1;
        }
        c
    }

    fn fail<T>(&self, message: impl Into<String>) -> Result<T, PolyParseError> {
        Err(PolyParseError {
            pos: self.pos(),
            message: message.into(),
        })
    }

    fn digits(&mut self, what: &str) -> Result<String, PolyParseError> {
        let mut out = String::new();
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            out.push(self.bump().expect("peeked"));
        }
        if out.is_empty() {
            return self.fail(format!("expected {what}"));
        }
        Ok(out)
    }
}

/// One `[coeff][t[^exp]]` term; at least one of the two parts must appear.
fn term(s: &mut Scanner) -> Result<(i64, Rational), PolyParseError> {
    let mut coeff: Option<Rational> = None;
    if matches!(s.peek(), Some(c) if c.is_ascii_digit()) {
        let numer: Int = s.digits("a coefficient")?.parse().expect("digits");
        let denom: Int = if s.peek() == Some('/') {
            s.bump();
            let pos = s.pos();
            let d: Int = s.digits("a denominator")?.parse().expect("digits");
            if d == Int::from(0) {
                return Err(PolyParseError {
                    pos,
                    message: "zero denominator".into(),
                });
            }
            d
        } else {
            Int::from(1)
        };
        coeff = Some(Rational::new(numer, denom));
    }
    let mut exp: Option<i64> = None;
    if s.peek() == Some('t') {
        s.bump();
        if matches!(s.peek(), Some(c) if c.is_ascii_digit()) {
            return s.fail("expected `^` before the exponent");
        }
        exp = Some(if s.peek() == Some('^') {
            s.bump();
            let negative = match s.peek() {
                Some('-') => {
                    s.bump();
                    true
                }
                Some('+') => {
                    s.bump();
                    false
                }
                _ => false,
            };
            let pos = s.pos();
            let digits = s.digits("an exponent")?;
            let magnitude: i64 = digits.parse().map_err(|_| PolyParseError {
                pos,
                message: format!("exponent `{digits}` is out of range"),
            })?;
            if negative {
                -magnitude
            } else {
                magnitude
            }
        } else {
            1
        });
    }
    match (coeff, exp) {
        (None, None) => s.fail("expected a term (coefficient or `t`)"),
        (c, e) => Ok((e.unwrap_or(0), c.unwrap_or_else(|| Rational::from_integer(Int::from(1))))),
    }
}

/// Parse the polynomial grammar; duplicate exponents are summed.
pub fn parse_poly(text: &str) -> Result<LaurentPolynomial, PolyParseError> {
    let mut s = Scanner::new(text);
    if s.peek().is_none() {
        return s.fail("empty polynomial");
    }
    let mut terms: Vec<(i64, Rational)> = Vec::new();
    let mut negative = match s.peek() {
        Some('-') => {
            s.bump();
            true
        }
        Some('+') => {
            s.bump();
            false
        }
        _ => false,
    };
    loop {
        let (exp, coeff) = term(&mut s)?;
        terms.push((exp, if negative { -coeff } else { coeff }));
        match s.peek() {
            None => break,
            Some('-') => {
                s.bump();
                negative = true;
            }
            Some('+') => {
                s.bump();
                negative = false;
            }
            Some(c) => return s.fail(format!("unexpected character `{c}`")),
        }
    }
    Ok(LaurentPolynomial::from_terms(Var::T, terms))
}
