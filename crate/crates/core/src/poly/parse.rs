use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;

use super::polynomial::{Polynomial, QiPoly};
use super::scalar::Scalar;
use crate::error::{Error, Result};
use crate::exactmath::{GaussianRational, Rational};

/// Largest exponent accepted after `^`.
pub const MAX_PARSE_EXPONENT: u32 = 1 << 16;

/// Parse a polynomial in `X` (or `x`). Coefficients may use `i` when the
/// target domain is Q(i).
///
/// ```
/// use arithdyn::poly::{parse_polynomial, QPoly};
/// let f: QPoly = parse_polynomial("3/2*X^4 - X + 5").unwrap();
/// assert_eq!(f.deg(), 4);
/// assert_eq!(f.to_string(), "3/2*X^4 - X + 5");
/// ```
pub fn parse_polynomial<F: Scalar>(text: &str) -> Result<Polynomial<F>> {
    let g = Parser::new(text).parse()?;
    g.convert().ok_or_else(|| Error::Parse {
        offset: 0,
        message: format!("coefficient outside the {:?} domain", F::DOMAIN),
    })
}

/// Parse a constant, e.g. `-7/3` or `2-i`.
pub fn parse_scalar<F: Scalar>(text: &str) -> Result<F> {
    let p: Polynomial<F> = parse_polynomial(text)?;
    if p.deg() > 0 {
        return Err(Error::Parse { offset: 0, message: "expected a constant".into() });
    }
    Ok(p.coeff(0))
}

impl<F: Scalar> FromStr for Polynomial<F> {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_polynomial(s)
    }
}

impl<F: Scalar> fmt::Display for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs().iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let (negative, mag) = c.signed_text();
            match (first, negative) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            first = false;
            let var = match k {
                0 => String::new(),
                1 => "X".to_string(),
                _ => format!("X^{k}"),
            };
            match (k, mag.as_str()) {
                (0, _) => write!(f, "{mag}")?,
                (_, "1") => write!(f, "{var}")?,
                _ => write!(f, "{mag}*{var}")?,
            }
        }
        Ok(())
    }
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Parser { text, pos: 0 }
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse { offset: self.pos, message: message.into() })
    }

    fn peek(&mut self) -> Option<char> {
        let rest = &self.text[self.pos..];
        let trimmed = rest.trim_start();
        self.pos += rest.len() - trimmed.len();
        trimmed.chars().next()
    }

    fn bump(&mut self) -> char {
        let c = self.peek().expect("bump past end");
        self.pos += c.len_utf8();
        c
    }

    fn parse(mut self) -> Result<QiPoly> {
        if self.peek().is_none() {
            return self.err("empty input");
        }
        let p = self.expr()?;
        match self.peek() {
            None => Ok(p),
            Some(c) => self.err(format!("unexpected '{c}'")),
        }
    }

    fn expr(&mut self) -> Result<QiPoly> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some('+') => {
                    self.bump();
                    acc = acc + self.term()?;
                }
                Some('-' | '\u{2212}') => {
                    self.bump();
                    acc = acc - self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<QiPoly> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.bump();
                    acc = acc * self.unary()?;
                }
                Some('/') => {
                    self.bump();
                    let at = self.pos;
                    let d = self.unary()?;
                    if d.deg() > 0 || d.is_zero() {
                        self.pos = at;
                        return self.err("divisor must be a nonzero constant");
                    }
                    let inv = d.coeff(0).inv().expect("nonzero constant");
                    acc = acc.scale(&inv);
                }
                Some(c) if starts_atom(c) => acc = acc * self.power()?,
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<QiPoly> {
        match self.peek() {
            Some('-' | '\u{2212}') => {
                self.bump();
                Ok(-self.unary()?)
            }
            Some('+') => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<QiPoly> {
        let base = self.atom()?;
        if self.peek() != Some('^') {
            return Ok(base);
        }
        self.bump();
        self.peek();
        let start = self.pos;
        let digits: String = self.text[start..].chars().take_while(|c| c.is_ascii_digit()).collect();
        if digits.is_empty() {
            return self.err("expected exponent");
        }
        self.pos += digits.len();
        match digits.parse::<u32>() {
            Ok(e) if e <= MAX_PARSE_EXPONENT => Ok(base.pow(e)),
            _ => {
                self.pos = start;
                self.err(format!("exponent exceeds {MAX_PARSE_EXPONENT}"))
            }
        }
    }

    fn atom(&mut self) -> Result<QiPoly> {
        match self.peek() {
            Some('X' | 'x') => {
                self.bump();
                Ok(QiPoly::x())
            }
            Some('i') => {
                self.bump();
                Ok(QiPoly::constant(GaussianRational::i()))
            }
            Some('(') => {
                self.bump();
                let inner = self.expr()?;
                if self.peek() != Some(')') {
                    return self.err("expected ')'");
                }
                self.bump();
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                let digits: String = self.text[start..].chars().take_while(|c| c.is_ascii_digit()).collect();
                self.pos += digits.len();
                let n: BigInt = digits.parse().expect("ascii digits");
                Ok(QiPoly::constant(GaussianRational::real(Rational::from_integer(n))))
            }
            Some(c) => self.err(format!("unexpected '{c}'")),
            None => self.err("unexpected end of input"),
        }
    }
}

fn starts_atom(c: char) -> bool {
    matches!(c, 'X' | 'x' | 'i' | '(') || c.is_ascii_digit()
}

impl QiPoly {
    /// Whether every coefficient is real.
    pub fn is_real(&self) -> bool {
        self.coeffs().iter().all(|c| c.is_real())
    }
}

impl<F: Scalar> Polynomial<F> {
    /// `true` when the polynomial is the constant one.
    pub fn is_one(&self) -> bool {
        self.deg() == 0 && self.coeff(0).is_one()
    }
}
