//! Symbolic arithmetic with the small infinity `ℵ₋₁ = lim log x`.
//!
//! A term is either a finite real (degree 0) or a power `(ℵ₋₁)^d`,
//! `d >= 1`. Powers are coefficient-blind: `ℵ₋₁ × a = ℵ₋₁ × b` for every
//! finite `a`, `b`. Addition keeps the term of highest degree, while
//! multiplication and division act on degrees.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlephTerm {
    degree: u32,
    finite: f64,
}

impl AlephTerm {
    pub fn finite(value: f64) -> Self {
        AlephTerm { degree: 0, finite: value }
    }

    /// `(ℵ₋₁)^degree`; degree 0 is the finite term 1.
    pub fn power(degree: u32) -> Self {
        if degree == 0 {
            AlephTerm::finite(1.0)
        } else {
            AlephTerm { degree, finite: 0.0 }
        }
    }

    /// `ℵ₋₁` itself, the limit of the information in `n` as `n` grows.
    pub fn small_infinity() -> Self {
        AlephTerm::power(1)
    }

    pub fn degree(self) -> u32 {
        self.degree
    }

    pub fn is_finite(self) -> bool {
        self.degree == 0
    }

    /// The finite value of a degree-0 term.
    pub fn value(self) -> Option<f64> {
        self.is_finite().then_some(self.finite)
    }

    pub fn plus(self, rhs: Self) -> Self {
        match (self.degree, rhs.degree) {
            (0, 0) => AlephTerm::finite(self.finite + rhs.finite),
            (a, b) => AlephTerm::power(a.max(b)),
        }
    }

    /// Subtraction absorbs like addition: `ℵ₋₁ - ℵ₋₁ = ℵ₋₁`.
    pub fn minus(self, rhs: Self) -> Self {
        match (self.degree, rhs.degree) {
            (0, 0) => AlephTerm::finite(self.finite - rhs.finite),
            (a, b) => AlephTerm::power(a.max(b)),
        }
    }

    pub fn times(self, rhs: Self) -> Self {
        match (self.degree, rhs.degree) {
            (0, 0) => AlephTerm::finite(self.finite * rhs.finite),
            (a, b) => AlephTerm::power(a + b),
        }
    }

    /// Degrees subtract; equal degrees give 1 and a negative degree
    /// vanishes to the finite 0 in the limit.
    pub fn over(self, rhs: Self) -> Result<Self> {
        match (self.degree, rhs.degree) {
            (_, 0) if rhs.finite == 0.0 => Err(Error::DivisionByZero),
            (0, 0) => Ok(AlephTerm::finite(self.finite / rhs.finite)),
            (a, b) if a >= b => Ok(AlephTerm::power(a - b)),
            _ => Ok(AlephTerm::finite(0.0)),
        }
    }

    pub fn pow(self, exp: u32) -> Self {
        match self.degree {
            0 => AlephTerm::finite(self.finite.powi(exp as i32)),
            d => AlephTerm::power(d * exp),
        }
    }
}

impl fmt::Display for AlephTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.degree {
            0 => write!(f, "{}", self.finite),
            1 => f.write_str("ℵ₋₁"),
            d => write!(f, "(ℵ₋₁)^{d}"),
        }
    }
}

/// Evaluates an expression over `ℵ₋₁` (spelled `a`, `aleph` or `ℵ`) and
/// finite decimals with `+ - * / ^` and parentheses.
impl FromStr for AlephTerm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let tokens = tokenize(s)?;
        let mut p = AlephParser { tokens, pos: 0 };
        let v = p.sum()?;
        if p.pos != p.tokens.len() {
            return Err(Error::Parse(format!("trailing input in aleph expression {s:?}")));
        }
        Ok(v)
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Aleph,
    Num(f64),
    Op(char),
    Open,
    Close,
}

fn tokenize(s: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            c if c.is_whitespace() => i += 1,
            '+' | '-' | '*' | '/' | '^' | '×' => {
                out.push(Token::Op(if c == '×' { '*' } else { c }));
                i += 1;
            }
            '(' => {
                out.push(Token::Open);
                i += 1;
            }
            ')' => {
                out.push(Token::Close);
                i += 1;
            }
            'ℵ' => {
                out.push(Token::Aleph);
                i += 1;
                // optional subscript `₋₁` or `_-1`
                for suffix in [&['₋', '₁'][..], &['_', '-', '1'][..]] {
                    if chars[i..].starts_with(suffix) {
                        i += suffix.len();
                        break;
                    }
                }
            }
            c if c.is_ascii_digit() || c == '.' => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                    i += 1;
                }
                let text: String = chars[start..i].iter().collect();
                let v = text.parse::<f64>().map_err(|_| Error::Parse(format!("bad number {text:?}")))?;
                out.push(Token::Num(v));
            }
            c if c.is_ascii_alphabetic() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_alphanumeric() {
                    i += 1;
                }
                let word: String = chars[start..i].iter().collect();
                match word.as_str() {
                    "a" | "aleph" => out.push(Token::Aleph),
                    _ => return Err(Error::Parse(format!("unknown symbol {word:?}"))),
                }
            }
            other => return Err(Error::Parse(format!("unexpected character {other:?}"))),
        }
    }
    Ok(out)
}

struct AlephParser {
    tokens: Vec<Token>,
    pos: usize,
}

impl AlephParser {
    fn peek_op(&self) -> Option<char> {
        match self.tokens.get(self.pos) {
            Some(Token::Op(c)) => Some(*c),
            _ => None,
        }
    }

    fn sum(&mut self) -> Result<AlephTerm> {
        let mut acc = self.product()?;
        while let Some(op @ ('+' | '-')) = self.peek_op() {
            self.pos += 1;
            let rhs = self.product()?;
            acc = if op == '+' { acc.plus(rhs) } else { acc.minus(rhs) };
        }
        Ok(acc)
    }

    fn product(&mut self) -> Result<AlephTerm> {
        let mut acc = self.power()?;
        while let Some(op @ ('*' | '/')) = self.peek_op() {
            self.pos += 1;
            let rhs = self.power()?;
            acc = if op == '*' { acc.times(rhs) } else { acc.over(rhs)? };
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<AlephTerm> {
        let base = self.atom()?;
        if self.peek_op() == Some('^') {
            self.pos += 1;
            match self.tokens.get(self.pos) {
                Some(Token::Num(e)) if e.fract() == 0.0 && *e >= 0.0 => {
                    self.pos += 1;
                    return Ok(base.pow(*e as u32));
                }
                _ => return Err(Error::Parse("exponent must be a natural number".into())),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<AlephTerm> {
        let tok = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        match tok {
            Some(Token::Aleph) => Ok(AlephTerm::small_infinity()),
            Some(Token::Num(v)) => Ok(AlephTerm::finite(v)),
            Some(Token::Op('-')) => Ok(AlephTerm::finite(0.0).minus(self.atom()?)),
            Some(Token::Open) => {
                let v = self.sum()?;
                if self.tokens.get(self.pos) != Some(&Token::Close) {
                    return Err(Error::Parse("expected `)`".into()));
                }
                self.pos += 1;
                Ok(v)
            }
            _ => Err(Error::Parse("expected operand in aleph expression".into())),
        }
    }
}
