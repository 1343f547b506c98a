//! Polynomials with integer coefficients over `k` natural variables.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_traits::{pow::Pow, Signed, Zero};

use crate::arith::{delta_info, BigNat};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    pub coefficient: i64,
    /// One exponent per variable.
    pub exponents: Vec<u32>,
}

impl Term {
    pub fn degree(&self) -> u32 {
        self.exponents.iter().sum()
    }

    fn variables_used(&self) -> usize {
        self.exponents.iter().filter(|&&e| e > 0).count()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    terms: Vec<Term>,
    arity: usize,
}

impl Polynomial {
    pub fn new(arity: usize, terms: Vec<Term>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::InvalidArgument("polynomial needs at least one term".into()));
        }
        if let Some(t) = terms.iter().find(|t| t.exponents.len() != arity) {
            return Err(Error::ArityMismatch { expected: arity, got: t.exponents.len() });
        }
        Ok(Polynomial { terms, arity })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn degree(&self) -> u32 {
        self.terms.iter().map(Term::degree).max().unwrap_or(0)
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    /// True when no term mixes two variables.
    pub fn is_separable(&self) -> bool {
        self.terms.iter().all(|t| t.variables_used() <= 1)
    }

    fn check_arity(&self, got: usize) -> Result<()> {
        if got != self.arity {
            return Err(Error::ArityMismatch { expected: self.arity, got });
        }
        Ok(())
    }

    pub fn eval(&self, inputs: &[BigNat]) -> Result<BigInt> {
        self.check_arity(inputs.len())?;
        Ok(self
            .terms
            .iter()
            .map(|t| {
                t.exponents
                    .iter()
                    .zip(inputs)
                    .filter(|(&e, _)| e > 0)
                    .fold(BigInt::from(t.coefficient), |acc, (&e, x)| {
                        acc * BigInt::from_biguint(Sign::Plus, Pow::pow(x, e))
                    })
            })
            .sum())
    }

    /// Machine-word evaluation; `None` on overflow.
    pub fn eval_i128(&self, inputs: &[u64]) -> Option<i128> {
        debug_assert_eq!(inputs.len(), self.arity);
        let mut total: i128 = 0;
        for t in &self.terms {
            let mut v = i128::from(t.coefficient);
            for (&e, &x) in t.exponents.iter().zip(inputs) {
                if e > 0 {
                    v = v.checked_mul(i128::from(x).checked_pow(e)?)?;
                }
            }
            total = total.checked_add(v)?;
        }
        Some(total)
    }

    /// Value of the terms in variable `var` alone, plus the constant terms
    /// when `with_constant` is set. Only meaningful for separable polynomials.
    pub(crate) fn univariate_part_i128(&self, var: usize, x: u64, with_constant: bool) -> Option<i128> {
        let mut total: i128 = 0;
        for t in &self.terms {
            let used = t.variables_used();
            let include = (used == 1 && t.exponents[var] > 0) || (used == 0 && with_constant);
            if include {
                let e = t.exponents[var];
                let v = i128::from(t.coefficient).checked_mul(i128::from(x).checked_pow(e)?)?;
                total = total.checked_add(v)?;
            }
        }
        Some(total)
    }
}

/// `I(p(x)) - I(x)`, defined only where `p(x) >= 1`.
pub fn delta_poly(p: &Polynomial, inputs: &[BigNat]) -> Result<f64> {
    let value = p.eval(inputs)?;
    if !value.is_positive() {
        return Err(Error::NonPositiveValue(value.to_string()));
    }
    let value = value.magnitude();
    Ok(delta_info(value, inputs).bits())
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.terms.iter().enumerate() {
            let c = t.coefficient;
            match (i, c < 0) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            write!(f, "{}", c.unsigned_abs())?;
            for (v, &e) in t.exponents.iter().enumerate() {
                match e {
                    0 => {}
                    1 => write!(f, "*x{}", v + 1)?,
                    _ => write!(f, "*x{}^{e}", v + 1)?,
                }
            }
        }
        Ok(())
    }
}

/// Parses sums of terms `c*x1^a*x2^b`. The coefficient may be omitted,
/// and `x`, `y`, `z` stand for `x1`, `x2`, `x3`. Arity is the highest
/// variable index used.
impl FromStr for Polynomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut raw_terms: Vec<(bool, &str)> = Vec::new();
        let mut start = 0;
        let mut negative = false;
        let bytes = compact.as_bytes();
        for (i, &b) in bytes.iter().enumerate() {
            if (b == b'+' || b == b'-') && i > start {
                raw_terms.push((negative, &compact[start..i]));
                negative = b == b'-';
                start = i + 1;
            } else if (b == b'+' || b == b'-') && i == start {
                if i != 0 {
                    return Err(Error::Parse(format!("dangling sign in {s:?}")));
                }
                negative = b == b'-';
                start = i + 1;
            }
        }
        if start >= compact.len() {
            return Err(Error::Parse(format!("polynomial ends with an operator: {s:?}")));
        }
        raw_terms.push((negative, &compact[start..]));

        let mut parsed = Vec::with_capacity(raw_terms.len());
        let mut arity = 0;
        for (neg, body) in raw_terms {
            let (coefficient, powers) = parse_term(body)?;
            let coefficient = if neg { -coefficient } else { coefficient };
            arity = arity.max(powers.iter().map(|&(v, _)| v + 1).max().unwrap_or(0));
            parsed.push((coefficient, powers));
        }
        let terms = parsed
            .into_iter()
            .map(|(coefficient, powers)| {
                let mut exponents = vec![0u32; arity];
                for (v, e) in powers {
                    exponents[v] += e;
                }
                Term { coefficient, exponents }
            })
            .collect();
        Polynomial::new(arity, terms)
    }
}

fn parse_term(body: &str) -> Result<(i64, Vec<(usize, u32)>)> {
    let mut coefficient: i64 = 1;
    let mut powers = Vec::new();
    for factor in body.split('*') {
        if factor.is_empty() {
            return Err(Error::Parse(format!("empty factor in term {body:?}")));
        }
        if factor.bytes().all(|b| b.is_ascii_digit()) {
            let c: i64 = factor.parse().map_err(|_| Error::Parse(format!("bad coefficient {factor:?}")))?;
            coefficient = coefficient
                .checked_mul(c)
                .ok_or_else(|| Error::Parse("coefficient overflow".into()))?;
            continue;
        }
        let (name, exp) = match factor.split_once('^') {
            Some((n, e)) => (n, e.parse::<u32>().map_err(|_| Error::Parse(format!("bad exponent in {factor:?}")))?),
            None => (factor, 1),
        };
        let var = match name {
            "x" => 0,
            "y" => 1,
            "z" => 2,
            _ => name
                .strip_prefix('x')
                .and_then(|i| i.parse::<usize>().ok())
                .filter(|&i| i >= 1)
                .map(|i| i - 1)
                .ok_or_else(|| Error::Parse(format!("unknown variable {name:?}")))?,
        };
        powers.push((var, exp));
    }
    Ok((coefficient, powers))
}

impl Polynomial {
    /// True if `p(inputs) == 0`.
    pub fn is_root(&self, inputs: &[BigNat]) -> Result<bool> {
        Ok(self.eval(inputs)?.is_zero())
    }
}
