use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::arith::BigNat;
use crate::error::{Error, Result};

/// A finite set of naturals, held as a strictly increasing sequence.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FiniteSet {
    elements: Vec<BigNat>,
}

impl FiniteSet {
    pub fn empty() -> Self {
        FiniteSet::default()
    }

    /// Takes elements that must already be strictly increasing.
    pub fn new(elements: Vec<BigNat>) -> Result<Self> {
        if let Some(i) = elements.windows(2).position(|w| w[0] >= w[1]) {
            return Err(Error::NotStrictlyIncreasing(i + 1));
        }
        Ok(FiniteSet { elements })
    }

    /// Sorts and deduplicates.
    pub fn from_unsorted(mut elements: Vec<BigNat>) -> Self {
        elements.sort();
        elements.dedup();
        FiniteSet { elements }
    }

    pub fn from_u64s(values: &[u64]) -> Self {
        FiniteSet::from_unsorted(values.iter().map(|&v| BigNat::from(v)).collect())
    }

    pub(crate) fn from_sorted_unchecked(elements: Vec<BigNat>) -> Self {
        debug_assert!(elements.windows(2).all(|w| w[0] < w[1]));
        FiniteSet { elements }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[BigNat] {
        &self.elements
    }

    pub fn iter(&self) -> std::slice::Iter<'_, BigNat> {
        self.elements.iter()
    }

    pub fn max(&self) -> Option<&BigNat> {
        self.elements.last()
    }

    pub fn contains(&self, v: &BigNat) -> bool {
        self.elements.binary_search(v).is_ok()
    }

    pub fn sum(&self) -> BigNat {
        self.elements.iter().sum()
    }

    /// Product of the elements; the empty product is 1.
    pub fn product(&self) -> BigNat {
        if self.elements.first().is_some_and(Zero::is_zero) {
            return BigNat::zero();
        }
        self.elements.iter().fold(BigNat::one(), |acc, x| acc * x)
    }

    pub fn into_vec(self) -> Vec<BigNat> {
        self.elements
    }
}

impl<'a> IntoIterator for &'a FiniteSet {
    type Item = &'a BigNat;
    type IntoIter = std::slice::Iter<'a, BigNat>;
    fn into_iter(self) -> Self::IntoIter {
        self.elements.iter()
    }
}

impl fmt::Display for FiniteSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, e) in self.elements.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("}")
    }
}

/// Parses `{a,b,c}` with ascending decimals; `{}` is the empty set.
impl FromStr for FiniteSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let inner = s
            .trim()
            .strip_prefix('{')
            .and_then(|r| r.strip_suffix('}'))
            .ok_or_else(|| Error::Parse(format!("set literal must be braced: {s:?}")))?;
        if inner.trim().is_empty() {
            return Ok(FiniteSet::empty());
        }
        let elements = inner
            .split(',')
            .map(|tok| {
                let tok = tok.trim();
                if tok.is_empty() || !tok.bytes().all(|b| b.is_ascii_digit()) {
                    return Err(Error::Parse(format!("bad set element {tok:?}")));
                }
                BigNat::from_str(tok).map_err(|e| Error::Parse(e.to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        FiniteSet::new(elements)
    }
}
