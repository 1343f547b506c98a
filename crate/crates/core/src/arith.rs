//! Exact natural-number arithmetic and the logarithmic information measure.
//!
//! Every combinatorial quantity in the crate is an exact [`BigNat`]. The
//! only floating-point values are information measurements, which are
//! always computed in bits and converted to other bases on request.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision natural number.
pub type BigNat = BigUint;

/// Base of the logarithm used when reporting information.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogBase(f64);

impl LogBase {
    pub const BITS: LogBase = LogBase(2.0);
    pub const NATS: LogBase = LogBase(std::f64::consts::E);

    pub fn new(base: f64) -> Result<Self> {
        if base.is_finite() && base > 1.0 {
            Ok(LogBase(base))
        } else {
            Err(Error::InvalidArgument(format!("log base must be > 1, got {base}")))
        }
    }

    pub fn get(self) -> f64 {
        self.0
    }

    /// Converts a quantity measured in bits into this base.
    pub fn from_bits(self, bits: f64) -> f64 {
        if self.0 == 2.0 {
            bits
        } else {
            bits / self.0.log2()
        }
    }
}

impl Default for LogBase {
    fn default() -> Self {
        LogBase::BITS
    }
}

impl fmt::Display for LogBase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 2.0 {
            f.write_str("2")
        } else if self.0 == std::f64::consts::E {
            f.write_str("e")
        } else {
            write!(f, "{}", self.0)
        }
    }
}

/// An amount of information, stored in bits.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Default)]
pub struct InfoValue {
    bits: f64,
}

impl InfoValue {
    pub const ZERO: InfoValue = InfoValue { bits: 0.0 };

    pub fn from_bits(bits: f64) -> Self {
        InfoValue { bits }
    }

    pub fn bits(self) -> f64 {
        self.bits
    }

    pub fn in_base(self, base: LogBase) -> f64 {
        base.from_bits(self.bits)
    }
}

impl Add for InfoValue {
    type Output = InfoValue;
    fn add(self, rhs: InfoValue) -> InfoValue {
        InfoValue::from_bits(self.bits + rhs.bits)
    }
}

impl Sub for InfoValue {
    type Output = InfoValue;
    fn sub(self, rhs: InfoValue) -> InfoValue {
        InfoValue::from_bits(self.bits - rhs.bits)
    }
}

impl Neg for InfoValue {
    type Output = InfoValue;
    fn neg(self) -> InfoValue {
        InfoValue::from_bits(-self.bits)
    }
}

impl Sum for InfoValue {
    fn sum<I: Iterator<Item = InfoValue>>(iter: I) -> InfoValue {
        iter.fold(InfoValue::ZERO, Add::add)
    }
}

impl fmt::Display for InfoValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} bits", self.bits)
    }
}

/// `log2 n`, with `log 0 = log 1 = 0`.
///
/// Numbers wider than 64 bits are measured as their exact bit length plus
/// the logarithm of the leading 64 bits, which keeps well over 12
/// significant digits for any size.
pub fn info(n: &BigNat) -> InfoValue {
    let len = n.bits();
    if len <= 1 {
        return InfoValue::ZERO;
    }
    if len <= 64 {
        return info_u64(n.to_u64().expect("fits in 64 bits"));
    }
    let shift = len - 64;
    let top = (n >> shift).to_u64().expect("64 leading bits");
    InfoValue::from_bits(shift as f64 + (top as f64).log2())
}

pub fn info_u64(n: u64) -> InfoValue {
    if n <= 1 {
        InfoValue::ZERO
    } else {
        InfoValue::from_bits((n as f64).log2())
    }
}

/// `log2(num / den)` from the exact quotient, where 0 and 1 both carry no
/// information. Equal arguments give exactly 0, and a power-of-two ratio
/// gives an exact integer.
pub fn info_ratio(num: &BigNat, den: &BigNat) -> InfoValue {
    let one = BigNat::one();
    let num = if num.is_zero() { &one } else { num };
    let den = if den.is_zero() { &one } else { den };
    // keep at least 64 significant bits in the quotient
    let scale = den.bits() + 64;
    let q: BigNat = (num << scale) / den;
    let len = q.bits();
    let top = (&q >> (len - 64)).to_u64().expect("64 leading bits");
    let exponent = len as i64 - 64 - scale as i64;
    InfoValue::from_bits(exponent as f64 + (top as f64).log2())
}

/// `I(output) - I(inputs)` as a single quotient, so multiplicative
/// identities cancel exactly.
pub fn delta_info<'a, I>(output: &BigNat, inputs: I) -> InfoValue
where
    I: IntoIterator<Item = &'a BigNat>,
{
    let den: BigNat = inputs.into_iter().filter(|x| !x.is_zero()).product();
    info_ratio(output, &den)
}

/// Information in a tuple: the sum of the information of its entries.
pub fn tuple_info<'a, I>(xs: I) -> InfoValue
where
    I: IntoIterator<Item = &'a BigNat>,
{
    xs.into_iter().map(info).sum()
}

/// `C(n, k)`, zero when `k > n`.
pub fn binomial(n: &BigNat, k: &BigNat) -> BigNat {
    if k > n {
        return BigNat::zero();
    }
    let rest = n - k;
    let k = if &rest < k { rest } else { k.clone() };
    let k = k
        .to_u64()
        .expect("binomial with both k and n-k beyond 2^64 is not representable");
    binomial_k(n, k)
}

/// `C(n, k)` for a machine-sized lower index.
pub fn binomial_k(n: &BigNat, k: u64) -> BigNat {
    if BigNat::from(k) > *n {
        return BigNat::zero();
    }
    let mut acc = BigNat::one();
    let mut top = n - BigNat::from(k);
    for i in 1..=k {
        top += 1u32;
        acc *= &top;
        acc /= i;
    }
    acc
}

/// `C(n, k)` in machine words; `None` on overflow.
pub fn binomial_u64(n: u64, k: u64) -> Option<u64> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 1..=k {
        acc = acc * u128::from(n - k + i) / u128::from(i);
        if acc > u128::from(u64::MAX) {
            return None;
        }
    }
    Some(acc as u64)
}

/// Largest `r` with `r * r <= n`.
pub fn isqrt(n: &BigNat) -> BigNat {
    n.sqrt()
}

/// The `d`-th triangular number `d (d + 1) / 2`.
pub fn triangular(d: &BigNat) -> BigNat {
    (d * (d + 1u32)) >> 1
}

/// Largest `w` with `w (w + 1) / 2 <= n`, from the exact square root of `8n + 1`.
pub fn triangular_root(n: &BigNat) -> BigNat {
    let disc: BigNat = (n << 3) + 1u32;
    (isqrt(&disc) - 1u32) >> 1
}
