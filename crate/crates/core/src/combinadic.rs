//! The combinatorial number system and the coding of finite sets as naturals.
//!
//! A k-subset `s_1 < s_2 < ... < s_k` has rank `C(s_k, k) + ... + C(s_1, 1)`,
//! its position in colexicographic order. A whole set is coded by pairing
//! its cardinality with that rank. The raw code skips nothing in the
//! Cantor grid, so codes `cantor_pair(0, j)` for `j >= 1` have no
//! preimage; the dense code closes those gaps.

use num_traits::{One, ToPrimitive, Zero};

use crate::arith::{binomial_k, info, isqrt, triangular, BigNat, InfoValue};
use crate::error::{Error, Result};
use crate::pairing::{cantor_pair, cantor_unpair};
use crate::set::FiniteSet;

pub fn rank_kset(s: &FiniteSet) -> Result<BigNat> {
    if s.is_empty() {
        return Err(Error::EmptySet);
    }
    Ok(rank_nonempty(s))
}

fn rank_nonempty(s: &FiniteSet) -> BigNat {
    s.iter()
        .enumerate()
        .map(|(i, v)| binomial_k(v, i as u64 + 1))
        .sum()
}

/// Rank within the cardinality column; the empty set has rank 0.
pub fn column_rank(s: &FiniteSet) -> BigNat {
    if s.is_empty() {
        BigNat::zero()
    } else {
        rank_nonempty(s)
    }
}

/// Inverse of [`rank_kset`] for cardinality `k >= 1`.
pub fn unrank_kset(k: u64, idx: &BigNat) -> Result<FiniteSet> {
    if k == 0 {
        return Err(Error::InvalidArgument("cardinality must be at least 1".into()));
    }
    Ok(unrank_column(k, idx))
}

fn unrank_column(k: u64, idx: &BigNat) -> FiniteSet {
    let mut rem = idx.clone();
    let mut out = Vec::with_capacity(k as usize);
    for i in (1..=k).rev() {
        let v = largest_with_binomial_at_most(i, &rem);
        rem -= binomial_k(&v, i);
        out.push(v);
    }
    out.reverse();
    FiniteSet::from_sorted_unchecked(out)
}

/// Largest `v` with `C(v, i) <= rem`. `C(v, i)` is zero below `v = i` and
/// strictly increasing from there, so the search starts at `i - 1`.
fn largest_with_binomial_at_most(i: u64, rem: &BigNat) -> BigNat {
    if i == 1 {
        return rem.clone();
    }
    let mut lo = BigNat::from(i - 1);
    let mut step = BigNat::one();
    let mut hi = &lo + &step;
    while binomial_k(&hi, i) <= *rem {
        lo = hi;
        step <<= 1;
        hi = &lo + &step;
    }
    // invariant: C(lo, i) <= rem < C(hi, i)
    while &hi - &lo > BigNat::one() {
        let mid: BigNat = (&lo + &hi) >> 1;
        if binomial_k(&mid, i) <= *rem {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

/// Both codes of a finite set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetCode {
    /// `cantor_pair(|s|, rank)`.
    pub raw: BigNat,
    /// Position in the gap-free enumeration of all finite sets.
    pub dense: BigNat,
}

/// Number of vacuous codes `cantor_pair(0, j) = (j^2 + 3j) / 2`, `j >= 1`, below `raw`.
pub fn vacuous_codes_below(raw: &BigNat) -> BigNat {
    if raw.is_zero() {
        return BigNat::zero();
    }
    let twice = raw << 1;
    let below = |j: &BigNat| j * j + j * 3u32 < twice;
    // j^2 + 3j < 2 raw  <=>  j < (sqrt(8 raw + 9) - 3) / 2
    let root = isqrt(&((raw << 3) + 9u32));
    let mut j = if root >= BigNat::from(3u32) { (root - 3u32) >> 1 } else { BigNat::zero() };
    while !j.is_zero() && !below(&j) {
        j -= 1u32;
    }
    while below(&(&j + 1u32)) {
        j += 1u32;
    }
    j
}

pub fn set_to_code(s: &FiniteSet) -> SetCode {
    let raw = cantor_pair(&BigNat::from(s.len()), &column_rank(s));
    let dense = &raw - vacuous_codes_below(&raw);
    SetCode { raw, dense }
}

/// Raw code for a dense rank.
///
/// Diagonal `d >= 1` of the Cantor grid carries `d` real codes, so the
/// dense ranks before diagonal `d` number `1 + d(d - 1)/2`.
pub fn dense_to_raw(dense: &BigNat) -> BigNat {
    if dense.is_zero() {
        return BigNat::zero();
    }
    let (d, offset) = dense_diagonal(dense);
    triangular(&d) + offset
}

/// Diagonal and offset (the column rank) of a nonzero dense code.
fn dense_diagonal(dense: &BigNat) -> (BigNat, BigNat) {
    // largest d >= 1 with d(d - 1)/2 <= dense - 1
    let m: BigNat = dense - 1u32;
    let mut d = (isqrt(&((&m << 3) + 1u32)) + 1u32) >> 1;
    let before = |d: &BigNat| -> BigNat { (d * (d - 1u32)) >> 1 };
    while before(&d) > m {
        d -= 1u32;
    }
    while before(&(&d + 1u32)) <= m {
        d += 1u32;
    }
    let offset = m - before(&d);
    (d, offset)
}

pub fn code_to_set(dense: &BigNat) -> FiniteSet {
    if dense.is_zero() {
        return FiniteSet::empty();
    }
    let (d, rank) = dense_diagonal(dense);
    let k = (&d - &rank).to_u64().expect("cardinality fits in 64 bits");
    unrank_column(k, &rank)
}

/// Information in a set: the information in its raw code.
pub fn set_info(s: &FiniteSet) -> InfoValue {
    info(&set_to_code(s).raw)
}

/// `set_info(s) - info(|s|) - info(rank)`, the constant left over after
/// splitting a set's information into its cardinality and rank.
pub fn balance_check(s: &FiniteSet) -> Result<f64> {
    if s.is_empty() {
        return Err(Error::EmptySet);
    }
    balance_for(&BigNat::from(s.len()), &rank_nonempty(s))
}

/// [`balance_check`] from the cardinality-grid coordinates alone.
pub fn balance_for(cardinality: &BigNat, rank: &BigNat) -> Result<f64> {
    if rank.is_zero() {
        return Err(Error::ZeroRank);
    }
    let raw = cantor_pair(cardinality, rank);
    Ok((info(&raw) - info(cardinality) - info(rank)).bits())
}

/// Cardinality and column rank of a raw code, `None` for a vacuous code.
pub fn raw_to_coordinates(raw: &BigNat) -> Option<(BigNat, BigNat)> {
    let p = cantor_unpair(raw);
    if p.x.is_zero() && !p.y.is_zero() {
        None
    } else {
        Some((p.x, p.y))
    }
}

/// The first `limit` sets in dense-code order.
pub fn enumerate_sets(limit: usize) -> Vec<FiniteSet> {
    SetEnumeration::new().take(limit).collect()
}

/// Iterator over all finite sets in dense-code order.
#[derive(Debug, Clone, Default)]
pub struct SetEnumeration {
    cursor: SetCursor,
}

impl SetEnumeration {
    pub fn new() -> Self {
        Self::default()
    }
}

impl Iterator for SetEnumeration {
    type Item = FiniteSet;

    fn next(&mut self) -> Option<FiniteSet> {
        let entry = self.cursor.advance();
        Some(FiniteSet::from_sorted_unchecked(
            entry.elements.iter().map(|&v| BigNat::from(v)).collect(),
        ))
    }
}

/// Incremental walk over the dense enumeration.
///
/// Diagonal `d` visits cardinalities `d, d-1, ..., 1` with column ranks
/// `0, 1, ..., d-1`, so each cardinality column moves exactly one step
/// per diagonal. Each column keeps its current set and element sum and
/// advances by colexicographic successor, so no unranking is needed.
#[derive(Debug, Clone, Default)]
pub struct SetCursor {
    seq: u64,
    diagonal: u64,
    offset: u64,
    columns: Vec<Column>,
}

#[derive(Debug, Clone)]
struct Column {
    elements: Vec<u64>,
    sum: u128,
}

/// One set produced by [`SetCursor::advance`].
#[derive(Debug, Clone, Copy)]
pub struct CursorEntry<'a> {
    /// Dense code of this set.
    pub seq: u64,
    pub rank: u64,
    pub elements: &'a [u64],
    pub sum: u128,
}

impl CursorEntry<'_> {
    pub fn cardinality(&self) -> usize {
        self.elements.len()
    }

    pub fn to_set(&self) -> FiniteSet {
        FiniteSet::from_sorted_unchecked(self.elements.iter().map(|&v| BigNat::from(v)).collect())
    }

    pub fn product(&self) -> BigNat {
        match self.elements.first() {
            Some(0) => BigNat::zero(),
            _ => self.elements.iter().fold(BigNat::one(), |acc, &v| acc * v),
        }
    }
}

impl SetCursor {
    pub fn new() -> Self {
        Self::default()
    }

    /// Dense code of the set the next call returns.
    pub fn position(&self) -> u64 {
        self.seq
    }

    pub fn advance(&mut self) -> CursorEntry<'_> {
        let seq = self.seq;
        self.seq += 1;
        if seq == 0 {
            self.diagonal = 1;
            self.offset = 0;
            return CursorEntry { seq, rank: 0, elements: &[], sum: 0 };
        }
        let d = self.diagonal;
        let rank = self.offset;
        let k = (d - rank) as usize;
        if rank == 0 {
            let elements: Vec<u64> = (0..d).collect();
            let sum = u128::from(d) * u128::from(d.saturating_sub(1)) / 2;
            self.columns.push(Column { elements, sum });
            debug_assert_eq!(self.columns.len(), k);
        } else {
            colex_successor(&mut self.columns[k - 1]);
        }
        self.offset += 1;
        if self.offset == d {
            self.diagonal += 1;
            self.offset = 0;
        }
        let col = &self.columns[k - 1];
        CursorEntry { seq, rank, elements: &col.elements, sum: col.sum }
    }
}

fn colex_successor(col: &mut Column) {
    let a = &mut col.elements;
    let k = a.len();
    let i = (0..k).find(|&i| i + 1 == k || a[i] + 1 < a[i + 1]).expect("nonempty column");
    let mut removed: u128 = 0;
    let mut added: u128 = 0;
    for (j, v) in a.iter_mut().enumerate().take(i) {
        removed += u128::from(*v);
        added += j as u128;
        *v = j as u64;
    }
    a[i] += 1;
    col.sum = col.sum + added + 1 - removed;
}
