//! The cardinality, sum and product grids over all finite sets.
//!
//! Every finite set is assigned a cell `(bin, index)`. In the cardinality
//! grid the bin is `|s|` and the index is the combinadic rank, so any cell
//! is reachable directly. The sum and product grids have no such formula:
//! sets are consumed in dense-code order and each one takes the first free
//! index of its bin (`Σs` or `Πs`). Sum bins are finite, so once a bin has
//! received all of its sets, every index past them is vacuous.

mod partition;
mod subset_sum;

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use num_traits::{ToPrimitive, Zero};

use crate::arith::{binomial_u64, BigNat};
use crate::combinadic::{code_to_set, column_rank, set_to_code, SetCursor};
use crate::error::{Error, Result};
use crate::set::FiniteSet;

pub use partition::{
    count_subsets_with_product, count_subsets_with_sum, distinct_partitions, hardy_ramanujan_estimate,
    partition_count,
};
pub use subset_sum::{subset_sum_first, DEFAULT_SUBSET_BUDGET, MAX_SEARCH_SIZE};

/// Default cap on the number of sets a grid build may consume.
pub const DEFAULT_GRID_BUDGET: u64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GridKind {
    Card,
    Sum,
    Prod,
}

impl GridKind {
    pub fn name(self) -> &'static str {
        match self {
            GridKind::Card => "CARD",
            GridKind::Sum => "SUM",
            GridKind::Prod => "PROD",
        }
    }
}

impl fmt::Display for GridKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for GridKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "card" => Ok(GridKind::Card),
            "sum" => Ok(GridKind::Sum),
            "prod" => Ok(GridKind::Prod),
            _ => Err(Error::Parse(format!("unknown grid kind {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridCell {
    pub bin: BigNat,
    pub index: BigNat,
    pub occupant: Option<FiniteSet>,
    /// The cell can never be occupied.
    pub vacuous: bool,
}

/// Cell of `s` in the cardinality grid: `(|s|, rank)`.
pub fn card_grid_locate(s: &FiniteSet) -> GridCell {
    GridCell {
        bin: BigNat::from(s.len()),
        index: column_rank(s),
        occupant: Some(s.clone()),
        vacuous: false,
    }
}

/// State of a grid after consuming a prefix of the set enumeration.
///
/// Occupants are stored by dense code, which is also their consumption
/// order; [`GridSnapshot::occupant`] decodes them on demand.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridSnapshot {
    kind: GridKind,
    sets_consumed: u64,
    bins: BTreeMap<BigNat, Vec<u64>>,
}

impl GridSnapshot {
    pub fn kind(&self) -> GridKind {
        self.kind
    }

    pub fn sets_consumed(&self) -> u64 {
        self.sets_consumed
    }

    /// Dense code of the next set to consume.
    pub fn enumeration_cursor(&self) -> u64 {
        self.sets_consumed
    }

    pub fn bins(&self) -> &BTreeMap<BigNat, Vec<u64>> {
        &self.bins
    }

    /// Dense codes in `bin`, by index.
    pub fn bin(&self, bin: &BigNat) -> &[u64] {
        self.bins.get(bin).map_or(&[], Vec::as_slice)
    }

    pub fn occupied(&self, bin: u64) -> usize {
        self.bin(&BigNat::from(bin)).len()
    }

    /// Cell `(bin, index)` holding `s`, if `s` has been consumed.
    pub fn locate(&self, s: &FiniteSet) -> Option<(BigNat, usize)> {
        let seq = set_to_code(s).dense.to_u64()?;
        if seq >= self.sets_consumed {
            return None;
        }
        let bin = match self.kind {
            GridKind::Card => BigNat::from(s.len()),
            GridKind::Sum => s.sum(),
            GridKind::Prod => s.product(),
        };
        let index = self.bin(&bin).binary_search(&seq).ok()?;
        Some((bin, index))
    }

    pub fn occupant(&self, bin: &BigNat, index: usize) -> Option<FiniteSet> {
        self.bin(bin).get(index).map(|&seq| code_to_set(&BigNat::from(seq)))
    }

    /// Final size of `bin`, when it is finite.
    pub fn bin_capacity(&self, bin: u64) -> Option<BigNat> {
        match self.kind {
            GridKind::Card => None,
            GridKind::Sum => Some(count_subsets_with_sum(bin)),
            GridKind::Prod if bin == 0 => None,
            GridKind::Prod => Some(BigNat::from(count_subsets_with_product(bin))),
        }
    }

    /// True once `bin` holds every set it will ever hold.
    pub fn bin_complete(&self, bin: u64) -> bool {
        self.bin_capacity(bin)
            .is_some_and(|cap| BigNat::from(self.occupied(bin)) == cap)
    }

    pub fn cell(&self, bin: u64, index: u64) -> GridCell {
        let key = BigNat::from(bin);
        let occupant = self.occupant(&key, index as usize);
        let vacuous = occupant.is_none()
            && self
                .bin_capacity(bin)
                .is_some_and(|cap| BigNat::from(index) >= cap);
        GridCell { bin: key, index: BigNat::from(index), occupant, vacuous }
    }

    /// One row per occupied cell, in consumption order.
    pub fn to_csv(&self) -> String {
        let mut rows: Vec<(u64, &BigNat, usize)> = self
            .bins
            .iter()
            .flat_map(|(bin, seqs)| seqs.iter().enumerate().map(move |(i, &seq)| (seq, bin, i)))
            .collect();
        rows.sort_unstable_by_key(|r| r.0);
        let mut out = String::from("kind,seq,bin,index,set\n");
        for (seq, bin, index) in rows {
            let set = code_to_set(&BigNat::from(seq));
            let _ = writeln!(out, "{},{seq},{bin},{index},\"{set}\"", self.kind);
        }
        out
    }

    /// Plain PGM of bins `0..=max_bin` (columns) against indices (rows).
    /// Occupied cells are black, vacuous cells gray, the rest white.
    pub fn to_pgm(&self, max_bin: u64) -> String {
        let width = max_bin + 1;
        let height = (0..=max_bin).map(|b| self.occupied(b)).max().unwrap_or(0).max(1);
        let mut out = format!("P2\n{width} {height}\n2\n");
        for row in 0..height {
            let line: Vec<&str> = (0..=max_bin)
                .map(|b| {
                    let cell = self.cell(b, row as u64);
                    if cell.occupant.is_some() {
                        "0"
                    } else if cell.vacuous {
                        "1"
                    } else {
                        "2"
                    }
                })
                .collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }
}

/// Occupancy of one bin.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinStats {
    pub bin: u64,
    pub occupied: u64,
    pub max_index: Option<u64>,
    pub complete: bool,
}

pub fn vacuous_stats(g: &GridSnapshot, bins: std::ops::RangeInclusive<u64>) -> Vec<BinStats> {
    bins.map(|bin| {
        let occupied = g.occupied(bin) as u64;
        BinStats { bin, occupied, max_index: occupied.checked_sub(1), complete: g.bin_complete(bin) }
    })
    .collect()
}

/// Single-owner builder that distributes sets over a grid and can be
/// extended in steps.
#[derive(Debug, Clone)]
pub struct GridBuilder {
    kind: GridKind,
    budget: u64,
    cursor: SetCursor,
    bins: BTreeMap<BigNat, Vec<u64>>,
}

impl GridBuilder {
    pub fn new(kind: GridKind) -> Self {
        GridBuilder { kind, budget: DEFAULT_GRID_BUDGET, cursor: SetCursor::new(), bins: BTreeMap::new() }
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }

    /// Resumes construction from a snapshot.
    pub fn resume(snapshot: GridSnapshot, budget: u64) -> Self {
        let mut cursor = SetCursor::new();
        for _ in 0..snapshot.sets_consumed {
            cursor.advance();
        }
        GridBuilder { kind: snapshot.kind, budget, cursor, bins: snapshot.bins }
    }

    pub fn sets_consumed(&self) -> u64 {
        self.cursor.position()
    }

    /// Consumes sets until `n_sets` have been placed in total.
    pub fn extend_to(&mut self, n_sets: u64) -> Result<()> {
        if n_sets > self.budget {
            return Err(Error::BudgetExceeded { needed: n_sets.into(), budget: self.budget.into() });
        }
        while self.cursor.position() < n_sets {
            let e = self.cursor.advance();
            let bin = match self.kind {
                GridKind::Card => BigNat::from(e.cardinality()),
                GridKind::Sum => BigNat::from(e.sum),
                GridKind::Prod => e.product(),
            };
            let seq = e.seq;
            self.bins.entry(bin).or_default().push(seq);
        }
        Ok(())
    }

    pub fn snapshot(&self) -> GridSnapshot {
        GridSnapshot { kind: self.kind, sets_consumed: self.cursor.position(), bins: self.bins.clone() }
    }

    pub fn into_snapshot(self) -> GridSnapshot {
        GridSnapshot { kind: self.kind, sets_consumed: self.cursor.position(), bins: self.bins }
    }
}

pub fn grid_build(kind: GridKind, n_sets: u64, budget: u64) -> Result<GridSnapshot> {
    let mut b = GridBuilder::new(kind).with_budget(budget);
    b.extend_to(n_sets)?;
    Ok(b.into_snapshot())
}

pub fn sum_grid_build(n_sets: u64) -> Result<GridSnapshot> {
    grid_build(GridKind::Sum, n_sets, DEFAULT_GRID_BUDGET)
}

pub fn prod_grid_build(n_sets: u64) -> Result<GridSnapshot> {
    grid_build(GridKind::Prod, n_sets, DEFAULT_GRID_BUDGET)
}

/// Length of the shortest enumeration prefix containing every subset of
/// `{0, ..., m}`.
///
/// The last of them in each column `k` has rank `C(m+1, k) - 1` and lies
/// on diagonal `k + rank`.
pub fn sets_covering(m: u64) -> Option<u64> {
    let mut last = 0u64;
    for k in 1..=m + 1 {
        let rank = binomial_u64(m + 1, k)? - 1;
        let d = k.checked_add(rank)?;
        let dense = d.checked_mul(d - 1)?.checked_div(2)?.checked_add(1 + rank)?;
        last = last.max(dense);
    }
    last.checked_add(1)
}

/// Bin keys that fit in 64 bits, for display.
pub fn small_bins(g: &GridSnapshot) -> impl Iterator<Item = u64> + '_ {
    g.bins.keys().filter_map(|b| if b.is_zero() { Some(0) } else { b.to_u64() })
}
