//! Cantor pairing, its inverse, the k-ary right fold, and the encoding of
//! directed graphs as point sets on the Cantor grid.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use num_traits::ToPrimitive;

use crate::arith::{triangular, triangular_root, BigNat};
use crate::error::{Error, Result};
use crate::set::FiniteSet;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Pair {
    pub x: BigNat,
    pub y: BigNat,
}

impl Pair {
    pub fn new(x: impl Into<BigNat>, y: impl Into<BigNat>) -> Self {
        Pair { x: x.into(), y: y.into() }
    }
}

/// `(x + y)(x + y + 1) / 2 + y`.
pub fn cantor_pair(x: &BigNat, y: &BigNat) -> BigNat {
    triangular(&(x + y)) + y
}

/// Inverse of [`cantor_pair`] through the exact triangular root.
pub fn cantor_unpair(n: &BigNat) -> Pair {
    let w = triangular_root(n);
    let y = n - triangular(&w);
    let x = &w - &y;
    Pair { x, y }
}

/// Right fold of [`cantor_pair`]: `<x0, <x1, ... <x_{k-2}, x_{k-1}>>>`.
pub fn cantor_pair_k(xs: &[BigNat], arity: usize) -> Result<BigNat> {
    if arity == 0 {
        return Err(Error::InvalidArgument("arity must be at least 1".into()));
    }
    if xs.len() != arity {
        return Err(Error::ArityMismatch { expected: arity, got: xs.len() });
    }
    let (last, init) = xs.split_last().expect("arity >= 1");
    Ok(init.iter().rev().fold(last.clone(), |acc, x| cantor_pair(x, &acc)))
}

/// Inverse of [`cantor_pair_k`].
pub fn cantor_unpair_k(n: &BigNat, arity: usize) -> Result<Vec<BigNat>> {
    if arity == 0 {
        return Err(Error::InvalidArgument("arity must be at least 1".into()));
    }
    let mut out = Vec::with_capacity(arity);
    let mut rest = n.clone();
    for _ in 1..arity {
        let Pair { x, y } = cantor_unpair(&rest);
        out.push(x);
        rest = y;
    }
    out.push(rest);
    Ok(out)
}

/// A directed graph on nodes `0..node_count`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DirectedGraph {
    node_count: u64,
    links: BTreeSet<(u64, u64)>,
}

impl DirectedGraph {
    pub fn new(node_count: u64, links: impl IntoIterator<Item = (u64, u64)>) -> Result<Self> {
        let mut g = DirectedGraph { node_count, links: BTreeSet::new() };
        for (a, b) in links {
            g.add_link(a, b)?;
        }
        Ok(g)
    }

    pub fn add_link(&mut self, a: u64, b: u64) -> Result<()> {
        if a >= self.node_count || b >= self.node_count {
            return Err(Error::LinkOutOfRange {
                a: a.to_string(),
                b: b.to_string(),
                node_count: self.node_count,
            });
        }
        if !self.links.insert((a, b)) {
            return Err(Error::DuplicateLink(a.to_string(), b.to_string()));
        }
        Ok(())
    }

    pub fn node_count(&self) -> u64 {
        self.node_count
    }

    pub fn links(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.links.iter().copied()
    }

    pub fn link_count(&self) -> usize {
        self.links.len()
    }

    /// Text form: `n <count>` then one `a b` line per link.
    pub fn to_text(&self) -> String {
        let mut out = format!("n {}\n", self.node_count);
        for (a, b) in &self.links {
            let _ = writeln!(out, "{a} {b}");
        }
        out
    }

    pub fn parse_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let header = lines.next().ok_or_else(|| Error::Parse("empty graph text".into()))?;
        let count = header
            .strip_prefix('n')
            .filter(|rest| rest.starts_with(char::is_whitespace))
            .and_then(|rest| rest.trim().parse::<u64>().ok())
            .ok_or_else(|| Error::Parse(format!("bad graph header {header:?}")))?;
        let mut g = DirectedGraph { node_count: count, links: BTreeSet::new() };
        for line in lines {
            let mut parts = line.split_whitespace();
            let (Some(a), Some(b), None) = (parts.next(), parts.next(), parts.next()) else {
                return Err(Error::Parse(format!("bad link line {line:?}")));
            };
            let parse = |t: &str| t.parse::<u64>().map_err(|_| Error::Parse(format!("bad node id {t:?}")));
            g.add_link(parse(a)?, parse(b)?)?;
        }
        Ok(g)
    }
}

/// Maps each link `(a, b)` to `cantor_pair(a, b)`. The node count is not encoded.
pub fn graph_encode(g: &DirectedGraph) -> FiniteSet {
    FiniteSet::from_unsorted(
        g.links()
            .map(|(a, b)| cantor_pair(&BigNat::from(a), &BigNat::from(b)))
            .collect(),
    )
}

pub fn graph_decode(s: &FiniteSet, node_count: u64) -> Result<DirectedGraph> {
    let mut g = DirectedGraph { node_count, links: BTreeSet::new() };
    for code in s {
        let Pair { x, y } = cantor_unpair(code);
        let in_range = |v: &BigNat| v.to_u64().filter(|&v| v < node_count);
        match (in_range(&x), in_range(&y)) {
            (Some(a), Some(b)) => {
                g.links.insert((a, b));
            }
            _ => {
                return Err(Error::LinkOutOfRange {
                    a: x.to_string(),
                    b: y.to_string(),
                    node_count,
                })
            }
        }
    }
    Ok(g)
}

/// Pairs listed along the diagonals `(0,0), (1,0), (0,1), (2,0), ...`;
/// the position in this walk is the pair's Cantor code.
pub fn diagonal_walk() -> impl Iterator<Item = (u64, u64)> {
    (0u64..).flat_map(|d| (0..=d).map(move |y| (d - y, y)))
}
