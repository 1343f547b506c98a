//! Exhaustive solution counts of `p(x) = 0` over a box `[1, bound]^k`.

use std::collections::HashMap;

use num_traits::Zero;

use crate::arith::BigNat;
use crate::error::{Error, Result};

use super::poly::Polynomial;

/// Default cap on the number of tuples a count may visit.
pub const DEFAULT_TUPLE_BUDGET: u128 = 100_000_000;

pub const MAX_EXHAUSTIVE_ARITY: usize = 3;

#[derive(Debug, Clone, PartialEq)]
pub struct SolutionDensity {
    pub solutions: u64,
    pub total: u128,
    pub density: f64,
}

/// Counts roots of `p` in `[1, bound]^k`. With `exclude_trivial`, tuples
/// with a repeated coordinate are skipped (coordinates are never zero).
pub fn diophantine_density(
    p: &Polynomial,
    bound: u64,
    exclude_trivial: bool,
    budget: u128,
) -> Result<SolutionDensity> {
    let mut solutions = 0u64;
    let total = for_each_root(p, bound, exclude_trivial, budget, |_| solutions += 1)?;
    let density = if total == 0 { 0.0 } else { solutions as f64 / total as f64 };
    Ok(SolutionDensity { solutions, total, density })
}

/// All roots of `p` in `[1, bound]^k`, in lexicographic order.
pub fn diophantine_solutions(
    p: &Polynomial,
    bound: u64,
    exclude_trivial: bool,
    budget: u128,
) -> Result<Vec<Vec<u64>>> {
    let mut out = Vec::new();
    for_each_root(p, bound, exclude_trivial, budget, |x| out.push(x.to_vec()))?;
    out.sort();
    Ok(out)
}

fn for_each_root(
    p: &Polynomial,
    bound: u64,
    exclude_trivial: bool,
    budget: u128,
    mut visit: impl FnMut(&[u64]),
) -> Result<u128> {
    let k = p.arity();
    if k == 0 || k > MAX_EXHAUSTIVE_ARITY {
        return Err(Error::InvalidArgument(format!(
            "exhaustive counting supports arity 1..={MAX_EXHAUSTIVE_ARITY}, got {k}"
        )));
    }
    let total = u128::from(bound)
        .checked_pow(k as u32)
        .ok_or(Error::BudgetExceeded { needed: u128::MAX, budget })?;
    if total > budget {
        return Err(Error::BudgetExceeded { needed: total, budget });
    }
    let mut emit = |x: &[u64]| {
        if !(exclude_trivial && has_repeat(x)) {
            visit(x);
        }
    };
    if k >= 2 && p.is_separable() {
        if let Some(index) = LastVariableIndex::build(p, bound) {
            if join_on_last_variable(p, bound, &index, &mut emit) {
                return Ok(total);
            }
        }
    }
    let mut x = vec![1u64; k];
    loop {
        if is_root(p, &x) {
            emit(&x);
        }
        if !next_tuple(&mut x, bound) {
            break;
        }
    }
    Ok(total)
}

fn is_root(p: &Polynomial, x: &[u64]) -> bool {
    match p.eval_i128(x) {
        Some(v) => v == 0,
        None => {
            let big: Vec<BigNat> = x.iter().map(|&v| BigNat::from(v)).collect();
            p.eval(&big).map(|v| v.is_zero()).unwrap_or(false)
        }
    }
}

fn has_repeat(x: &[u64]) -> bool {
    (0..x.len()).any(|i| x[i + 1..].contains(&x[i]))
}

fn next_tuple(x: &mut [u64], bound: u64) -> bool {
    if bound == 0 {
        return false;
    }
    for v in x.iter_mut().rev() {
        if *v < bound {
            *v += 1;
            return true;
        }
        *v = 1;
    }
    false
}

/// Values of the last variable's part of a separable polynomial.
struct LastVariableIndex {
    by_value: HashMap<i128, Vec<u64>>,
}

impl LastVariableIndex {
    fn build(p: &Polynomial, bound: u64) -> Option<Self> {
        let last = p.arity() - 1;
        let mut by_value: HashMap<i128, Vec<u64>> = HashMap::new();
        for z in 1..=bound {
            by_value.entry(p.univariate_part_i128(last, z, false)?).or_default().push(z);
        }
        Some(LastVariableIndex { by_value })
    }
}

/// Meet-in-the-middle over a separable polynomial: for each prefix of the
/// first `k - 1` coordinates, look up the last coordinates that cancel it.
/// Returns false, without emitting, if any prefix value overflows.
fn join_on_last_variable(
    p: &Polynomial,
    bound: u64,
    index: &LastVariableIndex,
    emit: &mut impl FnMut(&[u64]),
) -> bool {
    let k = p.arity();
    let head = k - 1;
    let parts: Option<Vec<Vec<i128>>> = (0..head)
        .map(|var| {
            (1..=bound)
                .map(|x| p.univariate_part_i128(var, x, var == 0))
                .collect::<Option<Vec<_>>>()
        })
        .collect();
    let Some(parts) = parts else { return false };

    let mut prefix = vec![1u64; head];
    let mut hits: Vec<(Vec<u64>, u64)> = Vec::new();
    loop {
        let mut s: i128 = 0;
        for (var, &x) in prefix.iter().enumerate() {
            match s.checked_add(parts[var][(x - 1) as usize]) {
                Some(v) => s = v,
                None => return false,
            }
        }
        let Some(target) = s.checked_neg() else { return false };
        if let Some(zs) = index.by_value.get(&target) {
            for &z in zs {
                hits.push((prefix.clone(), z));
            }
        }
        if !next_tuple(&mut prefix, bound) {
            break;
        }
    }
    let mut tuple = vec![0u64; k];
    for (pre, z) in hits {
        tuple[..head].copy_from_slice(&pre);
        tuple[head] = z;
        emit(&tuple);
    }
    true
}
