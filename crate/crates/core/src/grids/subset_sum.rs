//! Systematic subset-sum search in cardinality-grid order.

use num_traits::Zero;

use crate::arith::BigNat;
use crate::error::{Error, Result};
use crate::set::FiniteSet;

/// Default cap on subsets examined, `2^30`.
pub const DEFAULT_SUBSET_BUDGET: u128 = 1 << 30;

pub const MAX_SEARCH_SIZE: usize = 30;

/// The first subset of `s` adding up to `target`, where subsets are taken
/// by cardinality and then by combinadic rank.
///
/// Within one cardinality the ranks of subsets of `s` follow the colex
/// order of their index sets, so the search walks index combinations in
/// that order and stops at the first hit.
pub fn subset_sum_first(s: &FiniteSet, target: &BigNat, budget: u128) -> Result<Option<FiniteSet>> {
    let n = s.len();
    if n > MAX_SEARCH_SIZE {
        return Err(Error::InvalidArgument(format!(
            "subset search supports at most {MAX_SEARCH_SIZE} elements, got {n}"
        )));
    }
    let needed = 1u128 << n;
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    let elems = s.elements();
    if target.is_zero() {
        return Ok(Some(FiniteSet::empty()));
    }
    for k in 1..=n {
        let mut idx: Vec<usize> = (0..k).collect();
        loop {
            let sum: BigNat = idx.iter().map(|&i| &elems[i]).sum();
            if &sum == target {
                let chosen = idx.iter().map(|&i| elems[i].clone()).collect();
                return Ok(Some(FiniteSet::from_sorted_unchecked(chosen)));
            }
            if !colex_next(&mut idx, n) {
                break;
            }
        }
    }
    Ok(None)
}

/// Next `k`-combination of `0..n` in colex order.
fn colex_next(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    for i in 0..k {
        let limit = if i + 1 < k { idx[i + 1] } else { n };
        if idx[i] + 1 < limit {
            idx[i] += 1;
            for (j, v) in idx.iter_mut().enumerate().take(i) {
                *v = j;
            }
            return true;
        }
    }
    false
}
