//! Exact partition counts and the Hardy–Ramanujan asymptotic.

use num_traits::{One, Zero};

use crate::arith::BigNat;

/// `q(n)`: partitions of `n` into distinct positive parts.
pub fn distinct_partitions(n: u64) -> BigNat {
    let n = n as usize;
    let mut q = vec![BigNat::zero(); n + 1];
    q[0] = BigNat::one();
    for part in 1..=n {
        for s in (part..=n).rev() {
            let add = q[s - part].clone();
            q[s] += add;
        }
    }
    q.swap_remove(n)
}

/// Finite subsets of the naturals, 0 allowed, whose elements add to `n`.
///
/// Every 0-free set has a twin with 0 added, so this is `2 q(n)`.
pub fn count_subsets_with_sum(n: u64) -> BigNat {
    distinct_partitions(n) << 1u32
}

/// `p(n)`: unrestricted partitions of `n`.
pub fn partition_count(n: u64) -> BigNat {
    let n = n as usize;
    let mut p = vec![BigNat::zero(); n + 1];
    p[0] = BigNat::one();
    for part in 1..=n {
        for s in part..=n {
            let add = p[s - part].clone();
            p[s] += add;
        }
    }
    p.swap_remove(n)
}

/// `p(n) ~ exp(pi sqrt(2n/3)) / (4 n sqrt 3)`.
pub fn hardy_ramanujan_estimate(n: u64) -> f64 {
    let n = n as f64;
    (std::f64::consts::PI * (2.0 * n / 3.0).sqrt()).exp() / (4.0 * n * 3f64.sqrt())
}

/// Finite sets of positive naturals whose product is `n >= 1`; the set
/// `{1}` and its twin without 1 both count, so `∅` is included for `n = 1`.
pub fn count_subsets_with_product(n: u64) -> u64 {
    fn distinct_factorizations(n: u64, min: u64) -> u64 {
        // factorizations of n into distinct factors, each >= min
        if n == 1 {
            return 1;
        }
        let mut total = 0;
        let mut f = min;
        while f * f <= n {
            if n.is_multiple_of(f) && n / f > f {
                total += distinct_factorizations(n / f, f + 1);
            }
            f += 1;
        }
        if n >= min {
            total += 1;
        }
        total
    }
    if n == 0 {
        return 0;
    }
    2 * distinct_factorizations(n, 2)
}
