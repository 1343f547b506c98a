//! Seeded Monte Carlo experiments over maximal-entropy inputs.
//!
//! Inputs are drawn uniformly from the dyadic window `[2^t, 2^{t+1})`,
//! where almost every number is incompressible. Every sample gets its own
//! generator seeded from `(master seed, t, sample index)`, so results do
//! not depend on evaluation order.

use std::fmt::Write as _;

use num_bigint::BigUint;
use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::{delta_info, BigNat};
use crate::error::{Error, Result};

use super::poly::Polynomial;

/// Slope (bits of δ per unit of `t`) separating the three classes.
pub const SLOPE_THRESHOLD: f64 = 0.25;

/// Largest rejection rate tolerated at any `t`.
pub const MAX_REJECTION_RATE: f64 = 0.9;

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Independent stream seed for one `(t, index)` cell of an experiment.
pub fn sub_seed(master: u64, t: u32, index: u64) -> u64 {
    splitmix64(splitmix64(master ^ splitmix64(u64::from(t))) ^ index)
}

/// Uniform draw from `[2^t, 2^{t+1})`.
pub fn sample_in_window<R: Rng + ?Sized>(rng: &mut R, t: u32) -> BigNat {
    let words = (t as usize).div_ceil(32).max(1);
    let mut digits: Vec<u32> = (0..words).map(|_| rng.gen()).collect();
    let spare = words as u32 * 32 - t;
    if spare == 32 {
        digits[0] = 0;
    } else {
        *digits.last_mut().unwrap() &= u32::MAX >> spare;
    }
    let mut v = BigUint::from_slice(&digits);
    v.set_bit(u64::from(t), true);
    v
}

/// `k` independent draws from `[2^t, 2^{t+1})`, reproducible from `seed`.
pub fn sample_typical_set(k: usize, t: u32, seed: u64) -> Result<Vec<BigNat>> {
    if k == 0 || t == 0 {
        return Err(Error::InvalidArgument("typical sets need k >= 1 and t >= 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok((0..k).map(|_| sample_in_window(&mut rng, t)).collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolyClass {
    Discarding,
    Conserving,
    Expanding,
}

impl std::fmt::Display for PolyClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            PolyClass::Discarding => "DISCARDING",
            PolyClass::Conserving => "CONSERVING",
            PolyClass::Expanding => "EXPANDING",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrendRow {
    pub t: u32,
    pub mean_delta: f64,
    pub stddev: f64,
    pub samples: u64,
    pub rejected: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Classification {
    pub class: PolyClass,
    /// Least-squares slope of mean δ against `t`.
    pub slope: f64,
    pub table: Vec<TrendRow>,
}

impl Classification {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("t,mean_delta,stddev,samples,rejected\n");
        for r in &self.table {
            let _ = writeln!(out, "{},{},{},{},{}", r.t, r.mean_delta, r.stddev, r.samples, r.rejected);
        }
        out
    }
}

/// Mean information efficiency of `p` on typical inputs at each `t`, and
/// the class implied by the trend of those means.
///
/// Draws where `p` is not positive are rejected and redrawn from the same
/// sample stream; the count is reported per row.
pub fn classify_polynomial(
    p: &Polynomial,
    t_schedule: &[u32],
    samples_per_t: u64,
    seed: u64,
) -> Result<Classification> {
    let ascending = t_schedule.windows(2).all(|w| w[0] < w[1]);
    if t_schedule.len() < 3 || !ascending || t_schedule[0] == 0 {
        return Err(Error::BadSchedule);
    }
    if samples_per_t == 0 {
        return Err(Error::InvalidArgument("samples per t must be positive".into()));
    }
    let k = p.arity();
    let max_rejections = (samples_per_t as f64 * MAX_REJECTION_RATE / (1.0 - MAX_REJECTION_RATE)).floor() as u64;

    let mut table = Vec::with_capacity(t_schedule.len());
    for &t in t_schedule {
        let mut deltas = Vec::with_capacity(samples_per_t as usize);
        let mut rejected = 0u64;
        for index in 0..samples_per_t {
            let mut rng = ChaCha8Rng::seed_from_u64(sub_seed(seed, t, index));
            loop {
                let inputs: Vec<BigNat> = (0..k).map(|_| sample_in_window(&mut rng, t)).collect();
                let value = p.eval(&inputs)?;
                if value.is_positive() {
                    deltas.push(delta_info(value.magnitude(), &inputs).bits());
                    break;
                }
                rejected += 1;
                if rejected > max_rejections {
                    let rate = rejected as f64 / (rejected + deltas.len() as u64) as f64;
                    return Err(Error::TooManyRejections { t, rate });
                }
            }
        }
        let (mean, stddev) = mean_and_stddev(&deltas);
        table.push(TrendRow { t, mean_delta: mean, stddev, samples: samples_per_t, rejected });
    }
    let points: Vec<(f64, f64)> = table.iter().map(|r| (f64::from(r.t), r.mean_delta)).collect();
    let slope = least_squares_slope(&points);
    let class = if slope < -SLOPE_THRESHOLD {
        PolyClass::Discarding
    } else if slope > SLOPE_THRESHOLD {
        PolyClass::Expanding
    } else {
        PolyClass::Conserving
    };
    Ok(Classification { class, slope, table })
}

/// Fraction of typical inputs at magnitude `t` that are roots of `p`.
pub fn typical_root_rate(p: &Polynomial, t: u32, samples: u64, seed: u64) -> Result<f64> {
    if samples == 0 {
        return Err(Error::InvalidArgument("need at least one sample".into()));
    }
    let mut hits = 0u64;
    for index in 0..samples {
        let mut rng = ChaCha8Rng::seed_from_u64(sub_seed(seed, t, index));
        let inputs: Vec<BigNat> = (0..p.arity()).map(|_| sample_in_window(&mut rng, t)).collect();
        if p.is_root(&inputs)? {
            hits += 1;
        }
    }
    Ok(hits as f64 / samples as f64)
}

fn mean_and_stddev(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    if xs.len() < 2 {
        return (mean, 0.0);
    }
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, var.sqrt())
}

pub fn least_squares_slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = points.iter().map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = points.iter().map(|(x, _)| (x - mx).powi(2)).sum();
    sxy / sxx
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    #[test]
    fn samples_stay_in_window() {
        for t in [1u32, 10, 31, 32, 33, 64, 100] {
            let lo = BigNat::from(1u32) << t;
            let hi = BigNat::from(1u32) << (t + 1);
            for v in sample_typical_set(50, t, 7).unwrap() {
                assert!(v >= lo && v < hi, "t = {t}");
            }
        }
        let s = sample_typical_set(3, 10, 42).unwrap();
        assert_eq!(s.len(), 3);
        assert!(s.iter().all(|v| *v >= BigNat::from(1024u32) && *v < BigNat::from(2048u32)));
        assert_eq!(s, sample_typical_set(3, 10, 42).unwrap());
        assert_ne!(s, sample_typical_set(3, 10, 43).unwrap());
        assert!(sample_typical_set(0, 10, 1).is_err());
    }

    #[test]
    fn expected_sum_of_typical_triples() {
        // uniform on [2^t, 2^{t+1}) has mean 3 * 2^{t-1} - 1/2
        let t = 12;
        let trials = 10_000u64;
        let total: f64 = (0..trials)
            .map(|i| {
                sample_typical_set(3, t, sub_seed(99, t, i))
                    .unwrap()
                    .iter()
                    .map(|v| v.to_f64().unwrap())
                    .sum::<f64>()
            })
            .sum();
        let mean_sum = total / trials as f64;
        let expected = 3.0 * (3.0 * f64::from(1u32 << (t - 1)) - 0.5);
        assert!((mean_sum - expected).abs() / expected < 0.05);
        let per_sample = mean_sum / 3.0;
        assert!((per_sample - 3.0 * f64::from(1u32 << (t - 1))).abs() / per_sample < 0.05);
    }

    #[test]
    fn slope_fit() {
        let pts = [(1.0, 3.0), (2.0, 5.0), (3.0, 7.0)];
        assert!((least_squares_slope(&pts) - 2.0).abs() < 1e-12);
    }

    #[test]
    fn classification_cases() {
        let sched = [10, 15, 20, 25, 30];
        let sum = classify_polynomial(&"x+y".parse().unwrap(), &sched, 200, 1).unwrap();
        assert_eq!(sum.class, PolyClass::Discarding);
        assert!((sum.slope + 1.0).abs() < 0.2);
        let prod = classify_polynomial(&"x*y".parse().unwrap(), &sched, 200, 1).unwrap();
        assert_eq!(prod.class, PolyClass::Conserving);
        assert!(prod.table.iter().all(|r| r.mean_delta.abs() < 0.1));
        let cubic = classify_polynomial(&"x^2*y".parse().unwrap(), &sched, 200, 1).unwrap();
        assert_eq!(cubic.class, PolyClass::Expanding);
        assert!((cubic.slope - 1.0).abs() < 0.2);
    }

    #[test]
    fn classification_is_seed_deterministic() {
        let p: Polynomial = "x^2 + y^2 - z^2".parse().unwrap();
        let a = classify_polynomial(&p, &[5, 8, 11], 100, 5).unwrap();
        let b = classify_polynomial(&p, &[5, 8, 11], 100, 5).unwrap();
        assert_eq!(a.to_csv(), b.to_csv());
        assert!(a.table.iter().any(|r| r.rejected > 0));
    }

    #[test]
    fn classification_errors() {
        let p: Polynomial = "x+y".parse().unwrap();
        assert_eq!(classify_polynomial(&p, &[10, 20], 10, 1), Err(Error::BadSchedule));
        assert_eq!(classify_polynomial(&p, &[10, 30, 20], 10, 1), Err(Error::BadSchedule));
        let never: Polynomial = "-1*x".parse().unwrap();
        assert!(matches!(
            classify_polynomial(&never, &[2, 3, 4], 10, 1),
            Err(Error::TooManyRejections { t: 2, .. })
        ));
    }

    #[test]
    fn csv_header() {
        let c = classify_polynomial(&"x*y".parse().unwrap(), &[3, 4, 5], 4, 2).unwrap();
        let csv = c.to_csv();
        assert!(csv.starts_with("t,mean_delta,stddev,samples,rejected\n3,"));
        assert_eq!(csv.lines().count(), 4);
    }
}
