//! Index and compression functions of subsets of the naturals, density
//! estimates over finite prefixes, randomness deficiency, and the binary
//! entropy estimate.
//!
//! `A(n)` counts members in `{1, ..., n}`; zero is never counted.

use std::fmt::Write as _;
use std::sync::Arc;

use num_integer::Roots;

use crate::arith::{info_u64, InfoValue};
use crate::error::{Error, Result};

#[derive(Debug, Clone)]
enum Kind {
    Naturals,
    Evens,
    Odds,
    Primes(Arc<OddSieve>),
    Squares,
    LeadingDigitOne,
    Residue { modulus: u64, residue: u64 },
}

/// A decidable subset of the naturals.
#[derive(Debug, Clone)]
pub struct NumberSet {
    name: String,
    kind: Kind,
}

impl NumberSet {
    pub fn naturals() -> Self {
        NumberSet { name: "naturals".into(), kind: Kind::Naturals }
    }

    pub fn evens() -> Self {
        NumberSet { name: "evens".into(), kind: Kind::Evens }
    }

    pub fn odds() -> Self {
        NumberSet { name: "odds".into(), kind: Kind::Odds }
    }

    /// Primes, sieved up to `sieve_limit`; larger queries fall back to trial division.
    pub fn primes(sieve_limit: u64) -> Self {
        NumberSet {
            name: "primes".into(),
            kind: Kind::Primes(Arc::new(OddSieve::new(sieve_limit))),
        }
    }

    pub fn squares() -> Self {
        NumberSet { name: "squares".into(), kind: Kind::Squares }
    }

    /// Numbers whose leading decimal digit is 1.
    pub fn leading_digit_one() -> Self {
        NumberSet { name: "leading-digit-1".into(), kind: Kind::LeadingDigitOne }
    }

    /// `{n : n mod modulus == residue}`.
    pub fn residue_class(modulus: u64, residue: u64) -> Result<Self> {
        if modulus == 0 || residue >= modulus {
            return Err(Error::InvalidArgument(format!(
                "residue class needs 0 <= residue < modulus, got {residue} mod {modulus}"
            )));
        }
        Ok(NumberSet {
            name: format!("{residue}mod{modulus}"),
            kind: Kind::Residue { modulus, residue },
        })
    }

    /// Resolves a CLI name: `naturals`, `evens`, `odds`, `primes`,
    /// `squares`, `leading-digit-1`, or `<r>mod<m>`.
    pub fn by_name(name: &str, sieve_limit: u64) -> Result<Self> {
        match name {
            "naturals" | "N" => Ok(Self::naturals()),
            "evens" => Ok(Self::evens()),
            "odds" => Ok(Self::odds()),
            "primes" => Ok(Self::primes(sieve_limit)),
            "squares" => Ok(Self::squares()),
            "leading-digit-1" => Ok(Self::leading_digit_one()),
            other => {
                let parsed = other
                    .split_once("mod")
                    .and_then(|(r, m)| Some((r.parse::<u64>().ok()?, m.parse::<u64>().ok()?)));
                match parsed {
                    Some((r, m)) => Self::residue_class(m, r),
                    None => Err(Error::Parse(format!("unknown number set {other:?}"))),
                }
            }
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Membership; zero is outside every set under the 1-based convention.
    pub fn contains(&self, n: u64) -> bool {
        if n == 0 {
            return false;
        }
        match &self.kind {
            Kind::Naturals => true,
            Kind::Evens => n.is_multiple_of(2),
            Kind::Odds => n % 2 == 1,
            Kind::Primes(sieve) => sieve.is_prime(n),
            Kind::Squares => {
                let r = n.sqrt();
                r * r == n
            }
            Kind::LeadingDigitOne => {
                let mut m = n;
                while m >= 10 {
                    m /= 10;
                }
                m == 1
            }
            Kind::Residue { modulus, residue } => n % modulus == *residue,
        }
    }

    /// `c_A(n) = |{1, ..., n} ∩ A|`.
    pub fn compression_function(&self, n: u64) -> u64 {
        match &self.kind {
            Kind::Naturals => n,
            Kind::Evens => n / 2,
            Kind::Odds => n.div_ceil(2),
            Kind::Primes(sieve) => sieve.count_up_to(n),
            Kind::Squares => n.sqrt(),
            Kind::LeadingDigitOne => leading_one_count(n),
            Kind::Residue { modulus, residue } => {
                let full = n / modulus;
                let tail = n % modulus;
                let hit_in_tail = u64::from(*residue != 0 && *residue <= tail);
                // residue 0 has its first member at `modulus`, others at `residue`
                full + hit_in_tail
            }
        }
    }

    /// The `j`-th smallest member (1-based), searching no further than `budget`.
    pub fn index_of(&self, j: u64, budget: u64) -> Result<u64> {
        if j == 0 {
            return Err(Error::InvalidArgument("index is 1-based".into()));
        }
        let mut seen = 0;
        for n in 1..=budget {
            if self.contains(n) {
                seen += 1;
                if seen == j {
                    return Ok(n);
                }
            }
        }
        Err(Error::SearchExhausted { set: self.name.clone(), wanted: j, budget })
    }

    fn position_of(&self, n: u64) -> Result<u64> {
        if !self.contains(n) {
            return Err(Error::NotAMember(n, self.name.clone()));
        }
        Ok(self.compression_function(n))
    }

    /// `log j` where `n` is the `j`-th member.
    pub fn conditional_info(&self, n: u64) -> Result<InfoValue> {
        Ok(info_u64(self.position_of(n)?))
    }

    /// `log n - log j` where `n` is the `j`-th member.
    pub fn randomness_deficiency(&self, n: u64) -> Result<f64> {
        Ok((info_u64(n) - self.conditional_info(n)?).bits())
    }

    /// `c_A(n) f / n`, which tends to 1 when `f` is the set's deficiency function.
    pub fn deficiency_fit(&self, n: u64, f: f64) -> f64 {
        self.compression_function(n) as f64 * f / n as f64
    }

    /// Binary entropy of the prefix frequency `c_A(n) / n`, in bits.
    pub fn shannon_entropy_estimate(&self, n: u64) -> Result<f64> {
        if n == 0 {
            return Err(Error::InvalidArgument("entropy estimate needs n >= 1".into()));
        }
        let p = self.compression_function(n) as f64 / n as f64;
        Ok(binary_entropy(p))
    }

    pub fn density_profile(
        &self,
        max_n: u64,
        checkpoints: &[u64],
        tolerance: f64,
    ) -> Result<DensityProfile> {
        if checkpoints.is_empty() {
            return Err(Error::NoCheckpoints);
        }
        let ordered = checkpoints.windows(2).all(|w| w[0] < w[1]);
        if !ordered || checkpoints[0] == 0 || *checkpoints.last().unwrap() > max_n {
            return Err(Error::BadCheckpoints { max: max_n });
        }
        let prefix_points: Vec<(u64, u64)> =
            checkpoints.iter().map(|&n| (n, self.compression_function(n))).collect();
        let tail = &prefix_points[prefix_points.len() / 2..];
        let ratios = tail.iter().map(|&(n, c)| c as f64 / n as f64);
        let lower = ratios.clone().fold(f64::INFINITY, f64::min);
        let upper = ratios.fold(f64::NEG_INFINITY, f64::max);
        let defined = upper - lower < tolerance;
        let natural = defined.then(|| {
            let &(n, c) = prefix_points.last().unwrap();
            c as f64 / n as f64
        });
        Ok(DensityProfile { set: self.name.clone(), prefix_points, lower, upper, natural, defined })
    }
}

/// `-(p log p + q log q)`, with the `p in {0, 1}` terms contributing 0.
pub fn binary_entropy(p: f64) -> f64 {
    let term = |x: f64| if x <= 0.0 || x >= 1.0 { 0.0 } else { -x * x.log2() };
    term(p) + term(1.0 - p)
}

fn leading_one_count(n: u64) -> u64 {
    let mut count = 0;
    let mut lo: u64 = 1;
    while lo <= n {
        let hi = lo.saturating_mul(2).saturating_sub(1);
        count += hi.min(n) - lo + 1;
        match lo.checked_mul(10) {
            Some(next) => lo = next,
            None => break,
        }
    }
    count
}

pub const DEFAULT_DENSITY_TOLERANCE: f64 = 0.01;

/// Checkpoints `10^k` and `2 * 10^k` up to `max_n`.
pub fn decade_checkpoints(max_n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p: u64 = 1;
    while p <= max_n {
        out.push(p);
        if let Some(two) = p.checked_mul(2).filter(|&t| t <= max_n) {
            out.push(two);
        }
        match p.checked_mul(10) {
            Some(next) => p = next,
            None => break,
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct DensityProfile {
    pub set: String,
    pub prefix_points: Vec<(u64, u64)>,
    pub lower: f64,
    pub upper: f64,
    pub natural: Option<f64>,
    pub defined: bool,
}

impl DensityProfile {
    pub fn ratio_at(&self, n: u64) -> Option<f64> {
        self.prefix_points
            .iter()
            .find(|&&(m, _)| m == n)
            .map(|&(m, c)| c as f64 / m as f64)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,count,ratio\n");
        for &(n, c) in &self.prefix_points {
            let _ = writeln!(out, "{n},{c},{}", c as f64 / n as f64);
        }
        out.push_str("lower,upper,natural,defined\n");
        let natural = self.natural.map(|v| v.to_string()).unwrap_or_default();
        let _ = writeln!(out, "{},{},{natural},{}", self.lower, self.upper, self.defined);
        out
    }
}

/// Sieve of Eratosthenes over odd numbers only, with cumulative counts
/// every 64 odds for fast prefix counting.
#[derive(Debug)]
struct OddSieve {
    limit: u64,
    // bit i set <=> 2i + 1 is prime
    bits: Vec<u64>,
    block_counts: Vec<u64>,
}

impl OddSieve {
    fn new(limit: u64) -> Self {
        let odd_count = limit.div_ceil(2) as usize; // odds 1, 3, ..., <= limit
        let words = odd_count.div_ceil(64).max(1);
        let mut bits = vec![u64::MAX; words];
        let clear = |bits: &mut Vec<u64>, i: usize| bits[i / 64] &= !(1u64 << (i % 64));
        clear(&mut bits, 0); // 1 is not prime
        for i in odd_count..words * 64 {
            clear(&mut bits, i);
        }
        let mut p: u64 = 3;
        while p * p <= limit {
            if bits[(p / 2) as usize / 64] >> ((p / 2) % 64) & 1 == 1 {
                let mut m = p * p;
                while m <= limit {
                    clear(&mut bits, (m / 2) as usize);
                    m += 2 * p;
                }
            }
            p += 2;
        }
        let mut block_counts = Vec::with_capacity(words + 1);
        let mut acc = 0;
        block_counts.push(0);
        for w in &bits {
            acc += u64::from(w.count_ones());
            block_counts.push(acc);
        }
        OddSieve { limit, bits, block_counts }
    }

    fn is_prime(&self, n: u64) -> bool {
        if n == 2 {
            return true;
        }
        if n < 2 || n.is_multiple_of(2) {
            return false;
        }
        if n <= self.limit {
            let i = (n / 2) as usize;
            return self.bits[i / 64] >> (i % 64) & 1 == 1;
        }
        let mut d = 3;
        while d * d <= n {
            if n.is_multiple_of(d) {
                return false;
            }
            d += 2;
        }
        true
    }

    fn count_up_to(&self, n: u64) -> u64 {
        if n < 2 {
            return 0;
        }
        if n > self.limit {
            let base = self.count_up_to(self.limit);
            return base + (self.limit + 1..=n).filter(|&m| self.is_prime(m)).count() as u64;
        }
        // odds 1..=n have indices 0..=(n-1)/2
        let last = ((n - 1) / 2) as usize;
        let word = last / 64;
        let mask = if last % 64 == 63 { u64::MAX } else { (1u64 << (last % 64 + 1)) - 1 };
        1 + self.block_counts[word] + u64::from((self.bits[word] & mask).count_ones())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn plain_sieve(limit: usize) -> Vec<bool> {
        let mut is = vec![true; limit + 1];
        is[0] = false;
        if limit >= 1 {
            is[1] = false;
        }
        for p in 2..=limit {
            if p * p > limit {
                break;
            }
            if is[p] {
                for m in (p * p..=limit).step_by(p) {
                    is[m] = false;
                }
            }
        }
        is
    }

    fn scan_count(a: &NumberSet, n: u64) -> u64 {
        (1..=n).filter(|&m| a.contains(m)).count() as u64
    }

    #[test]
    fn compression_examples() {
        assert_eq!(NumberSet::evens().compression_function(1000), 500);
        assert_eq!(NumberSet::evens().compression_function(0), 0);
        assert_eq!(NumberSet::primes(10).compression_function(0), 0);
        let oracle = plain_sieve(1_000_000).iter().filter(|&&p| p).count() as u64;
        assert_eq!(oracle, 78_498);
        assert_eq!(NumberSet::primes(1_000_000).compression_function(1_000_000), oracle);
    }

    #[test]
    fn closed_forms_match_scanning() {
        let sets = [
            NumberSet::naturals(),
            NumberSet::evens(),
            NumberSet::odds(),
            NumberSet::primes(3000),
            NumberSet::squares(),
            NumberSet::leading_digit_one(),
            NumberSet::residue_class(7, 3).unwrap(),
            NumberSet::residue_class(5, 0).unwrap(),
        ];
        for a in &sets {
            let mut running = 0;
            for n in 0..=3000u64 {
                if n > 0 && a.contains(n) {
                    running += 1;
                }
                assert_eq!(a.compression_function(n), running, "{} at {n}", a.name());
            }
        }
    }

    #[test]
    fn sieve_matches_plain_sieve_and_trial_division_beyond() {
        let oracle = plain_sieve(20_000);
        let small = NumberSet::primes(5_000);
        for (n, &p) in oracle.iter().enumerate() {
            assert_eq!(small.contains(n as u64), p, "{n}");
        }
        assert_eq!(small.compression_function(20_000), scan_count(&small, 20_000));
        assert_eq!(
            small.compression_function(20_000),
            oracle.iter().filter(|&&p| p).count() as u64
        );
    }

    #[test]
    fn index_examples() {
        assert_eq!(NumberSet::evens().index_of(3, 100).unwrap(), 6);
        assert_eq!(NumberSet::primes(100).index_of(1, 100).unwrap(), 2);
        assert_eq!(NumberSet::squares().index_of(5, 100).unwrap(), 25);
        assert!(matches!(
            NumberSet::squares().index_of(11, 100),
            Err(Error::SearchExhausted { .. })
        ));
    }

    #[test]
    fn conditional_info_examples() {
        assert_eq!(NumberSet::evens().conditional_info(8).unwrap().bits(), 2.0);
        assert_eq!(NumberSet::evens().conditional_info(2).unwrap().bits(), 0.0);
        assert_eq!(NumberSet::squares().conditional_info(1).unwrap().bits(), 0.0);
        let primes = NumberSet::primes(1000);
        let oracle = plain_sieve(1000);
        let hundredth = (0..).filter(|&n| oracle[n]).nth(99).unwrap();
        assert_eq!(hundredth, 541);
        assert!((primes.conditional_info(541).unwrap().bits() - 100f64.log2()).abs() < 1e-12);
        assert!(matches!(NumberSet::evens().conditional_info(7), Err(Error::NotAMember(7, _))));
    }

    #[test]
    fn deficiency_examples() {
        assert_eq!(NumberSet::evens().randomness_deficiency(8).unwrap(), 1.0);
        for n in [1u64, 2, 17, 1_000_000] {
            assert!(NumberSet::naturals().randomness_deficiency(n).unwrap().abs() <= 1e-9);
        }
        let d = NumberSet::primes(1000).randomness_deficiency(541).unwrap();
        assert!((d - (541f64.log2() - 100f64.log2())).abs() < 1e-12);
        assert!((d - 2.435).abs() < 1e-3);
        assert!(NumberSet::primes(1000).randomness_deficiency(540).is_err());
    }

    #[test]
    fn profile_examples() {
        let cps = decade_checkpoints(1_000_000);
        let evens = NumberSet::evens().density_profile(1_000_000, &cps, DEFAULT_DENSITY_TOLERANCE).unwrap();
        assert!(evens.defined);
        assert!((evens.natural.unwrap() - 0.5).abs() < 1e-3);

        let primes = NumberSet::primes(1_000_000)
            .density_profile(1_000_000, &cps, DEFAULT_DENSITY_TOLERANCE)
            .unwrap();
        // the tail half starts at 1000, where pi(n)/n = 0.168
        assert!((primes.upper - 0.168).abs() < 1e-12);
        assert!((primes.lower - 0.078498).abs() < 1e-12);
        assert!(!primes.defined);
        let ratios: Vec<f64> = [10_000u64, 100_000, 1_000_000]
            .iter()
            .map(|&n| primes.ratio_at(n).unwrap())
            .collect();
        assert!(ratios.windows(2).all(|w| w[1] < w[0]));

        let lead = NumberSet::leading_digit_one();
        // direct scan: 1, 10..19, ..., 10000..19999 and 100000 itself
        assert_eq!(scan_count(&lead, 100_000), 11_112);
        assert_eq!(scan_count(&lead, 200_000), 111_111);
        let p = lead.density_profile(200_000, &decade_checkpoints(200_000), 0.01).unwrap();
        assert!(!p.defined && p.natural.is_none());
        assert!((p.lower - 1.0 / 9.0).abs() < 0.01);
        assert!((p.upper - 5.0 / 9.0).abs() < 0.01);
    }

    #[test]
    fn profile_errors() {
        let e = NumberSet::evens();
        assert_eq!(e.density_profile(10, &[], 0.01), Err(Error::NoCheckpoints));
        assert!(e.density_profile(10, &[5, 3], 0.01).is_err());
        assert!(e.density_profile(10, &[5, 30], 0.01).is_err());
        assert!(e.density_profile(10, &[0, 5], 0.01).is_err());
    }

    #[test]
    fn entropy_examples() {
        let h = NumberSet::evens().shannon_entropy_estimate(1_000_000).unwrap();
        assert!((h - 1.0).abs() < 1e-3);
        assert_eq!(NumberSet::naturals().shannon_entropy_estimate(1000).unwrap(), 0.0);
        let p = 78_498.0 / 1e6;
        let expected = -(p * f64::log2(p) + (1.0 - p) * f64::log2(1.0 - p));
        let got = NumberSet::primes(1_000_000).shannon_entropy_estimate(1_000_000).unwrap();
        assert!((got - expected).abs() < 1e-12);
        assert!((got - 0.395).abs() < 5e-3);
    }

    #[test]
    fn incompressibility_witnesses() {
        let cps = decade_checkpoints(1_000_000);
        let squares = NumberSet::squares().density_profile(1_000_000, &cps, 0.01).unwrap();
        assert!((squares.lower - 0.001).abs() < 1e-12);
        assert!(squares.upper < 0.032);
        // deficiency of squares grows like half the information of n
        let d_small = NumberSet::squares().randomness_deficiency(100).unwrap();
        let d_large = NumberSet::squares().randomness_deficiency(1_000_000).unwrap();
        assert!(d_large > d_small + 3.0);
        assert!(NumberSet::evens().randomness_deficiency(1_000_000).unwrap() <= 1.0);
        assert!((NumberSet::evens().deficiency_fit(1_000_000, 2.0) - 1.0).abs() < 1e-3);
    }

    #[test]
    fn by_name() {
        assert_eq!(NumberSet::by_name("3mod4", 10).unwrap().compression_function(11), 3);
        assert!(NumberSet::by_name("4mod4", 10).is_err());
        assert!(NumberSet::by_name("cubes", 10).is_err());
    }

    #[test]
    fn csv_shape() {
        let p = NumberSet::evens().density_profile(4, &[2, 4], 0.01).unwrap();
        assert_eq!(p.to_csv(), "n,count,ratio\n2,1,0.5\n4,2,0.5\nlower,upper,natural,defined\n0.5,0.5,0.5,true\n");
    }
}
