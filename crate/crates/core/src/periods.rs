//! Periods of `p_{<=k}(n) mod N` and the recursive quasi-period `pi'_N(k)`.
//!
//! For a prime power `p^e` the minimal period is
//! `pi_{p^e}(k) = p^{b + e - 1} * L` where `b` is the least integer with
//! `p^b >= sum_{i<=k} p^{nu_p(i)}` and `L` is the p-free part of
//! `lcm(1..=k)`; a general modulus takes the lcm over its prime powers.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arith::{self, check_prime, checked_pow, factorize, lcm_range, valuation, Modulus};
use crate::error::{Error, Result};

/// `sum_{i=1..=k} p^{nu_p(i)}`.
pub fn capital_pi(p: u64, k: u64) -> Result<u64> {
    check_prime(p)?;
    if k == 0 {
        return Err(Error::InvalidArgs("k must be at least 1".into()));
    }
    (1..=k).try_fold(0u64, |acc, i| {
        let term = checked_pow(p, valuation(p, i))?;
        acc.checked_add(term)
            .ok_or_else(|| Error::TooLarge(format!("capital pi for p={p}, k={k}")))
    })
}

/// Least `b >= 0` with `p^b >= target`.
pub(crate) fn ceil_log(p: u64, target: u64) -> u32 {
    let mut b = 0;
    let mut pow = 1u64;
    while pow < target {
        pow = pow.saturating_mul(p);
        b += 1;
    }
    b
}

/// Ingredients of the minimal period of `p_{<=k} mod p^e`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodInfo {
    pub p: u64,
    pub e: u32,
    pub k: u64,
    pub capital_pi: u64,
    pub b_p: u32,
    /// p-free part of `lcm(1..=k)`.
    pub l_p: BigUint,
    pub pi: BigUint,
}

pub fn pi_prime_power(p: u64, e: u32, k: u64) -> Result<PeriodInfo> {
    check_prime(p)?;
    if e == 0 {
        return Err(Error::InvalidArgs("exponent must be at least 1".into()));
    }
    let cap = capital_pi(p, k)?;
    let b_p = ceil_log(p, cap);
    let mut l_p = lcm_range(k);
    let pb = BigUint::from(p);
    while l_p.is_multiple_of(&pb) {
        l_p /= &pb;
    }
    // b_p = 0 only for k = 1, where p_{<=1} is constant and the p^{e-1}
    // factor does not apply
    let exp = if b_p == 0 { 0 } else { b_p + e - 1 };
    let pi = pb.pow(exp) * &l_p;
    Ok(PeriodInfo {
        p,
        e,
        k,
        capital_pi: cap,
        b_p,
        l_p,
        pi,
    })
}

/// `pi_N(k)`: lcm of the prime-power periods. `pi_N(0) = 1` by convention.
pub fn pi_n(m: Modulus, k: u64) -> Result<BigUint> {
    if k == 0 {
        return Ok(BigUint::one());
    }
    factorize(u64::from(m.get()))
        .into_iter()
        .try_fold(BigUint::one(), |acc, (p, e)| {
            Ok(acc.lcm(&pi_prime_power(p, e, k)?.pi))
        })
}

/// Which case of the `pi'` recursion fired at a step.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    /// `N | pi_N(k)/pi_N(k-1)`: multiply by the ratio.
    Ratio,
    /// Otherwise: multiply by `N` times the ratio.
    ScaledRatio,
}

impl Branch {
    pub fn label(self) -> &'static str {
        match self {
            Branch::Ratio => "ratio",
            Branch::ScaledRatio => "N*ratio",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QPeriodStep {
    pub k: u64,
    pub pi: BigUint,
    /// `pi_N(k) / pi_N(k-1)`.
    pub ratio: BigUint,
    pub branch: Branch,
    pub pi_prime: BigUint,
}

/// `(pi_N(k), pi'_N(k))` for `k = 1..=k_max`, with base `pi_N(0) = pi'_N(0) = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QPeriodTable {
    modulus: Modulus,
    steps: Vec<QPeriodStep>,
}

impl QPeriodTable {
    pub fn build(m: Modulus, k_max: u64) -> Result<Self> {
        let n = BigUint::from(m.get());
        let mut prev_pi = BigUint::one();
        let mut prev_prime = BigUint::one();
        let mut steps = Vec::with_capacity(k_max as usize);
        for k in 1..=k_max {
            let pi = pi_n(m, k)?;
            let (ratio, rem) = pi.div_rem(&prev_pi);
            if !rem.is_zero() {
                return Err(Error::Inconsistent(format!(
                    "pi_{m}({}) does not divide pi_{m}({k})",
                    k - 1
                )));
            }
            let (branch, factor) = if ratio.is_multiple_of(&n) {
                (Branch::Ratio, ratio.clone())
            } else {
                (Branch::ScaledRatio, &ratio * &n)
            };
            let pi_prime = &prev_prime * factor;
            prev_pi = pi.clone();
            prev_prime = pi_prime.clone();
            steps.push(QPeriodStep {
                k,
                pi,
                ratio,
                branch,
                pi_prime,
            });
        }
        Ok(QPeriodTable { modulus: m, steps })
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn steps(&self) -> &[QPeriodStep] {
        &self.steps
    }

    pub fn k_max(&self) -> u64 {
        self.steps.len() as u64
    }

    pub fn pi(&self, k: u64) -> BigUint {
        match k {
            0 => BigUint::one(),
            _ => self.steps[k as usize - 1].pi.clone(),
        }
    }

    pub fn pi_prime(&self, k: u64) -> BigUint {
        match k {
            0 => BigUint::one(),
            _ => self.steps[k as usize - 1].pi_prime.clone(),
        }
    }

    /// Divisor chains and `N | pi'(k) / pi'(k-1)` for every stored `k`.
    pub fn check_invariants(&self) -> Result<()> {
        let n = BigUint::from(self.modulus.get());
        for k in 1..=self.k_max() {
            let (pi0, pi1) = (self.pi(k - 1), self.pi(k));
            let (pp0, pp1) = (self.pi_prime(k - 1), self.pi_prime(k));
            if !pi1.is_multiple_of(&pi0) || !pp1.is_multiple_of(&pp0) {
                return Err(Error::Inconsistent(format!("divisor chain breaks at k={k}")));
            }
            if !(pp1 / pp0).is_multiple_of(&n) {
                return Err(Error::Inconsistent(format!(
                    "pi'({k})/pi'({}) is not a multiple of {n}",
                    k - 1
                )));
            }
            if !self.pi_prime(k).is_multiple_of(&pi1) {
                return Err(Error::Inconsistent(format!("pi({k}) does not divide pi'({k})")));
            }
        }
        Ok(())
    }
}

/// `pi'_N(k)`.
pub fn pi_prime_n(m: Modulus, k: u64) -> Result<BigUint> {
    Ok(QPeriodTable::build(m, k)?.pi_prime(k))
}

/// Closed form `pi'_{p^e}(k) = pi_p(k) p^{e-1} (pi'_p(k)/pi_p(k))^e`.
pub fn pi_prime_power_formula(p: u64, e: u32, k: u64) -> Result<BigUint> {
    check_prime(p)?;
    if e == 0 {
        return Err(Error::InvalidArgs("exponent must be at least 1".into()));
    }
    let table = QPeriodTable::build(Modulus::new(p)?, k)?;
    let pi = table.pi(k);
    let ratio = table.pi_prime(k) / &pi;
    Ok(pi * BigUint::from(p).pow(e - 1) * ratio.pow(e))
}

/// Smallest `P` such that `values` is purely periodic with period `P` and
/// holds at least three full repetitions (`3P <= len`).
pub fn minimal_period_of<T: Eq>(values: &[T]) -> Result<usize> {
    let len = values.len();
    if len == 0 {
        return Err(Error::NoPeriodFound { len });
    }
    // prefix function; the shortest period of the whole word is len - border
    let mut border = vec![0usize; len];
    for i in 1..len {
        let mut b = border[i - 1];
        while b > 0 && values[i] != values[b] {
            b = border[b - 1];
        }
        if values[i] == values[b] {
            b += 1;
        }
        border[i] = b;
    }
    let p = len - border[len - 1];
    if 3 * p <= len {
        Ok(p)
    } else {
        Err(Error::NoPeriodFound { len })
    }
}

pub fn minimal_period(seq: &arith::ResidueSeq) -> Result<usize> {
    minimal_period_of(seq.values())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::ResidueSeq;
    use crate::partitions::p_le_k_prefix;

    fn md(n: u64) -> Modulus {
        Modulus::new(n).unwrap()
    }

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    /// Brute-force shortest period, checked by direct comparison.
    fn naive_period(v: &[u32]) -> Option<usize> {
        (1..=v.len() / 3).find(|&p| (p..v.len()).all(|i| v[i] == v[i - p]))
    }

    #[test]
    fn capital_pi_examples() {
        assert_eq!(capital_pi(2, 3), Ok(4));
        assert_eq!(capital_pi(5, 4), Ok(4));
        assert_eq!(capital_pi(3, 1), Ok(1));
        assert_eq!(capital_pi(2, 8), Ok(20));
        assert_eq!(capital_pi(6, 3), Err(Error::InvalidPrime(6)));
    }

    #[test]
    fn prime_power_examples() {
        let a = pi_prime_power(2, 1, 3).unwrap();
        assert_eq!((a.b_p, a.l_p.clone(), a.pi.clone()), (2, big(3), big(12)));
        assert_eq!(pi_prime_power(5, 1, 4).unwrap().pi, big(60));
        assert_eq!(pi_prime_power(5, 1, 3).unwrap().pi, big(30));
        let c = pi_prime_power(3, 1, 3).unwrap();
        assert_eq!((c.b_p, c.l_p, c.pi), (2, big(2), big(18)));
        assert!(matches!(pi_prime_power(4, 1, 3), Err(Error::InvalidPrime(4))));
        // constant sequence: period 1 at every prime power
        assert_eq!(pi_prime_power(2, 3, 1).unwrap().pi, big(1));
        assert_eq!(pi_prime_power(3, 2, 2).unwrap().pi, big(18));
    }

    #[test]
    fn prime_power_invariants() {
        for p in [2u64, 3, 5, 7, 11, 13] {
            for e in 1..=3 {
                for k in 1..=8 {
                    let info = pi_prime_power(p, e, k).unwrap();
                    assert!(p.pow(info.b_p) >= info.capital_pi);
                    if info.b_p > 0 {
                        assert!(p.pow(info.b_p - 1) < info.capital_pi);
                    }
                    assert!(!info.l_p.is_multiple_of(&big(p)));
                    assert!(info.pi.is_multiple_of(&lcm_range(k)));
                }
            }
        }
    }

    #[test]
    fn pi_n_examples() {
        assert_eq!(pi_n(md(6), 3).unwrap(), big(36));
        assert_eq!(pi_n(md(2), 3).unwrap(), big(12));
        assert_eq!(pi_n(md(5), 1).unwrap(), big(1));
        assert_eq!(pi_n(md(5), 0).unwrap(), big(1));
        assert_eq!(pi_n(md(4), 1).unwrap(), big(1));
        assert_eq!(pi_n(md(4), 2).unwrap(), big(8));
    }

    #[test]
    fn pi_prime_examples() {
        assert_eq!(pi_prime_n(md(2), 3).unwrap(), big(48));
        assert_eq!(pi_prime_n(md(5), 4).unwrap(), big(7500));
        assert_eq!(pi_prime_n(md(3), 1).unwrap(), big(3));
        let t = QPeriodTable::build(md(5), 4).unwrap();
        let chain: Vec<BigUint> = (1..=4).map(|k| t.pi_prime(k)).collect();
        assert_eq!(chain, vec![big(5), big(50), big(750), big(7500)]);
        let ratios: Vec<BigUint> = t.steps()[1..].iter().map(|s| s.ratio.clone()).collect();
        assert_eq!(ratios, vec![big(10), big(3), big(2)]);
    }

    #[test]
    fn recursion_trace_for_mod_2() {
        let t = QPeriodTable::build(md(2), 3).unwrap();
        let trace: Vec<(u64, BigUint, Branch)> = t
            .steps()
            .iter()
            .map(|s| (s.k, s.ratio.clone(), s.branch))
            .collect();
        assert_eq!(
            trace,
            vec![
                (1, big(1), Branch::ScaledRatio),
                (2, big(4), Branch::Ratio),
                (3, big(3), Branch::ScaledRatio),
            ]
        );
    }

    #[test]
    fn table_invariants_hold() {
        for n in 2..=12 {
            QPeriodTable::build(md(n), 7).unwrap().check_invariants().unwrap();
        }
    }

    #[test]
    fn formula_examples() {
        assert_eq!(pi_prime_power_formula(2, 1, 3).unwrap(), big(48));
        assert_eq!(pi_prime_power_formula(2, 2, 3).unwrap(), big(384));
        assert_eq!(pi_prime_n(md(4), 3).unwrap(), big(384));
        assert_eq!(pi_prime_power_formula(3, 1, 1).unwrap(), big(3));
    }

    #[test]
    fn minimal_period_examples() {
        let m = md(10);
        let fig: Vec<i64> = [1, 1, 0, 1, 0, 1, 1, 0, 0, 0, 0, 0].repeat(3);
        assert_eq!(minimal_period(&ResidueSeq::from_i64s(m, &fig)), Ok(12));
        assert_eq!(minimal_period(&ResidueSeq::from_i64s(m, &[5; 6])), Ok(1));
        assert_eq!(
            minimal_period(&ResidueSeq::from_i64s(m, &[1, 2, 1, 2, 1])),
            Err(Error::NoPeriodFound { len: 5 })
        );
        assert!(minimal_period(&ResidueSeq::zeros(m, 0)).is_err());
    }

    #[test]
    fn minimal_period_matches_naive_scan() {
        let m = md(3);
        let mut state = 12345u64;
        for len in 1..60 {
            for _ in 0..20 {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                let p = 1 + (state >> 33) as usize % 6;
                let base: Vec<u32> = (0..p).map(|i| ((state >> (i * 2)) % 3) as u32).collect();
                let v: Vec<u32> = (0..len).map(|i| base[i % p]).collect();
                let seq = ResidueSeq::new(m, v.clone()).unwrap();
                assert_eq!(minimal_period(&seq).ok(), naive_period(&v), "{v:?}");
            }
        }
    }

    #[test]
    fn formula_period_is_the_observed_period() {
        for n in 2..=10 {
            for k in 1..=5 {
                let pi = pi_n(md(n), k).unwrap();
                let len = 3 * arith::to_usize(&pi, "period").unwrap();
                let seq = p_le_k_prefix(k as usize, md(n), len).unwrap();
                assert_eq!(big(minimal_period(&seq).unwrap() as u64), pi, "N={n} k={k}");
            }
        }
    }
}
