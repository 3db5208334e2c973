//! One period of `p_{<=k} mod N`, the polynomial
//! `gamma(q) = (1 - q^Q)^k / prod_{i<=k} (1 - q^i)` and the structural facts
//! tying them together: trailing zeros, (anti)symmetry and zero sums.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arith::{
    choose2, is_prime, lcm_range, poly_div_exact, poly_mul, to_usize, IntPoly, Modulus,
    ResidueSeq,
};
use crate::error::{Error, Result};
use crate::partitions::p_le_k_prefix;
use crate::periods::{pi_n, pi_prime_power};

/// The sequence of the first `pi_N(k)` values of `p_{<=k} mod N`, with the
/// shape it is known to have.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SProfile {
    pub k: usize,
    pub modulus: Modulus,
    pub seq: ResidueSeq,
    /// `C(k+1, 2) - 1`.
    pub zero_tail_len: usize,
    /// `(-1)^(k+1)`.
    pub symmetry_sign: i8,
    /// `pi_N(k) < C(k+1, 2)`: no index pairs to compare.
    pub symmetry_vacuous: bool,
}

pub fn s_sequence(k: usize, m: Modulus) -> Result<SProfile> {
    if k == 0 {
        return Err(Error::InvalidArgs("k must be at least 1".into()));
    }
    let pi = to_usize(&pi_n(m, k as u64)?, "pi_N(k)")?;
    let seq = p_le_k_prefix(k, m, pi)?;
    let c = choose2(k + 1);
    let zero_tail_len = c - 1;
    let symmetry_sign = if k % 2 == 1 { 1 } else { -1 };
    let v = seq.values();

    if zero_tail_len > v.len() {
        return Err(Error::StructureViolation(format!(
            "period {pi} is shorter than the zero tail {zero_tail_len}"
        )));
    }
    if let Some(pos) = v[v.len() - zero_tail_len..].iter().position(|&x| x != 0) {
        return Err(Error::StructureViolation(format!(
            "k={k}, N={m}: entry {} of the zero tail is {}",
            v.len() - zero_tail_len + pos,
            v[v.len() - zero_tail_len + pos]
        )));
    }

    let symmetry_vacuous = pi < c;
    if !symmetry_vacuous {
        let top = pi - c;
        for i in 0..=top {
            let mirror = v[top - i];
            let expect = if symmetry_sign == 1 {
                mirror
            } else {
                m.sub(0, mirror)
            };
            if v[i] != expect {
                return Err(Error::StructureViolation(format!(
                    "k={k}, N={m}: s_{i} = {} but s_{} = {mirror} with sign {symmetry_sign}",
                    v[i],
                    top - i
                )));
            }
        }
    }

    Ok(SProfile {
        k,
        modulus: m,
        seq,
        zero_tail_len,
        symmetry_sign,
        symmetry_vacuous,
    })
}

/// `(1 - q^Q)^k` expanded.
fn one_minus_q_pow_k(q: usize, k: usize) -> IntPoly {
    let mut coeffs = vec![BigInt::zero(); k * q + 1];
    let mut binom = BigInt::one();
    for t in 0..=k {
        coeffs[t * q] = if t % 2 == 0 { binom.clone() } else { -binom.clone() };
        binom = binom * (k - t) / (t + 1);
    }
    IntPoly::new(coeffs)
}

/// `gamma(q) = (1 - q^Q)^k / prod_{i=1..=k} (1 - q^i)`, exact.
///
/// Requires `lcm(1..=k) | Q`; otherwise the division is not exact.
pub fn gamma_poly(k: usize, q: usize) -> Result<IntPoly> {
    if k == 0 || q == 0 {
        return Err(Error::InvalidArgs("gamma needs k >= 1 and Q >= 1".into()));
    }
    if !BigUint::from(q).is_multiple_of(&lcm_range(k as u64)) {
        return Err(Error::NonExactDivision);
    }
    let den = (1..=k).fold(IntPoly::one(), |acc, i| {
        poly_mul(&acc, &IntPoly::one_minus_q_pow(i))
    });
    poly_div_exact(&one_minus_q_pow_k(q, k), &den)
}

/// Outcome of checking
/// `[q^{r + Q(k-1)}] gamma == (-1)^{k-1} [q^r] gamma (mod p^e)` for all `r < Q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CongruenceReport {
    pub k: usize,
    pub p: u64,
    pub e: u32,
    pub quasi_period: usize,
    pub passed: bool,
    /// First failing `r`.
    pub counterexample: Option<usize>,
}

pub fn check_gamma_congruence(k: usize, p: u64, e: u32) -> Result<CongruenceReport> {
    let info = pi_prime_power(p, e, k as u64)?;
    let q = to_usize(&info.pi, "pi_{p^e}(k)")?;
    let modulus = Modulus::new(crate::arith::checked_pow(p, e)?)?;
    let gamma = gamma_poly(k, q)?;
    let negate = (k - 1) % 2 == 1;
    let counterexample = (0..q).find(|&r| {
        let lo = modulus.reduce(&gamma.coeff(r));
        let hi = modulus.reduce(&gamma.coeff(r + q * (k - 1)));
        let expect = if negate { modulus.sub(0, lo) } else { lo };
        hi != expect
    });
    Ok(CongruenceReport {
        k,
        p,
        e,
        quasi_period: q,
        passed: counterexample.is_none(),
        counterexample,
    })
}

/// Zero-sum behaviour of one period of `p_{<=k} mod N` for odd `N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZeroSumReport {
    pub k: usize,
    pub modulus: Modulus,
    pub period: BigUint,
    /// `sum_{i < pi_N(k)} p_{<=k}(i) mod N`.
    pub period_sum: u32,
    /// `pi_N(k+1) / pi_N(k)`.
    pub ratio: BigUint,
    pub strong: bool,
    pub weak: bool,
    /// `k` odd and `gcd(ratio, N) > 1`: only the weak form is promised.
    pub predicts_weak_only: bool,
    /// The promised conclusion holds.
    pub consistent: bool,
    /// For prime `N`: whether the prime-modulus rule promises the strong
    /// form (strong unless `k` odd, `gcd(ratio, p) > 1` and `k` does not
    /// divide `pi_p(k-1)`).
    pub prime_rule_predicts_strong: Option<bool>,
}

impl ZeroSumReport {
    /// The prime-modulus rule predicts strong but the sum is not 0.
    pub fn prime_rule_exception(&self) -> bool {
        self.prime_rule_predicts_strong
            .is_some_and(|predicted| predicted && !self.strong)
    }
}

pub fn check_zero_sum(k: usize, m: Modulus) -> Result<ZeroSumReport> {
    let n = m.get();
    if n.is_multiple_of(2) {
        return Err(Error::EvenModulus(u64::from(n)));
    }
    if k == 0 {
        return Err(Error::InvalidArgs("k must be at least 1".into()));
    }
    let period = pi_n(m, k as u64)?;
    let len = to_usize(&period, "pi_N(k)")?;
    let seq = p_le_k_prefix(k, m, len)?;
    let period_sum = seq.values().iter().fold(0u32, |acc, &v| m.add(acc, v));
    let next = pi_n(m, k as u64 + 1)?;
    let ratio = &next / &period;

    let nb = BigUint::from(n);
    let ratio_mod = (&ratio % &nb).to_u64_digits().first().copied().unwrap_or(0);
    let weak = (u128::from(ratio_mod) * u128::from(period_sum)) % u128::from(n) == 0;
    let strong = period_sum == 0;
    let gcd_gt_1 = !ratio.gcd(&nb).is_one();
    let predicts_weak_only = k % 2 == 1 && gcd_gt_1;
    let consistent = if predicts_weak_only { weak } else { strong };

    let prime_rule_predicts_strong = if is_prime(u64::from(n)) {
        let prev = pi_n(m, k as u64 - 1)?;
        let k_divides = prev.is_multiple_of(&BigUint::from(k));
        Some(!(k % 2 == 1 && gcd_gt_1 && !k_divides))
    } else {
        None
    };

    Ok(ZeroSumReport {
        k,
        modulus: m,
        period,
        period_sum,
        ratio,
        strong,
        weak,
        predicts_weak_only,
        consistent,
        prime_rule_predicts_strong,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::DeltaQ;
    use crate::partitions::p_le_k_exact;
    use num_traits::ToPrimitive;

    fn md(n: u64) -> Modulus {
        Modulus::new(n).unwrap()
    }

    #[test]
    fn s_sequence_examples() {
        let s = s_sequence(3, md(2)).unwrap();
        assert_eq!(s.seq.values(), &[1, 1, 0, 1, 0, 1, 1, 0, 0, 0, 0, 0]);
        assert_eq!((s.zero_tail_len, s.symmetry_sign), (5, 1));

        let s = s_sequence(2, md(2)).unwrap();
        assert_eq!(s.seq.values(), &[1, 1, 0, 0]);
        assert_eq!((s.zero_tail_len, s.symmetry_sign), (2, -1));

        let s = s_sequence(1, md(5)).unwrap();
        assert_eq!(s.seq.values(), &[1]);
        assert_eq!((s.zero_tail_len, s.symmetry_sign), (0, 1));
    }

    #[test]
    fn s_profile_holds_for_composite_moduli() {
        for n in 2..=9 {
            for k in 1..=5 {
                s_sequence(k, md(n)).unwrap_or_else(|e| panic!("N={n} k={k}: {e}"));
            }
        }
    }

    #[test]
    fn gamma_examples() {
        assert_eq!(
            gamma_poly(2, 4).unwrap(),
            IntPoly::from_i64s(&[1, 1, 2, 2, 1, 1])
        );
        assert_eq!(gamma_poly(1, 3).unwrap(), IntPoly::from_i64s(&[1, 1, 1]));
        let g = gamma_poly(3, 12).unwrap();
        assert_eq!(g.degree(), Some(30));
        assert!(g.is_palindromic());
        assert_eq!(g.eval_at_one(), BigInt::from(288));
        assert_eq!(gamma_poly(3, 8), Err(Error::NonExactDivision));
    }

    #[test]
    fn gamma_shape_over_many_periods() {
        for k in 1..=5usize {
            for n in 2..=6 {
                let q = to_usize(&pi_n(md(n), k as u64).unwrap(), "q").unwrap();
                let g = gamma_poly(k, q).unwrap();
                assert_eq!(g.degree(), Some(k * q - choose2(k + 1)), "k={k} Q={q}");
                assert!(g.is_palindromic());
                let factorial: BigInt = (1..=k).map(BigInt::from).product();
                assert_eq!(g.eval_at_one() * factorial, BigInt::from(q).pow(k as u32));
            }
        }
    }

    #[test]
    fn repeated_delta_recovers_gamma() {
        for k in 1..=4usize {
            let q = to_usize(&pi_n(md(2), k as u64).unwrap(), "q").unwrap();
            let series = p_le_k_exact(k, k * q + 1);
            let out = series.delta_q_pow(q, k);
            let mut g = gamma_poly(k, q).unwrap().into_coeffs();
            g.resize(k * q + 1, BigInt::zero());
            assert_eq!(out, g, "k={k}");
        }
    }

    #[test]
    fn congruence_examples() {
        for (k, p, e) in [(2, 2, 1), (3, 2, 1), (1, 3, 1), (4, 3, 2), (4, 2, 2)] {
            let r = check_gamma_congruence(k, p, e).unwrap();
            assert!(r.passed, "{r:?}");
        }
        assert_eq!(check_gamma_congruence(2, 2, 1).unwrap().quasi_period, 4);
    }

    #[test]
    fn zero_sum_examples() {
        let r = check_zero_sum(2, md(3)).unwrap();
        assert!(r.strong && r.consistent);
        let r = check_zero_sum(3, md(3)).unwrap();
        assert!(r.strong);
        assert_eq!(r.period.to_u64(), Some(18));
        assert_eq!(r.ratio.to_u64(), Some(2));
        assert!(!r.predicts_weak_only);
        assert!(check_zero_sum(2, md(5)).unwrap().strong);
        assert_eq!(check_zero_sum(2, md(4)), Err(Error::EvenModulus(4)));
    }

    #[test]
    fn exact_period_sums() {
        // exact sums over one period, reduced afterwards
        let sum = |k: usize, len: usize| -> BigInt { p_le_k_exact(k, len).iter().sum() };
        assert_eq!(sum(2, 6), BigInt::from(12));
        assert_eq!(sum(3, 18), BigInt::from(237));
        assert_eq!(sum(2, 10), BigInt::from(30));
    }

    #[test]
    fn k_equal_one_is_a_prime_rule_exception() {
        let r = check_zero_sum(1, md(5)).unwrap();
        assert_eq!(r.period_sum, 1);
        assert!(r.weak && !r.strong && r.predicts_weak_only && r.consistent);
        assert_eq!(r.prime_rule_predicts_strong, Some(true));
        assert!(r.prime_rule_exception());
    }

    #[test]
    fn even_k_always_strong() {
        for n in [3, 5, 7, 9] {
            for k in [2, 4, 6] {
                let r = check_zero_sum(k, md(n)).unwrap();
                assert!(r.strong, "N={n} k={k}");
            }
            for k in [1, 3, 5] {
                let r = check_zero_sum(k, md(n)).unwrap();
                assert!(r.weak && r.consistent, "N={n} k={k}");
            }
        }
    }
}
