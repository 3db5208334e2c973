//! Growth of `pi_p(k)` and `pi'_p(k)`: exact values on a log scale next to
//! their smooth asymptotic estimates.

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::arith::{check_prime, lcm_range, nu_p_big, LcmPrefixes};
use crate::error::{Error, Result};
use crate::periods::{capital_pi, ceil_log};

/// Above this `k` the Chebyshev function is summed over sieved primes
/// instead of taken from the exact lcm.
pub const EXACT_PSI_LIMIT: u64 = 10_000;

/// Natural log of a positive big integer.
pub fn ln_big(n: &BigUint) -> f64 {
    let bits = n.bits();
    if bits <= 1000 {
        return n.to_f64().unwrap_or(f64::INFINITY).ln();
    }
    let shift = bits - 64;
    let top = (n >> shift).to_f64().unwrap_or(f64::INFINITY);
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// `psi(k) = ln lcm(1..=k)` together with the lcm itself.
#[derive(Debug, Clone, PartialEq)]
pub struct Psi {
    pub k: u64,
    pub lcm: BigUint,
    pub ln: f64,
}

pub fn chebyshev_psi(k: u64) -> Result<Psi> {
    if k == 0 {
        return Err(Error::InvalidArgs("k must be at least 1".into()));
    }
    let lcm = lcm_range(k);
    let ln = ln_big(&lcm);
    Ok(Psi { k, lcm, ln })
}

/// Primes up to `n` by the sieve of Eratosthenes.
pub fn primes_up_to(n: u64) -> Vec<u64> {
    let n = n as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if composite[i] {
            continue;
        }
        out.push(i as u64);
        for j in (i * i..=n).step_by(i) {
            composite[j] = true;
        }
    }
    out
}

/// `floor(log_p k)` in integers.
pub fn floor_log(p: u64, k: u64) -> u32 {
    let mut e = 0;
    let mut pow = p;
    while pow <= k {
        e += 1;
        match pow.checked_mul(p) {
            Some(next) => pow = next,
            None => break,
        }
    }
    e
}

/// `psi(k) = sum_{p^m <= k} ln p` over sieved primes.
pub fn psi_by_sieve(k: u64) -> f64 {
    primes_up_to(k)
        .into_iter()
        .map(|p| f64::from(floor_log(p, k)) * (p as f64).ln())
        .sum()
}

/// `psi(1..=k_max)` both ways: from the running exact lcm, and as the
/// running sum of the von Mangoldt function over a sieve.
pub fn psi_dual(k_max: u64) -> Vec<(f64, f64)> {
    let primes = primes_up_to(k_max);
    let mut mangoldt = vec![0f64; k_max as usize + 1];
    for &p in &primes {
        let lnp = (p as f64).ln();
        let mut pow = p;
        while pow <= k_max {
            mangoldt[pow as usize] = lnp;
            pow = match pow.checked_mul(p) {
                Some(v) => v,
                None => break,
            };
        }
    }
    let mut running = 0f64;
    LcmPrefixes::new()
        .skip(1)
        .take(k_max as usize)
        .map(|(k, lcm)| {
            running += mangoldt[k as usize];
            (ln_big(&lcm), running)
        })
        .collect()
}

/// `psi(k)`, exact below [`EXACT_PSI_LIMIT`], sieved above.
pub fn psi(k: u64) -> f64 {
    if k <= EXACT_PSI_LIMIT {
        ln_big(&lcm_range(k))
    } else {
        psi_by_sieve(k)
    }
}

fn log_p(p: u64, x: f64) -> f64 {
    x.ln() / (p as f64).ln()
}

fn require_above_p(p: u64, k: u64) -> Result<()> {
    check_prime(p)?;
    if k <= p {
        return Err(Error::DomainError(format!(
            "log_p log_p k needs k > p, got p={p}, k={k}"
        )));
    }
    Ok(())
}

/// `nu_p(lcm(1..=k)) = floor(log_p k)`, both sides computed and compared.
pub fn nu_lcm(p: u64, k: u64) -> Result<u32> {
    check_prime(p)?;
    if k == 0 {
        return Err(Error::InvalidArgs("k must be at least 1".into()));
    }
    agree(p, k, nu_p_big(p, &lcm_range(k))?)
}

fn agree(p: u64, k: u64, from_lcm: u32) -> Result<u32> {
    let from_log = floor_log(p, k);
    if from_lcm != from_log {
        return Err(Error::Inconsistent(format!(
            "nu_{p}(lcm(1..{k})) = {from_lcm} but floor(log_{p} {k}) = {from_log}"
        )));
    }
    Ok(from_lcm)
}

/// [`nu_lcm`] for every `k = 1..=k_max` with one pass over the lcm prefixes.
pub fn nu_lcm_sweep(p: u64, k_max: u64) -> Result<Vec<u32>> {
    check_prime(p)?;
    LcmPrefixes::new()
        .skip(1)
        .take(k_max as usize)
        .map(|(k, lcm)| agree(p, k, nu_p_big(p, &lcm)?))
        .collect()
}

/// `Pi(k) ~ (p-1)/p k log_p k`.
pub fn capital_pi_estimate(p: u64, k: u64) -> Result<f64> {
    check_prime(p)?;
    if k < 2 {
        return Err(Error::DomainError(format!("needs k >= 2, got {k}")));
    }
    Ok((p - 1) as f64 / p as f64 * k as f64 * log_p(p, k as f64))
}

/// `log_p pi_p(k) ~ log_p log_p k + psi(k) / ln p`.
pub fn pi_estimate_log(p: u64, k: u64) -> Result<f64> {
    require_above_p(p, k)?;
    Ok(log_p(p, log_p(p, k as f64)) + psi(k) / (p as f64).ln())
}

/// `b_p(k)`: least `b` with `p^b >= Pi(k)`.
pub fn b_p(p: u64, k: u64) -> Result<u32> {
    Ok(ceil_log(p, capital_pi(p, k)?))
}

/// `log_p pi_p(k) = b_p(k) + psi(k)/ln p - floor(log_p k)` for `k >= 2`,
/// read off the closed form of the period.
pub fn pi_exact_log(p: u64, k: u64) -> Result<f64> {
    check_prime(p)?;
    if k < 2 {
        return Ok(0.0);
    }
    Ok(f64::from(b_p(p, k)?) + psi(k) / (p as f64).ln() - f64::from(floor_log(p, k)))
}

/// `nu_p(pi'_p(k) / pi_p(k))`: the number of steps `j <= k` at which the
/// period ratio `pi_p(j) / pi_p(j-1)` is prime to `p`, so the recursion
/// multiplies by an extra `p`.
pub fn ratio_valuation(p: u64, k: u64) -> Result<u32> {
    check_prime(p)?;
    let mut prev_exp = 0u32;
    let mut cap = 0u64;
    let mut scaled = 0u32;
    for j in 1..=k {
        cap += p.pow(crate::arith::valuation(p, j));
        let exp = ceil_log(p, cap);
        if exp == prev_exp {
            scaled += 1;
        }
        prev_exp = exp;
    }
    Ok(scaled)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RatioEstimate {
    pub p: u64,
    pub k: u64,
    /// `k - log_p k - log_p log_p k`.
    pub estimate: f64,
    /// `k - b_p(k)`.
    pub closed_form: i64,
    /// `nu_p(pi'_p(k) / pi_p(k))` from the recursion.
    pub exact: u32,
}

pub fn qperiod_ratio_estimate(p: u64, k: u64) -> Result<RatioEstimate> {
    require_above_p(p, k)?;
    let lk = log_p(p, k as f64);
    Ok(RatioEstimate {
        p,
        k,
        estimate: k as f64 - lk - log_p(p, lk),
        closed_form: k as i64 - i64::from(b_p(p, k)?),
        exact: ratio_valuation(p, k)?,
    })
}

/// `log_p pi'_{p^e}(k) ~ psi(k)/ln p + e (k - log_p k) + (1 - e) log_p log_p k`.
pub fn combined_estimate(p: u64, e: u32, k: u64) -> Result<f64> {
    require_above_p(p, k)?;
    if e == 0 {
        return Err(Error::DomainError("e must be at least 1".into()));
    }
    let lk = log_p(p, k as f64);
    let e = f64::from(e);
    Ok(psi(k) / (p as f64).ln() + e * (k as f64 - lk) + (1.0 - e) * log_p(p, lk))
}

/// `log_p` of the prime-power quasi-period formula
/// `pi_p(k) p^{e-1} (pi'_p(k)/pi_p(k))^e`.
pub fn combined_exact_log(p: u64, e: u32, k: u64) -> Result<f64> {
    if e == 0 {
        return Err(Error::InvalidArgs("exponent must be at least 1".into()));
    }
    Ok(pi_exact_log(p, k)? + f64::from(e - 1) + f64::from(e * ratio_valuation(p, k)?))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quantity {
    /// `Pi(k)`, plain scale.
    CapitalPi,
    /// `log_p pi_p(k)`.
    PiLog,
    /// `log_p (pi'_p(k) / pi_p(k))`.
    QPeriodRatio,
    /// `log_p pi'_{p^e}(k)`.
    Combined,
}

impl Quantity {
    pub fn label(self) -> &'static str {
        match self {
            Quantity::CapitalPi => "capital_pi",
            Quantity::PiLog => "log_pi",
            Quantity::QPeriodRatio => "log_qperiod_ratio",
            Quantity::Combined => "log_qperiod",
        }
    }
}

/// One exact value and its estimate. `estimate` is `None` outside the
/// estimate's domain (`k <= p`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymRow {
    pub quantity: Quantity,
    pub p: u64,
    pub e: u32,
    pub k: u64,
    pub exact: f64,
    pub estimate: Option<f64>,
}

impl AsymRow {
    pub fn rel_error(&self) -> Option<f64> {
        self.estimate
            .map(|est| (est - self.exact).abs() / self.exact.abs())
            .filter(|v| v.is_finite())
    }
}

fn in_domain(r: Result<f64>) -> Result<Option<f64>> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(Error::DomainError(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

/// Rows for every `k` in the grid. The combined row is added when `e` is
/// given.
pub fn asym_rows(p: u64, e: Option<u32>, ks: &[u64]) -> Result<Vec<AsymRow>> {
    check_prime(p)?;
    let mut rows = Vec::new();
    for &k in ks {
        if k == 0 {
            return Err(Error::InvalidArgs("grid values must be positive".into()));
        }
        let row = |quantity, e, exact, estimate| AsymRow {
            quantity,
            p,
            e,
            k,
            exact,
            estimate,
        };
        rows.push(row(
            Quantity::CapitalPi,
            1,
            capital_pi(p, k)? as f64,
            in_domain(capital_pi_estimate(p, k))?,
        ));
        rows.push(row(
            Quantity::PiLog,
            1,
            pi_exact_log(p, k)?,
            in_domain(pi_estimate_log(p, k))?,
        ));
        let ratio = in_domain(qperiod_ratio_estimate(p, k).map(|r| r.estimate))?;
        rows.push(row(
            Quantity::QPeriodRatio,
            1,
            f64::from(ratio_valuation(p, k)?),
            ratio,
        ));
        if let Some(e) = e {
            rows.push(row(
                Quantity::Combined,
                e,
                combined_exact_log(p, e, k)?,
                in_domain(combined_estimate(p, e, k))?,
            ));
        }
    }
    Ok(rows)
}

/// `b_p(k) - floor(log_p k)`: the floor and ceiling terms the smooth
/// estimate of `log_p pi_p(k)` drops.
pub fn rounding_terms(p: u64, k: u64) -> Result<i64> {
    Ok(i64::from(b_p(p, k)?) - i64::from(floor_log(p, k)))
}
