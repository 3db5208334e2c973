//! Exact integer polynomials, residue sequences and the small number-theory
//! helpers every other module leans on.

use std::fmt;
use std::ops::Mul;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Largest accepted modulus. Residues are stored as `u32` and only ever added
/// or subtracted, so `2 * (N - 1)` must fit.
pub const MAX_MODULUS: u64 = 1 << 31;

/// A validated modulus `N` with `2 <= N <= 2^31`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Modulus(u32);

impl Modulus {
    pub fn new(n: u64) -> Result<Self> {
        if !(2..=MAX_MODULUS).contains(&n) {
            return Err(Error::InvalidModulus(n));
        }
        Ok(Modulus(n as u32))
    }

    #[inline]
    pub fn get(self) -> u32 {
        self.0
    }

    #[inline]
    pub(crate) fn add(self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.0 {
            s - self.0
        } else {
            s
        }
    }

    #[inline]
    pub(crate) fn sub(self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.0 - b
        }
    }

    /// Reduce an exact integer into `[0, N)`.
    pub fn reduce(self, v: &BigInt) -> u32 {
        let m = BigInt::from(self.0);
        v.mod_floor(&m).to_u32().expect("reduced value fits in u32")
    }

    pub fn reduce_i64(self, v: i64) -> u32 {
        v.rem_euclid(i64::from(self.0)) as u32
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Dense polynomial with exact integer coefficients; `coeffs[i]` is the
/// coefficient of `q^i`. Trailing zeros are always trimmed, so the zero
/// polynomial has no coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPoly {
            coeffs: vec![BigInt::one()],
        }
    }

    /// `1 - q^d`.
    pub fn one_minus_q_pow(d: usize) -> Self {
        assert!(d > 0, "1 - q^0 is the zero polynomial");
        let mut coeffs = vec![BigInt::zero(); d + 1];
        coeffs[0] = BigInt::one();
        coeffs[d] = -BigInt::one();
        IntPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of `q^i`, zero beyond the degree.
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    /// Value at `q = 1`.
    pub fn eval_at_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    pub fn is_palindromic(&self) -> bool {
        let c = &self.coeffs;
        c.iter().eq(c.iter().rev())
    }

    /// Reduce every coefficient mod `m`, keeping the full length.
    pub fn reduce(&self, m: Modulus) -> ResidueSeq {
        ResidueSeq {
            modulus: m,
            values: self.coeffs.iter().map(|c| m.reduce(c)).collect(),
        }
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            first = false;
            let a = c.abs();
            match (i, a.is_one()) {
                (0, _) => write!(f, "{a}")?,
                (1, true) => write!(f, "q")?,
                (1, false) => write!(f, "{a}q")?,
                (_, true) => write!(f, "q^{i}")?,
                (_, false) => write!(f, "{a}q^{i}")?,
            }
        }
        Ok(())
    }
}

/// Exact product of two polynomials.
pub fn poly_mul(a: &IntPoly, b: &IntPoly) -> IntPoly {
    if a.is_zero() || b.is_zero() {
        return IntPoly::zero();
    }
    let mut out = vec![BigInt::zero(); a.coeffs.len() + b.coeffs.len() - 1];
    for (i, x) in a.coeffs.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.coeffs.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    IntPoly::new(out)
}

impl Mul for &IntPoly {
    type Output = IntPoly;

    fn mul(self, rhs: &IntPoly) -> IntPoly {
        poly_mul(self, rhs)
    }
}

/// Quotient `num / den` in `Z[q]`, failing unless the division is exact.
pub fn poly_div_exact(num: &IntPoly, den: &IntPoly) -> Result<IntPoly> {
    let dd = den
        .degree()
        .ok_or_else(|| Error::InvalidArgs("division by the zero polynomial".into()))?;
    let Some(dn) = num.degree() else {
        return Ok(IntPoly::zero());
    };
    if dn < dd {
        return Err(Error::NonExactDivision);
    }
    let lead = &den.coeffs[dd];
    let mut rem = num.coeffs.clone();
    let mut quot = vec![BigInt::zero(); dn - dd + 1];
    for shift in (0..=dn - dd).rev() {
        let top = &rem[shift + dd];
        if top.is_zero() {
            continue;
        }
        let (q, r) = top.div_rem(lead);
        if !r.is_zero() {
            return Err(Error::NonExactDivision);
        }
        for (j, d) in den.coeffs.iter().enumerate() {
            if !d.is_zero() {
                rem[shift + j] -= &q * d;
            }
        }
        quot[shift] = q;
    }
    if rem.iter().any(|c| !c.is_zero()) {
        return Err(Error::NonExactDivision);
    }
    Ok(IntPoly::new(quot))
}

/// A finite sequence of residues mod `N`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ResidueSeq {
    modulus: Modulus,
    values: Vec<u32>,
}

impl ResidueSeq {
    pub fn new(modulus: Modulus, values: Vec<u32>) -> Result<Self> {
        if let Some(&v) = values.iter().find(|&&v| v >= modulus.get()) {
            return Err(Error::InvalidResidue {
                residue: u64::from(v),
                modulus: u64::from(modulus.get()),
            });
        }
        Ok(ResidueSeq { modulus, values })
    }

    pub(crate) fn from_raw(modulus: Modulus, values: Vec<u32>) -> Self {
        debug_assert!(values.iter().all(|&v| v < modulus.get()));
        ResidueSeq { modulus, values }
    }

    pub fn zeros(modulus: Modulus, len: usize) -> Self {
        ResidueSeq {
            modulus,
            values: vec![0; len],
        }
    }

    /// Reduce arbitrary signed integers into a residue sequence.
    pub fn from_i64s(modulus: Modulus, values: &[i64]) -> Self {
        ResidueSeq {
            modulus,
            values: values.iter().map(|&v| modulus.reduce_i64(v)).collect(),
        }
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    pub fn into_values(self) -> Vec<u32> {
        self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Number of entries equal to `r`.
    pub fn count(&self, r: u32) -> usize {
        self.values.iter().filter(|&&v| v == r).count()
    }

    /// Elementwise sum; both sequences must share modulus and length.
    pub fn add(&self, other: &ResidueSeq) -> Result<ResidueSeq> {
        if self.modulus != other.modulus || self.len() != other.len() {
            return Err(Error::InvalidArgs(
                "residue sequences differ in modulus or length".into(),
            ));
        }
        let m = self.modulus;
        Ok(ResidueSeq {
            modulus: m,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(&a, &b)| m.add(a, b))
                .collect(),
        })
    }
}

/// The shifted difference `F(q) -> (1 - q^Q) F(q)` on a finite truncation.
/// Output has the input's length: `o(n) = f(n) - f(n - Q)` for `n >= Q`,
/// `o(n) = f(n)` below `Q`.
pub trait DeltaQ: Sized {
    fn delta_q(&self, q: usize) -> Self;

    /// Apply `delta_q` `times` times.
    fn delta_q_pow(&self, q: usize, times: usize) -> Self
    where
        Self: Clone,
    {
        (0..times).fold(self.clone(), |acc, _| acc.delta_q(q))
    }
}

impl DeltaQ for ResidueSeq {
    fn delta_q(&self, q: usize) -> Self {
        assert!(q >= 1, "delta_q needs Q >= 1");
        let m = self.modulus;
        let v = &self.values;
        let values = (0..v.len())
            .map(|n| if n >= q { m.sub(v[n], v[n - q]) } else { v[n] })
            .collect();
        ResidueSeq { modulus: m, values }
    }
}

impl DeltaQ for Vec<BigInt> {
    fn delta_q(&self, q: usize) -> Self {
        assert!(q >= 1, "delta_q needs Q >= 1");
        (0..self.len())
            .map(|n| {
                if n >= q {
                    &self[n] - &self[n - q]
                } else {
                    self[n].clone()
                }
            })
            .collect()
    }
}

/// Deterministic trial-division primality test.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

pub(crate) fn check_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::InvalidPrime(p))
    }
}

/// Prime factorisation by trial division, primes ascending.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// p-adic valuation of `n >= 1`.
pub fn nu_p(p: u64, n: u64) -> Result<u32> {
    check_prime(p)?;
    if n == 0 {
        return Err(Error::InvalidArgs("valuation of 0 is undefined".into()));
    }
    Ok(valuation(p, n))
}

#[inline]
pub(crate) fn valuation(p: u64, mut n: u64) -> u32 {
    let mut e = 0;
    while n.is_multiple_of(p) {
        n /= p;
        e += 1;
    }
    e
}

/// p-adic valuation of a nonzero big integer.
pub fn nu_p_big(p: u64, n: &BigUint) -> Result<u32> {
    check_prime(p)?;
    if n.is_zero() {
        return Err(Error::InvalidArgs("valuation of 0 is undefined".into()));
    }
    if p == 2 {
        return Ok(n.trailing_zeros().unwrap_or(0) as u32);
    }
    let pb = BigUint::from(p);
    let mut e = 0;
    let mut cur = n.clone();
    loop {
        let (q, r) = cur.div_rem(&pb);
        if !r.is_zero() {
            return Ok(e);
        }
        cur = q;
        e += 1;
    }
}

/// `lcm(1, ..., k)`; `lcm_range(0) = 1`.
pub fn lcm_range(k: u64) -> BigUint {
    LcmPrefixes::new().nth(k as usize).map(|(_, l)| l).unwrap()
}

/// Iterator over `(k, lcm(1..=k))` for `k = 0, 1, 2, ...`, advancing the lcm
/// by a prime factor exactly when `k` is a prime power.
#[derive(Debug, Clone)]
pub struct LcmPrefixes {
    k: u64,
    lcm: BigUint,
}

impl LcmPrefixes {
    pub fn new() -> Self {
        LcmPrefixes {
            k: 0,
            lcm: BigUint::one(),
        }
    }
}

impl Default for LcmPrefixes {
    fn default() -> Self {
        Self::new()
    }
}

impl Iterator for LcmPrefixes {
    type Item = (u64, BigUint);

    fn next(&mut self) -> Option<Self::Item> {
        let out = (self.k, self.lcm.clone());
        self.k += 1;
        if let Some(p) = prime_power_base(self.k) {
            self.lcm *= p;
        }
        Some(out)
    }
}

/// `Some(p)` when `n = p^e` with `e >= 1`.
pub fn prime_power_base(n: u64) -> Option<u64> {
    match factorize(n).as_slice() {
        [(p, _)] => Some(*p),
        _ => None,
    }
}

/// Integer `p^e` with overflow reported as an error.
pub(crate) fn checked_pow(p: u64, e: u32) -> Result<u64> {
    p.checked_pow(e)
        .ok_or_else(|| Error::TooLarge(format!("{p}^{e} overflows u64")))
}

/// Convert a big integer that will be used as a length or index.
pub(crate) fn to_usize(v: &BigUint, what: &str) -> Result<usize> {
    v.to_usize()
        .filter(|&x| x <= (1usize << 40))
        .ok_or_else(|| Error::TooLarge(format!("{what} = {v}")))
}

/// `C(n, 2)` for small `n`.
#[inline]
pub fn choose2(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    #[test]
    fn mul_examples() {
        assert_eq!(poly_mul(&p(&[1, 1]), &p(&[1, 1])), p(&[1, 2, 1]));
        assert_eq!(
            poly_mul(&p(&[1, 1, 1, 1]), &p(&[1, 0, 1])),
            p(&[1, 1, 2, 2, 1, 1])
        );
        assert!(poly_mul(&p(&[3, 0, 7]), &IntPoly::zero()).is_zero());
    }

    #[test]
    fn div_examples() {
        let q4 = IntPoly::one_minus_q_pow(4);
        assert_eq!(
            poly_div_exact(&q4, &IntPoly::one_minus_q_pow(1)).unwrap(),
            p(&[1, 1, 1, 1])
        );
        let num = &q4 * &q4;
        let den = &IntPoly::one_minus_q_pow(1) * &IntPoly::one_minus_q_pow(2);
        let g = poly_div_exact(&num, &den).unwrap();
        assert_eq!(g, p(&[1, 1, 2, 2, 1, 1]));
        assert_eq!(g.degree(), Some(5));
        assert_eq!(
            poly_div_exact(&p(&[1, 1]), &p(&[1, -1])),
            Err(Error::NonExactDivision)
        );
        assert!(matches!(
            poly_div_exact(&p(&[1]), &IntPoly::zero()),
            Err(Error::InvalidArgs(_))
        ));
    }

    #[test]
    fn trailing_zeros_trimmed() {
        let a = p(&[1, 2, 0, 0]);
        assert_eq!(a.degree(), Some(1));
        assert_eq!(p(&[0, 0]).degree(), None);
        assert_eq!(a.to_string(), "1 + 2q");
        assert_eq!(p(&[0, -1, 0, 3]).to_string(), "-q + 3q^3");
    }

    #[test]
    fn delta_on_linear_series() {
        let m = Modulus::new(1000).unwrap();
        let f = ResidueSeq::from_i64s(m, &(0..10).collect::<Vec<_>>());
        assert_eq!(f.delta_q(5).values(), &[0, 1, 2, 3, 4, 5, 5, 5, 5, 5]);

        let z = ResidueSeq::zeros(m, 7);
        assert_eq!(z.delta_q(3), z);

        let exact: Vec<BigInt> = (0..10).map(BigInt::from).collect();
        let d: Vec<i64> = exact
            .delta_q(5)
            .iter()
            .map(|v| v.to_i64().unwrap())
            .collect();
        assert_eq!(d, vec![0, 1, 2, 3, 4, 5, 5, 5, 5, 5]);
    }

    #[test]
    fn delta_of_p_le_2_mod_2_recovers_gamma() {
        // p_{<=2}(n) = floor(n/2) + 1
        let m = Modulus::new(2).unwrap();
        let vals: Vec<i64> = (0..12).map(|n| n / 2 + 1).collect();
        let f = ResidueSeq::from_i64s(m, &vals);
        let out = f.delta_q_pow(4, 2);
        let gamma = poly_div_exact(
            &(&IntPoly::one_minus_q_pow(4) * &IntPoly::one_minus_q_pow(4)),
            &(&IntPoly::one_minus_q_pow(1) * &IntPoly::one_minus_q_pow(2)),
        )
        .unwrap()
        .reduce(m);
        assert_eq!(gamma.values(), &[1, 1, 0, 0, 1, 1]);
        let mut expect = gamma.into_values();
        expect.resize(12, 0);
        assert_eq!(out.values(), expect.as_slice());
    }

    #[test]
    fn valuations() {
        assert_eq!(nu_p(2, 12), Ok(2));
        assert_eq!(nu_p(5, 7), Ok(0));
        assert_eq!(nu_p(3, 81), Ok(4));
        assert_eq!(nu_p(4, 8), Err(Error::InvalidPrime(4)));
        assert_eq!(nu_p(1, 8), Err(Error::InvalidPrime(1)));
        assert_eq!(nu_p_big(3, &BigUint::from(162u32)), Ok(4));
        assert_eq!(nu_p_big(2, &BigUint::from(96u32)), Ok(5));
    }

    #[test]
    fn lcm_examples() {
        assert_eq!(lcm_range(1), BigUint::from(1u32));
        assert_eq!(lcm_range(6), BigUint::from(60u32));
        assert_eq!(lcm_range(10), BigUint::from(2520u32));
        // naive fold as an independent route
        let mut naive = BigUint::one();
        for i in 1..=40u32 {
            naive = naive.lcm(&BigUint::from(i));
        }
        assert_eq!(lcm_range(40), naive);
    }

    #[test]
    fn primes_and_factors() {
        let primes: Vec<u64> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert_eq!(factorize(360), vec![(2, 3), (3, 2), (5, 1)]);
        assert_eq!(factorize(1), vec![]);
        assert_eq!(prime_power_base(27), Some(3));
        assert_eq!(prime_power_base(12), None);
        assert_eq!(prime_power_base(1), None);
    }

    #[test]
    fn modulus_bounds() {
        assert_eq!(Modulus::new(1), Err(Error::InvalidModulus(1)));
        assert!(Modulus::new(MAX_MODULUS).is_ok());
        assert!(Modulus::new(MAX_MODULUS + 1).is_err());
        let m = Modulus::new(3).unwrap();
        assert!(ResidueSeq::new(m, vec![0, 3]).is_err());
    }

    fn small_poly() -> impl Strategy<Value = IntPoly> {
        prop::collection::vec(-20i64..20, 0..8).prop_map(|c| IntPoly::from_i64s(&c))
    }

    proptest! {
        #[test]
        fn div_undoes_mul(a in small_poly(), b in small_poly()) {
            prop_assume!(!b.is_zero());
            let prod = &a * &b;
            if let (Some(da), Some(db)) = (a.degree(), b.degree()) {
                prop_assert_eq!(prod.degree(), Some(da + db));
            }
            prop_assert_eq!(poly_div_exact(&prod, &b).unwrap(), a);
        }

        #[test]
        fn delta_is_linear(
            f in prop::collection::vec(0u32..7, 0..30),
            g in prop::collection::vec(0u32..7, 0..30),
            q in 1usize..6,
        ) {
            let m = Modulus::new(7).unwrap();
            let len = f.len().min(g.len());
            let f = ResidueSeq::new(m, f[..len].to_vec()).unwrap();
            let g = ResidueSeq::new(m, g[..len].to_vec()).unwrap();
            let lhs = f.add(&g).unwrap().delta_q(q);
            let rhs = f.delta_q(q).add(&g.delta_q(q)).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn delta_telescopes(f in prop::collection::vec(-50i64..50, 0..30), q in 1usize..6) {
            let exact: Vec<BigInt> = f.iter().map(|&v| BigInt::from(v)).collect();
            let d = exact.delta_q(q);
            for n in 0..exact.len() {
                let rebuilt: BigInt = (0..=n / q).map(|j| &d[n - j * q]).sum();
                prop_assert_eq!(&rebuilt, &exact[n]);
            }
        }

        #[test]
        fn valuation_is_additive(a in 1u64..5000, b in 1u64..5000, pi in 0usize..5) {
            let p = [2u64, 3, 5, 7, 11][pi];
            prop_assert_eq!(nu_p(p, a * b).unwrap(), nu_p(p, a).unwrap() + nu_p(p, b).unwrap());
        }
    }
}
