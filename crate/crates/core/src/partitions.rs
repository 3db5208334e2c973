//! Partition counts: `p_{<=k}(n)`, `p_{=k}(n)` and box-bounded counts
//! `p(j, k, i)`, i.e. the coefficients of the Gaussian binomial
//! `[j+k choose k]_q`. Everything here runs in `Z/NZ` except the `*_exact`
//! variants, which exist for the exact-integer checks.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::{Modulus, ResidueSeq};
use crate::error::{Error, Result};

/// A `j x k` box: parts at most `j`, at most `k` parts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BoxSpec {
    pub j: usize,
    pub k: usize,
}

impl BoxSpec {
    pub fn new(j: usize, k: usize) -> Self {
        BoxSpec { j, k }
    }

    /// Length of the coefficient vector of `[j+k choose k]_q`.
    pub fn coeff_len(&self) -> usize {
        self.j * self.k + 1
    }
}

/// First `len` values of `p_{<=k}(n) mod N`, by dividing the series `1` by
/// `(1 - q^i)` for `i = 1..=k`. `k = 0` gives `[1, 0, 0, ...]`.
pub fn p_le_k_prefix(k: usize, m: Modulus, len: usize) -> Result<ResidueSeq> {
    if len == 0 {
        return Err(Error::InvalidArgs("prefix length must be positive".into()));
    }
    let mut a = vec![0u32; len];
    a[0] = 1;
    for i in 1..=k.min(len.saturating_sub(1)) {
        for t in i..len {
            a[t] = m.add(a[t], a[t - i]);
        }
    }
    Ok(ResidueSeq::from_raw(m, a))
}

/// `p_{=k}(l) mod N` for `l < len`, via `p_{=k}(l) = p_{<=k}(l - k)`.
pub fn p_eq_k(k: usize, m: Modulus, len: usize) -> Result<ResidueSeq> {
    if len == 0 {
        return Err(Error::InvalidArgs("prefix length must be positive".into()));
    }
    let mut out = vec![0u32; len];
    if k < len {
        let base = p_le_k_prefix(k, m, len - k)?;
        out[k..].copy_from_slice(base.values());
    }
    Ok(ResidueSeq::from_raw(m, out))
}

/// Exact `p_{<=k}(n)` for `n < len`.
pub fn p_le_k_exact(k: usize, len: usize) -> Vec<BigInt> {
    let mut a = vec![BigInt::zero(); len];
    if len == 0 {
        return a;
    }
    a[0] = BigInt::one();
    for i in 1..=k {
        for t in i..len {
            let prev = a[t - i].clone();
            a[t] += prev;
        }
    }
    a
}

/// Coefficients of `[j+k choose k]_q mod N`, entry `i` being `p(j, k, i)`.
///
/// Computed as the truncated series `prod (1 - q^{j+i}) / prod (1 - q^i)`;
/// the quotient is a polynomial of degree `jk`, so truncating at `jk + 1`
/// terms loses nothing.
pub fn box_coeffs(j: usize, k: usize, m: Modulus) -> Vec<u32> {
    let len = BoxSpec::new(j, k).coeff_len();
    let mut a = vec![0u32; len];
    a[0] = 1;
    for i in 1..=k {
        let s = j + i;
        for t in (s..len).rev() {
            a[t] = m.sub(a[t], a[t - s]);
        }
        for t in i..len {
            a[t] = m.add(a[t], a[t - i]);
        }
    }
    a
}

/// Same vector as [`box_coeffs`], built by the q-Pascal recurrence stepped
/// through [`GaussianRows`].
pub fn box_coeffs_by_recurrence(j: usize, k: usize, m: Modulus) -> Vec<u32> {
    let mut rows = GaussianRows::new(k, m);
    while rows.n() < j + k {
        rows.advance();
    }
    rows.row(k).to_vec()
}

/// Exact coefficients of `[j+k choose k]_q`.
pub fn box_coeffs_exact(j: usize, k: usize) -> Vec<BigInt> {
    let len = BoxSpec::new(j, k).coeff_len();
    let mut a = vec![BigInt::zero(); len];
    a[0] = BigInt::one();
    for i in 1..=k {
        let s = j + i;
        for t in (s..len).rev() {
            let prev = a[t - s].clone();
            a[t] -= prev;
        }
        for t in i..len {
            let prev = a[t - i].clone();
            a[t] += prev;
        }
    }
    a
}

/// Coefficients of `[n choose k]_q mod N`, length `k(n-k) + 1`.
pub fn qbinom_coeffs(n: usize, k: usize, m: Modulus) -> Result<ResidueSeq> {
    if n < k {
        return Err(Error::InvalidArgs(format!(
            "q-binomial needs n >= k, got n={n}, k={k}"
        )));
    }
    Ok(ResidueSeq::from_raw(m, box_coeffs(n - k, k, m)))
}

/// Exact coefficients of `[n choose k]_q`.
pub fn qbinom_exact(n: usize, k: usize) -> Result<Vec<BigInt>> {
    if n < k {
        return Err(Error::InvalidArgs(format!(
            "q-binomial needs n >= k, got n={n}, k={k}"
        )));
    }
    Ok(box_coeffs_exact(n - k, k))
}

/// The rows `[n choose r]_q mod N` for `r = 0..=k_max`, advanced one `n` at a
/// time in place:
///
/// `[n+1, r] = [n, r] + q^{n+1-r} [n, r-1]`.
///
/// Row `r` is empty while `n < r`. One step costs about `n k^2 / 2`
/// additions, which makes sweeping every `n` up to `M` far cheaper than
/// rebuilding each vector from scratch.
#[derive(Debug, Clone)]
pub struct GaussianRows {
    m: Modulus,
    n: usize,
    rows: Vec<Vec<u32>>,
}

impl GaussianRows {
    /// Rows at `n = 0`.
    pub fn new(k_max: usize, m: Modulus) -> Self {
        let mut rows = vec![Vec::new(); k_max + 1];
        rows[0].push(1);
        GaussianRows { m, n: 0, rows }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `[n choose r]_q mod N`; empty when `n < r`.
    pub fn row(&self, r: usize) -> &[u32] {
        &self.rows[r]
    }

    pub fn advance(&mut self) {
        let n1 = self.n + 1;
        let m = self.m;
        let top = (self.rows.len() - 1).min(n1);
        for r in (1..=top).rev() {
            let shift = n1 - r;
            let (lower, upper) = self.rows.split_at_mut(r);
            let src = &lower[r - 1];
            let dst = &mut upper[0];
            dst.resize(r * shift + 1, 0);
            for (d, &s) in dst[shift..shift + src.len()].iter_mut().zip(src) {
                *d = m.add(*d, s);
            }
        }
        self.n = n1;
    }
}

/// Visit every partition of `total` with at most `max_parts` parts, each at
/// most `max_part`, as a nonincreasing slice.
pub fn for_each_partition<F: FnMut(&[usize])>(
    total: usize,
    max_parts: usize,
    max_part: usize,
    mut f: F,
) {
    fn go<F: FnMut(&[usize])>(
        rest: usize,
        parts_left: usize,
        cap: usize,
        buf: &mut Vec<usize>,
        f: &mut F,
    ) {
        if rest == 0 {
            f(buf);
            return;
        }
        if parts_left == 0 || cap == 0 || rest > parts_left * cap {
            return;
        }
        for part in (1..=cap.min(rest)).rev() {
            buf.push(part);
            go(rest - part, parts_left - 1, part, buf, f);
            buf.pop();
        }
    }
    let mut buf = Vec::new();
    go(total, max_parts, max_part, &mut buf, &mut f);
}
