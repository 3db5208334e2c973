//! The residue counts `f_{k,R}(n) = #{a : [q^a] [n choose k]_q = R mod N}`,
//! their linear pieces modulo `Q = pi'_N(k)` and the block structure of the
//! coefficient vectors that forces the linearity.

use num_bigint::BigInt;

use crate::arith::{choose2, to_usize, Modulus};
use crate::error::{Error, Result};
use crate::partitions::{for_each_partition, p_le_k_exact, qbinom_coeffs, qbinom_exact, GaussianRows};
use crate::periods::pi_prime_n;
use crate::structure::check_zero_sum;

fn check_residue(r: u32, m: Modulus) -> Result<()> {
    if r >= m.get() {
        return Err(Error::InvalidResidue {
            residue: u64::from(r),
            modulus: u64::from(m.get()),
        });
    }
    Ok(())
}

/// `pi'_N(k)` as an index.
pub fn quasi_period(k: usize, m: Modulus) -> Result<usize> {
    to_usize(&pi_prime_n(m, k as u64)?, "pi'_N(k)")
}

/// `f_{k,R}(n)` from a freshly built coefficient vector. Zero for `n < k`.
pub fn f_count(n: usize, k: usize, r: u32, m: Modulus) -> Result<u64> {
    check_residue(r, m)?;
    if n < k {
        return Ok(0);
    }
    Ok(qbinom_coeffs(n, k, m)?.count(r) as u64)
}

/// `f_{k,R}(n)` for every `R < N` and `0 <= n <= n_max`, from one sweep of
/// [`GaussianRows`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountTable {
    k: usize,
    modulus: Modulus,
    counts: Vec<Vec<u64>>,
}

impl CountTable {
    pub fn build(k: usize, m: Modulus, n_max: usize) -> Self {
        let width = m.get() as usize;
        let mut rows = GaussianRows::new(k, m);
        let mut counts = Vec::with_capacity(n_max + 1);
        loop {
            let mut c = vec![0u64; width];
            for &v in rows.row(k) {
                c[v as usize] += 1;
            }
            counts.push(c);
            if rows.n() == n_max {
                break;
            }
            rows.advance();
        }
        CountTable {
            k,
            modulus: m,
            counts,
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn n_max(&self) -> usize {
        self.counts.len() - 1
    }

    pub fn get(&self, n: usize, r: u32) -> u64 {
        self.counts[n][r as usize]
    }

    /// `f_{k,R}(0..=n_max)`.
    pub fn series(&self, r: u32) -> Vec<u64> {
        self.counts.iter().map(|c| c[r as usize]).collect()
    }
}

/// `[n+k choose k]_q mod N` cut into `k` sections of length `n` and the
/// trailing `1`; section `i` holds the coefficients of `q^{in}..q^{in+n-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SectionDecomp {
    pub n: usize,
    pub k: usize,
    pub modulus: Modulus,
    pub quasi_period: usize,
    pub sections: Vec<Vec<u32>>,
    pub trailing: u32,
}

impl SectionDecomp {
    /// `l = floor(n / Q)`.
    pub fn block_count(&self) -> usize {
        self.n / self.quasi_period
    }

    /// The full-length blocks `B_i^1, ..., B_i^l` of section `i`.
    pub fn blocks(&self, i: usize) -> std::slice::ChunksExact<'_, u32> {
        self.sections[i].chunks_exact(self.quasi_period)
    }

    /// The remainder `R_i`, of length `n mod Q`.
    pub fn remainder(&self, i: usize) -> &[u32] {
        self.blocks(i).remainder()
    }

    /// Sections followed by the trailing entry.
    pub fn concat(&self) -> Vec<u32> {
        let mut out: Vec<u32> = self.sections.concat();
        out.push(self.trailing);
        out
    }
}

pub fn decompose(n: usize, k: usize, m: Modulus) -> Result<SectionDecomp> {
    if n == 0 || k == 0 {
        return Err(Error::InvalidArgs("sections need n >= 1 and k >= 1".into()));
    }
    let q = quasi_period(k, m)?;
    let coeffs = qbinom_coeffs(n + k, k, m)?.into_values();
    let sections: Vec<Vec<u32>> = coeffs[..k * n].chunks(n).map(<[u32]>::to_vec).collect();
    let trailing = coeffs[k * n];
    Ok(SectionDecomp {
        n,
        k,
        modulus: m,
        quasi_period: q,
        sections,
        trailing,
    })
}

/// Position of a disagreement: section, block (0-based) and offset in it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BlockPos {
    pub section: usize,
    pub block: usize,
    pub offset: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockReport {
    pub n: usize,
    pub k: usize,
    pub modulus: Modulus,
    pub quasi_period: usize,
    pub blocks_per_section: usize,
    pub passed: bool,
    pub first_mismatch: Option<BlockPos>,
}

/// Every block of a section equals the section's first block. With `n < Q`
/// there are no blocks and the check is vacuous.
pub fn check_block_equality(n: usize, k: usize, m: Modulus) -> Result<BlockReport> {
    let d = decompose(n, k, m)?;
    let first_mismatch = (0..k).find_map(|s| {
        let mut blocks = d.blocks(s);
        let head = blocks.next()?;
        blocks.enumerate().find_map(|(b, blk)| {
            blk.iter().zip(head).position(|(x, y)| x != y).map(|offset| BlockPos {
                section: s,
                block: b + 1,
                offset,
            })
        })
    });
    Ok(BlockReport {
        n,
        k,
        modulus: m,
        quasi_period: d.quasi_period,
        blocks_per_section: d.block_count(),
        passed: first_mismatch.is_none(),
        first_mismatch,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZeroRun {
    Head,
    Tail,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SectionZerosReport {
    pub l: usize,
    pub k: usize,
    pub modulus: Modulus,
    pub quasi_period: usize,
    /// `(tail, head)` run lengths for each section `m`.
    pub runs: Vec<(usize, usize)>,
    pub passed: bool,
    pub first_failure: Option<(ZeroRun, BlockPos)>,
}

/// At `n = lQ`, every block of section `m` ends in `C(k+1-m, 2) - 1` zeros
/// and has zeros at offsets `1..C(m+2, 2)`.
pub fn check_section_zeros(l: usize, k: usize, m: Modulus) -> Result<SectionZerosReport> {
    if l == 0 {
        return Err(Error::InvalidArgs("l must be at least 1".into()));
    }
    let q = quasi_period(k, m)?;
    let d = decompose(q * l, k, m)?;
    let runs: Vec<(usize, usize)> = (0..k)
        .map(|s| (choose2(k + 1 - s) - 1, choose2(s + 2) - 1))
        .collect();
    let mut first_failure = None;
    'outer: for (s, &(tail, head)) in runs.iter().enumerate() {
        for (b, blk) in d.blocks(s).enumerate() {
            let pos = |offset| BlockPos {
                section: s,
                block: b,
                offset,
            };
            let start = q.saturating_sub(tail);
            if let Some(o) = blk[start..].iter().position(|&v| v != 0) {
                first_failure = Some((ZeroRun::Tail, pos(start + o)));
                break 'outer;
            }
            let end = (head + 1).min(q);
            if let Some(o) = blk.get(1..end).and_then(|h| h.iter().position(|&v| v != 0)) {
                first_failure = Some((ZeroRun::Head, pos(1 + o)));
                break 'outer;
            }
        }
    }
    Ok(SectionZerosReport {
        l,
        k,
        modulus: m,
        quasi_period: q,
        runs,
        passed: first_failure.is_none(),
        first_failure,
    })
}

/// A pair `(lambda, mu)` escaping the box: `lambda` starts with `i` parts
/// equal to `n` followed by at most `k - i` parts of size at most `n`, and
/// `mu` has exactly `i` parts.
pub type BadPair = (Vec<usize>, Vec<usize>);

pub fn enumerate_bad(i: usize, m: usize, j: usize, n: usize, k: usize) -> Result<Vec<BadPair>> {
    if i == 0 || i > m || m + 1 > k || j >= n {
        return Err(Error::InvalidArgs(format!(
            "need 1 <= i <= m <= k-1 and j < n, got i={i}, m={m}, k={k}, j={j}, n={n}"
        )));
    }
    let total = m * n + j;
    let fixed = i * n;
    let mut out = Vec::new();
    if total < fixed + i {
        return Ok(out);
    }
    for lam_rest in 0..=total - fixed - i {
        let mut rests = Vec::new();
        for_each_partition(lam_rest, k - i, n, |p| rests.push(p.to_vec()));
        if rests.is_empty() {
            continue;
        }
        let mu_size = total - fixed - lam_rest;
        let mut mus = Vec::new();
        for_each_partition(mu_size, i, mu_size, |p| {
            if p.len() == i {
                mus.push(p.to_vec());
            }
        });
        for rest in &rests {
            let mut lambda = vec![n; i];
            lambda.extend_from_slice(rest);
            for mu in &mus {
                out.push((lambda.clone(), mu.clone()));
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lemma34Report {
    pub n: usize,
    pub k: usize,
    pub m: usize,
    pub j: usize,
    /// `[q^{mn+j}] [n+k choose k]_q`.
    pub section_value: BigInt,
    /// `p_{<=k}(mn+j)`.
    pub unrestricted: BigInt,
    /// `#bad_{i,m}(j)` for `i = 1..=m`.
    pub bad_counts: Vec<usize>,
    pub passed: bool,
}

pub fn check_lemma34(n: usize, k: usize, m: usize, j: usize) -> Result<Lemma34Report> {
    if m == 0 || m + 1 > k || j >= n {
        return Err(Error::InvalidArgs(format!(
            "need 1 <= m <= k-1 and j < n, got m={m}, k={k}, j={j}, n={n}"
        )));
    }
    let idx = m * n + j;
    let section_value = qbinom_exact(n + k, k)?[idx].clone();
    let unrestricted = p_le_k_exact(k, idx + 1)[idx].clone();
    let bad_counts = (1..=m)
        .map(|i| enumerate_bad(i, m, j, n, k).map(|v| v.len()))
        .collect::<Result<Vec<_>>>()?;
    let bad: usize = bad_counts.iter().sum();
    let passed = section_value == &unrestricted - BigInt::from(bad);
    Ok(Lemma34Report {
        n,
        k,
        m,
        j,
        section_value,
        unrestricted,
        bad_counts,
        passed,
    })
}

/// `L^{(i)}(n) = slope * (n - i) / Q + intercept` on the class `n = i mod Q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LinearPiece {
    pub class: usize,
    pub intercept: i64,
    pub slope: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuasiFit {
    pub k: usize,
    pub residue: u32,
    pub modulus: Modulus,
    pub quasi_period: usize,
    pub pieces: Vec<LinearPiece>,
    /// Smallest sampled `n` in each class.
    pub sample_base: Vec<usize>,
}

impl QuasiFit {
    /// The linear piece evaluated at `n`, ignoring the `n >= k` domain.
    pub fn linear(&self, n: usize) -> i64 {
        let q = self.quasi_period;
        let piece = &self.pieces[n % q];
        piece.slope * (n / q) as i64 + piece.intercept
    }

    /// `f_{k,R}(n)` as predicted: `0` below `k`, the linear piece from there.
    pub fn predict(&self, n: usize) -> i64 {
        if n < self.k {
            0
        } else {
            self.linear(n)
        }
    }

    pub fn slopes(&self) -> Vec<i64> {
        self.pieces.iter().map(|p| p.slope).collect()
    }
}

/// Largest `n` that [`fit_table`] reads for quasi-period `q`.
pub fn fit_window(k: usize, q: usize) -> usize {
    let last_base = (q + k).div_ceil(q) * q + q - 1;
    last_base + 2 * q
}

/// Fit every class mod `Q = pi'_N(k)` from three samples `n0, n0+Q, n0+2Q`,
/// `n0` the least `n = i mod Q` with `n >= Q + k`.
pub fn fit_table(table: &CountTable, r: u32) -> Result<QuasiFit> {
    let (k, m) = (table.k(), table.modulus());
    check_residue(r, m)?;
    let q = quasi_period(k, m)?;
    if table.n_max() < fit_window(k, q) {
        return Err(Error::InvalidArgs(format!(
            "count table reaches n={}, fit needs {}",
            table.n_max(),
            fit_window(k, q)
        )));
    }
    let mut pieces = Vec::with_capacity(q);
    let mut sample_base = Vec::with_capacity(q);
    for i in 0..q {
        let n0 = if i >= q + k { i } else { i + (q + k - i).div_ceil(q) * q };
        let points = [n0, n0 + q, n0 + 2 * q];
        let samples = points.map(|n| table.get(n, r));
        let [a, b, c] = samples.map(|v| v as i64);
        if b - a != c - b {
            return Err(Error::NonlinearFit {
                class: i,
                quasi_period: q,
                points: points.map(|n| n as u64),
                samples,
            });
        }
        let slope = b - a;
        let intercept = a - slope * ((n0 - i) / q) as i64;
        pieces.push(LinearPiece {
            class: i,
            intercept,
            slope,
        });
        sample_base.push(n0);
    }
    Ok(QuasiFit {
        k,
        residue: r,
        modulus: m,
        quasi_period: q,
        pieces,
        sample_base,
    })
}

pub fn fit(k: usize, r: u32, m: Modulus) -> Result<QuasiFit> {
    if k == 0 {
        return Err(Error::InvalidArgs("k must be at least 1".into()));
    }
    check_residue(r, m)?;
    let q = quasi_period(k, m)?;
    fit_table(&CountTable::build(k, m, fit_window(k, q)), r)
}

/// `F(x) = sum_n f_{k,R}(n) x^n` as `P(x) / (1 - x^Q)^2` with
///
/// `P(x) = sum_i (1 - x^Q) b_i x^i + m_i x^{Q+i} + (1 - x^Q)^2 C(x)`,
///
/// where the polynomial `C` of degree below `k` cancels the linear pieces
/// below `n = k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenFun {
    pub q: usize,
    pub numerator_b: Vec<i64>,
    pub numerator_m: Vec<i64>,
    pub head_correction: Vec<i64>,
}

impl GenFun {
    pub fn numerator(&self) -> Vec<i64> {
        let q = self.q;
        let mut p = vec![0i64; 2 * q + self.head_correction.len().max(1)];
        for (i, (&b, &m)) in self.numerator_b.iter().zip(&self.numerator_m).enumerate() {
            p[i] += b;
            p[q + i] -= b;
            p[q + i] += m;
        }
        for (i, &c) in self.head_correction.iter().enumerate() {
            p[i] += c;
            p[q + i] -= 2 * c;
            p[2 * q + i] += c;
        }
        while p.len() > 1 && p.last() == Some(&0) {
            p.pop();
        }
        p
    }

    /// First `terms` coefficients, from `s(n) = P_n + 2 s(n-Q) - s(n-2Q)`.
    pub fn expand(&self, terms: usize) -> Vec<i64> {
        let p = self.numerator();
        let q = self.q;
        let mut s = Vec::with_capacity(terms);
        for n in 0..terms {
            let mut v = p.get(n).copied().unwrap_or(0);
            if n >= q {
                v += 2 * s[n - q];
            }
            if n >= 2 * q {
                v -= s[n - 2 * q];
            }
            s.push(v);
        }
        s
    }
}

pub fn genfun(fit: &QuasiFit) -> GenFun {
    GenFun {
        q: fit.quasi_period,
        numerator_b: fit.pieces.iter().map(|p| p.intercept).collect(),
        numerator_m: fit.pieces.iter().map(|p| p.slope).collect(),
        head_correction: (0..fit.k).map(|n| -fit.linear(n)).collect(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlopeReport {
    pub k: usize,
    pub residue: u32,
    pub modulus: Modulus,
    pub quasi_period: usize,
    /// `pi'_N(k-1)`.
    pub shift: usize,
    /// `(i, m_i)` for ascending `i`.
    pub slopes: Vec<(usize, i64)>,
    /// Smallest `d | Q` with `m_i = m_{i+d}` cyclically.
    pub min_slope_period: usize,
    /// `p_{<=k-1}` sums to zero over a period mod `N`.
    pub in_hypothesis: bool,
    pub passed: bool,
}

pub fn check_slope_period_of(fit: &QuasiFit) -> Result<SlopeReport> {
    let m = fit.modulus;
    if m.get().is_multiple_of(2) {
        return Err(Error::HypothesisNotMet(format!(
            "slope period is only checked for odd N, got N={m}"
        )));
    }
    let k = fit.k;
    let q = fit.quasi_period;
    let shift = quasi_period(k - 1, m)?;
    let slopes = fit.slopes();
    let cyclic = |d: usize| (0..q).all(|i| slopes[i] == slopes[(i + d) % q]);
    let passed = cyclic(shift % q);
    let min_slope_period = (1..=q).find(|&d| q.is_multiple_of(d) && cyclic(d)).unwrap_or(q);
    let in_hypothesis = k >= 2 && check_zero_sum(k - 1, m)?.strong;
    Ok(SlopeReport {
        k,
        residue: fit.residue,
        modulus: m,
        quasi_period: q,
        shift,
        slopes: slopes.into_iter().enumerate().collect(),
        min_slope_period,
        in_hypothesis,
        passed,
    })
}

/// Slopes repeat with shift `pi'_N(k-1)`. Odd `N` only.
pub fn check_slope_period(k: usize, r: u32, m: Modulus) -> Result<SlopeReport> {
    if m.get().is_multiple_of(2) {
        return Err(Error::HypothesisNotMet(format!(
            "slope period is only checked for odd N, got N={m}"
        )));
    }
    check_slope_period_of(&fit(k, r, m)?)
}

/// Smallest `d <= bound` such that `f_{k,R}` is linear on every class mod `d`
/// over the window `[k, k + 4 bound]`. Exploratory: a window can only
/// refute a candidate, never prove it.
pub fn minimal_quasiperiod_search(k: usize, r: u32, m: Modulus, bound: usize) -> Result<usize> {
    check_residue(r, m)?;
    if bound == 0 {
        return Err(Error::InvalidArgs("bound must be positive".into()));
    }
    let hi = k + 4 * bound;
    let f = CountTable::build(k, m, hi).series(r);
    (1..=bound)
        .find(|&d| {
            (k..=hi - 2 * d).all(|n| f[n] + f[n + 2 * d] == 2 * f[n + d])
        })
        .ok_or(Error::NotFound { bound })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn md(n: u64) -> Modulus {
        Modulus::new(n).unwrap()
    }

    #[test]
    fn f_count_examples() {
        assert_eq!(f_count(4, 2, 1, md(2)).unwrap(), 4);
        assert_eq!(f_count(4, 2, 0, md(2)).unwrap(), 1);
        for k in 1..5 {
            assert_eq!(f_count(k, k, 1, md(3)).unwrap(), 1);
        }
        assert_eq!(f_count(1, 3, 0, md(2)).unwrap(), 0);
        assert!(matches!(
            f_count(4, 2, 2, md(2)),
            Err(Error::InvalidResidue { .. })
        ));
    }

    #[test]
    fn counts_partition_the_coefficients() {
        for n_mod in 2..=6 {
            for k in 1..=4 {
                let t = CountTable::build(k, md(n_mod), 60);
                for n in k..=60 {
                    let total: u64 = (0..n_mod as u32).map(|r| t.get(n, r)).sum();
                    assert_eq!(total as usize, k * (n - k) + 1);
                }
            }
        }
    }

    #[test]
    fn table_matches_fresh_vectors() {
        let m = md(3);
        let t = CountTable::build(3, m, 40);
        for n in 0..=40 {
            for r in 0..3 {
                assert_eq!(t.get(n, r), f_count(n, 3, r, m).unwrap(), "n={n} r={r}");
            }
        }
    }

    #[test]
    fn decompose_examples() {
        let d = decompose(5, 2, md(10)).unwrap();
        assert_eq!(d.sections, vec![vec![1, 1, 2, 2, 3], vec![3, 3, 2, 2, 1]]);
        assert_eq!(d.trailing, 1);

        let d = decompose(5, 1, md(7)).unwrap();
        assert_eq!(d.sections, vec![vec![1; 5]]);
        assert_eq!(d.trailing, 1);

        let d = decompose(96, 3, md(2)).unwrap();
        assert_eq!(d.quasi_period, 48);
        for s in 0..3 {
            assert_eq!(d.blocks(s).count(), 2);
            assert!(d.remainder(s).is_empty());
        }
    }

    #[test]
    fn sections_concatenate_to_the_vector() {
        for (n, k, nm) in [(5, 2, 10), (7, 3, 2), (20, 3, 3), (13, 4, 5), (1, 1, 2)] {
            let m = md(nm);
            let d = decompose(n, k, m).unwrap();
            assert_eq!(d.concat(), qbinom_coeffs(n + k, k, m).unwrap().into_values());
            for s in 0..k {
                assert_eq!(d.remainder(s).len(), n % d.quasi_period);
            }
        }
    }

    #[test]
    fn block_examples() {
        let r = check_block_equality(96, 3, md(2)).unwrap();
        assert!(r.passed);
        assert_eq!(r.blocks_per_section, 2);
        let q = quasi_period(2, md(3)).unwrap();
        assert_eq!(q, 18);
        assert!(check_block_equality(2 * q, 2, md(3)).unwrap().passed);
        let r = check_block_equality(8 + 3, 2, md(2)).unwrap();
        assert!(r.passed);
        assert_eq!(r.blocks_per_section, 1);
    }

    #[test]
    fn block_equality_sweep() {
        for nm in 2..=5 {
            for k in 1..=3 {
                let m = md(nm);
                let q = quasi_period(k, m).unwrap();
                for l in 1..=3 {
                    for rem in [0, 1, q.min(20) - 1] {
                        let r = check_block_equality(l * q + rem, k, m).unwrap();
                        assert!(r.passed, "{r:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn section_zero_examples() {
        let r = check_section_zeros(1, 3, md(2)).unwrap();
        assert!(r.passed);
        assert_eq!(r.runs.iter().map(|x| x.0).collect::<Vec<_>>(), vec![5, 2, 0]);
        assert!(check_section_zeros(2, 2, md(3)).unwrap().passed);
        let r = check_section_zeros(1, 1, md(5)).unwrap();
        assert!(r.passed);
        assert_eq!(r.runs, vec![(0, 0)]);
    }

    #[test]
    fn bad_pairs_examples() {
        // |lambda| + |mu| >= in + i = 4 > 3, and [q^3][5 choose 2] = 2 = p_{<=2}(3)
        assert!(enumerate_bad(1, 1, 0, 3, 2).unwrap().is_empty());
        assert!(enumerate_bad(2, 2, 0, 3, 3).unwrap().is_empty());
        let pairs = enumerate_bad(1, 1, 2, 5, 2).unwrap();
        assert_eq!(
            pairs,
            vec![(vec![5], vec![2]), (vec![5, 1], vec![1])]
        );
    }

    #[test]
    fn lemma34_examples() {
        let r = check_lemma34(5, 2, 1, 2).unwrap();
        assert_eq!(r.section_value, BigInt::from(2));
        assert_eq!(r.unrestricted, BigInt::from(4));
        assert_eq!(r.bad_counts, vec![2]);
        assert!(r.passed);
        assert!(check_lemma34(4, 3, 2, 0).unwrap().passed);
        assert!(check_lemma34(3, 2, 1, 0).unwrap().passed);
    }

    #[test]
    fn lemma34_sweep() {
        for n in 1..=8 {
            for k in 2..=4 {
                for m in 1..k {
                    for j in 0..n {
                        let r = check_lemma34(n, k, m, j).unwrap();
                        assert!(r.passed, "{r:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn fit_examples() {
        let f = fit(1, 1, md(3)).unwrap();
        assert_eq!(f.quasi_period, 3);
        assert!(f.pieces.iter().all(|p| p.slope == 3));
        assert_eq!(
            f.pieces.iter().map(|p| p.intercept).collect::<Vec<_>>(),
            vec![0, 1, 2]
        );
        let f = fit(1, 0, md(3)).unwrap();
        assert!(f.pieces.iter().all(|p| p.slope == 0 && p.intercept == 0));

        let m = md(2);
        let f = fit(2, 1, m).unwrap();
        assert_eq!(f.quasi_period, 8);
        for n in 0..=50 {
            assert_eq!(f.predict(n), f_count(n, 2, 1, m).unwrap() as i64, "n={n}");
        }
    }

    #[test]
    fn fits_and_series_match_brute_force() {
        for nm in 2..=5 {
            let m = md(nm);
            for k in 1..=3 {
                let q = quasi_period(k, m).unwrap();
                let table = CountTable::build(k, m, fit_window(k, q).max(k + 3 * q));
                for r in 0..nm as u32 {
                    let f = fit_table(&table, r).unwrap();
                    let series = genfun(&f).expand(k + 3 * q + 1);
                    for (n, &s) in series.iter().enumerate() {
                        let want = table.get(n, r) as i64;
                        assert_eq!(f.predict(n), want, "N={nm} k={k} R={r} n={n}");
                        assert_eq!(s, want, "N={nm} k={k} R={r} n={n}");
                    }
                    assert!(f.pieces.iter().all(|p| p.slope >= 0));
                }
            }
        }
    }

    #[test]
    fn genfun_examples() {
        let g = genfun(&fit(1, 1, md(3)).unwrap());
        assert_eq!(g.expand(10), (0..10).collect::<Vec<i64>>());
        let g = genfun(&fit(1, 0, md(3)).unwrap());
        assert!(g.expand(12).iter().all(|&v| v == 0));
    }

    #[test]
    fn slope_examples() {
        let r = check_slope_period(2, 0, md(3)).unwrap();
        assert!(r.passed);
        let r = check_slope_period(1, 1, md(3)).unwrap();
        assert!(r.passed);
        assert_eq!(r.shift, 1);
        assert_eq!(r.min_slope_period, 1);
        assert!(matches!(
            check_slope_period(2, 1, md(4)),
            Err(Error::HypothesisNotMet(_))
        ));
    }

    #[test]
    fn quasiperiod_search_examples() {
        assert_eq!(minimal_quasiperiod_search(1, 1, md(3), 10).unwrap(), 1);
        let d = minimal_quasiperiod_search(2, 1, md(2), 8).unwrap();
        assert_eq!(8 % d, 0);
    }
}
