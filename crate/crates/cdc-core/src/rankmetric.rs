//! Rank-metric machinery: Gaussian binomial coefficients, MRD code sizes,
//! the Delsarte rank distribution, explicit Gabidulin codes, and
//! rank-restricted subcodes.
//!
//! All counts are exact arbitrary-precision integers; nothing in this module
//! touches floating point.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::field::{prime_power_decompose, ExtensionField, FieldSpec};
use crate::matrix::{rank_in_place, Matrix};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Default cap on explicit codeword enumerations.
pub const DEFAULT_ENUM_CAP: u64 = 1 << 24;

/// The Gaussian binomial coefficient `[n choose k]_q`: the number of
/// k-dimensional subspaces of F_q^n. Zero when `k > n`.
pub fn gaussian_binomial(n: usize, k: usize, q: u64) -> BigUint {
    assert!(q >= 2, "q must be at least 2");
    if k > n {
        return BigUint::zero();
    }
    let q = BigUint::from(q);
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..k {
        num *= q.pow((n - i) as u32) - 1u32;
        den *= q.pow((k - i) as u32) - 1u32;
    }
    let (quot, rem) = (&num / &den, &num % &den);
    debug_assert!(rem.is_zero());
    quot
}

/// Parameters of a maximum rank distance code living in `rows x cols`
/// matrices over F_q with minimum rank distance `d`.
///
/// Rank and rank distance are transpose-invariant, so everything downstream
/// normalizes to `m = max(rows, cols)` rows and `n = min(rows, cols)`
/// columns and transposes back as needed.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct MrdCodeSpec {
    pub q: u64,
    pub rows: usize,
    pub cols: usize,
    pub d: usize,
}

impl MrdCodeSpec {
    pub fn new(q: u64, rows: usize, cols: usize, d: usize) -> Result<Self> {
        prime_power_decompose(q)?;
        if rows == 0 || cols == 0 {
            return Err(Error::invalid("matrix dimensions must be positive"));
        }
        if d < 1 || d > rows.min(cols) {
            return Err(Error::invalid(format!(
                "rank distance {d} out of range for {rows}x{cols} matrices"
            )));
        }
        Ok(MrdCodeSpec { q, rows, cols, d })
    }

    /// `(m, n)` with `m >= n`.
    pub fn normalized(&self) -> (usize, usize) {
        (self.rows.max(self.cols), self.rows.min(self.cols))
    }

    /// Exact MRD size q^(max(m,n) * (min(m,n) - d + 1)).
    pub fn size(&self) -> BigUint {
        let (m, n) = self.normalized();
        BigUint::from(self.q).pow((m * (n - self.d + 1)) as u32)
    }
}

/// Exact number of codewords of each rank in an MRD code, from Delsarte's
/// closed form:
///
/// ```text
/// A_r = [n choose r]_q * sum_{i=0}^{r-d} (-1)^i q^(i(i-1)/2) [r choose i]_q (q^(m(r-i-d+1)) - 1)
/// ```
///
/// for d <= r <= n (with m >= n after normalization), plus A_0 = 1.
#[derive(Clone, Debug)]
pub struct RankDistribution {
    spec: MrdCodeSpec,
    counts: BTreeMap<usize, BigUint>,
}

impl RankDistribution {
    pub fn delsarte(spec: MrdCodeSpec) -> Self {
        let (m, n) = spec.normalized();
        let d = spec.d;
        let q = BigInt::from(spec.q);
        let mut counts = BTreeMap::new();
        counts.insert(0, BigUint::one());
        for r in d..=n {
            let mut sum = BigInt::zero();
            for i in 0..=(r - d) {
                let sign = if i % 2 == 0 { 1 } else { -1 };
                let mut term = q.pow((i * (i.wrapping_sub(1)) / 2) as u32);
                term *= BigInt::from(gaussian_binomial(r, i, spec.q));
                term *= q.pow((m * (r - i - d + 1)) as u32) - 1;
                sum += sign * term;
            }
            debug_assert!(sum.sign() != Sign::Minus);
            let count = BigInt::from(gaussian_binomial(n, r, spec.q)) * sum;
            counts.insert(r, count.to_biguint().expect("rank counts are nonnegative"));
        }
        let dist = RankDistribution { spec, counts };
        debug_assert_eq!(dist.total(), spec.size());
        dist
    }

    pub fn spec(&self) -> &MrdCodeSpec {
        &self.spec
    }

    /// Number of codewords of rank exactly `r`.
    pub fn count(&self, r: usize) -> BigUint {
        self.counts.get(&r).cloned().unwrap_or_else(BigUint::zero)
    }

    /// `(rank, count)` pairs in ascending rank order, including rank 0.
    pub fn counts(&self) -> impl Iterator<Item = (usize, &BigUint)> {
        self.counts.iter().map(|(&r, c)| (r, c))
    }

    /// Sum of all counts; always equals the MRD size.
    pub fn total(&self) -> BigUint {
        self.counts.values().sum()
    }

    /// Number of codewords of rank at most `max_rank` (the size of the
    /// rank-restricted subcode, zero word included).
    pub fn restricted_total(&self, max_rank: usize) -> BigUint {
        self.counts
            .iter()
            .filter(|(&r, _)| r <= max_rank)
            .map(|(_, c)| c)
            .sum()
    }
}

/// An explicit Gabidulin realization of an MRD code.
///
/// Codewords are the coordinate expansions of evaluations of q-linearized
/// polynomials f(x) = sum_i a_i x^(q^i) with message coefficients
/// a_i in F_{q^m}, 0 <= i <= n-d, evaluated at the first n polynomial-basis
/// elements of F_{q^m} over F_q. Enumeration order is ascending over the
/// packed message integer, so the zero matrix always comes first and runs
/// are reproducible.
pub struct GabidulinCode {
    base: Arc<FieldSpec>,
    spec: MrdCodeSpec,
    ext: ExtensionField,
    message_len: usize,
    /// powers[i][j] = g_j^(q^i) for evaluation point g_j = x^j.
    powers: Vec<Vec<u64>>,
}

impl GabidulinCode {
    pub fn new(base: &Arc<FieldSpec>, spec: MrdCodeSpec) -> Result<Self> {
        if base.q() != spec.q {
            return Err(Error::invalid(format!(
                "field {base} does not match code parameter q={}",
                spec.q
            )));
        }
        let (m, n) = spec.normalized();
        let ext = ExtensionField::new(base, m as u32)?;
        let message_len = n - spec.d + 1;
        let mut powers = Vec::with_capacity(message_len);
        let mut row: Vec<u64> = (0..n).map(|j| ext.basis_element(j as u32)).collect();
        for _ in 0..message_len {
            powers.push(row.clone());
            for v in row.iter_mut() {
                *v = ext.frobenius(*v);
            }
        }
        Ok(GabidulinCode {
            base: Arc::clone(base),
            spec,
            ext,
            message_len,
            powers,
        })
    }

    pub fn spec(&self) -> &MrdCodeSpec {
        &self.spec
    }

    pub fn size(&self) -> BigUint {
        self.spec.size()
    }

    /// Code size as a u64, or the cap error when it does not fit under `cap`.
    pub fn size_under_cap(&self, cap: u64) -> Result<u64> {
        let size = self.size();
        if size > BigUint::from(cap) {
            return Err(Error::EnumerationCapExceeded { size, cap });
        }
        Ok(u64::try_from(&size).expect("size fits after cap check"))
    }

    /// The codeword for a packed message index, as a `rows x cols` matrix.
    pub fn codeword(&self, index: u64) -> Matrix {
        let (m, n) = self.spec.normalized();
        let mut digits = index;
        let size = self.ext.size();
        let mut entries = vec![0u64; m * n];
        let mut message = Vec::with_capacity(self.message_len);
        for _ in 0..self.message_len {
            message.push(digits % size);
            digits /= size;
        }
        for j in 0..n {
            let mut y = 0u64;
            for (i, &a) in message.iter().enumerate() {
                if a != 0 {
                    y = self.ext.add(y, self.ext.mul(a, self.powers[i][j]));
                }
            }
            for (i, c) in self.ext.coords(y).into_iter().enumerate() {
                entries[i * n + j] = c;
            }
        }
        let normalized = Matrix::new(Arc::clone(&self.base), m, n, entries)
            .expect("entries are field elements");
        if self.spec.rows == m && self.spec.cols == n {
            normalized
        } else {
            normalized.transpose()
        }
    }

    /// Stream every codeword in deterministic order; errors when the code is
    /// larger than `cap`.
    pub fn enumerate(&self, cap: u64) -> Result<impl Iterator<Item = Matrix> + '_> {
        let count = self.size_under_cap(cap)?;
        Ok((0..count).map(|i| self.codeword(i)))
    }

    /// All codewords of rank at most `max_rank`. The count always equals the
    /// Delsarte restricted total for the same parameters.
    pub fn restricted_subcode(&self, max_rank: usize, cap: u64) -> Result<Vec<Matrix>> {
        let count = self.size_under_cap(cap)?;
        let words = collect_restricted(self, count, max_rank);
        Ok(words)
    }
}

#[cfg(feature = "parallel")]
fn collect_restricted(code: &GabidulinCode, count: u64, max_rank: usize) -> Vec<Matrix> {
    let mut words: Vec<(u64, Matrix)> = (0..count)
        .into_par_iter()
        .filter_map(|i| {
            let w = code.codeword(i);
            (w.rank() <= max_rank).then_some((i, w))
        })
        .collect();
    words.sort_by_key(|(i, _)| *i);
    words.into_iter().map(|(_, w)| w).collect()
}

#[cfg(not(feature = "parallel"))]
fn collect_restricted(code: &GabidulinCode, count: u64, max_rank: usize) -> Vec<Matrix> {
    (0..count)
        .map(|i| code.codeword(i))
        .filter(|w| w.rank() <= max_rank)
        .collect()
}

/// Histogram of matrix ranks.
pub fn rank_histogram(words: &[Matrix]) -> BTreeMap<usize, u64> {
    #[cfg(feature = "parallel")]
    {
        words
            .par_iter()
            .fold(BTreeMap::new, |mut acc: BTreeMap<usize, u64>, w| {
                *acc.entry(w.rank()).or_insert(0) += 1;
                acc
            })
            .reduce(BTreeMap::new, |mut a, b| {
                for (r, c) in b {
                    *a.entry(r).or_insert(0) += c;
                }
                a
            })
    }
    #[cfg(not(feature = "parallel"))]
    {
        let mut acc = BTreeMap::new();
        for w in words {
            *acc.entry(w.rank()).or_insert(0) += 1;
        }
        acc
    }
}

/// Exact minimum pairwise rank distance over all unordered pairs, or `None`
/// for fewer than two words.
pub fn min_pairwise_rank_distance(words: &[Matrix]) -> Option<usize> {
    if words.len() < 2 {
        return None;
    }
    let total = pair_count(words.len());
    let eval = |t: u64, buf: &mut Vec<u64>| -> usize {
        let (i, j) = pair_from_index(t, words.len());
        let (a, b) = (&words[i], &words[j]);
        let spec = a.spec();
        buf.clear();
        buf.extend(
            a.entries()
                .iter()
                .zip(b.entries())
                .map(|(&x, &y)| spec.sub(x, y)),
        );
        rank_in_place(spec, buf, a.rows(), a.cols())
    };
    #[cfg(feature = "parallel")]
    {
        (0..total)
            .into_par_iter()
            .map_init(Vec::new, |buf, t| eval(t, buf))
            .min()
    }
    #[cfg(not(feature = "parallel"))]
    {
        let mut buf = Vec::new();
        (0..total).map(|t| eval(t, &mut buf)).min()
    }
}

/// Number of unordered pairs of `len` items.
pub(crate) fn pair_count(len: usize) -> u64 {
    let len = len as u64;
    len * (len - 1) / 2
}

/// Decode a pair index `t` in `[0, len*(len-1)/2)` to `(i, j)` with `i < j`,
/// ordered lexicographically: (0,1), (0,2), ..., (1,2), ...
pub(crate) fn pair_from_index(t: u64, len: usize) -> (usize, usize) {
    let len = len as u64;
    let row_start = |i: u64| i * (2 * len - i - 1) / 2;
    // closed-form row estimate, then fix up floating point drift at boundaries
    let lf = 2.0 * len as f64 - 1.0;
    let mut i = ((lf - (lf * lf - 8.0 * t as f64).sqrt()) / 2.0).floor() as u64;
    i = i.min(len - 2);
    while row_start(i) > t {
        i -= 1;
    }
    while i + 2 < len && row_start(i + 1) <= t {
        i += 1;
    }
    let j = i + 1 + (t - row_start(i));
    (i as usize, j as usize)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::subspace::all_subspaces;

    fn f(p: u64, e: u32) -> Arc<FieldSpec> {
        Arc::new(FieldSpec::new(p, e).unwrap())
    }

    #[test]
    fn gaussian_binomial_edges() {
        assert_eq!(gaussian_binomial(5, 0, 2), BigUint::one());
        assert_eq!(gaussian_binomial(5, 5, 2), BigUint::one());
        assert_eq!(gaussian_binomial(3, 4, 2), BigUint::zero());
    }

    #[test]
    fn gaussian_binomial_4_2_2_counts_subspaces() {
        // oracle: enumerate the 2-dimensional subspaces of F_2^4 directly
        let subs = all_subspaces(&f(2, 1), 4, 2, 1 << 20).unwrap();
        assert_eq!(gaussian_binomial(4, 2, 2), BigUint::from(subs.len()));
        assert_eq!(subs.len(), 35);
    }

    #[test]
    fn gaussian_binomial_pascal_recurrences() {
        // [n k]_q = [n-1 k-1]_q + q^k [n-1 k]_q and its mirror
        for q in [2u64, 3, 4, 5] {
            for n in 1..=8usize {
                for k in 1..=n {
                    let lhs = gaussian_binomial(n, k, q);
                    let rhs = gaussian_binomial(n - 1, k - 1, q)
                        + BigUint::from(q).pow(k as u32) * gaussian_binomial(n - 1, k, q);
                    assert_eq!(lhs, rhs, "q={q} n={n} k={k}");
                    let rhs2 = BigUint::from(q).pow((n - k) as u32)
                        * gaussian_binomial(n - 1, k - 1, q)
                        + gaussian_binomial(n - 1, k, q);
                    assert_eq!(lhs, rhs2, "mirror q={q} n={n} k={k}");
                }
            }
        }
        assert_eq!(gaussian_binomial(6, 3, 2), BigUint::from(1395u32));
    }

    #[test]
    fn mrd_sizes() {
        let s = MrdCodeSpec::new(2, 10, 4, 2).unwrap();
        assert_eq!(s.size(), BigUint::from(2u32).pow(30));
        let s = MrdCodeSpec::new(2, 8, 4, 2).unwrap();
        assert_eq!(s.size(), BigUint::from(2u32).pow(24));
        let s = MrdCodeSpec::new(2, 5, 4, 2).unwrap();
        assert_eq!(s.size(), BigUint::from(32768u32));
        // orientation does not matter
        let s = MrdCodeSpec::new(2, 4, 10, 2).unwrap();
        assert_eq!(s.size(), BigUint::from(2u32).pow(30));
    }

    #[test]
    fn invalid_specs_rejected() {
        assert!(MrdCodeSpec::new(2, 4, 4, 5).is_err());
        assert!(MrdCodeSpec::new(2, 4, 4, 0).is_err());
        assert!(MrdCodeSpec::new(12, 4, 4, 2).is_err());
        assert!(MrdCodeSpec::new(2, 0, 4, 1).is_err());
    }

    #[test]
    fn delsarte_q2_8_4_2() {
        let d = RankDistribution::delsarte(MrdCodeSpec::new(2, 8, 4, 2).unwrap());
        assert_eq!(d.count(2), BigUint::from(8925u32));
        assert_eq!(d.count(3), BigUint::from(956250u32));
        assert_eq!(d.count(4), BigUint::from(15812040u32));
        assert_eq!(d.count(0), BigUint::one());
        assert_eq!(d.count(1), BigUint::zero());
        assert_eq!(d.total(), BigUint::from(2u32).pow(24));
    }

    #[test]
    fn delsarte_q2_10_4_2_sum_forced_top_count() {
        let d = RankDistribution::delsarte(MrdCodeSpec::new(2, 10, 4, 2).unwrap());
        assert_eq!(d.count(2), BigUint::from(35805u32));
        assert_eq!(d.count(3), BigUint::from(15621210u32));
        // forced by 1 + A_2 + A_3 + A_4 = 2^30; some published tables list
        // 1058084809, which breaks the sum by exactly one
        assert_eq!(d.count(4), BigUint::from(1058084808u32));
        assert_eq!(d.total(), BigUint::from(2u32).pow(30));
    }

    #[test]
    fn delsarte_q2_13_6_3() {
        let d = RankDistribution::delsarte(MrdCodeSpec::new(2, 13, 6, 3).unwrap());
        assert_eq!(d.count(3), BigUint::from(1395u32 * 8191));
        assert_eq!(d.count(3), BigUint::from(11426445u32));
    }

    #[test]
    fn delsarte_transpose_invariant() {
        let a = RankDistribution::delsarte(MrdCodeSpec::new(3, 7, 4, 2).unwrap());
        let b = RankDistribution::delsarte(MrdCodeSpec::new(3, 4, 7, 2).unwrap());
        for r in 0..=4 {
            assert_eq!(a.count(r), b.count(r));
        }
    }

    #[test]
    fn delsarte_sum_invariant_grid() {
        for q in [2u64, 3, 4, 5] {
            for n in 1..=5usize {
                for m in n..=9usize {
                    for d in 1..=n {
                        let spec = MrdCodeSpec::new(q, m, n, d).unwrap();
                        let dist = RankDistribution::delsarte(spec);
                        assert_eq!(dist.total(), spec.size(), "q={q} m={m} n={n} d={d}");
                    }
                }
            }
        }
    }

    #[test]
    fn gabidulin_small_code_distance_and_histogram() {
        let code = GabidulinCode::new(&f(2, 1), MrdCodeSpec::new(2, 3, 3, 2).unwrap()).unwrap();
        let words: Vec<Matrix> = code.enumerate(DEFAULT_ENUM_CAP).unwrap().collect();
        assert_eq!(words.len(), 64);
        assert!(words[0].is_zero());
        // pairwise distinctness and exact minimum distance
        let mut seen = std::collections::HashSet::new();
        for w in &words {
            assert!(seen.insert(w.entries().to_vec()));
        }
        assert_eq!(min_pairwise_rank_distance(&words), Some(2));
        // histogram against the closed form
        let hist = rank_histogram(&words);
        let dist = RankDistribution::delsarte(*code.spec());
        for (r, c) in &hist {
            assert_eq!(BigUint::from(*c), dist.count(*r), "rank {r}");
        }
        assert_eq!(hist.values().sum::<u64>(), 64);
    }

    #[test]
    fn gabidulin_over_non_prime_base() {
        // F_4 base: the evaluation field is an extension of an extension
        let f4 = f(2, 2);
        let spec = MrdCodeSpec::new(4, 2, 2, 1).unwrap();
        let code = GabidulinCode::new(&f4, spec).unwrap();
        let words: Vec<Matrix> = code.enumerate(DEFAULT_ENUM_CAP).unwrap().collect();
        assert_eq!(words.len(), 256);
        let hist = rank_histogram(&words);
        let dist = RankDistribution::delsarte(spec);
        for (r, c) in &hist {
            assert_eq!(BigUint::from(*c), dist.count(*r), "rank {r}");
        }
        assert_eq!(min_pairwise_rank_distance(&words), Some(1));
    }

    #[test]
    fn gabidulin_orientation_matches_request() {
        let code = GabidulinCode::new(&f(2, 1), MrdCodeSpec::new(2, 4, 5, 2).unwrap()).unwrap();
        let w = code.codeword(17);
        assert_eq!((w.rows(), w.cols()), (4, 5));
    }

    #[test]
    fn gabidulin_cap_exceeded() {
        let code = GabidulinCode::new(&f(2, 1), MrdCodeSpec::new(2, 13, 6, 3).unwrap()).unwrap();
        match code.size_under_cap(DEFAULT_ENUM_CAP) {
            Err(Error::EnumerationCapExceeded { size, cap }) => {
                assert_eq!(size, BigUint::from(2u32).pow(52));
                assert_eq!(cap, DEFAULT_ENUM_CAP);
            }
            _ => panic!("expected cap error"),
        }
    }

    #[test]
    fn restricted_subcode_counts() {
        let code = GabidulinCode::new(&f(2, 1), MrdCodeSpec::new(2, 4, 4, 2).unwrap()).unwrap();
        let sub = code.restricted_subcode(2, DEFAULT_ENUM_CAP).unwrap();
        assert_eq!(sub.len(), 526); // 1 + A_2 = 1 + 525
        assert!(sub.iter().all(|w| w.rank() <= 2));
        assert!(sub[0].is_zero());
        let dist = RankDistribution::delsarte(*code.spec());
        assert_eq!(dist.restricted_total(2), BigUint::from(526u32));

        let only_zero = code.restricted_subcode(0, DEFAULT_ENUM_CAP).unwrap();
        assert_eq!(only_zero.len(), 1);
        assert!(only_zero[0].is_zero());
    }

    #[test]
    fn restricted_subcode_q2_8_4_2() {
        let dist = RankDistribution::delsarte(MrdCodeSpec::new(2, 8, 4, 2).unwrap());
        assert_eq!(dist.restricted_total(2), BigUint::from(8926u32));
    }

    #[test]
    fn pair_index_roundtrip() {
        for len in [2usize, 3, 5, 17, 100] {
            let mut expected = Vec::new();
            for i in 0..len {
                for j in i + 1..len {
                    expected.push((i, j));
                }
            }
            let got: Vec<(usize, usize)> = (0..pair_count(len))
                .map(|t| pair_from_index(t, len))
                .collect();
            assert_eq!(got, expected, "len={len}");
        }
    }
}
