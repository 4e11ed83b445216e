//! Constant dimension code constructions.
//!
//! All constructions concatenate full-rank k x n1 generators with rank-metric
//! codewords and take row spaces:
//!
//! - [`lifted_mrd`]: generators `(I_k | A)` over all MRD codewords `A`;
//! - [`linkage`]: generators `(U | Q)` over a base code's generators `U` and
//!   a rank-metric code `Q`;
//! - [`parallel_linkage`] and [`generalized_parallel_linkage`]: the union of
//!   two linkage halves `(U | Q1)` and `(Q2 | V)`, where every word of `Q2`
//!   has rank at most `k - d/2`. The rank bound is what keeps the two halves
//!   at subspace distance >= d from each other, so it is re-checked at build
//!   time rather than trusted from the generator.
//!
//! The shifted variant moves `t` columns from the second half's base code to
//! its rank code: `Q2` spans `n1 + t` columns and `V` lives in `n2 - t`, so
//! both halves still total `n1 + n2`. `t = 0` reproduces the unshifted
//! construction exactly.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::matrix::Matrix;
use crate::rankmetric::{GabidulinCode, MrdCodeSpec};
use crate::subspace::{ConstantDimensionCode, Subspace};

/// The lifted MRD code: row spaces of `(I_k | A)` for `A` in
/// `Q_q(k, n-k, d/2)`. Size q^(max(n-k,k) * (min(n-k,k) - d/2 + 1)),
/// minimum subspace distance >= d.
pub fn lifted_mrd(
    spec: &Arc<FieldSpec>,
    n: usize,
    k: usize,
    d: usize,
    cap: u64,
) -> Result<ConstantDimensionCode> {
    if d == 0 || !d.is_multiple_of(2) {
        return Err(Error::invalid("subspace distance must be a positive even integer"));
    }
    if k > n || k < d / 2 {
        return Err(Error::invalid(format!(
            "lifted MRD needs n >= k >= d/2, got n={n} k={k} d={d}"
        )));
    }
    if n == k {
        // the MRD block is empty; the code degenerates to the whole space
        let mut code = ConstantDimensionCode::full_space(spec, k);
        code = ConstantDimensionCode::new(
            Arc::clone(spec),
            k,
            k,
            code.words().to_vec(),
            Some(d),
        )?;
        return Ok(code);
    }
    let mrd = MrdCodeSpec::new(spec.q(), k, n - k, d / 2)?;
    let gabidulin = GabidulinCode::new(spec, mrd)?;
    let identity = Matrix::identity(Arc::clone(spec), k);
    let mut words = Vec::new();
    for a in gabidulin.enumerate(cap)? {
        let generator = identity.hconcat(&a)?;
        words.push(Subspace::from_matrix(&generator)?);
    }
    ConstantDimensionCode::new(Arc::clone(spec), n, k, words, Some(d))
}

/// The linkage construction: row spaces of `(U | Q)` for every generator `U`
/// of `base` and every word `Q` of a rank-metric code with minimum rank
/// distance `rank_distance`. Produces a code of size
/// `base.len() * rank_code.len()` with minimum distance
/// `min(d_base, 2 * rank_distance)`.
pub fn linkage(
    base: &ConstantDimensionCode,
    rank_code: &[Matrix],
    rank_distance: usize,
) -> Result<ConstantDimensionCode> {
    if base.is_empty() || rank_code.is_empty() {
        return Err(Error::invalid("linkage needs a nonempty base code and rank code"));
    }
    let d_base = base
        .claimed_min_distance()
        .ok_or_else(|| Error::invalid("base code has no claimed minimum distance"))?;
    let k = base.dim();
    let extra = check_rank_code(base.spec(), rank_code, k)?;
    let d = d_base.min(2 * rank_distance);
    let mut words = Vec::with_capacity(base.len() * rank_code.len());
    for u in base.words() {
        for q in rank_code {
            let generator = u.generator().hconcat(q)?;
            words.push(Subspace::from_matrix(&generator)?);
        }
    }
    ConstantDimensionCode::new(
        Arc::clone(base.spec()),
        base.ambient_dim() + extra,
        k,
        words,
        Some(d),
    )
}

/// Union of two linkage halves preserving minimum distance `d`:
/// `(U | Q1)` over `first` and `rank_code_1`, plus `(Q2 | V)` over
/// `rank_code_2` and `second`, where every word of `rank_code_2` has rank at
/// most `k - d/2` (checked). Requires `k >= d`.
pub fn parallel_linkage(
    first: &ConstantDimensionCode,
    second: &ConstantDimensionCode,
    rank_code_1: &[Matrix],
    rank_code_2: &[Matrix],
    d: usize,
) -> Result<ConstantDimensionCode> {
    generalized_parallel_linkage(first, second, rank_code_1, rank_code_2, d, 0)
}

/// The shifted union: `rank_code_2` spans `first.ambient_dim() + t` columns
/// while `second` lives in the remaining `n2 - t`. With `t = 0` this is
/// exactly [`parallel_linkage`].
pub fn generalized_parallel_linkage(
    first: &ConstantDimensionCode,
    second: &ConstantDimensionCode,
    rank_code_1: &[Matrix],
    rank_code_2: &[Matrix],
    d: usize,
    t: usize,
) -> Result<ConstantDimensionCode> {
    if d == 0 || !d.is_multiple_of(2) {
        return Err(Error::invalid("subspace distance must be a positive even integer"));
    }
    let k = first.dim();
    if second.dim() != k {
        return Err(Error::invalid(format!(
            "base codes have different codeword dimensions {k} and {}",
            second.dim()
        )));
    }
    if k < d {
        return Err(Error::invalid(format!(
            "the parallel construction needs k >= d, got k={k} d={d}"
        )));
    }
    if first.spec() != second.spec() {
        return Err(Error::FieldMismatch);
    }
    if first.is_empty() || second.is_empty() || rank_code_1.is_empty() || rank_code_2.is_empty() {
        return Err(Error::invalid("all four input codes must be nonempty"));
    }
    for (label, code) in [("first", first), ("second", second)] {
        match code.claimed_min_distance() {
            Some(dc) if dc >= d => {}
            _ => {
                return Err(Error::invalid(format!(
                    "{label} base code does not claim minimum distance {d}"
                )))
            }
        }
    }
    let n1 = first.ambient_dim();
    let n2 = second.ambient_dim() + t; // second half splits as (n1 + t) + (n2 - t)
    if second.ambient_dim() < k {
        return Err(Error::invalid(format!(
            "shift t={t} leaves the second base code only {} columns, fewer than k={k}",
            second.ambient_dim()
        )));
    }
    let w1_cols = check_rank_code(first.spec(), rank_code_1, k)?;
    if w1_cols != n2 {
        return Err(Error::invalid(format!(
            "first rank code spans {w1_cols} columns, expected n2={n2}"
        )));
    }
    let w2_cols = check_rank_code(first.spec(), rank_code_2, k)?;
    if w2_cols != n1 + t {
        return Err(Error::invalid(format!(
            "second rank code spans {w2_cols} columns, expected n1+t={}",
            n1 + t
        )));
    }
    let max_rank = k - d / 2;
    for q in rank_code_2 {
        let rank = q.rank();
        if rank > max_rank {
            return Err(Error::RankBoundViolated { rank, max_rank });
        }
    }

    let total = first.len() * rank_code_1.len() + second.len() * rank_code_2.len();
    let mut words = Vec::with_capacity(total);
    for u in first.words() {
        for q in rank_code_1 {
            words.push(Subspace::from_matrix(&u.generator().hconcat(q)?)?);
        }
    }
    for q in rank_code_2 {
        for v in second.words() {
            words.push(Subspace::from_matrix(&q.hconcat(v.generator())?)?);
        }
    }
    ConstantDimensionCode::new(Arc::clone(first.spec()), n1 + n2, k, words, Some(d))
}

/// Validate a rank code: nonempty, uniform shape `k x cols`, shared field.
/// Returns the column count.
fn check_rank_code(spec: &Arc<FieldSpec>, rank_code: &[Matrix], k: usize) -> Result<usize> {
    let first = &rank_code[0];
    if first.spec() != spec {
        return Err(Error::FieldMismatch);
    }
    if first.rows() != k {
        return Err(Error::invalid(format!(
            "rank code words have {} rows, expected k={k}",
            first.rows()
        )));
    }
    let cols = first.cols();
    for m in rank_code {
        if m.spec() != spec {
            return Err(Error::FieldMismatch);
        }
        if m.rows() != k || m.cols() != cols {
            return Err(Error::ShapeMismatch {
                left_rows: k,
                left_cols: cols,
                right_rows: m.rows(),
                right_cols: m.cols(),
            });
        }
    }
    Ok(cols)
}
