//! Canonical subspaces of F_q^n, the subspace metric, and constant
//! dimension code containers.
//!
//! A subspace is identified with the unique reduced-row-echelon generator
//! matrix of its row space, so equality, hashing and file output never
//! depend on which basis produced it.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::matrix::{rank_in_place, Matrix};

/// A k-dimensional subspace of F_q^n, stored as its rref generator.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Subspace {
    generator: Matrix,
}

impl Subspace {
    /// Canonicalize the row space of a full-row-rank matrix.
    pub fn from_matrix(m: &Matrix) -> Result<Self> {
        let r = m.rref();
        if r.rank != m.rows() {
            return Err(Error::RankDeficient {
                rank: r.rank,
                expected: m.rows(),
            });
        }
        Ok(Subspace { generator: r.matrix })
    }

    /// The rref generator matrix, `dim x ambient_dim`, full row rank.
    pub fn generator(&self) -> &Matrix {
        &self.generator
    }

    pub fn dim(&self) -> usize {
        self.generator.rows()
    }

    pub fn ambient_dim(&self) -> usize {
        self.generator.cols()
    }

    pub fn spec(&self) -> &Arc<FieldSpec> {
        self.generator.spec()
    }

    /// Subspace distance dim(U+W) - dim(U∩W) = 2 rank([U; W]) - dim U - dim W.
    pub fn distance(&self, other: &Subspace) -> Result<usize> {
        if self.spec() != other.spec() {
            return Err(Error::FieldMismatch);
        }
        if self.ambient_dim() != other.ambient_dim() {
            return Err(Error::AmbientMismatch(
                self.ambient_dim(),
                other.ambient_dim(),
            ));
        }
        let mut scratch = DistanceScratch::new();
        Ok(distance_with_scratch(self, other, &mut scratch))
    }
}

/// Reusable elimination buffer for tight distance loops.
#[derive(Default)]
pub struct DistanceScratch {
    buf: Vec<u64>,
}

impl DistanceScratch {
    pub fn new() -> Self {
        Self::default()
    }
}

/// Distance of two subspaces known to share spec and ambient dimension.
pub fn distance_with_scratch(u: &Subspace, w: &Subspace, scratch: &mut DistanceScratch) -> usize {
    let cols = u.ambient_dim();
    let rows = u.dim() + w.dim();
    scratch.buf.clear();
    scratch.buf.extend_from_slice(u.generator.entries());
    scratch.buf.extend_from_slice(w.generator.entries());
    let rank = rank_in_place(u.spec(), &mut scratch.buf, rows, cols);
    2 * rank - u.dim() - w.dim()
}

/// A set of distinct k-dimensional subspaces of F_q^n with (optionally) a
/// claimed minimum pairwise distance.
#[derive(Clone, Debug)]
pub struct ConstantDimensionCode {
    spec: Arc<FieldSpec>,
    ambient_dim: usize,
    dim: usize,
    words: Vec<Subspace>,
    claimed_min_distance: Option<usize>,
}

impl ConstantDimensionCode {
    pub fn new(
        spec: Arc<FieldSpec>,
        ambient_dim: usize,
        dim: usize,
        words: Vec<Subspace>,
        claimed_min_distance: Option<usize>,
    ) -> Result<Self> {
        if dim > ambient_dim {
            return Err(Error::invalid(format!(
                "codeword dimension {dim} exceeds ambient dimension {ambient_dim}"
            )));
        }
        let mut seen = std::collections::HashSet::with_capacity(words.len());
        for (i, w) in words.iter().enumerate() {
            if w.spec() != &spec {
                return Err(Error::FieldMismatch);
            }
            if w.ambient_dim() != ambient_dim {
                return Err(Error::AmbientMismatch(w.ambient_dim(), ambient_dim));
            }
            if w.dim() != dim {
                return Err(Error::invalid(format!(
                    "codeword {i} has dimension {}, expected {dim}",
                    w.dim()
                )));
            }
            if !seen.insert(w.generator().entries()) {
                return Err(Error::DuplicateCodeword { index: i });
            }
        }
        Ok(ConstantDimensionCode {
            spec,
            ambient_dim,
            dim,
            words,
            claimed_min_distance,
        })
    }

    /// The one-codeword code consisting of the whole space F_q^k.
    pub fn full_space(spec: &Arc<FieldSpec>, k: usize) -> Self {
        let word = Subspace::from_matrix(&Matrix::identity(Arc::clone(spec), k))
            .expect("identity has full rank");
        ConstantDimensionCode {
            spec: Arc::clone(spec),
            ambient_dim: k,
            dim: k,
            words: vec![word],
            claimed_min_distance: Some(2 * k),
        }
    }

    pub fn spec(&self) -> &Arc<FieldSpec> {
        &self.spec
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn words(&self) -> &[Subspace] {
        &self.words
    }

    pub fn claimed_min_distance(&self) -> Option<usize> {
        self.claimed_min_distance
    }

    /// Generators as a sorted set of entry vectors, for order-insensitive
    /// comparison of codes.
    pub fn word_set(&self) -> std::collections::BTreeSet<Vec<u64>> {
        self.words
            .iter()
            .map(|w| w.generator().entries().to_vec())
            .collect()
    }
}

/// Every k-dimensional subspace of F_q^n, enumerated as rref generators in
/// deterministic order (pivot sets ascending, then free entries counting up).
/// Errors when the subspace count exceeds `cap`.
pub fn all_subspaces(
    spec: &Arc<FieldSpec>,
    n: usize,
    k: usize,
    cap: u64,
) -> Result<Vec<Subspace>> {
    if k > n {
        return Err(Error::invalid(format!(
            "subspace dimension {k} exceeds ambient dimension {n}"
        )));
    }
    let count = crate::rankmetric::gaussian_binomial(n, k, spec.q());
    if count > num_bigint::BigUint::from(cap) {
        return Err(Error::EnumerationCapExceeded { size: count, cap });
    }
    let mut out = Vec::new();
    if k == 0 {
        out.push(Subspace {
            generator: Matrix::zero(Arc::clone(spec), 0, n),
        });
        return Ok(out);
    }
    let q = spec.q();
    let mut pivots: Vec<usize> = (0..k).collect();
    loop {
        // free cells: to the right of each pivot, excluding later pivot columns
        let mut free = Vec::new();
        for (i, &p) in pivots.iter().enumerate() {
            for c in p + 1..n {
                if !pivots[i + 1..].contains(&c) {
                    free.push((i, c));
                }
            }
        }
        let mut assignment = vec![0u64; free.len()];
        loop {
            let mut m = Matrix::zero(Arc::clone(spec), k, n);
            for (i, &p) in pivots.iter().enumerate() {
                m.set(i, p, 1);
            }
            for (&(r, c), &v) in free.iter().zip(&assignment) {
                m.set(r, c, v);
            }
            out.push(Subspace { generator: m });
            // next mixed-radix assignment
            let mut carry = true;
            for slot in assignment.iter_mut() {
                *slot += 1;
                if *slot < q {
                    carry = false;
                    break;
                }
                *slot = 0;
            }
            if carry {
                break;
            }
        }
        // next pivot combination in lexicographic order
        let mut i = k;
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            if pivots[i] < n - (k - i) {
                pivots[i] += 1;
                for j in i + 1..k {
                    pivots[j] = pivots[j - 1] + 1;
                }
                break;
            }
        }
    }
}
