//! Dense matrices over a finite field: reduced row echelon form, rank,
//! block concatenation, and the plain-text row serialization used by the
//! code file format.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::FieldSpec;

/// A rows x cols matrix over a fixed field, entries stored row-major.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Matrix {
    spec: Arc<FieldSpec>,
    rows: usize,
    cols: usize,
    entries: Vec<u64>,
}

/// Result of a reduced-row-echelon computation.
pub struct Rref {
    pub matrix: Matrix,
    pub rank: usize,
    /// Pivot columns, strictly increasing.
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn new(spec: Arc<FieldSpec>, rows: usize, cols: usize, entries: Vec<u64>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::invalid(format!(
                "expected {} entries for a {rows}x{cols} matrix, got {}",
                rows * cols,
                entries.len()
            )));
        }
        if let Some(&bad) = entries.iter().find(|&&x| x >= spec.q()) {
            return Err(Error::invalid(format!(
                "entry {bad} out of range for {spec}"
            )));
        }
        Ok(Matrix {
            spec,
            rows,
            cols,
            entries,
        })
    }

    pub fn zero(spec: Arc<FieldSpec>, rows: usize, cols: usize) -> Self {
        Matrix {
            spec,
            rows,
            cols,
            entries: vec![0; rows * cols],
        }
    }

    pub fn identity(spec: Arc<FieldSpec>, n: usize) -> Self {
        let mut m = Self::zero(spec, n, n);
        for i in 0..n {
            m.entries[i * n + i] = 1;
        }
        m
    }

    pub fn from_rows(spec: Arc<FieldSpec>, rows: &[Vec<u64>]) -> Result<Self> {
        let height = rows.len();
        let width = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != width) {
            return Err(Error::invalid("rows have unequal lengths"));
        }
        Self::new(spec, height, width, rows.concat())
    }

    pub fn spec(&self) -> &Arc<FieldSpec> {
        &self.spec
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[u64] {
        &self.entries
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.entries[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u64) {
        debug_assert!(v < self.spec.q());
        self.entries[r * self.cols + c] = v;
    }

    #[inline]
    pub fn row(&self, r: usize) -> &[u64] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zero(Arc::clone(&self.spec), self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.entries[c * self.rows + r] = self.get(r, c);
            }
        }
        out
    }

    fn same_spec(&self, other: &Self) -> Result<()> {
        if self.spec != other.spec {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    fn shape_err(&self, other: &Self) -> Error {
        Error::ShapeMismatch {
            left_rows: self.rows,
            left_cols: self.cols,
            right_rows: other.rows,
            right_cols: other.cols,
        }
    }

    /// `[self | other]`, same row count.
    pub fn hconcat(&self, other: &Self) -> Result<Self> {
        self.same_spec(other)?;
        if self.rows != other.rows {
            return Err(self.shape_err(other));
        }
        let cols = self.cols + other.cols;
        let mut entries = Vec::with_capacity(self.rows * cols);
        for r in 0..self.rows {
            entries.extend_from_slice(self.row(r));
            entries.extend_from_slice(other.row(r));
        }
        Ok(Matrix {
            spec: Arc::clone(&self.spec),
            rows: self.rows,
            cols,
            entries,
        })
    }

    /// `self` stacked on top of `other`, same column count.
    pub fn vstack(&self, other: &Self) -> Result<Self> {
        self.same_spec(other)?;
        if self.cols != other.cols {
            return Err(self.shape_err(other));
        }
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        Ok(Matrix {
            spec: Arc::clone(&self.spec),
            rows: self.rows + other.rows,
            cols: self.cols,
            entries,
        })
    }

    /// Entrywise difference.
    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_spec(other)?;
        if self.rows != other.rows || self.cols != other.cols {
            return Err(self.shape_err(other));
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(&a, &b)| self.spec.sub(a, b))
            .collect();
        Ok(Matrix {
            spec: Arc::clone(&self.spec),
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        self.same_spec(other)?;
        if self.cols != other.rows {
            return Err(self.shape_err(other));
        }
        let mut out = Self::zero(Arc::clone(&self.spec), self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let t = self.spec.mul(a, other.get(k, j));
                    let cur = out.entries[i * other.cols + j];
                    out.entries[i * other.cols + j] = self.spec.add(cur, t);
                }
            }
        }
        Ok(out)
    }

    /// The unique reduced row echelon form, with rank and pivot columns.
    pub fn rref(&self) -> Rref {
        let spec = &self.spec;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| m.get(i, c) != 0) else {
                continue;
            };
            if pr != r {
                for j in 0..m.cols {
                    m.entries.swap(pr * m.cols + j, r * m.cols + j);
                }
            }
            let scale = spec.inv(m.get(r, c)).expect("pivot is nonzero");
            if scale != 1 {
                for j in c..m.cols {
                    let v = spec.mul(m.get(r, j), scale);
                    m.set(r, j, v);
                }
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c);
                if f == 0 {
                    continue;
                }
                for j in c..m.cols {
                    let t = spec.mul(f, m.get(r, j));
                    let v = spec.sub(m.get(i, j), t);
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref {
            matrix: m,
            rank: r,
            pivots,
        }
    }

    /// Rank by forward elimination (cheaper than full rref).
    pub fn rank(&self) -> usize {
        let mut buf = self.entries.clone();
        rank_in_place(&self.spec, &mut buf, self.rows, self.cols)
    }

    /// Text form: one line per row, decimal entries separated by single spaces.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for r in 0..self.rows {
            let line: Vec<String> = self.row(r).iter().map(u64::to_string).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }
}

/// Rank of the matrix held row-major in `data`, by factor-free forward
/// elimination. Destroys `data`.
pub(crate) fn rank_in_place(spec: &FieldSpec, data: &mut [u64], rows: usize, cols: usize) -> usize {
    debug_assert_eq!(data.len(), rows * cols);
    let binary = spec.p() == 2 && spec.e() == 1;
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| data[i * cols + c] != 0) else {
            continue;
        };
        if pr != r {
            for j in c..cols {
                data.swap(pr * cols + j, r * cols + j);
            }
        }
        let (head, tail) = data.split_at_mut((r + 1) * cols);
        let prow = &head[r * cols..];
        let pivot = prow[c];
        for i in 0..rows - r - 1 {
            let row = &mut tail[i * cols..(i + 1) * cols];
            let f = row[c];
            if f == 0 {
                continue;
            }
            if binary {
                for j in c..cols {
                    row[j] ^= prow[j];
                }
            } else {
                // row <- pivot*row - f*prow zeroes column c without inversion
                for j in c..cols {
                    row[j] = spec.sub(spec.mul(pivot, row[j]), spec.mul(f, prow[j]));
                }
            }
        }
        r += 1;
    }
    r
}
