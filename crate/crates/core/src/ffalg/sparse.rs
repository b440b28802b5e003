use serde::{Deserialize, Serialize};

use super::field::{Fe, FieldCtx};
use super::matrix::MatrixFF;
use crate::error::{Error, Result};

/// Row-compressed sparse matrix. Column indices are strictly increasing within
/// a row and no stored entry is zero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SparseMatFF {
    rows: usize,
    cols: usize,
    entries: Vec<Vec<(u32, Fe)>>,
}

impl SparseMatFF {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatFF { rows, cols, entries: vec![Vec::new(); rows] }
    }

    pub fn identity(n: usize) -> Self {
        SparseMatFF { rows: n, cols: n, entries: (0..n).map(|i| vec![(i as u32, Fe::ONE)]).collect() }
    }

    /// Builds a matrix from unsorted triplets, summing duplicates.
    pub fn from_triplets(
        ctx: &FieldCtx,
        rows: usize,
        cols: usize,
        triplets: impl IntoIterator<Item = (usize, usize, Fe)>,
    ) -> Result<Self> {
        let mut entries: Vec<Vec<(u32, Fe)>> = vec![Vec::new(); rows];
        for (i, j, v) in triplets {
            if i >= rows || j >= cols {
                return Err(Error::DimensionMismatch(format!("entry ({i},{j}) outside {rows}x{cols}")));
            }
            entries[i].push((j as u32, v));
        }
        for row in &mut entries {
            row.sort_by_key(|e| e.0);
            let mut merged: Vec<(u32, Fe)> = Vec::with_capacity(row.len());
            for &(j, v) in row.iter() {
                match merged.last_mut() {
                    Some(last) if last.0 == j => last.1 = ctx.add(last.1, v),
                    _ => merged.push((j, v)),
                }
            }
            merged.retain(|e| !e.1.is_zero());
            *row = merged;
        }
        Ok(SparseMatFF { rows, cols, entries })
    }

    /// Permutation matrix with a 1 at `(image[j], j)`: column `j` is sent to
    /// basis vector `image[j]`.
    pub fn permutation(image: &[usize]) -> Self {
        let n = image.len();
        let mut entries = vec![Vec::new(); n];
        for (j, &i) in image.iter().enumerate() {
            entries[i].push((j as u32, Fe::ONE));
        }
        SparseMatFF { rows: n, cols: n, entries }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[(u32, Fe)] {
        &self.entries[i]
    }

    pub fn nnz(&self) -> usize {
        self.entries.iter().map(Vec::len).sum()
    }

    pub fn get(&self, i: usize, j: usize) -> Fe {
        self.entries[i]
            .binary_search_by_key(&(j as u32), |e| e.0)
            .map(|k| self.entries[i][k].1)
            .unwrap_or(Fe::ZERO)
    }

    pub fn to_dense(&self) -> MatrixFF {
        let mut m = MatrixFF::zeros(self.rows, self.cols);
        for (i, row) in self.entries.iter().enumerate() {
            for &(j, v) in row {
                m.set(i, j as usize, v);
            }
        }
        m
    }

    pub fn from_dense(m: &MatrixFF) -> Self {
        let entries = (0..m.rows())
            .map(|i| {
                m.row(i)
                    .iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .map(|(j, &v)| (j as u32, v))
                    .collect()
            })
            .collect();
        SparseMatFF { rows: m.rows(), cols: m.cols(), entries }
    }

    pub fn mul(&self, ctx: &FieldCtx, rhs: &SparseMatFF) -> Result<SparseMatFF> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut acc = vec![Fe::ZERO; rhs.cols];
        let mut touched: Vec<u32> = Vec::new();
        let mut entries = Vec::with_capacity(self.rows);
        for row in &self.entries {
            for &(k, a) in row {
                for &(j, b) in &rhs.entries[k as usize] {
                    let slot = &mut acc[j as usize];
                    if slot.is_zero() {
                        touched.push(j);
                    }
                    *slot = ctx.add(*slot, ctx.mul(a, b));
                }
            }
            touched.sort_unstable();
            touched.dedup();
            let mut out = Vec::with_capacity(touched.len());
            for &j in &touched {
                let v = std::mem::take(&mut acc[j as usize]);
                if !v.is_zero() {
                    out.push((j, v));
                }
            }
            touched.clear();
            entries.push(out);
        }
        Ok(SparseMatFF { rows: self.rows, cols: rhs.cols, entries })
    }

    /// `self - I` for square matrices.
    pub fn minus_identity(&self, ctx: &FieldCtx) -> Result<SparseMatFF> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch("minus_identity needs a square matrix".into()));
        }
        let trip = self.entries.iter().enumerate().flat_map(|(i, row)| {
            row.iter().map(move |&(j, v)| (i, j as usize, v)).chain(std::iter::once((i, i, ctx.neg(Fe::ONE))))
        });
        SparseMatFF::from_triplets(ctx, self.rows, self.cols, trip)
    }

    pub fn transpose(&self) -> SparseMatFF {
        let mut entries = vec![Vec::new(); self.cols];
        for (i, row) in self.entries.iter().enumerate() {
            for &(j, v) in row {
                entries[j as usize].push((i as u32, v));
            }
        }
        SparseMatFF { rows: self.cols, cols: self.rows, entries }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffalg::field;

    #[test]
    fn triplets_merge_and_drop_zeros() {
        let f = field(3, 1).unwrap();
        let m = SparseMatFF::from_triplets(&f, 2, 3, [(0, 2, Fe(1)), (0, 0, Fe(1)), (0, 2, Fe(2)), (1, 1, Fe(2))])
            .unwrap();
        assert_eq!(m.row(0), &[(0, Fe(1))]);
        assert_eq!(m.row(1), &[(1, Fe(2))]);
        assert_eq!(m.nnz(), 2);
    }

    #[test]
    fn sparse_product_matches_dense() {
        let f = field(5, 1).unwrap();
        let a = MatrixFF::from_ints(&f, &[&[1, 0, 2], &[0, 0, 3], &[4, 1, 0]]);
        let b = MatrixFF::from_ints(&f, &[&[0, 1, 1], &[2, 0, 0], &[1, 1, 4]]);
        let sp = SparseMatFF::from_dense(&a).mul(&f, &SparseMatFF::from_dense(&b)).unwrap();
        assert_eq!(sp.to_dense(), a.mul(&f, &b).unwrap());
    }

    #[test]
    fn permutation_round_trip() {
        let f = field(2, 1).unwrap();
        let p = SparseMatFF::permutation(&[2, 0, 1]);
        let q = SparseMatFF::permutation(&[1, 2, 0]);
        assert_eq!(p.mul(&f, &q).unwrap(), SparseMatFF::identity(3));
    }
}
