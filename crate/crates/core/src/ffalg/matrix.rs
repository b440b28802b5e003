use serde::{Deserialize, Serialize};

use super::field::{Fe, FieldCtx};
use crate::error::{Error, Result};

/// Dense row-major matrix over a finite field.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MatrixFF {
    rows: usize,
    cols: usize,
    data: Vec<Fe>,
}

impl MatrixFF {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        MatrixFF { rows, cols, data: vec![Fe::ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Fe::ONE);
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<Fe>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(MatrixFF { rows, cols, data })
    }

    /// Builds a matrix from integer rows, reducing into the prime subfield.
    pub fn from_ints(ctx: &FieldCtx, rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let data = rows.iter().flat_map(|row| row.iter().map(|&v| ctx.from_int(v))).collect();
        MatrixFF { rows: r, cols: c, data }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Fe) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        MatrixFF { rows, cols, data }
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Fe {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Fe) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Fe] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [Fe] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn data(&self) -> &[Fe] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> Self {
        MatrixFF::from_fn(self.cols, self.rows, |i, j| self.get(j, i))
    }

    pub fn mul(&self, ctx: &FieldCtx, rhs: &MatrixFF) -> Result<MatrixFF> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = MatrixFF::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            let dst = &mut out.data[i * rhs.cols..(i + 1) * rhs.cols];
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if !a.is_zero() {
                    ctx.axpy(dst, a, rhs.row(k));
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, ctx: &FieldCtx, rhs: &MatrixFF) -> Result<MatrixFF> {
        self.check_same_shape(rhs)?;
        let data = self.data.iter().zip(&rhs.data).map(|(&a, &b)| ctx.add(a, b)).collect();
        Ok(MatrixFF { rows: self.rows, cols: self.cols, data })
    }

    pub fn sub(&self, ctx: &FieldCtx, rhs: &MatrixFF) -> Result<MatrixFF> {
        self.check_same_shape(rhs)?;
        let data = self.data.iter().zip(&rhs.data).map(|(&a, &b)| ctx.sub(a, b)).collect();
        Ok(MatrixFF { rows: self.rows, cols: self.cols, data })
    }

    pub fn scale(&self, ctx: &FieldCtx, c: Fe) -> MatrixFF {
        let data = self.data.iter().map(|&a| ctx.mul(c, a)).collect();
        MatrixFF { rows: self.rows, cols: self.cols, data }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, ctx: &FieldCtx, c: Fe, other: &MatrixFF) -> Result<()> {
        self.check_same_shape(other)?;
        ctx.axpy(&mut self.data, c, &other.data);
        Ok(())
    }

    fn check_same_shape(&self, rhs: &MatrixFF) -> Result<()> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(())
    }

    /// Dimension of the column space, by Gaussian elimination on a copy.
    pub fn rank(&self, ctx: &FieldCtx) -> usize {
        let mut work = self.clone();
        work.row_echelon(ctx, self.cols).len()
    }

    /// Forward elimination restricted to the first `pivot_cols` columns;
    /// returns the pivot columns in order. Row `i` of the result holds pivot
    /// `i`, scaled to 1.
    fn row_echelon(&mut self, ctx: &FieldCtx, pivot_cols: usize) -> Vec<usize> {
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..pivot_cols {
            if r == rows {
                break;
            }
            let Some(piv) = (r..rows).find(|&i| !self.data[i * cols + c].is_zero()) else {
                continue;
            };
            if piv != r {
                for j in c..cols {
                    self.data.swap(piv * cols + j, r * cols + j);
                }
            }
            let inv = ctx.inv(self.data[r * cols + c]).expect("pivot is nonzero");
            for j in c..cols {
                self.data[r * cols + j] = ctx.mul(inv, self.data[r * cols + j]);
            }
            let (head, tail) = self.data.split_at_mut((r + 1) * cols);
            let prow = &head[r * cols + c..];
            for i in 0..rows - r - 1 {
                let row = &mut tail[i * cols + c..(i + 1) * cols];
                let f = row[0];
                if !f.is_zero() {
                    ctx.axpy(row, ctx.neg(f), prow);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    pub fn rref(&mut self, ctx: &FieldCtx) -> Vec<usize> {
        let pivots = self.row_echelon(ctx, self.cols);
        let cols = self.cols;
        for (r, &c) in pivots.iter().enumerate().rev() {
            let (head, tail) = self.data.split_at_mut(r * cols);
            let prow = &tail[c..cols];
            for i in 0..r {
                let row = &mut head[i * cols + c..(i + 1) * cols];
                let f = row[0];
                if !f.is_zero() {
                    ctx.axpy(row, ctx.neg(f), prow);
                }
            }
        }
        pivots
    }

    /// Basis of the right kernel `{x : self * x = 0}`, one vector per free
    /// column of the reduced row echelon form.
    pub fn nullspace(&self, ctx: &FieldCtx) -> Vec<Vec<Fe>> {
        let mut work = self.clone();
        let pivots = work.rref(ctx);
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![Fe::ZERO; self.cols];
                v[free] = Fe::ONE;
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = ctx.neg(work.get(r, free));
                }
                v
            })
            .collect()
    }

    /// The unique `X` with `self * X = rhs`, where `self` has full column rank.
    pub fn solve_columns(&self, ctx: &FieldCtx, rhs: &MatrixFF) -> Result<MatrixFF> {
        if self.rows != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "basis has {} rows, right-hand side {}",
                self.rows, rhs.rows
            )));
        }
        let (d, c) = (self.cols, rhs.cols);
        let mut aug = MatrixFF::from_fn(self.rows, d + c, |i, j| {
            if j < d {
                self.get(i, j)
            } else {
                rhs.get(i, j - d)
            }
        });
        let pivots = aug.row_echelon(ctx, d);
        if pivots.len() < d {
            return Err(Error::RankDeficient { rank: pivots.len(), cols: d });
        }
        // rows below the pivots must be zero on the right-hand side
        if (d..aug.rows).any(|i| aug.row(i)[d..].iter().any(|x| !x.is_zero())) {
            return Err(Error::NoSolution);
        }
        // back substitution; pivot i sits in column i
        for r in (0..d).rev() {
            let (head, tail) = aug.data.split_at_mut(r * (d + c));
            let prow = &tail[r..d + c];
            for i in 0..r {
                let row = &mut head[i * (d + c) + r..(i + 1) * (d + c)];
                let f = row[0];
                if !f.is_zero() {
                    ctx.axpy(row, ctx.neg(f), prow);
                }
            }
        }
        Ok(MatrixFF::from_fn(d, c, |i, j| aug.get(i, d + j)))
    }

    /// `self^e` for square matrices.
    pub fn pow(&self, ctx: &FieldCtx, e: u32) -> Result<MatrixFF> {
        let mut out = MatrixFF::identity(self.rows);
        for _ in 0..e {
            out = out.mul(ctx, self)?;
        }
        Ok(out)
    }

    /// Extracts the principal submatrix on `idx`.
    pub fn submatrix(&self, idx: &[usize]) -> MatrixFF {
        MatrixFF::from_fn(idx.len(), idx.len(), |i, j| self.get(idx[i], idx[j]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffalg::field;

    #[test]
    fn rank_examples() {
        let f3 = field(3, 1).unwrap();
        assert_eq!(MatrixFF::zeros(5, 5).rank(&f3), 0);
        let f27 = field(3, 3).unwrap();
        assert_eq!(MatrixFF::identity(4).rank(&f27), 4);
        let m = MatrixFF::from_ints(&f3, &[&[1, 2], &[2, 4]]);
        assert_eq!(m.rank(&f3), 1);
    }

    #[test]
    fn solve_identity_and_scaling() {
        let f = field(3, 1).unwrap();
        let c = MatrixFF::from_ints(&f, &[&[1, 2], &[0, 1], &[2, 2]]);
        assert_eq!(MatrixFF::identity(3).solve_columns(&f, &c).unwrap(), c);

        let b = MatrixFF::from_ints(&f, &[&[1, 1], &[0, 1], &[0, 0]]);
        let x = b.solve_columns(&f, &b.scale(&f, Fe(2))).unwrap();
        assert_eq!(x, MatrixFF::identity(2).scale(&f, Fe(2)));
    }

    #[test]
    fn solve_errors() {
        let f = field(3, 1).unwrap();
        let b = MatrixFF::from_ints(&f, &[&[1, 0], &[0, 1], &[0, 0]]);
        let c = MatrixFF::from_ints(&f, &[&[0], &[0], &[1]]);
        assert!(matches!(b.solve_columns(&f, &c), Err(Error::NoSolution)));
        let dep = MatrixFF::from_ints(&f, &[&[1, 2], &[1, 2], &[0, 0]]);
        assert!(matches!(dep.solve_columns(&f, &c), Err(Error::RankDeficient { rank: 1, cols: 2 })));
    }

    #[test]
    fn nullspace_is_annihilated() {
        let f = field(5, 1).unwrap();
        let m = MatrixFF::from_ints(&f, &[&[1, 2, 3, 4], &[2, 4, 1, 0], &[3, 1, 4, 4]]);
        let ns = m.nullspace(&f);
        assert_eq!(ns.len(), 4 - m.rank(&f));
        for v in ns {
            let col = MatrixFF::from_vec(4, 1, v).unwrap();
            assert!(m.mul(&f, &col).unwrap().is_zero());
        }
    }
}
