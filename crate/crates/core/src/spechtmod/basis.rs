use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::ffalg::{field, Fe, FieldCtx, MatrixFF};
use crate::partitions::{dim_specht, Partition};

use super::tabloid::TabloidSpace;

/// Largest Specht dimension handled.
pub const MAX_DIM: u128 = 2000;
/// Largest column stabilizer expanded per polytabloid.
pub const MAX_COLUMN_GROUP: u128 = 10_000_000;

/// Standard polytabloid basis of S^μ inside the tabloid basis of M^μ.
#[derive(Clone, Debug)]
pub struct SpechtBasis {
    pub mu: Partition,
    pub p: u32,
    pub space: TabloidSpace,
    /// Standard tableaux as rows of 1-based letters.
    pub tableaux: Vec<Vec<Vec<usize>>>,
    /// Column `j` of B: sorted `(tabloid index, coefficient)` pairs of e_{t_j}.
    pub columns: Vec<Vec<(u32, Fe)>>,
    /// Tabloid index of {t_j}; B restricted to these rows is unitriangular.
    pub pivot_rows: Vec<usize>,
}

impl SpechtBasis {
    pub fn tabloid_count(&self) -> usize {
        self.space.len()
    }

    pub fn dim(&self) -> usize {
        self.columns.len()
    }

    /// B as a dense T×d matrix.
    pub fn to_dense(&self) -> MatrixFF {
        let mut b = MatrixFF::zeros(self.tabloid_count(), self.dim());
        for (j, col) in self.columns.iter().enumerate() {
            for &(i, v) in col {
                b.set(i as usize, j, v);
            }
        }
        b
    }

    /// The d×d block of B on the pivot rows.
    pub fn pivot_block(&self) -> MatrixFF {
        let pos: HashMap<usize, usize> = self.pivot_rows.iter().enumerate().map(|(a, &r)| (r, a)).collect();
        let mut out = MatrixFF::zeros(self.dim(), self.dim());
        for (j, col) in self.columns.iter().enumerate() {
            for &(i, v) in col {
                if let Some(&a) = pos.get(&(i as usize)) {
                    out.set(a, j, v);
                }
            }
        }
        out
    }
}

/// Standard tableaux of shape μ, generated by placing 1, 2, ... in the
/// topmost admissible row first.
pub fn standard_tableaux(mu: &Partition) -> Vec<Vec<Vec<usize>>> {
    fn rec(parts: &[usize], next: usize, total: usize, rows: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
        if next > total {
            out.push(rows.clone());
            return;
        }
        for r in 0..parts.len() {
            let len = rows[r].len();
            if len < parts[r] && (r == 0 || rows[r - 1].len() > len) {
                rows[r].push(next);
                rec(parts, next + 1, total, rows, out);
                rows[r].pop();
            }
        }
    }
    let mut out = Vec::new();
    let mut rows = vec![Vec::new(); mu.len()];
    rec(mu.parts(), 1, mu.size(), &mut rows, &mut out);
    out
}

/// All permutations of `0..h` with their signs (+1 / -1).
fn signed_permutations(h: usize) -> Vec<(Vec<usize>, bool)> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..h).collect();
    fn heap(k: usize, cur: &mut Vec<usize>, even: bool, out: &mut Vec<(Vec<usize>, bool)>) -> bool {
        if k <= 1 {
            out.push((cur.clone(), even));
            return even;
        }
        let mut even = heap(k - 1, cur, even, out);
        for i in 0..k - 1 {
            if k.is_multiple_of(2) {
                cur.swap(i, k - 1);
            } else {
                cur.swap(0, k - 1);
            }
            even = heap(k - 1, cur, !even, out);
        }
        even
    }
    heap(h, &mut cur, true, &mut out);
    out
}

fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

/// Builds the standard polytabloid basis of S^μ over GF(p) and checks that
/// it has full column rank.
pub fn standard_basis(mu: &Partition, p: u32) -> Result<SpechtBasis> {
    let ctx = field(p, 1)?;
    let d = dim_specht(mu);
    if d > MAX_DIM {
        return Err(Error::TooLarge(format!("dim S^{mu} = {d}")));
    }
    let conj = mu.conjugate();
    let group: u128 = conj.parts().iter().map(|&h| factorial(h)).product();
    if group > MAX_COLUMN_GROUP {
        return Err(Error::TooLarge(format!("column stabilizer of {mu} has order {group}")));
    }
    let space = TabloidSpace::new(mu)?;
    let tableaux = standard_tableaux(mu);
    debug_assert_eq!(tableaux.len() as u128, d);
    let col_perms: Vec<Vec<(Vec<usize>, bool)>> = conj.parts().iter().map(|&h| signed_permutations(h)).collect();
    let minus_one = ctx.neg(Fe::ONE);
    let mut columns = Vec::with_capacity(tableaux.len());
    let mut pivot_rows = Vec::with_capacity(tableaux.len());
    let mut assign = vec![0u8; mu.size()];
    for t in &tableaux {
        for (r, row) in t.iter().enumerate() {
            for &x in row {
                assign[x - 1] = r as u8;
            }
        }
        pivot_rows.push(space.index_of(&assign).expect("tabloid of a tableau"));
        let mut col = Vec::with_capacity(group as usize);
        let mut choice = vec![0usize; conj.len()];
        loop {
            let mut even = true;
            for (c, &k) in choice.iter().enumerate() {
                let (perm, e) = &col_perms[c][k];
                even ^= !e;
                for (r, &src) in perm.iter().enumerate() {
                    assign[t[src][c] - 1] = r as u8;
                }
            }
            let idx = space.index_of(&assign).expect("column permutation keeps the shape");
            col.push((idx as u32, if even { Fe::ONE } else { minus_one }));
            // odometer over the column groups
            let mut c = 0;
            while c < choice.len() {
                choice[c] += 1;
                if choice[c] < col_perms[c].len() {
                    break;
                }
                choice[c] = 0;
                c += 1;
            }
            if c == choice.len() {
                break;
            }
        }
        col.sort_unstable_by_key(|e| e.0);
        columns.push(col);
    }
    let basis = SpechtBasis { mu: mu.clone(), p, space, tableaux, columns, pivot_rows };
    let rank = basis.pivot_block().rank(&ctx);
    if rank != basis.dim() {
        return Err(Error::RankCheckFailed(format!("{mu}: rank {rank} < {}", basis.dim())));
    }
    Ok(basis)
}

/// Coordinates of `(σ - 1)B` in the basis B, for each permutation σ given as
/// 0-based letter images. Every column of `(σ - 1)B` is checked to lie in the
/// span of B.
pub(crate) fn action_matrices(ctx: &FieldCtx, basis: &SpechtBasis, sigmas: &[Vec<usize>]) -> Result<Vec<MatrixFF>> {
    let d = basis.dim();
    let pos: HashMap<usize, usize> = basis.pivot_rows.iter().enumerate().map(|(a, &r)| (r, a)).collect();
    let pinv = basis.pivot_block().solve_columns(ctx, &MatrixFF::identity(d))?;
    let mut out = Vec::with_capacity(sigmas.len());
    let mut dense = vec![Fe::ZERO; basis.tabloid_count()];
    for sigma in sigmas {
        let image = basis.space.permute(sigma);
        let image_cols: Vec<Vec<(u32, Fe)>> = basis
            .columns
            .iter()
            .map(|col| {
                let mut c: Vec<(u32, Fe)> = col
                    .iter()
                    .map(|&(i, v)| (image[i as usize] as u32, v))
                    .chain(col.iter().map(|&(i, v)| (i, ctx.neg(v))))
                    .collect();
                c.sort_unstable_by_key(|e| e.0);
                c
            })
            .collect();
        let mut cp = MatrixFF::zeros(d, d);
        for (j, col) in image_cols.iter().enumerate() {
            for &(i, v) in col {
                if let Some(&a) = pos.get(&(i as usize)) {
                    cp.set(a, j, ctx.add(cp.get(a, j), v));
                }
            }
        }
        let x = pinv.mul(ctx, &cp)?;
        for (j, col) in image_cols.iter().enumerate() {
            for &(i, v) in col {
                dense[i as usize] = ctx.add(dense[i as usize], v);
            }
            for c in 0..d {
                let f = x.get(c, j);
                if !f.is_zero() {
                    for &(i, v) in &basis.columns[c] {
                        dense[i as usize] = ctx.sub(dense[i as usize], ctx.mul(f, v));
                    }
                }
            }
            let mut ok = true;
            for &(i, _) in col.iter().chain(basis.columns.iter().flatten()) {
                ok &= dense[i as usize].is_zero();
                dense[i as usize] = Fe::ZERO;
            }
            if !ok {
                return Err(Error::NoSolution);
            }
        }
        out.push(x);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn basis_sizes() {
        let b = standard_basis(&pt("(2,1)"), 3).unwrap();
        assert_eq!((b.dim(), b.tabloid_count()), (2, 3));
        let b = standard_basis(&pt("(3,3,3)"), 3).unwrap();
        assert_eq!((b.dim(), b.tabloid_count()), (42, 1680));
        let f = field(3, 1).unwrap();
        assert_eq!(b.to_dense().rank(&f), 42);
        let b = standard_basis(&pt("(5)"), 2).unwrap();
        assert_eq!(b.columns, vec![vec![(0, Fe::ONE)]]);
    }

    #[test]
    fn polytabloid_of_two_one() {
        // e_t for t = 1 2 / 3 is {12|3} - {23|1}
        let b = standard_basis(&pt("(2,1)"), 5).unwrap();
        assert_eq!(b.tableaux[0], vec![vec![1, 2], vec![3]]);
        assert_eq!(b.columns[0], vec![(0, Fe(1)), (2, Fe(4))]);
    }

    #[test]
    fn signs_of_permutations() {
        let perms = signed_permutations(3);
        assert_eq!(perms.len(), 6);
        for (p, even) in perms {
            let inversions = (0..3).flat_map(|i| (i + 1..3).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
            assert_eq!(even, inversions % 2 == 0, "{p:?}");
        }
    }

    #[test]
    fn tableau_counts_match_hook_formula() {
        for mu in Partition::all(7) {
            assert_eq!(standard_tableaux(&mu).len() as u128, dim_specht(&mu));
        }
    }

    #[test]
    fn non_invariant_subspace_is_rejected() {
        // Replace the basis by the span of one tabloid, which no transposition preserves.
        let f = field(3, 1).unwrap();
        let mut b = standard_basis(&pt("(2,1)"), 3).unwrap();
        b.columns = vec![vec![(0, Fe::ONE)]];
        b.pivot_rows = vec![0];
        assert!(matches!(action_matrices(&f, &b, &[vec![0, 2, 1]]), Err(Error::NoSolution)));
    }
}
