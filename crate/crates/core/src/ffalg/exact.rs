//! Exact ranks over the rational function field GF(p)(t_1, ..., t_n).
//!
//! Matrices with polynomial entries are reduced by fraction-free (Bareiss)
//! elimination, so every intermediate entry is a minor of the input and stays
//! a polynomial. Only practical for small dimensions; callers gate on size.

use std::collections::{BTreeMap, HashMap};

use super::field::FieldCtx;
use super::matrix::MatrixFF;
use crate::error::{Error, Result};

const BITS: u32 = 16;
const MAX_VARS: usize = 4;

/// Polynomial over GF(p) in at most four variables, exponents packed 16 bits
/// each so that monomial products are integer additions and integer order is
/// lexicographic order. Terms sorted by decreasing monomial.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
struct PackedPoly {
    terms: Vec<(u64, u32)>,
}

fn divides(a: u64, b: u64) -> bool {
    (0..MAX_VARS as u32).all(|i| {
        let sh = i * BITS;
        (a >> sh) & 0xffff <= (b >> sh) & 0xffff
    })
}

impl PackedPoly {
    fn constant(c: u32) -> Self {
        if c == 0 {
            PackedPoly::default()
        } else {
            PackedPoly { terms: vec![(0, c)] }
        }
    }

    fn var(i: usize, c: u32) -> Self {
        if c == 0 {
            PackedPoly::default()
        } else {
            PackedPoly { terms: vec![(1u64 << (BITS * (MAX_VARS - 1 - i) as u32), c)] }
        }
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn from_map(map: HashMap<u64, u32>, p: u32) -> Self {
        let mut terms: Vec<(u64, u32)> = map.into_iter().filter(|&(_, c)| c % p != 0).collect();
        terms.sort_unstable_by_key(|t| std::cmp::Reverse(t.0));
        PackedPoly { terms }
    }

    fn add(&self, other: &PackedPoly, p: u32) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < other.terms.len() {
            let a = self.terms.get(i);
            let b = other.terms.get(j);
            match (a, b) {
                (Some(&(ma, ca)), Some(&(mb, cb))) if ma == mb => {
                    let c = (ca + cb) % p;
                    if c != 0 {
                        out.push((ma, c));
                    }
                    i += 1;
                    j += 1;
                }
                (Some(&(ma, ca)), Some(&(mb, _))) if ma > mb => {
                    out.push((ma, ca));
                    i += 1;
                }
                (Some(_), Some(&(mb, cb))) | (None, Some(&(mb, cb))) => {
                    out.push((mb, cb));
                    j += 1;
                }
                (Some(&(ma, ca)), None) => {
                    out.push((ma, ca));
                    i += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        PackedPoly { terms: out }
    }

    fn neg(&self, p: u32) -> Self {
        PackedPoly { terms: self.terms.iter().map(|&(m, c)| (m, (p - c) % p)).collect() }
    }

    fn mul(&self, other: &PackedPoly, p: u32) -> Self {
        if self.is_zero() || other.is_zero() {
            return PackedPoly::default();
        }
        let mut acc: HashMap<u64, u32> = HashMap::with_capacity(self.terms.len() * other.terms.len());
        for &(ma, ca) in &self.terms {
            for &(mb, cb) in &other.terms {
                let slot = acc.entry(ma + mb).or_insert(0);
                *slot = (*slot + ca * cb) % p;
            }
        }
        Self::from_map(acc, p)
    }

    /// Exact quotient `self / d`; errors if the division leaves a remainder.
    fn div_exact(&self, d: &PackedPoly, p: u32) -> Option<PackedPoly> {
        let (&(lm, lc), rest) = d.terms.split_first()?;
        let lc_inv = (1..p).find(|&x| x * lc % p == 1)?;
        let mut rem: BTreeMap<u64, u32> = self.terms.iter().copied().collect();
        let mut quot = Vec::new();
        while let Some((&m, &c)) = rem.iter().next_back() {
            if !divides(lm, m) {
                return None;
            }
            let qm = m - lm;
            let qc = c * lc_inv % p;
            quot.push((qm, qc));
            rem.remove(&m);
            for &(dm, dc) in rest {
                let key = qm + dm;
                let sub = qc * dc % p;
                let slot = rem.entry(key).or_insert(0);
                *slot = (*slot + p - sub) % p;
                if *slot == 0 {
                    rem.remove(&key);
                }
            }
        }
        Some(PackedPoly { terms: quot })
    }
}

type PolyMatrix = Vec<Vec<PackedPoly>>;

fn poly_matmul(a: &PolyMatrix, b: &PolyMatrix, p: u32) -> PolyMatrix {
    let n = a.len();
    let m = b.first().map_or(0, Vec::len);
    let inner = b.len();
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| {
                    let mut s = PackedPoly::default();
                    for k in 0..inner {
                        if !a[i][k].is_zero() && !b[k][j].is_zero() {
                            s = s.add(&a[i][k].mul(&b[k][j], p), p);
                        }
                    }
                    s
                })
                .collect()
        })
        .collect()
}

/// Rank by Bareiss elimination with full pivoting (the pivot with the fewest
/// terms is taken). Consumes the matrix.
fn bareiss_rank(mut m: PolyMatrix, p: u32) -> Result<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut prev = PackedPoly::constant(1);
    let mut rank = 0;
    for k in 0..rows.min(cols) {
        let mut best: Option<(usize, usize, usize)> = None;
        for (i, row) in m.iter().enumerate().skip(k) {
            for (j, e) in row.iter().enumerate().skip(k) {
                if !e.is_zero() && best.is_none_or(|b| e.terms.len() < b.2) {
                    best = Some((i, j, e.terms.len()));
                }
            }
        }
        let Some((pi, pj, _)) = best else { break };
        m.swap(k, pi);
        for row in m.iter_mut() {
            row.swap(k, pj);
        }
        let piv = m[k][k].clone();
        let pivot_row = m[k].clone();
        for row in m.iter_mut().skip(k + 1) {
            let lead = std::mem::take(&mut row[k]);
            for j in k + 1..cols {
                let mut num = piv.mul(&row[j], p);
                if !lead.is_zero() && !pivot_row[j].is_zero() {
                    num = num.add(&lead.mul(&pivot_row[j], p).neg(p), p);
                }
                row[j] = num.div_exact(&prev, p).ok_or_else(|| {
                    Error::InvalidField("inexact division in fraction-free elimination".into())
                })?;
            }
        }
        prev = piv;
        rank += 1;
    }
    Ok(rank)
}

/// Ranks over GF(p)(t_1, ..., t_n) of the powers `N, N^2, ..., N^max_power`
/// of the generic operator `N = sum t_i A_i`.
///
/// The operator is homogeneous of degree one, so the rank is unchanged by
/// setting `t_1 = 1`; this removes one variable before elimination.
pub fn generic_power_ranks(ctx: &FieldCtx, mats: &[MatrixFF], max_power: u32) -> Result<Vec<usize>> {
    let p = ctx.p();
    if ctx.k() != 1 {
        return Err(Error::InvalidField("exact mode works over the prime field".into()));
    }
    let Some(first) = mats.first() else {
        return Ok(vec![0; max_power as usize]);
    };
    if mats.len() > MAX_VARS + 1 {
        return Err(Error::TooLarge(format!("exact mode supports at most {} generators", MAX_VARS + 1)));
    }
    let d = first.rows();
    let base: PolyMatrix = (0..d)
        .map(|i| {
            (0..d)
                .map(|j| {
                    let mut e = PackedPoly::constant(first.get(i, j).0);
                    for (v, a) in mats.iter().enumerate().skip(1) {
                        e = e.add(&PackedPoly::var(v - 1, a.get(i, j).0), p);
                    }
                    e
                })
                .collect()
        })
        .collect();
    let mut ranks = Vec::with_capacity(max_power as usize);
    let mut power = base.clone();
    for j in 1..=max_power {
        if j > 1 {
            power = poly_matmul(&power, &base, p);
        }
        ranks.push(bareiss_rank(power.clone(), p)?);
    }
    Ok(ranks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffalg::field;

    #[test]
    fn exact_division_round_trip() {
        let p = 3;
        let a = PackedPoly::var(0, 1).add(&PackedPoly::constant(2), p);
        let b = PackedPoly::var(1, 2).add(&PackedPoly::var(0, 1), p);
        let prod = a.mul(&b, p);
        assert_eq!(prod.div_exact(&a, p), Some(b.clone()));
        assert_eq!(prod.div_exact(&b, p), Some(a));
        assert_eq!(PackedPoly::var(0, 1).div_exact(&b, p), None);
    }

    #[test]
    fn generic_rank_exceeds_every_specialisation() {
        // A1 = E12, A2 = E21 over GF(2): t1 E12 + t2 E21 is invertible generically
        // but singular whenever one coordinate vanishes.
        let f = field(2, 1).unwrap();
        let a1 = MatrixFF::from_ints(&f, &[&[0, 1], &[0, 0]]);
        let a2 = MatrixFF::from_ints(&f, &[&[0, 0], &[1, 0]]);
        assert_eq!(generic_power_ranks(&f, &[a1.clone(), a2.clone()], 1).unwrap(), vec![2]);
        assert_eq!(a1.rank(&f), 1);
    }

    #[test]
    fn constant_matrix_rank_matches_numeric() {
        let f = field(3, 1).unwrap();
        let a = MatrixFF::from_ints(&f, &[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]]);
        assert_eq!(generic_power_ranks(&f, &[a], 3).unwrap(), vec![2, 1, 0]);
    }
}
