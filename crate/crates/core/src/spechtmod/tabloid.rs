use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ffalg::SparseMatFF;
use crate::partitions::Partition;

/// Largest tabloid count accepted for M^μ.
pub const MAX_TABLOIDS: u128 = 1_000_000;

/// Row-equivalence class of a tableau, stored as the row of each letter
/// (letters and rows 0-based).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Tabloid {
    pub row_assignment: Vec<u8>,
}

impl Tabloid {
    /// Rows as sorted sets of 1-based letters.
    pub fn row_sets(&self) -> Vec<Vec<usize>> {
        let rows = self.row_assignment.iter().map(|&r| r as usize + 1).max().unwrap_or(0);
        let mut out = vec![Vec::new(); rows];
        for (x, &r) in self.row_assignment.iter().enumerate() {
            out[r as usize].push(x + 1);
        }
        out
    }

    fn key(&self) -> u128 {
        pack(&self.row_assignment)
    }
}

impl fmt::Display for Tabloid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> =
            self.row_sets().iter().map(|r| r.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")).collect();
        write!(f, "{{{}}}", rows.join("|"))
    }
}

fn pack(rows: &[u8]) -> u128 {
    rows.iter().enumerate().fold(0u128, |acc, (i, &r)| acc | (r as u128) << (4 * i))
}

/// |μ|! / Π μ_i!, saturating at `u128::MAX`.
pub fn tabloid_count(mu: &Partition) -> u128 {
    let mut acc: u128 = 1;
    let mut placed = 0u128;
    for &part in mu.parts() {
        for j in 1..=part as u128 {
            placed += 1;
            // acc * placed / j stays integral: it is a product of binomials.
            acc = match acc.checked_mul(placed) {
                Some(v) => v / j,
                None => return u128::MAX,
            };
        }
    }
    acc
}

/// All μ-tabloids in canonical order, with a reverse index.
#[derive(Clone, Debug)]
pub struct TabloidSpace {
    mu: Partition,
    tabloids: Vec<Tabloid>,
    index: HashMap<u128, u32>,
}

impl TabloidSpace {
    pub fn new(mu: &Partition) -> Result<TabloidSpace> {
        let t = tabloid_count(mu);
        if t > MAX_TABLOIDS {
            return Err(Error::TooLarge(format!("M^{mu} has {t} tabloids")));
        }
        if mu.size() > 32 || mu.len() > 16 {
            return Err(Error::TooLarge(format!("{mu} exceeds 32 letters or 16 rows")));
        }
        let tabloids = enumerate_tabloids(mu)?;
        let index = tabloids.iter().enumerate().map(|(i, t)| (t.key(), i as u32)).collect();
        Ok(TabloidSpace { mu: mu.clone(), tabloids, index })
    }

    pub fn mu(&self) -> &Partition {
        &self.mu
    }

    pub fn len(&self) -> usize {
        self.tabloids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tabloids.is_empty()
    }

    pub fn tabloids(&self) -> &[Tabloid] {
        &self.tabloids
    }

    pub fn index_of(&self, row_assignment: &[u8]) -> Option<usize> {
        self.index.get(&pack(row_assignment)).map(|&i| i as usize)
    }

    /// Index of σ·{t_j} for every j, with σ given as 0-based images of letters.
    pub fn permute(&self, sigma: &[usize]) -> Vec<usize> {
        let mut buf = vec![0u8; sigma.len()];
        self.tabloids
            .iter()
            .map(|t| {
                for (x, &r) in t.row_assignment.iter().enumerate() {
                    buf[sigma[x]] = r;
                }
                self.index_of(&buf).expect("permuted tabloid exists")
            })
            .collect()
    }
}

/// All tabloids of shape μ, ordered lexicographically by their sequence of
/// sorted row sets.
pub fn enumerate_tabloids(mu: &Partition) -> Result<Vec<Tabloid>> {
    let t = tabloid_count(mu);
    if t > MAX_TABLOIDS {
        return Err(Error::TooLarge(format!("M^{mu} has {t} tabloids")));
    }
    let m = mu.size();
    let mut out = Vec::with_capacity(t as usize);
    let mut assign = vec![u8::MAX; m];
    fill_row(mu.parts(), 0, 0, 0, &mut assign, &mut out);
    Ok(out)
}

fn fill_row(parts: &[usize], row: usize, start: usize, taken: usize, assign: &mut Vec<u8>, out: &mut Vec<Tabloid>) {
    if row == parts.len() {
        out.push(Tabloid { row_assignment: assign.clone() });
        return;
    }
    if taken == parts[row] {
        fill_row(parts, row + 1, 0, 0, assign, out);
        return;
    }
    for x in start..assign.len() {
        if assign[x] == u8::MAX {
            assign[x] = row as u8;
            fill_row(parts, row, x + 1, taken + 1, assign, out);
            assign[x] = u8::MAX;
        }
    }
}

/// Permutation matrix of σ (0-based images of the letters) on the tabloid
/// basis of M^μ.
pub fn perm_action_sparse(sigma: &[usize], mu: &Partition) -> Result<SparseMatFF> {
    check_permutation(sigma, mu.size())?;
    let space = TabloidSpace::new(mu)?;
    Ok(SparseMatFF::permutation(&space.permute(sigma)))
}

pub(crate) fn check_permutation(sigma: &[usize], m: usize) -> Result<()> {
    let mut seen = vec![false; m];
    if sigma.len() != m {
        return Err(Error::DimensionMismatch(format!("permutation of {} letters, expected {m}", sigma.len())));
    }
    for &x in sigma {
        if x >= m || std::mem::replace(&mut seen[x], true) {
            return Err(Error::PreconditionViolated(format!("{sigma:?} is not a permutation")));
        }
    }
    Ok(())
}

/// The p-cycle `(ip+1, ..., ip+p)` on `m` letters, 0-based, for block `i`.
pub fn block_cycle(i: usize, p: usize, m: usize) -> Vec<usize> {
    (0..m)
        .map(|x| if x / p == i { i * p + (x - i * p + 1) % p } else { x })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffalg::field;

    fn pt(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn counts() {
        assert_eq!(enumerate_tabloids(&pt("(6,3)")).unwrap().len(), 84);
        assert_eq!(enumerate_tabloids(&pt("(3,3,3)")).unwrap().len(), 1680);
        assert_eq!(enumerate_tabloids(&pt("(7)")).unwrap().len(), 1);
        assert_eq!(tabloid_count(&pt("(3,3,3)")), 1680);
        assert!(matches!(enumerate_tabloids(&pt("(1,1,1,1,1,1,1,1,1,1)")), Err(Error::TooLarge(_))));
    }

    #[test]
    fn canonical_order_is_lexicographic() {
        let ts = enumerate_tabloids(&pt("(3,2,2)")).unwrap();
        let sets: Vec<_> = ts.iter().map(Tabloid::row_sets).collect();
        assert!(sets.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(ts[0].to_string(), "{1,2,3|4,5|6,7}");
    }

    #[test]
    fn transposition_on_two_one() {
        let f = field(3, 1).unwrap();
        let ts = enumerate_tabloids(&pt("(2,1)")).unwrap();
        let names: Vec<_> = ts.iter().map(ToString::to_string).collect();
        assert_eq!(names, ["{1,2|3}", "{1,3|2}", "{2,3|1}"]);
        let m = perm_action_sparse(&[1, 0, 2], &pt("(2,1)")).unwrap();
        assert_eq!(m.to_dense(), crate::ffalg::MatrixFF::from_ints(&f, &[&[1, 0, 0], &[0, 0, 1], &[0, 1, 0]]));
    }

    #[test]
    fn inverse_composes_to_identity() {
        let f = field(2, 1).unwrap();
        let mu = pt("(3,2,1)");
        let sigma = [2, 0, 4, 5, 1, 3];
        let mut inv = [0; 6];
        for (x, &y) in sigma.iter().enumerate() {
            inv[y] = x;
        }
        let a = perm_action_sparse(&sigma, &mu).unwrap();
        let b = perm_action_sparse(&inv, &mu).unwrap();
        assert_eq!(a.mul(&f, &b).unwrap(), SparseMatFF::identity(60));
        let id: Vec<usize> = (0..6).collect();
        assert_eq!(perm_action_sparse(&id, &mu).unwrap(), SparseMatFF::identity(60));
    }

    #[test]
    fn block_cycles() {
        assert_eq!(block_cycle(1, 3, 9), vec![0, 1, 2, 4, 5, 3, 6, 7, 8]);
        assert_eq!(block_cycle(0, 2, 4), vec![1, 0, 2, 3]);
    }
}
