//! Tabloid and Specht modules of symmetric groups over GF(p) and the action
//! of the generators of the elementary abelian subgroup E_n on them.
//!
//! E_n is generated by the disjoint p-cycles `g_i = ((i-1)p+1, ..., ip)`.
//! Everything downstream only needs the nilpotent matrices `A_i = g_i - 1`,
//! which are computed once per module and stored split into the connected
//! components of their joint support.

mod basis;
mod cache;
mod tabloid;

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ffalg::{field, Fe, FieldCtx, MatrixFF};
use crate::partitions::Partition;

pub use basis::{standard_basis, standard_tableaux, SpechtBasis};
pub use cache::Cache;
pub use tabloid::{block_cycle, enumerate_tabloids, perm_action_sparse, tabloid_count, Tabloid, TabloidSpace};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModuleKind {
    Specht,
    Permutation,
}

/// One diagonal block of the A_i, with every place it occurs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActionBlock {
    /// Restriction of A_1, ..., A_n to the block.
    pub mats: Vec<MatrixFF>,
    /// Basis indices of each occurrence, in the order matching `mats`.
    pub supports: Vec<Vec<u32>>,
}

impl ActionBlock {
    pub fn size(&self) -> usize {
        self.mats.first().map_or(0, MatrixFF::rows)
    }

    pub fn multiplicity(&self) -> usize {
        self.supports.len()
    }
}

/// The matrices of `g_i - 1` on a module restricted to E_n.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RestrictedActions {
    pub kind: ModuleKind,
    /// The partition that was asked for.
    pub mu: Partition,
    /// The partition the matrices were built from (μ or its conjugate).
    pub computed_on: Partition,
    pub n: usize,
    pub p: u32,
    pub dim: usize,
    pub blocks: Vec<ActionBlock>,
}

impl RestrictedActions {
    pub fn swapped(&self) -> bool {
        self.mu != self.computed_on
    }

    /// Assembles the full d×d matrices A_1, ..., A_n.
    pub fn matrices(&self) -> Vec<MatrixFF> {
        let mut out = vec![MatrixFF::zeros(self.dim, self.dim); self.n];
        for block in &self.blocks {
            for support in &block.supports {
                for (a, m) in out.iter_mut().zip(&block.mats) {
                    for (bi, &i) in support.iter().enumerate() {
                        for (bj, &j) in support.iter().enumerate() {
                            a.set(i as usize, j as usize, m.get(bi, bj));
                        }
                    }
                }
            }
        }
        out
    }

    /// Builds from full matrices, splitting into blocks.
    pub fn from_matrices(kind: ModuleKind, mu: Partition, computed_on: Partition, p: u32, mats: Vec<MatrixFF>) -> Self {
        let n = mats.len();
        let dim = mats.first().map_or(0, MatrixFF::rows);
        let edges = mats.iter().flat_map(|a| {
            (0..dim).flat_map(move |i| (0..dim).filter(move |&j| !a.get(i, j).is_zero()).map(move |j| (i, j)))
        });
        let comps = components(dim, edges);
        let blocks = group_blocks(comps, |support| {
            let idx: Vec<usize> = support.iter().map(|&i| i as usize).collect();
            mats.iter().map(|a| restrict(a, &idx)).collect()
        });
        RestrictedActions { kind, mu, computed_on, n, p, dim, blocks }
    }
}

fn restrict(a: &MatrixFF, idx: &[usize]) -> MatrixFF {
    MatrixFF::from_fn(idx.len(), idx.len(), |i, j| a.get(idx[i], idx[j]))
}

/// Connected components of the graph on `0..dim`, each sorted.
fn components(dim: usize, edges: impl Iterator<Item = (usize, usize)>) -> Vec<Vec<u32>> {
    let mut parent: Vec<usize> = (0..dim).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for (i, j) in edges {
        let (a, b) = (find(&mut parent, i), find(&mut parent, j));
        if a != b {
            parent[a.max(b)] = a.min(b);
        }
    }
    let mut by_root: HashMap<usize, Vec<u32>> = HashMap::new();
    for x in 0..dim {
        let r = find(&mut parent, x);
        by_root.entry(r).or_default().push(x as u32);
    }
    let mut comps: Vec<Vec<u32>> = by_root.into_values().collect();
    comps.sort_unstable();
    comps
}

fn group_blocks(comps: Vec<Vec<u32>>, mut mats_of: impl FnMut(&[u32]) -> Vec<MatrixFF>) -> Vec<ActionBlock> {
    let mut blocks: Vec<ActionBlock> = Vec::new();
    let mut seen: HashMap<Vec<MatrixFF>, usize> = HashMap::new();
    for support in comps {
        let mats = mats_of(&support);
        match seen.get(&mats) {
            Some(&b) => blocks[b].supports.push(support),
            None => {
                seen.insert(mats.clone(), blocks.len());
                blocks.push(ActionBlock { mats, supports: vec![support] });
            }
        }
    }
    blocks
}

fn check_rank_n(mu: &Partition, n: usize, p: u32) -> Result<()> {
    if mu.size() != n * p as usize {
        return Err(Error::PreconditionViolated(format!("|{mu}| != {n}*{p}")));
    }
    Ok(())
}

fn generators(n: usize, p: usize) -> Vec<Vec<usize>> {
    (0..n).map(|i| block_cycle(i, p, n * p)).collect()
}

/// The A_i on S^μ. With `use_conjugate`, builds S^{μ'} instead when M^{μ'} has
/// fewer tabloids; on E_n that module is the dual of S^μ, so freeness at each
/// point and generic Jordan types agree.
pub fn restricted_actions(mu: &Partition, n: usize, p: u32, use_conjugate: bool) -> Result<RestrictedActions> {
    check_rank_n(mu, n, p)?;
    let conj = mu.conjugate();
    let on = if use_conjugate && tabloid_count(&conj) < tabloid_count(mu) { conj } else { mu.clone() };
    let ctx = field(p, 1)?;
    let basis = standard_basis(&on, p)?;
    let mats = basis::action_matrices(&ctx, &basis, &generators(n, p as usize))?;
    Ok(RestrictedActions::from_matrices(ModuleKind::Specht, mu.clone(), on, p, mats))
}

/// As [`restricted_actions`], consulting `SPECHTVAR_CACHE` when it is set.
pub fn restricted_actions_cached(mu: &Partition, n: usize, p: u32, use_conjugate: bool) -> Result<RestrictedActions> {
    match Cache::from_env() {
        Some(cache) => {
            let key = format!("specht/{mu}/{n}/{p}/{use_conjugate}");
            cache.load_or_build(&key, || restricted_actions(mu, n, p, use_conjugate))
        }
        None => restricted_actions(mu, n, p, use_conjugate),
    }
}

/// The A_i on the permutation module M^μ in its tabloid basis. Each E_n-orbit
/// of tabloids spans a summand, so the blocks are the orbits.
pub fn perm_module_actions(mu: &Partition, n: usize, p: u32) -> Result<RestrictedActions> {
    check_rank_n(mu, n, p)?;
    let ctx = field(p, 1)?;
    let space = TabloidSpace::new(mu)?;
    let images: Vec<Vec<usize>> = generators(n, p as usize).iter().map(|g| space.permute(g)).collect();
    let dim = space.len();
    let edges = images.iter().flat_map(|img| img.iter().enumerate().map(|(j, &i)| (i, j)));
    let comps = components(dim, edges);
    let minus_one = ctx.neg(Fe::ONE);
    let blocks = group_blocks(comps, |support| {
        let local: HashMap<u32, usize> = support.iter().enumerate().map(|(a, &i)| (i, a)).collect();
        images
            .iter()
            .map(|img| {
                let mut m = MatrixFF::zeros(support.len(), support.len());
                for (b, &j) in support.iter().enumerate() {
                    let a = local[&(img[j as usize] as u32)];
                    m.set(a, b, ctx.add(m.get(a, b), Fe::ONE));
                    m.set(b, b, ctx.add(m.get(b, b), minus_one));
                }
                m
            })
            .collect()
    });
    Ok(RestrictedActions { kind: ModuleKind::Permutation, mu: mu.clone(), computed_on: mu.clone(), n, p, dim, blocks })
}

/// Number of tabloids fixed by every generator of E_n.
pub fn fixed_tabloid_count(acts: &RestrictedActions) -> usize {
    acts.blocks.iter().filter(|b| b.size() == 1).map(ActionBlock::multiplicity).sum()
}

/// Checks `A_i A_j = A_j A_i`, `A_i^p = 0` and `(I + A_i)^p = I` blockwise.
pub fn check_invariants(ctx: &FieldCtx, acts: &RestrictedActions) -> Result<()> {
    for block in &acts.blocks {
        let id = MatrixFF::identity(block.size());
        for (i, a) in block.mats.iter().enumerate() {
            if !a.pow(ctx, acts.p)?.is_zero() {
                return Err(Error::InvariantViolated(format!("A_{} is not nilpotent of order p", i + 1)));
            }
            let g = a.add(ctx, &id)?;
            if g.pow(ctx, acts.p)? != id {
                return Err(Error::InvariantViolated(format!("g_{} has order not dividing p", i + 1)));
            }
            for b in &block.mats[i + 1..] {
                if a.mul(ctx, b)? != b.mul(ctx, a)? {
                    return Err(Error::InvariantViolated("generators do not commute".into()));
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn trivial_module_has_zero_action() {
        let acts = restricted_actions(&pt("(9)"), 3, 3, false).unwrap();
        assert_eq!(acts.dim, 1);
        assert!(acts.matrices().iter().all(MatrixFF::is_zero));
        let acts = restricted_actions(&pt("(6)"), 3, 2, true).unwrap();
        assert!(acts.matrices().iter().all(MatrixFF::is_zero));
    }

    #[test]
    fn square_partition_actions() {
        let f = field(3, 1).unwrap();
        let acts = restricted_actions(&pt("(3,3,3)"), 3, 3, true).unwrap();
        assert_eq!(acts.dim, 42);
        assert!(!acts.swapped());
        check_invariants(&f, &acts).unwrap();
        let full = RestrictedActions::from_matrices(
            ModuleKind::Specht,
            acts.mu.clone(),
            acts.computed_on.clone(),
            3,
            acts.matrices(),
        );
        assert_eq!(full, acts);
    }

    #[test]
    fn conjugate_swap_picks_fewer_tabloids() {
        let acts = restricted_actions(&pt("(2,2,1,1,1,1,1)"), 3, 3, true).unwrap();
        assert!(acts.swapped());
        assert_eq!(acts.computed_on, pt("(7,2)"));
        assert_eq!(acts.dim, 27);
    }

    #[test]
    fn permutation_module_fixed_points() {
        let f = field(3, 1).unwrap();
        let acts = perm_module_actions(&pt("(3,3,3)"), 3, 3).unwrap();
        assert_eq!(acts.dim, 1680);
        assert_eq!(fixed_tabloid_count(&acts), 6);
        assert!(acts.blocks.iter().all(|b| b.size() <= 27));
        check_invariants(&f, &acts).unwrap();
        assert_eq!(fixed_tabloid_count(&perm_module_actions(&pt("(6,3)"), 3, 3).unwrap()), 3);
        let acts = perm_module_actions(&pt("(9)"), 3, 3).unwrap();
        assert!(acts.matrices().iter().all(MatrixFF::is_zero));
    }

    #[test]
    fn size_precondition() {
        assert!(matches!(restricted_actions(&pt("(4,3)"), 2, 3, false), Err(Error::PreconditionViolated(_))));
    }
}
