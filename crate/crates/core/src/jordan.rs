//! Jordan types of the operators `u_α - 1 = Σ α_i A_i`, at single points and
//! at a generic point.

use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::ffalg::{field, generic_power_ranks, Fe, FieldCtx, MatrixFF};
use crate::spechtmod::{ActionBlock, RestrictedActions};

/// Ranks `r_0, ..., r_p` of `N^0, ..., N^p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RankVector {
    pub ranks: Vec<usize>,
}

impl RankVector {
    pub fn dim(&self) -> usize {
        self.ranks[0]
    }

    /// Weakly decreasing, convex, and ending in zero.
    pub fn is_valid(&self) -> bool {
        let r = &self.ranks;
        r.last() == Some(&0)
            && r.windows(2).all(|w| w[0] >= w[1])
            && r.windows(3).all(|w| w[0] - w[1] >= w[1] - w[2])
    }

    pub fn entrywise_max(&self, other: &RankVector) -> RankVector {
        RankVector { ranks: self.ranks.iter().zip(&other.ranks).map(|(a, b)| *a.max(b)).collect() }
    }

    pub fn dominated_by(&self, other: &RankVector) -> bool {
        self.ranks.iter().zip(&other.ranks).all(|(a, b)| a <= b)
    }
}

/// Block counts `b_1, ..., b_p` of a nilpotent operator with `N^p = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct JordanType {
    pub p: u32,
    /// `blocks[s - 1]` is the number of blocks of size `s`.
    pub blocks: Vec<usize>,
}

impl JordanType {
    pub fn new(p: u32, blocks: Vec<usize>) -> JordanType {
        debug_assert_eq!(blocks.len(), p as usize);
        JordanType { p, blocks }
    }

    /// `b_s = r_{s-1} - 2 r_s + r_{s+1}`.
    pub fn from_rank_vector(p: u32, rv: &RankVector) -> Result<JordanType> {
        let r = &rv.ranks;
        if r.len() != p as usize + 1 || !rv.is_valid() {
            return Err(Error::InvariantViolated(format!("invalid rank vector {r:?}")));
        }
        let at = |i: usize| r.get(i).copied().unwrap_or(0) as i64;
        let blocks = (1..=p as usize).map(|s| (at(s - 1) - 2 * at(s) + at(s + 1)) as usize).collect();
        Ok(JordanType { p, blocks })
    }

    pub fn rank_vector(&self) -> RankVector {
        let p = self.p as usize;
        let ranks = (0..=p).map(|j| (j + 1..=p).map(|s| (s - j) * self.blocks[s - 1]).sum()).collect();
        RankVector { ranks }
    }

    /// Number of blocks of size `s` (`n_M(s)`), zero outside `1..=p`.
    pub fn count(&self, s: usize) -> usize {
        if s == 0 {
            return 0;
        }
        self.blocks.get(s - 1).copied().unwrap_or(0)
    }

    pub fn dim(&self) -> usize {
        self.blocks.iter().enumerate().map(|(i, b)| (i + 1) * b).sum()
    }

    pub fn is_free(&self) -> bool {
        self.blocks[..self.p as usize - 1].iter().all(|&b| b == 0)
    }

    /// The type with the projective blocks (size p) removed.
    pub fn stable(&self) -> JordanType {
        let mut blocks = self.blocks.clone();
        blocks[self.p as usize - 1] = 0;
        JordanType { p: self.p, blocks }
    }
}

impl fmt::Display for JordanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = (1..=self.p as usize)
            .rev()
            .filter(|&s| self.count(s) > 0)
            .map(|s| format!("{s}^{}", self.count(s)))
            .collect();
        write!(f, "({})", parts.join(","))
    }
}

pub fn stable_type(t: &JordanType) -> JordanType {
    t.stable()
}

/// `n_{t1}(i) = n_{t2}(p - i)` for `1 <= i <= p - 1`.
pub fn complementary_check(t1: &JordanType, t2: &JordanType, p: u32) -> bool {
    (1..p as usize).all(|i| t1.count(i) == t2.count(p as usize - i))
}

fn check_point(acts: &RestrictedActions, ctx: &FieldCtx, alpha: &[Fe]) -> Result<()> {
    if ctx.p() != acts.p {
        return Err(Error::InvalidField(format!("characteristic {} for a module over GF({})", ctx.p(), acts.p)));
    }
    if alpha.len() != acts.n {
        return Err(Error::ArityMismatch { got: alpha.len(), want: acts.n });
    }
    if alpha.iter().all(|a| a.is_zero()) {
        return Err(Error::ZeroPoint);
    }
    Ok(())
}

fn block_operator(ctx: &FieldCtx, block: &ActionBlock, alpha: &[Fe]) -> MatrixFF {
    let s = block.size();
    let mut n = MatrixFF::zeros(s, s);
    for (a, m) in alpha.iter().zip(&block.mats) {
        n.add_scaled(ctx, *a, m).expect("block shapes agree");
    }
    n
}

/// Ranks of the powers of N on each block, up to `N^p`.
fn block_ranks(ctx: &FieldCtx, block: &ActionBlock, alpha: &[Fe], p: usize) -> Vec<usize> {
    let n = block_operator(ctx, block, alpha);
    let mut ranks = vec![block.size()];
    if n.is_zero() {
        ranks.extend(std::iter::repeat_n(0, p));
        return ranks;
    }
    let mut power = n.clone();
    for j in 1..=p {
        if j > 1 {
            power = power.mul(ctx, &n).expect("square");
        }
        let r = power.rank(ctx);
        ranks.push(r);
        if r == 0 {
            ranks.resize(p + 1, 0);
            break;
        }
    }
    ranks
}

/// Rank vector of `N = Σ α_i A_i` with α in GF(p^k)^n.
pub fn rank_vector_at(acts: &RestrictedActions, ctx: &FieldCtx, alpha: &[Fe]) -> Result<RankVector> {
    check_point(acts, ctx, alpha)?;
    let p = acts.p as usize;
    let mut ranks = vec![0; p + 1];
    for block in &acts.blocks {
        for (acc, r) in ranks.iter_mut().zip(block_ranks(ctx, block, alpha, p)) {
            *acc += r * block.multiplicity();
        }
    }
    Ok(RankVector { ranks })
}

/// Jordan type of `u_α - 1` on the module.
pub fn jordan_at_point(acts: &RestrictedActions, ctx: &FieldCtx, alpha: &[Fe]) -> Result<JordanType> {
    let rv = rank_vector_at(acts, ctx, alpha)?;
    JordanType::from_rank_vector(acts.p, &rv)
}

/// Whether the module is free over `k<u_α>`, i.e. `rank N^{p-1} = d/p`. A
/// module whose dimension is prime to p is never free, so this returns false
/// without any rank computation.
pub fn is_free_at(acts: &RestrictedActions, ctx: &FieldCtx, alpha: &[Fe]) -> Result<bool> {
    check_point(acts, ctx, alpha)?;
    let p = acts.p as usize;
    if !acts.dim.is_multiple_of(p) {
        return Ok(false);
    }
    // A direct sum is free exactly when every summand is.
    for block in &acts.blocks {
        if block.size() % p != 0 {
            return Ok(false);
        }
        let n = block_operator(ctx, block, alpha);
        if n.pow(ctx, p as u32 - 1)?.rank(ctx) != block.size() / p {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GenericMode {
    Random,
    Exact,
}

impl std::str::FromStr for GenericMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "random" | "randomized" => Ok(GenericMode::Random),
            "exact" => Ok(GenericMode::Exact),
            _ => Err(Error::PreconditionViolated(format!("unknown mode {s}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenericTypeReport {
    #[serde(rename = "type")]
    pub jordan: JordanType,
    pub jordan_string: String,
    pub rank_vector: RankVector,
    pub mode: GenericMode,
    pub samples: usize,
    /// The field `(p, k)` the generic point was drawn from.
    pub field: (u32, u32),
    pub seed: u64,
    pub certified_by_single_sample: bool,
}

/// Largest dimension accepted in exact mode.
pub const EXACT_MAX_DIM: usize = 32;
pub const DEFAULT_SAMPLES: usize = 5;
const RANDOM_DEGREES: [u32; 2] = [8, 12];

/// RNG seeded from the module parameters and a user seed.
pub fn module_rng(acts: &RestrictedActions, seed: u64, salt: &str) -> ChaCha8Rng {
    let tag = format!("{:?}|{}|{}|{}|{seed}|{salt}", acts.kind, acts.mu, acts.p, acts.n);
    ChaCha8Rng::from_seed(Sha256::digest(tag.as_bytes()).into())
}

/// A uniformly random nonzero point of GF(p^k)^n.
pub fn random_point<R: rand::Rng>(ctx: &FieldCtx, n: usize, rng: &mut R) -> Vec<Fe> {
    loop {
        let alpha: Vec<Fe> = (0..n).map(|_| ctx.random(rng)).collect();
        if alpha.iter().any(|a| !a.is_zero()) {
            return alpha;
        }
    }
}

/// The Jordan type at a generic point.
///
/// Random mode evaluates `samples` points of GF(p^8)^n and takes the
/// entrywise maximum of their rank vectors; the result is certified when one
/// sample attains the maximum in every entry, otherwise the draw is repeated
/// over GF(p^12). Exact mode eliminates over GF(p)(t_1, ..., t_n).
pub fn generic_type(acts: &RestrictedActions, mode: GenericMode, seed: u64, samples: usize) -> Result<GenericTypeReport> {
    let p = acts.p;
    match mode {
        GenericMode::Exact => {
            if acts.dim > EXACT_MAX_DIM {
                return Err(Error::TooLarge(format!("exact mode needs d <= {EXACT_MAX_DIM}, got {}", acts.dim)));
            }
            let ctx = field(p, 1)?;
            let mut ranks = vec![acts.dim];
            ranks.extend(generic_power_ranks(&ctx, &acts.matrices(), p)?);
            let rank_vector = RankVector { ranks };
            let jordan = JordanType::from_rank_vector(p, &rank_vector)?;
            Ok(GenericTypeReport {
                jordan_string: jordan.to_string(),
                jordan,
                rank_vector,
                mode,
                samples: 0,
                field: (p, 1),
                seed,
                certified_by_single_sample: false,
            })
        }
        GenericMode::Random => {
            let samples = samples.max(1);
            for k in RANDOM_DEGREES {
                let ctx = field(p, k)?;
                let mut rng = module_rng(acts, seed, &format!("generic{k}"));
                let points: Vec<Vec<Fe>> = (0..samples).map(|_| random_point(&ctx, acts.n, &mut rng)).collect();
                let rvs: Vec<RankVector> =
                    points.par_iter().map(|a| rank_vector_at(acts, &ctx, a)).collect::<Result<_>>()?;
                let max = rvs.iter().skip(1).fold(rvs[0].clone(), |m, r| m.entrywise_max(r));
                if rvs.contains(&max) {
                    let jordan = JordanType::from_rank_vector(p, &max)?;
                    return Ok(GenericTypeReport {
                        jordan_string: jordan.to_string(),
                        jordan,
                        rank_vector: max,
                        mode,
                        samples,
                        field: (p, k),
                        seed,
                        certified_by_single_sample: true,
                    });
                }
            }
            Err(Error::CertificationFailed)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::Partition;
    use crate::spechtmod::{restricted_actions, ModuleKind};

    fn pt(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn jt(p: u32, blocks: &[usize]) -> JordanType {
        JordanType::new(p, blocks.to_vec())
    }

    #[test]
    fn rank_vector_round_trip() {
        let t = jt(3, &[6, 0, 558]);
        assert_eq!(t.dim(), 1680);
        assert_eq!(t.rank_vector().ranks, vec![1680, 1116, 558, 0]);
        assert_eq!(JordanType::from_rank_vector(3, &t.rank_vector()).unwrap(), t);
        assert_eq!(t.to_string(), "(3^558,1^6)");
        assert!(JordanType::from_rank_vector(3, &RankVector { ranks: vec![4, 3, 1, 0] }).is_err());
    }

    #[test]
    fn stable_types() {
        assert_eq!(stable_type(&jt(3, &[0, 0, 14])), jt(3, &[0, 0, 0]));
        assert_eq!(stable_type(&jt(3, &[0, 1, 2])), jt(3, &[0, 1, 0]));
        assert_eq!(stable_type(&jt(3, &[5, 0, 0])), jt(3, &[5, 0, 0]));
    }

    #[test]
    fn complementary_examples() {
        assert!(complementary_check(&jt(3, &[1, 0, 0]), &jt(3, &[0, 1, 0]), 3));
        assert!(!complementary_check(&jt(3, &[1, 0, 0]), &jt(3, &[1, 0, 0]), 3));
        assert!(complementary_check(&jt(3, &[0, 0, 0]), &jt(3, &[0, 0, 0]), 3));
    }

    #[test]
    fn trivial_module_type() {
        let f = field(3, 3).unwrap();
        let acts = restricted_actions(&pt("(9)"), 3, 3, false).unwrap();
        let alpha = [Fe(5), Fe(0), Fe(26)];
        assert_eq!(jordan_at_point(&acts, &f, &alpha).unwrap(), jt(3, &[1, 0, 0]));
        assert!(!is_free_at(&acts, &f, &alpha).unwrap());
        assert!(matches!(jordan_at_point(&acts, &f, &[Fe(0); 3]), Err(Error::ZeroPoint)));
    }

    #[test]
    fn regular_representation_is_free() {
        let f = field(3, 1).unwrap();
        let shift = MatrixFF::from_ints(&f, &[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0]]);
        let acts =
            RestrictedActions::from_matrices(ModuleKind::Specht, pt("(3)"), pt("(3)"), 3, vec![shift]);
        assert!(is_free_at(&acts, &f, &[Fe(1)]).unwrap());
        assert_eq!(jordan_at_point(&acts, &f, &[Fe(2)]).unwrap(), jt(3, &[0, 0, 1]));
    }

    #[test]
    fn square_partition_points() {
        let f = field(3, 1).unwrap();
        let acts = restricted_actions(&pt("(3,3,3)"), 3, 3, true).unwrap();
        assert_eq!(jordan_at_point(&acts, &f, &[Fe(1), Fe(1), Fe(0)]).unwrap(), jt(3, &[0, 0, 14]));
        assert!(is_free_at(&acts, &f, &[Fe(1), Fe(1), Fe(0)]).unwrap());
        let t = jordan_at_point(&acts, &f, &[Fe(1), Fe(1), Fe(1)]).unwrap();
        assert!(t.count(3) < 14);
        assert!(!is_free_at(&acts, &f, &[Fe(1), Fe(1), Fe(1)]).unwrap());
    }

    #[test]
    fn generic_type_of_hook() {
        let acts = restricted_actions(&pt("(8,1)"), 3, 3, false).unwrap();
        let rep = generic_type(&acts, GenericMode::Random, 7, DEFAULT_SAMPLES).unwrap();
        assert!(rep.certified_by_single_sample);
        assert_eq!(rep.jordan, jt(3, &[0, 1, 2]));
        assert_eq!(rep.jordan.stable(), jt(3, &[0, 1, 0]));
        let exact = generic_type(&acts, GenericMode::Exact, 0, 0).unwrap();
        assert_eq!(exact.jordan, rep.jordan);
    }

    #[test]
    fn generic_type_p_two() {
        let acts = restricted_actions(&pt("(4,2)"), 3, 2, false).unwrap();
        let rep = generic_type(&acts, GenericMode::Random, 1, DEFAULT_SAMPLES).unwrap();
        assert_eq!(rep.jordan.stable(), jt(2, &[1, 0]));
    }
}
