//! Partition combinatorics: conjugation, hooks, the hook-length formula, the
//! abacus with p-cores and p-weights, and base-p containment.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A weakly decreasing sequence of positive integers. The empty partition is
/// a valid value.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    /// Trailing zero parts are dropped; any other violation is an error.
    pub fn new(mut parts: Vec<usize>) -> Result<Partition> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.contains(&0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!("{parts:?} is not weakly decreasing and positive")));
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Partition {
        Partition::default()
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Number of nonzero parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// |μ|.
    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// The i-th part, 0-based, with zero past the end.
    pub fn part(&self, i: usize) -> usize {
        self.parts.get(i).copied().unwrap_or(0)
    }

    /// Transpose of the Young diagram.
    pub fn conjugate(&self) -> Partition {
        let width = self.part(0);
        let parts = (0..width).map(|j| self.parts.iter().take_while(|&&x| x > j).count()).collect();
        Partition { parts }
    }

    /// Hook length `arm + leg + 1` of every node, keyed by 1-based (row, col).
    pub fn hook_lengths(&self) -> BTreeMap<(usize, usize), usize> {
        let conj = self.conjugate();
        let mut out = BTreeMap::new();
        for (i, &row) in self.parts.iter().enumerate() {
            for j in 0..row {
                let arm = row - j - 1;
                let leg = conj.parts[j] - i - 1;
                out.insert((i + 1, j + 1), arm + leg + 1);
            }
        }
        out
    }

    /// All partitions obtained by removing one removable node.
    pub fn branching_set(&self) -> Vec<Partition> {
        (0..self.len())
            .filter(|&i| self.part(i) > self.part(i + 1))
            .map(|i| {
                let mut parts = self.parts.clone();
                parts[i] -= 1;
                Partition::new(parts).expect("removing a corner keeps a partition")
            })
            .collect()
    }

    /// Every part a multiple of p and every multiplicity a multiple of p.
    pub fn is_pxp_blocks(&self, p: usize) -> bool {
        let mut mult: BTreeMap<usize, usize> = BTreeMap::new();
        for &x in &self.parts {
            *mult.entry(x).or_default() += 1;
        }
        mult.iter().all(|(&part, &m)| part % p == 0 && m % p == 0)
    }

    /// All partitions of n in reverse lexicographic order, starting with (n).
    pub fn all(n: usize) -> Vec<Partition> {
        fn rec(rem: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if rem == 0 {
                out.push(Partition { parts: prefix.clone() });
                return;
            }
            for x in (1..=rem.min(max)).rev() {
                prefix.push(x);
                rec(rem - x, x, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, n, &mut Vec::new(), &mut out);
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Accepts `(4,3,2)`, `4,3,2` and `()`.
    fn from_str(s: &str) -> Result<Partition> {
        let t = s.trim();
        let inner = t.strip_prefix('(').and_then(|x| x.strip_suffix(')')).unwrap_or(t).trim();
        if inner.is_empty() {
            return Ok(Partition::empty());
        }
        let parts = inner
            .split(',')
            .map(|x| x.trim().parse::<usize>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|e| Error::InvalidPartition(format!("{s:?}: {e}")))?;
        if parts.contains(&0) {
            return Err(Error::InvalidPartition(format!("{s:?}: parts must be positive")));
        }
        Partition::new(parts)
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

fn primes_up_to(n: usize) -> Vec<usize> {
    (2..=n).filter(|&x| (2..x).take_while(|d| d * d <= x).all(|d| x % d != 0)).collect()
}

fn valuation(mut n: usize, p: usize) -> u32 {
    let mut v = 0;
    while n > 0 && n.is_multiple_of(p) {
        n /= p;
        v += 1;
    }
    v
}

/// Exponent of p in m!.
pub fn factorial_valuation(m: usize, p: usize) -> u32 {
    (1..=m).map(|x| valuation(x, p)).sum()
}

/// `|μ|! / Π h_ij`, computed by cancelling prime exponents.
pub fn dim_specht(mu: &Partition) -> u128 {
    let m = mu.size();
    let hooks = mu.hook_lengths();
    let mut out: u128 = 1;
    for p in primes_up_to(m) {
        let e = factorial_valuation(m, p) - hooks.values().map(|&h| valuation(h, p)).sum::<u32>();
        out = out.checked_mul((p as u128).pow(e)).expect("dimension fits in u128");
    }
    out
}

/// Number of standard Young tableaux, by exhaustive backtracking.
pub fn syt_count(mu: &Partition) -> Result<u128> {
    if mu.size() > 16 {
        return Err(Error::TooLarge(format!("syt_count needs |mu| <= 16, got {}", mu.size())));
    }
    fn rec(filled: &mut Vec<usize>, shape: &[usize], left: usize) -> u128 {
        if left == 0 {
            return 1;
        }
        let mut total = 0;
        for i in 0..shape.len() {
            let ok = filled[i] < shape[i] && (i == 0 || filled[i - 1] > filled[i]);
            if ok {
                filled[i] += 1;
                total += rec(filled, shape, left - 1);
                filled[i] -= 1;
            }
        }
        total
    }
    let mut filled = vec![0; mu.len()];
    Ok(rec(&mut filled, mu.parts(), mu.size()))
}

/// Bead positions on a p-runner abacus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbacusState {
    pub p: usize,
    pub beads: BTreeSet<usize>,
}

impl AbacusState {
    /// First-column hook lengths: beads `μ_i + (s - i)` for `s` parts.
    pub fn of(mu: &Partition, p: usize) -> AbacusState {
        let s = mu.len();
        let beads = mu.parts().iter().enumerate().map(|(i, &x)| x + (s - 1 - i)).collect();
        AbacusState { p, beads }
    }

    /// Shifts every bead by `t` and adds beads `0..t`; the partition is
    /// unchanged.
    pub fn with_extra_beads(&self, t: usize) -> AbacusState {
        let beads = (0..t).chain(self.beads.iter().map(|&b| b + t)).collect();
        AbacusState { p: self.p, beads }
    }

    pub fn partition(&self) -> Partition {
        let s = self.beads.len();
        let parts = self.beads.iter().rev().enumerate().map(|(i, &b)| b - (s - 1 - i)).collect();
        Partition::new(parts).expect("distinct beads give a partition")
    }

    /// Count of beads on each runner.
    pub fn runner_counts(&self) -> Vec<usize> {
        let mut c = vec![0; self.p];
        for &b in &self.beads {
            c[b % self.p] += 1;
        }
        c
    }
}

/// The p-core and p-weight of a partition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoreData {
    pub core: Partition,
    pub weight: usize,
}

/// Slides every bead up its runner as far as it goes; the core is read off
/// the final beads and the weight is the total number of slides.
pub fn p_core_weight(mu: &Partition, p: usize) -> CoreData {
    let ab = AbacusState::of(mu, p);
    let mut beads: BTreeSet<usize> = BTreeSet::new();
    let mut weight = 0;
    for &b in &ab.beads {
        let mut pos = b;
        while pos >= p && !beads.contains(&(pos - p)) {
            pos -= p;
            weight += 1;
        }
        beads.insert(pos);
    }
    let core = AbacusState { p, beads }.partition();
    CoreData { core, weight }
}

/// Base-p digitwise `m <= n`.
pub fn contained_p(m: u64, n: u64, p: u64) -> bool {
    let (mut m, mut n) = (m, n);
    while m > 0 {
        if m % p > n % p {
            return false;
        }
        m /= p;
        n /= p;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn conjugate_examples() {
        assert_eq!(pt("(3,3,3)").conjugate(), pt("(3,3,3)"));
        assert_eq!(pt("(7,2)").conjugate(), pt("(2,2,1,1,1,1,1)"));
        assert_eq!(Partition::empty().conjugate(), Partition::empty());
    }

    #[test]
    fn hook_examples() {
        let h = pt("(2,1)").hook_lengths();
        assert_eq!(h.into_iter().collect::<Vec<_>>(), vec![((1, 1), 3), ((1, 2), 1), ((2, 1), 1)]);
        let h = pt("(3,3,3)").hook_lengths();
        let rows: Vec<Vec<usize>> = (1..=3).map(|i| (1..=3).map(|j| h[&(i, j)]).collect()).collect();
        assert_eq!(rows, vec![vec![5, 4, 3], vec![4, 3, 2], vec![3, 2, 1]]);
        let h = pt("(8,1)").hook_lengths();
        let first: Vec<usize> = (1..=8).map(|j| h[&(1, j)]).collect();
        assert_eq!(first, vec![9, 7, 6, 5, 4, 3, 2, 1]);
        assert_eq!(h[&(2, 1)], 1);
    }

    #[test]
    fn dimension_examples() {
        assert_eq!(dim_specht(&pt("(2,1)")), 2);
        assert_eq!(dim_specht(&pt("(3,3,3)")), 42);
        assert_eq!(dim_specht(&pt("(8,1)")), 8);
        assert_eq!(dim_specht(&Partition::empty()), 1);
    }

    #[test]
    fn syt_examples() {
        assert_eq!(syt_count(&pt("(2,1)")).unwrap(), 2);
        assert_eq!(syt_count(&pt("(7)")).unwrap(), 1);
        assert_eq!(syt_count(&pt("(1,1,1)")).unwrap(), 1);
        assert!(matches!(syt_count(&pt("(17)")), Err(Error::TooLarge(_))));
    }

    #[test]
    fn core_examples() {
        assert_eq!(p_core_weight(&pt("(3,3,2)"), 3), CoreData { core: pt("(3,1,1)"), weight: 1 });
        assert_eq!(p_core_weight(&pt("(3,3,3)"), 3), CoreData { core: Partition::empty(), weight: 3 });
        assert_eq!(p_core_weight(&pt("(7,2)"), 3), CoreData { core: pt("(4,2)"), weight: 1 });
    }

    #[test]
    fn containment_examples() {
        assert!(contained_p(3, 7, 2));
        assert!(!contained_p(1, 2, 2));
        assert!(!contained_p(5, 4, 7));
        assert!(contained_p(0, 0, 3));
    }

    #[test]
    fn branching_examples() {
        assert_eq!(pt("(3,3,3)").branching_set(), vec![pt("(3,3,2)")]);
        let mut b = pt("(2,1)").branching_set();
        b.sort();
        assert_eq!(b, vec![pt("(1,1)"), pt("(2)")]);
        let mut b = pt("(7,2)").branching_set();
        b.sort();
        assert_eq!(b, vec![pt("(6,2)"), pt("(7,1)")]);
    }

    #[test]
    fn block_examples() {
        assert!(pt("(3,3,3)").is_pxp_blocks(3));
        assert!(!pt("(6,3)").is_pxp_blocks(3));
        assert!(Partition::empty().is_pxp_blocks(5));
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(pt("(4,3,2)").to_string(), "(4,3,2)");
        assert_eq!(pt(" 4, 3 ,2 ").to_string(), "(4,3,2)");
        assert_eq!(pt("()"), Partition::empty());
        assert!("(2,3)".parse::<Partition>().is_err());
        assert!("(2,0,1)".parse::<Partition>().is_err());
        assert!("(a)".parse::<Partition>().is_err());
        assert_eq!(Partition::all(9).len(), 30);
    }

    #[test]
    fn abacus_extra_beads_keep_partition() {
        let mu = pt("(5,2,2)");
        let ab = AbacusState::of(&mu, 3);
        assert_eq!(ab.beads, [2, 3, 7].into_iter().collect());
        assert_eq!(ab.with_extra_beads(2).partition(), mu);
    }
}
