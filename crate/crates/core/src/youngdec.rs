//! Young summands of two-part permutation modules and the generic Jordan type
//! of permutation modules whose parts are multiples of p.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::jordan::JordanType;
use crate::partitions::{contained_p, Partition};
use crate::spechtmod::tabloid_count;

/// The s for which Y^{(r-s,s)} is a summand of M^{(r-m,m)}. Each occurs once.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SummandSet {
    pub r: usize,
    /// The second part after normalizing `m > r/2` to `r - m`.
    pub m: usize,
    pub p: u64,
    pub s_values: BTreeSet<usize>,
}

/// `{s <= m : m - s ⊆_p r - 2s}`. Since M^{(r-m,m)} and M^{(m,r-m)} are
/// isomorphic, `m > r/2` is replaced by `r - m`.
pub fn young_summands(r: usize, m: usize, p: u64) -> Result<SummandSet> {
    if m > r {
        return Err(Error::PreconditionViolated(format!("m = {m} exceeds r = {r}")));
    }
    let m = m.min(r - m);
    let s_values = (0..=m).filter(|&s| contained_p((m - s) as u64, (r - 2 * s) as u64, p)).collect();
    Ok(SummandSet { r, m, p, s_values })
}

/// One containment `summands(lhs) ⊆ summands(rhs)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContainmentCase {
    pub r: usize,
    pub m_lhs: usize,
    pub m_rhs: usize,
    pub lhs: BTreeSet<usize>,
    pub rhs: BTreeSet<usize>,
    /// Values of `s` left out of the comparison.
    pub excluded: BTreeSet<usize>,
    pub holds: bool,
    pub strict: bool,
    /// Specht factors `(r-j, j)` of the complement, for `m_lhs < j <= m_rhs`.
    pub complement_factors: Vec<Partition>,
    pub skipped: Option<String>,
}

fn containment(r: usize, m_lhs: usize, m_rhs: usize, p: u64, excluded: BTreeSet<usize>) -> Result<ContainmentCase> {
    let (left, right) = (young_summands(r, m_lhs, p)?, young_summands(r, m_rhs, p)?);
    let (m_lhs, m_rhs, lhs, rhs) = (left.m, right.m, left.s_values, right.s_values);
    let holds = lhs.difference(&excluded).all(|s| rhs.contains(s));
    let strict = holds && rhs.iter().any(|s| !lhs.contains(s));
    let complement_factors = (m_lhs + 1..=m_rhs).map(|j| Partition::new(vec![r - j, j])).collect::<Result<_>>()?;
    Ok(ContainmentCase { r, m_lhs, m_rhs, lhs, rhs, excluded, holds, strict, complement_factors, skipped: None })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorollaryReport {
    pub p: u64,
    pub cases: Vec<ContainmentCase>,
}

impl CorollaryReport {
    pub fn all_hold(&self) -> bool {
        self.cases.iter().all(|c| c.skipped.is_some() || c.holds)
    }
}

fn require_odd(p: u64) -> Result<()> {
    if p.is_multiple_of(2) || !crate::ffalg::is_prime(p) {
        return Err(Error::PreconditionViolated(format!("{p} is not an odd prime")));
    }
    Ok(())
}

/// For `p < m <= p^2/2`: every summand of M^{(p^2-m+p, m-p)} is a summand of
/// M^{(p^2-m, m)}.
pub fn verify_cor_psquare(p: u64) -> Result<CorollaryReport> {
    require_odd(p)?;
    let r = (p * p) as usize;
    let p_us = p as usize;
    let cases = (p_us + 1..=r / 2).map(|m| containment(r, m - p_us, m, p, BTreeSet::new())).collect::<Result<_>>()?;
    Ok(CorollaryReport { p, cases })
}

/// Compares M^{(np-p, p)} with M^{(np-2p, 2p)}. For `n ≢ 1, 2 (mod p)` every
/// summand of the first is a summand of the second; for `n ≡ 1` the same
/// holds once the trivial summand (s = 0) is set aside, and the trivial
/// module must then be a summand of the first but not of the second.
/// `n ≡ 2` is reported as skipped.
pub fn verify_cor_multiple(n: usize, p: u64) -> Result<CorollaryReport> {
    require_odd(p)?;
    if n < 3 {
        return Err(Error::PreconditionViolated(format!("n = {n} < 3")));
    }
    let p_us = p as usize;
    let r = n * p_us;
    let residue = (n as u64 % p) as usize;
    let mut case = match residue {
        1 => {
            let mut c = containment(r, p_us, 2 * p_us, p, BTreeSet::from([0]))?;
            c.holds &= c.lhs.contains(&0) && !c.rhs.contains(&0);
            c
        }
        _ => containment(r, p_us, 2 * p_us, p, BTreeSet::new())?,
    };
    if residue == 2 {
        case.skipped = Some(format!("n = {n} ≡ 2 (mod {p})"));
    }
    Ok(CorollaryReport { p, cases: vec![case] })
}

/// Generic Jordan type `(p^a, 1^b)` of M^μ restricted to E_n for
/// `μ = (n_1 p, ..., n_s p)`: `b = n!/(n_1!...n_s!)` counts the tabloids
/// fixed by E_n and `a = (dim M^μ - b)/p`.
pub fn perm_generic_type_formula(mu: &Partition, n: usize, p: u32) -> Result<JordanType> {
    let pu = p as usize;
    if mu.size() != n * pu || mu.parts().iter().any(|x| x % pu != 0) {
        return Err(Error::NotBlockMultiple(format!("{mu} for n = {n}, p = {p}")));
    }
    let blocks = Partition::new(mu.parts().iter().map(|x| x / pu).collect())?;
    let b = tabloid_count(&blocks) as usize;
    let dim = tabloid_count(mu) as usize;
    let mut counts = vec![0; pu];
    counts[0] += b;
    counts[pu - 1] += (dim - b) / pu;
    Ok(JordanType::new(p, counts))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn summand_examples() {
        let s = young_summands(9, 4, 3).unwrap().s_values;
        assert!(s.contains(&1) && s.contains(&4));
        assert!(!s.contains(&0));
        assert_eq!(s, BTreeSet::from([1, 2, 4]));
        assert_eq!(young_summands(9, 0, 3).unwrap().s_values, BTreeSet::from([0]));
        assert_eq!(young_summands(9, 1, 3).unwrap().s_values, BTreeSet::from([1]));
        assert_eq!(young_summands(9, 6, 3).unwrap(), young_summands(9, 3, 3).unwrap());
    }

    #[test]
    fn psquare_sweeps() {
        let r = verify_cor_psquare(3).unwrap();
        assert_eq!(r.cases.len(), 1);
        assert_eq!(r.cases[0].m_rhs, 4);
        assert!(r.all_hold());
        assert!(r.cases[0].strict);
        let r = verify_cor_psquare(5).unwrap();
        assert_eq!(r.cases.iter().map(|c| c.m_rhs).collect::<Vec<_>>(), (6..=12).collect::<Vec<_>>());
        assert!(r.all_hold());
        assert!(verify_cor_psquare(2).is_err());
    }

    #[test]
    fn multiple_sweeps() {
        assert!(verify_cor_multiple(3, 3).unwrap().all_hold());
        let r = verify_cor_multiple(4, 3).unwrap();
        assert!(r.cases[0].lhs.contains(&0) && !r.cases[0].rhs.contains(&0));
        assert!(r.all_hold());
        assert!(verify_cor_multiple(5, 3).unwrap().cases[0].skipped.is_some());
        for n in 3..=12 {
            assert!(verify_cor_multiple(n, 3).unwrap().all_hold(), "n = {n}");
        }
    }

    #[test]
    fn permutation_formula() {
        assert_eq!(perm_generic_type_formula(&pt("(3,3,3)"), 3, 3).unwrap(), JordanType::new(3, vec![6, 0, 558]));
        assert_eq!(perm_generic_type_formula(&pt("(9)"), 3, 3).unwrap(), JordanType::new(3, vec![1, 0, 0]));
        assert_eq!(perm_generic_type_formula(&pt("(6,3)"), 3, 3).unwrap(), JordanType::new(3, vec![3, 0, 27]));
        assert!(matches!(perm_generic_type_formula(&pt("(5,4)"), 3, 3), Err(Error::NotBlockMultiple(_))));
    }
}
