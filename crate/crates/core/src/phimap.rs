//! The node-moving map φ on partitions with empty p-core and at most p parts,
//! its stable limit Φ, the four sufficient hypotheses for a full rank variety,
//! and a variety/complexity predictor that only claims what a proven criterion gives.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partitions::{dim_specht, factorial_valuation, p_core_weight, Partition};

/// One application of φ: move a node from row `b` to row `a` (1-based).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhiStepData {
    pub a: usize,
    pub b: usize,
    /// μ with one node removed from row b.
    pub eta: Partition,
    pub result: Partition,
}

fn check_domain(mu: &Partition, p: usize) -> Result<()> {
    if mu.len() > p {
        return Err(Error::PreconditionViolated(format!("{mu} has more than {p} parts")));
    }
    let cd = p_core_weight(mu, p);
    if !cd.core.is_empty() {
        return Err(Error::PreconditionViolated(format!("{mu} has nonempty {p}-core {}", cd.core)));
    }
    Ok(())
}

/// Locates the rows `a < b`: `b` is the last row whose length is not a
/// multiple of p, and `a` the unique earlier row with
/// `μ_a - a ≡ μ_b - 1 - b (mod p)`. `None` when every part is a multiple of p.
pub fn find_ab(mu: &Partition, p: usize) -> Result<Option<PhiStepData>> {
    check_domain(mu, p)?;
    let parts = mu.parts();
    let Some(b0) = parts.iter().rposition(|&x| x % p != 0) else {
        return Ok(None);
    };
    let b = b0 + 1;
    let target = (parts[b0] as i64 - 1 - b as i64).rem_euclid(p as i64);
    let candidates: Vec<usize> = (1..b)
        .filter(|&a| (parts[a - 1] as i64 - a as i64).rem_euclid(p as i64) == target)
        .collect();
    if candidates.len() != 1 {
        return Err(Error::NonUniqueA { mu: mu.to_string(), candidates });
    }
    let a = candidates[0];
    let mut eta = parts.to_vec();
    eta[b0] -= 1;
    let eta = Partition::new(eta)?;
    let mut res = eta.parts().to_vec();
    res[a - 1] += 1;
    let result = Partition::new(res).map_err(|_| Error::PreconditionViolated(format!("row {a} of {mu} is not addable")))?;
    Ok(Some(PhiStepData { a, b, eta, result }))
}

/// φ(μ): μ(a) when the rows exist, μ itself when every part is divisible by p.
pub fn phi_step(mu: &Partition, p: usize) -> Result<Partition> {
    match find_ab(mu, p)? {
        None => Ok(mu.clone()),
        Some(step) => {
            let cd = p_core_weight(&step.result, p);
            if !cd.core.is_empty() {
                return Err(Error::PreconditionViolated(format!(
                    "phi({mu}) = {} has nonempty core {}",
                    step.result, cd.core
                )));
            }
            Ok(step.result)
        }
    }
}

/// The full orbit μ, φ(μ), ..., Φ(μ) (the fixed point appears once).
pub fn phi_chain(mu: &Partition, p: usize) -> Result<Vec<Partition>> {
    let limit = mu.size() * p + 1;
    let mut chain = vec![mu.clone()];
    for _ in 0..limit {
        let cur = chain.last().unwrap();
        let next = phi_step(cur, p)?;
        if &next == cur {
            return Ok(chain);
        }
        chain.push(next);
    }
    Err(Error::NonTermination(mu.to_string()))
}

/// Φ(μ), the fixed point of φ reached from μ.
pub fn phi_limit(mu: &Partition, p: usize) -> Result<Partition> {
    Ok(phi_chain(mu, p)?.pop().unwrap())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Hypothesis {
    H1,
    H2,
    H3,
    H4,
}

impl fmt::Display for Hypothesis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

fn two_part(phi: &Partition) -> Option<(usize, usize)> {
    (phi.len() == 2).then(|| (phi.part(0), phi.part(1)))
}

fn matches(h: Hypothesis, phi: &Partition, p: usize, n: usize) -> bool {
    let np = n * p;
    match h {
        Hypothesis::H3 => phi.parts() == [np],
        Hypothesis::H1 => {
            p % 2 == 1
                && n == p
                && two_part(phi).is_some_and(|(_, y)| y % p == 0 && (1..).take_while(|m| 2 * m < p).any(|m| y == m * p))
        }
        Hypothesis::H2 => {
            p % 2 == 1 && n % p != 2 % p && two_part(phi).is_some_and(|(_, y)| y == p || y == 2 * p)
        }
        Hypothesis::H4 => {
            p == 2
                && two_part(phi).is_some_and(|(x, y)| (y == 2 && (x, y) != (2, 2)) || (y == 4 && (x, y) != (4, 4)))
        }
    }
}

/// Checked in the order H3, H2, H1, H4; the first match is returned.
pub const HYPOTHESIS_ORDER: [Hypothesis; 4] = [Hypothesis::H3, Hypothesis::H2, Hypothesis::H1, Hypothesis::H4];

/// Which of the hypotheses H1–H4 the partition satisfies, if any.
pub fn classify_hypothesis(mu: &Partition, p: usize, n: usize) -> Result<Option<Hypothesis>> {
    if mu.size() != n * p {
        return Err(Error::PreconditionViolated(format!("|{mu}| != {n}*{p}")));
    }
    let phi = phi_limit(mu, p)?;
    Ok(HYPOTHESIS_ORDER.into_iter().find(|&h| matches(h, &phi, p, n)))
}

/// Every hypothesis that holds, in check order.
pub fn all_hypotheses(mu: &Partition, p: usize, n: usize) -> Result<Vec<Hypothesis>> {
    if mu.size() != n * p {
        return Err(Error::PreconditionViolated(format!("|{mu}| != {n}*{p}")));
    }
    let phi = phi_limit(mu, p)?;
    Ok(HYPOTHESIS_ORDER.into_iter().filter(|&h| matches(h, &phi, p, n)).collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PredictedVariety {
    /// The whole of k^n for the rank-n subgroup E_n.
    FullRankN,
    /// Pulled back from the defect group; dimension `w`.
    DefectDim(usize),
    Unknown,
}

/// The argument a prediction rests on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PredictionBasis {
    /// Weight below p: abelian defect group, complexity equals the weight.
    AbelianDefect,
    /// p does not divide dim S^μ, so the variety is that of the trivial module.
    DimensionCoprime,
    /// One of H1–H4 holds for μ (or for its conjugate).
    Hypothesis,
    None,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Prediction {
    pub mu: Partition,
    pub core: Partition,
    pub weight: usize,
    /// Rank of E_n, `⌊|μ|/p⌋`.
    pub n: usize,
    pub hypothesis: Option<Hypothesis>,
    /// The partition the hypothesis was checked on (μ or μ').
    pub classified_on: Option<Partition>,
    pub predicted_variety: PredictedVariety,
    pub predicted_complexity: Option<usize>,
    pub basis: PredictionBasis,
    /// For weight < p: whether `gcd(|D| dim / p^a, p) = 1`.
    pub defect_gcd_condition: Option<bool>,
}

fn dim_valuation(mu: &Partition, p: usize) -> u32 {
    let mut d = dim_specht(mu);
    let mut v = 0;
    while d.is_multiple_of(p as u128) {
        d /= p as u128;
        v += 1;
    }
    v
}

/// Predicts the rank variety of S^μ restricted to E_n and the complexity of
/// S^μ. Anything not covered by a known criterion is `Unknown`.
pub fn predict(mu: &Partition, p: usize) -> Prediction {
    let cd = p_core_weight(mu, p);
    let n = mu.size() / p;
    let mut pred = Prediction {
        mu: mu.clone(),
        core: cd.core.clone(),
        weight: cd.weight,
        n,
        hypothesis: None,
        classified_on: None,
        predicted_variety: PredictedVariety::Unknown,
        predicted_complexity: None,
        basis: PredictionBasis::None,
        defect_gcd_condition: None,
    };
    let w = cd.weight;
    if w < p {
        // |D| = p^w; p^a is the p-part of |S_m|.
        let a = factorial_valuation(mu.size(), p);
        let gcd_ok = dim_valuation(mu, p) + w as u32 == a;
        pred.defect_gcd_condition = Some(gcd_ok);
        pred.predicted_complexity = Some(w);
        pred.basis = PredictionBasis::AbelianDefect;
        if gcd_ok {
            pred.predicted_variety = PredictedVariety::DefectDim(w);
        }
        return pred;
    }
    if !dim_specht(mu).is_multiple_of(p as u128) {
        pred.predicted_variety = PredictedVariety::FullRankN;
        pred.predicted_complexity = Some(n);
        pred.basis = PredictionBasis::DimensionCoprime;
        return pred;
    }
    if mu.size() == n * p && cd.core.is_empty() {
        let conj = mu.conjugate();
        let candidate = if mu.len() <= p {
            Some(mu.clone())
        } else if conj.len() <= p {
            Some(conj)
        } else {
            None
        };
        if let Some(on) = candidate {
            if let Ok(Some(h)) = classify_hypothesis(&on, p, n) {
                pred.hypothesis = Some(h);
                pred.classified_on = Some(on);
                pred.predicted_variety = PredictedVariety::FullRankN;
                pred.predicted_complexity = Some(n);
                pred.basis = PredictionBasis::Hypothesis;
            }
        }
    }
    pred
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn find_ab_examples() {
        let s = find_ab(&pt("(4,3,2)"), 3).unwrap().unwrap();
        assert_eq!((s.a, s.b), (2, 3));
        assert_eq!(find_ab(&pt("(3,3,3)"), 3).unwrap(), None);
        let s = find_ab(&pt("(5,2,2)"), 3).unwrap().unwrap();
        assert_eq!((s.a, s.b), (1, 3));
        assert_eq!(s.eta, pt("(5,2,1)"));
    }

    #[test]
    fn find_ab_preconditions() {
        assert!(matches!(find_ab(&pt("(7,2)"), 3), Err(Error::PreconditionViolated(_))));
        assert!(matches!(find_ab(&pt("(3,2,2,2)"), 3), Err(Error::PreconditionViolated(_))));
    }

    #[test]
    fn phi_examples() {
        assert_eq!(phi_step(&pt("(4,3,2)"), 3).unwrap(), pt("(4,4,1)"));
        assert_eq!(phi_step(&pt("(5,2,2)"), 3).unwrap(), pt("(6,2,1)"));
        assert_eq!(phi_step(&pt("(6,3)"), 3).unwrap(), pt("(6,3)"));
        assert_eq!(
            phi_chain(&pt("(4,3,2)"), 3).unwrap(),
            vec![pt("(4,3,2)"), pt("(4,4,1)"), pt("(5,4)"), pt("(6,3)")]
        );
        assert_eq!(phi_limit(&pt("(9)"), 3).unwrap(), pt("(9)"));
    }

    #[test]
    fn hypothesis_examples() {
        assert_eq!(classify_hypothesis(&pt("(4,3,2)"), 3, 3).unwrap(), Some(Hypothesis::H2));
        assert_eq!(all_hypotheses(&pt("(4,3,2)"), 3, 3).unwrap(), vec![Hypothesis::H2, Hypothesis::H1]);
        assert_eq!(classify_hypothesis(&pt("(9)"), 3, 3).unwrap(), Some(Hypothesis::H3));
        assert_eq!(classify_hypothesis(&pt("(3,3,3)"), 3, 3).unwrap(), None);
        assert!(classify_hypothesis(&pt("(4,3,2)"), 3, 2).is_err());
        // p = 2: (2n-2, 2) with n = 3
        assert_eq!(classify_hypothesis(&pt("(4,2)"), 2, 3).unwrap(), Some(Hypothesis::H4));
        assert_eq!(classify_hypothesis(&pt("(2,2)"), 2, 2).unwrap(), None);
        assert_eq!(classify_hypothesis(&pt("(4,4)"), 2, 4).unwrap(), None);
        assert_eq!(classify_hypothesis(&pt("(6,4)"), 2, 5).unwrap(), Some(Hypothesis::H4));
    }

    #[test]
    fn h2_excludes_n_congruent_two() {
        // n = 5 ≡ 2 (mod 3): (12,3) is two-part with ε = 1 but H2 fails, and H1 needs n = p.
        assert_eq!(classify_hypothesis(&pt("(12,3)"), 3, 5).unwrap(), None);
        assert_eq!(classify_hypothesis(&pt("(9,3)"), 3, 4).unwrap(), Some(Hypothesis::H2));
    }

    #[test]
    fn predict_examples() {
        let p = predict(&pt("(7,2)"), 3);
        assert_eq!(p.predicted_complexity, Some(1));
        assert_eq!(p.predicted_variety, PredictedVariety::DefectDim(1));
        let p = predict(&pt("(5,3,1)"), 3);
        assert_eq!(p.predicted_complexity, Some(0));
        assert_eq!(p.predicted_variety, PredictedVariety::DefectDim(0));
        let p = predict(&pt("(3,3,3)"), 3);
        assert_eq!(p.predicted_variety, PredictedVariety::Unknown);
        assert_eq!(p.predicted_complexity, None);
        // more than p parts: classified through the conjugate
        let p = predict(&pt("(2,2,2,1,1,1)"), 3);
        assert_eq!(p.classified_on, Some(pt("(6,3)")));
        assert_eq!(p.hypothesis, Some(Hypothesis::H2));
        assert_eq!(p.predicted_complexity, Some(3));
    }

    #[test]
    fn predictor_on_partitions_of_nine() {
        let axes = ["(7,2)", "(5,2,1,1)", "(4,3,1,1)"].map(pt);
        for mu in Partition::all(9) {
            let pred = predict(&mu, 3);
            let rep = [mu.clone(), mu.conjugate()];
            let want = if rep.iter().any(|m| axes.contains(m)) {
                PredictedVariety::DefectDim(1)
            } else if rep.contains(&pt("(5,3,1)")) {
                PredictedVariety::DefectDim(0)
            } else if mu == pt("(3,3,3)") {
                PredictedVariety::Unknown
            } else {
                PredictedVariety::FullRankN
            };
            assert_eq!(pred.predicted_variety, want, "{mu}");
        }
    }
}
