//! The non-free locus of a restricted module over GF(p^k), its classification
//! against a small catalogue of varieties, and dimension estimates from point
//! counts.

use std::collections::BTreeSet;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ffalg::{field, Fe, FieldCtx, MatrixFF, MultiPoly};
use crate::jordan::{is_free_at, rank_vector_at, RankVector};
use crate::partitions::Partition;
use crate::spechtmod::{restricted_actions_cached, RestrictedActions};

/// Largest projective point count swept exhaustively.
pub const MAX_POINTS: u64 = 1_000_000;
/// Highest degree tried when looking for a defining form.
pub const MAX_FORM_DEGREE: u32 = 8;

/// `(q^n - 1) / (q - 1)`.
pub fn projective_point_count(q: u64, n: usize) -> u64 {
    (0..n as u32).map(|i| q.saturating_pow(i)).fold(0u64, u64::saturating_add)
}

/// Representatives of the points of P^{n-1}(GF(q)), first nonzero coordinate 1,
/// in lexicographic order of codes.
pub fn projective_points(ctx: &FieldCtx, n: usize) -> Result<Vec<Vec<Fe>>> {
    let q = ctx.order() as u64;
    let total = projective_point_count(q, n);
    if total > MAX_POINTS {
        return Err(Error::TooManyPoints(total));
    }
    let mut out = Vec::with_capacity(total as usize);
    for lead in (0..n).rev() {
        let free = n - 1 - lead;
        for code in 0..q.pow(free as u32) {
            let mut pt = vec![Fe::ZERO; n];
            pt[lead] = Fe::ONE;
            let mut c = code;
            for slot in pt[lead + 1..].iter_mut().rev() {
                *slot = Fe((c % q) as u32);
                c /= q;
            }
            out.push(pt);
        }
    }
    Ok(out)
}

/// Scales a nonzero point so its first nonzero coordinate is 1.
pub fn normalize(ctx: &FieldCtx, pt: &[Fe]) -> Vec<Fe> {
    let lead = pt.iter().find(|a| !a.is_zero()).copied().unwrap_or(Fe::ONE);
    let inv = ctx.inv(lead).expect("nonzero");
    pt.iter().map(|&a| ctx.mul(inv, a)).collect()
}

/// The projective points over GF(p^k) where a restricted module is not free.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocusSample {
    pub mu: Partition,
    pub computed_on: Partition,
    pub p: u32,
    pub n: usize,
    pub ext_degree: u32,
    /// Normalized representatives, sorted.
    pub points: BTreeSet<Vec<Fe>>,
    pub total_projective_points: u64,
    /// Whether the locus is closed under scaling each coordinate by GF(p)^×.
    pub scaling_invariant: bool,
}

impl LocusSample {
    pub fn field(&self) -> Result<std::sync::Arc<FieldCtx>> {
        field(self.p, self.ext_degree)
    }

    /// Affine count of the cone: every projective point gives q - 1 nonzero
    /// vectors, plus the origin.
    pub fn affine_count(&self) -> u64 {
        let q = (self.p as u64).pow(self.ext_degree);
        self.points.len() as u64 * (q - 1) + 1
    }
}

fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for k in 0..n {
        out = out
            .into_iter()
            .flat_map(|perm| {
                (0..=k).map(move |pos| {
                    let mut p = perm.clone();
                    p.insert(pos, k);
                    p
                })
            })
            .collect();
    }
    out
}

fn permutation_closed(ctx: &FieldCtx, points: &BTreeSet<Vec<Fe>>, n: usize) -> bool {
    let perms = all_permutations(n);
    points.iter().all(|pt| {
        perms.iter().all(|s| {
            let moved: Vec<Fe> = s.iter().map(|&i| pt[i]).collect();
            points.contains(&normalize(ctx, &moved))
        })
    })
}

fn scaling_closed(ctx: &FieldCtx, points: &BTreeSet<Vec<Fe>>) -> bool {
    let units: Vec<Fe> = (1..ctx.p()).map(Fe).collect();
    points.iter().all(|pt| {
        (0..pt.len()).all(|i| {
            units.iter().all(|&c| {
                let mut moved = pt.clone();
                moved[i] = ctx.mul(c, moved[i]);
                points.contains(&normalize(ctx, &moved))
            })
        })
    })
}

/// Tests freeness at one representative of every projective point over
/// GF(p^k). The locus must be closed under permuting coordinates; for
/// partitions made of p×p blocks it must also be closed under scaling
/// single coordinates by GF(p)^×.
pub fn enumerate_locus(acts: &RestrictedActions, k: u32) -> Result<LocusSample> {
    let ctx = field(acts.p, k)?;
    let pts = projective_points(&ctx, acts.n)?;
    let total = pts.len() as u64;
    let flags: Vec<bool> = pts.par_iter().map(|a| is_free_at(acts, &ctx, a)).collect::<Result<_>>()?;
    let points: BTreeSet<Vec<Fe>> = pts.into_iter().zip(flags).filter(|(_, free)| !free).map(|(a, _)| a).collect();
    if !permutation_closed(&ctx, &points, acts.n) {
        return Err(Error::InvariantViolated(format!("locus of {} is not permutation invariant", acts.mu)));
    }
    let scaling_invariant = scaling_closed(&ctx, &points);
    if !scaling_invariant && acts.mu.is_pxp_blocks(acts.p as usize) {
        return Err(Error::InvariantViolated(format!("locus of {} is not scaling invariant", acts.mu)));
    }
    Ok(LocusSample {
        mu: acts.mu.clone(),
        computed_on: acts.computed_on.clone(),
        p: acts.p,
        n: acts.n,
        ext_degree: k,
        points,
        total_projective_points: total,
        scaling_invariant,
    })
}

/// Freeness and rank vector at every projective point, for tabular output.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointRecord {
    pub point: Vec<Fe>,
    pub free: bool,
    pub ranks: RankVector,
}

pub fn sweep_points(acts: &RestrictedActions, k: u32) -> Result<Vec<PointRecord>> {
    let ctx = field(acts.p, k)?;
    let pts = projective_points(&ctx, acts.n)?;
    let p = acts.p as usize;
    pts.into_par_iter()
        .map(|point| {
            let ranks = rank_vector_at(acts, &ctx, &point)?;
            let free = acts.dim.is_multiple_of(p) && ranks.ranks[p - 1] == acts.dim / p;
            Ok(PointRecord { point, free, ranks })
        })
        .collect()
}

/// Basis of the homogeneous degree-`degree` forms with GF(p) coefficients
/// vanishing at every locus point, in reduced echelon form over the
/// lexicographically descending monomial order.
pub fn interpolate_forms(sample: &LocusSample, degree: u32) -> Result<Vec<MultiPoly>> {
    let ctx = sample.field()?;
    let p = sample.p;
    let monos = MultiPoly::monomials_of_degree(sample.n, degree);
    let k = sample.ext_degree as usize;
    let mut rows = Vec::with_capacity(sample.points.len() * k);
    for pt in &sample.points {
        let digits: Vec<Vec<u32>> = monos
            .iter()
            .map(|e| {
                let v = pt.iter().zip(e).fold(Fe::ONE, |acc, (&x, &d)| ctx.mul(acc, ctx.pow(x, d as u64)));
                ctx.coeffs(v)
            })
            .collect();
        // each GF(p^k) equation is k equations over GF(p)
        for j in 0..k {
            rows.extend(digits.iter().map(|d| Fe(d.get(j).copied().unwrap_or(0))));
        }
    }
    let prime = field(p, 1)?;
    let system = MatrixFF::from_vec(rows.len() / monos.len().max(1), monos.len(), rows)?;
    let kernel = system.nullspace(&prime);
    if kernel.is_empty() {
        return Ok(Vec::new());
    }
    let flat: Vec<Fe> = kernel.iter().flatten().copied().collect();
    let mut basis = MatrixFF::from_vec(kernel.len(), monos.len(), flat)?;
    let pivots = basis.rref(&prime);
    Ok((0..pivots.len())
        .map(|r| {
            let mut f = MultiPoly::zero(p, sample.n);
            for (c, e) in monos.iter().enumerate() {
                f.add_term(e.clone(), basis.get(r, c).0 as i64);
            }
            f
        })
        .collect())
}

/// Whether the projective zero set of `f` over the sample's field is exactly
/// the locus.
pub fn cuts_out(sample: &LocusSample, f: &MultiPoly) -> Result<bool> {
    let ctx = sample.field()?;
    for pt in projective_points(&ctx, sample.n)? {
        let zero = f.eval(&ctx, &pt)?.is_zero();
        if zero != sample.points.contains(&pt) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum VarietyKind {
    Zero,
    AxesUnion,
    Hypersurface { form: MultiPoly },
    Full,
    Other,
}

impl fmt::Display for VarietyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VarietyKind::Zero => write!(f, "zero"),
            VarietyKind::AxesUnion => write!(f, "axes-union"),
            VarietyKind::Hypersurface { form } => write!(f, "hypersurface({form})"),
            VarietyKind::Full => write!(f, "full"),
            VarietyKind::Other => write!(f, "other"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VarietyClass {
    #[serde(flatten)]
    pub kind: VarietyKind,
    pub est_dim: usize,
}

fn is_axes(sample: &LocusSample) -> bool {
    sample.points.len() == sample.n
        && sample.points.iter().all(|pt| pt.iter().filter(|a| !a.is_zero()).count() == 1)
}

/// Matches a single sample against the catalogue: zero, full, union of the
/// coordinate axes, or the zero set of a unique form of least degree.
pub fn classify(sample: &LocusSample) -> Result<VarietyClass> {
    let n = sample.n;
    if sample.points.is_empty() {
        return Ok(VarietyClass { kind: VarietyKind::Zero, est_dim: 0 });
    }
    if sample.points.len() as u64 == sample.total_projective_points {
        return Ok(VarietyClass { kind: VarietyKind::Full, est_dim: n });
    }
    if is_axes(sample) {
        return Ok(VarietyClass { kind: VarietyKind::AxesUnion, est_dim: 1 });
    }
    for degree in 1..=MAX_FORM_DEGREE {
        let forms = interpolate_forms(sample, degree)?;
        match forms.len() {
            0 => continue,
            1 if cuts_out(sample, &forms[0])? => {
                let form = forms.into_iter().next().unwrap();
                return Ok(VarietyClass { kind: VarietyKind::Hypersurface { form }, est_dim: n - 1 });
            }
            _ => break,
        }
    }
    let q = (sample.p as f64).powi(sample.ext_degree as i32);
    let est = ((sample.affine_count() as f64).ln() / q.ln()).round() as usize;
    Ok(VarietyClass { kind: VarietyKind::Other, est_dim: est })
}

/// Whether `class`, found at a larger field, also describes `sample`.
fn consistent(class: &VarietyClass, sample: &LocusSample) -> Result<bool> {
    Ok(match &class.kind {
        VarietyKind::Zero => sample.points.is_empty(),
        VarietyKind::Full => sample.points.len() as u64 == sample.total_projective_points,
        VarietyKind::AxesUnion => is_axes(sample),
        VarietyKind::Hypersurface { form } => cuts_out(sample, form)?,
        VarietyKind::Other => true,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StableClass {
    pub class: VarietyClass,
    pub sample: LocusSample,
    /// Extension degrees whose loci agree with the class.
    pub checked_degrees: Vec<u32>,
}

/// Classifies at GF(p^k) and confirms the class on the locus over GF(p^{k-1});
/// a class that does not persist is reported as `other`.
pub fn classify_stable(acts: &RestrictedActions, k: u32) -> Result<StableClass> {
    if k < 2 {
        return Err(Error::PreconditionViolated("stable classification needs k >= 2".into()));
    }
    let sample = enumerate_locus(acts, k)?;
    let mut class = classify(&sample)?;
    let lower = enumerate_locus(acts, k - 1)?;
    if !consistent(&class, &lower)? {
        class.kind = VarietyKind::Other;
    }
    Ok(StableClass { class, sample, checked_degrees: vec![k - 1, k] })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DimensionEstimate {
    pub dim: usize,
    pub ext_degrees: Vec<u32>,
    pub affine_counts: Vec<u64>,
    /// Log-log slopes between consecutive extension degrees.
    pub pair_slopes: Vec<f64>,
    /// Least-squares slope over all degrees.
    pub fitted_slope: f64,
    /// `p^{n - dim}` divides the module dimension.
    pub divisibility_ok: bool,
}

/// Fits the growth of the affine locus count in q = p^k. The rounded
/// least-squares slope is returned; consecutive-pair slopes may wobble at
/// small q but must round to values within one of each other.
pub fn estimate_dimension(acts: &RestrictedActions, ext_degrees: &[u32]) -> Result<DimensionEstimate> {
    if ext_degrees.len() < 2 {
        return Err(Error::PreconditionViolated("need at least two extension degrees".into()));
    }
    let mut counts = Vec::with_capacity(ext_degrees.len());
    for &k in ext_degrees {
        counts.push(enumerate_locus(acts, k)?.affine_count());
    }
    let xs: Vec<f64> = ext_degrees.iter().map(|&k| k as f64 * (acts.p as f64).ln()).collect();
    let ys: Vec<f64> = counts.iter().map(|&c| (c as f64).ln()).collect();
    let pair_slopes: Vec<f64> = (1..xs.len()).map(|i| (ys[i] - ys[i - 1]) / (xs[i] - xs[i - 1])).collect();
    let (dim, fitted_slope) = if counts.iter().all(|&c| c == 1) {
        (0, 0.0)
    } else {
        let mx = xs.iter().sum::<f64>() / xs.len() as f64;
        let my = ys.iter().sum::<f64>() / ys.len() as f64;
        let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
        let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
        let slope = sxy / sxx;
        (slope.round().max(0.0) as usize, slope)
    };
    let rounded: Vec<i64> = pair_slopes.iter().map(|s| s.round() as i64).collect();
    if rounded.windows(2).any(|w| (w[0] - w[1]).abs() > 1) {
        return Err(Error::InconsistentCounts(pair_slopes));
    }
    let divisibility_ok = dim <= acts.n && acts.dim.is_multiple_of((acts.p as usize).pow((acts.n - dim) as u32));
    Ok(DimensionEstimate {
        dim,
        ext_degrees: ext_degrees.to_vec(),
        affine_counts: counts,
        pair_slopes,
        fitted_slope,
        divisibility_ok,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TemplateReport {
    /// f = (x_1...x_p)^{p-1} f̃ + Σ_i Π_{j≠i} x_j^{n(p-1)}, up to a scalar.
    pub matches_template: bool,
    pub n: Option<u32>,
    pub ftilde: Option<MultiPoly>,
    /// deg f is positive and divisible by (p-1)^2.
    pub degree_divisible: bool,
}

impl TemplateReport {
    pub fn passes(&self) -> bool {
        self.matches_template && self.degree_divisible
    }
}

/// Checks the shape `(x_1...x_p)^{p-1} f̃ + Σ_i x_1^{e}...x̂_i^{e}...x_p^{e}`
/// with `e = n(p-1)`, and that the degree is divisible by `(p-1)^2`.
pub fn template_check(f: &MultiPoly, p: u32) -> TemplateReport {
    let pu = p as usize;
    let degree_divisible = f.degree().is_some_and(|d| d > 0 && d % ((p - 1) * (p - 1)) == 0);
    let fail = TemplateReport { matches_template: false, n: None, ftilde: None, degree_divisible };
    if f.nvars() != pu || f.is_zero() || !f.is_homogeneous() || p < 2 {
        return fail;
    }
    let deg = f.degree().unwrap();
    // total degree of a hatted monomial is (p-1) e
    if !deg.is_multiple_of(pu as u32 - 1) {
        return fail;
    }
    let e = deg / (pu as u32 - 1);
    if e == 0 || !e.is_multiple_of(p - 1) {
        return fail;
    }
    let hatted: Vec<Vec<u32>> = (0..pu).map(|i| (0..pu).map(|j| if i == j { 0 } else { e }).collect()).collect();
    let c = f.coeff(&hatted[0]);
    if c == 0 || hatted.iter().any(|m| f.coeff(m) != c) {
        return fail;
    }
    let inv = (1..p).find(|&x| x * c % p == 1).unwrap();
    let g = f.scale(inv);
    let mut ftilde = MultiPoly::zero(p, pu);
    for (exps, coeff) in g.terms() {
        if hatted.iter().any(|m| m.as_slice() == exps) {
            continue;
        }
        if exps.iter().any(|&x| x < p - 1) {
            return fail;
        }
        ftilde.add_term(exps.iter().map(|&x| x - (p - 1)).collect(), coeff as i64);
    }
    TemplateReport { matches_template: true, n: Some(e / (p - 1)), ftilde: Some(ftilde), degree_divisible }
}

/// x_1^2 x_2^2 + x_2^2 x_3^2 + x_1^2 x_3^2 over GF(3).
pub fn quartic() -> MultiPoly {
    MultiPoly::from_terms(3, 3, &[(1, &[2, 2, 0]), (1, &[0, 2, 2]), (1, &[2, 0, 2])]).expect("three variables")
}

/// Catalogue entry for a conjugate class of partitions of 9 at p = 3.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Expected {
    Full,
    Axes,
    Zero,
    Quartic,
}

/// The sixteen conjugate classes of partitions of 9 with their known
/// varieties for E_3 at p = 3.
pub const TABLE9: [(&str, Expected); 16] = [
    ("(9)", Expected::Full),
    ("(8,1)", Expected::Full),
    ("(7,2)", Expected::Axes),
    ("(6,3)", Expected::Full),
    ("(5,4)", Expected::Full),
    ("(7,1,1)", Expected::Full),
    ("(6,2,1)", Expected::Full),
    ("(5,3,1)", Expected::Zero),
    ("(4,4,1)", Expected::Full),
    ("(5,2,2)", Expected::Full),
    ("(4,3,2)", Expected::Full),
    ("(5,2,1,1)", Expected::Axes),
    ("(4,3,1,1)", Expected::Axes),
    ("(3,3,3)", Expected::Quartic),
    ("(6,1,1,1)", Expected::Full),
    ("(5,1,1,1,1)", Expected::Full),
];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Table9Row {
    pub mu: Partition,
    pub conjugate: Partition,
    pub class: VarietyClass,
    pub locus_points: usize,
    pub agrees_with_expected: bool,
}

impl Table9Row {
    pub fn tsv(&self) -> String {
        format!(
            "{}\t{}\t{}\t{}\t{}",
            self.mu, self.conjugate, self.class.kind, self.class.est_dim, self.agrees_with_expected
        )
    }
}

pub const TABLE9_HEADER: &str = "mu\tconjugate\tclass\test_dim\tagrees_with_expected";

fn agrees(expected: Expected, class: &VarietyClass) -> bool {
    match (expected, &class.kind) {
        (Expected::Full, VarietyKind::Full) => class.est_dim == 3,
        (Expected::Axes, VarietyKind::AxesUnion) => class.est_dim == 1,
        (Expected::Zero, VarietyKind::Zero) => class.est_dim == 0,
        (Expected::Quartic, VarietyKind::Hypersurface { form }) => class.est_dim == 2 && form.monic() == quartic(),
        _ => false,
    }
}

/// One row of the p = 3, |μ| = 9 table, classified over GF(3^k).
pub fn table9_row(mu: &Partition, expected: Expected, k: u32) -> Result<Table9Row> {
    let acts = restricted_actions_cached(mu, 3, 3, true)?;
    let stable = classify_stable(&acts, k)?;
    Ok(Table9Row {
        mu: mu.clone(),
        conjugate: mu.conjugate(),
        agrees_with_expected: agrees(expected, &stable.class),
        locus_points: stable.sample.points.len(),
        class: stable.class,
    })
}

/// All sixteen rows over GF(27).
pub fn table9() -> Result<Vec<Table9Row>> {
    TABLE9
        .par_iter()
        .map(|(mu, expected)| table9_row(&mu.parse()?, *expected, 3))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spechtmod::restricted_actions;

    fn pt(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn point_counts() {
        let f = field(3, 3).unwrap();
        let pts = projective_points(&f, 3).unwrap();
        assert_eq!(pts.len(), 757);
        assert_eq!(projective_point_count(27, 3), 757);
        assert!(pts.iter().all(|a| normalize(&f, a) == *a));
        let set: BTreeSet<_> = pts.iter().cloned().collect();
        assert_eq!(set.len(), 757);
        assert!(matches!(projective_points(&field(2, 20).unwrap(), 3), Err(Error::TooManyPoints(_))));
    }

    #[test]
    fn square_locus_over_prime_field() {
        let acts = restricted_actions(&pt("(3,3,3)"), 3, 3, true).unwrap();
        let sample = enumerate_locus(&acts, 1).unwrap();
        assert!(sample.points.contains(&vec![Fe(1), Fe(1), Fe(1)]));
        assert!(cuts_out(&sample, &quartic()).unwrap());
        assert_eq!(sample.points.len(), 7);
    }

    #[test]
    fn quartic_at_degree_four() {
        let acts = restricted_actions(&pt("(3,3,3)"), 3, 3, true).unwrap();
        let sample = enumerate_locus(&acts, 3).unwrap();
        assert_eq!(sample.points.len(), 31);
        assert!(interpolate_forms(&sample, 3).unwrap().is_empty());
        assert_eq!(interpolate_forms(&sample, 4).unwrap(), vec![quartic()]);
        let class = classify(&sample).unwrap();
        assert_eq!(class, VarietyClass { kind: VarietyKind::Hypersurface { form: quartic() }, est_dim: 2 });
    }

    #[test]
    fn empty_and_full_interpolation() {
        let empty = LocusSample {
            mu: pt("(5,3,1)"),
            computed_on: pt("(5,3,1)"),
            p: 3,
            n: 3,
            ext_degree: 3,
            points: BTreeSet::new(),
            total_projective_points: 757,
            scaling_invariant: true,
        };
        assert_eq!(interpolate_forms(&empty, 1).unwrap().len(), 3);
        let f = field(3, 3).unwrap();
        let full = LocusSample { points: projective_points(&f, 3).unwrap().into_iter().collect(), ..empty };
        assert!(interpolate_forms(&full, 4).unwrap().is_empty());
        assert_eq!(classify(&full).unwrap().kind, VarietyKind::Full);
    }

    #[test]
    fn template_examples() {
        let r = template_check(&quartic(), 3);
        assert!(r.passes());
        assert_eq!(r.n, Some(1));
        assert!(r.ftilde.unwrap().is_zero());
        let linear = MultiPoly::from_terms(3, 3, &[(1, &[1, 0, 0]), (1, &[0, 1, 0]), (1, &[0, 0, 1])]).unwrap();
        assert!(!template_check(&linear, 3).passes());
        let cube = MultiPoly::from_terms(3, 3, &[(1, &[3, 3, 3])]).unwrap();
        assert!(!template_check(&cube, 3).matches_template);
        // n = 2 with a nonzero f̃ of degree 2
        let f = MultiPoly::from_terms(
            3,
            3,
            &[(2, &[4, 4, 0]), (2, &[4, 0, 4]), (2, &[0, 4, 4]), (2, &[4, 2, 2]), (1, &[2, 3, 3])],
        )
        .unwrap();
        let r = template_check(&f, 3);
        assert!(r.passes());
        assert_eq!(r.n, Some(2));
        assert_eq!(r.ftilde.unwrap().num_terms(), 2);
    }

    #[test]
    fn trivial_module_locus_is_everything() {
        let acts = restricted_actions(&pt("(9)"), 3, 3, false).unwrap();
        let s = classify_stable(&acts, 2).unwrap();
        assert_eq!(s.class.kind, VarietyKind::Full);
        assert_eq!(estimate_dimension(&acts, &[1, 2]).unwrap().dim, 3);
    }
}
