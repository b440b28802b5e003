//! End-to-end checks of the computed invariants against known results, shared
//! by the `verify` subcommand and the acceptance test target.

use std::collections::BTreeSet;
use std::fmt;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::ffalg::{field, Fe};
use crate::jordan::{
    complementary_check, generic_type, jordan_at_point, random_point, rank_vector_at, GenericMode, JordanType,
    DEFAULT_SAMPLES,
};
use crate::partitions::{contained_p, dim_specht, p_core_weight, syt_count, Partition};
use crate::phimap::{phi_chain, phi_step};
use crate::spechtmod::{
    fixed_tabloid_count, perm_module_actions, restricted_actions_cached, RestrictedActions,
};
use crate::variety::{
    enumerate_locus, estimate_dimension, interpolate_forms, quartic, table9, template_check,
};
use crate::youngdec::{perm_generic_type_formula, verify_cor_multiple, verify_cor_psquare};

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub id: u32,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{tag} [{}] {}: {} ({:.1}s)", self.id, self.name, self.detail, self.seconds)
    }
}

pub const CHECK_NAMES: [&str; 8] = [
    "table reproduction, p=3, |mu|=9",
    "quartic identification",
    "dimension of the (3,3,3) locus",
    "permutation-module generic types",
    "generic types of (np-p,p)",
    "complementary stable types along phi",
    "combinatorial oracles",
    "property suites",
];

fn seed_rng(seed: u64, salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

fn pt(s: &str) -> Partition {
    s.parse().expect("literal partition")
}

/// Runs one check by number (1 to 8).
pub fn run_check(id: u32, seed: u64) -> CheckResult {
    let start = Instant::now();
    let outcome = match id {
        1 => check_table(),
        2 => check_quartic(),
        3 => check_dimension(),
        4 => check_perm_types(seed),
        5 => check_case_one(seed),
        6 => check_complementary(seed),
        7 => check_combinatorics(),
        8 => check_properties(seed),
        _ => Ok((false, format!("no check numbered {id}"))),
    };
    let (passed, detail) = outcome.unwrap_or_else(|e| (false, format!("error: {e}")));
    CheckResult {
        id,
        name: CHECK_NAMES.get(id as usize - 1).copied().unwrap_or("unknown"),
        passed,
        detail,
        seconds: start.elapsed().as_secs_f64(),
    }
}

pub fn run_all(seed: u64) -> Vec<CheckResult> {
    (1..=8).map(|id| run_check(id, seed)).collect()
}

type Outcome = Result<(bool, String)>;

fn check_table() -> Outcome {
    let rows = table9()?;
    let bad: Vec<String> = rows.iter().filter(|r| !r.agrees_with_expected).map(|r| r.tsv()).collect();
    let detail = if bad.is_empty() {
        format!("{}/16 rows agree over GF(27)", rows.len())
    } else {
        format!("disagreements: {}", bad.join("; "))
    };
    Ok((bad.is_empty() && rows.len() == 16, detail))
}

fn square_actions() -> Result<RestrictedActions> {
    restricted_actions_cached(&pt("(3,3,3)"), 3, 3, true)
}

fn check_quartic() -> Outcome {
    let sample = enumerate_locus(&square_actions()?, 3)?;
    let forms = interpolate_forms(&sample, 4)?;
    let unique = forms.len() == 1 && forms[0].monic() == quartic();
    let report = forms.first().map(|f| template_check(f, 3));
    let template = report.as_ref().is_some_and(|r| {
        r.passes() && r.n == Some(1) && r.ftilde.as_ref().is_some_and(|t| t.is_zero())
    });
    let shown: Vec<String> = forms.iter().map(ToString::to_string).collect();
    Ok((unique && template, format!("degree-4 forms [{}], template n=1 f~=0: {template}", shown.join(", "))))
}

fn check_dimension() -> Outcome {
    let est = estimate_dimension(&square_actions()?, &[1, 2, 3])?;
    let ok = est.dim == 2 && est.divisibility_ok;
    Ok((
        ok,
        format!(
            "affine counts {:?}, fitted slope {:.3}, dim {}, 3^(3-{}) | 42: {}",
            est.affine_counts, est.fitted_slope, est.dim, est.dim, est.divisibility_ok
        ),
    ))
}

fn check_perm_types(seed: u64) -> Outcome {
    let cases = [("(9)", 3u32), ("(6,3)", 3), ("(3,3,3)", 3), ("(4,2)", 2), ("(2,2,2)", 2)];
    let mut ok = true;
    let mut parts = Vec::new();
    for (mu, p) in cases {
        let mu = pt(mu);
        let acts = perm_module_actions(&mu, 3, p)?;
        let observed = generic_type(&acts, GenericMode::Random, seed, DEFAULT_SAMPLES)?.jordan;
        let formula = perm_generic_type_formula(&mu, 3, p)?;
        let same = observed == formula && fixed_tabloid_count(&acts) == formula.count(1);
        ok &= same;
        parts.push(format!("{mu}@{p} {observed}{}", if same { "" } else { " MISMATCH" }));
    }
    Ok((ok, parts.join(", ")))
}

fn stable_generic(mu: &Partition, n: usize, p: u32, seed: u64) -> Result<JordanType> {
    let acts = restricted_actions_cached(mu, n, p, true)?;
    Ok(generic_type(&acts, GenericMode::Random, seed, DEFAULT_SAMPLES)?.jordan.stable())
}

/// Which of the four possible stable types (a)-(d) of S^{(np-p,p)} at odd p
/// a type matches.
pub fn case_one_label(t: &JordanType, n: usize) -> Option<char> {
    let p = t.p as usize;
    let mut want: Vec<(char, Vec<usize>)> = Vec::new();
    let mut add = |label: char, sizes: Vec<usize>| {
        let mut b = vec![0; p];
        for s in sizes {
            b[s - 1] += 1;
        }
        want.push((label, b));
    };
    let ones = |k: usize| std::iter::repeat_n(1, k);
    add('a', std::iter::once(p - 1).chain(ones(n + 1)).collect());
    add('b', [p - 1, 2].into_iter().chain(ones(n.saturating_sub(1))).collect());
    add('c', ones(n).collect());
    if n >= 2 {
        add('d', std::iter::once(2).chain(ones(n - 2)).collect());
    }
    want.into_iter().find(|(_, b)| *b == t.blocks).map(|(l, _)| l)
}

fn check_case_one(seed: u64) -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for n in 3..=5 {
        let mu = Partition::new(vec![2 * n - 2, 2])?;
        let t = stable_generic(&mu, n, 2, seed)?;
        let good = t.count(1) == n - 2;
        ok &= good;
        parts.push(format!("p=2 {mu}: n(1)={}", t.count(1)));
    }
    for n in 2..=3 {
        let mu = Partition::new(vec![3 * n - 3, 3])?;
        let t = stable_generic(&mu, n, 3, seed)?;
        let bound = (n - 2..=n + 1).contains(&t.count(1));
        let label = case_one_label(&t, n);
        ok &= bound && label.is_some();
        parts.push(format!("p=3 {mu}: stable {t}, n(1)={}, case {}", t.count(1), label.map_or('-', |c| c)));
    }
    Ok((ok, parts.join("; ")))
}

fn check_complementary(seed: u64) -> Outcome {
    let starts = ["(4,3,2)", "(5,2,2)", "(4,4,1)", "(6,2,1)", "(5,4)"];
    let mut domain: BTreeSet<Partition> = Partition::all(9)
        .into_iter()
        .filter(|mu| mu.len() <= 3 && p_core_weight(mu, 3).core.is_empty())
        .collect();
    for s in starts {
        domain.extend(phi_chain(&pt(s), 3)?);
    }
    let mut ok = true;
    let mut parts = Vec::new();
    for mu in &domain {
        let next = phi_step(mu, 3)?;
        if &next == mu {
            continue;
        }
        let (a, b) = (stable_generic(mu, 3, 3, seed)?, stable_generic(&next, 3, 3, seed)?);
        let comp = complementary_check(&a, &b, 3);
        ok &= comp;
        let note = if comp { "" } else if a == b { " (equal, not complementary)" } else { " FAIL" };
        parts.push(format!("{mu}{a} -> {next}{b}{note}"));
    }
    Ok((ok, parts.join(", ")))
}

fn check_combinatorics() -> Outcome {
    let mut failures = Vec::new();
    let mut count = 0;
    for n in 0..=9 {
        for mu in Partition::all(n) {
            count += (n == 9) as usize;
            if dim_specht(&mu) != syt_count(&mu)? {
                failures.push(format!("hook formula at {mu}"));
            }
        }
    }
    for mu in Partition::all(9) {
        let sum: u128 = mu.branching_set().iter().map(dim_specht).sum();
        if sum != dim_specht(&mu) {
            failures.push(format!("branching at {mu}"));
        }
    }
    for p in [2u64, 3, 5] {
        for n in 0..=200u64 {
            for m in 0..=n {
                if contained_p(m, n, p) != binomial_nonzero_mod(n, m, p) {
                    failures.push(format!("containment {m} in {n} mod {p}"));
                }
            }
        }
    }
    let psq = [verify_cor_psquare(3)?, verify_cor_psquare(5)?];
    if !psq.iter().all(|r| r.all_hold()) {
        failures.push("p-square corollary".into());
    }
    for n in 3..=12 {
        if !verify_cor_multiple(n, 3)?.all_hold() {
            failures.push(format!("multiple-of-p corollary at n={n}"));
        }
    }
    let ok = failures.is_empty() && count == 30;
    let detail = if ok {
        "hook = SYT on |mu| <= 9 (30 of size 9), branching on mu |- 9, Lucas for n <= 200, corollary sweeps".to_string()
    } else {
        failures.join("; ")
    };
    Ok((ok, detail))
}

/// Whether `C(n, m)` is nonzero mod p, by Legendre's formula for the
/// p-adic valuation of factorials.
fn binomial_nonzero_mod(n: u64, m: u64, p: u64) -> bool {
    let v = |mut x: u64| {
        let mut s = 0;
        while x > 0 {
            x /= p;
            s += x;
        }
        s
    };
    m <= n && v(n) == v(m) + v(n - m)
}

fn property_modules() -> Result<Vec<RestrictedActions>> {
    let mut specs: Vec<(Partition, usize, u32)> = Partition::all(9).into_iter().map(|mu| (mu, 3, 3)).collect();
    specs.extend(Partition::all(6).into_iter().map(|mu| (mu, 3, 2)));
    specs.extend(Partition::all(8).into_iter().map(|mu| (mu, 4, 2)));
    let mut out: Vec<RestrictedActions> =
        specs.par_iter().map(|(mu, n, p)| restricted_actions_cached(mu, *n, *p, true)).collect::<Result<_>>()?;
    for (mu, p) in [("(6,3)", 3), ("(4,2)", 2)] {
        out.push(perm_module_actions(&pt(mu), 3, p)?);
    }
    Ok(out)
}

fn check_properties(seed: u64) -> Outcome {
    let modules = property_modules()?;
    let mut rng = seed_rng(seed, 8);
    let mut failures = Vec::new();
    let generic: Vec<JordanType> = modules
        .par_iter()
        .map(|a| generic_type(a, GenericMode::Random, seed, DEFAULT_SAMPLES).map(|r| r.jordan))
        .collect::<Result<_>>()?;

    // rank vectors: monotone, convex, dominated by the generic one
    for trial in 0..500 {
        let i = trial % modules.len();
        let acts = &modules[i];
        let ctx = field(acts.p, rng.gen_range(1..=3))?;
        let alpha = random_point(&ctx, acts.n, &mut rng);
        let rv = rank_vector_at(acts, &ctx, &alpha)?;
        if !rv.is_valid() || !rv.dominated_by(&generic[i].rank_vector()) {
            failures.push(format!("rank vector {:?} of {}", rv.ranks, acts.mu));
        }
    }

    // scaling
    for _ in 0..100 {
        let acts = modules.choose(&mut rng).expect("modules");
        let ctx = field(acts.p, rng.gen_range(1..=3))?;
        let alpha = random_point(&ctx, acts.n, &mut rng);
        let c = ctx.random_nonzero(&mut rng);
        let scaled: Vec<Fe> = alpha.iter().map(|&a| ctx.mul(c, a)).collect();
        if jordan_at_point(acts, &ctx, &alpha)? != jordan_at_point(acts, &ctx, &scaled)? {
            failures.push(format!("scaling at {}", acts.mu));
        }
    }

    // coordinate permutations, for the modules of partitions of 9
    let nine: Vec<&RestrictedActions> = modules.iter().filter(|a| a.mu.size() == 9).collect();
    let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    for _ in 0..100 {
        let acts = nine.choose(&mut rng).expect("modules");
        let ctx = field(3, rng.gen_range(1..=3))?;
        let alpha = random_point(&ctx, 3, &mut rng);
        let base = jordan_at_point(acts, &ctx, &alpha)?;
        for s in &perms {
            let moved: Vec<Fe> = s.iter().map(|&j| alpha[j]).collect();
            if jordan_at_point(acts, &ctx, &moved)? != base {
                failures.push(format!("permutation {s:?} at {}", acts.mu));
            }
        }
    }

    // exact against randomized
    let mut exact_count = 0;
    for (acts, g) in modules.iter().zip(&generic) {
        if acts.dim <= crate::jordan::EXACT_MAX_DIM {
            exact_count += 1;
            if &generic_type(acts, GenericMode::Exact, seed, 0)?.jordan != g {
                failures.push(format!("exact mode at {}", acts.mu));
            }
        }
    }

    // nonempty 3-core implies generically free
    let mut free_count = 0;
    for (acts, g) in modules.iter().zip(&generic) {
        if acts.p == 3 && acts.mu.size() == 9 && !p_core_weight(&acts.mu, 3).core.is_empty() {
            free_count += 1;
            if !g.is_free() {
                failures.push(format!("{} not generically free", acts.mu));
            }
        }
    }

    let ok = failures.is_empty();
    let detail = if ok {
        format!(
            "{} modules: 500 rank vectors, 100 scalings, 100x6 permutations, {exact_count} exact comparisons, {free_count} nonempty-core modules generically free",
            modules.len()
        )
    } else {
        failures.join("; ")
    };
    Ok((ok, detail))
}
