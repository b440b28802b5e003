use num_bigint::BigUint;
use proptest::prelude::*;
use spechtvar::partitions::{contained_p, dim_specht, p_core_weight, syt_count, Partition};
use spechtvar::phimap::{find_ab, phi_chain, phi_limit, phi_step};

fn partition_strategy(max_size: usize) -> impl Strategy<Value = Partition> {
    (1..=max_size).prop_flat_map(|n| (0..Partition::all(n).len()).prop_map(move |i| Partition::all(n)[i].clone()))
}

fn phi_domain() -> impl Strategy<Value = (Partition, usize)> {
    let mut dom = Vec::new();
    for p in [2usize, 3, 5] {
        for n in 1..=15 / p {
            for mu in Partition::all(n * p) {
                if mu.len() <= p && p_core_weight(&mu, p).core.is_empty() {
                    dom.push((mu, p));
                }
            }
        }
    }
    prop::sample::select(dom)
}

fn binomial(n: u64, m: u64) -> BigUint {
    let mut acc = BigUint::from(1u32);
    for i in 0..m {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

#[test]
fn hook_formula_counts_standard_tableaux() {
    for n in 0..=9 {
        for mu in Partition::all(n) {
            assert_eq!(dim_specht(&mu), syt_count(&mu).unwrap(), "{mu}");
        }
    }
}

#[test]
fn branching_identity_up_to_ten() {
    for n in 1..=10 {
        for mu in Partition::all(n) {
            let sum: u128 = mu.branching_set().iter().map(dim_specht).sum();
            assert_eq!(dim_specht(&mu), sum, "{mu}");
        }
    }
}

#[test]
fn containment_is_lucas() {
    for p in [2u64, 3, 5] {
        for n in 0..=200u64 {
            for m in 0..=n + 1 {
                let nonzero = m <= n && binomial(n, m) % BigUint::from(p) != BigUint::from(0u32);
                assert_eq!(contained_p(m, n, p), nonzero, "m={m} n={n} p={p}");
            }
        }
    }
}

#[test]
fn phi_fixed_points_are_multiples_of_p() {
    for p in [2usize, 3, 5] {
        for n in 1..=4 {
            for mu in Partition::all(n * p) {
                if mu.len() > p || !p_core_weight(&mu, p).core.is_empty() {
                    continue;
                }
                let fixed = phi_step(&mu, p).unwrap() == mu;
                assert_eq!(fixed, mu.parts().iter().all(|x| x % p == 0), "{mu} p={p}");
            }
        }
    }
}

#[test]
fn phi_limit_of_two_row_example() {
    // (u, v, 2^m) with empty core ends at (U+1, V-1) where U = u+m, V = v+m.
    for p in [3usize, 5, 7] {
        for m in 0..6 {
            for v in 2..12 {
                for u in v..16 {
                    let mut parts = vec![u, v];
                    parts.extend(std::iter::repeat_n(2, m));
                    let mu = Partition::new(parts).unwrap();
                    if mu.len() > p || !p_core_weight(&mu, p).core.is_empty() {
                        continue;
                    }
                    let (uu, vv) = (u + m, v + m);
                    if uu % p != p - 1 || vv % p != 1 {
                        continue;
                    }
                    assert_eq!(phi_limit(&mu, p).unwrap(), Partition::new(vec![uu + 1, vv - 1]).unwrap(), "{mu} p={p}");
                }
            }
        }
    }
}

proptest! {
    #[test]
    fn core_and_weight_account_for_size(mu in partition_strategy(14), p in prop::sample::select(vec![2usize, 3, 5, 7])) {
        let cd = p_core_weight(&mu, p);
        prop_assert_eq!(mu.size(), cd.core.size() + p * cd.weight);
        let divisible = mu.hook_lengths().values().filter(|&&h| h % p == 0).count();
        prop_assert_eq!(cd.weight, divisible);
        prop_assert_eq!(p_core_weight(&cd.core, p).weight, 0);
    }

    #[test]
    fn conjugation_commutes_with_cores(mu in partition_strategy(14), p in prop::sample::select(vec![2usize, 3, 5])) {
        prop_assert_eq!(mu.conjugate().conjugate(), mu.clone());
        prop_assert_eq!(p_core_weight(&mu.conjugate(), p).core, p_core_weight(&mu, p).core.conjugate());
        prop_assert_eq!(dim_specht(&mu.conjugate()), dim_specht(&mu));
    }

    #[test]
    fn phi_limit_properties((mu, p) in phi_domain()) {
        let chain = phi_chain(&mu, p).unwrap();
        for step in &chain {
            prop_assert!(p_core_weight(step, p).core.is_empty());
        }
        let limit = chain.last().unwrap();
        prop_assert_eq!(&phi_limit(limit, p).unwrap(), limit);
        prop_assert!(limit.parts().iter().all(|x| x % p == 0));
        prop_assert_eq!(limit.size(), mu.size());
        prop_assert!(limit.len() <= mu.len());
        if let Some(s) = find_ab(&mu, p).unwrap() {
            prop_assert!(s.a < s.b && s.b <= mu.len());
            prop_assert_eq!(s.eta.size() + 1, mu.size());
        }
    }
}
