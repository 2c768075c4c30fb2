use std::collections::HashMap;

use lgenus::partitions::{
    bell, enumerate_set_partitions, mobius, refinement_leq, stirling2, SetPartition,
};
use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use proptest::prelude::*;

/// Every block of `pi` lies inside a block of `rho`.
fn refines(pi: &SetPartition, rho: &SetPartition) -> bool {
    pi.blocks()
        .iter()
        .all(|b| rho.blocks().iter().any(|c| b.iter().all(|e| c.contains(e))))
}

/// `mu(pi, .)` on the upper set of `pi` from the defining recursion
/// `sum_{pi <= sigma <= rho} mu(pi, sigma) = [pi = rho]`.
fn mobius_by_recursion(pi: &SetPartition, all: &[SetPartition]) -> HashMap<SetPartition, BigInt> {
    let mut above: Vec<&SetPartition> = all.iter().filter(|r| refines(pi, r)).collect();
    above.sort_by_key(|r| std::cmp::Reverse(r.len()));
    let mut mu: HashMap<SetPartition, BigInt> = HashMap::new();
    for rho in &above {
        let value = if *rho == pi {
            BigInt::from(1)
        } else {
            -above
                .iter()
                .filter(|s| *s != rho && mu.contains_key(**s) && refines(s, rho))
                .map(|s| mu[*s].clone())
                .sum::<BigInt>()
        };
        mu.insert((*rho).clone(), value);
    }
    mu
}

#[test]
fn refinement_matches_block_containment() {
    for n in 1..=5 {
        let all = enumerate_set_partitions(n).unwrap();
        for a in &all {
            for b in &all {
                let witness = refinement_leq(a, b).unwrap();
                assert_eq!(witness.is_some(), refines(a, b), "{a} <= {b}");
                if let Some(g) = witness {
                    assert_eq!(a.coarsen(&g).unwrap(), *b);
                }
            }
        }
    }
}

#[test]
fn refinement_is_a_partial_order() {
    for n in 1..=5 {
        let all = enumerate_set_partitions(n).unwrap();
        let leq = |a: &SetPartition, b: &SetPartition| refinement_leq(a, b).unwrap().is_some();
        for a in &all {
            assert!(leq(a, a));
            assert!(leq(&SetPartition::finest(n), a));
            assert!(leq(a, &SetPartition::coarsest(n)));
            for b in &all {
                if a != b && leq(a, b) {
                    assert!(!leq(b, a), "antisymmetry {a} {b}");
                }
                if !leq(a, b) {
                    continue;
                }
                for c in &all {
                    if leq(b, c) {
                        assert!(leq(a, c), "transitivity {a} {b} {c}");
                    }
                }
            }
        }
    }
}

#[test]
fn mobius_matches_recursion() {
    for n in 1..=7 {
        let all = enumerate_set_partitions(n).unwrap();
        let bottoms: Vec<SetPartition> = if n <= 5 {
            all.clone()
        } else {
            // the full upper set of the finest partition covers every interval shape
            vec![SetPartition::finest(n), all[all.len() / 3].clone()]
        };
        for pi in &bottoms {
            for (rho, want) in mobius_by_recursion(pi, &all) {
                assert_eq!(mobius(pi, &rho).unwrap(), want, "mu({pi}, {rho})");
            }
        }
    }
}

#[test]
fn mobius_inversion_recovers_the_function() {
    for n in 1..=7 {
        let all = enumerate_set_partitions(n).unwrap();
        // an arbitrary integer function on the lattice
        let f = |p: &SetPartition| -> BigInt {
            BigInt::from(p.rgs().iter().enumerate().map(|(i, &b)| (i as i64 + 3) * (b as i64 * 7 - 2)).sum::<i64>())
        };
        let g = |p: &SetPartition| -> BigInt { p.upper_set().unwrap().iter().map(f).sum() };
        for pi in [SetPartition::finest(n), all[all.len() / 2].clone(), SetPartition::coarsest(n)] {
            let recovered: BigInt = pi
                .upper_set()
                .unwrap()
                .iter()
                .map(|rho| mobius(&pi, rho).unwrap() * g(rho))
                .sum();
            assert_eq!(recovered, f(&pi), "n={n} pi={pi}");
        }
    }
}

#[test]
fn mobius_rejects_incomparable_pairs() {
    let a = SetPartition::from_blocks(&[vec![0, 1], vec![2]], 3).unwrap();
    let b = SetPartition::from_blocks(&[vec![0], vec![1, 2]], 3).unwrap();
    assert!(mobius(&a, &b).is_err());
}

#[test]
fn stirling_numbers_count_partitions() {
    for n in 1..=9 {
        let mut counts = vec![0u64; n + 1];
        for p in enumerate_set_partitions(n).unwrap() {
            counts[p.len()] += 1;
        }
        for k in 1..=n {
            assert_eq!(stirling2(n, k).unwrap(), BigUint::from(counts[k]), "S({n},{k})");
        }
        assert_eq!(bell(n), BigUint::from(counts.iter().sum::<u64>()));
    }
}

#[test]
fn enumeration_is_duplicate_free() {
    for n in 1..=8 {
        let all = enumerate_set_partitions(n).unwrap();
        let mut seen = std::collections::HashSet::new();
        for p in &all {
            assert!(seen.insert(p.rgs().to_vec()));
            assert!(!p.blocks().iter().any(|b| b.is_empty()));
        }
    }
    assert!(enumerate_set_partitions(0).is_err());
    assert!(!bell(12).is_zero());
}

proptest! {
    #[test]
    fn labels_round_trip(labels in prop::collection::vec(0u8..5, 1..9)) {
        let p = SetPartition::from_labels(&labels);
        let q = SetPartition::from_blocks(&p.blocks(), labels.len()).unwrap();
        prop_assert_eq!(&p, &q);
        prop_assert_eq!(SetPartition::from_rgs(p.rgs().to_vec()).unwrap(), p.clone());
        for i in 0..labels.len() {
            for j in 0..labels.len() {
                prop_assert_eq!(labels[i] == labels[j], p.block_of(i) == p.block_of(j));
            }
        }
    }
}
