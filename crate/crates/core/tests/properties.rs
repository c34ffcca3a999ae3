//! Property tests for the structural invariants: contraction algebra,
//! forgetful-map compatibility, braid invariance, and block-representative
//! independence.

mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use proptest::prelude::*;

use common::corpus;
use tropcor_core::monodromy::{apply_braid_word, orbifold_signature};
use tropcor_core::multicurve::StandardMulticurve;
use tropcor_core::pullback::PullbackTree;
use tropcor_core::trees::{all_splits, MarkedTree, MarkingSet, Split};
use tropcor_core::tropical::ConePoint;
use tropcor_core::Rational;

fn labels(n: usize) -> Vec<String> {
    (0..n).map(|i| char::from(b'a' + i as u8).to_string()).collect()
}

/// A random compatible split system: shuffle the proper splits and greedily
/// keep the compatible ones.
fn arb_tree(n: usize) -> impl Strategy<Value = MarkedTree> {
    let marking = MarkingSet::new(labels(n)).unwrap();
    let splits = all_splits(&marking);
    let count = splits.len();
    (proptest::collection::vec(0..count, 0..count), Just(marking)).prop_map(
        move |(order, marking)| {
            let mut chosen: Vec<Split> = Vec::new();
            for i in order {
                let candidate = &splits[i];
                if chosen.iter().all(|c| c.compatible(candidate)) && !chosen.contains(candidate)
                {
                    chosen.push(candidate.clone());
                }
            }
            MarkedTree::new(marking, chosen).unwrap()
        },
    )
}

fn arb_rational() -> impl Strategy<Value = Rational> {
    (0i64..40, 1i64..12).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn contraction_composes_as_union(tree in arb_tree(7), mask_a in any::<u64>(), mask_b in any::<u64>()) {
        let splits: Vec<Split> = tree.splits().iter().cloned().collect();
        let pick = |mask: u64| -> BTreeSet<Split> {
            splits
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> (i % 64) & 1 == 1)
                .map(|(_, s)| s.clone())
                .collect()
        };
        let a = pick(mask_a);
        let b = pick(mask_b);
        let union: BTreeSet<Split> = a.union(&b).cloned().collect();
        let lhs = tree
            .contract(&a)
            .unwrap()
            .contract(&b.difference(&a).cloned().collect())
            .unwrap();
        let rhs = tree.contract(&union).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn forgetting_commutes_with_contraction(tree in arb_tree(7), mask in any::<u64>(), keep in 4usize..=6) {
        let sub = MarkingSet::new(labels(keep)).unwrap();
        let splits: Vec<Split> = tree.splits().iter().cloned().collect();
        let remove: BTreeSet<Split> = splits
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> (i % 64) & 1 == 1)
            .map(|(_, s)| s.clone())
            .collect();
        // Forget then contract the surviving restrictions.
        let forgotten = tree.forget(&sub).unwrap();
        let survivors: BTreeSet<Split> = remove
            .iter()
            .filter_map(|s| s.restrict(tree.marking(), &sub))
            .filter(|s| {
                // A restriction may be shared with a kept split; contract it
                // only when no kept split restricts to it.
                !tree
                    .splits()
                    .iter()
                    .filter(|t| !remove.contains(*t))
                    .filter_map(|t| t.restrict(tree.marking(), &sub))
                    .any(|t| &t == s)
            })
            .collect();
        let lhs = forgotten.contract(&survivors).unwrap();
        let rhs = tree.contract(&remove).unwrap().forget(&sub).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn round_trip_through_explicit_tree(tree in arb_tree(8)) {
        let explicit = tree.to_explicit();
        let back: BTreeSet<Split> = explicit.splits().iter().cloned().collect();
        prop_assert_eq!(&back, tree.splits());
        prop_assert!(explicit.vertices().iter().all(|&v| explicit.valence(v) >= 3));
        prop_assert!(tree.splits().len() <= tree.marking().len() - 3);
    }

    #[test]
    fn point_canonicalization_is_idempotent(
        tree in arb_tree(6),
        values in proptest::collection::vec(arb_rational(), 0..8),
    ) {
        let coords: BTreeMap<Split, Rational> = tree
            .splits()
            .iter()
            .enumerate()
            .map(|(i, s)| {
                (
                    s.clone(),
                    values.get(i).cloned().unwrap_or_else(|| Rational::new(1.into(), 1.into())),
                )
            })
            .collect();
        let point = ConePoint::new(&tree, coords).unwrap();
        let again = ConePoint::new(point.tree(), point.coords().clone()).unwrap();
        prop_assert_eq!(&point, &again);
        // Zero scaling collapses to the cone point.
        let zero = point.scale(&Rational::new(0.into(), 1.into())).unwrap();
        prop_assert!(zero.is_cone_point());
    }
}

#[test]
fn braid_words_preserve_validity_and_signature() {
    let words: Vec<Vec<i64>> = vec![
        vec![1],
        vec![-1],
        vec![2, 2],
        vec![1, 2, -1],
        vec![3, -2, 1],
        vec![1, 1, 1],
    ];
    for instance in corpus().iter().take(25) {
        let before = {
            let mut s = orbifold_signature(&instance.cover, &instance.portrait).nu_display();
            s.sort();
            s
        };
        let n = instance.cover.marking().len();
        for word in &words {
            if word.iter().any(|g| g.unsigned_abs() as usize >= n) {
                continue;
            }
            let (cover, portrait, _) =
                apply_braid_word(&instance.cover, &instance.portrait, word).unwrap();
            let mut after = orbifold_signature(&cover, &portrait).nu_display();
            after.sort();
            assert_eq!(before, after);
            // A word followed by its inverse is the identity.
            let inverse: Vec<i64> = word.iter().rev().map(|g| -g).collect();
            let (back_cover, back_portrait, _) =
                apply_braid_word(&cover, &portrait, &inverse).unwrap();
            assert_eq!(&back_cover, instance.cover.as_ref());
            assert_eq!(&back_portrait, &instance.portrait);
        }
    }
}

#[test]
fn fiber_degrees_sum_to_the_cover_degree() {
    for instance in corpus() {
        let cover = &instance.cover;
        for p in 0..cover.marking().len() {
            let total: usize = cover
                .points()
                .iter()
                .filter(|q| q.base == p)
                .map(|q| q.local_degree())
                .sum();
            assert_eq!(total, cover.degree());
        }
        let deficiency: usize = cover
            .points()
            .iter()
            .map(|q| q.local_degree() - 1)
            .sum();
        assert_eq!(deficiency, 2 * cover.degree() - 2);
    }
}

#[test]
fn orbifold_signature_is_the_least_fixed_point() {
    use num_bigint::BigUint;
    use num_traits::One;
    use tropcor_core::monodromy::NuValue;
    for instance in corpus() {
        let signature = orbifold_signature(&instance.cover, &instance.portrait);
        // Re-running the defining iteration from the computed values changes
        // nothing, and every divisibility constraint holds.
        let nu = signature.nu();
        for (qi, point) in instance.cover.points().iter().enumerate() {
            let inner = match instance.portrait.label_at(qi) {
                None => NuValue::Finite(BigUint::one()),
                Some(p) => nu[p].clone(),
            };
            match (&inner, &nu[point.base]) {
                (_, NuValue::Infinite) => {}
                (NuValue::Infinite, NuValue::Finite(_)) => {
                    panic!("finite value above an infinite constraint")
                }
                (NuValue::Finite(v), NuValue::Finite(target)) => {
                    let required = v * BigUint::from(point.local_degree());
                    assert!(
                        (target % &required) == BigUint::from(0u32),
                        "divisibility constraint violated"
                    );
                }
            }
        }
        // Hyperbolicity is the exact sign of the angle-sum criterion.
        let mut total = Rational::new(0.into(), 1.into());
        for v in nu {
            total += match v {
                NuValue::Infinite => Rational::new(1.into(), 1.into()),
                NuValue::Finite(k) => {
                    let k = Rational::new(num_bigint::BigInt::from(k.clone()), 1.into());
                    Rational::new(1.into(), 1.into()) - Rational::new(1.into(), 1.into()) / k
                }
            };
        }
        assert_eq!(
            signature.hyperbolic(),
            total > Rational::new(2.into(), 1.into())
        );
    }
}

#[test]
fn complementary_block_representatives_give_equal_pullbacks() {
    for instance in corpus().iter().take(30) {
        let n = instance.cover.marking().len();
        // Prefix blocks [0..j] have non-wrapping complements [j+1..n-1].
        for j in 1..n - 2 {
            let prefix: BTreeSet<usize> = (0..=j).collect();
            let complement: BTreeSet<usize> = (j + 1..n).collect();
            let mc_a = StandardMulticurve::new(
                Arc::clone(instance.cover.marking()),
                vec![prefix],
            )
            .unwrap();
            let mc_b = StandardMulticurve::new(
                Arc::clone(instance.cover.marking()),
                vec![complement],
            )
            .unwrap();
            let a = PullbackTree::build(&instance.cover, &mc_a).unwrap();
            let b = PullbackTree::build(&instance.cover, &mc_b).unwrap();
            assert_eq!(a.upstairs_tree(), b.upstairs_tree());
            assert_eq!(
                a.tlt_matrix(&instance.portrait),
                b.tlt_matrix(&instance.portrait)
            );
        }
    }
}

#[test]
fn curve_monodromy_of_complementary_blocks_shares_cycle_type() {
    for instance in corpus().iter().take(30) {
        let cover = &instance.cover;
        let n = cover.marking().len();
        for start in 0..n {
            for len in 2..=n - 2 {
                let block: BTreeSet<usize> = (0..len).map(|k| (start + k) % n).collect();
                if cover.canonical_run(&block).is_err() {
                    continue;
                }
                let complement: BTreeSet<usize> =
                    (0..n).filter(|i| !block.contains(i)).collect();
                let m1 = cover.block_monodromy(&block).unwrap();
                let m2 = cover.block_monodromy(&complement).unwrap();
                assert_eq!(m1.cycle_type(), m2.inverse().cycle_type());
            }
        }
    }
}
