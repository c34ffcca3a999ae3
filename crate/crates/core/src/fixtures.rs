//! Shared cover/portrait builders for unit tests.

use std::collections::BTreeMap;

use crate::monodromy::{DynamicalPortrait, MonodromyCover};
use crate::perm::Perm;
use crate::trees::MarkingSet;

/// Degree-2 cover branched over the first two of four points, with the
/// portrait sending a -> c, b -> d and fixing c, d. Its orbifold signature is
/// (2, 2, 2, 2) and the curve separating {c, d} from {a, b} is an obstruction
/// with eigenvalue 2.
pub fn cover_l() -> (MonodromyCover, DynamicalPortrait) {
    build(
        &["a", "b", "c", "d"],
        2,
        &[("a", "(1 2)"), ("b", "(1 2)"), ("c", "()"), ("d", "()")],
        &[("a", "c#2"), ("b", "d#2"), ("c", "c#1"), ("d", "d#1")],
    )
}

/// Degree-2 cover branched over the first and third of four points, with the
/// four-cycle portrait a -> b -> c -> d -> a. No standard single curve is
/// weakly fixed; the two standard splits swap with factor 1/2 each.
pub fn cover_cycle() -> (MonodromyCover, DynamicalPortrait) {
    build(
        &["a", "b", "c", "d"],
        2,
        &[("a", "(1 2)"), ("b", "()"), ("c", "(1 2)"), ("d", "()")],
        &[("a", "b#1"), ("b", "c#1"), ("c", "d#1"), ("d", "a#1")],
    )
}

/// Degree-2 cover on five points with portrait a -> c -> e (e fixed) and
/// b -> d (d fixed); used for nested two-block multicurves.
pub fn cover_five() -> (MonodromyCover, DynamicalPortrait) {
    build(
        &["a", "b", "c", "d", "e"],
        2,
        &[
            ("a", "(1 2)"),
            ("b", "(1 2)"),
            ("c", "()"),
            ("d", "()"),
            ("e", "()"),
        ],
        &[
            ("a", "c#1"),
            ("b", "d#1"),
            ("c", "e#1"),
            ("d", "d#2"),
            ("e", "e#2"),
        ],
    )
}

pub fn build(
    labels: &[&str],
    degree: usize,
    perms: &[(&str, &str)],
    iota: &[(&str, &str)],
) -> (MonodromyCover, DynamicalPortrait) {
    let marking = MarkingSet::new(labels.iter().copied()).unwrap();
    let by_label: BTreeMap<&str, &str> = perms.iter().copied().collect();
    let perms: Vec<Perm> = labels
        .iter()
        .map(|l| Perm::parse(by_label[l], degree).unwrap())
        .collect();
    let cover = MonodromyCover::new(marking, degree, perms).unwrap();
    let keys: BTreeMap<String, String> = iota
        .iter()
        .map(|(l, k)| (l.to_string(), k.to_string()))
        .collect();
    let portrait = DynamicalPortrait::from_keys(&cover, &keys).unwrap();
    (cover, portrait)
}
