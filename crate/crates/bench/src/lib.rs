//! Shared builders for the criterion benches.

use std::collections::BTreeMap;
use std::sync::Arc;

use tropcor_core::monodromy::{DynamicalPortrait, MonodromyCover};
use tropcor_core::perm::Perm;
use tropcor_core::trees::MarkingSet;
use tropcor_core::Rational;

/// Degree-4 cover on six points with two fixed critical chains; a midsize
/// workload for the pullback and scan benches.
pub fn bench_cover() -> (Arc<MonodromyCover>, DynamicalPortrait) {
    let marking = MarkingSet::new(["a", "b", "c", "d", "e", "f"]).unwrap();
    let perms = vec![
        Perm::parse("(1 2)", 4).unwrap(),
        Perm::parse("(2 3)", 4).unwrap(),
        Perm::parse("(3 4)", 4).unwrap(),
        Perm::parse("(3 4)", 4).unwrap(),
        Perm::parse("(2 3)", 4).unwrap(),
        Perm::parse("(1 2)", 4).unwrap(),
    ];
    let cover = Arc::new(MonodromyCover::new(marking, 4, perms).unwrap());
    let iota: BTreeMap<String, String> = [
        ("a", "b#1"),
        ("b", "c#1"),
        ("c", "d#1"),
        ("d", "e#4"),
        ("e", "f#3"),
        ("f", "a#3"),
    ]
    .into_iter()
    .map(|(l, k)| (l.to_string(), k.to_string()))
    .collect();
    let portrait = DynamicalPortrait::from_keys(&cover, &iota).unwrap();
    (cover, portrait)
}

/// Nonnegative rational matrix with an irrational dominant eigenvalue.
pub fn bench_matrix(dim: usize) -> tropcor_core::RationalMatrix {
    let data: Vec<Vec<Rational>> = (0..dim)
        .map(|i| {
            (0..dim)
                .map(|j| Rational::new((((i * 7 + j * 3) % 5) as i64).into(), ((j % 3 + 1) as i64).into()))
                .collect()
        })
        .collect();
    tropcor_core::RationalMatrix::new(data).unwrap()
}
