//! Degree-d sphere covers encoded by permutation monodromy over a planar
//! cyclic order, together with the dynamical portrait that makes the cover
//! post-critically finite.
//!
//! Conventions: permutations act on the right of sheet indices and the
//! defining relation is `s_1 s_2 ... s_n = id` in the stored cyclic order.
//! The monodromy of the curve around a consecutive block of branch points is
//! the ordered product of the enclosed generators; blocks that wrap past the
//! last point are replaced by their complement.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::perm::{Perm, PermError};
use crate::trees::{MarkingSet, TreeError};
use crate::Rational;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MonodromyError {
    #[error("ordered product of the generators is not the identity")]
    ProductNotIdentity,
    #[error("the generated group is not transitive on the sheets")]
    NotTransitive,
    #[error("branching count {0} does not force genus 0 (expected {1})")]
    GenusNotZero(usize, usize),
    #[error("degree {0} is below 2 (pass the override to allow it)")]
    DegreeTooSmall(usize),
    #[error("permutation for {0:?} has degree {1}, cover has degree {2}")]
    DegreeMismatch(String, usize, usize),
    #[error("portrait is not injective: {0:?} and {1:?} share a preimage point")]
    NotInjective(String, String),
    #[error("portrait misses post-critical closure: {0:?} not in any critical orbit")]
    NotPostcriticallyClosed(Vec<String>),
    #[error("unknown preimage point key {0:?}")]
    UnknownPoint(String),
    #[error("braid generator {0} out of range 1..={1}")]
    BadGenerator(i64, usize),
    #[error("block {0:?} is not consecutive in the cyclic order")]
    NotConsecutive(Vec<String>),
    #[error("block {0:?} must contain between 2 and n-2 points")]
    TrivialBlock(Vec<String>),
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Tree(#[from] TreeError),
}

/// One point of the fiber over a branch point: a cycle of that point's
/// monodromy. The key `label#minsheet` (1-based) names it externally.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct PreimagePoint {
    /// Index of the base label in the cover's marking.
    pub base: usize,
    /// Sorted sheet set of the cycle.
    pub cycle: Vec<usize>,
}

impl PreimagePoint {
    pub fn local_degree(&self) -> usize {
        self.cycle.len()
    }

    pub fn key(&self, marking: &MarkingSet) -> String {
        format!("{}#{}", marking.label(self.base), self.cycle[0] + 1)
    }
}

/// A validated branched cover of the sphere in permutation encoding.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonodromyCover {
    marking: Arc<MarkingSet>,
    degree: usize,
    perms: Vec<Perm>,
    points: Vec<PreimagePoint>,
    upstairs: Arc<MarkingSet>,
}

impl MonodromyCover {
    pub fn new(
        marking: Arc<MarkingSet>,
        degree: usize,
        perms: Vec<Perm>,
    ) -> Result<Self, MonodromyError> {
        Self::with_options(marking, degree, perms, false)
    }

    pub fn with_options(
        marking: Arc<MarkingSet>,
        degree: usize,
        perms: Vec<Perm>,
        allow_degree_one: bool,
    ) -> Result<Self, MonodromyError> {
        if degree < 2 && !(allow_degree_one && degree == 1) {
            return Err(MonodromyError::DegreeTooSmall(degree));
        }
        assert_eq!(perms.len(), marking.len(), "one permutation per label");
        for (i, p) in perms.iter().enumerate() {
            if p.degree() != degree {
                return Err(MonodromyError::DegreeMismatch(
                    marking.label(i).to_string(),
                    p.degree(),
                    degree,
                ));
            }
        }
        let product = perms
            .iter()
            .fold(Perm::identity(degree), |acc, p| acc.then(p));
        if !product.is_identity() {
            return Err(MonodromyError::ProductNotIdentity);
        }
        if orbits_of(&perms, degree).len() != 1 {
            return Err(MonodromyError::NotTransitive);
        }
        let deficiency: usize = perms.iter().map(Perm::deficiency).sum();
        if deficiency != 2 * degree - 2 {
            return Err(MonodromyError::GenusNotZero(deficiency, 2 * degree - 2));
        }
        let mut points = Vec::new();
        for (base, p) in perms.iter().enumerate() {
            for cycle in p.cycles() {
                points.push(PreimagePoint { base, cycle });
            }
        }
        points.sort();
        let upstairs = MarkingSet::new(points.iter().map(|q| q.key(&marking)))
            .expect("preimage marking is valid");
        Ok(MonodromyCover {
            marking,
            degree,
            perms,
            points,
            upstairs,
        })
    }

    pub fn marking(&self) -> &Arc<MarkingSet> {
        &self.marking
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn perm(&self, label_index: usize) -> &Perm {
        &self.perms[label_index]
    }

    pub fn perms(&self) -> &[Perm] {
        &self.perms
    }

    /// All preimage points, sorted by (base label, minimum sheet).
    pub fn points(&self) -> &[PreimagePoint] {
        &self.points
    }

    /// The fiber marking: one label per preimage point, in point order.
    pub fn upstairs_marking(&self) -> &Arc<MarkingSet> {
        &self.upstairs
    }

    pub fn point_index(&self, key: &str) -> Result<usize, MonodromyError> {
        self.points
            .iter()
            .position(|q| q.key(&self.marking) == key)
            .ok_or_else(|| MonodromyError::UnknownPoint(key.to_string()))
    }

    /// Index of the preimage point of `base` whose cycle contains `sheet`.
    pub fn point_over(&self, base: usize, sheet: usize) -> usize {
        self.points
            .iter()
            .position(|q| q.base == base && q.cycle.contains(&sheet))
            .expect("cycles cover every sheet")
    }

    /// The leg covering map: preimage point to its base label index.
    pub fn leg_map(&self) -> Vec<usize> {
        self.points.iter().map(|q| q.base).collect()
    }

    /// Preimage points with local degree at least 2.
    pub fn critical_points(&self) -> Vec<usize> {
        (0..self.points.len())
            .filter(|&i| self.points[i].local_degree() >= 2)
            .collect()
    }

    /// Monodromy of the curve around a consecutive block, computed on the
    /// canonical representative that does not wrap past the last point.
    pub fn block_monodromy(&self, block: &BTreeSet<usize>) -> Result<Perm, MonodromyError> {
        let run = self.canonical_run(block)?;
        Ok(run
            .iter()
            .fold(Perm::identity(self.degree), |acc, &i| acc.then(&self.perms[i])))
    }

    /// The block as a linear run of marking positions, complementing it when
    /// it wraps past the last point.
    pub fn canonical_run(&self, block: &BTreeSet<usize>) -> Result<Vec<usize>, MonodromyError> {
        let n = self.marking.len();
        let labels = |b: &BTreeSet<usize>| -> Vec<String> {
            b.iter().map(|&i| self.marking.label(i).to_string()).collect()
        };
        if block.len() < 2 || block.len() > n - 2 {
            return Err(MonodromyError::TrivialBlock(labels(block)));
        }
        let linear = |b: &BTreeSet<usize>| -> Option<Vec<usize>> {
            let v: Vec<usize> = b.iter().copied().collect();
            let run = v.windows(2).all(|w| w[1] == w[0] + 1);
            run.then_some(v)
        };
        if let Some(run) = linear(block) {
            return Ok(run);
        }
        let complement: BTreeSet<usize> = (0..n).filter(|i| !block.contains(i)).collect();
        if let Some(run) = linear(&complement) {
            return Ok(run);
        }
        Err(MonodromyError::NotConsecutive(labels(block)))
    }
}

/// Orbits of the group generated by `perms` acting on `0..degree`, each orbit
/// sorted, ordered by minimum element.
pub fn orbits_of(perms: &[Perm], degree: usize) -> Vec<BTreeSet<usize>> {
    let mut seen = vec![false; degree];
    let mut orbits = Vec::new();
    for start in 0..degree {
        if seen[start] {
            continue;
        }
        let mut orbit = BTreeSet::new();
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            if seen[i] {
                continue;
            }
            seen[i] = true;
            orbit.insert(i);
            for p in perms {
                stack.push(p.apply(i));
                stack.push(p.inverse().apply(i));
            }
        }
        orbits.push(orbit);
    }
    orbits
}

/// The injection of the branch set into its own fiber, plus the induced
/// dynamics on labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DynamicalPortrait {
    /// Per label index: the preimage point the label coincides with.
    iota: Vec<usize>,
    /// Per label index: the image label under the cover, `base(iota(p))`.
    step: Vec<usize>,
}

impl DynamicalPortrait {
    pub fn new(cover: &MonodromyCover, iota: Vec<usize>) -> Result<Self, MonodromyError> {
        assert_eq!(iota.len(), cover.marking().len());
        for (p1, &q1) in iota.iter().enumerate() {
            for (p2, &q2) in iota.iter().enumerate().skip(p1 + 1) {
                if q1 == q2 {
                    return Err(MonodromyError::NotInjective(
                        cover.marking().label(p1).to_string(),
                        cover.marking().label(p2).to_string(),
                    ));
                }
            }
        }
        let step: Vec<usize> = iota.iter().map(|&q| cover.points()[q].base).collect();
        // Post-critical closure: every label lies on the forward orbit of the
        // image of some critical point.
        let mut reached = vec![false; cover.marking().len()];
        for q in cover.critical_points() {
            let mut p = cover.points()[q].base;
            while !reached[p] {
                reached[p] = true;
                p = step[p];
            }
        }
        if reached.iter().any(|r| !r) {
            let missing = reached
                .iter()
                .enumerate()
                .filter(|(_, r)| !**r)
                .map(|(i, _)| cover.marking().label(i).to_string())
                .collect();
            return Err(MonodromyError::NotPostcriticallyClosed(missing));
        }
        Ok(DynamicalPortrait { iota, step })
    }

    pub fn from_keys(
        cover: &MonodromyCover,
        keys: &BTreeMap<String, String>,
    ) -> Result<Self, MonodromyError> {
        let mut iota = Vec::with_capacity(cover.marking().len());
        for label in cover.marking().labels() {
            let key = keys
                .get(label)
                .ok_or_else(|| MonodromyError::UnknownPoint(format!("iota[{label}]")))?;
            iota.push(cover.point_index(key)?);
        }
        DynamicalPortrait::new(cover, iota)
    }

    /// Preimage point occupied by label `p`.
    pub fn iota(&self, label_index: usize) -> usize {
        self.iota[label_index]
    }

    pub fn iota_all(&self) -> &[usize] {
        &self.iota
    }

    /// The induced self-map of the branch set.
    pub fn step(&self, label_index: usize) -> usize {
        self.step[label_index]
    }

    /// Label occupying preimage point `q`, if any.
    pub fn label_at(&self, point: usize) -> Option<usize> {
        self.iota.iter().position(|&q| q == point)
    }
}

/// Minimal multiplicity function on the branch set, or infinity where the
/// divisibility constraints force unbounded growth.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NuValue {
    Finite(BigUint),
    Infinite,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbifoldSignature {
    nu: Vec<NuValue>,
    hyperbolic: bool,
}

impl OrbifoldSignature {
    pub fn nu(&self) -> &[NuValue] {
        &self.nu
    }

    pub fn hyperbolic(&self) -> bool {
        self.hyperbolic
    }

    /// Parabolic signatures are accepted elsewhere with a warning flag.
    pub fn parabolic_warning(&self) -> bool {
        !self.hyperbolic
    }

    pub fn nu_display(&self) -> Vec<String> {
        self.nu
            .iter()
            .map(|v| match v {
                NuValue::Finite(k) => k.to_string(),
                NuValue::Infinite => "inf".to_string(),
            })
            .collect()
    }
}

/// Least fixed point of the divisibility constraints: for every preimage
/// point q over p, `localdeg(q) * nu(label at q)` divides `nu(p)` (labels
/// absent from the portrait image count as 1). Values exceeding `d^n` are
/// reported as infinite.
pub fn orbifold_signature(
    cover: &MonodromyCover,
    portrait: &DynamicalPortrait,
) -> OrbifoldSignature {
    let n = cover.marking().len();
    let cap = BigUint::from(cover.degree()).pow(n as u32);
    let mut nu: Vec<NuValue> = vec![NuValue::Finite(BigUint::one()); n];
    loop {
        let mut next: Vec<NuValue> = vec![NuValue::Finite(BigUint::one()); n];
        for (qi, q) in cover.points().iter().enumerate() {
            let inner = match portrait.label_at(qi) {
                Some(p) => nu[p].clone(),
                None => NuValue::Finite(BigUint::one()),
            };
            let contribution = match inner {
                NuValue::Infinite => NuValue::Infinite,
                NuValue::Finite(v) => NuValue::Finite(v * BigUint::from(q.local_degree())),
            };
            next[q.base] = match (&next[q.base], &contribution) {
                (NuValue::Infinite, _) | (_, NuValue::Infinite) => NuValue::Infinite,
                (NuValue::Finite(a), NuValue::Finite(b)) => {
                    let l = a.lcm(b);
                    if l > cap {
                        NuValue::Infinite
                    } else {
                        NuValue::Finite(l)
                    }
                }
            };
        }
        if next == nu {
            break;
        }
        nu = next;
    }
    // Hyperbolic iff the orbifold Euler characteristic is negative:
    // sum (1 - 1/nu) > 2, with 1/inf = 0, decided exactly.
    let mut total = Rational::zero();
    for v in &nu {
        let term = match v {
            NuValue::Infinite => Rational::one(),
            NuValue::Finite(k) => {
                let k = Rational::from_integer(num_bigint::BigInt::from(k.clone()));
                Rational::one() - Rational::one() / k
            }
        };
        total += term;
    }
    let hyperbolic = total > Rational::from_integer(2.into());
    OrbifoldSignature { nu, hyperbolic }
}

/// One half-twist move: conjugate the pair at positions `i`, `i+1` and swap
/// the two labels in the cyclic order. The returned map sends old preimage
/// point indices to new ones.
fn apply_half_twist(
    cover: &MonodromyCover,
    position: usize,
    inverse: bool,
) -> (MonodromyCover, Vec<usize>) {
    let i = position;
    let mut labels: Vec<String> = cover.marking().labels().to_vec();
    labels.swap(i, i + 1);
    let marking = MarkingSet::new(labels).expect("swap keeps labels distinct");

    let a = cover.perms[i].clone();
    let b = cover.perms[i + 1].clone();
    // Forward move: (a, b) -> (a b a^-1, a); inverse: (a, b) -> (b, b^-1 a b).
    let (first, second, conjugator, conjugated_old_pos) = if inverse {
        (b.clone(), b.inverse().then(&a).then(&b), b.inverse(), i)
    } else {
        (a.then(&b).then(&a.inverse()), a.clone(), a, i + 1)
    };
    // Perms are stored per position in the new order; the label moved into
    // position i is the old label at i+1 (and vice versa).
    let mut perms = cover.perms.clone();
    perms[i] = first;
    perms[i + 1] = second;
    let new_cover = MonodromyCover::with_options(marking, cover.degree, perms, true)
        .expect("half twists preserve validity");

    // Track preimage points: cycles of the conjugated label move by the
    // inverse of the conjugator; all other cycles are unchanged.
    let mut point_map = vec![usize::MAX; cover.points.len()];
    let conj_inv = conjugator.inverse();
    for (qi, q) in cover.points.iter().enumerate() {
        let old_label = cover.marking().label(q.base).to_string();
        let new_base = new_cover.marking().index(&old_label).unwrap();
        let cycle: Vec<usize> = if q.base == conjugated_old_pos {
            let mut c: Vec<usize> = q.cycle.iter().map(|&s| conj_inv.apply(s)).collect();
            c.sort_unstable();
            c
        } else {
            q.cycle.clone()
        };
        point_map[qi] = new_cover
            .points
            .iter()
            .position(|p| p.base == new_base && p.cycle == cycle)
            .expect("conjugation maps cycles to cycles");
    }
    (new_cover, point_map)
}

/// Apply a braid word (signed generator indices, 1-based; negative for the
/// inverse twist). Returns the re-presented cover, the relabeled portrait,
/// and the resulting permutation of marking positions (old index -> new).
pub fn apply_braid_word(
    cover: &MonodromyCover,
    portrait: &DynamicalPortrait,
    word: &[i64],
) -> Result<(MonodromyCover, DynamicalPortrait, Vec<usize>), MonodromyError> {
    let n = cover.marking().len();
    for &g in word {
        if g == 0 || g.unsigned_abs() as usize > n - 1 {
            return Err(MonodromyError::BadGenerator(g, n - 1));
        }
    }
    let mut current = cover.clone();
    let mut iota = portrait.iota_all().to_vec();
    for &g in word {
        let position = g.unsigned_abs() as usize - 1;
        let (next, point_map) = apply_half_twist(&current, position, g < 0);
        // iota is indexed by label name, not position: realign to the new
        // marking order while mapping point indices through the move.
        let mut new_iota = vec![usize::MAX; n];
        for (old_label_idx, &q) in iota.iter().enumerate() {
            let label = current.marking().label(old_label_idx).to_string();
            let new_label_idx = next.marking().index(&label).unwrap();
            new_iota[new_label_idx] = point_map[q];
        }
        current = next;
        iota = new_iota;
    }
    let position_map: Vec<usize> = cover
        .marking()
        .labels()
        .iter()
        .map(|l| current.marking().index(l).unwrap())
        .collect();
    let portrait = DynamicalPortrait::new(&current, iota)?;
    Ok((current, portrait, position_map))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::cover_l;

    #[test]
    fn validate_cover_tabulates_points() {
        let (cover, _) = cover_l();
        let keys: Vec<String> = cover
            .points()
            .iter()
            .map(|q| q.key(cover.marking()))
            .collect();
        assert_eq!(keys, ["a#1", "b#1", "c#1", "c#2", "d#1", "d#2"]);
        let degs: Vec<usize> = cover.points().iter().map(|q| q.local_degree()).collect();
        assert_eq!(degs, [2, 2, 1, 1, 1, 1]);
        assert_eq!(cover.leg_map(), [0, 1, 2, 2, 3, 3]);
    }

    #[test]
    fn validate_cover_rejections() {
        let m = MarkingSet::new(["a", "b", "c", "d"]).unwrap();
        let t = Perm::parse("(1 2)", 2).unwrap();
        let bad = MonodromyCover::new(
            Arc::clone(&m),
            2,
            vec![t.clone(), t.clone(), Perm::identity(2), t.clone()],
        );
        assert!(matches!(bad, Err(MonodromyError::ProductNotIdentity)));

        let t3 = Perm::parse("(1 2)", 3).unwrap();
        let bad = MonodromyCover::new(
            Arc::clone(&m),
            3,
            vec![t3.clone(), t3.clone(), Perm::identity(3), Perm::identity(3)],
        );
        assert!(matches!(bad, Err(MonodromyError::NotTransitive)));

        let c3 = Perm::parse("(1 2 3)", 3).unwrap();
        let bad = MonodromyCover::new(
            Arc::clone(&m),
            3,
            vec![
                c3.clone(),
                c3.inverse(),
                c3.clone(),
                c3.inverse(),
            ],
        );
        assert!(matches!(bad, Err(MonodromyError::GenusNotZero(_, _))));

        let bad = MonodromyCover::new(Arc::clone(&m), 1, vec![Perm::identity(1); 4]);
        assert!(matches!(bad, Err(MonodromyError::DegreeTooSmall(1))));
        assert!(MonodromyCover::with_options(m, 1, vec![Perm::identity(1); 4], true).is_ok());
    }

    #[test]
    fn portrait_validation() {
        let (cover, portrait) = cover_l();
        assert_eq!(portrait.step(0), 2); // a -> c
        assert_eq!(portrait.step(1), 3); // b -> d
        assert_eq!(portrait.step(2), 2);
        assert_eq!(portrait.step(3), 3);

        // Identity-style placement leaves c and d outside every critical orbit.
        let iota = ["a#1", "b#1", "c#1", "d#1"]
            .iter()
            .map(|k| cover.point_index(k).unwrap())
            .collect();
        match DynamicalPortrait::new(&cover, iota) {
            Err(MonodromyError::NotPostcriticallyClosed(missing)) => {
                assert_eq!(missing, vec!["c", "d"]);
            }
            other => panic!("expected closure failure, got {other:?}"),
        }

        let iota = ["c#1", "d#2", "c#1", "d#1"]
            .iter()
            .map(|k| cover.point_index(k).unwrap())
            .collect();
        assert!(matches!(
            DynamicalPortrait::new(&cover, iota),
            Err(MonodromyError::NotInjective(_, _))
        ));
    }

    #[test]
    fn orbifold_of_cover_l_is_parabolic_2222() {
        let (cover, portrait) = cover_l();
        let sig = orbifold_signature(&cover, &portrait);
        assert_eq!(sig.nu_display(), ["2", "2", "2", "2"]);
        assert!(!sig.hyperbolic());
        assert!(sig.parabolic_warning());
    }

    #[test]
    fn orbifold_with_unbounded_constraint_reports_infinity() {
        // Both critical values on one 4-cycle: the divisibility chain forces
        // nu(a) to be a proper multiple of itself, so the signature blows up.
        let m = MarkingSet::new(["a", "b", "c", "d"]).unwrap();
        let perms = vec![
            Perm::parse("(1 2)", 2).unwrap(),
            Perm::identity(2),
            Perm::parse("(1 2)", 2).unwrap(),
            Perm::identity(2),
        ];
        let cover = MonodromyCover::new(m, 2, perms).unwrap();
        let iota = ["b#1", "c#1", "d#1", "a#1"]
            .iter()
            .map(|k| cover.point_index(k).unwrap())
            .collect();
        let portrait = DynamicalPortrait::new(&cover, iota).unwrap();
        let sig = orbifold_signature(&cover, &portrait);
        assert_eq!(sig.nu_display(), ["inf", "inf", "inf", "inf"]);
        assert!(sig.hyperbolic());
    }

    #[test]
    fn braid_moves_match_hand_computation() {
        let (cover, portrait) = cover_l();

        let (same_cover, same_portrait, _) =
            apply_braid_word(&cover, &portrait, &[]).unwrap();
        assert_eq!(same_cover, cover);
        assert_eq!(same_portrait, portrait);

        let (c2, p2, _) = apply_braid_word(&cover, &portrait, &[2]).unwrap();
        assert_eq!(
            c2.marking().labels(),
            ["a".to_string(), "c".into(), "b".into(), "d".into()]
        );
        assert_eq!(c2.perm(0).to_string(), "(1 2)");
        assert_eq!(c2.perm(1).to_string(), "()");
        assert_eq!(c2.perm(2).to_string(), "(1 2)");
        assert_eq!(c2.perm(3).to_string(), "()");

        let (back_cover, back_portrait, map) =
            apply_braid_word(&c2, &p2, &[-2]).unwrap();
        assert_eq!(back_cover, cover);
        assert_eq!(back_portrait, portrait);

        let (round_cover, round_portrait, map2) =
            apply_braid_word(&cover, &portrait, &[2, -2]).unwrap();
        assert_eq!(round_cover, cover);
        assert_eq!(round_portrait, portrait);
        assert_eq!(map2, vec![0, 1, 2, 3]);
        let _ = map;

        assert!(matches!(
            apply_braid_word(&cover, &portrait, &[4]),
            Err(MonodromyError::BadGenerator(4, 3))
        ));
    }

    #[test]
    fn braid_preserves_signature_multiset() {
        let (cover, portrait) = cover_l();
        let before = {
            let mut s = orbifold_signature(&cover, &portrait).nu_display();
            s.sort();
            s
        };
        for word in [vec![1], vec![2], vec![3], vec![1, 2, -1], vec![3, 3]] {
            let (c, p, _) = apply_braid_word(&cover, &portrait, &word).unwrap();
            let mut after = orbifold_signature(&c, &p).nu_display();
            after.sort();
            assert_eq!(before, after, "word {word:?}");
        }
    }

    #[test]
    fn block_monodromy_examples() {
        let (cover, _) = cover_l();
        let block = |labels: &[&str]| -> BTreeSet<usize> {
            labels
                .iter()
                .map(|l| cover.marking().index(l).unwrap())
                .collect()
        };
        assert!(cover.block_monodromy(&block(&["c", "d"])).unwrap().is_identity());
        assert!(cover.block_monodromy(&block(&["a", "b"])).unwrap().is_identity());
        assert_eq!(
            cover.block_monodromy(&block(&["b", "c"])).unwrap().to_string(),
            "(1 2)"
        );
        assert!(matches!(
            cover.block_monodromy(&block(&["a", "c"])),
            Err(MonodromyError::NotConsecutive(_))
        ));
        assert!(matches!(
            cover.block_monodromy(&block(&["a"])),
            Err(MonodromyError::TrivialBlock(_))
        ));
        // Wrapping block: canonical representative is the complement.
        let wrap = block(&["d", "a"]);
        let m = cover.block_monodromy(&wrap).unwrap();
        assert_eq!(m.to_string(), "(1 2)");
    }

    #[test]
    fn complementary_blocks_share_cycle_type() {
        let (cover, _) = cover_l();
        let n = cover.marking().len();
        for start in 0..n - 1 {
            for end in start + 1..n.min(start + n - 1) {
                let block: BTreeSet<usize> = (start..=end).collect();
                if block.len() < 2 || block.len() > n - 2 {
                    continue;
                }
                let complement: BTreeSet<usize> =
                    (0..n).filter(|i| !block.contains(i)).collect();
                let a = cover.block_monodromy(&block).unwrap();
                let b = cover.block_monodromy(&complement).unwrap();
                assert_eq!(a.cycle_type(), b.inverse().cycle_type());
            }
        }
    }
}
