//! Stable marked trees as pairwise-compatible split systems.
//!
//! A marking is an ordered finite set of labels. A split is a proper
//! bipartition of the marking, stored canonically as the side that does not
//! contain the last label, so equality is syntactic. A marked tree is a
//! pairwise-compatible set of splits; the explicit vertex/edge tree is a
//! derived view reconstructed from the laminar family of canonical sides.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TreeError {
    #[error("marking must have at least 3 distinct labels")]
    MarkingTooSmall,
    #[error("duplicate label {0:?} in marking")]
    DuplicateLabel(String),
    #[error("unknown label {0:?}")]
    UnknownLabel(String),
    #[error("trivial split: side {0:?} must leave at least 2 labels on each side")]
    TrivialSplit(Vec<String>),
    #[error("incompatible splits {0:?} and {1:?}")]
    IncompatibleSplits(Vec<String>, Vec<String>),
    #[error("split {0:?} is not an edge of the tree")]
    UnknownSplit(Vec<String>),
    #[error("marking mismatch between trees")]
    MarkingMismatch,
    #[error("{0:?} is not a sub-marking with at least 3 labels")]
    BadSubmarking(Vec<String>),
    #[error("marking size {0} exceeds enumeration bound {1}")]
    SizeBound(usize, usize),
}

/// Ordered set of distinct labels. The order fixes split canonicalization
/// (and, for covers, the planar cyclic order of the branch points).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MarkingSet {
    labels: Vec<String>,
}

impl MarkingSet {
    pub fn new<I, S>(labels: I) -> Result<Arc<Self>, TreeError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.len() < 3 {
            return Err(TreeError::MarkingTooSmall);
        }
        let mut seen = BTreeSet::new();
        for l in &labels {
            if !seen.insert(l.clone()) {
                return Err(TreeError::DuplicateLabel(l.clone()));
            }
        }
        Ok(Arc::new(MarkingSet { labels }))
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, index: usize) -> &str {
        &self.labels[index]
    }

    pub fn index(&self, label: &str) -> Result<usize, TreeError> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| TreeError::UnknownLabel(label.to_string()))
    }

    /// True if `other`'s labels all occur in `self`.
    pub fn contains_all(&self, other: &MarkingSet) -> bool {
        other.labels.iter().all(|l| self.labels.contains(l))
    }
}

/// Proper bipartition of a marking, canonicalized to the side avoiding the
/// last label. Stored as sorted label indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Split {
    side: Vec<usize>,
}

impl Split {
    pub fn new<I: IntoIterator<Item = usize>>(
        side: I,
        marking: &MarkingSet,
    ) -> Result<Self, TreeError> {
        let n = marking.len();
        let set: BTreeSet<usize> = side.into_iter().collect();
        assert!(set.iter().all(|&i| i < n), "label index out of range");
        let canonical: Vec<usize> = if set.contains(&(n - 1)) {
            (0..n).filter(|i| !set.contains(i)).collect()
        } else {
            set.into_iter().collect()
        };
        if canonical.len() < 2 || canonical.len() > n - 2 {
            return Err(TreeError::TrivialSplit(
                canonical.iter().map(|&i| marking.label(i).to_string()).collect(),
            ));
        }
        Ok(Split { side: canonical })
    }

    pub fn from_labels<S: AsRef<str>>(
        labels: &[S],
        marking: &MarkingSet,
    ) -> Result<Self, TreeError> {
        let mut side = Vec::new();
        for l in labels {
            side.push(marking.index(l.as_ref())?);
        }
        Split::new(side, marking)
    }

    /// Canonical side as sorted label indices.
    pub fn side(&self) -> &[usize] {
        &self.side
    }

    pub fn side_labels(&self, marking: &MarkingSet) -> Vec<String> {
        self.side.iter().map(|&i| marking.label(i).to_string()).collect()
    }

    pub fn contains(&self, index: usize) -> bool {
        self.side.binary_search(&index).is_ok()
    }

    /// Key used in JSON maps and DOT labels: canonical side joined by commas.
    pub fn key(&self, marking: &MarkingSet) -> String {
        self.side_labels(marking).join(",")
    }

    /// With canonical sides, two splits are compatible exactly when the sides
    /// are nested or disjoint.
    pub fn compatible(&self, other: &Split) -> bool {
        let a: BTreeSet<usize> = self.side.iter().copied().collect();
        let b: BTreeSet<usize> = other.side.iter().copied().collect();
        a.is_subset(&b) || b.is_subset(&a) || a.is_disjoint(&b)
    }

    /// Restrict the bipartition to a sub-marking; `None` when one side drops
    /// below 2 labels.
    pub fn restrict(
        &self,
        marking: &MarkingSet,
        sub: &MarkingSet,
    ) -> Option<Split> {
        let side: Vec<usize> = sub
            .labels()
            .iter()
            .enumerate()
            .filter(|(_, l)| {
                let idx = marking.index(l).expect("sub-marking checked");
                self.contains(idx)
            })
            .map(|(i, _)| i)
            .collect();
        if side.len() < 2 || side.len() > sub.len().saturating_sub(2) {
            return None;
        }
        Some(Split::new(side, sub).expect("proper by the size check"))
    }
}

/// Stable marked tree: a compatible split system over a marking.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MarkedTree {
    marking: Arc<MarkingSet>,
    splits: BTreeSet<Split>,
}

impl MarkedTree {
    /// Validate a split system: every split proper, all pairs compatible.
    pub fn new(
        marking: Arc<MarkingSet>,
        splits: impl IntoIterator<Item = Split>,
    ) -> Result<Self, TreeError> {
        let splits: BTreeSet<Split> = splits.into_iter().collect();
        let list: Vec<&Split> = splits.iter().collect();
        for (i, a) in list.iter().enumerate() {
            for b in &list[i + 1..] {
                if !a.compatible(b) {
                    return Err(TreeError::IncompatibleSplits(
                        a.side_labels(&marking),
                        b.side_labels(&marking),
                    ));
                }
            }
        }
        let tree = MarkedTree { marking, splits };
        let explicit = tree.to_explicit();
        debug_assert!(explicit.vertices().iter().all(|&v| explicit.valence(v) >= 3));
        Ok(tree)
    }

    pub fn one_vertex(marking: Arc<MarkingSet>) -> Self {
        MarkedTree {
            marking,
            splits: BTreeSet::new(),
        }
    }

    pub fn marking(&self) -> &Arc<MarkingSet> {
        &self.marking
    }

    pub fn splits(&self) -> &BTreeSet<Split> {
        &self.splits
    }

    pub fn edge_count(&self) -> usize {
        self.splits.len()
    }

    pub fn is_one_vertex(&self) -> bool {
        self.splits.is_empty()
    }

    /// All internal valences equal 3, equivalently the split system is maximal.
    pub fn is_trivalent(&self) -> bool {
        self.splits.len() == self.marking.len() - 3
    }

    /// Remove a subset of splits (contract the corresponding edges).
    pub fn contract(&self, remove: &BTreeSet<Split>) -> Result<MarkedTree, TreeError> {
        for s in remove {
            if !self.splits.contains(s) {
                return Err(TreeError::UnknownSplit(s.side_labels(&self.marking)));
            }
        }
        Ok(MarkedTree {
            marking: Arc::clone(&self.marking),
            splits: self.splits.difference(remove).cloned().collect(),
        })
    }

    /// `self` is a contraction of `fine` iff every split of `self` survives in
    /// `fine`; equivalently the stratum of `fine` lies in the closure of ours.
    pub fn is_contraction_of(&self, fine: &MarkedTree) -> Result<bool, TreeError> {
        if self.marking != fine.marking {
            return Err(TreeError::MarkingMismatch);
        }
        Ok(self.splits.is_subset(&fine.splits))
    }

    /// Push the tree forward along the forgetful map to a sub-marking:
    /// restrict every split, drop the ones that trivialize, merge duplicates.
    pub fn forget(&self, sub: &Arc<MarkingSet>) -> Result<MarkedTree, TreeError> {
        if !self.marking.contains_all(sub) || sub.len() < 3 {
            return Err(TreeError::BadSubmarking(sub.labels().to_vec()));
        }
        let splits: BTreeSet<Split> = self
            .splits
            .iter()
            .filter_map(|s| s.restrict(&self.marking, sub))
            .collect();
        MarkedTree::new(Arc::clone(sub), splits)
    }

    /// Canonical reconstruction of the vertex/edge tree from the laminar
    /// family of canonical sides.
    pub fn to_explicit(&self) -> ExplicitTree {
        ExplicitTree::from_tree(self)
    }
}

impl fmt::Display for MarkedTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let keys: Vec<String> = self.splits.iter().map(|s| s.key(&self.marking)).collect();
        write!(f, "{{{}}}", keys.join(" | "))
    }
}

/// Derived vertex/edge view of a marked tree. Vertex 0 is the root region
/// (the one containing the last label); vertex `i + 1` corresponds to the
/// i-th split in canonical order, i.e. to the region just inside that side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExplicitTree {
    marking: Arc<MarkingSet>,
    splits: Vec<Split>,
    /// Per vertex: labels attached directly to it.
    legs: Vec<Vec<usize>>,
    /// Per split: the parent vertex of the corresponding edge (the child
    /// vertex of edge `e` is always `e + 1`).
    parent: Vec<usize>,
    /// Per vertex: incident edge indices.
    adjacency: Vec<Vec<usize>>,
}

impl ExplicitTree {
    fn from_tree(tree: &MarkedTree) -> ExplicitTree {
        let marking = Arc::clone(&tree.marking);
        let splits: Vec<Split> = tree.splits.iter().cloned().collect();
        let nv = splits.len() + 1;
        // Parent of side S: the smallest side strictly containing it, else root.
        let mut parent = vec![0usize; splits.len()];
        for (i, s) in splits.iter().enumerate() {
            let mut best: Option<usize> = None;
            for (j, t) in splits.iter().enumerate() {
                if i == j || s.side().len() >= t.side().len() {
                    continue;
                }
                let t_set: BTreeSet<usize> = t.side().iter().copied().collect();
                if s.side().iter().all(|x| t_set.contains(x)) {
                    match best {
                        Some(b) if splits[b].side().len() <= t.side().len() => {}
                        _ => best = Some(j),
                    }
                }
            }
            parent[i] = best.map_or(0, |j| j + 1);
        }
        // Leg of label p: vertex of the smallest side containing p, else root.
        let mut legs = vec![Vec::new(); nv];
        for p in 0..marking.len() {
            let mut best: Option<usize> = None;
            for (j, t) in splits.iter().enumerate() {
                if t.contains(p) {
                    match best {
                        Some(b) if splits[b].side().len() <= t.side().len() => {}
                        _ => best = Some(j),
                    }
                }
            }
            legs[best.map_or(0, |j| j + 1)].push(p);
        }
        let mut adjacency = vec![Vec::new(); nv];
        for (e, &p) in parent.iter().enumerate() {
            adjacency[p].push(e);
            adjacency[e + 1].push(e);
        }
        let out = ExplicitTree {
            marking,
            splits,
            legs,
            parent,
            adjacency,
        };
        debug_assert!(out.edge_splits_consistent());
        out
    }

    pub fn marking(&self) -> &Arc<MarkingSet> {
        &self.marking
    }

    pub fn vertex_count(&self) -> usize {
        self.legs.len()
    }

    pub fn edge_count(&self) -> usize {
        self.splits.len()
    }

    pub fn vertices(&self) -> Vec<usize> {
        (0..self.vertex_count()).collect()
    }

    pub fn splits(&self) -> &[Split] {
        &self.splits
    }

    /// Endpoints of edge `e` as (parent vertex, child vertex).
    pub fn edge_ends(&self, e: usize) -> (usize, usize) {
        (self.parent[e], e + 1)
    }

    pub fn legs_at(&self, v: usize) -> &[usize] {
        &self.legs[v]
    }

    pub fn edges_at(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn valence(&self, v: usize) -> usize {
        self.legs[v].len() + self.adjacency[v].len()
    }

    /// Vertex carrying the leg of `label`.
    pub fn leg_vertex(&self, label_index: usize) -> usize {
        for (v, legs) in self.legs.iter().enumerate() {
            if legs.contains(&label_index) {
                return v;
            }
        }
        unreachable!("every label has a leg")
    }

    /// Child blocks (edges to children) hanging directly below vertex `v`.
    pub fn child_edges(&self, v: usize) -> Vec<usize> {
        self.adjacency[v]
            .iter()
            .copied()
            .filter(|&e| self.parent[e] == v)
            .collect()
    }

    /// Edge above `v` toward the root, if any.
    pub fn parent_edge(&self, v: usize) -> Option<usize> {
        if v == 0 {
            None
        } else {
            Some(v - 1)
        }
    }

    fn edge_splits_consistent(&self) -> bool {
        // Deleting edge e must separate exactly its side's legs: the side of
        // split e equals the labels carried by the subtree below vertex e+1.
        (0..self.splits.len()).all(|e| {
            let mut below = BTreeSet::new();
            let mut stack = vec![e + 1];
            while let Some(v) = stack.pop() {
                below.extend(self.legs[v].iter().copied());
                for &c in &self.adjacency[v] {
                    if self.parent[c] == v {
                        stack.push(c + 1);
                    }
                }
            }
            below.iter().copied().collect::<Vec<_>>() == self.splits[e].side()
        })
    }
}

/// Every proper split of the marking, in canonical order.
pub fn all_splits(marking: &MarkingSet) -> Vec<Split> {
    let n = marking.len();
    let mut out = Vec::new();
    // Canonical sides are the subsets of the first n-1 labels of size 2..=n-2.
    for mask in 0u64..(1 << (n - 1)) {
        let side: Vec<usize> = (0..n - 1).filter(|i| mask >> i & 1 == 1).collect();
        if side.len() >= 2 && side.len() <= n - 2 {
            out.push(Split { side });
        }
    }
    out.sort();
    out
}

pub const DEFAULT_ENUMERATION_BOUND: usize = 9;

/// Stream of all compatible split systems with at most `max_edges` splits,
/// each exactly once, in depth-first lexicographic order. The traversal is
/// partitionable by prefix: disjoint prefixes yield disjoint subtrees.
pub fn enumerate_stable_trees(
    marking: &Arc<MarkingSet>,
    max_edges: Option<usize>,
    bound: Option<usize>,
) -> Result<StableTreeIter, TreeError> {
    let bound = bound.unwrap_or(DEFAULT_ENUMERATION_BOUND);
    if marking.len() > bound {
        return Err(TreeError::SizeBound(marking.len(), bound));
    }
    let splits = all_splits(marking);
    Ok(StableTreeIter {
        marking: Arc::clone(marking),
        splits,
        max_edges: max_edges.unwrap_or(marking.len().saturating_sub(3)),
        stack: vec![(Vec::new(), 0)],
    })
}

pub struct StableTreeIter {
    marking: Arc<MarkingSet>,
    splits: Vec<Split>,
    max_edges: usize,
    /// Pending (chosen indices, next candidate index) nodes.
    stack: Vec<(Vec<usize>, usize)>,
}

impl Iterator for StableTreeIter {
    type Item = MarkedTree;

    fn next(&mut self) -> Option<MarkedTree> {
        let (chosen, next) = self.stack.pop()?;
        if chosen.len() < self.max_edges {
            // Push extensions in reverse so the smallest candidate pops first.
            for cand in (next..self.splits.len()).rev() {
                if chosen
                    .iter()
                    .all(|&c| self.splits[c].compatible(&self.splits[cand]))
                {
                    let mut ext = chosen.clone();
                    ext.push(cand);
                    self.stack.push((ext, cand + 1));
                }
            }
        }
        let splits: BTreeSet<Split> =
            chosen.iter().map(|&i| self.splits[i].clone()).collect();
        Some(MarkedTree {
            marking: Arc::clone(&self.marking),
            splits,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn marking(labels: &[&str]) -> Arc<MarkingSet> {
        MarkingSet::new(labels.iter().copied()).unwrap()
    }

    fn split(tree_marking: &MarkingSet, labels: &[&str]) -> Split {
        Split::from_labels(labels, tree_marking).unwrap()
    }

    #[test]
    fn split_canonicalizes_away_from_last_label() {
        let m = marking(&["a", "b", "c", "d"]);
        let s = split(&m, &["c", "d"]);
        assert_eq!(s.side_labels(&m), vec!["a", "b"]);
        assert_eq!(s, split(&m, &["a", "b"]));
        assert_eq!(s.key(&m), "a,b");
    }

    #[test]
    fn trivial_split_rejected() {
        let m = marking(&["a", "b", "c", "d"]);
        assert!(matches!(
            Split::from_labels(&["a"], &m),
            Err(TreeError::TrivialSplit(_))
        ));
        assert!(matches!(
            Split::from_labels(&["a", "b", "c"], &m),
            Err(TreeError::TrivialSplit(_))
        ));
    }

    #[test]
    fn validate_split_system_examples() {
        let m = marking(&["a", "b", "c", "d"]);
        let empty = MarkedTree::new(Arc::clone(&m), []).unwrap();
        assert!(empty.is_one_vertex());

        let one = MarkedTree::new(Arc::clone(&m), [split(&m, &["a", "b"])]).unwrap();
        assert_eq!(one.to_explicit().vertex_count(), 2);

        let err = MarkedTree::new(
            Arc::clone(&m),
            [split(&m, &["a", "b"]), split(&m, &["a", "c"])],
        );
        assert!(matches!(err, Err(TreeError::IncompatibleSplits(_, _))));
    }

    #[test]
    fn explicit_tree_examples() {
        let m = marking(&["a", "b", "c", "d"]);
        let t = MarkedTree::new(Arc::clone(&m), []).unwrap().to_explicit();
        assert_eq!(t.vertex_count(), 1);
        assert_eq!(t.valence(0), 4);

        let t = MarkedTree::new(Arc::clone(&m), [split(&m, &["a", "b"])])
            .unwrap()
            .to_explicit();
        assert_eq!(t.vertex_count(), 2);
        assert_eq!(t.valence(0), 3);
        assert_eq!(t.valence(1), 3);

        let m5 = marking(&["a", "b", "c", "d", "e"]);
        let t = MarkedTree::new(
            Arc::clone(&m5),
            [split(&m5, &["a", "b"]), split(&m5, &["a", "b", "c"])],
        )
        .unwrap()
        .to_explicit();
        assert_eq!(t.vertex_count(), 3);
        assert!(t.vertices().iter().all(|&v| t.valence(v) == 3));
    }

    #[test]
    fn contract_and_containment() {
        let m = marking(&["a", "b", "c", "d", "e"]);
        let s1 = split(&m, &["a", "b"]);
        let s2 = split(&m, &["a", "b", "c"]);
        let t = MarkedTree::new(Arc::clone(&m), [s1.clone(), s2.clone()]).unwrap();

        assert_eq!(t.contract(&BTreeSet::new()).unwrap(), t);
        let all: BTreeSet<Split> = t.splits().clone();
        assert!(t.contract(&all).unwrap().is_one_vertex());
        let removed = t.contract(&[s1.clone()].into_iter().collect()).unwrap();
        assert_eq!(removed.splits().len(), 1);
        assert!(removed.splits().contains(&s2));

        assert!(t.is_contraction_of(&t).unwrap());
        let point = MarkedTree::one_vertex(Arc::clone(&m));
        assert!(point.is_contraction_of(&t).unwrap());
        let other = MarkedTree::new(Arc::clone(&m), [split(&m, &["a", "c"])]).unwrap();
        assert!(!other.is_contraction_of(&t).unwrap());

        let bad = t.contract(&[split(&m, &["c", "d"])].into_iter().collect());
        assert!(matches!(bad, Err(TreeError::UnknownSplit(_))));
    }

    #[test]
    fn forget_examples() {
        let q = marking(&["a", "b", "c", "d", "e"]);
        let p = marking(&["a", "b", "c", "d"]);
        let t = MarkedTree::new(Arc::clone(&q), [split(&q, &["a", "e"])]).unwrap();
        assert_eq!(t.forget(&q).unwrap(), t);
        let f = t.forget(&p).unwrap();
        assert!(f.is_one_vertex());

        // Two splits restricting to the same bipartition merge into one.
        let q6 = marking(&["a", "b", "c", "d", "e", "f"]);
        let t = MarkedTree::new(
            Arc::clone(&q6),
            [split(&q6, &["a", "b", "e"]), split(&q6, &["a", "b", "e", "f"])],
        )
        .unwrap();
        let f = t.forget(&p).unwrap();
        assert_eq!(f.splits().len(), 1);
        assert_eq!(
            f.splits().iter().next().unwrap().side_labels(&p),
            vec!["a", "b"]
        );

        let tiny = MarkingSet::new(["a", "b", "x"]).unwrap();
        assert!(matches!(
            t.forget(&tiny),
            Err(TreeError::BadSubmarking(_))
        ));
    }

    #[test]
    fn enumeration_counts_small() {
        let m4 = marking(&["a", "b", "c", "d"]);
        let mut by_size = [0usize; 2];
        for t in enumerate_stable_trees(&m4, None, None).unwrap() {
            by_size[t.edge_count()] += 1;
        }
        assert_eq!(by_size, [1, 3]);

        let m5 = marking(&["a", "b", "c", "d", "e"]);
        let mut sizes = std::collections::BTreeMap::new();
        for t in enumerate_stable_trees(&m5, None, None).unwrap() {
            *sizes.entry(t.edge_count()).or_insert(0usize) += 1;
        }
        assert_eq!(sizes.get(&1), Some(&10));
        assert_eq!(sizes.get(&2), Some(&15));

        let m6 = marking(&["a", "b", "c", "d", "e", "f"]);
        assert_eq!(all_splits(&m6).len(), 25);
        let maximal = enumerate_stable_trees(&m6, None, None)
            .unwrap()
            .filter(|t| t.is_trivalent())
            .count();
        assert_eq!(maximal, 105);
    }

    #[test]
    fn enumeration_bound_enforced() {
        let m = MarkingSet::new((0..10).map(|i| format!("p{i}"))).unwrap();
        assert!(matches!(
            enumerate_stable_trees(&m, None, None),
            Err(TreeError::SizeBound(10, 9))
        ));
        assert!(enumerate_stable_trees(&m, Some(1), Some(10)).is_ok());
    }

    #[test]
    fn round_trip_splits_through_explicit_tree() {
        let m = marking(&["a", "b", "c", "d", "e", "f"]);
        for t in enumerate_stable_trees(&m, Some(3), None).unwrap() {
            let explicit = t.to_explicit();
            let back: BTreeSet<Split> = explicit.splits().iter().cloned().collect();
            assert_eq!(&back, t.splits());
            assert!(explicit.vertices().iter().all(|&v| explicit.valence(v) >= 3));
            assert_eq!(explicit.edge_count(), explicit.vertex_count() - 1);
            assert_eq!(t.is_trivalent(), explicit.vertices().iter().all(|&v| explicit.valence(v) == 3));
        }
    }
}
