//! Points and rays of the cone complex of tropical curves.
//!
//! A point of a cone is a marked tree with a nonnegative rational coordinate
//! per split. Points are kept in canonical form: zero coordinates are removed
//! and the tree is contracted accordingly, so equality across faces is
//! syntactic. The cone complex itself is never materialized; face relations
//! live entirely in the split systems.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::Zero;
use thiserror::Error;

use crate::trees::{MarkedTree, MarkingSet, Split, TreeError};
use crate::Rational;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TropicalError {
    #[error("negative length {0} on split {1:?}")]
    NegativeLength(String, Vec<String>),
    #[error("coordinate keys do not match the tree's splits")]
    KeyMismatch,
    #[error("the cone point spans no ray")]
    ConePointHasNoRay,
    #[error(transparent)]
    Tree(#[from] TreeError),
}

/// Canonical point of the tropical moduli cone complex: strictly positive
/// coordinates on the splits of its (already contracted) tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConePoint {
    tree: MarkedTree,
    coords: BTreeMap<Split, Rational>,
}

/// A tropical curve is exactly a canonical cone point (positive lengths on
/// the contracted tree); the cone point of the complex is the empty curve.
pub type TropicalCurve = ConePoint;

impl ConePoint {
    /// Build a point from nonnegative coordinates keyed by the tree's splits.
    /// Zero-coordinate splits are contracted away.
    pub fn new(
        tree: &MarkedTree,
        coords: BTreeMap<Split, Rational>,
    ) -> Result<Self, TropicalError> {
        if coords.len() != tree.splits().len()
            || !coords.keys().all(|s| tree.splits().contains(s))
        {
            return Err(TropicalError::KeyMismatch);
        }
        for (s, v) in &coords {
            if v < &Rational::zero() {
                return Err(TropicalError::NegativeLength(
                    v.to_string(),
                    s.side_labels(tree.marking()),
                ));
            }
        }
        let zero: std::collections::BTreeSet<Split> = coords
            .iter()
            .filter(|(_, v)| v.is_zero())
            .map(|(s, _)| s.clone())
            .collect();
        let tree = tree.contract(&zero)?;
        let coords = coords.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        Ok(ConePoint { tree, coords })
    }

    pub fn cone_point(marking: Arc<MarkingSet>) -> Self {
        ConePoint {
            tree: MarkedTree::one_vertex(marking),
            coords: BTreeMap::new(),
        }
    }

    pub fn tree(&self) -> &MarkedTree {
        &self.tree
    }

    pub fn marking(&self) -> &Arc<MarkingSet> {
        self.tree.marking()
    }

    pub fn coords(&self) -> &BTreeMap<Split, Rational> {
        &self.coords
    }

    pub fn is_cone_point(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn coordinate(&self, split: &Split) -> Rational {
        self.coords.get(split).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn scale(&self, factor: &Rational) -> Result<ConePoint, TropicalError> {
        let coords = self
            .coords
            .iter()
            .map(|(s, v)| (s.clone(), v * factor))
            .collect();
        // Re-canonicalize: factor zero collapses to the cone point.
        ConePoint::new(&self.tree, coords)
    }

    /// Push the point forward along the tropical forgetful map: restrict each
    /// split to the sub-marking, drop the ones that trivialize, and sum the
    /// lengths of splits with equal restriction.
    pub fn forget(&self, sub: &Arc<MarkingSet>) -> Result<ConePoint, TropicalError> {
        if !self.marking().contains_all(sub) || sub.len() < 3 {
            return Err(TreeError::BadSubmarking(sub.labels().to_vec()).into());
        }
        let mut coords: BTreeMap<Split, Rational> = BTreeMap::new();
        for (s, v) in &self.coords {
            if let Some(r) = s.restrict(self.marking(), sub) {
                *coords.entry(r).or_insert_with(Rational::zero) += v;
            }
        }
        let tree = MarkedTree::new(Arc::clone(sub), coords.keys().cloned())?;
        ConePoint::new(&tree, coords)
    }

    /// Sum of coordinates (the L1 norm used for ray normalization).
    pub fn total_length(&self) -> Rational {
        self.coords
            .values()
            .fold(Rational::zero(), |acc, v| acc + v)
    }
}

/// Ray of the cone complex: a canonical direction with coordinate sum 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ray {
    direction: ConePoint,
}

impl Ray {
    pub fn from_point(point: &ConePoint) -> Result<Ray, TropicalError> {
        if point.is_cone_point() {
            return Err(TropicalError::ConePointHasNoRay);
        }
        let total = point.total_length();
        let coords = point
            .coords
            .iter()
            .map(|(s, v)| (s.clone(), v / &total))
            .collect();
        Ok(Ray {
            direction: ConePoint {
                tree: point.tree.clone(),
                coords,
            },
        })
    }

    pub fn direction(&self) -> &ConePoint {
        &self.direction
    }
}

/// Convenience: a point with a single positive length on one split.
pub fn single_length_point(
    tree: &MarkedTree,
    assignments: &[(Split, Rational)],
) -> Result<ConePoint, TropicalError> {
    let mut coords: BTreeMap<Split, Rational> = tree
        .splits()
        .iter()
        .map(|s| (s.clone(), Rational::zero()))
        .collect();
    for (s, v) in assignments {
        if !coords.contains_key(s) {
            return Err(TropicalError::KeyMismatch);
        }
        coords.insert(s.clone(), v.clone());
    }
    ConePoint::new(tree, coords)
}

impl ConePoint {
    /// Linear-combination helper valid inside one closed cone: both points
    /// must lie on faces of `tree`.
    pub fn combine(
        tree: &MarkedTree,
        terms: &[(&ConePoint, Rational)],
    ) -> Result<ConePoint, TropicalError> {
        let mut coords: BTreeMap<Split, Rational> = tree
            .splits()
            .iter()
            .map(|s| (s.clone(), Rational::zero()))
            .collect();
        for (p, scale) in terms {
            for (s, v) in &p.coords {
                let Some(slot) = coords.get_mut(s) else {
                    return Err(TropicalError::KeyMismatch);
                };
                *slot += v * scale;
            }
        }
        ConePoint::new(tree, coords)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational_int;
    use crate::trees::MarkingSet;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn marking() -> Arc<MarkingSet> {
        MarkingSet::new(["a", "b", "c", "d", "e"]).unwrap()
    }

    #[test]
    fn make_point_examples() {
        let m = MarkingSet::new(["a", "b", "c", "d"]).unwrap();
        let s = Split::from_labels(&["a", "b"], &m).unwrap();
        let tree = MarkedTree::new(Arc::clone(&m), [s.clone()]).unwrap();

        let zeroed = single_length_point(&tree, &[(s.clone(), rational_int(0))]).unwrap();
        assert!(zeroed.is_cone_point());
        assert_eq!(zeroed, ConePoint::cone_point(Arc::clone(&m)));

        let p = single_length_point(&tree, &[(s.clone(), rational_int(3))]).unwrap();
        assert_eq!(p.coordinate(&s), rational_int(3));

        let m5 = marking();
        let s1 = Split::from_labels(&["a", "b"], &m5).unwrap();
        let s2 = Split::from_labels(&["a", "b", "c"], &m5).unwrap();
        let tree5 = MarkedTree::new(Arc::clone(&m5), [s1.clone(), s2.clone()]).unwrap();
        let face = single_length_point(&tree5, &[(s1.clone(), rational_int(2))]).unwrap();
        assert_eq!(face.tree().splits().len(), 1);
        let small_tree = MarkedTree::new(Arc::clone(&m5), [s1.clone()]).unwrap();
        let direct = single_length_point(&small_tree, &[(s1, rational_int(2))]).unwrap();
        assert_eq!(face, direct);
    }

    #[test]
    fn negative_length_rejected() {
        let m = MarkingSet::new(["a", "b", "c", "d"]).unwrap();
        let s = Split::from_labels(&["a", "b"], &m).unwrap();
        let tree = MarkedTree::new(Arc::clone(&m), [s.clone()]).unwrap();
        assert!(matches!(
            single_length_point(&tree, &[(s, rational_int(-1))]),
            Err(TropicalError::NegativeLength(_, _))
        ));
    }

    #[test]
    fn forget_examples() {
        let q5 = marking();
        let p4 = MarkingSet::new(["a", "b", "c", "d"]).unwrap();

        let s = Split::from_labels(&["a", "e"], &q5).unwrap();
        let tree = MarkedTree::new(Arc::clone(&q5), [s.clone()]).unwrap();
        let point = single_length_point(&tree, &[(s, rational_int(5))]).unwrap();
        assert_eq!(point.forget(&q5).unwrap(), point);
        assert!(point.forget(&p4).unwrap().is_cone_point());

        let q6 = MarkingSet::new(["a", "b", "c", "d", "e", "f"]).unwrap();
        let s1 = Split::from_labels(&["a", "b", "e"], &q6).unwrap();
        let s2 = Split::from_labels(&["a", "b", "e", "f"], &q6).unwrap();
        let tree = MarkedTree::new(Arc::clone(&q6), [s1.clone(), s2.clone()]).unwrap();
        let point = single_length_point(
            &tree,
            &[(s1, rational_int(2)), (s2, rational_int(3))],
        )
        .unwrap();
        let forgotten = point.forget(&p4).unwrap();
        let ab = Split::from_labels(&["a", "b"], &p4).unwrap();
        assert_eq!(forgotten.coords().len(), 1);
        assert_eq!(forgotten.coordinate(&ab), rational_int(5));
    }

    #[test]
    fn forget_is_linear_on_a_cone() {
        let q6 = MarkingSet::new(["a", "b", "c", "d", "e", "f"]).unwrap();
        let p4 = MarkingSet::new(["a", "b", "c", "d"]).unwrap();
        let s1 = Split::from_labels(&["a", "b", "e"], &q6).unwrap();
        let s2 = Split::from_labels(&["a", "b", "e", "f"], &q6).unwrap();
        let tree = MarkedTree::new(Arc::clone(&q6), [s1.clone(), s2.clone()]).unwrap();
        let x = single_length_point(&tree, &[(s1.clone(), q(1, 2)), (s2.clone(), q(3, 1))]).unwrap();
        let y = single_length_point(&tree, &[(s1, q(7, 3)), (s2, q(1, 5))]).unwrap();
        let s = q(2, 1);
        let t = q(5, 7);
        let lhs = ConePoint::combine(&tree, &[(&x, s.clone()), (&y, t.clone())])
            .unwrap()
            .forget(&p4)
            .unwrap();
        let fx = x.forget(&p4).unwrap();
        let fy = y.forget(&p4).unwrap();
        let rhs = ConePoint::combine(fx.tree(), &[(&fx, s), (&fy, t)]).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn ray_examples() {
        let m = MarkingSet::new(["a", "b", "c", "d"]).unwrap();
        let s = Split::from_labels(&["a", "b"], &m).unwrap();
        let tree = MarkedTree::new(Arc::clone(&m), [s.clone()]).unwrap();
        let p = single_length_point(&tree, &[(s.clone(), rational_int(3))]).unwrap();
        let ray = Ray::from_point(&p).unwrap();
        assert_eq!(ray.direction().coordinate(&s), rational_int(1));

        let m5 = marking();
        let s1 = Split::from_labels(&["a", "b"], &m5).unwrap();
        let s2 = Split::from_labels(&["a", "b", "c"], &m5).unwrap();
        let tree5 = MarkedTree::new(Arc::clone(&m5), [s1.clone(), s2.clone()]).unwrap();
        let p = single_length_point(
            &tree5,
            &[(s1.clone(), rational_int(2)), (s2.clone(), rational_int(2))],
        )
        .unwrap();
        let ray = Ray::from_point(&p).unwrap();
        assert_eq!(ray.direction().coordinate(&s1), q(1, 2));
        assert_eq!(ray.direction().coordinate(&s2), q(1, 2));

        let cp = ConePoint::cone_point(m);
        assert!(matches!(
            Ray::from_point(&cp),
            Err(TropicalError::ConePointHasNoRay)
        ));
    }

    #[test]
    fn canonicalization_idempotent() {
        let m = marking();
        let s1 = Split::from_labels(&["a", "b"], &m).unwrap();
        let s2 = Split::from_labels(&["a", "b", "c"], &m).unwrap();
        let tree = MarkedTree::new(Arc::clone(&m), [s1.clone(), s2]).unwrap();
        let p = single_length_point(&tree, &[(s1, q(5, 3))]).unwrap();
        let again = ConePoint::new(p.tree(), p.coords().clone()).unwrap();
        assert_eq!(p, again);
    }
}
