//! Combinatorial types of admissible covers, their cones, the two
//! projections to the tropical moduli space, and fixed-cone reports.
//!
//! A combinatorial type records the target tree, the source tree marked by
//! the fiber points, the graph map between them, and the edge/leg degrees.
//! Cone coordinates are indexed by target edges; the projection to the
//! target curve scales coordinate `a_e` by `lcmdeg(e)`, and an edge of the
//! source over `e` gets length `lcmdeg(e)/edgedeg * a_e`.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use num_traits::Zero;
use thiserror::Error;

use crate::monodromy::{DynamicalPortrait, MonodromyCover};
use crate::multicurve::WeightedMulticurve;
use crate::pullback::{PullbackError, PullbackTree, TltMatrix};
use crate::spectral::{self, EigenCertificate, EigenconeBasis, RationalMatrix, SpectralError};
use crate::trees::{ExplicitTree, MarkedTree, Split, TreeError};
use crate::tropical::{ConePoint, TropicalError};
use crate::Rational;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TypeError {
    #[error("map is not a graph homomorphism: {0}")]
    NotHomomorphism(String),
    #[error("balancing failure at source vertex {0}: {1}")]
    BalancingFailure(usize, String),
    #[error("local Riemann-Hurwitz failure at source vertex {0}: {1} flags, expected {2}")]
    LocalRHFailure(usize, usize, usize),
    #[error("source vertex {0} has valence {1} < 3")]
    UnstableTree(usize, usize),
    #[error("source graph is not a tree ({0} vertices, {1} edges, connected: {2})")]
    NotATree(usize, usize, bool),
    #[error("edge {0:?} is not an edge of the target tree")]
    UnknownEdge(Vec<String>),
    #[error("leg set does not match the cover's fiber points: {0}")]
    LegMismatch(String),
    #[error(transparent)]
    Tree(#[from] TreeError),
    #[error(transparent)]
    Tropical(#[from] TropicalError),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
    #[error(transparent)]
    Pullback(#[from] PullbackError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypeVertex {
    /// Vertex of the target tree under this component.
    pub base: usize,
    /// Covering degree of the component.
    pub degree: usize,
    /// Fiber points attached here (indices into the cover's point table).
    pub legs: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypeEdge {
    pub ends: (usize, usize),
    /// Edge of the target tree (index into its explicit form).
    pub base_edge: usize,
    pub degree: usize,
}

/// Combinatorial type of an admissible cover with the profile of the stored
/// monodromy cover.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CombinatorialType {
    cover: Arc<MonodromyCover>,
    t1: MarkedTree,
    t1_explicit: ExplicitTree,
    vertices: Vec<TypeVertex>,
    edges: Vec<TypeEdge>,
    /// Split of the fiber marking induced by each source edge.
    upstairs_splits: Vec<Split>,
}

impl CombinatorialType {
    /// Package a pullback as a combinatorial type (target tree = dual tree of
    /// the multicurve).
    pub fn from_pullback(tree: &PullbackTree) -> CombinatorialType {
        let vertices = tree
            .vertices()
            .iter()
            .map(|v| TypeVertex {
                base: v.region,
                degree: v.orbit.len(),
                legs: v.legs.clone(),
            })
            .collect();
        let edges = tree
            .edges()
            .iter()
            .map(|e| TypeEdge {
                ends: e.ends,
                base_edge: e.base_edge,
                degree: e.degree,
            })
            .collect();
        let out = CombinatorialType {
            cover: Arc::clone(tree.cover()),
            t1: tree.base_tree().clone(),
            t1_explicit: tree.base_explicit().clone(),
            vertices,
            edges,
            upstairs_splits: (0..tree.edges().len())
                .map(|e| tree.upstairs_split(e).clone())
                .collect(),
        };
        debug_assert!(out.validate().is_ok());
        out
    }

    /// Build the type of the pullback of a multicurve.
    pub fn build(
        cover: &Arc<MonodromyCover>,
        multicurve: &crate::multicurve::StandardMulticurve,
    ) -> Result<CombinatorialType, TypeError> {
        let tree = PullbackTree::build(cover, multicurve)?;
        Ok(CombinatorialType::from_pullback(&tree))
    }

    /// Validate a raw candidate record against the cover's profile. Vertex
    /// degrees are derived from the balancing sums.
    pub fn from_raw(
        cover: &Arc<MonodromyCover>,
        t1: MarkedTree,
        vertex_bases: Vec<usize>,
        edges: Vec<(usize, usize, usize, usize)>,
        leg_assignment: Vec<usize>,
    ) -> Result<CombinatorialType, TypeError> {
        let t1_explicit = t1.to_explicit();
        let vertices: Vec<TypeVertex> = vertex_bases
            .into_iter()
            .map(|base| TypeVertex {
                base,
                degree: 0,
                legs: Vec::new(),
            })
            .collect();
        let edges: Vec<TypeEdge> = edges
            .into_iter()
            .map(|(a, b, base_edge, degree)| TypeEdge {
                ends: (a, b),
                base_edge,
                degree,
            })
            .collect();
        let mut out = CombinatorialType {
            cover: Arc::clone(cover),
            t1,
            t1_explicit,
            vertices,
            edges,
            upstairs_splits: Vec::new(),
        };
        if leg_assignment.len() != cover.points().len() {
            return Err(TypeError::LegMismatch(format!(
                "expected {} fiber points, got {}",
                cover.points().len(),
                leg_assignment.len()
            )));
        }
        for (q, &v) in leg_assignment.iter().enumerate() {
            if v >= out.vertices.len() {
                return Err(TypeError::LegMismatch(format!(
                    "leg {} assigned to missing vertex {}",
                    out.cover.points()[q].key(out.cover.marking()),
                    v
                )));
            }
            out.vertices[v].legs.push(q);
        }
        out.derive_degrees()?;
        out.validate()?;
        out.upstairs_splits = out.compute_upstairs_splits();
        Ok(out)
    }

    fn derive_degrees(&mut self) -> Result<(), TypeError> {
        for vi in 0..self.vertices.len() {
            let v = &self.vertices[vi];
            let mut candidate: Option<usize> = None;
            for &p in self.t1_explicit.legs_at(v.base) {
                let sum: usize = v
                    .legs
                    .iter()
                    .filter(|&&q| self.cover.points()[q].base == p)
                    .map(|&q| self.cover.points()[q].local_degree())
                    .sum();
                match candidate {
                    None => candidate = Some(sum),
                    Some(c) if c != sum => {
                        return Err(TypeError::BalancingFailure(
                            vi,
                            format!(
                                "legs over {:?} sum to {sum}, expected {c}",
                                self.cover.marking().label(p)
                            ),
                        ));
                    }
                    _ => {}
                }
            }
            for &e in self.t1_explicit.edges_at(v.base) {
                let sum: usize = self
                    .edges
                    .iter()
                    .filter(|f| f.base_edge == e && (f.ends.0 == vi || f.ends.1 == vi))
                    .map(|f| f.degree)
                    .sum();
                match candidate {
                    None => candidate = Some(sum),
                    Some(c) if c != sum => {
                        return Err(TypeError::BalancingFailure(
                            vi,
                            format!(
                                "edges over {:?} sum to {sum}, expected {c}",
                                self.t1_explicit.splits()[e].key(self.cover.marking())
                            ),
                        ));
                    }
                    _ => {}
                }
            }
            let degree = candidate.filter(|&d| d > 0).ok_or_else(|| {
                TypeError::BalancingFailure(vi, "component with no flags".into())
            })?;
            self.vertices[vi].degree = degree;
        }
        Ok(())
    }

    /// Full invariant check: graph map, balancing, local Riemann-Hurwitz,
    /// stability, tree-ness, profile consistency, total degrees.
    pub fn validate(&self) -> Result<(), TypeError> {
        let d = self.cover.degree();
        // Graph map: edges to edges with matching endpoints.
        for (fi, f) in self.edges.iter().enumerate() {
            if f.base_edge >= self.t1_explicit.edge_count() {
                return Err(TypeError::NotHomomorphism(format!(
                    "edge {fi} maps to a missing target edge"
                )));
            }
            let (pu, cv) = self.t1_explicit.edge_ends(f.base_edge);
            let (a, b) = f.ends;
            if a >= self.vertices.len() || b >= self.vertices.len() {
                return Err(TypeError::NotHomomorphism(format!(
                    "edge {fi} has a missing endpoint"
                )));
            }
            let bases = (self.vertices[a].base, self.vertices[b].base);
            if bases != (pu, cv) && bases != (cv, pu) {
                return Err(TypeError::NotHomomorphism(format!(
                    "edge {fi} joins components over non-adjacent regions"
                )));
            }
            if f.degree == 0 {
                return Err(TypeError::BalancingFailure(a, "edge of degree 0".into()));
            }
        }
        // Legs: exactly the fiber points, over the right regions.
        let mut seen = vec![false; self.cover.points().len()];
        for (vi, v) in self.vertices.iter().enumerate() {
            for &q in &v.legs {
                if seen[q] {
                    return Err(TypeError::LegMismatch(format!(
                        "fiber point {} attached twice",
                        self.cover.points()[q].key(self.cover.marking())
                    )));
                }
                seen[q] = true;
                let expected = self.t1_explicit.leg_vertex(self.cover.points()[q].base);
                if v.base != expected {
                    return Err(TypeError::NotHomomorphism(format!(
                        "leg {} sits over the wrong region",
                        self.cover.points()[q].key(self.cover.marking())
                    )));
                }
                let _ = vi;
            }
        }
        if !seen.iter().all(|&s| s) {
            return Err(TypeError::LegMismatch("missing fiber points".into()));
        }
        // Tree-ness.
        let nv = self.vertices.len();
        let ne = self.edges.len();
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); nv];
        for (fi, f) in self.edges.iter().enumerate() {
            adj[f.ends.0].push(fi);
            adj[f.ends.1].push(fi);
        }
        let mut reach = vec![false; nv];
        let mut stack = vec![0usize];
        while let Some(v) = stack.pop() {
            if reach[v] {
                continue;
            }
            reach[v] = true;
            for &fi in &adj[v] {
                let (a, b) = self.edges[fi].ends;
                stack.push(if a == v { b } else { a });
            }
        }
        let connected = reach.iter().all(|&r| r);
        if ne + 1 != nv || !connected {
            return Err(TypeError::NotATree(nv, ne, connected));
        }
        // Balancing per vertex and flag, stability, local Riemann-Hurwitz.
        for (vi, v) in self.vertices.iter().enumerate() {
            let k = v.degree;
            for &p in self.t1_explicit.legs_at(v.base) {
                let sum: usize = v
                    .legs
                    .iter()
                    .filter(|&&q| self.cover.points()[q].base == p)
                    .map(|&q| self.cover.points()[q].local_degree())
                    .sum();
                if sum != k {
                    return Err(TypeError::BalancingFailure(
                        vi,
                        format!(
                            "legs over {:?} sum to {sum}, vertex degree {k}",
                            self.cover.marking().label(p)
                        ),
                    ));
                }
            }
            for &e in self.t1_explicit.edges_at(v.base) {
                let sum: usize = self
                    .edges
                    .iter()
                    .filter(|f| f.base_edge == e && (f.ends.0 == vi || f.ends.1 == vi))
                    .map(|f| f.degree)
                    .sum();
                if sum != k {
                    return Err(TypeError::BalancingFailure(
                        vi,
                        format!(
                            "edges over {:?} sum to {sum}, vertex degree {k}",
                            self.t1_explicit.splits()[e].key(self.cover.marking())
                        ),
                    ));
                }
            }
            let flags = v.legs.len() + adj[vi].len();
            if flags < 3 {
                return Err(TypeError::UnstableTree(vi, flags));
            }
            let m = self.t1_explicit.valence(v.base);
            let expected = k * (m - 2) + 2;
            if flags != expected {
                return Err(TypeError::LocalRHFailure(vi, flags, expected));
            }
        }
        // Total degree over every target vertex and edge.
        for tv in self.t1_explicit.vertices() {
            let total: usize = self
                .vertices
                .iter()
                .filter(|v| v.base == tv)
                .map(|v| v.degree)
                .sum();
            if total != d {
                return Err(TypeError::BalancingFailure(
                    tv,
                    format!("components over a region cover degree {total}, expected {d}"),
                ));
            }
        }
        for e in 0..self.t1_explicit.edge_count() {
            let total: usize = self
                .edges
                .iter()
                .filter(|f| f.base_edge == e)
                .map(|f| f.degree)
                .sum();
            if total != d {
                return Err(TypeError::BalancingFailure(
                    e,
                    format!("curves over an edge cover degree {total}, expected {d}"),
                ));
            }
        }
        Ok(())
    }

    fn compute_upstairs_splits(&self) -> Vec<Split> {
        let upstairs = self.cover.upstairs_marking();
        let nv = self.vertices.len();
        (0..self.edges.len())
            .map(|cut| {
                let mut side: BTreeSet<usize> = BTreeSet::new();
                let mut seen = vec![false; nv];
                let mut stack = vec![self.edges[cut].ends.1];
                while let Some(v) = stack.pop() {
                    if seen[v] {
                        continue;
                    }
                    seen[v] = true;
                    side.extend(self.vertices[v].legs.iter().copied());
                    for (fi, f) in self.edges.iter().enumerate() {
                        if fi == cut {
                            continue;
                        }
                        if f.ends.0 == v {
                            stack.push(f.ends.1);
                        } else if f.ends.1 == v {
                            stack.push(f.ends.0);
                        }
                    }
                }
                Split::new(side, upstairs)
                    .expect("both sides of a source edge carry at least 2 points")
            })
            .collect()
    }

    pub fn cover(&self) -> &Arc<MonodromyCover> {
        &self.cover
    }

    pub fn target_tree(&self) -> &MarkedTree {
        &self.t1
    }

    pub fn target_explicit(&self) -> &ExplicitTree {
        &self.t1_explicit
    }

    pub fn vertices(&self) -> &[TypeVertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[TypeEdge] {
        &self.edges
    }

    pub fn upstairs_split(&self, edge: usize) -> &Split {
        &self.upstairs_splits[edge]
    }

    pub fn is_cone_point_type(&self) -> bool {
        self.t1.is_one_vertex()
    }

    /// The source tree as a marked tree on the fiber marking.
    pub fn source_tree(&self) -> MarkedTree {
        MarkedTree::new(
            Arc::clone(self.cover.upstairs_marking()),
            self.upstairs_splits.iter().cloned(),
        )
        .expect("source edge splits are compatible")
    }

    /// Leg degree of a fiber point (the local degree of the cover there).
    pub fn leg_degree(&self, point: usize) -> usize {
        self.cover.points()[point].local_degree()
    }

    /// lcm of the degrees of the source edges over target edge `e`.
    pub fn lcm_degree(&self, base_edge: usize) -> usize {
        self.edges
            .iter()
            .filter(|f| f.base_edge == base_edge)
            .fold(1usize, |acc, f| num_integer::lcm(acc, f.degree))
    }

    pub fn lcm_degrees(&self) -> BTreeMap<Split, usize> {
        (0..self.t1_explicit.edge_count())
            .map(|e| (self.t1_explicit.splits()[e].clone(), self.lcm_degree(e)))
            .collect()
    }

    /// Contract a set of target edges together with all source edges above
    /// them; the result is re-validated.
    pub fn contract(&self, remove: &BTreeSet<Split>) -> Result<CombinatorialType, TypeError> {
        for s in remove {
            if !self.t1.splits().contains(s) {
                return Err(TypeError::UnknownEdge(
                    s.side_labels(self.cover.marking()),
                ));
            }
        }
        let new_t1 = self.t1.contract(remove)?;
        let new_explicit = new_t1.to_explicit();
        // Old target vertex -> new target vertex, via surviving sides.
        let old_vertex_to_new: Vec<usize> = self
            .t1_explicit
            .vertices()
            .iter()
            .map(|&v| {
                // Walk up the old tree past contracted edges.
                let mut v = v;
                loop {
                    match self.t1_explicit.parent_edge(v) {
                        Some(e) if remove.contains(&self.t1_explicit.splits()[e]) => {
                            v = self.t1_explicit.edge_ends(e).0;
                        }
                        _ => break,
                    }
                }
                if v == 0 {
                    0
                } else {
                    let side = &self.t1_explicit.splits()[v - 1];
                    let pos = new_explicit
                        .splits()
                        .iter()
                        .position(|s| s == side)
                        .expect("surviving split");
                    pos + 1
                }
            })
            .collect();
        // Merge source vertices along contracted source edges (union-find).
        let nv = self.vertices.len();
        let mut parent: Vec<usize> = (0..nv).collect();
        fn find(parent: &mut Vec<usize>, mut i: usize) -> usize {
            while parent[i] != i {
                parent[i] = parent[parent[i]];
                i = parent[i];
            }
            i
        }
        for f in &self.edges {
            if remove.contains(&self.t1_explicit.splits()[f.base_edge]) {
                let a = find(&mut parent, f.ends.0);
                let b = find(&mut parent, f.ends.1);
                parent[a.max(b)] = a.min(b);
            }
        }
        let mut class_index: BTreeMap<usize, usize> = BTreeMap::new();
        for i in 0..nv {
            let root = find(&mut parent, i);
            let next = class_index.len();
            class_index.entry(root).or_insert(next);
        }
        let mut new_vertices: Vec<TypeVertex> = vec![
            TypeVertex {
                base: usize::MAX,
                degree: 0,
                legs: Vec::new(),
            };
            class_index.len()
        ];
        for (i, v) in self.vertices.iter().enumerate() {
            let root = find(&mut parent, i);
            let ni = class_index[&root];
            let nb = old_vertex_to_new[v.base];
            if new_vertices[ni].base == usize::MAX {
                new_vertices[ni].base = nb;
            }
            assert_eq!(
                new_vertices[ni].base, nb,
                "merged components lie over one region"
            );
            new_vertices[ni].legs.extend(v.legs.iter().copied());
        }
        for v in &mut new_vertices {
            v.legs.sort_unstable();
        }
        // Merged component degree: the covering degree over any one original
        // region inside the merged region; recomputed from a leg or edge sum
        // by the re-validation below, so seed it from one constituent.
        let mut new_edges = Vec::new();
        for f in &self.edges {
            let split = &self.t1_explicit.splits()[f.base_edge];
            if remove.contains(split) {
                continue;
            }
            let base_edge = new_explicit
                .splits()
                .iter()
                .position(|s| s == split)
                .expect("surviving split");
            let a = class_index[&find(&mut parent, f.ends.0)];
            let b = class_index[&find(&mut parent, f.ends.1)];
            new_edges.push(TypeEdge {
                ends: (a, b),
                base_edge,
                degree: f.degree,
            });
        }
        // Seed degrees per merged vertex: sum over constituents lying over a
        // single original region of the merged class.
        for (ni, nv_data) in new_vertices.iter_mut().enumerate() {
            let constituents: Vec<usize> = (0..nv)
                .filter(|&i| class_index[&find(&mut parent, i)] == ni)
                .collect();
            let sample_region = self.vertices[constituents[0]].base;
            nv_data.degree = constituents
                .iter()
                .filter(|&&i| self.vertices[i].base == sample_region)
                .map(|&i| self.vertices[i].degree)
                .sum();
        }
        let mut out = CombinatorialType {
            cover: Arc::clone(&self.cover),
            t1: new_t1,
            t1_explicit: new_explicit,
            vertices: new_vertices,
            edges: new_edges,
            upstairs_splits: Vec::new(),
        };
        out.validate()?;
        out.upstairs_splits = out.compute_upstairs_splits();
        Ok(out)
    }

    /// Projection of a cone point to the target curve: length
    /// `lcmdeg(e) * a_e` on each target edge.
    pub fn pi1(&self, point: &HurwitzConePoint) -> Result<ConePoint, TypeError> {
        let coords: BTreeMap<Split, Rational> = self
            .t1
            .splits()
            .iter()
            .enumerate()
            .map(|(e, s)| {
                let scale = Rational::from_integer((self.lcm_degree(e) as i64).into());
                (s.clone(), scale * point.coordinate(s))
            })
            .collect();
        Ok(ConePoint::new(&self.t1, coords)?)
    }

    /// Projection to the source curve on the fiber marking: the source edge
    /// over `e` with degree `k` gets length `lcmdeg(e)/k * a_e`.
    pub fn pi2_tilde(&self, point: &HurwitzConePoint) -> Result<ConePoint, TypeError> {
        let source = self.source_tree();
        let mut coords: BTreeMap<Split, Rational> = BTreeMap::new();
        for (fi, f) in self.edges.iter().enumerate() {
            let split = &self.upstairs_splits[fi];
            let base_split = &self.t1_explicit.splits()[f.base_edge];
            let scale = Rational::new(
                (self.lcm_degree(f.base_edge) as i64).into(),
                (f.degree as i64).into(),
            );
            coords.insert(split.clone(), scale * point.coordinate(base_split));
        }
        Ok(ConePoint::new(&source, coords)?)
    }

    /// Projection to the moduli space downstairs: forget the source curve to
    /// the branch set embedded by the portrait.
    pub fn pi2(
        &self,
        portrait: &DynamicalPortrait,
        point: &HurwitzConePoint,
    ) -> Result<ConePoint, TypeError> {
        let tilde = self.pi2_tilde(point)?;
        Ok(forget_to_branch_set(&tilde, &self.cover, portrait)?)
    }

    /// Restrict an upstairs split to the embedded branch set; `None` when it
    /// trivializes.
    pub fn restrict_to_branch_set(
        &self,
        split: &Split,
        portrait: &DynamicalPortrait,
    ) -> Option<Split> {
        let marking = self.cover.marking();
        let side: Vec<usize> = (0..marking.len())
            .filter(|&p| split.contains(portrait.iota(p)))
            .collect();
        if side.len() < 2 || side.len() > marking.len() - 2 {
            return None;
        }
        Some(Split::new(side, marking).expect("proper by the size check"))
    }

    /// Push the source tree down to the branch set.
    pub fn pushed_source_tree(
        &self,
        portrait: &DynamicalPortrait,
    ) -> Result<MarkedTree, TypeError> {
        let splits: BTreeSet<Split> = self
            .upstairs_splits
            .iter()
            .filter_map(|s| self.restrict_to_branch_set(s, portrait))
            .collect();
        Ok(MarkedTree::new(Arc::clone(self.cover.marking()), splits)?)
    }

    /// The cone is weakly fixed when the pushed source tree is a contraction
    /// of the target tree.
    pub fn is_weakly_fixed(&self, portrait: &DynamicalPortrait) -> Result<bool, TypeError> {
        let pushed = self.pushed_source_tree(portrait)?;
        Ok(pushed.is_contraction_of(&self.t1)?)
    }

    /// Matrix of the single-valued branch through this cone, in target-curve
    /// length coordinates: entry at (class s, edge e) sums `1/degree` over
    /// source edges above e whose restriction is s.
    pub fn branch_matrix(&self, portrait: &DynamicalPortrait) -> TltMatrix {
        let cols: Vec<Split> = self.t1.splits().iter().cloned().collect();
        let mut accum: BTreeMap<Split, Vec<Rational>> = BTreeMap::new();
        for (fi, f) in self.edges.iter().enumerate() {
            let Some(split) = self.restrict_to_branch_set(&self.upstairs_splits[fi], portrait)
            else {
                continue;
            };
            let col = cols
                .binary_search(&self.t1_explicit.splits()[f.base_edge])
                .expect("column present");
            let row = accum
                .entry(split)
                .or_insert_with(|| vec![Rational::zero(); cols.len()]);
            row[col] += Rational::new(1.into(), (f.degree as i64).into());
        }
        let direct = TltMatrix {
            rows: accum.keys().cloned().collect(),
            cols: cols.clone(),
            entries: accum.into_values().collect(),
        };
        // Symbolic cross-check: the composition pi2 after the inverse of the
        // diagonal pi1 must reproduce each column on basis vectors.
        debug_assert!(self.branch_matrix_matches_projections(portrait, &direct));
        direct
    }

    fn branch_matrix_matches_projections(
        &self,
        portrait: &DynamicalPortrait,
        matrix: &TltMatrix,
    ) -> bool {
        for e in 0..self.t1.splits().len() {
            // Unit target length on edge e: cone coordinate 1/lcmdeg(e).
            let coords: BTreeMap<Split, Rational> = self
                .t1
                .splits()
                .iter()
                .enumerate()
                .map(|(j, s)| {
                    let v = if j == e {
                        Rational::new(1.into(), (self.lcm_degree(e) as i64).into())
                    } else {
                        Rational::zero()
                    };
                    (s.clone(), v)
                })
                .collect();
            let point = HurwitzConePoint {
                ctype: None,
                coords,
            };
            let Ok(image) = self.pi2(portrait, &point) else {
                return false;
            };
            for (row, split) in matrix.rows.iter().enumerate() {
                if image.coordinate(split) != matrix.entries[row][e] {
                    return false;
                }
            }
            let total: Rational = matrix
                .rows
                .iter()
                .map(|s| image.coordinate(s))
                .fold(Rational::zero(), |acc, v| acc + v);
            if total != image.total_length() {
                return false;
            }
        }
        true
    }

    /// Weak-fixedness, spectral certificate, fixed rays, and the obstruction
    /// verdict for this cone.
    pub fn fixed_cone_report(
        &self,
        portrait: &DynamicalPortrait,
    ) -> Result<FixedConeReport, TypeError> {
        let weakly_fixed = self.is_weakly_fixed(portrait)?;
        if !weakly_fixed || self.t1.is_one_vertex() {
            return Ok(FixedConeReport {
                ctype: self.clone(),
                weakly_fixed,
                matrix: None,
                certificate: None,
                rays: Vec::new(),
                obstruction: false,
            });
        }
        let own: BTreeSet<Split> = self.t1.splits().clone();
        let matrix = self.branch_matrix(portrait).squared(&own);
        let certificate = spectral::dominant_eigenvalue(&matrix)?;
        let obstruction = certificate.lambda_at_least_one();
        let order: Vec<Split> = own.iter().cloned().collect();
        let rays = match spectral::eigencone(&matrix, &certificate) {
            EigenconeBasis::Rays { rays, .. } => rays
                .into_iter()
                .map(|v| {
                    let coords: BTreeMap<Split, Rational> = order
                        .iter()
                        .cloned()
                        .zip(v.iter().cloned())
                        .collect();
                    let point = ConePoint::new(&self.t1, coords)?;
                    let ray = crate::tropical::Ray::from_point(&point)?;
                    // Exact fixed-ray residual: M * direction = lambda * direction.
                    if let Some(lambda) = certificate.lambda_rational() {
                        let direction: Vec<Rational> = order
                            .iter()
                            .map(|s| ray.direction().coordinate(s))
                            .collect();
                        let image = matrix.apply(&direction);
                        assert!(
                            image
                                .iter()
                                .zip(&direction)
                                .all(|(m, d)| m == &(&lambda * d)),
                            "fixed ray residual must vanish exactly"
                        );
                    }
                    Ok(ray)
                })
                .collect::<Result<Vec<_>, TypeError>>()?,
            EigenconeBasis::CertifiedVector(_) => Vec::new(),
        };
        Ok(FixedConeReport {
            ctype: self.clone(),
            weakly_fixed,
            matrix: Some(matrix),
            certificate: Some(certificate),
            rays,
            obstruction,
        })
    }

    /// Canonical string form, invariant under renaming of source vertices.
    /// With `anonymize_legs`, fiber points are reduced to (base label, local
    /// degree) pairs so types from different sheet labelings compare equal.
    pub fn canonical_encoding(&self, anonymize_legs: bool) -> String {
        let n = self.vertices.len();
        let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
        for (fi, f) in self.edges.iter().enumerate() {
            adj[f.ends.0].push((fi, f.ends.1));
            adj[f.ends.1].push((fi, f.ends.0));
        }
        let leg_tag = |q: usize| -> String {
            let point = &self.cover.points()[q];
            if anonymize_legs {
                format!(
                    "{}^{}",
                    self.cover.marking().label(point.base),
                    point.local_degree()
                )
            } else {
                point.key(self.cover.marking())
            }
        };
        fn encode(
            this: &CombinatorialType,
            adj: &[Vec<(usize, usize)>],
            leg_tag: &dyn Fn(usize) -> String,
            v: usize,
            from_edge: Option<usize>,
        ) -> String {
            let mut legs: Vec<String> =
                this.vertices[v].legs.iter().map(|&q| leg_tag(q)).collect();
            legs.sort();
            let mut children: Vec<String> = adj[v]
                .iter()
                .filter(|(fi, _)| Some(*fi) != from_edge)
                .map(|&(fi, w)| {
                    let f = &this.edges[fi];
                    format!(
                        "e[{}:{}]{}",
                        this.t1_explicit.splits()[f.base_edge].key(this.cover.marking()),
                        f.degree,
                        encode(this, adj, leg_tag, w, Some(fi))
                    )
                })
                .collect();
            children.sort();
            format!(
                "(v[{}:{}]{}|{})",
                this.vertices[v].base,
                this.vertices[v].degree,
                legs.join(","),
                children.join("")
            )
        }
        let t1_part = format!(
            "T1{{{}}}",
            self.t1
                .splits()
                .iter()
                .map(|s| s.key(self.cover.marking()))
                .collect::<Vec<_>>()
                .join("|")
        );
        let best = (0..n)
            .map(|root| encode(self, &adj, &leg_tag, root, None))
            .min()
            .expect("at least one vertex");
        format!("{t1_part}/{best}")
    }
}

/// Point of the cone of a combinatorial type: one nonnegative coordinate per
/// target edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HurwitzConePoint {
    /// Present on points built against a concrete type; projection methods
    /// take the type explicitly, so this is informational.
    pub ctype: Option<Arc<CombinatorialType>>,
    /// Keyed by target splits; absent keys mean zero.
    pub coords: BTreeMap<Split, Rational>,
}

impl HurwitzConePoint {
    pub fn new(
        ctype: Arc<CombinatorialType>,
        coords: BTreeMap<Split, Rational>,
    ) -> Result<Self, TypeError> {
        for (s, v) in &coords {
            if !ctype.t1.splits().contains(s) {
                return Err(TypeError::UnknownEdge(
                    s.side_labels(ctype.cover.marking()),
                ));
            }
            if v < &Rational::zero() {
                return Err(TypeError::Tropical(TropicalError::NegativeLength(
                    v.to_string(),
                    s.side_labels(ctype.cover.marking()),
                )));
            }
        }
        Ok(HurwitzConePoint {
            ctype: Some(ctype),
            coords,
        })
    }

    pub fn coordinate(&self, split: &Split) -> Rational {
        self.coords
            .get(split)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }
}

/// Lift of a weighted multicurve into the cone of its pullback type: the
/// coordinate on edge e is `weight(e) / lcmdeg(e)`, so the target projection
/// returns exactly the input weights.
pub fn nu_point(
    cover: &Arc<MonodromyCover>,
    weighted: &WeightedMulticurve,
) -> Result<(Arc<CombinatorialType>, HurwitzConePoint), TypeError> {
    let ctype = Arc::new(CombinatorialType::build(cover, weighted.multicurve())?);
    let coords: BTreeMap<Split, Rational> = ctype
        .t1
        .splits()
        .iter()
        .enumerate()
        .map(|(e, s)| {
            let w = weighted.weight_of_split(s);
            let lcm = Rational::from_integer((ctype.lcm_degree(e) as i64).into());
            (s.clone(), w / lcm)
        })
        .collect();
    let point = HurwitzConePoint::new(Arc::clone(&ctype), coords)?;
    Ok((ctype, point))
}

/// Forget a fiber-marked cone point to the branch set embedded by the
/// portrait, relabeling to the base marking.
pub fn forget_to_branch_set(
    point: &ConePoint,
    cover: &MonodromyCover,
    portrait: &DynamicalPortrait,
) -> Result<ConePoint, TropicalError> {
    let marking = cover.marking();
    let mut coords: BTreeMap<Split, Rational> = BTreeMap::new();
    for (split, value) in point.coords() {
        let side: Vec<usize> = (0..marking.len())
            .filter(|&p| split.contains(portrait.iota(p)))
            .collect();
        if side.len() < 2 || side.len() > marking.len() - 2 {
            continue;
        }
        let restricted = Split::new(side, marking).expect("proper by the size check");
        *coords.entry(restricted).or_insert_with(Rational::zero) += value;
    }
    let tree = MarkedTree::new(Arc::clone(marking), coords.keys().cloned())?;
    ConePoint::new(&tree, coords)
}

/// Everything known about one weakly-fixed-or-not cone.
#[derive(Debug, Clone)]
pub struct FixedConeReport {
    pub ctype: CombinatorialType,
    pub weakly_fixed: bool,
    /// Square branch matrix over the target edges (zero rows padded), when
    /// weakly fixed and not the cone point.
    pub matrix: Option<RationalMatrix>,
    pub certificate: Option<EigenCertificate>,
    /// Fixed rays: directions in target-curve coordinates, each scaled by the
    /// dominant eigenvalue.
    pub rays: Vec<crate::tropical::Ray>,
    pub obstruction: bool,
}

impl FixedConeReport {
    /// Semantics note carried on every serialized report: cones are those of
    /// the naive correspondence, with multiplicities ignored.
    pub const SEMANTICS: &'static str = "naive-correspondence";
}
