//! Pullback of a standard multicurve through a cover, and the induced linear
//! transformations on curve weights.
//!
//! The construction is region-by-region: the complementary regions of the
//! multicurve are the vertices of its dual tree; the components of the fiber
//! over a region are the orbits of the subgroup generated by the monodromies
//! of the points directly in the region and of its child blocks. Each cycle
//! of a block monodromy contributes one curve upstairs, of degree the cycle
//! length, joining the parent-region component to the child-region component
//! containing its sheets.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use num_traits::Zero;

use crate::monodromy::{orbits_of, DynamicalPortrait, MonodromyCover, MonodromyError};
use crate::multicurve::{MulticurveError, StandardMulticurve, WeightedMulticurve};
use crate::perm::Perm;
use crate::spectral::{self, EigenCertificate, RationalMatrix, SpectralError};
use crate::trees::{ExplicitTree, MarkedTree, Split};
use crate::Rational;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PullbackError {
    #[error(transparent)]
    Monodromy(#[from] MonodromyError),
    #[error(transparent)]
    Multicurve(#[from] MulticurveError),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
}

/// One component of the fiber over a region of the multicurve complement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiberVertex {
    /// Vertex of the dual tree (region) under this component.
    pub region: usize,
    /// Sheets of the component; its size is the covering degree.
    pub orbit: BTreeSet<usize>,
    /// Preimage points carried by this component (indices into the cover's
    /// point table).
    pub legs: Vec<usize>,
}

/// One curve of the pulled-back multicurve: a cycle of a block monodromy.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiberEdge {
    /// Endpoints as indices into `PullbackTree::vertices` (parent side, child
    /// side).
    pub ends: (usize, usize),
    /// Edge of the dual tree this curve lies over (index into the explicit
    /// tree's edges).
    pub base_edge: usize,
    /// Sheets of the cycle.
    pub cycle: BTreeSet<usize>,
    /// Covering degree of the curve over its image.
    pub degree: usize,
}

/// The dual tree of the pulled-back multicurve, marked by the preimage
/// points, together with the graph map onto the dual tree downstairs and the
/// edge/vertex degrees.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PullbackTree {
    cover: Arc<MonodromyCover>,
    multicurve: StandardMulticurve,
    base_explicit: ExplicitTree,
    vertices: Vec<FiberVertex>,
    edges: Vec<FiberEdge>,
    /// Split of the upstairs marking induced by each fiber edge.
    upstairs_splits: Vec<Split>,
}

impl PullbackTree {
    /// Region-orbit construction of the pullback.
    pub fn build(
        cover: &Arc<MonodromyCover>,
        multicurve: &StandardMulticurve,
    ) -> Result<PullbackTree, PullbackError> {
        assert_eq!(
            cover.marking(),
            multicurve.marking(),
            "multicurve must live on the cover's marking"
        );
        let degree = cover.degree();
        let base_explicit = multicurve.dual_tree().to_explicit();
        let block_splits: Vec<Split> = (0..multicurve.len())
            .map(|i| multicurve.split_of_block(i))
            .collect();
        // The explicit tree orders edges by canonical split; blocks are kept
        // in the same order, so edge e corresponds to block e.
        debug_assert_eq!(base_explicit.splits(), &block_splits[..]);
        let monodromies: Vec<Perm> = multicurve
            .block_monodromies(cover)
            .map_err(PullbackError::Monodromy)?;

        // Orbits of the region subgroups.
        let mut region_orbits: Vec<Vec<BTreeSet<usize>>> = Vec::new();
        for v in base_explicit.vertices() {
            let mut generators: Vec<Perm> = base_explicit
                .legs_at(v)
                .iter()
                .map(|&p| cover.perm(p).clone())
                .collect();
            for e in base_explicit.child_edges(v) {
                generators.push(monodromies[e].clone());
            }
            if let Some(e) = base_explicit.parent_edge(v) {
                // The outer boundary monodromy is already a product of the
                // other generators; harmless and convenient to include.
                generators.push(monodromies[e].clone());
            }
            region_orbits.push(orbits_of(&generators, degree));
        }

        let mut vertices: Vec<FiberVertex> = Vec::new();
        for (region, orbits) in region_orbits.iter().enumerate() {
            for orbit in orbits {
                vertices.push(FiberVertex {
                    region,
                    orbit: orbit.clone(),
                    legs: Vec::new(),
                });
            }
        }
        let find_vertex = |vertices: &[FiberVertex], region: usize, sheet: usize| -> usize {
            vertices
                .iter()
                .position(|v| v.region == region && v.orbit.contains(&sheet))
                .expect("sheets are covered by orbits")
        };

        // Attach preimage points to the component over the region of their
        // base label.
        for (qi, q) in cover.points().iter().enumerate() {
            let region = base_explicit.leg_vertex(q.base);
            let vi = find_vertex(&vertices, region, q.cycle[0]);
            vertices[vi].legs.push(qi);
        }

        // One fiber edge per cycle of each block monodromy.
        let mut edges = Vec::new();
        for (e, m) in monodromies.iter().enumerate() {
            let (parent_region, child_region) = base_explicit.edge_ends(e);
            let mut total = 0usize;
            for cycle in m.cycles() {
                total += cycle.len();
                let rep = cycle[0];
                edges.push(FiberEdge {
                    ends: (
                        find_vertex(&vertices, parent_region, rep),
                        find_vertex(&vertices, child_region, rep),
                    ),
                    base_edge: e,
                    cycle: cycle.iter().copied().collect(),
                    degree: cycle.len(),
                });
            }
            assert_eq!(total, degree, "cycles over a block partition the sheets");
        }

        let mut tree = PullbackTree {
            cover: Arc::clone(cover),
            multicurve: multicurve.clone(),
            base_explicit,
            vertices,
            edges,
            upstairs_splits: Vec::new(),
        };
        tree.assert_graph_invariants();
        tree.upstairs_splits = tree.compute_upstairs_splits();
        Ok(tree)
    }

    fn assert_graph_invariants(&self) {
        let nv = self.vertices.len();
        let ne = self.edges.len();
        // Genus-0 certificate: connected with |E| = |V| - 1.
        assert_eq!(ne + 1, nv, "pullback graph must be a tree");
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); nv];
        for (i, e) in self.edges.iter().enumerate() {
            adj[e.ends.0].push(i);
            adj[e.ends.1].push(i);
        }
        let mut seen = vec![false; nv];
        let mut stack = vec![0usize];
        while let Some(v) = stack.pop() {
            if seen[v] {
                continue;
            }
            seen[v] = true;
            for &ei in &adj[v] {
                let (a, b) = self.edges[ei].ends;
                stack.push(if a == v { b } else { a });
            }
        }
        assert!(seen.iter().all(|&s| s), "pullback graph must be connected");
        // Stability and the local flag count k(m-2)+2.
        for (vi, v) in self.vertices.iter().enumerate() {
            let flags = v.legs.len() + adj[vi].len();
            assert!(flags >= 3, "upstairs region with valence < 3");
            let m = self.base_explicit.valence(v.region);
            assert_eq!(
                flags,
                v.orbit.len() * (m - 2) + 2,
                "local Riemann-Hurwitz flag count"
            );
        }
        // Balancing: per vertex and base flag, local degrees sum to the
        // vertex degree.
        for (vi, v) in self.vertices.iter().enumerate() {
            let k = v.orbit.len();
            for &p in self.base_explicit.legs_at(v.region) {
                let sum: usize = v
                    .legs
                    .iter()
                    .filter(|&&q| self.cover.points()[q].base == p)
                    .map(|&q| self.cover.points()[q].local_degree())
                    .sum();
                assert_eq!(sum, k, "leg balancing at upstairs region");
            }
            for &e in self.base_explicit.edges_at(v.region) {
                let sum: usize = self
                    .edges
                    .iter()
                    .filter(|f| f.base_edge == e && (f.ends.0 == vi || f.ends.1 == vi))
                    .map(|f| f.degree)
                    .sum();
                assert_eq!(sum, k, "edge balancing at upstairs region");
            }
        }
    }

    fn compute_upstairs_splits(&self) -> Vec<Split> {
        let upstairs = self.cover.upstairs_marking();
        let nv = self.vertices.len();
        let mut splits = Vec::with_capacity(self.edges.len());
        for (cut, _) in self.edges.iter().enumerate() {
            // Legs reachable from the child end without using the cut edge.
            let mut side: BTreeSet<usize> = BTreeSet::new();
            let mut seen = vec![false; nv];
            let mut stack = vec![self.edges[cut].ends.1];
            while let Some(v) = stack.pop() {
                if seen[v] {
                    continue;
                }
                seen[v] = true;
                side.extend(self.vertices[v].legs.iter().copied());
                for (ei, e) in self.edges.iter().enumerate() {
                    if ei == cut {
                        continue;
                    }
                    if e.ends.0 == v {
                        stack.push(e.ends.1);
                    } else if e.ends.1 == v {
                        stack.push(e.ends.0);
                    }
                }
            }
            let split = Split::new(side, upstairs)
                .expect("both sides of a fiber edge carry at least 2 points");
            splits.push(split);
        }
        splits
    }

    pub fn cover(&self) -> &Arc<MonodromyCover> {
        &self.cover
    }

    pub fn multicurve(&self) -> &StandardMulticurve {
        &self.multicurve
    }

    /// Dual tree of the multicurve downstairs (the target tree).
    pub fn base_tree(&self) -> &MarkedTree {
        self.multicurve.dual_tree()
    }

    pub fn base_explicit(&self) -> &ExplicitTree {
        &self.base_explicit
    }

    pub fn vertices(&self) -> &[FiberVertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[FiberEdge] {
        &self.edges
    }

    /// Split of the upstairs marking induced by fiber edge `e`.
    pub fn upstairs_split(&self, e: usize) -> &Split {
        &self.upstairs_splits[e]
    }

    /// The pulled-back curve system as a marked tree on the fiber marking.
    pub fn upstairs_tree(&self) -> MarkedTree {
        MarkedTree::new(
            Arc::clone(self.cover.upstairs_marking()),
            self.upstairs_splits.iter().cloned(),
        )
        .expect("fiber edge splits are compatible")
    }

    /// Least common multiple of the degrees of the fiber edges over each base
    /// edge; the scaling between cone coordinates and edge lengths.
    pub fn lcm_degree(&self, base_edge: usize) -> usize {
        self.edges
            .iter()
            .filter(|e| e.base_edge == base_edge)
            .fold(1usize, |acc, e| num_integer::lcm(acc, e.degree))
    }

    /// The curve-weight transformation upstairs: one row per fiber-edge
    /// split, entry `1/degree` in the column of its base block.
    pub fn tlt_tilde_matrix(&self) -> TltMatrix {
        let cols: Vec<Split> = self.base_tree().splits().iter().cloned().collect();
        let mut rows: Vec<Split> = self.upstairs_splits.clone();
        rows.sort();
        rows.dedup();
        let mut entries =
            vec![vec![Rational::zero(); cols.len()]; rows.len()];
        for (ei, e) in self.edges.iter().enumerate() {
            let row = rows
                .binary_search(&self.upstairs_splits[ei])
                .expect("row present");
            let col = cols
                .binary_search(&self.base_explicit.splits()[e.base_edge])
                .expect("column present");
            entries[row][col] +=
                Rational::new(1.into(), (e.degree as i64).into());
        }
        TltMatrix {
            rows,
            cols,
            entries,
        }
    }

    /// The curve-weight transformation downstairs: restrict each fiber-edge
    /// split to the marked points occupied by the branch set, drop classes
    /// that trivialize, merge equal classes.
    pub fn tlt_matrix(&self, portrait: &DynamicalPortrait) -> TltMatrix {
        let cols: Vec<Split> = self.base_tree().splits().iter().cloned().collect();
        let mut accum: BTreeMap<Split, Vec<Rational>> = BTreeMap::new();
        for (ei, e) in self.edges.iter().enumerate() {
            let Some(split) = self.restrict_to_branch_set(&self.upstairs_splits[ei], portrait)
            else {
                continue;
            };
            let col = cols
                .binary_search(&self.base_explicit.splits()[e.base_edge])
                .expect("column present");
            let row = accum
                .entry(split)
                .or_insert_with(|| vec![Rational::zero(); cols.len()]);
            row[col] += Rational::new(1.into(), (e.degree as i64).into());
        }
        let rows: Vec<Split> = accum.keys().cloned().collect();
        let entries: Vec<Vec<Rational>> = accum.into_values().collect();
        let direct = TltMatrix {
            rows,
            cols,
            entries,
        };
        // Cross-check: aggregating the upstairs matrix through the forgetful
        // map must give the same matrix entrywise.
        debug_assert_eq!(direct, self.aggregate_tilde(portrait));
        direct
    }

    fn aggregate_tilde(&self, portrait: &DynamicalPortrait) -> TltMatrix {
        let tilde = self.tlt_tilde_matrix();
        let mut accum: BTreeMap<Split, Vec<Rational>> = BTreeMap::new();
        for (ri, row_split) in tilde.rows.iter().enumerate() {
            let Some(split) = self.restrict_to_branch_set(row_split, portrait) else {
                continue;
            };
            let slot = accum
                .entry(split)
                .or_insert_with(|| vec![Rational::zero(); tilde.cols.len()]);
            for (ci, v) in tilde.entries[ri].iter().enumerate() {
                slot[ci] += v;
            }
        }
        TltMatrix {
            rows: accum.keys().cloned().collect(),
            cols: tilde.cols,
            entries: accum.into_values().collect(),
        }
    }

    /// Restrict an upstairs split to the branch set embedded by the
    /// portrait, relabeled to the base marking; `None` when peripheral.
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

    /// The image curve system: split classes hit by the pullback. Need not
    /// be pairwise compatible with anything; returned as a plain set.
    pub fn phi_star(&self, portrait: &DynamicalPortrait) -> BTreeSet<Split> {
        self.tlt_matrix(portrait).rows.iter().cloned().collect()
    }

    /// Split-level stability and, when stable, the exact dominant eigenvalue
    /// of the squared transformation.
    pub fn stability(
        &self,
        portrait: &DynamicalPortrait,
    ) -> Result<StabilityReport, PullbackError> {
        let image = self.phi_star(portrait);
        let own: BTreeSet<Split> = self.base_tree().splits().clone();
        let stable = image.is_subset(&own);
        if !stable || own.is_empty() {
            return Ok(StabilityReport {
                stable,
                matrix: None,
                certificate: None,
                obstruction: false,
            });
        }
        let matrix = self.tlt_matrix(portrait).squared(&own);
        let certificate = spectral::dominant_eigenvalue(&matrix)?;
        let obstruction = certificate.lambda_at_least_one();
        Ok(StabilityReport {
            stable,
            matrix: Some(matrix),
            certificate: Some(certificate),
            obstruction,
        })
    }
}

/// Nonnegative rational matrix indexed by splits on both sides.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TltMatrix {
    pub rows: Vec<Split>,
    pub cols: Vec<Split>,
    pub entries: Vec<Vec<Rational>>,
}

impl TltMatrix {
    pub fn entry(&self, row: &Split, col: &Split) -> Rational {
        let Ok(r) = self.rows.binary_search(row) else {
            return Rational::zero();
        };
        let Ok(c) = self.cols.binary_search(col) else {
            return Rational::zero();
        };
        self.entries[r][c].clone()
    }

    /// Apply to a weight vector keyed by column splits.
    pub fn apply(&self, weights: &BTreeMap<Split, Rational>) -> BTreeMap<Split, Rational> {
        let mut out: BTreeMap<Split, Rational> = BTreeMap::new();
        for (ri, row) in self.rows.iter().enumerate() {
            let mut total = Rational::zero();
            for (ci, col) in self.cols.iter().enumerate() {
                if let Some(w) = weights.get(col) {
                    total += &self.entries[ri][ci] * w;
                }
            }
            out.insert(row.clone(), total);
        }
        out
    }

    /// View as a square matrix over `index` (typically the source splits),
    /// padding zero rows for absent images. All rows must lie in `index`.
    pub fn squared(&self, index: &BTreeSet<Split>) -> RationalMatrix {
        let order: Vec<Split> = index.iter().cloned().collect();
        assert!(
            self.rows.iter().all(|r| index.contains(r)),
            "row support must lie in the index set"
        );
        assert_eq!(&order, &self.cols, "column set must equal the index set");
        let n = order.len();
        let mut data = vec![vec![Rational::zero(); n]; n];
        for (i, row) in order.iter().enumerate() {
            for (j, col) in order.iter().enumerate() {
                data[i][j] = self.entry(row, col);
            }
        }
        RationalMatrix::new(data).expect("square by construction")
    }
}

#[derive(Debug, Clone)]
pub struct StabilityReport {
    pub stable: bool,
    pub matrix: Option<RationalMatrix>,
    pub certificate: Option<EigenCertificate>,
    pub obstruction: bool,
}

/// Pull a weighted multicurve forward through one application of the cover's
/// weight transformation.
pub fn transform_weights(
    tree: &PullbackTree,
    portrait: &DynamicalPortrait,
    weighted: &WeightedMulticurve,
) -> BTreeMap<Split, Rational> {
    let weights: BTreeMap<Split, Rational> = (0..weighted.multicurve().len())
        .map(|i| {
            (
                weighted.multicurve().split_of_block(i),
                weighted.weights()[i].clone(),
            )
        })
        .collect();
    tree.tlt_matrix(portrait).apply(&weights)
}
