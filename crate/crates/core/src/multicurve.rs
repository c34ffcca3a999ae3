//! Standard multicurves: laminar families of consecutive blocks of the
//! cyclic order, with their dual trees and optional weights.
//!
//! Blocks are normalized to the representative avoiding the last marked
//! point (complementing wrapped blocks), so each block coincides with the
//! canonical side of its split and the laminar family test reduces to split
//! compatibility.

use std::collections::BTreeSet;
use std::sync::Arc;

use num_traits::Zero;
use thiserror::Error;

use crate::monodromy::{MonodromyCover, MonodromyError};
use crate::trees::{MarkedTree, MarkingSet, Split, TreeError};
use crate::Rational;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MulticurveError {
    #[error("blocks {0:?} and {1:?} are neither nested nor disjoint")]
    NotLaminar(Vec<String>, Vec<String>),
    #[error("block {0:?} is not consecutive in the cyclic order")]
    NotConsecutive(Vec<String>),
    #[error("block {0:?} must contain between 2 and n-2 points")]
    TrivialBlock(Vec<String>),
    #[error("blocks {0:?} and {1:?} determine the same curve class")]
    DuplicateSplit(Vec<String>, Vec<String>),
    #[error("weight {0} is negative")]
    NegativeWeight(String),
    #[error("expected {0} weights, got {1}")]
    WeightCount(usize, usize),
    #[error(transparent)]
    Tree(#[from] TreeError),
}

/// A multicurve in standard position: pairwise nested-or-disjoint consecutive
/// blocks, one per curve class, each stored as a sorted run of marking
/// indices avoiding the last point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StandardMulticurve {
    marking: Arc<MarkingSet>,
    /// Normalized blocks in canonical split order.
    blocks: Vec<Vec<usize>>,
    dual_tree: MarkedTree,
}

impl StandardMulticurve {
    pub fn new(
        marking: Arc<MarkingSet>,
        blocks: Vec<BTreeSet<usize>>,
    ) -> Result<Self, MulticurveError> {
        let n = marking.len();
        let labels = |b: &[usize]| -> Vec<String> {
            b.iter().map(|&i| marking.label(i).to_string()).collect()
        };
        let mut normalized: Vec<Vec<usize>> = Vec::with_capacity(blocks.len());
        for block in &blocks {
            if block.len() < 2 || block.len() > n - 2 {
                let v: Vec<usize> = block.iter().copied().collect();
                return Err(MulticurveError::TrivialBlock(labels(&v)));
            }
            let run = normalize_block(block, n).ok_or_else(|| {
                let v: Vec<usize> = block.iter().copied().collect();
                MulticurveError::NotConsecutive(labels(&v))
            })?;
            normalized.push(run);
        }
        for i in 0..normalized.len() {
            for j in i + 1..normalized.len() {
                let a: BTreeSet<usize> = normalized[i].iter().copied().collect();
                let b: BTreeSet<usize> = normalized[j].iter().copied().collect();
                if a == b {
                    return Err(MulticurveError::DuplicateSplit(
                        labels(&normalized[i]),
                        labels(&normalized[j]),
                    ));
                }
                if !(a.is_subset(&b) || b.is_subset(&a) || a.is_disjoint(&b)) {
                    return Err(MulticurveError::NotLaminar(
                        labels(&normalized[i]),
                        labels(&normalized[j]),
                    ));
                }
            }
        }
        let splits: Vec<Split> = normalized
            .iter()
            .map(|b| Split::new(b.iter().copied(), &marking).map_err(MulticurveError::from))
            .collect::<Result<_, _>>()?;
        let dual_tree = MarkedTree::new(Arc::clone(&marking), splits).map_err(|e| match e {
            TreeError::IncompatibleSplits(a, b) => MulticurveError::NotLaminar(a, b),
            other => MulticurveError::Tree(other),
        })?;
        // Blocks in the dual tree's canonical split order.
        normalized.sort_by_key(|b| {
            Split::new(b.iter().copied(), &marking).expect("validated above")
        });
        Ok(StandardMulticurve {
            marking,
            blocks: normalized,
            dual_tree,
        })
    }

    pub fn from_label_blocks<S: AsRef<str>>(
        marking: Arc<MarkingSet>,
        blocks: &[Vec<S>],
    ) -> Result<Self, MulticurveError> {
        let mut sets = Vec::with_capacity(blocks.len());
        for block in blocks {
            let mut set = BTreeSet::new();
            for l in block {
                set.insert(marking.index(l.as_ref()).map_err(MulticurveError::Tree)?);
            }
            sets.push(set);
        }
        StandardMulticurve::new(marking, sets)
    }

    pub fn empty(marking: Arc<MarkingSet>) -> Self {
        StandardMulticurve {
            dual_tree: MarkedTree::one_vertex(Arc::clone(&marking)),
            marking,
            blocks: Vec::new(),
        }
    }

    pub fn marking(&self) -> &Arc<MarkingSet> {
        &self.marking
    }

    /// Normalized blocks, in the dual tree's split order.
    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block_labels(&self) -> Vec<Vec<String>> {
        self.blocks
            .iter()
            .map(|b| b.iter().map(|&i| self.marking.label(i).to_string()).collect())
            .collect()
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// The dual tree: one split per curve class.
    pub fn dual_tree(&self) -> &MarkedTree {
        &self.dual_tree
    }

    pub fn split_of_block(&self, index: usize) -> Split {
        Split::new(self.blocks[index].iter().copied(), &self.marking)
            .expect("blocks validated")
    }

    /// Monodromy of each block's curve on the given cover (which must share
    /// the marking).
    pub fn block_monodromies(
        &self,
        cover: &MonodromyCover,
    ) -> Result<Vec<crate::perm::Perm>, MonodromyError> {
        self.blocks
            .iter()
            .map(|b| cover.block_monodromy(&b.iter().copied().collect()))
            .collect()
    }
}

/// Normalize a cyclically consecutive block to a linear run avoiding the
/// last marking index; `None` if the set is not a cyclic run.
fn normalize_block(block: &BTreeSet<usize>, n: usize) -> Option<Vec<usize>> {
    let is_run = |v: &[usize]| v.windows(2).all(|w| w[1] == w[0] + 1);
    let as_vec: Vec<usize> = block.iter().copied().collect();
    let complement: Vec<usize> = (0..n).filter(|i| !block.contains(i)).collect();
    if is_run(&as_vec) && !block.contains(&(n - 1)) {
        return Some(as_vec);
    }
    if is_run(&complement) && !complement.contains(&(n - 1)) {
        return Some(complement);
    }
    None
}

/// A standard multicurve with one nonnegative rational weight per block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedMulticurve {
    multicurve: StandardMulticurve,
    /// Aligned with `multicurve.blocks()`.
    weights: Vec<Rational>,
}

impl WeightedMulticurve {
    /// Weights are given aligned with the input blocks and follow them
    /// through normalization and reordering.
    pub fn new(
        marking: Arc<MarkingSet>,
        blocks: Vec<BTreeSet<usize>>,
        weights: Vec<Rational>,
    ) -> Result<Self, MulticurveError> {
        if blocks.len() != weights.len() {
            return Err(MulticurveError::WeightCount(blocks.len(), weights.len()));
        }
        for w in &weights {
            if w < &Rational::zero() {
                return Err(MulticurveError::NegativeWeight(w.to_string()));
            }
        }
        let multicurve = StandardMulticurve::new(Arc::clone(&marking), blocks.clone())?;
        // Realign weights with the sorted, normalized block list via splits.
        let mut aligned = vec![Rational::zero(); weights.len()];
        for (block, w) in blocks.iter().zip(&weights) {
            let split =
                Split::new(block.iter().copied(), &marking).expect("validated in multicurve");
            let pos = (0..multicurve.len())
                .find(|&i| multicurve.split_of_block(i) == split)
                .expect("each input block survives normalization");
            aligned[pos] = w.clone();
        }
        Ok(WeightedMulticurve {
            multicurve,
            weights: aligned,
        })
    }

    pub fn from_multicurve(
        multicurve: StandardMulticurve,
        weights: Vec<Rational>,
    ) -> Result<Self, MulticurveError> {
        if weights.len() != multicurve.len() {
            return Err(MulticurveError::WeightCount(multicurve.len(), weights.len()));
        }
        for w in &weights {
            if w < &Rational::zero() {
                return Err(MulticurveError::NegativeWeight(w.to_string()));
            }
        }
        Ok(WeightedMulticurve {
            multicurve,
            weights,
        })
    }

    pub fn multicurve(&self) -> &StandardMulticurve {
        &self.multicurve
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn weight_of_split(&self, split: &Split) -> Rational {
        (0..self.multicurve.len())
            .find(|&i| &self.multicurve.split_of_block(i) == split)
            .map(|i| self.weights[i].clone())
            .unwrap_or_else(Rational::zero)
    }
}

/// Enumerate all standard multicurves with at most `max_blocks` curve
/// classes: laminar families of canonical blocks, in deterministic order.
pub fn enumerate_standard_multicurves(
    marking: &Arc<MarkingSet>,
    max_blocks: usize,
) -> Vec<StandardMulticurve> {
    let n = marking.len();
    let mut candidates: Vec<Vec<usize>> = Vec::new();
    for start in 0..n.saturating_sub(1) {
        for end in start + 1..n - 1 {
            let run: Vec<usize> = (start..=end).collect();
            if run.len() >= 2 && run.len() <= n - 2 {
                candidates.push(run);
            }
        }
    }
    let compatible = |a: &[usize], b: &[usize]| -> bool {
        let x: BTreeSet<usize> = a.iter().copied().collect();
        let y: BTreeSet<usize> = b.iter().copied().collect();
        x.is_subset(&y) || y.is_subset(&x) || x.is_disjoint(&y)
    };
    let mut out = Vec::new();
    let mut stack: Vec<(Vec<usize>, usize)> = vec![(Vec::new(), 0)];
    while let Some((chosen, next)) = stack.pop() {
        let blocks: Vec<BTreeSet<usize>> = chosen
            .iter()
            .map(|&i| candidates[i].iter().copied().collect())
            .collect();
        out.push(
            StandardMulticurve::new(Arc::clone(marking), blocks)
                .expect("enumerated families are laminar"),
        );
        if chosen.len() < max_blocks {
            for cand in (next..candidates.len()).rev() {
                if chosen
                    .iter()
                    .all(|&c| compatible(&candidates[c], &candidates[cand]))
                {
                    let mut ext = chosen.clone();
                    ext.push(cand);
                    stack.push((ext, cand + 1));
                }
            }
        }
    }
    out
}
