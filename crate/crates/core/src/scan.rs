//! Whole-cover scans for weakly fixed cones and obstructions, and iteration
//! of the weight transformation on standard multicurves.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::Zero;
use thiserror::Error;

use crate::hurwitz::{CombinatorialType, FixedConeReport, TypeError};
use crate::monodromy::{
    apply_braid_word, orbifold_signature, DynamicalPortrait, MonodromyCover, MonodromyError,
    OrbifoldSignature,
};
use crate::multicurve::{
    enumerate_standard_multicurves, MulticurveError, StandardMulticurve, WeightedMulticurve,
};
use crate::pullback::PullbackTree;
use crate::trees::Split;
use crate::Rational;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ScanError {
    #[error("requested block bound {0} exceeds limit {1}")]
    SizeBound(usize, usize),
    #[error(transparent)]
    Monodromy(#[from] MonodromyError),
    #[error(transparent)]
    Multicurve(#[from] MulticurveError),
    #[error(transparent)]
    Type(#[from] TypeError),
    #[error(transparent)]
    Pullback(#[from] crate::pullback::PullbackError),
}

#[derive(Debug, Clone)]
pub struct ScanOptions {
    /// Largest number of curve classes per multicurve; defaults to n - 3.
    pub max_blocks: Option<usize>,
    /// Braid words re-presenting the cover; the empty word (base
    /// presentation) is always scanned.
    pub braid_words: Vec<Vec<i64>>,
    /// Worker threads; results are merged deterministically regardless.
    pub workers: usize,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions {
            max_blocks: None,
            braid_words: Vec::new(),
            workers: 1,
        }
    }
}

/// One scanned cone: the presentation it was found under plus the report.
#[derive(Debug, Clone)]
pub struct ScanEntry {
    pub braid: Vec<i64>,
    pub multicurve: StandardMulticurve,
    pub report: FixedConeReport,
}

#[derive(Debug, Clone)]
pub struct ScanReport {
    pub orbifold: OrbifoldSignature,
    pub entries: Vec<ScanEntry>,
    /// Count of scanned cones per presentation, weakly fixed or not.
    pub scanned: usize,
}

impl ScanReport {
    pub fn obstructions(&self) -> impl Iterator<Item = &ScanEntry> {
        self.entries.iter().filter(|e| e.report.obstruction)
    }
}

const MAX_BLOCK_LIMIT: usize = 16;

/// Scan every standard multicurve (over the base presentation and each braid
/// re-presentation) and report all weakly fixed cones with their spectral
/// data. Non-weakly-fixed cones are counted but not reported.
pub fn scan_obstructions(
    cover: &Arc<MonodromyCover>,
    portrait: &DynamicalPortrait,
    options: &ScanOptions,
) -> Result<ScanReport, ScanError> {
    let n = cover.marking().len();
    let max_blocks = options.max_blocks.unwrap_or(n.saturating_sub(3));
    if max_blocks > MAX_BLOCK_LIMIT {
        return Err(ScanError::SizeBound(max_blocks, MAX_BLOCK_LIMIT));
    }
    let orbifold = orbifold_signature(cover, portrait);

    let mut presentations: Vec<(Vec<i64>, Arc<MonodromyCover>, DynamicalPortrait)> =
        vec![(Vec::new(), Arc::clone(cover), portrait.clone())];
    for word in &options.braid_words {
        let (c, p, _) = apply_braid_word(cover, portrait, word)?;
        presentations.push((word.clone(), Arc::new(c), p));
    }

    let mut tasks: Vec<(Vec<i64>, Arc<MonodromyCover>, DynamicalPortrait, StandardMulticurve)> =
        Vec::new();
    for (word, c, p) in &presentations {
        for mc in enumerate_standard_multicurves(c.marking(), max_blocks) {
            tasks.push((word.clone(), Arc::clone(c), p.clone(), mc));
        }
    }
    let scanned = tasks.len();

    let run_task = |(word, c, p, mc): &(
        Vec<i64>,
        Arc<MonodromyCover>,
        DynamicalPortrait,
        StandardMulticurve,
    )|
     -> Result<Option<ScanEntry>, ScanError> {
        let ctype = CombinatorialType::build(c, mc)?;
        let report = ctype.fixed_cone_report(p)?;
        if !report.weakly_fixed {
            return Ok(None);
        }
        Ok(Some(ScanEntry {
            braid: word.clone(),
            multicurve: mc.clone(),
            report,
        }))
    };

    let results: Vec<Result<Option<ScanEntry>, ScanError>> =
        parallel_map(&tasks, options.workers.max(1), run_task);
    let mut entries = Vec::new();
    for r in results {
        if let Some(entry) = r? {
            entries.push(entry);
        }
    }
    entries.sort_by(|a, b| {
        (&a.braid, a.multicurve.blocks()).cmp(&(&b.braid, b.multicurve.blocks()))
    });
    Ok(ScanReport {
        orbifold,
        entries,
        scanned,
    })
}

/// Chunked deterministic map over a slice with scoped worker threads.
fn parallel_map<T, U, F>(items: &[T], workers: usize, f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync,
{
    if workers <= 1 || items.len() <= 1 {
        return items.iter().map(&f).collect();
    }
    let chunk = items.len().div_ceil(workers);
    let mut out: Vec<Option<U>> = Vec::with_capacity(items.len());
    out.resize_with(items.len(), || None);
    std::thread::scope(|scope| {
        let f = &f;
        let mut handles = Vec::new();
        for (ci, slice) in items.chunks(chunk).enumerate() {
            handles.push((
                ci,
                scope.spawn(move || slice.iter().map(f).collect::<Vec<U>>()),
            ));
        }
        for (ci, handle) in handles {
            let results = handle.join().expect("scan worker panicked");
            for (k, r) in results.into_iter().enumerate() {
                out[ci * chunk + k] = Some(r);
            }
        }
    });
    out.into_iter().map(|o| o.expect("worker filled slot")).collect()
}

/// Outcome of iterating the weight transformation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IterationOutcome {
    Completed,
    /// The image system has a class with no standard representative under
    /// the current presentation; iteration stops before that step.
    NonStandardCurve {
        step: usize,
        splits: Vec<Split>,
    },
}

#[derive(Debug, Clone)]
pub struct IterationStep {
    pub multicurve: StandardMulticurve,
    pub weights: Vec<Rational>,
}

#[derive(Debug, Clone)]
pub struct IterationReport {
    pub steps: Vec<IterationStep>,
    pub outcome: IterationOutcome,
}

/// Iterate the single-cover weight transformation on a weighted multicurve
/// for up to `steps` applications.
pub fn iterate_weights(
    cover: &Arc<MonodromyCover>,
    portrait: &DynamicalPortrait,
    start: &WeightedMulticurve,
    steps: usize,
) -> Result<IterationReport, ScanError> {
    let marking = cover.marking();
    let mut current = start.clone();
    let mut out = vec![IterationStep {
        multicurve: current.multicurve().clone(),
        weights: current.weights().to_vec(),
    }];
    for step in 1..=steps {
        let tree = PullbackTree::build(cover, current.multicurve())?;
        let image: BTreeMap<Split, Rational> =
            crate::pullback::transform_weights(&tree, portrait, &current);
        let supported: Vec<(Split, Rational)> = image
            .into_iter()
            .filter(|(_, w)| !w.is_zero())
            .collect();
        // Each image class needs a consecutive representative to continue.
        let mut blocks = Vec::new();
        let mut weights = Vec::new();
        let mut bad = Vec::new();
        for (split, weight) in &supported {
            let side: std::collections::BTreeSet<usize> = split.side().iter().copied().collect();
            if cover.canonical_run(&side).is_err() {
                bad.push(split.clone());
            } else {
                blocks.push(side);
                weights.push(weight.clone());
            }
        }
        if !bad.is_empty() {
            return Ok(IterationReport {
                steps: out,
                outcome: IterationOutcome::NonStandardCurve { step, splits: bad },
            });
        }
        current = WeightedMulticurve::new(Arc::clone(marking), blocks, weights)?;
        out.push(IterationStep {
            multicurve: current.multicurve().clone(),
            weights: current.weights().to_vec(),
        });
    }
    Ok(IterationReport {
        steps: out,
        outcome: IterationOutcome::Completed,
    })
}
