//! Serde schemas for every value crossing the CLI boundary. Rationals travel
//! as `"p/q"` strings, splits as sorted label arrays, fiber points as
//! `"label#sheet"` keys, matrices as row-major rational strings.

use std::collections::{BTreeMap, BTreeSet};
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::hurwitz::{CombinatorialType, FixedConeReport, TypeError};
use crate::monodromy::{DynamicalPortrait, MonodromyCover, MonodromyError, OrbifoldSignature};
use crate::multicurve::{MulticurveError, StandardMulticurve, WeightedMulticurve};
use crate::perm::Perm;
use crate::pullback::TltMatrix;
use crate::scan::{IterationReport, ScanEntry, ScanReport};
use crate::spectral::{
    EigenCertificate, EigenVector, EigenconeBasis, Lambda, RationalMatrix, SpectralError,
};
use crate::trees::{MarkedTree, MarkingSet, Split, TreeError};
use crate::tropical::{ConePoint, TropicalError};
use crate::Rational;

#[derive(Debug, thiserror::Error)]
pub enum JsonError {
    #[error("bad rational {0:?}")]
    BadRational(String),
    #[error(transparent)]
    Tree(#[from] TreeError),
    #[error(transparent)]
    Tropical(#[from] TropicalError),
    #[error(transparent)]
    Monodromy(#[from] MonodromyError),
    #[error(transparent)]
    Multicurve(#[from] MulticurveError),
    #[error(transparent)]
    Type(#[from] TypeError),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
    #[error(transparent)]
    Perm(#[from] crate::perm::PermError),
}

pub fn parse_rational(text: &str) -> Result<Rational, JsonError> {
    Rational::from_str(text.trim()).map_err(|_| JsonError::BadRational(text.to_string()))
}

pub fn rational_string(value: &Rational) -> String {
    value.to_string()
}

// ---------------------------------------------------------------- covers --

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CoverSpec {
    pub order: Vec<String>,
    pub degree: usize,
    /// Cycle notation per label, e.g. `"(1 2)(3 4)"`; `"()"` is the identity.
    pub perms: BTreeMap<String, String>,
    /// Fiber point occupied by each branch point, e.g. `"c#2"`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub iota: Option<BTreeMap<String, String>>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub allow_degree_one: bool,
}

impl CoverSpec {
    pub fn to_cover(&self) -> Result<MonodromyCover, JsonError> {
        let marking = MarkingSet::new(self.order.iter().cloned())?;
        let mut perms = Vec::with_capacity(self.order.len());
        for label in &self.order {
            let text = self.perms.get(label).ok_or_else(|| {
                JsonError::Monodromy(MonodromyError::UnknownPoint(format!("perms[{label}]")))
            })?;
            perms.push(Perm::parse(text, self.degree)?);
        }
        Ok(MonodromyCover::with_options(
            marking,
            self.degree,
            perms,
            self.allow_degree_one,
        )?)
    }

    pub fn to_portrait(
        &self,
        cover: &MonodromyCover,
    ) -> Result<Option<DynamicalPortrait>, JsonError> {
        match &self.iota {
            None => Ok(None),
            Some(keys) => Ok(Some(DynamicalPortrait::from_keys(cover, keys)?)),
        }
    }

    pub fn from_cover(cover: &MonodromyCover, portrait: Option<&DynamicalPortrait>) -> CoverSpec {
        let order = cover.marking().labels().to_vec();
        let perms = order
            .iter()
            .enumerate()
            .map(|(i, l)| (l.clone(), cover.perm(i).to_string()))
            .collect();
        let iota = portrait.map(|p| {
            order
                .iter()
                .enumerate()
                .map(|(i, l)| {
                    (
                        l.clone(),
                        cover.points()[p.iota(i)].key(cover.marking()),
                    )
                })
                .collect()
        });
        CoverSpec {
            order,
            degree: cover.degree(),
            perms,
            iota,
            allow_degree_one: cover.degree() < 2,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CoverSummary {
    pub degree: usize,
    pub points: Vec<PointSummary>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PointSummary {
    pub key: String,
    pub base: String,
    pub local_degree: usize,
}

pub fn cover_summary(cover: &MonodromyCover) -> CoverSummary {
    CoverSummary {
        degree: cover.degree(),
        points: cover
            .points()
            .iter()
            .map(|q| PointSummary {
                key: q.key(cover.marking()),
                base: cover.marking().label(q.base).to_string(),
                local_degree: q.local_degree(),
            })
            .collect(),
    }
}

// ----------------------------------------------------------- multicurves --

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MulticurveSpec {
    pub blocks: Vec<Vec<String>>,
    /// Aligned with `blocks`; defaults to all-1 when omitted and weights are
    /// required.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<String>>,
}

impl MulticurveSpec {
    pub fn to_multicurve(
        &self,
        marking: &Arc<MarkingSet>,
    ) -> Result<StandardMulticurve, JsonError> {
        Ok(StandardMulticurve::from_label_blocks(
            Arc::clone(marking),
            &self.blocks,
        )?)
    }

    pub fn to_weighted(
        &self,
        marking: &Arc<MarkingSet>,
    ) -> Result<WeightedMulticurve, JsonError> {
        let mut blocks = Vec::with_capacity(self.blocks.len());
        for b in &self.blocks {
            let mut set = BTreeSet::new();
            for l in b {
                set.insert(marking.index(l)?);
            }
            blocks.push(set);
        }
        let weights = match &self.weights {
            None => vec![Rational::from_integer(1.into()); blocks.len()],
            Some(w) => w
                .iter()
                .map(|s| parse_rational(s))
                .collect::<Result<Vec<_>, _>>()?,
        };
        Ok(WeightedMulticurve::new(Arc::clone(marking), blocks, weights)?)
    }

    pub fn from_multicurve(mc: &StandardMulticurve) -> MulticurveSpec {
        MulticurveSpec {
            blocks: mc.block_labels(),
            weights: None,
        }
    }
}

// ----------------------------------------------------- trees and points --

pub fn split_to_labels(split: &Split, marking: &MarkingSet) -> Vec<String> {
    split.side_labels(marking)
}

pub fn split_from_labels(
    labels: &[String],
    marking: &MarkingSet,
) -> Result<Split, JsonError> {
    Ok(Split::from_labels(labels, marking)?)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TreeSpec {
    pub marking: Vec<String>,
    pub splits: Vec<Vec<String>>,
}

impl TreeSpec {
    pub fn to_tree(&self) -> Result<MarkedTree, JsonError> {
        let marking = MarkingSet::new(self.marking.iter().cloned())?;
        let splits = self
            .splits
            .iter()
            .map(|s| split_from_labels(s, &marking))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(MarkedTree::new(marking, splits)?)
    }

    pub fn from_tree(tree: &MarkedTree) -> TreeSpec {
        TreeSpec {
            marking: tree.marking().labels().to_vec(),
            splits: tree
                .splits()
                .iter()
                .map(|s| split_to_labels(s, tree.marking()))
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PointSpec {
    pub marking: Vec<String>,
    pub splits: Vec<Vec<String>>,
    /// Keyed by comma-joined canonical sides.
    pub coords: BTreeMap<String, String>,
}

impl PointSpec {
    pub fn to_point(&self) -> Result<ConePoint, JsonError> {
        let tree = TreeSpec {
            marking: self.marking.clone(),
            splits: self.splits.clone(),
        }
        .to_tree()?;
        let mut coords = BTreeMap::new();
        for split in tree.splits() {
            let key = split.key(tree.marking());
            let value = self
                .coords
                .get(&key)
                .map(|s| parse_rational(s))
                .transpose()?
                .unwrap_or_else(|| Rational::from_integer(0.into()));
            coords.insert(split.clone(), value);
        }
        Ok(ConePoint::new(&tree, coords)?)
    }

    pub fn from_point(point: &ConePoint) -> PointSpec {
        PointSpec {
            marking: point.marking().labels().to_vec(),
            splits: point
                .tree()
                .splits()
                .iter()
                .map(|s| split_to_labels(s, point.marking()))
                .collect(),
            coords: point
                .coords()
                .iter()
                .map(|(s, v)| (s.key(point.marking()), rational_string(v)))
                .collect(),
        }
    }
}

// --------------------------------------------------------------- matrices --

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatrixSpec {
    /// Row keys (comma-joined split sides).
    pub rows: Vec<String>,
    pub cols: Vec<String>,
    /// Row-major entries as rational strings.
    pub entries: Vec<String>,
}

impl MatrixSpec {
    pub fn from_tlt(matrix: &TltMatrix, marking: &MarkingSet) -> MatrixSpec {
        MatrixSpec {
            rows: matrix.rows.iter().map(|s| s.key(marking)).collect(),
            cols: matrix.cols.iter().map(|s| s.key(marking)).collect(),
            entries: matrix
                .entries
                .iter()
                .flatten()
                .map(rational_string)
                .collect(),
        }
    }

    pub fn from_square(
        matrix: &RationalMatrix,
        index: &[Split],
        marking: &MarkingSet,
    ) -> MatrixSpec {
        let keys: Vec<String> = index.iter().map(|s| s.key(marking)).collect();
        MatrixSpec {
            rows: keys.clone(),
            cols: keys,
            entries: matrix
                .rows()
                .iter()
                .flatten()
                .map(rational_string)
                .collect(),
        }
    }
}

// ----------------------------------------------------------- certificates --

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CertificateSpec {
    /// The matrix the certificate refers to, row-major rational strings.
    pub matrix: Vec<Vec<String>>,
    pub lambda: LambdaSpec,
    pub eigvec: EigenVectorSpec,
    pub versus_one: String,
    pub residual_bound: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LambdaSpec {
    Rational { value: String },
    Algebraic {
        /// Ascending integer coefficients of the squarefree factor.
        factor: Vec<String>,
        low: String,
        high: String,
    },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum EigenVectorSpec {
    Exact { entries: Vec<String> },
    Interval { entries: Vec<(String, String)> },
}

impl CertificateSpec {
    pub fn from_certificate(
        matrix: &RationalMatrix,
        certificate: &EigenCertificate,
    ) -> CertificateSpec {
        let lambda = match &certificate.lambda {
            Lambda::Rational(v) => LambdaSpec::Rational {
                value: rational_string(v),
            },
            Lambda::Algebraic { factor, low, high } => LambdaSpec::Algebraic {
                factor: factor.iter().map(|c| c.to_string()).collect(),
                low: rational_string(low),
                high: rational_string(high),
            },
        };
        let eigvec = match &certificate.eigvec {
            EigenVector::Exact(v) => EigenVectorSpec::Exact {
                entries: v.iter().map(rational_string).collect(),
            },
            EigenVector::Interval(v) => EigenVectorSpec::Interval {
                entries: v
                    .iter()
                    .map(|(l, h)| (rational_string(l), rational_string(h)))
                    .collect(),
            },
        };
        CertificateSpec {
            matrix: matrix
                .rows()
                .iter()
                .map(|r| r.iter().map(rational_string).collect())
                .collect(),
            lambda,
            eigvec,
            versus_one: match certificate.versus_one {
                std::cmp::Ordering::Less => "<".into(),
                std::cmp::Ordering::Equal => "=".into(),
                std::cmp::Ordering::Greater => ">".into(),
            },
            residual_bound: rational_string(&certificate.residual_bound),
        }
    }

    /// Rebuild and re-verify: deserialization is not complete until the
    /// certificate replays against its matrix.
    pub fn to_verified(
        &self,
        seed: u64,
        probes: usize,
    ) -> Result<(RationalMatrix, EigenCertificate), JsonError> {
        let data = self
            .matrix
            .iter()
            .map(|row| row.iter().map(|s| parse_rational(s)).collect())
            .collect::<Result<Vec<Vec<_>>, _>>()?;
        let matrix = RationalMatrix::new(data)?;
        let lambda = match &self.lambda {
            LambdaSpec::Rational { value } => Lambda::Rational(parse_rational(value)?),
            LambdaSpec::Algebraic { factor, low, high } => Lambda::Algebraic {
                factor: factor
                    .iter()
                    .map(|c| {
                        c.parse()
                            .map_err(|_| JsonError::BadRational(c.clone()))
                    })
                    .collect::<Result<Vec<_>, _>>()?,
                low: parse_rational(low)?,
                high: parse_rational(high)?,
            },
        };
        let eigvec = match &self.eigvec {
            EigenVectorSpec::Exact { entries } => EigenVector::Exact(
                entries
                    .iter()
                    .map(|s| parse_rational(s))
                    .collect::<Result<Vec<_>, _>>()?,
            ),
            EigenVectorSpec::Interval { entries } => EigenVector::Interval(
                entries
                    .iter()
                    .map(|(l, h)| Ok((parse_rational(l)?, parse_rational(h)?)))
                    .collect::<Result<Vec<_>, JsonError>>()?,
            ),
        };
        let versus_one = match self.versus_one.as_str() {
            "<" => std::cmp::Ordering::Less,
            "=" => std::cmp::Ordering::Equal,
            _ => std::cmp::Ordering::Greater,
        };
        let certificate = EigenCertificate {
            lambda,
            eigvec,
            versus_one,
            residual_bound: parse_rational(&self.residual_bound)?,
        };
        crate::spectral::verify_certificate(&matrix, &certificate, seed, probes)?;
        Ok((matrix, certificate))
    }
}

// ------------------------------------------------------------------ types --

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TypeSpec {
    /// Target tree splits (canonical sides).
    pub t1_splits: Vec<Vec<String>>,
    /// Per source component: the target region (`"*"` for the root region or
    /// a split key for the region inside that side).
    pub vertices: Vec<TypeVertexSpec>,
    pub edges: Vec<TypeEdgeSpec>,
    /// Fiber point key -> source vertex index.
    pub legs: BTreeMap<String, usize>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TypeVertexSpec {
    pub base: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<usize>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TypeEdgeSpec {
    pub ends: (usize, usize),
    /// Split key of the target edge.
    pub over: String,
    pub degree: usize,
}

impl TypeSpec {
    pub fn to_type(
        &self,
        cover: &Arc<MonodromyCover>,
    ) -> Result<CombinatorialType, JsonError> {
        let marking = cover.marking();
        let splits = self
            .t1_splits
            .iter()
            .map(|s| split_from_labels(s, marking))
            .collect::<Result<Vec<_>, _>>()?;
        let t1 = MarkedTree::new(Arc::clone(marking), splits)?;
        let explicit = t1.to_explicit();
        let region_of = |key: &str| -> Result<usize, JsonError> {
            if key == "*" {
                return Ok(0);
            }
            let labels: Vec<String> = key.split(',').map(str::to_string).collect();
            let split = split_from_labels(&labels, marking)?;
            explicit
                .splits()
                .iter()
                .position(|s| s == &split)
                .map(|e| e + 1)
                .ok_or_else(|| {
                    JsonError::Type(TypeError::UnknownEdge(
                        split.side_labels(marking),
                    ))
                })
        };
        let vertex_bases = self
            .vertices
            .iter()
            .map(|v| region_of(&v.base))
            .collect::<Result<Vec<_>, _>>()?;
        let edges = self
            .edges
            .iter()
            .map(|e| {
                let labels: Vec<String> = e.over.split(',').map(str::to_string).collect();
                let split = split_from_labels(&labels, marking)?;
                let base_edge = explicit
                    .splits()
                    .iter()
                    .position(|s| s == &split)
                    .ok_or_else(|| {
                        JsonError::Type(TypeError::UnknownEdge(
                            split.side_labels(marking),
                        ))
                    })?;
                Ok((e.ends.0, e.ends.1, base_edge, e.degree))
            })
            .collect::<Result<Vec<_>, JsonError>>()?;
        let mut leg_assignment = vec![usize::MAX; cover.points().len()];
        for (key, &vertex) in &self.legs {
            let q = cover.point_index(key)?;
            leg_assignment[q] = vertex;
        }
        if leg_assignment.contains(&usize::MAX) {
            return Err(JsonError::Type(TypeError::LegMismatch(
                "every fiber point needs a vertex".into(),
            )));
        }
        Ok(CombinatorialType::from_raw(
            cover,
            t1,
            vertex_bases,
            edges,
            leg_assignment,
        )?)
    }

    pub fn from_type(ctype: &CombinatorialType) -> TypeSpec {
        let marking = ctype.cover().marking();
        let explicit = ctype.target_explicit();
        let region_key = |v: usize| -> String {
            if v == 0 {
                "*".to_string()
            } else {
                explicit.splits()[v - 1].key(marking)
            }
        };
        TypeSpec {
            t1_splits: ctype
                .target_tree()
                .splits()
                .iter()
                .map(|s| split_to_labels(s, marking))
                .collect(),
            vertices: ctype
                .vertices()
                .iter()
                .map(|v| TypeVertexSpec {
                    base: region_key(v.base),
                    degree: Some(v.degree),
                })
                .collect(),
            edges: ctype
                .edges()
                .iter()
                .map(|e| TypeEdgeSpec {
                    ends: e.ends,
                    over: explicit.splits()[e.base_edge].key(marking),
                    degree: e.degree,
                })
                .collect(),
            legs: ctype
                .vertices()
                .iter()
                .enumerate()
                .flat_map(|(vi, v)| {
                    v.legs
                        .iter()
                        .map(move |&q| (ctype.cover().points()[q].key(marking), vi))
                })
                .collect(),
        }
    }
}

// ----------------------------------------------------------------- reports --

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OrbifoldSpec {
    pub signature: BTreeMap<String, String>,
    pub hyperbolic: bool,
    pub parabolic_warning: bool,
}

pub fn orbifold_spec(cover: &MonodromyCover, signature: &OrbifoldSignature) -> OrbifoldSpec {
    OrbifoldSpec {
        signature: cover
            .marking()
            .labels()
            .iter()
            .cloned()
            .zip(signature.nu_display())
            .collect(),
        hyperbolic: signature.hyperbolic(),
        parabolic_warning: signature.parabolic_warning(),
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RaySpec {
    pub direction: PointSpec,
    pub lambda_scal: LambdaSpec,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FixedConeReportSpec {
    pub semantics: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub multicurve: Option<MulticurveSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub braid: Vec<i64>,
    pub t1_splits: Vec<Vec<String>>,
    pub lcm_degrees: BTreeMap<String, usize>,
    pub weakly_fixed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub branch_matrix: Option<MatrixSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<CertificateSpec>,
    pub rays: Vec<RaySpec>,
    pub obstruction: bool,
}

pub fn fixed_cone_report_spec(
    report: &FixedConeReport,
    multicurve: Option<&StandardMulticurve>,
    braid: &[i64],
) -> FixedConeReportSpec {
    let ctype = &report.ctype;
    let marking = ctype.cover().marking();
    let index: Vec<Split> = ctype.target_tree().splits().iter().cloned().collect();
    let lambda_spec = report.certificate.as_ref().map(|c| match &c.lambda {
        Lambda::Rational(v) => LambdaSpec::Rational {
            value: rational_string(v),
        },
        Lambda::Algebraic { factor, low, high } => LambdaSpec::Algebraic {
            factor: factor.iter().map(|c| c.to_string()).collect(),
            low: rational_string(low),
            high: rational_string(high),
        },
    });
    FixedConeReportSpec {
        semantics: FixedConeReport::SEMANTICS.to_string(),
        multicurve: multicurve.map(MulticurveSpec::from_multicurve),
        braid: braid.to_vec(),
        t1_splits: index.iter().map(|s| split_to_labels(s, marking)).collect(),
        lcm_degrees: ctype
            .lcm_degrees()
            .iter()
            .map(|(s, l)| (s.key(marking), *l))
            .collect(),
        weakly_fixed: report.weakly_fixed,
        branch_matrix: report
            .matrix
            .as_ref()
            .map(|m| MatrixSpec::from_square(m, &index, marking)),
        certificate: report.matrix.as_ref().zip(report.certificate.as_ref()).map(
            |(m, c)| CertificateSpec::from_certificate(m, c),
        ),
        rays: report
            .rays
            .iter()
            .map(|r| RaySpec {
                direction: PointSpec::from_point(r.direction()),
                lambda_scal: lambda_spec.clone().expect("rays imply a certificate"),
            })
            .collect(),
        obstruction: report.obstruction,
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ScanReportSpec {
    pub orbifold: OrbifoldSpec,
    pub scanned: usize,
    pub entries: Vec<FixedConeReportSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

pub fn scan_report_spec(cover: &MonodromyCover, report: &ScanReport) -> ScanReportSpec {
    let mut warnings = Vec::new();
    if report.orbifold.parabolic_warning() {
        warnings.push("parabolic orbifold: the contraction dichotomy does not apply".into());
    }
    ScanReportSpec {
        orbifold: orbifold_spec(cover, &report.orbifold),
        scanned: report.scanned,
        entries: report
            .entries
            .iter()
            .map(|e: &ScanEntry| {
                fixed_cone_report_spec(&e.report, Some(&e.multicurve), &e.braid)
            })
            .collect(),
        warnings,
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct IterationReportSpec {
    pub steps: Vec<MulticurveSpec>,
    pub outcome: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub halted_on: Vec<Vec<String>>,
}

pub fn iteration_report_spec(
    marking: &MarkingSet,
    report: &IterationReport,
) -> IterationReportSpec {
    let steps = report
        .steps
        .iter()
        .map(|s| MulticurveSpec {
            blocks: s.multicurve.block_labels(),
            weights: Some(s.weights.iter().map(rational_string).collect()),
        })
        .collect();
    match &report.outcome {
        crate::scan::IterationOutcome::Completed => IterationReportSpec {
            steps,
            outcome: "completed".into(),
            halted_on: Vec::new(),
        },
        crate::scan::IterationOutcome::NonStandardCurve { step, splits } => IterationReportSpec {
            steps,
            outcome: format!("non-standard curve class at step {step}"),
            halted_on: splits.iter().map(|s| s.side_labels(marking)).collect(),
        },
    }
}

/// Eigencone description for serialization.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum EigenconeSpec {
    Rays {
        rays: Vec<Vec<String>>,
        kernel_dim: usize,
        extreme: bool,
    },
    CertifiedVector {
        entries: Vec<(String, String)>,
    },
}

pub fn eigencone_spec(basis: &EigenconeBasis) -> EigenconeSpec {
    match basis {
        EigenconeBasis::Rays {
            rays,
            kernel_dim,
            extreme,
        } => EigenconeSpec::Rays {
            rays: rays
                .iter()
                .map(|v| v.iter().map(rational_string).collect())
                .collect(),
            kernel_dim: *kernel_dim,
            extreme: *extreme,
        },
        EigenconeBasis::CertifiedVector(v) => EigenconeSpec::CertifiedVector {
            entries: v
                .iter()
                .map(|(l, h)| (rational_string(l), rational_string(h)))
                .collect(),
        },
    }
}
