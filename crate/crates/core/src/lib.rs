//! Exact-arithmetic toolkit for the boundary dynamics of sphere covers.
//!
//! The crate works with four layers of combinatorial data, all over exact
//! rationals:
//!
//! * stable marked trees encoded as compatible split systems ([`trees`]),
//! * cones of tropical curves and the tropical forgetful map ([`tropical`]),
//! * degree-d sphere covers encoded by permutation monodromy together with
//!   a dynamical portrait ([`monodromy`]),
//! * pullback of standard multicurves, the induced linear transformations
//!   ([`multicurve`], [`pullback`]), and the cones of tropical admissible
//!   covers with their projections and fixed-ray reports ([`hurwitz`],
//!   [`scan`]).
//!
//! Spectral verdicts (dominant eigenvalues, cone eigenvectors, comparisons
//! against 1) are certified exactly in [`spectral`]; no floating point is
//! used anywhere.

pub mod dot;
#[cfg(test)]
pub(crate) mod fixtures;
pub mod hurwitz;
pub mod json;
pub mod monodromy;
pub mod multicurve;
pub mod oracle;
pub mod perm;
pub mod pullback;
pub mod scan;
pub mod spectral;
pub mod trees;
pub mod tropical;

/// Exact scalar used throughout the crate.
pub type Rational = num_rational::BigRational;

pub use hurwitz::{CombinatorialType, FixedConeReport, HurwitzConePoint};
pub use monodromy::{DynamicalPortrait, MonodromyCover, OrbifoldSignature, PreimagePoint};
pub use multicurve::{StandardMulticurve, WeightedMulticurve};
pub use perm::Perm;
pub use pullback::{PullbackTree, TltMatrix};
pub use scan::{IterationOutcome, ScanOptions, ScanReport};
pub use spectral::{EigenCertificate, EigenconeBasis, Lambda, RationalMatrix};
pub use trees::{ExplicitTree, MarkedTree, MarkingSet, Split};
pub use tropical::{ConePoint, Ray, TropicalCurve};

#[cfg(test)]
pub(crate) fn rational_int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}
