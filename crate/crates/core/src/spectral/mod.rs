//! Exact linear algebra over the rationals: characteristic polynomials,
//! certified dominant eigenvalues of nonnegative matrices, and cone
//! eigenvectors.
//!
//! Dominant eigenvalues are located by Sturm isolation on the integer-cleared
//! characteristic polynomial. Rational eigenvalues come out exactly,
//! irrational ones as an isolating interval on a squarefree factor, with all
//! comparisons (in particular against 1) decided by exact sign evaluation.
//! Every certificate is replayable: verification re-checks the eigenvector
//! residual and Collatz-Wielandt bounds from seeded probes.

pub mod poly;

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::Rational;
use poly::{extract_rational_roots, Poly, SturmChain};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SpectralError {
    #[error("matrix is not square: row {0} has length {1}, expected {2}")]
    NotSquare(usize, usize, usize),
    #[error("negative entry {0} at ({1}, {2})")]
    NegativeEntry(String, usize, usize),
    #[error("empty matrix has no dominant eigenvalue")]
    EmptyMatrix,
    #[error("certificate verification failed: {0}")]
    BadCertificate(String),
}

/// Square matrix of exact rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    data: Vec<Vec<Rational>>,
}

impl RationalMatrix {
    pub fn new(data: Vec<Vec<Rational>>) -> Result<Self, SpectralError> {
        let n = data.len();
        for (i, row) in data.iter().enumerate() {
            if row.len() != n {
                return Err(SpectralError::NotSquare(i, row.len(), n));
            }
        }
        Ok(RationalMatrix { data })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let data = rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|&v| Rational::from_integer(v.into()))
                    .collect()
            })
            .collect();
        RationalMatrix::new(data).expect("literal matrix must be square")
    }

    pub fn dim(&self) -> usize {
        self.data.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> &Rational {
        &self.data[i][j]
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.data
    }

    pub fn is_nonnegative(&self) -> Result<(), SpectralError> {
        for (i, row) in self.data.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                if v < &Rational::zero() {
                    return Err(SpectralError::NegativeEntry(v.to_string(), i, j));
                }
            }
        }
        Ok(())
    }

    pub fn apply(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.dim());
        self.data
            .iter()
            .map(|row| {
                row.iter()
                    .zip(v)
                    .fold(Rational::zero(), |acc, (a, x)| acc + a * x)
            })
            .collect()
    }

    fn trace(&self) -> Rational {
        (0..self.dim()).fold(Rational::zero(), |acc, i| acc + &self.data[i][i])
    }

    fn mul(&self, other: &RationalMatrix) -> RationalMatrix {
        let n = self.dim();
        let mut data = vec![vec![Rational::zero(); n]; n];
        for i in 0..n {
            for k in 0..n {
                if self.data[i][k].is_zero() {
                    continue;
                }
                for j in 0..n {
                    data[i][j] += &self.data[i][k] * &other.data[k][j];
                }
            }
        }
        RationalMatrix { data }
    }

    fn add_scalar_diag(&self, c: &Rational) -> RationalMatrix {
        let mut data = self.data.clone();
        for (i, row) in data.iter_mut().enumerate() {
            row[i] += c;
        }
        RationalMatrix { data }
    }
}

/// Characteristic polynomial `det(xI - M)` by the Faddeev-LeVerrier
/// recurrence, returned integer-cleared (primitive, positive leading
/// coefficient), ascending.
pub fn charpoly(matrix: &RationalMatrix) -> Vec<BigInt> {
    let n = matrix.dim();
    let mut coeffs = vec![Rational::zero(); n + 1];
    coeffs[n] = Rational::one();
    let mut aux = matrix.clone();
    for k in 1..=n {
        let c = -aux.trace() / Rational::from_integer(BigInt::from(k));
        coeffs[n - k] = c.clone();
        if k < n {
            aux = matrix.mul(&aux.add_scalar_diag(&c));
        }
    }
    Poly::new(coeffs).integer_cleared()
}

/// Exact eigenvalue representation: a rational number, or an isolating
/// interval on an integer squarefree factor with no rational roots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Lambda {
    Rational(Rational),
    Algebraic {
        /// Integer-cleared squarefree factor having the eigenvalue as its
        /// unique root in the interval.
        factor: Vec<BigInt>,
        low: Rational,
        high: Rational,
    },
}

impl Lambda {
    pub fn lower(&self) -> Rational {
        match self {
            Lambda::Rational(v) => v.clone(),
            Lambda::Algebraic { low, .. } => low.clone(),
        }
    }

    pub fn upper(&self) -> Rational {
        match self {
            Lambda::Rational(v) => v.clone(),
            Lambda::Algebraic { high, .. } => high.clone(),
        }
    }
}

/// Eigenvector with exact or interval entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EigenVector {
    Exact(Vec<Rational>),
    Interval(Vec<(Rational, Rational)>),
}

/// Replayable certificate for the dominant eigenvalue of a nonnegative
/// matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EigenCertificate {
    pub lambda: Lambda,
    pub eigvec: EigenVector,
    /// Exact comparison of the eigenvalue against 1.
    pub versus_one: Ordering,
    /// Zero for exact data; for interval data, the maximal residual interval
    /// half-width, reported for diagnostics.
    pub residual_bound: Rational,
}

impl EigenCertificate {
    pub fn lambda_rational(&self) -> Option<Rational> {
        match &self.lambda {
            Lambda::Rational(v) => Some(v.clone()),
            Lambda::Algebraic { .. } => None,
        }
    }

    pub fn lambda_at_least_one(&self) -> bool {
        self.versus_one != Ordering::Less
    }
}

/// Dominant eigenvalue (spectral radius) of a nonnegative square matrix with
/// a certified nonnegative eigenvector.
pub fn dominant_eigenvalue(
    matrix: &RationalMatrix,
) -> Result<EigenCertificate, SpectralError> {
    matrix.is_nonnegative()?;
    if matrix.dim() == 0 {
        return Err(SpectralError::EmptyMatrix);
    }
    let char_ints = charpoly(matrix);
    let p = Poly::from_integers(&char_ints);
    let (rational_roots, rest) = extract_rational_roots(&p);
    let max_rational = rational_roots.last().cloned();

    // Locate the largest irrational root, if any.
    let mut max_irrational: Option<(Poly, Rational, Rational)> = None;
    if rest.degree().unwrap_or(0) >= 1 {
        let chain = SturmChain::new(&rest);
        if let Some((low, high)) = chain.isolate_all().into_iter().next_back() {
            max_irrational = Some((chain.polynomial().clone(), low, high));
        }
    }

    let lambda = match (max_rational, max_irrational) {
        (Some(r), None) => Lambda::Rational(r),
        (None, Some((factor, low, high))) => refined_algebraic(factor, low, high),
        (Some(r), Some((factor, low, high))) => {
            // Exact comparison: shrink the interval until it excludes r.
            let chain = SturmChain::new(&factor);
            let (low, high) = chain.refine_away_from(low, high, &r);
            if r > high {
                Lambda::Rational(r)
            } else {
                refined_algebraic(factor, low, high)
            }
        }
        (None, None) => unreachable!("a nonempty matrix has an eigenvalue"),
    };

    // Exact sign of lambda - 1.
    let versus_one = match &lambda {
        Lambda::Rational(v) => v.cmp(&Rational::one()),
        Lambda::Algebraic { factor, low, high } => {
            let chain = SturmChain::new(&Poly::from_integers(factor));
            let one = Rational::one();
            let (low, high) = chain.refine_away_from(low.clone(), high.clone(), &one);
            if one <= low {
                Ordering::Greater
            } else {
                debug_assert!(one > high);
                Ordering::Less
            }
        }
    };
    let lambda = match lambda {
        Lambda::Algebraic { factor, low, high } => {
            // Keep the published interval nonnegative, clear of 1, and tight.
            let chain = SturmChain::new(&Poly::from_integers(&factor));
            let (low, high) = chain.refine_away_from(low, high, &Rational::zero());
            let (low, high) = chain.refine_away_from(low, high, &Rational::one());
            let width = Rational::new(1.into(), 1_000_000.into());
            let (low, high) = chain.refine(low, high, &width);
            Lambda::Algebraic { factor, low, high }
        }
        other => other,
    };

    let (eigvec, residual_bound) = eigenvector_for(matrix, &lambda)?;
    Ok(EigenCertificate {
        lambda,
        eigvec,
        versus_one,
        residual_bound,
    })
}

fn refined_algebraic(factor: Poly, low: Rational, high: Rational) -> Lambda {
    Lambda::Algebraic {
        factor: factor.integer_cleared(),
        low,
        high,
    }
}

fn eigenvector_for(
    matrix: &RationalMatrix,
    lambda: &Lambda,
) -> Result<(EigenVector, Rational), SpectralError> {
    match lambda {
        Lambda::Rational(v) => {
            let basis = eigenspace_basis(matrix, v);
            if basis.is_empty() {
                return Err(SpectralError::BadCertificate(
                    "claimed eigenvalue has trivial eigenspace".into(),
                ));
            }
            let cone = nonnegative_rays(&basis);
            let vec = cone.into_iter().next().ok_or_else(|| {
                SpectralError::BadCertificate(
                    "dominant eigenspace misses the nonnegative cone".into(),
                )
            })?;
            Ok((EigenVector::Exact(vec), Rational::zero()))
        }
        Lambda::Algebraic { factor, low, high } => {
            let (entries, width) =
                interval_eigenvector(matrix, factor, low.clone(), high.clone());
            Ok((EigenVector::Interval(entries), width))
        }
    }
}

/// Rational basis of the kernel of (M - lambda I) via Gaussian elimination.
pub fn eigenspace_basis(matrix: &RationalMatrix, lambda: &Rational) -> Vec<Vec<Rational>> {
    let n = matrix.dim();
    let mut m: Vec<Vec<Rational>> = matrix.data.clone();
    for (i, row) in m.iter_mut().enumerate() {
        row[i] -= lambda;
    }
    // Row-reduce.
    let mut pivot_cols = Vec::new();
    let mut rank = 0usize;
    for col in 0..n {
        let Some(pivot) = (rank..n).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot);
        let inv = Rational::one() / m[rank][col].clone();
        for x in &mut m[rank] {
            *x *= &inv;
        }
        for r in 0..n {
            if r != rank && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in 0..n {
                    let sub = &m[rank][c] * &f;
                    m[r][c] -= sub;
                }
            }
        }
        pivot_cols.push(col);
        rank += 1;
        if rank == n {
            break;
        }
    }
    let free_cols: Vec<usize> = (0..n).filter(|c| !pivot_cols.contains(c)).collect();
    let mut basis = Vec::new();
    for &fc in &free_cols {
        let mut v = vec![Rational::zero(); n];
        v[fc] = Rational::one();
        for (r, &pc) in pivot_cols.iter().enumerate() {
            v[pc] = -m[r][fc].clone();
        }
        basis.push(v);
    }
    basis
}

/// Extreme rays of `span(basis) ∩ {x >= 0}`, normalized so the first nonzero
/// entry is 1. For kernels of dimension at most 3 these are exactly the
/// extreme rays; in higher dimension a generator set is still returned.
pub fn nonnegative_rays(basis: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let k = basis.len();
    let n = basis.first().map_or(0, Vec::len);
    if k == 0 || n == 0 {
        return Vec::new();
    }
    let mut rays: Vec<Vec<Rational>> = Vec::new();
    let push = |v: Vec<Rational>, rays: &mut Vec<Vec<Rational>>| {
        if v.iter().all(Zero::is_zero) {
            return;
        }
        if v.iter().any(|x| x < &Rational::zero()) {
            return;
        }
        let lead = v.iter().find(|x| !x.is_zero()).unwrap().clone();
        let scaled: Vec<Rational> = v.iter().map(|x| x / &lead).collect();
        if !rays.contains(&scaled) {
            rays.push(scaled);
        }
    };
    // Candidate rays: kernel vectors lying on n - dim(face) coordinate
    // hyperplanes. Enumerate subsets of coordinates forced to zero, keeping
    // the residual solution space one-dimensional.
    let coords: Vec<usize> = (0..n).collect();
    for zero_set in subsets_up_to(&coords, k.saturating_sub(1)) {
        // Solve for kernel combinations vanishing on zero_set.
        let mut system: Vec<Vec<Rational>> = zero_set
            .iter()
            .map(|&c| basis.iter().map(|b| b[c].clone()).collect())
            .collect();
        let solution = kernel_of(&mut system, k);
        if solution.len() != 1 {
            continue;
        }
        let combo = &solution[0];
        let mut v = vec![Rational::zero(); n];
        for (bi, b) in basis.iter().enumerate() {
            for (c, x) in b.iter().enumerate() {
                v[c] += x * &combo[bi];
            }
        }
        if v.iter().any(|x| x < &Rational::zero()) {
            let neg: Vec<Rational> = v.iter().map(|x| -x.clone()).collect();
            push(neg, &mut rays);
        } else {
            push(v, &mut rays);
        }
    }
    // Keep rays with inclusion-maximal zero sets (extremality in the cone).
    let zero_pattern = |v: &[Rational]| -> Vec<bool> { v.iter().map(Zero::is_zero).collect() };
    let mut extreme: Vec<Vec<Rational>> = Vec::new();
    for r in &rays {
        let zr = zero_pattern(r);
        let dominated = rays.iter().any(|s| {
            if s == r {
                return false;
            }
            let zs = zero_pattern(s);
            zr.iter().zip(&zs).all(|(a, b)| !b || *a) && zr != zs
        });
        if !dominated {
            extreme.push(r.clone());
        }
    }
    if extreme.is_empty() {
        rays
    } else {
        extreme
    }
}

fn subsets_up_to(items: &[usize], max_size: usize) -> Vec<Vec<usize>> {
    fn rec(
        items: &[usize],
        start: usize,
        remaining: usize,
        current: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        out.push(current.clone());
        if remaining == 0 {
            return;
        }
        for i in start..items.len() {
            current.push(items[i]);
            rec(items, i + 1, remaining - 1, current, out);
            current.pop();
        }
    }
    let mut out = Vec::new();
    rec(items, 0, max_size, &mut Vec::new(), &mut out);
    out
}

/// Kernel of a (rows x k) rational system, as a basis of combination vectors.
fn kernel_of(system: &mut Vec<Vec<Rational>>, k: usize) -> Vec<Vec<Rational>> {
    let rows = system.len();
    let mut pivot_cols = Vec::new();
    let mut rank = 0usize;
    for col in 0..k {
        let Some(pivot) = (rank..rows).find(|&r| !system[r][col].is_zero()) else {
            continue;
        };
        system.swap(rank, pivot);
        let inv = Rational::one() / system[rank][col].clone();
        for x in &mut system[rank] {
            *x *= &inv;
        }
        for r in 0..rows {
            if r != rank && !system[r][col].is_zero() {
                let f = system[r][col].clone();
                for c in 0..k {
                    let sub = &system[rank][c] * &f;
                    system[r][c] -= sub;
                }
            }
        }
        pivot_cols.push(col);
        rank += 1;
        if rank == rows {
            break;
        }
    }
    let free: Vec<usize> = (0..k).filter(|c| !pivot_cols.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![Rational::zero(); k];
            v[fc] = Rational::one();
            for (r, &pc) in pivot_cols.iter().enumerate() {
                v[pc] = -system[r][fc].clone();
            }
            v
        })
        .collect()
}

/// Interval enclosure of an eigenvector for an algebraic eigenvalue, via an
/// adjugate column of (M - xI) evaluated on the isolating interval. When the
/// eigenvalue is a repeated root the adjugate vanishes identically at it;
/// dividing all entries by the vanishing factor peels that off while keeping
/// the kernel property (the trace of the adjugate vanishes to strictly lower
/// order than the determinant).
fn interval_eigenvector(
    matrix: &RationalMatrix,
    factor: &[BigInt],
    mut low: Rational,
    mut high: Rational,
) -> (Vec<(Rational, Rational)>, Rational) {
    let n = matrix.dim();
    let mut f = Poly::from_integers(factor).squarefree();
    // adj[j][i]: entry i of column j of adj(M - xI).
    let mut adj: Vec<Vec<Poly>> = (0..n)
        .map(|j| (0..n).map(|i| adjugate_entry(matrix, i, j)).collect())
        .collect();
    'normalize: loop {
        // Sharpen f until every entry is divisible by f or provably nonzero
        // at the isolated root.
        for p in adj.iter().flatten() {
            let r = p.rem(&f);
            if r.is_zero() {
                continue;
            }
            let g = f.gcd(&r);
            if g.degree().unwrap_or(0) == 0 {
                continue;
            }
            if SturmChain::new(&g).count_roots(&low, &high) == 1 {
                // The root lives in the common factor: shrink to it.
                f = g;
            } else {
                // The root is not in g: shed it from f.
                let (q, rem0) = f.div_rem(&g);
                debug_assert!(rem0.is_zero());
                let lead = q.leading().expect("factor keeps its root").clone();
                f = q.scale(&(Rational::one() / lead));
            }
            continue 'normalize;
        }
        let mut divisible = adj
            .iter()
            .flatten()
            .filter(|p| !p.is_zero())
            .peekable();
        if divisible.peek().is_some() && adj.iter().flatten().all(|p| p.rem(&f).is_zero()) {
            // Repeated eigenvalue: peel one factor off every entry.
            for col in &mut adj {
                for p in col.iter_mut() {
                    let (q, r) = p.div_rem(&f);
                    debug_assert!(r.is_zero());
                    *p = q;
                }
            }
            continue 'normalize;
        }
        break;
    }
    let chain = SturmChain::new(&f);
    debug_assert_eq!(chain.count_roots(&low, &high), 1);
    // Reduced entries: equal to the true values at the root, lower degree.
    let reduced: Vec<Vec<Poly>> = adj
        .iter()
        .map(|col| col.iter().map(|p| p.rem(&f)).collect())
        .collect();
    let usable: Vec<usize> = (0..n)
        .filter(|&j| reduced[j].iter().any(|r| !r.is_zero()))
        .collect();
    assert!(
        !usable.is_empty(),
        "adjugate kernel extraction found no nonzero column"
    );
    // Refine until some usable column is sign-definite entrywise, then orient
    // it nonnegatively. Columns with mixed definite signs are skipped.
    loop {
        for &j in &usable {
            let exact_zero: Vec<bool> = reduced[j].iter().map(Poly::is_zero).collect();
            let boxes: Vec<(Rational, Rational)> = reduced[j]
                .iter()
                .map(|p| eval_interval(p, &low, &high))
                .collect();
            let definite = boxes.iter().zip(&exact_zero).all(|((l, h), &z)| {
                z || l > &Rational::zero() || h < &Rational::zero()
            });
            if !definite {
                continue;
            }
            let any_negative = boxes
                .iter()
                .zip(&exact_zero)
                .any(|((_, h), &z)| !z && h < &Rational::zero());
            let any_positive = boxes
                .iter()
                .zip(&exact_zero)
                .any(|((l, _), &z)| !z && l > &Rational::zero());
            if any_negative && any_positive {
                continue;
            }
            let mut entries: Vec<(Rational, Rational)> = Vec::with_capacity(n);
            for ((l, h), &z) in boxes.iter().zip(&exact_zero) {
                if z {
                    entries.push((Rational::zero(), Rational::zero()));
                } else if any_negative {
                    entries.push((-h.clone(), -l.clone()));
                } else {
                    entries.push((l.clone(), h.clone()));
                }
            }
            let width = entries
                .iter()
                .map(|(l, h)| h - l)
                .fold(Rational::zero(), |acc, w| if w > acc { w } else { acc });
            return (entries, width);
        }
        let mid = (&low + &high) / Rational::from_integer(2.into());
        if chain.count_roots(&low, &mid) == 1 {
            high = mid;
        } else {
            low = mid;
        }
    }
}

/// Interval evaluation of a polynomial over [low, high] by naive coefficient
/// bounding on the recentered form.
fn eval_interval(p: &Poly, low: &Rational, high: &Rational) -> (Rational, Rational) {
    // Evaluate termwise on the interval using power ranges.
    let mut lo = Rational::zero();
    let mut hi = Rational::zero();
    let mut pow_lo = Rational::one();
    let mut pow_hi = Rational::one();
    for c in p.coeffs() {
        let (a, b) = if c >= &Rational::zero() {
            (c * &pow_lo, c * &pow_hi)
        } else {
            (c * &pow_hi, c * &pow_lo)
        };
        lo += a;
        hi += b;
        // Next power range; assumes 0 <= low <= high (eigenvalue intervals
        // are kept nonnegative).
        pow_lo *= low;
        pow_hi *= high;
    }
    (lo, hi)
}

/// Cofactor expansion via exact interpolation: entry (j, i) of adj(M - xI)
/// as a polynomial in x.
fn adjugate_entry(matrix: &RationalMatrix, i: usize, j: usize) -> Poly {
    let n = matrix.dim();
    // adj(A)[i][j] = (-1)^{i+j} * minor_{j,i}(A); deg <= n - 1.
    let degree = n - 1;
    let points: Vec<Rational> = (0..=degree as i64)
        .map(|k| Rational::from_integer(k.into()))
        .collect();
    let values: Vec<Rational> = points
        .iter()
        .map(|x| {
            let minor = minor_det(matrix, x, j, i);
            if (i + j) % 2 == 0 {
                minor
            } else {
                -minor
            }
        })
        .collect();
    lagrange_interpolate(&points, &values)
}

/// Determinant of (M - xI) with row `skip_row` and column `skip_col` removed,
/// evaluated at rational x, by fraction-free-ish Gaussian elimination.
fn minor_det(matrix: &RationalMatrix, x: &Rational, skip_row: usize, skip_col: usize) -> Rational {
    let n = matrix.dim();
    let mut m: Vec<Vec<Rational>> = Vec::with_capacity(n - 1);
    for r in 0..n {
        if r == skip_row {
            continue;
        }
        let mut row = Vec::with_capacity(n - 1);
        for c in 0..n {
            if c == skip_col {
                continue;
            }
            let mut v = matrix.data[r][c].clone();
            if r == c {
                v -= x;
            }
            row.push(v);
        }
        m.push(row);
    }
    let k = m.len();
    let mut det = Rational::one();
    for col in 0..k {
        let Some(pivot) = (col..k).find(|&r| !m[r][col].is_zero()) else {
            return Rational::zero();
        };
        if pivot != col {
            m.swap(col, pivot);
            det = -det;
        }
        det *= m[col][col].clone();
        let inv = Rational::one() / m[col][col].clone();
        for r in col + 1..k {
            if m[r][col].is_zero() {
                continue;
            }
            let f = &m[r][col] * &inv;
            for c in col..k {
                let sub = &m[col][c] * &f;
                m[r][c] -= sub;
            }
        }
    }
    det
}

fn lagrange_interpolate(points: &[Rational], values: &[Rational]) -> Poly {
    let mut acc = Poly::zero();
    for (i, xi) in points.iter().enumerate() {
        let mut term = Poly::constant(values[i].clone());
        for (j, xj) in points.iter().enumerate() {
            if i == j {
                continue;
            }
            let denom = xi - xj;
            term = term
                .mul(&Poly::x_minus(xj))
                .scale(&(Rational::one() / denom));
        }
        acc = acc.add(&term);
    }
    acc
}

/// Description of the intersection of an eigenspace with the nonnegative
/// orthant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EigenconeBasis {
    /// Extreme rays (exact, kernel dimension <= 3) or a generator set with
    /// the recorded kernel dimension.
    Rays {
        rays: Vec<Vec<Rational>>,
        kernel_dim: usize,
        extreme: bool,
    },
    /// Irrational eigenvalue: a single certified nonnegative vector.
    CertifiedVector(Vec<(Rational, Rational)>),
}

/// Eigencone of a certified eigenvalue: extreme rays for rational lambda,
/// the certified interval vector otherwise.
pub fn eigencone(
    matrix: &RationalMatrix,
    certificate: &EigenCertificate,
) -> EigenconeBasis {
    match &certificate.lambda {
        Lambda::Rational(v) => {
            let basis = eigenspace_basis(matrix, v);
            let kernel_dim = basis.len();
            let rays = nonnegative_rays(&basis);
            EigenconeBasis::Rays {
                rays,
                kernel_dim,
                extreme: kernel_dim <= 3,
            }
        }
        Lambda::Algebraic { .. } => match &certificate.eigvec {
            EigenVector::Interval(v) => EigenconeBasis::CertifiedVector(v.clone()),
            EigenVector::Exact(_) => unreachable!("algebraic lambda has interval vector"),
        },
    }
}

/// Replay a certificate: residual check of the eigenvector and
/// Collatz-Wielandt sandwich bounds on seeded positive probes.
pub fn verify_certificate(
    matrix: &RationalMatrix,
    certificate: &EigenCertificate,
    seed: u64,
    probes: usize,
) -> Result<(), SpectralError> {
    matrix.is_nonnegative()?;
    let n = matrix.dim();
    match (&certificate.lambda, &certificate.eigvec) {
        (Lambda::Rational(lambda), EigenVector::Exact(v)) => {
            if v.len() != n || v.iter().all(Zero::is_zero) {
                return Err(SpectralError::BadCertificate("empty eigenvector".into()));
            }
            if v.iter().any(|x| x < &Rational::zero()) {
                return Err(SpectralError::BadCertificate(
                    "eigenvector leaves the cone".into(),
                ));
            }
            let image = matrix.apply(v);
            for (mi, vi) in image.iter().zip(v) {
                if mi != &(lambda * vi) {
                    return Err(SpectralError::BadCertificate(
                        "nonzero eigenvector residual".into(),
                    ));
                }
            }
        }
        (Lambda::Algebraic { factor, low, high }, EigenVector::Interval(v)) => {
            if factor.len() < 2 || low > high {
                return Err(SpectralError::BadCertificate("malformed interval".into()));
            }
            let chain = SturmChain::new(&Poly::from_integers(factor));
            if chain.count_roots(low, high) != 1 {
                return Err(SpectralError::BadCertificate(
                    "interval does not isolate a root".into(),
                ));
            }
            if v.len() != n {
                return Err(SpectralError::BadCertificate("bad vector length".into()));
            }
            if v.iter().any(|(l, h)| l > h || h < &Rational::zero()) {
                return Err(SpectralError::BadCertificate(
                    "interval vector leaves the cone".into(),
                ));
            }
            if v.iter().all(|(_, h)| h.is_zero()) {
                return Err(SpectralError::BadCertificate("zero vector".into()));
            }
            // 0 must lie in (M v - lambda v) interval-wise.
            for i in 0..n {
                let mut img_lo = Rational::zero();
                let mut img_hi = Rational::zero();
                for j in 0..n {
                    let a = matrix.entry(i, j);
                    img_lo += a * &v[j].0;
                    img_hi += a * &v[j].1;
                }
                // lambda * v_i ranges over the product of the two intervals
                // (all quantities nonnegative).
                let prod_lo = low.max(&Rational::zero()).clone() * &v[i].0;
                let prod_hi = high.clone() * &v[i].1;
                if img_hi < prod_lo || prod_hi < img_lo {
                    return Err(SpectralError::BadCertificate(
                        "residual interval excludes zero".into(),
                    ));
                }
            }
        }
        _ => {
            return Err(SpectralError::BadCertificate(
                "mismatched lambda/eigenvector kinds".into(),
            ));
        }
    }
    // Collatz-Wielandt sandwich on positive probes.
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..probes {
        let probe: Vec<Rational> = (0..n)
            .map(|_| {
                Rational::new(
                    BigInt::from(rng.gen_range(1..=20i64)),
                    BigInt::from(rng.gen_range(1..=20i64)),
                )
            })
            .collect();
        let image = matrix.apply(&probe);
        let ratios: Vec<Rational> = image
            .iter()
            .zip(&probe)
            .map(|(m, x)| m / x)
            .collect();
        let min = ratios.iter().min().unwrap();
        let max = ratios.iter().max().unwrap();
        if min > &certificate.lambda.upper() || max < &certificate.lambda.lower() {
            return Err(SpectralError::BadCertificate(
                "Collatz-Wielandt bounds exclude the eigenvalue".into(),
            ));
        }
    }
    Ok(())
}
