//! Exact univariate polynomial arithmetic over the rationals, with Sturm
//! sequences, rational-root extraction, and real-root isolation.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::Rational;

/// Polynomial with rational coefficients, ascending degree, normalized so the
/// leading coefficient is nonzero (the zero polynomial has no coefficients).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rational>) -> Poly {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Poly {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Poly {
        Poly::new(vec![c])
    }

    pub fn monomial(c: Rational, degree: usize) -> Poly {
        let mut coeffs = vec![Rational::zero(); degree + 1];
        coeffs[degree] = c;
        Poly::new(coeffs)
    }

    pub fn x_minus(c: &Rational) -> Poly {
        Poly::new(vec![-c.clone(), Rational::one()])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * Rational::from_integer(BigInt::from(i)))
            .collect();
        Poly::new(coeffs)
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = vec![Rational::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        Poly::new(coeffs)
    }

    pub fn neg(&self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut coeffs =
            vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Poly::new(coeffs)
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        Poly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Euclidean division: returns (quotient, remainder).
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let mut rem = self.clone();
        let mut quot = Poly::zero();
        let dlead = divisor.leading().unwrap().clone();
        let ddeg = divisor.degree().unwrap();
        while !rem.is_zero() && rem.degree().unwrap() >= ddeg {
            let shift = rem.degree().unwrap() - ddeg;
            let factor = rem.leading().unwrap() / &dlead;
            let term = Poly::monomial(factor, shift);
            quot = quot.add(&term);
            rem = rem.sub(&term.mul(divisor));
        }
        (quot, rem)
    }

    pub fn rem(&self, divisor: &Poly) -> Poly {
        self.div_rem(divisor).1
    }

    /// Monic gcd.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        if let Some(lead) = a.leading().cloned() {
            a = a.scale(&(Rational::one() / lead));
        }
        a
    }

    /// Squarefree part `self / gcd(self, self')`, monic.
    pub fn squarefree(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let g = self.gcd(&self.derivative());
        let (q, r) = self.div_rem(&g);
        debug_assert!(r.is_zero());
        let lead = q.leading().unwrap().clone();
        q.scale(&(Rational::one() / lead))
    }

    /// Integer-cleared form: primitive integer coefficients with positive
    /// leading coefficient.
    pub fn integer_cleared(&self) -> Vec<BigInt> {
        if self.is_zero() {
            return Vec::new();
        }
        let mut denom_lcm = BigInt::one();
        for c in &self.coeffs {
            denom_lcm = denom_lcm.lcm(c.denom());
        }
        let mut ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&denom_lcm / c.denom()))
            .collect();
        let mut content = BigInt::zero();
        for c in &ints {
            content = content.gcd(c);
        }
        if !content.is_zero() {
            for c in &mut ints {
                *c /= &content;
            }
        }
        if ints.last().unwrap().is_negative() {
            for c in &mut ints {
                *c = -c.clone();
            }
        }
        ints
    }

    pub fn from_integers(coeffs: &[BigInt]) -> Poly {
        Poly::new(
            coeffs
                .iter()
                .map(|c| Rational::from_integer(c.clone()))
                .collect(),
        )
    }

    /// Cauchy bound: every real root lies in (-bound, bound).
    pub fn root_bound(&self) -> Rational {
        let lead = self.leading().expect("nonzero polynomial").abs();
        let max = self
            .coeffs
            .iter()
            .map(Signed::abs)
            .fold(Rational::zero(), |acc, c| if c > acc { c } else { acc });
        Rational::one() + max / lead
    }
}

/// Sturm chain of the squarefree part of a polynomial.
pub struct SturmChain {
    chain: Vec<Poly>,
}

impl SturmChain {
    pub fn new(poly: &Poly) -> SturmChain {
        let p = poly.squarefree();
        let mut chain = vec![p.clone(), p.derivative()];
        loop {
            let n = chain.len();
            if chain[n - 1].is_zero() {
                chain.pop();
                break;
            }
            let r = chain[n - 2].rem(&chain[n - 1]).neg();
            if r.is_zero() {
                break;
            }
            chain.push(r);
        }
        SturmChain { chain }
    }

    pub fn polynomial(&self) -> &Poly {
        &self.chain[0]
    }

    fn sign_changes(&self, x: &Rational) -> usize {
        let signs: Vec<i8> = self
            .chain
            .iter()
            .map(|p| {
                let v = p.eval(x);
                if v.is_zero() {
                    0
                } else if v > Rational::zero() {
                    1
                } else {
                    -1
                }
            })
            .filter(|s| *s != 0)
            .collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    }

    /// Number of distinct real roots in the half-open interval `(low, high]`.
    pub fn count_roots(&self, low: &Rational, high: &Rational) -> usize {
        assert!(low <= high);
        self.sign_changes(low) - self.sign_changes(high)
    }

    /// Disjoint isolating half-open intervals for every real root, ascending.
    pub fn isolate_all(&self) -> Vec<(Rational, Rational)> {
        if self.polynomial().degree().unwrap_or(0) == 0 {
            return Vec::new();
        }
        let bound = self.polynomial().root_bound();
        let mut out = Vec::new();
        self.isolate_rec(&-bound.clone(), &bound, &mut out);
        out
    }

    fn isolate_rec(&self, low: &Rational, high: &Rational, out: &mut Vec<(Rational, Rational)>) {
        match self.count_roots(low, high) {
            0 => {}
            1 => out.push((low.clone(), high.clone())),
            _ => {
                let mid = (low + high) / Rational::from_integer(2.into());
                self.isolate_rec(low, &mid, out);
                self.isolate_rec(&mid, high, out);
            }
        }
    }

    /// Shrink an isolating interval below the requested width.
    pub fn refine(
        &self,
        mut low: Rational,
        mut high: Rational,
        width: &Rational,
    ) -> (Rational, Rational) {
        debug_assert_eq!(self.count_roots(&low, &high), 1);
        while &(&high - &low) > width {
            let mid = (&low + &high) / Rational::from_integer(2.into());
            if self.count_roots(&low, &mid) == 1 {
                high = mid;
            } else {
                low = mid;
            }
        }
        (low, high)
    }

    /// Shrink an isolating interval until it excludes `point` (which must not
    /// be a root).
    pub fn refine_away_from(
        &self,
        mut low: Rational,
        mut high: Rational,
        point: &Rational,
    ) -> (Rational, Rational) {
        assert!(!self.polynomial().eval(point).is_zero());
        while point > &low && point <= &high {
            let mid = (&low + &high) / Rational::from_integer(2.into());
            if self.count_roots(&low, &mid) == 1 {
                high = mid;
            } else {
                low = mid;
            }
        }
        (low, high)
    }
}

/// All rational roots with multiplicity, paired with the remaining factor
/// (which has no rational roots).
pub fn extract_rational_roots(poly: &Poly) -> (Vec<Rational>, Poly) {
    let mut current = poly.clone();
    let mut roots = Vec::new();
    if current.is_zero() {
        return (roots, current);
    }
    loop {
        let Some(root) = find_rational_root(&current) else {
            break;
        };
        loop {
            let (q, r) = current.div_rem(&Poly::x_minus(&root));
            if !r.is_zero() {
                break;
            }
            roots.push(root.clone());
            current = q;
            if current.degree().unwrap_or(0) == 0 {
                break;
            }
        }
        if current.degree().unwrap_or(0) == 0 {
            break;
        }
    }
    roots.sort();
    (roots, current)
}

/// One rational root via the rational root theorem on the integer-cleared
/// form, or `None`.
fn find_rational_root(poly: &Poly) -> Option<Rational> {
    let ints = poly.integer_cleared();
    if ints.len() < 2 {
        return None;
    }
    // Strip the power of x dividing the polynomial: zero roots first.
    if ints[0].is_zero() {
        return Some(Rational::zero());
    }
    let lead = ints.last().unwrap().clone();
    let constant = ints[0].clone();
    let p_divs = divisors(&constant);
    let q_divs = divisors(&lead);
    for p in &p_divs {
        for q in &q_divs {
            for sign in [1i32, -1] {
                let candidate =
                    Rational::new(p * BigInt::from(sign), q.clone());
                if poly.eval(&candidate).is_zero() {
                    return Some(candidate);
                }
            }
        }
    }
    None
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            small.push(d.clone());
            large.push(&n / &d);
        }
        d += BigInt::one();
    }
    large.reverse();
    small.extend(large);
    small.dedup();
    small
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn poly(coeffs: &[i64]) -> Poly {
        Poly::new(coeffs.iter().map(|&c| q(c, 1)).collect())
    }

    #[test]
    fn division_and_gcd() {
        // (x-1)(x-2) = x^2 - 3x + 2
        let p = poly(&[2, -3, 1]);
        let (quot, rem) = p.div_rem(&poly(&[-1, 1]));
        assert!(rem.is_zero());
        assert_eq!(quot, poly(&[-2, 1]));
        let g = p.gcd(&poly(&[-1, 1]));
        assert_eq!(g, poly(&[-1, 1]));
    }

    #[test]
    fn squarefree_strips_multiplicity() {
        // (x-1)^2 (x+2)
        let p = poly(&[-1, 1]).mul(&poly(&[-1, 1])).mul(&poly(&[2, 1]));
        let sf = p.squarefree();
        assert_eq!(sf.degree(), Some(2));
        assert!(sf.eval(&q(1, 1)).is_zero());
        assert!(sf.eval(&q(-2, 1)).is_zero());
    }

    #[test]
    fn integer_clearing_normalizes() {
        let p = Poly::new(vec![q(-1, 2), q(0, 1), q(1, 3)]);
        let ints = p.integer_cleared();
        let as_i64: Vec<i64> = ints.iter().map(|c| i64::try_from(c).unwrap()).collect();
        assert_eq!(as_i64, vec![-3, 0, 2]);
    }

    #[test]
    fn sturm_counts_and_isolates() {
        // x^2 - 2: roots at +-sqrt(2).
        let p = poly(&[-2, 0, 1]);
        let chain = SturmChain::new(&p);
        let intervals = chain.isolate_all();
        assert_eq!(intervals.len(), 2);
        let (low, high) = chain.refine(
            intervals[1].0.clone(),
            intervals[1].1.clone(),
            &q(1, 100),
        );
        assert!(low < q(1414214, 1000000) && q(1414213, 1000000) < high);
    }

    #[test]
    fn rational_roots_extracted_with_multiplicity() {
        // (x - 1/2)^2 (x^2 - 3)
        let p = Poly::x_minus(&q(1, 2))
            .mul(&Poly::x_minus(&q(1, 2)))
            .mul(&poly(&[-3, 0, 1]));
        let (roots, rest) = extract_rational_roots(&p);
        assert_eq!(roots, vec![q(1, 2), q(1, 2)]);
        assert_eq!(rest.degree(), Some(2));
        assert!(rest.eval(&q(0, 1)) < Rational::zero());
    }

    #[test]
    fn root_bound_contains_roots() {
        let p = poly(&[-6, 11, -6, 1]); // roots 1, 2, 3
        let b = p.root_bound();
        assert!(b > q(3, 1));
    }
}
