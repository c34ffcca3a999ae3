//! Permutations of sheet indices, with cycle-notation parsing and printing.
//!
//! Sheets are 0-based internally and 1-based in cycle notation. Products are
//! right actions: `a.then(&b)` applies `a` first, then `b`.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PermError {
    #[error("sheet {0} out of range 1..={1}")]
    SheetOutOfRange(usize, usize),
    #[error("sheet {0} repeated in cycle notation")]
    RepeatedSheet(usize),
    #[error("malformed cycle notation: {0}")]
    Malformed(String),
    #[error("image vector is not a permutation")]
    NotBijective,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Perm {
    map: Vec<usize>,
}

impl Perm {
    pub fn identity(degree: usize) -> Self {
        Perm {
            map: (0..degree).collect(),
        }
    }

    pub fn from_images(map: Vec<usize>) -> Result<Self, PermError> {
        let mut seen = vec![false; map.len()];
        for &i in &map {
            if i >= map.len() || seen[i] {
                return Err(PermError::NotBijective);
            }
            seen[i] = true;
        }
        Ok(Perm { map })
    }

    pub fn degree(&self) -> usize {
        self.map.len()
    }

    pub fn apply(&self, sheet: usize) -> usize {
        self.map[sheet]
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// Right-action product: apply `self` first, then `next`.
    pub fn then(&self, next: &Perm) -> Perm {
        assert_eq!(self.degree(), next.degree());
        Perm {
            map: self.map.iter().map(|&i| next.map[i]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut map = vec![0; self.map.len()];
        for (i, &j) in self.map.iter().enumerate() {
            map[j] = i;
        }
        Perm { map }
    }

    /// Cycles as sorted sheet sets, ordered by minimum element. Fixed points
    /// are included as singleton cycles.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.map.len()];
        let mut out = Vec::new();
        for start in 0..self.map.len() {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cycle.push(i);
                i = self.map[i];
            }
            cycle.sort_unstable();
            out.push(cycle);
        }
        out
    }

    /// Cycle lengths sorted descending.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut t: Vec<usize> = self.cycles().iter().map(|c| c.len()).collect();
        t.sort_unstable_by(|a, b| b.cmp(a));
        t
    }

    /// `degree - #cycles`; the quantity entering Riemann-Hurwitz counts.
    pub fn deficiency(&self) -> usize {
        self.degree() - self.cycles().len()
    }

    /// Parse cycle notation such as `(1 3)(2 4)`. Accepts `()`, `id` and the
    /// empty string for the identity.
    pub fn parse(text: &str, degree: usize) -> Result<Self, PermError> {
        let trimmed = text.trim();
        let mut map: Vec<usize> = (0..degree).collect();
        if trimmed.is_empty() || trimmed == "id" || trimmed == "()" {
            return Ok(Perm { map });
        }
        let mut used = vec![false; degree];
        let mut rest = trimmed;
        while !rest.is_empty() {
            let Some(open) = rest.find('(') else {
                return Err(PermError::Malformed(rest.to_string()));
            };
            if !rest[..open].trim().is_empty() {
                return Err(PermError::Malformed(rest.to_string()));
            }
            let Some(close) = rest.find(')') else {
                return Err(PermError::Malformed(rest.to_string()));
            };
            let body = &rest[open + 1..close];
            rest = &rest[close + 1..];
            let mut cycle = Vec::new();
            for token in body.split([' ', ',']).filter(|t| !t.is_empty()) {
                let sheet: usize = token
                    .parse()
                    .map_err(|_| PermError::Malformed(token.to_string()))?;
                if sheet == 0 || sheet > degree {
                    return Err(PermError::SheetOutOfRange(sheet, degree));
                }
                if used[sheet - 1] {
                    return Err(PermError::RepeatedSheet(sheet));
                }
                used[sheet - 1] = true;
                cycle.push(sheet - 1);
            }
            for (k, &s) in cycle.iter().enumerate() {
                map[s] = cycle[(k + 1) % cycle.len()];
            }
        }
        Ok(Perm { map })
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut seen = vec![false; self.map.len()];
        let mut wrote = false;
        for start in 0..self.map.len() {
            if seen[start] || self.map[start] == start {
                seen[start] = true;
                continue;
            }
            write!(f, "(")?;
            let mut i = start;
            let mut first = true;
            while !seen[i] {
                seen[i] = true;
                if !first {
                    write!(f, " ")?;
                }
                write!(f, "{}", i + 1)?;
                first = false;
                i = self.map[i];
            }
            write!(f, ")")?;
            wrote = true;
        }
        if !wrote {
            write!(f, "()")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display_round_trip() {
        let p = Perm::parse("(1 2)(3 4)", 5).unwrap();
        assert_eq!(p.apply(0), 1);
        assert_eq!(p.apply(4), 4);
        assert_eq!(p.to_string(), "(1 2)(3 4)");
        assert_eq!(Perm::parse("()", 3).unwrap(), Perm::identity(3));
        assert_eq!(Perm::identity(3).to_string(), "()");
    }

    #[test]
    fn then_is_left_to_right() {
        // apply (1 2) then (2 3): 1 -> 2 -> 3.
        let a = Perm::parse("(1 2)", 3).unwrap();
        let b = Perm::parse("(2 3)", 3).unwrap();
        assert_eq!(a.then(&b).apply(0), 2);
    }

    #[test]
    fn cycles_are_canonical() {
        let p = Perm::parse("(2 4)(1 3)", 4).unwrap();
        assert_eq!(p.cycles(), vec![vec![0, 2], vec![1, 3]]);
        assert_eq!(p.cycle_type(), vec![2, 2]);
        assert_eq!(p.deficiency(), 2);
    }

    #[test]
    fn parse_rejects_bad_input() {
        assert!(matches!(
            Perm::parse("(1 6)", 5),
            Err(PermError::SheetOutOfRange(6, 5))
        ));
        assert!(matches!(
            Perm::parse("(1 2)(2 3)", 5),
            Err(PermError::RepeatedSheet(2))
        ));
        assert!(Perm::parse("(1 2", 5).is_err());
    }

    #[test]
    fn inverse_composes_to_identity() {
        let p = Perm::parse("(1 2 3)(4 5)", 6).unwrap();
        assert!(p.then(&p.inverse()).is_identity());
    }
}
