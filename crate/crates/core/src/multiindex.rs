//! Multi-indices in `N_0^d` with the graded lexicographic strict order used
//! by the multivariate chain-rule combinatorics: first compare total order
//! `|a|`, then entries left to right.

use crate::error::{Error, Result};
use crate::rational::{binomial, factorial, Rat};
use num_traits::One;
use std::cmp::Ordering;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiIndex(Vec<usize>);

impl MultiIndex {
    pub fn new(entries: Vec<usize>) -> Self {
        assert!(!entries.is_empty(), "dimension must be at least 1");
        MultiIndex(entries)
    }

    pub fn zero(dim: usize) -> Self {
        MultiIndex::new(vec![0; dim])
    }

    /// Standard basis vector `e_axis`.
    pub fn unit(dim: usize, axis: usize) -> Self {
        assert!(axis < dim);
        let mut e = vec![0; dim];
        e[axis] = 1;
        MultiIndex(e)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[usize] {
        &self.0
    }

    pub fn entry(&self, axis: usize) -> usize {
        self.0[axis]
    }

    /// Total order `|a|`.
    pub fn order(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn add(&self, other: &MultiIndex) -> MultiIndex {
        assert_eq!(self.dim(), other.dim());
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Componentwise difference; `None` when any entry would go negative.
    pub fn checked_sub(&self, other: &MultiIndex) -> Option<MultiIndex> {
        if self.dim() != other.dim() {
            return None;
        }
        let mut out = Vec::with_capacity(self.dim());
        for (a, b) in self.0.iter().zip(&other.0) {
            out.push(a.checked_sub(*b)?);
        }
        Some(MultiIndex(out))
    }

    pub fn scale(&self, c: usize) -> MultiIndex {
        MultiIndex(self.0.iter().map(|a| a * c).collect())
    }

    /// Componentwise `self <= other`.
    pub fn le_componentwise(&self, other: &MultiIndex) -> bool {
        self.dim() == other.dim() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `a!` as a rational.
    pub fn factorial(&self) -> Rat {
        self.0
            .iter()
            .fold(Rat::one(), |acc, &e| acc * factorial(e))
    }

    /// Multinomial `C(self, other)`, zero when `other` exceeds `self` anywhere.
    pub fn binomial(&self, other: &MultiIndex) -> Rat {
        assert_eq!(self.dim(), other.dim());
        self.0
            .iter()
            .zip(&other.0)
            .fold(Rat::one(), |acc, (&a, &b)| acc * binomial(a, b))
    }

    /// All multi-indices `b` with `b <= self` componentwise, ascending.
    pub fn below(&self) -> Vec<MultiIndex> {
        let mut out = vec![MultiIndex::zero(self.dim())];
        for axis in 0..self.dim() {
            let mut next = Vec::new();
            for b in &out {
                for e in 0..=self.0[axis] {
                    let mut v = b.0.clone();
                    v[axis] = e;
                    next.push(MultiIndex(v));
                }
            }
            out = next;
        }
        out.sort();
        out
    }

    /// All multi-indices of dimension `dim` with total order at most `max_order`.
    pub fn all_up_to_order(dim: usize, max_order: usize) -> Vec<MultiIndex> {
        fn rec(dim: usize, budget: usize, prefix: &mut Vec<usize>, out: &mut Vec<MultiIndex>) {
            if prefix.len() == dim {
                out.push(MultiIndex(prefix.clone()));
                return;
            }
            for e in 0..=budget {
                prefix.push(e);
                rec(dim, budget - e, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        rec(dim, max_order, &mut Vec::new(), &mut out);
        out.sort();
        out
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        assert_eq!(self.dim(), other.dim(), "dimension mismatch in comparison");
        self.order()
            .cmp(&other.order())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// Strict order `a` before `b`: smaller total order first, ties broken
/// lexicographically on the entries.
pub fn mi_prec(a: &MultiIndex, b: &MultiIndex) -> Result<bool> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            got: b.dim(),
        });
    }
    Ok(a < b)
}
