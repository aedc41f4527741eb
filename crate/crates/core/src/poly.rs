//! Exact polynomials over the rationals: sparse multivariate storage with a
//! dense univariate view for the root machinery. No zero coefficients are
//! ever stored; the degree of the zero polynomial is reported as `None`
//! rather than any numeric sentinel.

use crate::multiindex::MultiIndex;
use crate::rational::{rat_to_string, Rat};
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    dim: usize,
    terms: BTreeMap<MultiIndex, Rat>,
}

impl Polynomial {
    pub fn zero(dim: usize) -> Self {
        assert!(dim >= 1);
        Polynomial {
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(dim: usize, c: Rat) -> Self {
        let mut p = Polynomial::zero(dim);
        if !c.is_zero() {
            p.terms.insert(MultiIndex::zero(dim), c);
        }
        p
    }

    pub fn one(dim: usize) -> Self {
        Polynomial::constant(dim, Rat::one())
    }

    pub fn var(dim: usize, axis: usize) -> Self {
        assert!(axis < dim);
        let mut p = Polynomial::zero(dim);
        p.terms.insert(MultiIndex::unit(dim, axis), Rat::one());
        p
    }

    pub fn monomial(exp: MultiIndex, coeff: Rat) -> Self {
        let mut p = Polynomial::zero(exp.dim());
        if !coeff.is_zero() {
            p.terms.insert(exp, coeff);
        }
        p
    }

    /// Univariate polynomial from dense coefficients `c0 + c1 x + ...`.
    pub fn from_dense(coeffs: &[Rat]) -> Self {
        let mut p = Polynomial::zero(1);
        for (k, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                p.terms.insert(MultiIndex::new(vec![k]), c.clone());
            }
        }
        p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Rat)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: &MultiIndex) -> Rat {
        self.terms.get(exp).cloned().unwrap_or_else(Rat::zero)
    }

    /// Total degree; `None` is the sentinel for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(|m| m.order()).max()
    }

    pub fn is_constant(&self) -> bool {
        self.degree().is_none_or(|d| d == 0)
    }

    /// The constant value when the polynomial has degree <= 0.
    pub fn as_constant(&self) -> Option<Rat> {
        if self.is_zero() {
            Some(Rat::zero())
        } else if self.is_constant() {
            Some(self.coeff(&MultiIndex::zero(self.dim)))
        } else {
            None
        }
    }

    /// Dense univariate coefficient vector `c0..=c_deg`; empty for zero.
    pub fn dense_univariate(&self) -> Vec<Rat> {
        assert_eq!(self.dim, 1, "dense view requires a univariate polynomial");
        match self.degree() {
            None => Vec::new(),
            Some(d) => {
                let mut v = vec![Rat::zero(); d + 1];
                for (m, c) in &self.terms {
                    v[m.entry(0)] = c.clone();
                }
                v
            }
        }
    }

    pub fn leading_coeff_univariate(&self) -> Option<Rat> {
        assert_eq!(self.dim, 1);
        let d = self.degree()?;
        Some(self.coeff(&MultiIndex::new(vec![d])))
    }

    fn insert_term(&mut self, exp: MultiIndex, coeff: Rat) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(exp);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().clone() + coeff;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        assert_eq!(self.dim, other.dim);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Polynomial {
        let mut out = Polynomial::zero(self.dim);
        for (m, c) in &self.terms {
            out.terms.insert(m.clone(), -c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        assert_eq!(self.dim, other.dim);
        let mut out = Polynomial::zero(self.dim);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.insert_term(ma.add(mb), ca.clone() * cb.clone());
            }
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.dim);
        }
        let mut out = Polynomial::zero(self.dim);
        for (m, a) in &self.terms {
            out.terms.insert(m.clone(), a.clone() * c.clone());
        }
        out
    }

    pub fn pow(&self, n: usize) -> Polynomial {
        let mut out = Polynomial::one(self.dim);
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }

    pub fn derivative(&self, axis: usize) -> Polynomial {
        assert!(axis < self.dim);
        let mut out = Polynomial::zero(self.dim);
        for (m, c) in &self.terms {
            let e = m.entry(axis);
            if e == 0 {
                continue;
            }
            let mut v = m.entries().to_vec();
            v[axis] = e - 1;
            out.insert_term(MultiIndex::new(v), c.clone() * Rat::from_integer(e.into()));
        }
        out
    }

    /// Repeated partial derivative `D^a`.
    pub fn derivative_multi(&self, a: &MultiIndex) -> Polynomial {
        assert_eq!(self.dim, a.dim());
        let mut out = self.clone();
        for axis in 0..self.dim {
            for _ in 0..a.entry(axis) {
                out = out.derivative(axis);
            }
        }
        out
    }

    pub fn eval(&self, point: &[Rat]) -> Rat {
        assert_eq!(point.len(), self.dim);
        let mut acc = Rat::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (axis, &e) in m.entries().iter().enumerate() {
                for _ in 0..e {
                    t *= point[axis].clone();
                }
            }
            acc += t;
        }
        acc
    }

    /// Substitute `subs[i]` for variable `i`; the substitutes fix the output
    /// dimension and must all agree on it.
    pub fn substitute(&self, subs: &[Polynomial]) -> Polynomial {
        assert_eq!(subs.len(), self.dim);
        let out_dim = subs.first().map_or(self.dim, |p| p.dim());
        assert!(subs.iter().all(|p| p.dim() == out_dim));
        let mut acc = Polynomial::zero(out_dim);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(out_dim, c.clone());
            for (axis, &e) in m.entries().iter().enumerate() {
                if e > 0 {
                    t = t.mul(&subs[axis].pow(e));
                }
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Univariate composition `self(inner)`.
    pub fn compose_univariate(&self, inner: &Polynomial) -> Polynomial {
        assert_eq!(self.dim, 1);
        self.substitute(std::slice::from_ref(inner))
    }

    /// Split a univariate polynomial into even and odd parts:
    /// `p(y) = even(y^2) + y * odd(y^2)`.
    pub fn split_even_odd(&self) -> (Polynomial, Polynomial) {
        assert_eq!(self.dim, 1);
        let mut even = Polynomial::zero(1);
        let mut odd = Polynomial::zero(1);
        for (m, c) in &self.terms {
            let e = m.entry(0);
            if e % 2 == 0 {
                even.insert_term(MultiIndex::new(vec![e / 2]), c.clone());
            } else {
                odd.insert_term(MultiIndex::new(vec![(e - 1) / 2]), c.clone());
            }
        }
        (even, odd)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        // Highest-order terms first.
        for (m, c) in self.terms.iter().rev() {
            let neg = c < &Rat::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut parts: Vec<String> = Vec::new();
            if !mag.is_one() || m.is_zero() {
                parts.push(rat_to_string(&mag));
            }
            for (axis, &e) in m.entries().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let name = if self.dim == 1 {
                    "x".to_string()
                } else {
                    format!("x{}", axis + 1)
                };
                if e == 1 {
                    parts.push(name);
                } else {
                    parts.push(format!("{name}^{e}"));
                }
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int};

    fn upoly(coeffs: &[i64]) -> Polynomial {
        Polynomial::from_dense(&coeffs.iter().map(|&c| rat_int(c)).collect::<Vec<_>>())
    }

    #[test]
    fn zero_degree_is_the_sentinel() {
        assert_eq!(Polynomial::zero(1).degree(), None);
        assert_eq!(upoly(&[5]).degree(), Some(0));
        assert_eq!(upoly(&[0, 0, 1]).degree(), Some(2));
    }

    #[test]
    fn arithmetic_drops_cancelled_terms() {
        let p = upoly(&[1, 2]);
        let q = upoly(&[1, -2]);
        let s = p.add(&q);
        assert_eq!(s, upoly(&[2]));
        assert_eq!(s.num_terms(), 1);
    }

    #[test]
    fn univariate_composition_expands() {
        // (x^2+1) o (x^2+1) = x^4 + 2x^2 + 2
        let p = upoly(&[1, 0, 1]);
        assert_eq!(p.compose_univariate(&p), upoly(&[2, 0, 2, 0, 1]));
    }

    #[test]
    fn multivariate_substitution() {
        // f(x1,x2) = x1*x2 under x1 -> t, x2 -> t+1 gives t^2 + t.
        let f = Polynomial::var(2, 0).mul(&Polynomial::var(2, 1));
        let t = Polynomial::var(1, 0);
        let t1 = t.add(&Polynomial::one(1));
        assert_eq!(f.substitute(&[t.clone(), t1]), upoly(&[0, 1, 1]));
    }

    #[test]
    fn derivative_and_eval() {
        let p = upoly(&[1, 0, 3]); // 3x^2 + 1
        assert_eq!(p.derivative(0), upoly(&[0, 6]));
        assert_eq!(p.eval(&[rat(1, 2)]), rat(7, 4));
    }

    #[test]
    fn display_is_grammar_compatible() {
        assert_eq!(upoly(&[1, 0, 1]).to_string(), "x^2 + 1");
        assert_eq!(upoly(&[0, -1]).to_string(), "-x");
        let mixed = Polynomial::monomial(MultiIndex::new(vec![1, 2]), rat(1, 2));
        assert_eq!(mixed.to_string(), "1/2*x1*x2^2");
    }

    #[test]
    fn even_odd_split() {
        // y^3 + 2y^2 + 3 = (2t + 3) + y * (t) at t = y^2
        let p = upoly(&[3, 0, 2, 1]);
        let (even, odd) = p.split_even_odd();
        assert_eq!(even, upoly(&[3, 2]));
        assert_eq!(odd, upoly(&[0, 1]));
    }
}
