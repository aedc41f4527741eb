//! Symbol iterates `phi_n = phi o ... o phi` and the cocycle weights
//! `w_n = prod_{j=1}^{n} psi(phi_{j-1})`. Symbolic expansion is capped
//! because polynomial iterates have degree `D^n`; large-`n` work goes
//! through pointwise log-space iteration instead.

use crate::error::{Error, Result};
use crate::expr::{as_polynomial, compose, eval_logreal_at, Expr};
use crate::logreal::LogReal;

pub const DEFAULT_DEGREE_CAP: usize = 4096;
pub const DEFAULT_NODE_CAP: usize = 1_000_000;

pub struct IterateCache {
    phi: Vec<Expr>,
    degree_cap: usize,
    node_cap: usize,
    /// phi_n, indexed by n; entry 0 is the identity.
    symbols: Vec<Vec<Expr>>,
    /// Cocycle weights for the weight expression below, indexed from n = 1.
    weights: Vec<Expr>,
    weight_for: Option<Expr>,
}

impl IterateCache {
    pub fn new(phi: Vec<Expr>) -> Self {
        IterateCache::with_caps(phi, DEFAULT_DEGREE_CAP, DEFAULT_NODE_CAP)
    }

    pub fn with_caps(phi: Vec<Expr>, degree_cap: usize, node_cap: usize) -> Self {
        assert!(!phi.is_empty());
        let d = phi.len();
        let identity: Vec<Expr> = (0..d).map(Expr::var).collect();
        IterateCache {
            phi,
            degree_cap,
            node_cap,
            symbols: vec![identity],
            weights: Vec::new(),
            weight_for: None,
        }
    }

    pub fn dim(&self) -> usize {
        self.phi.len()
    }

    pub fn phi(&self) -> &[Expr] {
        &self.phi
    }

    /// Exact `phi_n` as expressions; refuses to expand past the caps.
    pub fn iterate_symbol(&mut self, n: usize) -> Result<Vec<Expr>> {
        let d = self.dim();
        // For univariate polynomial symbols the degree is known in advance;
        // reject hopeless requests before any expansion work.
        if d == 1 {
            if let Some(p) = as_polynomial(&self.phi[0], 1) {
                if let Some(deg) = p.degree() {
                    if deg >= 2 && n > 0 {
                        let predicted = deg.checked_pow(n as u32);
                        match predicted {
                            Some(e) if e <= self.degree_cap => {}
                            _ => {
                                return Err(Error::CapExceeded(format!(
                                    "degree of iterate {n} would be {deg}^{n} > {}",
                                    self.degree_cap
                                )))
                            }
                        }
                    }
                }
            }
        }
        while self.symbols.len() <= n {
            let prev = self.symbols.last().unwrap().clone();
            let mut next = Vec::with_capacity(d);
            for comp in &self.phi {
                next.push(compose(comp, &prev)?);
            }
            let nodes: usize = next.iter().map(Expr::node_count).sum();
            if nodes > self.node_cap {
                return Err(Error::CapExceeded(format!(
                    "iterate {} has {nodes} nodes > {}",
                    self.symbols.len(),
                    self.node_cap
                )));
            }
            if d == 1 {
                if let Some(p) = as_polynomial(&next[0], 1) {
                    if let Some(deg) = p.degree() {
                        if deg > self.degree_cap {
                            return Err(Error::CapExceeded(format!(
                                "iterate {} has degree {deg} > {}",
                                self.symbols.len(),
                                self.degree_cap
                            )));
                        }
                    }
                    // deg(phi_n) = D^n for nonzero polynomial symbols.
                    #[cfg(debug_assertions)]
                    if let Some(base) = as_polynomial(&self.phi[0], 1) {
                        if let (Some(bd), Some(nd)) = (base.degree(), p.degree()) {
                            let k = self.symbols.len() as u32;
                            debug_assert_eq!(Some(nd), bd.checked_pow(k));
                        }
                    }
                }
            }
            self.symbols.push(next);
        }
        Ok(self.symbols[n].clone())
    }

    /// Exact cocycle weight `w_n = prod_{j=1}^{n} psi(phi_{j-1})`, `n >= 1`.
    pub fn weight_product(&mut self, psi: &Expr, n: usize) -> Result<Expr> {
        assert!(n >= 1, "weight products start at n = 1");
        if self.weight_for.as_ref() != Some(psi) {
            self.weights.clear();
            self.weight_for = Some(psi.clone());
        }
        while self.weights.len() < n {
            let j = self.weights.len(); // building w_{j+1} = w_j * (psi o phi_j)
            let phij = self.iterate_symbol(j)?;
            let factor = compose(psi, &phij)?;
            let next = if j == 0 {
                factor
            } else {
                Expr::product(vec![self.weights[j - 1].clone(), factor])
            };
            if next.node_count() > self.node_cap {
                return Err(Error::CapExceeded(format!(
                    "weight product {} has {} nodes > {}",
                    j + 1,
                    next.node_count(),
                    self.node_cap
                )));
            }
            self.weights.push(next);
        }
        let w = self.weights[n - 1].clone();
        #[cfg(debug_assertions)]
        if self.dim() == 1 {
            // deg w_n = deg psi * (1 + D + ... + D^{n-1}) for polynomial data.
            if let (Some(pp), Some(fp)) = (as_polynomial(psi, 1), as_polynomial(&self.phi[0], 1))
            {
                if let (Some(dp), Some(df)) = (pp.degree(), fp.degree()) {
                    if !pp.is_zero() {
                        let geom: usize = (0..n).map(|j| df.pow(j as u32)).sum();
                        if let Some(wp) = as_polynomial(&w, 1) {
                            debug_assert_eq!(wp.degree().unwrap_or(0), dp * geom);
                        }
                    }
                }
            }
        }
        Ok(w)
    }
}

/// Pointwise `phi_n(x)` in log space; never expands anything symbolically.
pub fn iterate_point(phi: &[Expr], x: &[LogReal], n: usize) -> Vec<LogReal> {
    let mut current = x.to_vec();
    for _ in 0..n {
        let next: Vec<LogReal> = phi.iter().map(|c| eval_logreal_at(c, &current)).collect();
        current = next;
    }
    current
}

/// Pointwise cocycle weight `prod_{j=1}^{n} psi(phi_{j-1}(x))` in log space.
pub fn weight_product_at(phi: &[Expr], psi: &Expr, x: &[LogReal], n: usize) -> LogReal {
    let mut acc = LogReal::one();
    let mut point = x.to_vec();
    for _ in 0..n {
        acc = acc.mul(&eval_logreal_at(psi, &point));
        point = phi.iter().map(|c| eval_logreal_at(c, &point)).collect();
    }
    acc
}
