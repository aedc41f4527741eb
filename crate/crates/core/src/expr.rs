//! Closed-form expressions over a whitelisted grammar: rational constants,
//! variables, sums, products, integer powers, `exp`, and square roots of
//! polynomials certified strictly positive on the real line. The grammar is
//! closed under exact differentiation; the one internal extension needed for
//! that is a quotient normal form `num / sqrt(p)^k`.

use crate::error::{Error, Result};
use crate::logreal::LogReal;
use crate::multiindex::MultiIndex;
use crate::poly::Polynomial;
use crate::rational::{rat_int, rat_to_string, Rat};
use crate::rootcheck::is_positive_on_reals;
use num_traits::{One, Signed, Zero};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Const(Rat),
    Var(usize),
    Sum(Vec<Expr>),
    Product(Vec<Expr>),
    IntPow(Box<Expr>, u32),
    Exp(Box<Expr>),
    SqrtPoly(Polynomial),
    /// Internal normal form `num / sqrt(den)^den_pow`; produced by
    /// differentiation of `SqrtPoly`, never by the parser.
    SqrtQuot {
        num: Box<Expr>,
        den: Polynomial,
        den_pow: u32,
    },
}

impl Expr {
    pub fn zero() -> Expr {
        Expr::Const(Rat::zero())
    }

    pub fn one() -> Expr {
        Expr::Const(Rat::one())
    }

    pub fn constant(r: Rat) -> Expr {
        Expr::Const(r)
    }

    pub fn int(n: i64) -> Expr {
        Expr::Const(rat_int(n))
    }

    pub fn var(axis: usize) -> Expr {
        Expr::Var(axis)
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Expr::Const(c) if c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Expr::Const(c) if c.is_one())
    }

    /// Flattening sum constructor; folds constants and drops zeros.
    pub fn sum(terms: Vec<Expr>) -> Expr {
        let mut flat = Vec::new();
        let mut konst = Rat::zero();
        for t in terms {
            match t {
                Expr::Sum(inner) => {
                    for u in inner {
                        match u {
                            Expr::Const(c) => konst += c,
                            other => flat.push(other),
                        }
                    }
                }
                Expr::Const(c) => konst += c,
                other => flat.push(other),
            }
        }
        if !konst.is_zero() {
            flat.push(Expr::Const(konst));
        }
        match flat.len() {
            0 => Expr::zero(),
            1 => flat.pop().unwrap(),
            _ => Expr::Sum(flat),
        }
    }

    /// Flattening product constructor; folds constants, annihilates on zero,
    /// and merges all `exp` factors into a single `exp` of the summed
    /// arguments so that weight products stay compact.
    pub fn product(factors: Vec<Expr>) -> Expr {
        let mut flat = Vec::new();
        let mut konst = Rat::one();
        let mut exp_args = Vec::new();
        let mut stack: Vec<Expr> = factors.into_iter().rev().collect();
        while let Some(f) = stack.pop() {
            match f {
                Expr::Product(inner) => {
                    for u in inner.into_iter().rev() {
                        stack.push(u);
                    }
                }
                Expr::Const(c) => {
                    if c.is_zero() {
                        return Expr::zero();
                    }
                    konst *= c;
                }
                Expr::Exp(arg) => exp_args.push(*arg),
                other => flat.push(other),
            }
        }
        if !exp_args.is_empty() {
            flat.push(Expr::exp(Expr::sum(exp_args)));
        }
        if !konst.is_one() || flat.is_empty() {
            flat.insert(0, Expr::Const(konst));
        }
        match flat.len() {
            0 => Expr::one(),
            1 => flat.pop().unwrap(),
            _ => Expr::Product(flat),
        }
    }

    pub fn int_pow(base: Expr, n: u32) -> Expr {
        match n {
            0 => Expr::one(),
            1 => base,
            _ => match base {
                Expr::Const(c) => {
                    let mut acc = Rat::one();
                    for _ in 0..n {
                        acc *= c.clone();
                    }
                    Expr::Const(acc)
                }
                Expr::IntPow(inner, m) => Expr::IntPow(inner, m.saturating_mul(n)),
                other => Expr::IntPow(Box::new(other), n),
            },
        }
    }

    pub fn exp(arg: Expr) -> Expr {
        if arg.is_zero() {
            return Expr::one();
        }
        Expr::Exp(Box::new(arg))
    }

    /// Square root of a polynomial; the argument must be certified strictly
    /// positive on the whole real line, otherwise the value would leave the
    /// smooth class.
    pub fn sqrt_poly(p: Polynomial) -> Result<Expr> {
        if p.dim() != 1 {
            return Err(Error::Positivity(
                "sqrt arguments are only supported for univariate polynomials".into(),
            ));
        }
        if p.is_zero() {
            return Err(Error::Positivity("sqrt argument is identically zero".into()));
        }
        if !is_positive_on_reals(&p)? {
            return Err(Error::Positivity(format!(
                "sqrt argument `{p}` has a real zero or takes negative values"
            )));
        }
        // Constant perfect squares collapse to rational constants.
        if let Some(c) = p.as_constant() {
            if let Some(r) = rat_sqrt(&c) {
                return Ok(Expr::Const(r));
            }
        }
        Ok(Expr::SqrtPoly(p))
    }

    fn sqrt_quot(num: Expr, den: Polynomial, den_pow: u32) -> Expr {
        if num.is_zero() {
            return Expr::zero();
        }
        if den_pow == 0 {
            return num;
        }
        Expr::SqrtQuot {
            num: Box::new(num),
            den,
            den_pow,
        }
    }

    pub fn from_polynomial(p: &Polynomial) -> Expr {
        let mut terms = Vec::new();
        for (m, c) in p.terms() {
            let mut factors = vec![Expr::Const(c.clone())];
            for (axis, &e) in m.entries().iter().enumerate() {
                if e > 0 {
                    factors.push(Expr::int_pow(Expr::Var(axis), e as u32));
                }
            }
            terms.push(Expr::product(factors));
        }
        Expr::sum(terms)
    }

    /// Number of AST nodes; used for blow-up caps.
    pub fn node_count(&self) -> usize {
        match self {
            Expr::Const(_) | Expr::Var(_) | Expr::SqrtPoly(_) => 1,
            Expr::Sum(v) | Expr::Product(v) => 1 + v.iter().map(Expr::node_count).sum::<usize>(),
            Expr::IntPow(e, _) | Expr::Exp(e) => 1 + e.node_count(),
            Expr::SqrtQuot { num, .. } => 1 + num.node_count(),
        }
    }

    /// Smallest dimension in which the expression is well formed.
    pub fn min_dim(&self) -> usize {
        match self {
            Expr::Const(_) => 1,
            Expr::Var(axis) => axis + 1,
            Expr::Sum(v) | Expr::Product(v) => {
                v.iter().map(Expr::min_dim).max().unwrap_or(1)
            }
            Expr::IntPow(e, _) | Expr::Exp(e) => e.min_dim(),
            Expr::SqrtPoly(p) => p.dim(),
            Expr::SqrtQuot { num, den, .. } => num.min_dim().max(den.dim()),
        }
    }

    pub fn contains_exp(&self) -> bool {
        match self {
            Expr::Const(_) | Expr::Var(_) | Expr::SqrtPoly(_) => false,
            Expr::Sum(v) | Expr::Product(v) => v.iter().any(Expr::contains_exp),
            Expr::IntPow(e, _) => e.contains_exp(),
            Expr::Exp(_) => true,
            Expr::SqrtQuot { num, .. } => num.contains_exp(),
        }
    }

    pub fn contains_sqrt(&self) -> bool {
        match self {
            Expr::Const(_) | Expr::Var(_) => false,
            Expr::Sum(v) | Expr::Product(v) => v.iter().any(Expr::contains_sqrt),
            Expr::IntPow(e, _) | Expr::Exp(e) => e.contains_sqrt(),
            Expr::SqrtPoly(_) | Expr::SqrtQuot { .. } => true,
        }
    }
}

fn rat_sqrt(c: &Rat) -> Option<Rat> {
    if c.is_negative() {
        return None;
    }
    let n = c.numer().sqrt();
    let d = c.denom().sqrt();
    if &(&n * &n) == c.numer() && &(&d * &d) == c.denom() {
        Some(Rat::new(n, d))
    } else {
        None
    }
}

/// Exact partial derivative along `axis`. Total on the grammar: the only
/// case that leaves the surface syntax is `sqrt`, whose derivative lands in
/// the internal quotient normal form.
pub fn differentiate(e: &Expr, axis: usize) -> Expr {
    match e {
        Expr::Const(_) => Expr::zero(),
        Expr::Var(v) => {
            if *v == axis {
                Expr::one()
            } else {
                Expr::zero()
            }
        }
        Expr::Sum(terms) => Expr::sum(terms.iter().map(|t| differentiate(t, axis)).collect()),
        Expr::Product(factors) => {
            let mut terms = Vec::new();
            for i in 0..factors.len() {
                let di = differentiate(&factors[i], axis);
                if di.is_zero() {
                    continue;
                }
                let mut fs = Vec::with_capacity(factors.len());
                for (j, f) in factors.iter().enumerate() {
                    if j == i {
                        fs.push(di.clone());
                    } else {
                        fs.push(f.clone());
                    }
                }
                terms.push(Expr::product(fs));
            }
            Expr::sum(terms)
        }
        Expr::IntPow(base, n) => {
            let db = differentiate(base, axis);
            if db.is_zero() {
                return Expr::zero();
            }
            Expr::product(vec![
                Expr::int(*n as i64),
                Expr::int_pow((**base).clone(), n - 1),
                db,
            ])
        }
        Expr::Exp(arg) => {
            let da = differentiate(arg, axis);
            if da.is_zero() {
                return Expr::zero();
            }
            Expr::product(vec![da, e.clone()])
        }
        Expr::SqrtPoly(p) => {
            // d sqrt(p) = (p'/2) / sqrt(p)
            let dp = p.derivative(axis).scale(&Rat::new(1.into(), 2.into()));
            Expr::sqrt_quot(Expr::from_polynomial(&dp), p.clone(), 1)
        }
        Expr::SqrtQuot { num, den, den_pow } => {
            // d (num / sqrt(p)^k) = (num' p - (k/2) num p') / sqrt(p)^(k+2)
            let dnum = differentiate(num, axis);
            let dden = den.derivative(axis);
            let lhs = Expr::product(vec![dnum, Expr::from_polynomial(den)]);
            let rhs = Expr::product(vec![
                Expr::Const(Rat::new((*den_pow).into(), 2.into())),
                (**num).clone(),
                Expr::from_polynomial(&dden),
            ]);
            let new_num = Expr::sum(vec![lhs, Expr::product(vec![Expr::int(-1), rhs])]);
            Expr::sqrt_quot(new_num, den.clone(), den_pow + 2)
        }
    }
}

/// Repeated derivative `D^a`.
pub fn differentiate_multi(e: &Expr, a: &MultiIndex) -> Expr {
    let mut out = e.clone();
    for axis in 0..a.dim() {
        for _ in 0..a.entry(axis) {
            out = differentiate(&out, axis);
        }
    }
    out
}

/// Expanded polynomial form of the expression, when one exists.
pub fn as_polynomial(e: &Expr, dim: usize) -> Option<Polynomial> {
    match e {
        Expr::Const(c) => Some(Polynomial::constant(dim, c.clone())),
        Expr::Var(axis) => {
            if *axis < dim {
                Some(Polynomial::var(dim, *axis))
            } else {
                None
            }
        }
        Expr::Sum(terms) => {
            let mut acc = Polynomial::zero(dim);
            for t in terms {
                acc = acc.add(&as_polynomial(t, dim)?);
            }
            Some(acc)
        }
        Expr::Product(factors) => {
            let mut acc = Polynomial::one(dim);
            for f in factors {
                acc = acc.mul(&as_polynomial(f, dim)?);
            }
            Some(acc)
        }
        Expr::IntPow(base, n) => {
            if let Some(p) = as_polynomial(base, dim) {
                return Some(p.pow(*n as usize));
            }
            // Even powers of sqrt(p) are polynomial.
            if let Expr::SqrtPoly(p) = &**base {
                if n % 2 == 0 && p.dim() == dim {
                    return Some(p.pow((n / 2) as usize));
                }
            }
            None
        }
        Expr::Exp(_) => None,
        Expr::SqrtPoly(p) => {
            // Only a positive constant under the root can collapse (the
            // constructor already folds perfect squares).
            let c = p.as_constant()?;
            rat_sqrt(&c).map(|r| Polynomial::constant(dim, r))
        }
        Expr::SqrtQuot { .. } => None,
    }
}

/// Syntactic composition `outer(inner_1, ..., inner_d)`. Errors when the
/// composite would leave the grammar (a root applied to a non-polynomial).
pub fn compose(outer: &Expr, inner: &[Expr]) -> Result<Expr> {
    let d = inner.len();
    match outer {
        Expr::Const(c) => Ok(Expr::Const(c.clone())),
        Expr::Var(axis) => {
            if *axis >= d {
                return Err(Error::DimensionMismatch {
                    expected: axis + 1,
                    got: d,
                });
            }
            Ok(inner[*axis].clone())
        }
        Expr::Sum(terms) => {
            let mapped = terms
                .iter()
                .map(|t| compose(t, inner))
                .collect::<Result<Vec<_>>>()?;
            Ok(Expr::sum(mapped))
        }
        Expr::Product(factors) => {
            let mapped = factors
                .iter()
                .map(|t| compose(t, inner))
                .collect::<Result<Vec<_>>>()?;
            Ok(Expr::product(mapped))
        }
        Expr::IntPow(base, n) => Ok(Expr::int_pow(compose(base, inner)?, *n)),
        Expr::Exp(arg) => Ok(Expr::exp(compose(arg, inner)?)),
        Expr::SqrtPoly(p) => {
            // sqrt(p) o inner = sqrt(p o inner); p o inner must reduce to a
            // polynomial again. Squares of roots reduce, so e.g. composing
            // sqrt(1+x^2) with itself stays inside the grammar.
            let composed = compose(&Expr::from_polynomial(p), inner)?;
            let out_dim = composed.min_dim().max(1);
            let q = as_polynomial(&composed, out_dim).ok_or_else(|| {
                Error::GrammarClosure(
                    "sqrt applied to a non-polynomial composite".into(),
                )
            })?;
            Expr::sqrt_poly(q)
        }
        Expr::SqrtQuot { num, den, den_pow } => {
            let num_c = compose(num, inner)?;
            let den_c = compose(&Expr::from_polynomial(den), inner)?;
            let out_dim = den_c.min_dim().max(1);
            let q = as_polynomial(&den_c, out_dim).ok_or_else(|| {
                Error::GrammarClosure(
                    "root denominator applied to a non-polynomial composite".into(),
                )
            })?;
            if !is_positive_on_reals(&q)? {
                return Err(Error::Positivity(format!(
                    "composed root denominator `{q}` is not strictly positive"
                )));
            }
            Ok(Expr::sqrt_quot(num_c, q, *den_pow))
        }
    }
}

/// Evaluate at a point whose coordinates are themselves log-space reals, so
/// iterated evaluation never overflows.
pub fn eval_logreal_at(e: &Expr, x: &[LogReal]) -> LogReal {
    match e {
        Expr::Const(c) => LogReal::from_rat(c),
        Expr::Var(axis) => x[*axis],
        Expr::Sum(terms) => {
            let mut acc = LogReal::zero();
            for t in terms {
                acc = acc.add(&eval_logreal_at(t, x));
            }
            acc
        }
        Expr::Product(factors) => {
            let mut acc = LogReal::one();
            for f in factors {
                acc = acc.mul(&eval_logreal_at(f, x));
                if acc.is_zero() {
                    return acc;
                }
            }
            acc
        }
        Expr::IntPow(base, n) => eval_logreal_at(base, x).powi(*n),
        Expr::Exp(arg) => eval_logreal_at(arg, x).exp(),
        Expr::SqrtPoly(p) => eval_poly_logreal(p, x).sqrt(),
        Expr::SqrtQuot { num, den, den_pow } => {
            let n = eval_logreal_at(num, x);
            let d = eval_poly_logreal(den, x).sqrt().powi(*den_pow);
            n.div(&d)
        }
    }
}

/// Evaluate with ordinary float coordinates.
pub fn eval_logreal(e: &Expr, x: &[f64]) -> LogReal {
    let coords: Vec<LogReal> = x.iter().map(|&v| LogReal::from_f64(v)).collect();
    eval_logreal_at(e, &coords)
}

pub fn eval_poly_logreal(p: &Polynomial, x: &[LogReal]) -> LogReal {
    let mut acc = LogReal::zero();
    for (m, c) in p.terms() {
        let mut t = LogReal::from_rat(c);
        for (axis, &e) in m.entries().iter().enumerate() {
            if e > 0 {
                t = t.mul(&x[axis].powi(e as u32));
            }
        }
        acc = acc.add(&t);
    }
    acc
}

fn needs_parens_in_product(e: &Expr) -> bool {
    match e {
        Expr::Sum(_) => true,
        Expr::Const(c) => c.is_negative(),
        _ => false,
    }
}

fn needs_parens_in_power(e: &Expr) -> bool {
    match e {
        Expr::Var(_) | Expr::Exp(_) | Expr::SqrtPoly(_) => false,
        Expr::Const(c) => c.is_negative() || !c.denom().is_one(),
        _ => true,
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Const(c) => write!(f, "{}", rat_to_string(c)),
            Expr::Var(axis) => {
                if *axis == 0 {
                    write!(f, "x")
                } else {
                    write!(f, "x{}", axis + 1)
                }
            }
            Expr::Sum(terms) => {
                for (i, t) in terms.iter().enumerate() {
                    if i == 0 {
                        write!(f, "{t}")?;
                    } else {
                        // Render additive inverses with a minus sign.
                        match negated_view(t) {
                            Some(pos) => write!(f, " - {pos}")?,
                            None => write!(f, " + {t}")?,
                        }
                    }
                }
                Ok(())
            }
            Expr::Product(factors) => {
                for (i, t) in factors.iter().enumerate() {
                    if i > 0 {
                        write!(f, "*")?;
                    }
                    if matches!(t, Expr::Sum(_)) || (i > 0 && needs_parens_in_product(t)) {
                        write!(f, "({t})")?;
                    } else {
                        write!(f, "{t}")?;
                    }
                }
                Ok(())
            }
            Expr::IntPow(base, n) => {
                if needs_parens_in_power(base) {
                    write!(f, "({base})^{n}")
                } else {
                    write!(f, "{base}^{n}")
                }
            }
            Expr::Exp(arg) => write!(f, "exp({arg})"),
            Expr::SqrtPoly(p) => write!(f, "sqrt({p})"),
            Expr::SqrtQuot { num, den, den_pow } => {
                if *den_pow == 1 {
                    write!(f, "({num})/sqrt({den})")
                } else {
                    write!(f, "({num})/sqrt({den})^{den_pow}")
                }
            }
        }
    }
}

/// For pretty sums: if `t` is `(-c) * rest` or a negative constant, return
/// the positive counterpart.
fn negated_view(t: &Expr) -> Option<Expr> {
    match t {
        Expr::Const(c) if c.is_negative() => Some(Expr::Const(-c.clone())),
        Expr::Product(fs) => match fs.first() {
            Some(Expr::Const(c)) if c.is_negative() => {
                let mut rest = fs.clone();
                rest[0] = Expr::Const(-c.clone());
                Some(Expr::product(rest))
            }
            _ => None,
        },
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn upoly(coeffs: &[i64]) -> Polynomial {
        Polynomial::from_dense(&coeffs.iter().map(|&c| rat_int(c)).collect::<Vec<_>>())
    }

    #[test]
    fn derivative_of_polynomial_expression() {
        let e = Expr::sum(vec![Expr::int_pow(Expr::var(0), 2), Expr::one()]);
        let d = differentiate(&e, 0);
        assert_eq!(as_polynomial(&d, 1).unwrap(), upoly(&[0, 2]));
    }

    #[test]
    fn derivative_of_exp_is_exp() {
        let e = Expr::exp(Expr::var(0));
        assert_eq!(differentiate(&e, 0), e);
    }

    #[test]
    fn sqrt_derivative_matches_finite_differences() {
        // d/dx sqrt(1+x^2) = x / sqrt(1+x^2); oracle: central differences.
        let s = Expr::sqrt_poly(upoly(&[1, 0, 1])).unwrap();
        let d = differentiate(&s, 0);
        let h = 1e-6;
        for &x in &[0.0f64, 1.0, 2.0] {
            let num = ((1.0 + (x + h) * (x + h)).sqrt() - (1.0 + (x - h) * (x - h)).sqrt())
                / (2.0 * h);
            let got = eval_logreal(&d, &[x]).to_f64();
            let denom = num.abs().max(1e-12);
            assert!(
                (got - num).abs() / denom < 1e-8 || (got.abs() < 1e-9 && num.abs() < 1e-6),
                "x={x}: got {got}, oracle {num}"
            );
        }
    }

    #[test]
    fn sqrt_requires_positivity() {
        assert!(matches!(
            Expr::sqrt_poly(upoly(&[0, 1])),
            Err(Error::Positivity(_))
        ));
    }

    #[test]
    fn composition_of_polynomials_expands() {
        // Oracle: coefficient-level composition.
        let p = upoly(&[1, 0, 1]);
        let expect = p.compose_univariate(&p);
        let e = Expr::from_polynomial(&p);
        let c = compose(&e, std::slice::from_ref(&e)).unwrap();
        assert_eq!(as_polynomial(&c, 1).unwrap(), expect);
    }

    #[test]
    fn composition_of_exp_nests() {
        let e = Expr::exp(Expr::var(0));
        let c = compose(&e, std::slice::from_ref(&e)).unwrap();
        assert_eq!(c, Expr::exp(Expr::exp(Expr::var(0))));
    }

    #[test]
    fn composition_of_root_with_exp_leaves_the_grammar() {
        let s = Expr::sqrt_poly(upoly(&[1, 0, 1])).unwrap();
        let e = Expr::exp(Expr::var(0));
        assert!(matches!(
            compose(&s, &[e]),
            Err(Error::GrammarClosure(_))
        ));
    }

    #[test]
    fn composition_of_roots_stays_in_grammar() {
        // sqrt(1+x^2) o sqrt(1+x^2) = sqrt(2+x^2); numeric check at 0: sqrt 2.
        let s = Expr::sqrt_poly(upoly(&[1, 0, 1])).unwrap();
        let c = compose(&s, std::slice::from_ref(&s)).unwrap();
        assert_eq!(c, Expr::SqrtPoly(upoly(&[2, 0, 1])));
        let v = eval_logreal(&c, &[0.0]).to_f64();
        assert!((v - 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn eval_handles_exp_towers() {
        // exp(exp(x)) at x = 3: log-magnitude is exactly e^3.
        let e = Expr::exp(Expr::exp(Expr::var(0)));
        let v = eval_logreal(&e, &[3.0]);
        assert_eq!(v.sign(), 1);
        assert!((v.ln_abs() - 3f64.exp()).abs() < 1e-9);
    }

    #[test]
    fn eval_zero_polynomial_is_sign_zero() {
        let z = Expr::from_polynomial(&Polynomial::zero(1));
        assert_eq!(eval_logreal(&z, &[17.0]).sign(), 0);
    }

    #[test]
    fn eval_simple_polynomial() {
        let e = Expr::sum(vec![Expr::int_pow(Expr::var(0), 2), Expr::one()]);
        let v = eval_logreal(&e, &[2.0]);
        assert_eq!(v.sign(), 1);
        assert!((v.ln_abs() - 5f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn polynomial_extraction() {
        let e = Expr::sum(vec![Expr::int_pow(Expr::var(0), 2), Expr::one()]);
        assert!(as_polynomial(&e, 1).is_some());
        assert!(as_polynomial(&Expr::exp(Expr::var(0)), 1).is_none());
        // (x+1)(x-1) expands to x^2 - 1; oracle: coefficient arithmetic.
        let prod = Expr::product(vec![
            Expr::sum(vec![Expr::var(0), Expr::one()]),
            Expr::sum(vec![Expr::var(0), Expr::int(-1)]),
        ]);
        assert_eq!(as_polynomial(&prod, 1).unwrap(), upoly(&[-1, 0, 1]));
    }

    #[test]
    fn product_constructor_merges_exp_factors() {
        let e = Expr::product(vec![
            Expr::exp(Expr::var(0)),
            Expr::exp(Expr::int_pow(Expr::var(0), 2)),
        ]);
        match e {
            Expr::Exp(arg) => {
                assert_eq!(
                    as_polynomial(&arg, 1).unwrap(),
                    upoly(&[0, 1, 1])
                );
            }
            other => panic!("expected merged exp, got {other:?}"),
        }
    }

    #[test]
    fn quotient_derivative_chain_stays_closed() {
        // Second derivative of sqrt(1+x^2) = 1/(1+x^2)^(3/2); value at 0 is 1.
        let s = Expr::sqrt_poly(upoly(&[1, 0, 1])).unwrap();
        let d2 = differentiate(&differentiate(&s, 0), 0);
        let v = eval_logreal(&d2, &[0.0]).to_f64();
        assert!((v - 1.0).abs() < 1e-9);
        let v2 = eval_logreal(&d2, &[2.0]).to_f64();
        let oracle = 1.0 / (1.0 + 4.0f64).powf(1.5);
        assert!((v2 - oracle).abs() < 1e-9 * oracle.abs().max(1.0));
    }

    #[test]
    fn constant_root_collapses() {
        let e = Expr::sqrt_poly(Polynomial::constant(1, rat(9, 4))).unwrap();
        assert_eq!(e, Expr::Const(rat(3, 2)));
    }
}
