//! Exact real-root machinery over rational polynomials: Sturm sequences,
//! root counting and isolation, fixed-point and positivity certificates.
//! Everything here is exact; the chain elements are normalized by their
//! positive content to keep coefficient growth in check.

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::rational::{rat_int, Rat};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Endpoint of a root-counting interval.
#[derive(Debug, Clone, PartialEq)]
pub enum ExtRat {
    NegInf,
    Fin(Rat),
    PosInf,
}

/// Exact root count with pairwise disjoint isolating intervals, one root per
/// interval.
#[derive(Debug, Clone)]
pub struct RootCertificate {
    pub polynomial: Polynomial,
    pub count: usize,
    pub isolating_intervals: Vec<(Rat, Rat)>,
}

fn dense(p: &Polynomial) -> Result<Vec<Rat>> {
    if p.dim() != 1 {
        return Err(Error::DimensionMismatch {
            expected: 1,
            got: p.dim(),
        });
    }
    Ok(p.dense_univariate())
}

fn trim(mut v: Vec<Rat>) -> Vec<Rat> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

fn deriv(p: &[Rat]) -> Vec<Rat> {
    if p.len() <= 1 {
        return Vec::new();
    }
    p.iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c.clone() * rat_int(k as i64))
        .collect()
}

/// Divide every coefficient by the positive content (gcd of numerators over
/// lcm of denominators). Positive scaling keeps all sign information intact.
fn normalize_content(p: Vec<Rat>) -> Vec<Rat> {
    if p.is_empty() {
        return p;
    }
    let mut num_gcd = BigInt::zero();
    let mut den_lcm = BigInt::one();
    for c in &p {
        num_gcd = num_gcd.gcd(&c.numer().abs());
        den_lcm = den_lcm.lcm(c.denom());
    }
    if num_gcd.is_zero() {
        return p;
    }
    let content = Rat::new(num_gcd, den_lcm);
    p.into_iter().map(|c| c / content.clone()).collect()
}

/// Polynomial remainder of `a` by `b` (dense, b nonzero).
fn rem(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lb = b.last().unwrap().clone();
    while r.len() >= b.len() {
        let dr = r.len() - 1;
        let factor = r.last().unwrap().clone() / lb.clone();
        let shift = dr - db;
        for i in 0..b.len() {
            let adj = b[i].clone() * factor.clone();
            r[i + shift] -= adj;
        }
        r = trim(r);
        if r.is_empty() {
            break;
        }
    }
    r
}

fn gcd_poly(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let mut a = normalize_content(trim(a.to_vec()));
    let mut b = normalize_content(trim(b.to_vec()));
    while !b.is_empty() {
        let r = normalize_content(rem(&a, &b));
        a = b;
        b = r;
    }
    a
}

fn div_exact(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lb = b.last().unwrap().clone();
    let mut q = vec![Rat::zero(); a.len().saturating_sub(db)];
    while r.len() >= b.len() {
        let dr = r.len() - 1;
        let factor = r.last().unwrap().clone() / lb.clone();
        let shift = dr - db;
        q[shift] = factor.clone();
        for i in 0..b.len() {
            let adj = b[i].clone() * factor.clone();
            r[i + shift] -= adj;
        }
        r = trim(r);
    }
    trim(q)
}

/// Square-free part `p / gcd(p, p')`.
fn square_free(p: &[Rat]) -> Vec<Rat> {
    let d = deriv(p);
    if d.is_empty() {
        return normalize_content(p.to_vec());
    }
    let g = gcd_poly(p, &d);
    if g.len() <= 1 {
        return normalize_content(p.to_vec());
    }
    normalize_content(div_exact(p, &g))
}

fn sturm_chain(p: &[Rat]) -> Vec<Vec<Rat>> {
    let p0 = square_free(p);
    let p1 = deriv(&p0);
    let mut chain = vec![p0];
    if !p1.is_empty() {
        chain.push(normalize_content(p1));
    }
    while chain.last().is_some_and(|l| l.len() > 1) {
        let n = chain.len();
        let r = rem(&chain[n - 2], &chain[n - 1]);
        if r.is_empty() {
            break;
        }
        let neg: Vec<Rat> = r.into_iter().map(|c| -c).collect();
        chain.push(normalize_content(neg));
    }
    chain
}

fn sign_at(p: &[Rat], x: &ExtRat) -> i8 {
    if p.is_empty() {
        return 0;
    }
    match x {
        ExtRat::Fin(v) => {
            // Horner evaluation.
            let mut acc = Rat::zero();
            for c in p.iter().rev() {
                acc = acc * v.clone() + c.clone();
            }
            if acc.is_zero() {
                0
            } else if acc > Rat::zero() {
                1
            } else {
                -1
            }
        }
        ExtRat::PosInf => {
            let lc = p.last().unwrap();
            if lc > &Rat::zero() {
                1
            } else {
                -1
            }
        }
        ExtRat::NegInf => {
            let lc = p.last().unwrap();
            let deg_odd = (p.len() - 1) % 2 == 1;
            let s = if lc > &Rat::zero() { 1 } else { -1 };
            if deg_odd {
                -s
            } else {
                s
            }
        }
    }
}

fn variations(chain: &[Vec<Rat>], x: &ExtRat) -> usize {
    let mut count = 0;
    let mut last = 0i8;
    for p in chain {
        let s = sign_at(p, x);
        if s == 0 {
            continue;
        }
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

fn ext_lt(a: &ExtRat, b: &ExtRat) -> bool {
    match (a, b) {
        (ExtRat::NegInf, ExtRat::NegInf) | (ExtRat::PosInf, ExtRat::PosInf) => false,
        (ExtRat::NegInf, _) | (_, ExtRat::PosInf) => true,
        (_, ExtRat::NegInf) | (ExtRat::PosInf, _) => false,
        (ExtRat::Fin(a), ExtRat::Fin(b)) => a < b,
    }
}

/// Number of distinct real roots of `p` in the half-open interval `(a, b]`.
pub fn sturm_count(p: &Polynomial, a: &ExtRat, b: &ExtRat) -> Result<usize> {
    let d = dense(p)?;
    if d.is_empty() {
        return Err(Error::ZeroPolynomial);
    }
    assert!(ext_lt(a, b), "interval endpoints must satisfy a < b");
    if d.len() == 1 {
        return Ok(0);
    }
    let chain = sturm_chain(&d);
    Ok(variations(&chain, a).saturating_sub(variations(&chain, b)))
}

/// Number of distinct real roots of `p` on the whole line.
pub fn count_real_roots(p: &Polynomial) -> Result<usize> {
    sturm_count(p, &ExtRat::NegInf, &ExtRat::PosInf)
}

/// Cauchy bound: every real root of `p` lies in `[-B, B]`.
pub fn root_bound(p: &Polynomial) -> Result<Rat> {
    let d = dense(p)?;
    if d.is_empty() {
        return Err(Error::ZeroPolynomial);
    }
    let lc = d.last().unwrap().clone();
    let mut max = Rat::zero();
    for c in &d[..d.len() - 1] {
        let q = (c.clone() / lc.clone()).abs();
        if q > max {
            max = q;
        }
    }
    Ok(Rat::one() + max)
}

/// Isolating intervals `(lo, hi]` for the distinct real roots of `p`.
pub fn isolate_roots(p: &Polynomial) -> Result<Vec<(Rat, Rat)>> {
    let d = dense(p)?;
    if d.is_empty() {
        return Err(Error::ZeroPolynomial);
    }
    if d.len() == 1 {
        return Ok(Vec::new());
    }
    let chain = sturm_chain(&d);
    let bound = root_bound(p)?;
    let mut stack = vec![(-bound.clone(), bound.clone())];
    let mut out = Vec::new();
    while let Some((lo, hi)) = stack.pop() {
        let n = variations(&chain, &ExtRat::Fin(lo.clone()))
            .saturating_sub(variations(&chain, &ExtRat::Fin(hi.clone())));
        match n {
            0 => {}
            1 => out.push((lo, hi)),
            _ => {
                let mid = (lo.clone() + hi.clone()) / rat_int(2);
                stack.push((lo, mid.clone()));
                stack.push((mid, hi));
            }
        }
    }
    out.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    Ok(out)
}

/// Whether the univariate polynomial symbol has a real fixed point, together
/// with the exact certificate for the roots of `phi(x) - x`.
pub fn has_fixed_point(phi: &Polynomial) -> Result<(bool, RootCertificate)> {
    if phi.dim() != 1 {
        return Err(Error::DimensionMismatch {
            expected: 1,
            got: phi.dim(),
        });
    }
    let shifted = phi.sub(&Polynomial::var(1, 0));
    if shifted.is_zero() {
        // phi is the identity: every point is fixed.
        return Ok((
            true,
            RootCertificate {
                polynomial: shifted,
                count: usize::MAX,
                isolating_intervals: Vec::new(),
            },
        ));
    }
    let count = count_real_roots(&shifted)?;
    let intervals = if count > 0 {
        isolate_roots(&shifted)?
    } else {
        Vec::new()
    };
    let has = count > 0;
    if !has {
        // A fixed-point-free polynomial of degree >= 2 must have even degree:
        // odd-degree phi(x) - x is surjective.
        if let Some(d) = phi.degree() {
            debug_assert!(d < 2 || d % 2 == 0);
        }
    }
    Ok((
        has,
        RootCertificate {
            polynomial: shifted,
            count,
            isolating_intervals: intervals,
        },
    ))
}

/// Whether `p(x) > 0` for every real `x`: no real roots and positive value at
/// a sample point.
pub fn is_positive_on_reals(p: &Polynomial) -> Result<bool> {
    let d = dense(p)?;
    if d.is_empty() {
        return Err(Error::ZeroPolynomial);
    }
    if count_real_roots(p)? > 0 {
        return Ok(false);
    }
    Ok(p.eval(&[Rat::zero()]) > Rat::zero())
}
