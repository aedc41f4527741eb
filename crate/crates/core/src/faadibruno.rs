//! Combinatorics of higher-order chain rules: the index sets `p(beta,
//! lambda)` driving the multivariate formula, partial Bell polynomials for
//! the univariate fast path, and the assembly of the characteristic
//! coefficient functions `F[alpha, lambda]` of a weighted composition.

use crate::error::{Error, Result};
use crate::expr::{compose, differentiate_multi, Expr};
use crate::multiindex::MultiIndex;
use crate::poly::Polynomial;
use crate::rational::{factorial, Rat};
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

/// Orders above this are refused unless a caller raises the cap explicitly;
/// the index sets grow combinatorially.
pub const DEFAULT_ORDER_CAP: usize = 6;

/// One summand of a multivariate chain-rule expansion: `ks[j]` multiplies the
/// derivative of multi-order `ells[j]`. Inactive slots are padded with zeros
/// in front so that both sequences have length `|beta|`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IndexTuple {
    pub ks: Vec<MultiIndex>,
    pub ells: Vec<MultiIndex>,
}

impl IndexTuple {
    /// Active pairs, i.e. those with `|k| > 0`.
    pub fn active(&self) -> impl Iterator<Item = (&MultiIndex, &MultiIndex)> {
        self.ks
            .iter()
            .zip(self.ells.iter())
            .filter(|(k, _)| !k.is_zero())
    }

    /// `beta! * prod_j 1 / (k_j! (ell_j!)^{|k_j|})`.
    pub fn coefficient(&self, beta: &MultiIndex) -> Rat {
        let mut c = beta.factorial();
        for (k, ell) in self.active() {
            let mut den = k.factorial();
            let lf = ell.factorial();
            for _ in 0..k.order() {
                den *= lf.clone();
            }
            c /= den;
        }
        c
    }
}

type PKey = (MultiIndex, MultiIndex);

fn p_memo() -> &'static Mutex<HashMap<PKey, Arc<Vec<IndexTuple>>>> {
    static MEMO: OnceLock<Mutex<HashMap<PKey, Arc<Vec<IndexTuple>>>>> = OnceLock::new();
    MEMO.get_or_init(|| Mutex::new(HashMap::new()))
}

/// The index set `p(beta, lambda)` with the conventions `p(0,0) = {(0,0)}`,
/// `p(beta, 0) = {}` for `beta != 0`, and `p(0, lambda) = {}` for
/// `lambda != 0`. Results are memoized.
pub fn enumerate_p(beta: &MultiIndex, lambda: &MultiIndex) -> Result<Arc<Vec<IndexTuple>>> {
    enumerate_p_capped(beta, lambda, DEFAULT_ORDER_CAP)
}

pub fn enumerate_p_capped(
    beta: &MultiIndex,
    lambda: &MultiIndex,
    cap: usize,
) -> Result<Arc<Vec<IndexTuple>>> {
    if beta.dim() != lambda.dim() {
        return Err(Error::DimensionMismatch {
            expected: beta.dim(),
            got: lambda.dim(),
        });
    }
    if beta.order() > cap {
        return Err(Error::CapExceeded(format!(
            "|beta| = {} exceeds the order cap {}",
            beta.order(),
            cap
        )));
    }
    let key = (beta.clone(), lambda.clone());
    if let Some(hit) = p_memo().lock().unwrap().get(&key) {
        return Ok(hit.clone());
    }
    let tuples = enumerate_p_uncached(beta, lambda);
    debug_assert!(tuples.is_empty() || lambda.order() <= beta.order());
    let arc = Arc::new(tuples);
    p_memo().lock().unwrap().insert(key, arc.clone());
    Ok(arc)
}

fn enumerate_p_uncached(beta: &MultiIndex, lambda: &MultiIndex) -> Vec<IndexTuple> {
    let n = beta.order();
    if n == 0 {
        // p(0,0) is the singleton convention; p(0, lambda) is empty.
        return if lambda.is_zero() {
            vec![IndexTuple {
                ks: Vec::new(),
                ells: Vec::new(),
            }]
        } else {
            Vec::new()
        };
    }
    if lambda.is_zero() {
        return Vec::new();
    }
    let dim = beta.dim();
    let mut out = Vec::new();
    let mut chain: Vec<(MultiIndex, MultiIndex)> = Vec::new();
    recurse(beta.clone(), lambda.clone(), None, &mut chain, &mut out);
    // Pad every chain with leading zero pairs up to length |beta|.
    out.into_iter()
        .map(|chain| {
            let s = chain.len();
            let mut ks = vec![MultiIndex::zero(dim); n - s];
            let mut ells = vec![MultiIndex::zero(dim); n - s];
            for (k, ell) in chain {
                ks.push(k);
                ells.push(ell);
            }
            IndexTuple { ks, ells }
        })
        .collect()
}

/// Depth-first generation over strictly increasing derivative orders `ell`,
/// pruning by the remaining componentwise budgets.
fn recurse(
    rem_beta: MultiIndex,
    rem_lambda: MultiIndex,
    last_ell: Option<MultiIndex>,
    chain: &mut Vec<(MultiIndex, MultiIndex)>,
    out: &mut Vec<Vec<(MultiIndex, MultiIndex)>>,
) {
    if rem_beta.is_zero() && rem_lambda.is_zero() {
        out.push(chain.clone());
        return;
    }
    if rem_beta.is_zero() || rem_lambda.is_zero() {
        return;
    }
    // Candidate orders: nonzero, within the beta budget, strictly above the
    // last one used.
    for ell in rem_beta.below() {
        if ell.is_zero() {
            continue;
        }
        if let Some(prev) = &last_ell {
            if &ell <= prev {
                continue;
            }
        }
        // Candidate multiplicities: nonzero, within the lambda budget, with
        // |k| * ell within the beta budget.
        for k in rem_lambda.below() {
            if k.is_zero() {
                continue;
            }
            let spent = ell.scale(k.order());
            let Some(nb) = rem_beta.checked_sub(&spent) else {
                continue;
            };
            let nl = rem_lambda.checked_sub(&k).expect("k <= rem_lambda");
            chain.push((k, ell.clone()));
            recurse(nb, nl, Some(ell.clone()), chain, out);
            chain.pop();
        }
    }
}

/// Partial Bell polynomial in the variables `x_1 .. x_{beta-lambda+1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BellPoly {
    pub beta: usize,
    pub lambda: usize,
    pub poly: Polynomial,
}

fn bell_memo() -> &'static Mutex<HashMap<(usize, usize), BellPoly>> {
    static MEMO: OnceLock<Mutex<HashMap<(usize, usize), BellPoly>>> = OnceLock::new();
    MEMO.get_or_init(|| Mutex::new(HashMap::new()))
}

/// `B[beta, lambda]`: the sum of `beta! * prod_r (1/i_r!) (x_r/r!)^{i_r}` over
/// all `i_1 + ... + i_m = lambda`, `1*i_1 + 2*i_2 + ... + m*i_m = beta`, with
/// `m = beta - lambda + 1`. `B[0,0] = 1` and `B[beta, 0] = 0` for `beta >= 1`.
pub fn bell(beta: usize, lambda: usize) -> Result<BellPoly> {
    if lambda > beta {
        return Err(Error::InvalidRange(format!(
            "bell requires 0 <= lambda <= beta, got lambda = {lambda}, beta = {beta}"
        )));
    }
    if let Some(hit) = bell_memo().lock().unwrap().get(&(beta, lambda)) {
        return Ok(hit.clone());
    }
    let m = (beta - lambda + 1).max(1);
    let mut poly = Polynomial::zero(m);
    let mut exponents = vec![0usize; m];
    bell_terms(beta, 0, beta, lambda, &mut exponents, &mut poly);
    let result = BellPoly { beta, lambda, poly };
    bell_memo()
        .lock()
        .unwrap()
        .insert((beta, lambda), result.clone());
    Ok(result)
}

fn bell_terms(
    beta: usize,
    r: usize,
    rem_weight: usize,
    rem_count: usize,
    exponents: &mut Vec<usize>,
    poly: &mut Polynomial,
) {
    let m = exponents.len();
    if r == m {
        if rem_weight == 0 && rem_count == 0 {
            let mut coeff = factorial(beta);
            for (idx, &i) in exponents.iter().enumerate() {
                if i == 0 {
                    continue;
                }
                let mut den = factorial(i);
                let rf = factorial(idx + 1);
                for _ in 0..i {
                    den *= rf.clone();
                }
                coeff /= den;
            }
            let exp = MultiIndex::new(exponents.clone());
            let add = Polynomial::monomial(exp, coeff);
            *poly = poly.add(&add);
        }
        return;
    }
    let weight = r + 1;
    let max_i = rem_count.min(rem_weight / weight);
    for i in 0..=max_i {
        exponents[r] = i;
        bell_terms(beta, r + 1, rem_weight - weight * i, rem_count - i, exponents, poly);
        exponents[r] = 0;
    }
}

/// The coefficient function `F[alpha, lambda]` of a weighted composition
/// pair: the factor multiplying the `lambda`-th derivative of the composed
/// function in the expansion of `D^alpha (psi * (f o phi))`.
///
/// In one dimension this is assembled through Bell polynomials; the general
/// index-set path is kept for higher dimensions and for cross-validation.
pub fn assemble_f(
    psi: &Expr,
    phi: &[Expr],
    alpha: &MultiIndex,
    lambda: &MultiIndex,
) -> Result<Expr> {
    assemble_f_capped(psi, phi, alpha, lambda, DEFAULT_ORDER_CAP)
}

pub fn assemble_f_capped(
    psi: &Expr,
    phi: &[Expr],
    alpha: &MultiIndex,
    lambda: &MultiIndex,
    cap: usize,
) -> Result<Expr> {
    let d = phi.len();
    if alpha.dim() != d || lambda.dim() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            got: alpha.dim().max(lambda.dim()),
        });
    }
    if lambda.order() > alpha.order() {
        return Err(Error::InvalidRange(format!(
            "|lambda| = {} exceeds |alpha| = {}",
            lambda.order(),
            alpha.order()
        )));
    }
    if alpha.order() > cap {
        return Err(Error::CapExceeded(format!(
            "|alpha| = {} exceeds the order cap {}",
            alpha.order(),
            cap
        )));
    }
    let result = if d == 1 {
        assemble_f_bell(psi, &phi[0], alpha.entry(0), lambda.entry(0))?
    } else {
        assemble_f_general(psi, phi, alpha, lambda, cap)?
    };
    #[cfg(debug_assertions)]
    if d == 1 && alpha.order() <= 4 {
        use crate::expr::as_polynomial;
        let general = assemble_f_general(psi, phi, alpha, lambda, cap)?;
        if let (Some(a), Some(b)) = (as_polynomial(&result, 1), as_polynomial(&general, 1)) {
            debug_assert_eq!(a, b, "univariate and general assemblies disagree");
        }
    }
    Ok(result)
}

/// Univariate form: `sum_{b = lambda..alpha} C(alpha, b) psi^(alpha-b)
/// B[b, lambda](phi', ..., phi^(b - lambda + 1))`.
pub fn assemble_f_bell(psi: &Expr, phi: &Expr, alpha: usize, lambda: usize) -> Result<Expr> {
    let mut terms = Vec::new();
    for b in lambda..=alpha {
        let bp = if lambda == 0 {
            // B[0,0] = 1, B[b,0] = 0 for b >= 1.
            if b == 0 {
                Polynomial::one(1)
            } else {
                continue;
            }
        } else {
            bell(b, lambda)?.poly
        };
        if bp.is_zero() {
            continue;
        }
        let psi_deriv = differentiate_multi(psi, &MultiIndex::new(vec![alpha - b]));
        if psi_deriv.is_zero() {
            continue;
        }
        // Substitute the derivative chain phi', phi'', ... for the Bell
        // variables.
        let m = bp.dim();
        let mut chain = Vec::with_capacity(m);
        let mut current = differentiate_multi(phi, &MultiIndex::new(vec![1]));
        for _ in 0..m {
            chain.push(current.clone());
            current = differentiate_multi(&current, &MultiIndex::new(vec![1]));
        }
        let bell_expr = substitute_poly(&bp, &chain);
        terms.push(Expr::product(vec![
            Expr::constant(crate::rational::binomial(alpha, b)),
            psi_deriv,
            bell_expr,
        ]));
    }
    Ok(Expr::sum(terms))
}

/// Evaluate a polynomial with expressions substituted for its variables.
fn substitute_poly(p: &Polynomial, subs: &[Expr]) -> Expr {
    let mut terms = Vec::new();
    for (m, c) in p.terms() {
        let mut factors = vec![Expr::constant(c.clone())];
        for (axis, &e) in m.entries().iter().enumerate() {
            if e > 0 {
                factors.push(Expr::int_pow(subs[axis].clone(), e as u32));
            }
        }
        terms.push(Expr::product(factors));
    }
    Expr::sum(terms)
}

/// General index-set form, valid in every dimension.
pub fn assemble_f_general(
    psi: &Expr,
    phi: &[Expr],
    alpha: &MultiIndex,
    lambda: &MultiIndex,
    cap: usize,
) -> Result<Expr> {
    let d = phi.len();
    let mut deriv_cache: HashMap<MultiIndex, Vec<Expr>> = HashMap::new();
    let mut terms = Vec::new();
    for beta in alpha.below() {
        if lambda.order() > beta.order() {
            continue;
        }
        let tuples = enumerate_p_capped(&beta, lambda, cap)?;
        if tuples.is_empty() {
            continue;
        }
        let outer = alpha.binomial(&beta);
        let psi_deriv =
            differentiate_multi(psi, &alpha.checked_sub(&beta).expect("beta <= alpha"));
        if psi_deriv.is_zero() {
            continue;
        }
        let mut inner_terms = Vec::new();
        for t in tuples.iter() {
            let mut factors = vec![Expr::constant(t.coefficient(&beta))];
            for (k, ell) in t.active() {
                let derivs = deriv_cache.entry(ell.clone()).or_insert_with(|| {
                    phi.iter().map(|c| differentiate_multi(c, ell)).collect()
                });
                for i in 0..d {
                    let e = k.entry(i);
                    if e > 0 {
                        factors.push(Expr::int_pow(derivs[i].clone(), e as u32));
                    }
                }
            }
            inner_terms.push(Expr::product(factors));
        }
        terms.push(Expr::product(vec![
            Expr::constant(outer),
            psi_deriv,
            Expr::sum(inner_terms),
        ]));
    }
    Ok(Expr::sum(terms))
}

/// The `beta`-th partial derivative of `f o phi` computed through the index
/// sets rather than by repeated differentiation of the composite.
pub fn fdb_derivative(f: &Expr, phi: &[Expr], beta: &MultiIndex) -> Result<Expr> {
    fdb_derivative_capped(f, phi, beta, DEFAULT_ORDER_CAP)
}

pub fn fdb_derivative_capped(
    f: &Expr,
    phi: &[Expr],
    beta: &MultiIndex,
    cap: usize,
) -> Result<Expr> {
    let d = phi.len();
    if beta.dim() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            got: beta.dim(),
        });
    }
    if beta.is_zero() {
        return compose(f, phi);
    }
    if beta.order() > cap {
        return Err(Error::CapExceeded(format!(
            "|beta| = {} exceeds the order cap {}",
            beta.order(),
            cap
        )));
    }
    let mut deriv_cache: HashMap<MultiIndex, Vec<Expr>> = HashMap::new();
    let mut terms = Vec::new();
    for lambda in MultiIndex::all_up_to_order(d, beta.order()) {
        let tuples = enumerate_p_capped(beta, &lambda, cap)?;
        if tuples.is_empty() {
            continue;
        }
        let f_lambda = differentiate_multi(f, &lambda);
        if f_lambda.is_zero() {
            continue;
        }
        let f_at_phi = compose(&f_lambda, phi)?;
        let mut inner_terms = Vec::new();
        for t in tuples.iter() {
            let mut factors = vec![Expr::constant(t.coefficient(beta))];
            for (k, ell) in t.active() {
                let derivs = deriv_cache.entry(ell.clone()).or_insert_with(|| {
                    phi.iter().map(|c| differentiate_multi(c, ell)).collect()
                });
                for i in 0..d {
                    let e = k.entry(i);
                    if e > 0 {
                        factors.push(Expr::int_pow(derivs[i].clone(), e as u32));
                    }
                }
            }
            inner_terms.push(Expr::product(factors));
        }
        terms.push(Expr::product(vec![f_at_phi, Expr::sum(inner_terms)]));
    }
    Ok(Expr::sum(terms))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::as_polynomial;
    use crate::rational::rat_int;
    use num_traits::{One, Zero};

    fn mi(v: &[usize]) -> MultiIndex {
        MultiIndex::new(v.to_vec())
    }

    fn upoly(coeffs: &[i64]) -> Polynomial {
        Polynomial::from_dense(&coeffs.iter().map(|&c| rat_int(c)).collect::<Vec<_>>())
    }

    /// Exhaustive filter over all candidate pair sequences; the reference
    /// implementation the fast enumerator is checked against.
    fn brute_force_p(beta: &MultiIndex, lambda: &MultiIndex) -> Vec<IndexTuple> {
        let n = beta.order();
        if n == 0 {
            return if lambda.is_zero() {
                vec![IndexTuple {
                    ks: vec![],
                    ells: vec![],
                }]
            } else {
                vec![]
            };
        }
        let ell_candidates = beta.below();
        let k_candidates = lambda.below();
        let mut out = Vec::new();
        let mut seq: Vec<(MultiIndex, MultiIndex)> = Vec::new();
        fn rec(
            depth: usize,
            n: usize,
            ks: &[MultiIndex],
            ells: &[MultiIndex],
            seq: &mut Vec<(MultiIndex, MultiIndex)>,
            out: &mut Vec<Vec<(MultiIndex, MultiIndex)>>,
        ) {
            if depth == n {
                out.push(seq.clone());
                return;
            }
            for k in ks {
                for ell in ells {
                    seq.push((k.clone(), ell.clone()));
                    rec(depth + 1, n, ks, ells, seq, out);
                    seq.pop();
                }
            }
        }
        let mut all = Vec::new();
        rec(0, n, &k_candidates, &ell_candidates, &mut seq, &mut all);
        'next: for cand in all {
            // Zero prefix, then an active block with strictly increasing ells.
            let first_active = cand
                .iter()
                .position(|(k, _)| !k.is_zero())
                .unwrap_or(cand.len());
            for (k, ell) in &cand[..first_active] {
                if !k.is_zero() || !ell.is_zero() {
                    continue 'next;
                }
            }
            if first_active == cand.len() {
                continue; // no active pair cannot reach beta != 0
            }
            let active = &cand[first_active..];
            for (k, _) in active {
                if k.is_zero() {
                    continue 'next;
                }
            }
            for w in active.windows(2) {
                if w[0].1 >= w[1].1 {
                    continue 'next;
                }
            }
            if active[0].1.is_zero() {
                continue;
            }
            let mut sk = MultiIndex::zero(beta.dim());
            let mut sb = MultiIndex::zero(beta.dim());
            for (k, ell) in active {
                sk = sk.add(k);
                sb = sb.add(&ell.scale(k.order()));
            }
            if &sk != lambda || &sb != beta {
                continue;
            }
            out.push(IndexTuple {
                ks: cand.iter().map(|(k, _)| k.clone()).collect(),
                ells: cand.iter().map(|(_, ell)| ell.clone()).collect(),
            });
        }
        out.sort();
        out.dedup();
        out
    }

    #[test]
    fn conventions() {
        let zero = mi(&[0]);
        assert_eq!(enumerate_p(&zero, &zero).unwrap().len(), 1);
        assert!(enumerate_p(&mi(&[2]), &zero).unwrap().is_empty());
        assert!(enumerate_p(&zero, &mi(&[1])).unwrap().is_empty());
    }

    #[test]
    fn univariate_partition_three_as_one_plus_two() {
        let tuples = enumerate_p(&mi(&[3]), &mi(&[2])).unwrap();
        assert_eq!(tuples.len(), 1);
        let t = &tuples[0];
        assert_eq!(t.ks, vec![mi(&[0]), mi(&[1]), mi(&[1])]);
        assert_eq!(t.ells, vec![mi(&[0]), mi(&[1]), mi(&[2])]);
    }

    #[test]
    fn fast_enumerator_matches_brute_force() {
        for dim in 1..=2 {
            for beta in MultiIndex::all_up_to_order(dim, 3) {
                for lambda in MultiIndex::all_up_to_order(dim, 3) {
                    let mut fast = (*enumerate_p(&beta, &lambda).unwrap()).clone();
                    fast.sort();
                    let brute = brute_force_p(&beta, &lambda);
                    assert_eq!(fast, brute, "mismatch at beta={beta}, lambda={lambda}");
                }
            }
        }
    }

    #[test]
    fn emitted_tuples_satisfy_their_row_sums() {
        for beta in MultiIndex::all_up_to_order(2, 3) {
            for lambda in MultiIndex::all_up_to_order(2, 3) {
                for t in enumerate_p(&beta, &lambda).unwrap().iter() {
                    let mut sk = MultiIndex::zero(2);
                    let mut sb = MultiIndex::zero(2);
                    for (k, ell) in t.active() {
                        sk = sk.add(k);
                        sb = sb.add(&ell.scale(k.order()));
                    }
                    assert_eq!(sk, lambda);
                    assert_eq!(sb, beta);
                }
            }
        }
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(
            enumerate_p(&mi(&[7]), &mi(&[1])),
            Err(Error::CapExceeded(_))
        ));
    }

    #[test]
    fn memoized_results_are_identical_across_threads() {
        let handles: Vec<_> = (0..8)
            .map(|_| {
                std::thread::spawn(|| {
                    let tuples = enumerate_p(&mi(&[3, 1]), &mi(&[2, 0])).unwrap();
                    let b = bell(5, 3).unwrap();
                    ((*tuples).clone(), b.poly)
                })
            })
            .collect();
        let results: Vec<_> = handles.into_iter().map(|h| h.join().unwrap()).collect();
        for w in results.windows(2) {
            assert_eq!(w[0], w[1]);
        }
    }

    #[test]
    fn bell_edge_cases() {
        assert_eq!(bell(0, 0).unwrap().poly, Polynomial::one(1));
        assert!(bell(3, 0).unwrap().poly.is_zero());
        assert!(bell(2, 3).is_err());
    }

    #[test]
    fn bell_lambda_one_is_the_last_variable() {
        for beta in 1..=4 {
            let b = bell(beta, 1).unwrap();
            assert_eq!(b.poly, Polynomial::var(beta, beta - 1), "beta = {beta}");
        }
    }

    #[test]
    fn bell_4_2_by_brute_force() {
        // Oracle: integer solutions of i1 + i2 + i3 = 2, i1 + 2 i2 + 3 i3 = 4
        // are (0,2,0) and (1,0,1), giving 3 x2^2 + 4 x1 x3.
        let mut expect = Polynomial::zero(3);
        for i1 in 0..=2usize {
            for i2 in 0..=2usize {
                for i3 in 0..=2usize {
                    if i1 + i2 + i3 == 2 && i1 + 2 * i2 + 3 * i3 == 4 {
                        let mut coeff = factorial(4);
                        for (r, i) in [(1, i1), (2, i2), (3, i3)] {
                            let mut den = factorial(i);
                            for _ in 0..i {
                                den *= factorial(r);
                            }
                            coeff /= den;
                        }
                        expect =
                            expect.add(&Polynomial::monomial(mi(&[i1, i2, i3]), coeff));
                    }
                }
            }
        }
        assert_eq!(bell(4, 2).unwrap().poly, expect);
        // Frozen expected value: 3 x2^2 + 4 x1 x3.
        let frozen = Polynomial::monomial(mi(&[0, 2, 0]), rat_int(3))
            .add(&Polynomial::monomial(mi(&[1, 0, 1]), rat_int(4)));
        assert_eq!(bell(4, 2).unwrap().poly, frozen);
    }

    #[test]
    fn bell_diagonal_is_first_variable_power() {
        for beta in 1..=5 {
            let b = bell(beta, beta).unwrap();
            let expect = Polynomial::monomial(
                MultiIndex::unit(1, 0).scale(beta),
                Rat::one(),
            );
            assert_eq!(b.poly, expect, "beta = {beta}");
        }
    }

    #[test]
    fn bell_row_sums_count_set_partitions() {
        // Oracle: count set partitions of {1..n} by enumerating restricted
        // growth strings.
        fn partitions(n: usize) -> usize {
            fn rec(prefix: &mut Vec<usize>, n: usize) -> usize {
                if prefix.len() == n {
                    return 1;
                }
                let max = prefix.iter().copied().max().map_or(0, |m| m + 1);
                let mut total = 0;
                for v in 0..=max {
                    prefix.push(v);
                    total += rec(prefix, n);
                    prefix.pop();
                }
                total
            }
            rec(&mut Vec::new(), n)
        }
        let expect: Vec<usize> = (0..=5).map(partitions).collect();
        assert_eq!(expect, vec![1, 1, 2, 5, 15, 52]);
        for beta in 0..=5usize {
            let mut total = Rat::zero();
            for lambda in 0..=beta {
                let b = bell(beta, lambda).unwrap();
                let ones = vec![Rat::one(); b.poly.dim()];
                total += b.poly.eval(&ones);
            }
            assert_eq!(total, rat_int(expect[beta] as i64), "beta = {beta}");
        }
    }

    #[test]
    fn f_with_lambda_zero_is_the_weight_derivative() {
        let psi = Expr::from_polynomial(&upoly(&[0, 0, 0, 1])); // x^3
        let phi = vec![Expr::from_polynomial(&upoly(&[1, 0, 1]))];
        let f = assemble_f(&psi, &phi, &mi(&[2]), &mi(&[0])).unwrap();
        assert_eq!(as_polynomial(&f, 1).unwrap(), upoly(&[0, 6])); // (x^3)'' = 6x
    }

    #[test]
    fn f_over_identity_collapses_to_binomial_times_weight_derivative() {
        // In dimension 2 with phi = id, only the k = lambda slot survives.
        let psi = Expr::product(vec![
            Expr::int_pow(Expr::var(0), 2),
            Expr::var(1),
        ]); // x1^2 x2
        let phi = vec![Expr::var(0), Expr::var(1)];
        let alpha = mi(&[2, 1]);
        for lambda in alpha.below() {
            let f = assemble_f(&psi, &phi, &alpha, &lambda).unwrap();
            let expect_poly = {
                let der = alpha.checked_sub(&lambda).unwrap();
                let p = as_polynomial(&psi, 2).unwrap().derivative_multi(&der);
                p.scale(&alpha.binomial(&lambda))
            };
            assert_eq!(
                as_polynomial(&f, 2).unwrap(),
                expect_poly,
                "lambda = {lambda}"
            );
        }
    }

    #[test]
    fn f_for_unit_weight_square_symbol() {
        // psi = 1, alpha = lambda = 2, phi = x^2 + 1: F = (phi')^2 = 4x^2.
        let psi = Expr::one();
        let phi = vec![Expr::from_polynomial(&upoly(&[1, 0, 1]))];
        let f = assemble_f(&psi, &phi, &mi(&[2]), &mi(&[2])).unwrap();
        assert_eq!(as_polynomial(&f, 1).unwrap(), upoly(&[0, 0, 4]));
    }

    #[test]
    fn univariate_bell_assembly_matches_the_general_path_numerically() {
        // The polynomial cross-check cannot see transcendental data; compare
        // the two assemblies pointwise in log space instead.
        use crate::expr::eval_logreal;
        let cases = [
            (Expr::exp(Expr::var(0)), Expr::exp(Expr::var(0))),
            (
                Expr::var(0),
                Expr::sqrt_poly(upoly(&[1, 0, 1])).unwrap(),
            ),
            (
                Expr::exp(Expr::var(0)),
                Expr::from_polynomial(&upoly(&[1, 0, 1])),
            ),
        ];
        for (psi, phi) in &cases {
            for alpha in 0..=3usize {
                for lambda in 0..=alpha {
                    let via_bell = assemble_f_bell(psi, phi, alpha, lambda).unwrap();
                    let via_sets = assemble_f_general(
                        psi,
                        std::slice::from_ref(phi),
                        &mi(&[alpha]),
                        &mi(&[lambda]),
                        DEFAULT_ORDER_CAP,
                    )
                    .unwrap();
                    for &x in &[-1.5f64, -0.25, 0.0, 0.5, 2.0] {
                        let a = eval_logreal(&via_bell, &[x]);
                        let b = eval_logreal(&via_sets, &[x]);
                        assert_eq!(
                            a.sign(),
                            b.sign(),
                            "psi={psi}, phi={phi}, alpha={alpha}, lambda={lambda}, x={x}"
                        );
                        let (la, lb) = (a.ln_abs(), b.ln_abs());
                        if la.is_finite() || lb.is_finite() {
                            assert!(
                                (la - lb).abs() < 1e-9 * la.abs().max(lb.abs()).max(1.0),
                                "alpha={alpha}, lambda={lambda}, x={x}: {la} vs {lb}"
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn fdb_zero_order_is_plain_composition() {
        let f = Expr::from_polynomial(&upoly(&[0, 0, 1]));
        let phi = vec![Expr::from_polynomial(&upoly(&[1, 0, 1]))];
        let got = fdb_derivative(&f, &phi, &mi(&[0])).unwrap();
        // Oracle: x^2 o (x^2+1) by coefficient arithmetic.
        assert_eq!(
            as_polynomial(&got, 1).unwrap(),
            upoly(&[0, 0, 1]).compose_univariate(&upoly(&[1, 0, 1]))
        );
    }

    #[test]
    fn fdb_first_order_matches_the_chain_rule() {
        // f = x^2, phi = x^2+1: (f o phi)' = 2(x^2+1) * 2x = 4x^3 + 4x.
        let f = Expr::from_polynomial(&upoly(&[0, 0, 1]));
        let phi = vec![Expr::from_polynomial(&upoly(&[1, 0, 1]))];
        let got = fdb_derivative(&f, &phi, &mi(&[1])).unwrap();
        assert_eq!(as_polynomial(&got, 1).unwrap(), upoly(&[0, 4, 0, 4]));
    }

    #[test]
    fn fdb_matches_repeated_differentiation_in_two_dimensions() {
        use crate::expr::differentiate_multi;
        let f = Expr::sum(vec![
            Expr::product(vec![Expr::int_pow(Expr::var(0), 2), Expr::var(1)]),
            Expr::var(0),
        ]);
        let phi = vec![
            Expr::sum(vec![Expr::int_pow(Expr::var(1), 2), Expr::var(0)]),
            Expr::product(vec![Expr::var(0), Expr::var(1)]),
        ];
        for beta in MultiIndex::all_up_to_order(2, 3) {
            let fast = fdb_derivative(&f, &phi, &beta).unwrap();
            let slow = differentiate_multi(&compose(&f, &phi).unwrap(), &beta);
            assert_eq!(
                as_polynomial(&fast, 2).unwrap(),
                as_polynomial(&slow, 2).unwrap(),
                "beta = {beta}"
            );
        }
    }
}
