//! Cross-module invariants: parser round trips, derivative commutation,
//! log-space evaluation laws, root counting against constructed
//! factorizations, and the classifier's implication lattice on random
//! polynomial pairs.

use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{RngExt, SeedableRng};

use wcop_core::classifier::{classify_power_bounded, full_report, SymbolPair, Verdict};
use wcop_core::expr::{differentiate, eval_logreal, Expr};
use wcop_core::rational::{rat, rat_int, rat_to_f64, Rat};
use wcop_core::rootcheck::{count_real_roots, has_fixed_point};
use wcop_core::{as_polynomial, parse_expr, ClassifierConfig, MultiIndex, Polynomial};

fn upoly(coeffs: &[i64]) -> Polynomial {
    Polynomial::from_dense(&coeffs.iter().map(|&c| rat_int(c)).collect::<Vec<_>>())
}

fn coeff_strategy() -> impl Strategy<Value = Rat> {
    (-5i64..=5, 1i64..=3).prop_map(|(n, d)| rat(n, d))
}

fn upoly_strategy(max_deg: usize) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(coeff_strategy(), 1..=max_deg + 1)
        .prop_map(|coeffs| Polynomial::from_dense(&coeffs))
}

fn poly2_strategy(max_deg: usize) -> impl Strategy<Value = Polynomial> {
    let monomials = MultiIndex::all_up_to_order(2, max_deg);
    prop::collection::vec(coeff_strategy(), monomials.len()).prop_map(move |coeffs| {
        let mut p = Polynomial::zero(2);
        for (m, c) in monomials.iter().zip(coeffs) {
            p = p.add(&Polynomial::monomial(m.clone(), c));
        }
        p
    })
}

proptest! {
    #[test]
    fn parse_print_round_trip_for_polynomials(p in upoly_strategy(6)) {
        let text = p.to_string();
        let once = parse_expr(&text, 1).unwrap();
        let again = parse_expr(&once.to_string(), 1).unwrap();
        prop_assert_eq!(&once, &again);
        // And the parsed value is the original polynomial.
        prop_assert_eq!(as_polynomial(&once, 1).unwrap(), p);
    }

    #[test]
    fn expr_derivative_matches_coefficient_derivative(p in poly2_strategy(6), axis in 0usize..2) {
        let e = Expr::from_polynomial(&p);
        let de = differentiate(&e, axis);
        prop_assert_eq!(as_polynomial(&de, 2).unwrap(), p.derivative(axis));
    }

    #[test]
    fn mixed_partials_commute(p in poly2_strategy(5)) {
        let e = Expr::from_polynomial(&p);
        let dxy = differentiate(&differentiate(&e, 0), 1);
        let dyx = differentiate(&differentiate(&e, 1), 0);
        prop_assert_eq!(
            as_polynomial(&dxy, 2).unwrap(),
            as_polynomial(&dyx, 2).unwrap()
        );
    }

    #[test]
    fn product_evaluation_is_log_additive(
        ps in prop::collection::vec(upoly_strategy(4), 1..5),
        x in -50.0f64..50.0,
    ) {
        let factors: Vec<Expr> = ps.iter().map(Expr::from_polynomial).collect();
        let node_budget: usize = factors.iter().map(Expr::node_count).sum();
        let product = Expr::Product(factors.clone());
        let whole = eval_logreal(&product, &[x]);
        let mut sign = 1i8;
        let mut ln_sum = 0.0f64;
        for f in &factors {
            let v = eval_logreal(f, &[x]);
            sign *= v.sign();
            ln_sum += v.ln_abs();
        }
        if sign == 0 {
            prop_assert_eq!(whole.sign(), 0);
        } else {
            prop_assert_eq!(whole.sign(), sign);
            prop_assert!(
                (whole.ln_abs() - ln_sum).abs() <= 1e-12 * node_budget as f64 * ln_sum.abs().max(1.0)
            );
        }
    }
}

#[test]
fn mixed_partials_commute_for_transcendental_corpus() {
    // Numeric comparison at sample points for the non-polynomial grammar.
    let corpus = [
        parse_expr("exp(x1*x2)", 2).unwrap(),
        parse_expr("exp(x1 + x2^2)", 2).unwrap(),
        parse_expr("x1*exp(x2) + x2^3", 2).unwrap(),
    ];
    for e in &corpus {
        let dxy = differentiate(&differentiate(e, 0), 1);
        let dyx = differentiate(&differentiate(e, 1), 0);
        for &x in &[-1.5f64, 0.0, 0.7] {
            for &y in &[-0.8f64, 0.3, 2.0] {
                let a = eval_logreal(&dxy, &[x, y]);
                let b = eval_logreal(&dyx, &[x, y]);
                assert_eq!(a.sign(), b.sign(), "sign mismatch for {e} at ({x},{y})");
                let (la, lb) = (a.ln_abs(), b.ln_abs());
                if la.is_finite() || lb.is_finite() {
                    assert!(
                        (la - lb).abs() < 1e-9 * la.abs().max(lb.abs()).max(1.0),
                        "{e} at ({x},{y}): {la} vs {lb}"
                    );
                }
            }
        }
    }
}

#[test]
fn sturm_counts_match_constructed_factorizations() {
    let mut rng = StdRng::seed_from_u64(0x5715);
    for _ in 0..200 {
        let n_factors = rng.random_range(1..=6);
        let mut poly = upoly(&[1]);
        let mut roots: Vec<Rat> = Vec::new();
        for _ in 0..n_factors {
            if rng.random_bool(0.5) {
                // Linear factor x - r.
                let r = rat(rng.random_range(-5i64..=5), rng.random_range(1i64..=2));
                poly = poly.mul(&Polynomial::from_dense(&[-r.clone(), rat_int(1)]));
                if !roots.contains(&r) {
                    roots.push(r);
                }
            } else {
                // Irreducible quadratic (x - a)^2 + b^2 with b != 0.
                let a = rat_int(rng.random_range(-3i64..=3));
                let b = rat_int(rng.random_range(1i64..=3));
                let quad = Polynomial::from_dense(&[
                    a.clone() * a.clone() + b.clone() * b,
                    rat_int(-2) * a,
                    rat_int(1),
                ]);
                poly = poly.mul(&quad);
            }
        }
        let count = count_real_roots(&poly).unwrap();
        assert_eq!(count, roots.len(), "polynomial {poly}");
    }
}

#[test]
fn fixed_point_detection_agrees_with_sign_scan() {
    let mut rng = StdRng::seed_from_u64(0xf1f2);
    for _ in 0..120 {
        let deg = rng.random_range(0..=4usize);
        let coeffs: Vec<Rat> = (0..=deg)
            .map(|_| rat_int(rng.random_range(-4i64..=4)))
            .collect();
        let phi = Polynomial::from_dense(&coeffs);
        if phi.sub(&Polynomial::var(1, 0)).is_zero() {
            continue;
        }
        let (has, _) = has_fixed_point(&phi).unwrap();
        // A sign change of phi(x) - x on the scan certifies a fixed point;
        // the scan may miss tangential ones, so only that direction holds.
        let mut prev: Option<f64> = None;
        let mut scan_found = false;
        let mut t = -1e6f64;
        while t <= 1e6 {
            let v = rat_to_f64(&phi.eval(&[Rat::from_float(t).unwrap()])) - t;
            if let Some(p) = prev {
                if p.signum() != v.signum() && p != 0.0 {
                    scan_found = true;
                    break;
                }
            }
            prev = Some(v);
            t += 9_777.0;
        }
        if scan_found {
            assert!(has, "scan found a crossing that the certificate denies: {phi}");
        }
    }
}

fn random_poly(rng: &mut StdRng, max_deg: usize, nonzero: bool) -> Polynomial {
    loop {
        let deg = rng.random_range(0..=max_deg);
        let coeffs: Vec<Rat> = (0..=deg)
            .map(|_| rat_int(rng.random_range(-4i64..=4)))
            .collect();
        let p = Polynomial::from_dense(&coeffs);
        if !nonzero || !p.is_zero() {
            return p;
        }
    }
}

#[test]
fn implication_lattice_on_random_polynomial_pairs() {
    let cfg = ClassifierConfig::default();
    let mut rng = StdRng::seed_from_u64(0xacce);
    for i in 0..200 {
        let psi = random_poly(&mut rng, 5, false);
        let phi = random_poly(&mut rng, 4, false);
        let sp = SymbolPair::new(
            Expr::from_polynomial(&psi),
            vec![Expr::from_polynomial(&phi)],
        );
        // full_report itself enforces the lattice and errors on violations.
        let r = full_report(&sp, &cfg).unwrap_or_else(|e| {
            panic!("case {i}: psi={psi}, phi={phi}: {e}");
        });
        // Exactness firewall: exact verdicts never rest on grid evidence.
        for (pv, name) in [
            (&r.acts_on_schwartz, "acts"),
            (&r.power_bounded, "pb"),
            (&r.topologizable, "top"),
            (&r.m_topologizable, "m-top"),
            (&r.iterates_to_zero, "it0"),
        ] {
            if pv.value.is_exact() {
                assert!(
                    pv.rationale.iter().all(|rr| !rr.rule.contains("evidence")),
                    "case {i} ({name}): exact verdict built on evidence: psi={psi}, phi={phi}"
                );
            }
        }
    }
}

#[test]
fn power_boundedness_depends_only_on_the_symbol_for_higher_degree() {
    let cfg = ClassifierConfig::default();
    let mut rng = StdRng::seed_from_u64(0x7e0a);
    for phi_coeffs in [
        vec![1i64, 0, 1],    // no fixed points
        vec![0, 0, 1],       // fixed points 0 and 1
        vec![3, 1, 0, 0, 1], // x^4 + x + 3, no fixed points
    ] {
        let phi = upoly(&phi_coeffs);
        let (has_fixed, _) = has_fixed_point(&phi).unwrap();
        let expect = if has_fixed { Verdict::No } else { Verdict::Yes };
        for _ in 0..10 {
            let psi = random_poly(&mut rng, 6, true);
            let sp = SymbolPair::new(
                Expr::from_polynomial(&psi),
                vec![Expr::from_polynomial(&phi)],
            );
            let v = classify_power_bounded(&sp, &cfg).unwrap();
            assert_eq!(v.value, expect, "psi={psi}, phi={phi}");
        }
    }
}

#[test]
fn translation_verdict_is_a_monotone_function_of_the_modulus() {
    let cfg = ClassifierConfig::default();
    let phi = parse_expr("x + 1", 1).unwrap();
    let cases = [
        (rat(1, 2), Verdict::Yes),
        (rat_int(1), Verdict::No),
        (rat_int(2), Verdict::No),
        (rat(-1, 2), Verdict::Yes),
        (rat(3, 2), Verdict::No),
    ];
    for (c, expect) in cases {
        let sp = SymbolPair::new(Expr::constant(c.clone()), vec![phi.clone()]);
        let v = classify_power_bounded(&sp, &cfg).unwrap();
        assert_eq!(v.value, expect, "c = {c}");
        // Never yes for both c and 1/c unless excluded by strictness.
        if !c.is_integer() || rat_to_f64(&c).abs() != 1.0 {
            let inv = Rat::from_integer(1.into()) / c.clone();
            let sp_inv = SymbolPair::new(Expr::constant(inv), vec![phi.clone()]);
            let v_inv = classify_power_bounded(&sp_inv, &cfg).unwrap();
            assert!(
                !(v.value == Verdict::Yes && v_inv.value == Verdict::Yes),
                "both {c} and its reciprocal classified power bounded"
            );
        }
    }
}
