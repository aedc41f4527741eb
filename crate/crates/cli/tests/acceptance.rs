//! Acceptance suite. Each test covers one numbered criterion et prints a
//! single pass line; tolerances are pinned in the assertions.
//!
//!  1. chain-rule expansion equals repeated differentiation, exactly
//!  2. the weighted expansion identity holds, exactly
//!  3. Bell polynomial identities and row sums
//!  4. the worked-example corpus reproduces every expected verdict
//!  5. numeric growth tags agree with the exact ones, low unknown rate
//!  6. the iterated-exponential domination inequality holds on the grid
//!  7. power boundedness over degree >= 2 symbols is weight-independent
//!  8. classify reports are byte-identical across runs

use rand::rngs::StdRng;
use rand::{RngExt, SeedableRng};
use std::process::Command;
use std::time::Instant;

use wcop_cli::checks::{check_exp_inequality, CheckInputs};
use wcop_cli::corpus::{builtin_corpus, run_corpus};
use wcop_core::classifier::{classify_power_bounded, SymbolPair, Verdict};
use wcop_core::expr::{compose, differentiate_multi, Expr};
use wcop_core::faadibruno::{assemble_f_capped, bell, fdb_derivative};
use wcop_core::growth::{numeric_sup, poly_sup_finite, GrowthTag};
use wcop_core::rational::{rat, rat_int, Rat};
use wcop_core::rootcheck::has_fixed_point;
use num_traits::{One, Zero};
use wcop_core::{
    as_polynomial, ClassifierConfig, GridConfig, MultiIndex, Polynomial,
};

fn random_poly(rng: &mut StdRng, dim: usize, max_deg: usize, nonzero: bool) -> Polynomial {
    loop {
        let mut p = Polynomial::zero(dim);
        for m in MultiIndex::all_up_to_order(dim, max_deg) {
            if rng.random_bool(0.6) {
                continue;
            }
            let c = rat_int(rng.random_range(-3i64..=3));
            p = p.add(&Polynomial::monomial(m.clone(), c));
        }
        if !nonzero || !p.is_zero() {
            return p;
        }
    }
}

#[test]
fn criterion_1_chain_rule_expansion_is_exact() {
    let start = Instant::now();
    let mut rng = StdRng::seed_from_u64(1001);
    let mut checked = 0usize;
    while checked < 100 {
        let dim = if checked.is_multiple_of(2) { 1 } else { 2 };
        let f = random_poly(&mut rng, dim, 4, false);
        let phi: Vec<Polynomial> = (0..dim)
            .map(|_| random_poly(&mut rng, dim, 4, false))
            .collect();
        let f_expr = Expr::from_polynomial(&f);
        let phi_expr: Vec<Expr> = phi.iter().map(Expr::from_polynomial).collect();
        for beta in MultiIndex::all_up_to_order(dim, 3) {
            let fast = fdb_derivative(&f_expr, &phi_expr, &beta).unwrap();
            let slow =
                differentiate_multi(&compose(&f_expr, &phi_expr).unwrap(), &beta);
            assert_eq!(
                as_polynomial(&fast, dim).unwrap(),
                as_polynomial(&slow, dim).unwrap(),
                "f={f}, beta={beta}"
            );
        }
        checked += 1;
    }
    let elapsed = start.elapsed();
    assert!(
        elapsed.as_secs() < 30,
        "runtime target exceeded: {elapsed:?}"
    );
    println!(
        "PASS criterion 1: chain-rule expansion exact on {checked} random pairs ({:.2?})",
        elapsed
    );
}

#[test]
fn criterion_2_weighted_expansion_identity_is_exact() {
    let mut rng = StdRng::seed_from_u64(1002);
    let mut checked = 0usize;
    while checked < 50 {
        let dim = if checked.is_multiple_of(2) { 1 } else { 2 };
        let psi = random_poly(&mut rng, dim, 3, false);
        let f = random_poly(&mut rng, dim, 3, false);
        let phi: Vec<Polynomial> = (0..dim)
            .map(|_| random_poly(&mut rng, dim, 3, false))
            .collect();
        let psi_e = Expr::from_polynomial(&psi);
        let f_e = Expr::from_polynomial(&f);
        let phi_e: Vec<Expr> = phi.iter().map(Expr::from_polynomial).collect();
        let composed = Expr::product(vec![
            psi_e.clone(),
            compose(&f_e, &phi_e).unwrap(),
        ]);
        for alpha in MultiIndex::all_up_to_order(dim, 3) {
            // Right side: sum over orders of f-derivatives at phi times the
            // assembled coefficient functions.
            let mut terms = Vec::new();
            for lambda in MultiIndex::all_up_to_order(dim, alpha.order()) {
                let f_lambda = differentiate_multi(&f_e, &lambda);
                if f_lambda.is_zero() {
                    continue;
                }
                let f_at = compose(&f_lambda, &phi_e).unwrap();
                let coef = assemble_f_capped(&psi_e, &phi_e, &alpha, &lambda, 6).unwrap();
                terms.push(Expr::product(vec![f_at, coef]));
            }
            let rhs = Expr::sum(terms);
            let lhs = differentiate_multi(&composed, &alpha);
            assert_eq!(
                as_polynomial(&lhs, dim).unwrap(),
                as_polynomial(&rhs, dim).unwrap(),
                "psi={psi}, f={f}, alpha={alpha}"
            );
        }
        checked += 1;
    }
    println!("PASS criterion 2: weighted expansion identity exact on {checked} random triples");
}

#[test]
fn criterion_3_bell_identities() {
    for beta in 1..=5usize {
        assert_eq!(
            bell(beta, 1).unwrap().poly,
            Polynomial::var(beta, beta - 1),
            "first-column identity at beta={beta}"
        );
        assert_eq!(
            bell(beta, beta).unwrap().poly,
            Polynomial::monomial(MultiIndex::unit(1, 0).scale(beta), Rat::one()),
            "diagonal identity at beta={beta}"
        );
    }
    let expect = [1i64, 1, 2, 5, 15, 52];
    for beta in 0..=5usize {
        let mut total = Rat::zero();
        for lambda in 0..=beta {
            let b = bell(beta, lambda).unwrap();
            total += b.poly.eval(&vec![Rat::one(); b.poly.dim()]);
        }
        assert_eq!(total, rat_int(expect[beta]), "row sum at beta={beta}");
    }
    println!("PASS criterion 3: Bell identities and row sums 1,1,2,5,15,52");
}

#[test]
fn criterion_4_worked_example_corpus() {
    let start = Instant::now();
    let outcome = run_corpus(&builtin_corpus(), &ClassifierConfig::default());
    assert!(outcome.internal_error.is_none(), "{:?}", outcome.internal_error);
    assert!(
        outcome.mismatches.is_empty(),
        "verdict mismatches: {:#?}",
        outcome.mismatches
    );
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 10, "runtime target exceeded: {elapsed:?}");
    println!(
        "PASS criterion 4: {} corpus entries reproduced exactly ({:.2?})",
        outcome.lines.len(),
        elapsed
    );
}

#[test]
fn criterion_5_exact_numeric_growth_agreement() {
    let mut rng = StdRng::seed_from_u64(1005);
    let grid = GridConfig::default();
    let exponents = [rat(1, 2), rat_int(1), rat_int(2), rat_int(3)];
    let mut unknowns = 0usize;
    let total = 60usize;
    for i in 0..total {
        let g = random_poly(&mut rng, 1, 6, true);
        let phi = loop {
            let p = random_poly(&mut rng, 1, 4, true);
            if p.degree().unwrap_or(0) >= 1 {
                break p;
            }
        };
        let p = exponents[rng.random_range(0..exponents.len())].clone();
        let q = exponents[rng.random_range(0..exponents.len())].clone();
        let exact = poly_sup_finite(&g, &phi, &p, &q).tag;
        let numeric = numeric_sup(
            &Expr::from_polynomial(&g),
            &[Expr::from_polynomial(&phi)],
            &p,
            &q,
            &grid,
        )
        .tag;
        match numeric {
            GrowthTag::Unknown => unknowns += 1,
            tag => assert!(
                tag.agrees_with_exact(exact),
                "case {i}: g={g}, phi={phi}, p={p}, q={q}: numeric {tag} vs exact {exact}"
            ),
        }
    }
    let rate = unknowns as f64 / total as f64;
    assert!(rate < 0.2, "unknown rate {rate} exceeds 20%");
    println!(
        "PASS criterion 5: {total} growth instances, zero disagreements, unknown rate {:.1}%",
        rate * 100.0
    );
}

#[test]
fn criterion_6_exp_tower_domination() {
    for alpha in 0..=2usize {
        let inputs = CheckInputs {
            psi: None,
            psi_text: None,
            phi: vec![Expr::exp(Expr::var(0))],
            phi_text: "exp(x)".into(),
            dim: 1,
            alpha: MultiIndex::new(vec![alpha]),
            lambda: MultiIndex::zero(1),
            p: rat_int(1),
            q: None,
            n_range: (1, 8),
            xrange: (-20.0, 5.0),
            step: 0.25,
            cfg: ClassifierConfig::default(),
        };
        let doc = check_exp_inequality(&inputs).unwrap();
        assert!(
            doc.verdict.starts_with("holds on the grid"),
            "alpha={alpha}: {}",
            doc.verdict
        );
        let n_alpha: usize = doc
            .notes
            .iter()
            .find_map(|n| n.rsplit_once("= ").and_then(|(_, v)| v.parse().ok()))
            .expect("threshold power reported");
        assert!(n_alpha <= 8, "alpha={alpha}: threshold {n_alpha} beyond range");
        println!(
            "PASS criterion 6 (alpha={alpha}): domination holds for n >= {n_alpha} on [-20,5] step 1/4"
        );
    }
}

#[test]
fn criterion_7_weight_independence_over_higher_degree_symbols() {
    let cfg = ClassifierConfig::default();
    let mut rng = StdRng::seed_from_u64(1007);
    for phi_coeffs in [vec![1i64, 0, 1], vec![0, 0, 1], vec![3, 1, 0, 0, 1]] {
        let phi = Polynomial::from_dense(
            &phi_coeffs.iter().map(|&c| rat_int(c)).collect::<Vec<_>>(),
        );
        let (has_fixed, _) = has_fixed_point(&phi).unwrap();
        let expect = if has_fixed { Verdict::No } else { Verdict::Yes };
        let mut verdicts = Vec::new();
        for _ in 0..10 {
            let psi = random_poly(&mut rng, 1, 6, true);
            let sp = SymbolPair::new(
                Expr::from_polynomial(&psi),
                vec![Expr::from_polynomial(&phi)],
            );
            verdicts.push(classify_power_bounded(&sp, &cfg).unwrap().value);
        }
        assert!(
            verdicts.iter().all(|v| *v == expect),
            "phi={phi}: verdicts {verdicts:?}"
        );
        println!(
            "PASS criterion 7 (phi={phi}): identical verdict `{expect}` across 10 random weights"
        );
    }
}

#[test]
fn criterion_8_reports_are_byte_identical_across_runs() {
    let bin = env!("CARGO_BIN_EXE_wcop");
    let mut checked = 0usize;
    for entry in builtin_corpus() {
        let run = || {
            let out = Command::new(bin)
                .args([
                    "classify",
                    "--psi",
                    &entry.psi,
                    "--phi",
                    &entry.phi,
                    "--format",
                    "json",
                ])
                .output()
                .expect("binary runs");
            assert!(
                out.status.success(),
                "classify failed on corpus entry {}",
                entry.name
            );
            out.stdout
        };
        let first = run();
        let second = run();
        assert_eq!(first, second, "reports differ for entry {}", entry.name);
        checked += 1;
    }
    println!("PASS criterion 8: byte-identical reports across two runs on {checked} entries");
}
