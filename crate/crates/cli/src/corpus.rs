//! The built-in regression corpus: weight/symbol pairs with their expected
//! verdicts and, for every entry, the basis on which the expectation rests.
//! The runner fails when any verdict deviates or any entry is missing its
//! basis.

use serde::Deserialize;
use std::collections::BTreeMap;
use wcop_core::classifier::{full_report, ClassificationReport, SymbolPair};
use wcop_core::{parse_expr, ClassifierConfig, Error};

#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub name: String,
    pub psi: String,
    pub phi: String,
    pub dim: usize,
    pub expect: Vec<(String, String)>,
    pub basis: String,
}

#[derive(Debug, Deserialize)]
struct FileEntry {
    name: String,
    psi: String,
    phi: String,
    #[serde(default = "default_dim")]
    dim: usize,
    expect: BTreeMap<String, String>,
    #[serde(default)]
    basis: String,
}

fn default_dim() -> usize {
    1
}

fn entry(
    name: &str,
    psi: &str,
    phi: &str,
    expect: &[(&str, &str)],
    basis: &str,
) -> CorpusEntry {
    CorpusEntry {
        name: name.to_string(),
        psi: psi.to_string(),
        phi: phi.to_string(),
        dim: 1,
        expect: expect
            .iter()
            .map(|(k, v)| (k.to_string(), v.to_string()))
            .collect(),
        basis: basis.to_string(),
    }
}

/// Every worked example the classifier is expected to reproduce verbatim.
pub fn builtin_corpus() -> Vec<CorpusEntry> {
    vec![
        entry(
            "parabola-unit-weight",
            "1",
            "x^2 + 1",
            &[
                ("acts_on_schwartz", "yes"),
                ("power_bounded", "yes"),
                ("iterates_to_zero", "yes"),
                ("uniformly_mean_ergodic", "yes"),
                ("cesaro_bounded", "yes"),
                ("topologizable", "yes"),
                ("m_topologizable", "yes"),
                ("weak_supercyclicity_possible", "no"),
            ],
            "x^2 + 1 has no real fixed point, so the whole orbit escapes and every \
             polynomial-growth weight is power bounded",
        ),
        entry(
            "parabola-degree-seven-weight",
            "5*x^7 - 3",
            "x^2 + 1",
            &[
                ("power_bounded", "yes"),
                ("iterates_to_zero", "yes"),
                ("uniformly_mean_ergodic", "yes"),
            ],
            "power boundedness over a fixed-point-free degree >= 2 symbol does not depend \
             on the polynomial weight",
        ),
        entry(
            "parabola-cubic-weight",
            "x^3",
            "x^2 + 1",
            &[("acts_on_schwartz", "yes"), ("power_bounded", "yes")],
            "nonconstant polynomial symbols admit every polynomial weight",
        ),
        entry(
            "constant-symbol",
            "1",
            "2",
            &[("acts_on_schwartz", "no")],
            "a constant symbol would force the weight to be rapidly decreasing",
        ),
        entry(
            "exp-pair",
            "exp(x)",
            "exp(x)",
            &[
                ("acts_on_schwartz", "yes"),
                ("power_bounded", "yes"),
                ("uniformly_mean_ergodic", "yes"),
                ("m_topologizable", "yes"),
            ],
            "the iterated exp weight is dominated by the first factor times a fixed power \
             of the top iterate",
        ),
        entry(
            "square-symbol",
            "1",
            "x^2",
            &[
                ("acts_on_schwartz", "yes"),
                ("power_bounded", "no"),
                ("iterates_to_zero", "no"),
                ("uniformly_mean_ergodic", "no"),
                ("cesaro_bounded", "no"),
                ("topologizable", "yes"),
                ("weak_supercyclicity_possible", "no"),
            ],
            "x^2 fixes 0 and 1; iterate derivatives grow geometrically at a fixed point \
             while the iterates stand still",
        ),
        entry(
            "halving-symbol",
            "1/2",
            "1/2*x",
            &[("power_bounded", "no")],
            "a contraction pumps the weight up along the backward orbit faster than any \
             fixed power of the iterates",
        ),
        entry(
            "halving-symbol-cubic-weight",
            "x^3",
            "1/2*x",
            &[("power_bounded", "no")],
            "no nonzero polynomial weight makes a proper contraction power bounded",
        ),
        entry(
            "translation-composition",
            "1",
            "x + 1",
            &[
                ("topologizable", "yes"),
                ("m_topologizable", "yes"),
                ("power_bounded", "no"),
            ],
            "the shifted station (1+|x|)/(1+|x+n|) grows like n, which per-power scaling \
             absorbs but a uniform bound cannot",
        ),
        entry(
            "translation-half-weight",
            "1/2",
            "x + 1",
            &[
                ("power_bounded", "yes"),
                ("iterates_to_zero", "yes"),
                ("uniformly_mean_ergodic", "yes"),
            ],
            "the factor (1/2)^n beats the linear growth of the shifted station",
        ),
        entry(
            "translation-unit-weight",
            "1",
            "x + 1",
            &[("power_bounded", "no")],
            "translations with a unimodular constant weight are not power bounded",
        ),
        entry(
            "translation-double-weight",
            "2",
            "x + 1",
            &[("power_bounded", "no")],
            "the factor 2^n dominates every fixed power of the shifted station",
        ),
        entry(
            "affine-quadratic-weight",
            "x^2",
            "x + 1",
            &[("topologizable", "no"), ("m_topologizable", "no")],
            "the weight product gains degree 2n while an affine iterate stays affine",
        ),
        entry(
            "affine-shifted-quadratic-weight",
            "x^2 - 5",
            "2*x + 1",
            &[("topologizable", "no")],
            "nonconstant polynomial weights defeat topologizability over affine symbols",
        ),
        entry(
            "root-symbol-half-weight",
            "1/2",
            "sqrt(1 + x^2)",
            &[("power_bounded", "yes")],
            "over sqrt(1+x^2), constant weights of modulus at most one are power bounded",
        ),
        entry(
            "root-symbol-unit-weight",
            "1",
            "sqrt(1 + x^2)",
            &[("power_bounded", "yes")],
            "the unweighted root composition is power bounded and modulus one adds nothing",
        ),
        entry(
            "root-symbol-double-weight",
            "2",
            "sqrt(1 + x^2)",
            &[("power_bounded", "no")],
            "2^n outgrows every fixed power of sqrt(n + x^2)",
        ),
        entry(
            "root-symbol-linear-weight",
            "x",
            "sqrt(1 + x^2)",
            &[
                ("power_bounded", "no"),
                ("topologizable", "no"),
                ("m_topologizable", "no"),
            ],
            "after q+1 steps the weight product has degree q+1 against denominator degree q",
        ),
        entry(
            "supercyclicity-square",
            "1",
            "x^2",
            &[("weak_supercyclicity_possible", "no")],
            "an even-degree symbol identifies two points, trapping the range in a \
             one-codimensional kernel",
        ),
        entry(
            "supercyclicity-parabola",
            "1",
            "x^2 + 1",
            &[("weak_supercyclicity_possible", "no")],
            "weak supercyclicity forces the symbol to be a nondegenerate translation",
        ),
        entry(
            "supercyclicity-cubic",
            "1",
            "x^3 - x",
            &[("weak_supercyclicity_possible", "no")],
            "an odd symbol with several fixed points leaves point evaluations invariant",
        ),
        entry(
            "supercyclicity-affine",
            "1",
            "2*x + 1",
            &[("weak_supercyclicity_possible", "no")],
            "a non-unit slope gives the adjoint two distinct eigenvalues",
        ),
        entry(
            "supercyclicity-translation-zero-free",
            "1 + x^2",
            "x + 1",
            &[("weak_supercyclicity_possible", "unknown")],
            "translations with zero-free weights are not excluded by the necessary \
             conditions",
        ),
        entry(
            "supercyclicity-weight-with-zero",
            "x",
            "x + 1",
            &[("weak_supercyclicity_possible", "no")],
            "a weight vanishing at a point traps the range in the kernel of that point \
             evaluation",
        ),
        entry(
            "quartic-no-fixed-point",
            "x",
            "x^4 + x + 3",
            &[("power_bounded", "yes")],
            "x^4 + 3 has no real root, so the symbol has no fixed point",
        ),
        entry(
            "reflection-half-weight",
            "1/2",
            "-x + 3",
            &[("power_bounded", "yes")],
            "the squared operator multiplies by 1/4, whose powers are bounded",
        ),
        entry(
            "reflection-triple-weight",
            "3",
            "-x",
            &[("power_bounded", "no")],
            "the squared operator multiplies by 9, whose powers are unbounded",
        ),
        entry(
            "identity-double-weight",
            "2",
            "x",
            &[("power_bounded", "no"), ("iterates_to_zero", "no")],
            "powers of the scalar 2 exceed every uniform bound",
        ),
        entry(
            "identity-half-weight",
            "1/2",
            "x",
            &[("power_bounded", "yes"), ("iterates_to_zero", "yes")],
            "powers of the scalar 1/2 shrink to zero on every seminorm",
        ),
        entry(
            "identity-symbol",
            "1",
            "x",
            &[("power_bounded", "yes"), ("iterates_to_zero", "no")],
            "the identity is power bounded and its own limit, which is not zero",
        ),
        entry(
            "iterates-to-zero-shifted-square",
            "x",
            "x^2 + 2",
            &[("iterates_to_zero", "yes")],
            "fixed-point freeness gives convergence to zero for every polynomial weight",
        ),
    ]
}

pub fn load_corpus_file(path: &str) -> Result<Vec<CorpusEntry>, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read {path}: {e}"))?;
    let entries: Vec<FileEntry> =
        serde_json::from_str(&text).map_err(|e| format!("cannot parse {path}: {e}"))?;
    if entries.is_empty() {
        return Err(format!("corpus file {path} contains no entries"));
    }
    Ok(entries
        .into_iter()
        .map(|e| CorpusEntry {
            name: e.name,
            psi: e.psi,
            phi: e.phi,
            dim: e.dim,
            expect: e.expect.into_iter().collect(),
            basis: e.basis,
        })
        .collect())
}

fn verdict_by_key(report: &ClassificationReport, key: &str) -> Option<String> {
    let pv = match key {
        "acts_on_schwartz" => &report.acts_on_schwartz,
        "power_bounded" => &report.power_bounded,
        "topologizable" => &report.topologizable,
        "m_topologizable" => &report.m_topologizable,
        "iterates_to_zero" => &report.iterates_to_zero,
        "uniformly_mean_ergodic" => &report.uniformly_mean_ergodic,
        "cesaro_bounded" => &report.cesaro_bounded,
        "weak_supercyclicity_possible" => &report.weak_supercyclicity_possible,
        "universal_schwartz_weights" => &report.universal_schwartz_weights,
        _ => return None,
    };
    let _ = &pv.rationale;
    Some(pv.value.to_string())
}

pub struct CorpusOutcome {
    pub lines: Vec<String>,
    pub mismatches: Vec<String>,
    pub internal_error: Option<String>,
}

pub fn run_corpus(entries: &[CorpusEntry], cfg: &ClassifierConfig) -> CorpusOutcome {
    let mut lines = Vec::new();
    let mut mismatches = Vec::new();
    let mut internal_error = None;
    for e in entries {
        if e.basis.trim().is_empty() {
            mismatches.push(format!("{}: entry lacks a basis note", e.name));
            continue;
        }
        let parsed = (
            parse_expr(&e.psi, e.dim),
            e.phi
                .split(',')
                .map(|t| parse_expr(t, e.dim))
                .collect::<Result<Vec<_>, _>>(),
        );
        let (psi, phi) = match parsed {
            (Ok(psi), Ok(phi)) => (psi, phi),
            _ => {
                mismatches.push(format!("{}: inputs failed to parse", e.name));
                continue;
            }
        };
        let report = match full_report(&SymbolPair::new(psi, phi), cfg) {
            Ok(r) => r,
            Err(Error::InternalInconsistency(msg)) => {
                internal_error = Some(format!("{}: {msg}", e.name));
                break;
            }
            Err(err) => {
                mismatches.push(format!("{}: classification failed: {err}", e.name));
                continue;
            }
        };
        let mut entry_ok = true;
        for (key, expected) in &e.expect {
            match verdict_by_key(&report, key) {
                Some(actual) if &actual == expected => {}
                Some(actual) => {
                    entry_ok = false;
                    mismatches.push(format!(
                        "{}: {key} expected `{expected}`, got `{actual}`",
                        e.name
                    ));
                }
                None => {
                    entry_ok = false;
                    mismatches.push(format!("{}: unknown property `{key}`", e.name));
                }
            }
        }
        lines.push(format!(
            "{:<44} {}",
            e.name,
            if entry_ok { "ok" } else { "MISMATCH" }
        ));
    }
    CorpusOutcome {
        lines,
        mismatches,
        internal_error,
    }
}
