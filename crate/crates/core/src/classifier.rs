//! The decision engine: maps a weight/symbol pair to verdicts for acting on
//! the space, power boundedness, (m-)topologizability, convergence of the
//! iterates, uniform mean ergodicity, Cesaro boundedness, exclusion of weak
//! supercyclicity, and admissibility of every rapidly decreasing weight.
//!
//! Exact `Yes`/`No` verdicts come only from the rule tier (univariate
//! polynomial data plus the whitelisted `exp`/`exp` and `sqrt(1+x^2)`
//! pairs). Everything else is numeric evidence and is reported as
//! `LikelyYes`/`LikelyNo`/`Unknown`; the two tiers never mix inside a single
//! rationale chain.

use crate::error::{Error, Result};
use crate::expr::{as_polynomial, differentiate, differentiate_multi, Expr};
use crate::faadibruno::assemble_f_capped;
use crate::growth::{sup_profile, BandSample, GridConfig, GrowthTag};
use crate::iterates::IterateCache;
use crate::multiindex::MultiIndex;
use crate::poly::Polynomial;
use crate::rational::{rat_int, Rat};
use crate::rootcheck::{count_real_roots, has_fixed_point};
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Yes,
    No,
    LikelyYes,
    LikelyNo,
    Unknown,
}

impl Verdict {
    pub fn is_yes(self) -> bool {
        self == Verdict::Yes
    }

    pub fn is_no(self) -> bool {
        self == Verdict::No
    }

    pub fn is_exact(self) -> bool {
        matches!(self, Verdict::Yes | Verdict::No)
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Verdict::Yes => "yes",
            Verdict::No => "no",
            Verdict::LikelyYes => "likely-yes",
            Verdict::LikelyNo => "likely-no",
            Verdict::Unknown => "unknown",
        };
        write!(f, "{s}")
    }
}

/// One step of a rationale chain: a stable rule identifier plus the
/// mathematical statement the rule encodes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rationale {
    pub rule: String,
    pub note: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropertyVerdict {
    pub value: Verdict,
    pub rationale: Vec<Rationale>,
}

impl PropertyVerdict {
    fn new(value: Verdict, rule: &str, note: &str) -> Self {
        PropertyVerdict {
            value,
            rationale: vec![Rationale {
                rule: rule.to_string(),
                note: note.to_string(),
            }],
        }
    }

    fn with(mut self, rule: &str, note: &str) -> Self {
        self.rationale.push(Rationale {
            rule: rule.to_string(),
            note: note.to_string(),
        });
        self
    }
}

/// A weight/symbol pair. The weight may carry a complex scalar factor; only
/// its modulus enters any implemented criterion, so the factor is kept as a
/// real expression plus a flag recording that a nontrivial phase was present.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolPair {
    pub psi: Expr,
    pub phi: Vec<Expr>,
    pub phase_nontrivial: bool,
}

impl SymbolPair {
    pub fn new(psi: Expr, phi: Vec<Expr>) -> Self {
        assert!(!phi.is_empty(), "the symbol needs at least one component");
        SymbolPair {
            psi,
            phi,
            phase_nontrivial: false,
        }
    }

    pub fn dim(&self) -> usize {
        self.phi.len()
    }
}

#[derive(Debug, Clone)]
pub struct ClassifierConfig {
    pub alpha_max: usize,
    pub q_max: u32,
    pub n_max: usize,
    pub grid: GridConfig,
}

impl Default for ClassifierConfig {
    fn default() -> Self {
        ClassifierConfig {
            alpha_max: 4,
            q_max: 16,
            n_max: 8,
            grid: GridConfig::default(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct EvidenceSection {
    pub label: String,
    pub bands: Vec<BandSample>,
}

#[derive(Debug, Clone)]
pub struct ClassificationReport {
    pub acts_on_schwartz: PropertyVerdict,
    pub power_bounded: PropertyVerdict,
    pub topologizable: PropertyVerdict,
    pub m_topologizable: PropertyVerdict,
    pub iterates_to_zero: PropertyVerdict,
    pub uniformly_mean_ergodic: PropertyVerdict,
    pub cesaro_bounded: PropertyVerdict,
    pub weak_supercyclicity_possible: PropertyVerdict,
    pub universal_schwartz_weights: PropertyVerdict,
    pub evidence: Vec<EvidenceSection>,
}

/// Structural facts extracted once per pair.
struct Shape {
    d: usize,
    psi_is_zero: bool,
    psi_poly: Option<Polynomial>,
    psi_const: Option<Rat>,
    phi_poly: Option<Polynomial>,
    /// `(a, b)` when the univariate symbol is `a x + b`.
    affine: Option<(Rat, Rat)>,
    /// The canonical root symbol `sqrt(1 + x^2)`.
    sqrt_canonical: bool,
    exp_pair: bool,
}

impl Shape {
    fn of(sp: &SymbolPair) -> Shape {
        let d = sp.dim();
        let psi_poly = as_polynomial(&sp.psi, d);
        let psi_is_zero = psi_poly.as_ref().is_some_and(Polynomial::is_zero);
        let psi_const = psi_poly.as_ref().and_then(Polynomial::as_constant);
        let phi_poly = if d == 1 {
            as_polynomial(&sp.phi[0], 1)
        } else {
            None
        };
        let affine = phi_poly.as_ref().and_then(|p| {
            if p.degree().is_none_or(|deg| deg <= 1) {
                let b = p.coeff(&MultiIndex::zero(1));
                let a = p.coeff(&MultiIndex::unit(1, 0));
                Some((a, b))
            } else {
                None
            }
        });
        let sqrt_canonical = d == 1
            && matches!(&sp.phi[0], Expr::SqrtPoly(p)
                if *p == Polynomial::from_dense(&[Rat::one(), Rat::zero(), Rat::one()]));
        let exp_pair = d == 1
            && sp.psi == Expr::exp(Expr::var(0))
            && sp.phi[0] == Expr::exp(Expr::var(0));
        Shape {
            d,
            psi_is_zero,
            psi_poly,
            psi_const,
            phi_poly,
            affine,
            sqrt_canonical,
            exp_pair,
        }
    }

    fn psi_const_abs(&self) -> Option<Rat> {
        self.psi_const.as_ref().map(|c| c.abs())
    }
}

/// Whether the expression is exp-free; such expressions and all their
/// derivatives are built from polynomials and quotients by positive roots,
/// hence grow at most polynomially.
fn exp_free(e: &Expr) -> bool {
    !e.contains_exp()
}

/// `Some(true)` when `|e(x)| > 0` for every real `x`, decided exactly.
fn zero_free(e: &Expr, d: usize) -> Option<bool> {
    if let Some(p) = as_polynomial(e, d) {
        if p.is_zero() {
            return Some(false);
        }
        if d == 1 {
            return Some(count_real_roots(&p).ok()? == 0);
        }
        if let Some(c) = p.as_constant() {
            return Some(!c.is_zero());
        }
        return None;
    }
    match e {
        Expr::Exp(_) | Expr::SqrtPoly(_) => Some(true),
        Expr::Const(c) => Some(!c.is_zero()),
        Expr::IntPow(b, n) => {
            if *n == 0 {
                Some(true)
            } else {
                zero_free(b, d)
            }
        }
        Expr::Product(fs) => {
            let mut all = true;
            for f in fs {
                match zero_free(f, d) {
                    Some(true) => {}
                    Some(false) => return Some(false),
                    None => all = false,
                }
            }
            if all {
                Some(true)
            } else {
                None
            }
        }
        Expr::SqrtQuot { num, .. } => zero_free(num, d),
        _ => None,
    }
}

/// `Some(true)` when `e` is unbounded above on the real line.
fn unbounded_above(e: &Expr, d: usize) -> Option<bool> {
    if let Some(p) = as_polynomial(e, d) {
        if d != 1 {
            return None;
        }
        return match p.degree() {
            None | Some(0) => Some(false),
            Some(deg) => {
                if deg % 2 == 1 {
                    Some(true)
                } else {
                    Some(p.leading_coeff_univariate().unwrap() > Rat::zero())
                }
            }
        };
    }
    match e {
        Expr::Exp(arg) => unbounded_above(arg, d),
        Expr::SqrtPoly(p) => Some(p.degree().unwrap_or(0) >= 1),
        _ => None,
    }
}

/// `Some(true)` when `e` provably outgrows every polynomial: a product of a
/// nonzero polynomial part with an exponential of something unbounded above.
fn superpolynomial(e: &Expr, d: usize) -> Option<bool> {
    match e {
        Expr::Exp(arg) => unbounded_above(arg, d),
        Expr::Product(fs) => {
            let mut exp_part: Option<bool> = None;
            for f in fs {
                match f {
                    Expr::Exp(arg) => match unbounded_above(arg, d) {
                        Some(true) => exp_part = Some(true),
                        _ => return None,
                    },
                    other => {
                        // Remaining factors must be nonzero polynomials so
                        // they cannot cancel the exponential growth.
                        let p = as_polynomial(other, d)?;
                        if p.is_zero() {
                            return Some(false);
                        }
                    }
                }
            }
            exp_part
        }
        _ => None,
    }
}

/// Which exact power-boundedness rule fired; drives the iterate-convergence
/// rules afterwards.
#[derive(Debug, Clone, PartialEq)]
enum PbPath {
    ZeroWeight,
    ExpPair,
    Sqrt { const_abs: Option<Rat> },
    FixedPointFree,
    FixedPointed,
    Identity { const_abs: Option<Rat> },
    Translation { const_abs: Option<Rat> },
    Reflection { const_abs: Option<Rat> },
    AffineOther,
    Evidence,
}

pub fn classify_acts(sp: &SymbolPair, cfg: &ClassifierConfig) -> PropertyVerdict {
    classify_acts_impl(sp, cfg, &Shape::of(sp), &mut Vec::new())
}

fn classify_acts_impl(
    sp: &SymbolPair,
    cfg: &ClassifierConfig,
    shape: &Shape,
    evidence: &mut Vec<EvidenceSection>,
) -> PropertyVerdict {
    if shape.psi_is_zero {
        return PropertyVerdict::new(
            Verdict::Yes,
            "acts.zero-weight",
            "the zero weight yields the zero operator, which acts trivially",
        );
    }
    if shape.exp_pair {
        return PropertyVerdict::new(
            Verdict::Yes,
            "acts.exp-pair",
            "for equal weight and symbol the growth test reduces to comparing the weight \
             derivatives against powers of the symbol, which exp satisfies",
        );
    }
    if shape.d == 1 {
        if let Some(phi_p) = &shape.phi_poly {
            let deg = phi_p.degree();
            if deg.is_some_and(|d| d >= 1) {
                if shape.psi_poly.is_some() {
                    return PropertyVerdict::new(
                        Verdict::Yes,
                        "acts.poly-pair",
                        "a nonconstant univariate polynomial symbol admits exactly the weights \
                         of polynomial growth, and polynomial weights are such",
                    );
                }
                if exp_free(&sp.psi) {
                    return PropertyVerdict::new(
                        Verdict::Yes,
                        "acts.poly-symbol-tame-weight",
                        "every derivative of an exp-free weight is a polynomial over a positive \
                         root, so the weight has polynomial growth of all orders",
                    );
                }
            } else if shape.psi_poly.is_some() {
                return PropertyVerdict::new(
                    Verdict::No,
                    "acts.bounded-symbol",
                    "a bounded symbol forces every admissible weight to be rapidly decreasing, \
                     and a nonzero polynomial weight is not",
                );
            }
        }
        if shape.sqrt_canonical && shape.psi_poly.is_some() {
            return PropertyVerdict::new(
                Verdict::Yes,
                "acts.sqrt-symbol",
                "the symbol sqrt(1+x^2) composes power boundedly and polynomial weights pass \
                 its derivative growth test",
            );
        }
    }
    evidence_acts(sp, cfg, evidence)
}

fn q_ladder(q_max: u32) -> Vec<Rat> {
    let mut qs = Vec::new();
    let mut q = 1u32;
    while q < q_max {
        qs.push(rat_int(q as i64));
        q = q.saturating_mul(2);
    }
    qs.push(rat_int(q_max as i64));
    qs.dedup();
    qs
}

fn evidence_acts(
    sp: &SymbolPair,
    cfg: &ClassifierConfig,
    evidence: &mut Vec<EvidenceSection>,
) -> PropertyVerdict {
    let d = sp.dim();
    let ps = [rat_int(1), rat_int(2), rat_int(4)];
    let qs = q_ladder(cfg.q_max);
    let mut any_unknown = false;
    for alpha in MultiIndex::all_up_to_order(d, cfg.alpha_max) {
        for lambda in MultiIndex::all_up_to_order(d, alpha.order()) {
            let f = match assemble_f_capped(&sp.psi, &sp.phi, &alpha, &lambda, cfg.alpha_max) {
                Ok(f) => f,
                Err(_) => {
                    return PropertyVerdict::new(
                        Verdict::Unknown,
                        "acts.evidence-grid",
                        "coefficient assembly exceeded the configured caps",
                    )
                }
            };
            if f.is_zero() {
                continue;
            }
            let instance = [(f, sp.phi.clone())];
            let profile = sup_profile(&instance, &cfg.grid);
            for p in &ps {
                let mut settled = false;
                let mut last = None;
                for q in &qs {
                    let v = profile.verdict(p, q, &cfg.grid);
                    let tag = v.tag;
                    last = Some(v);
                    if tag == GrowthTag::LikelyFinite {
                        settled = true;
                        break;
                    }
                }
                if !settled {
                    let v = last.expect("at least one q probed");
                    let label = format!(
                        "acts: alpha={alpha} lambda={lambda} p={p} q<={} ratio bands",
                        cfg.q_max
                    );
                    if v.tag == GrowthTag::LikelyInfinite {
                        evidence.push(EvidenceSection {
                            label,
                            bands: v.evidence,
                        });
                        return PropertyVerdict::new(
                            Verdict::LikelyNo,
                            "acts.evidence-grid",
                            "a characteristic ratio keeps growing across the last dyadic bands \
                             even at the largest probed denominator exponent",
                        );
                    }
                    any_unknown = true;
                }
            }
        }
    }
    if any_unknown {
        PropertyVerdict::new(
            Verdict::Unknown,
            "acts.evidence-grid",
            "some characteristic ratios neither stabilized nor grew cleanly on the grid",
        )
    } else {
        PropertyVerdict::new(
            Verdict::LikelyYes,
            "acts.evidence-grid",
            "every probed characteristic ratio stabilized at some denominator exponent",
        )
    }
}

pub fn classify_power_bounded(sp: &SymbolPair, cfg: &ClassifierConfig) -> Result<PropertyVerdict> {
    let shape = Shape::of(sp);
    let mut ev = Vec::new();
    let acts = classify_acts_impl(sp, cfg, &shape, &mut ev);
    let (v, _) = classify_pb_impl(sp, cfg, &shape, &acts, &mut ev)?;
    Ok(v)
}

fn classify_pb_impl(
    sp: &SymbolPair,
    cfg: &ClassifierConfig,
    shape: &Shape,
    acts: &PropertyVerdict,
    evidence: &mut Vec<EvidenceSection>,
) -> Result<(PropertyVerdict, PbPath)> {
    if acts.value == Verdict::No {
        return Err(Error::PreconditionViolated(
            "power boundedness is undefined for an operator that does not act".into(),
        ));
    }
    if shape.psi_is_zero {
        return Ok((
            PropertyVerdict::new(
                Verdict::Yes,
                "pb.zero-weight",
                "the zero operator is power bounded",
            ),
            PbPath::ZeroWeight,
        ));
    }
    if shape.exp_pair {
        return Ok((
            PropertyVerdict::new(
                Verdict::Yes,
                "pb.exp-pair",
                "the iterated weight of the exp pair is dominated by the first factor times a \
                 fixed power of the top iterate, uniformly in the iterate index",
            ),
            PbPath::ExpPair,
        ));
    }
    if shape.d == 1 && shape.sqrt_canonical {
        if let Some(psi_p) = &shape.psi_poly {
            let path = PbPath::Sqrt {
                const_abs: shape.psi_const_abs(),
            };
            let verdict = match shape.psi_const_abs() {
                Some(c) if c <= Rat::one() => PropertyVerdict::new(
                    Verdict::Yes,
                    "pb.sqrt-symbol",
                    "over sqrt(1+x^2), power boundedness holds exactly for constant weights of \
                     modulus at most one",
                ),
                Some(_) => PropertyVerdict::new(
                    Verdict::No,
                    "pb.sqrt-symbol",
                    "a constant weight of modulus above one outgrows every fixed power of the \
                     slowly growing iterates",
                ),
                None => {
                    debug_assert!(psi_p.degree().is_some_and(|deg| deg >= 1));
                    PropertyVerdict::new(
                        Verdict::No,
                        "pb.sqrt-symbol",
                        "a nonconstant polynomial weight accumulates degree n deg(psi) after n \
                         steps while the iterates only add degree one per exponent",
                    )
                }
            };
            let verdict = note_phase(verdict, sp, shape);
            return Ok((verdict, path));
        }
    }
    if shape.d == 1 && shape.psi_poly.is_some() {
        if let Some(phi_p) = shape.phi_poly.clone() {
            match phi_p.degree() {
                Some(deg) if deg >= 2 => {
                    let (has_fixed, cert) = has_fixed_point(&phi_p)?;
                    let path = if has_fixed {
                        PbPath::FixedPointed
                    } else {
                        PbPath::FixedPointFree
                    };
                    let verdict = if has_fixed {
                        PropertyVerdict::new(
                            Verdict::No,
                            "pb.fixed-point-dichotomy",
                            &format!(
                                "the symbol has {} real fixed point(s); derivatives of the \
                                 iterates blow up geometrically there while the iterates stay \
                                 put, and this defeats every weight of small decay",
                                cert.count
                            ),
                        )
                    } else {
                        PropertyVerdict::new(
                            Verdict::Yes,
                            "pb.fixed-point-dichotomy",
                            "a degree >= 2 polynomial symbol without real fixed points escapes \
                             uniformly, and then every polynomial-growth weight gives a power \
                             bounded operator",
                        )
                    };
                    return Ok((note_phase(verdict, sp, shape), path));
                }
                Some(1) => {
                    let (a, b) = shape.affine.clone().expect("degree one is affine");
                    let cabs = shape.psi_const_abs();
                    if a.is_one() && b.is_zero() {
                        let verdict = match &cabs {
                            Some(c) if *c <= Rat::one() => PropertyVerdict::new(
                                Verdict::Yes,
                                "pb.identity",
                                "multiplication by a constant of modulus at most one has \
                                 uniformly bounded powers",
                            ),
                            Some(_) => PropertyVerdict::new(
                                Verdict::No,
                                "pb.identity",
                                "powers of a constant of modulus above one are unbounded",
                            ),
                            None => PropertyVerdict::new(
                                Verdict::No,
                                "pb.identity",
                                "powers of a nonconstant polynomial weight gain degree with \
                                 every step, so no single polynomial bound works",
                            ),
                        };
                        return Ok((
                            note_phase(verdict, sp, shape),
                            PbPath::Identity { const_abs: cabs },
                        ));
                    }
                    if a.is_one() {
                        let verdict = match &cabs {
                            Some(c) if *c < Rat::one() => PropertyVerdict::new(
                                Verdict::Yes,
                                "pb.translation",
                                "a translation with a constant weight of modulus below one \
                                 contracts faster than the shifted station grows",
                            ),
                            Some(_) => PropertyVerdict::new(
                                Verdict::No,
                                "pb.translation",
                                "translations are power bounded only for constant weights of \
                                 modulus strictly below one",
                            ),
                            None => PropertyVerdict::new(
                                Verdict::No,
                                "pb.translation",
                                "a nonconstant polynomial weight defeats topologizability over \
                                 an affine symbol, hence also power boundedness",
                            ),
                        };
                        return Ok((
                            note_phase(verdict, sp, shape),
                            PbPath::Translation { const_abs: cabs },
                        ));
                    }
                    if a == -Rat::one() {
                        let verdict = match &cabs {
                            Some(c) if *c <= Rat::one() => PropertyVerdict::new(
                                Verdict::Yes,
                                "pb.reflection",
                                "the square of the operator is multiplication by a constant of \
                                 modulus at most one, and power boundedness follows from the \
                                 square",
                            ),
                            Some(_) => PropertyVerdict::new(
                                Verdict::No,
                                "pb.reflection",
                                "the squared operator multiplies by a constant of modulus above \
                                 one",
                            ),
                            None => PropertyVerdict::new(
                                Verdict::No,
                                "pb.reflection",
                                "the squared operator multiplies by a polynomial of twice the \
                                 weight degree, whose powers gain degree forever",
                            ),
                        };
                        return Ok((
                            note_phase(verdict, sp, shape),
                            PbPath::Reflection { const_abs: cabs },
                        ));
                    }
                    // |a| not in {0, 1}.
                    let verdict = PropertyVerdict::new(
                        Verdict::No,
                        "pb.affine-contraction-dilation",
                        "for a x + b with |a| neither zero nor one, no nonzero polynomial \
                         weight gives a power bounded operator: dilations concentrate \
                         derivative mass at the fixed point, contractions pump the weight up \
                         along the backward orbit",
                    );
                    return Ok((note_phase(verdict, sp, shape), PbPath::AffineOther));
                }
                _ => {
                    // Constant polynomial symbol with a nonzero polynomial
                    // weight cannot act; the precondition already excluded
                    // that, so this is only reachable with acts != No, and we
                    // fall through to evidence.
                }
            }
        }
    }
    let v = evidence_power_bounded(sp, cfg, evidence);
    Ok((v, PbPath::Evidence))
}

fn note_phase(v: PropertyVerdict, sp: &SymbolPair, shape: &Shape) -> PropertyVerdict {
    if sp.phase_nontrivial && shape.psi_const.is_some() {
        v.with(
            "scalar.modulus-only",
            "every implemented criterion depends on the scalar factor through its modulus \
             alone; the phase flag is carried but ignored",
        )
    } else {
        v
    }
}

/// Numeric probe of the two iterate growth conditions: (a) weighted cocycle
/// derivatives against iterate powers, (b) iterate derivatives against
/// iterate powers, with the supremum taken jointly over the iterate index.
fn evidence_power_bounded(
    sp: &SymbolPair,
    cfg: &ClassifierConfig,
    evidence: &mut Vec<EvidenceSection>,
) -> PropertyVerdict {
    let d = sp.dim();
    let mut cache = IterateCache::new(sp.phi.clone());
    let mut phis = Vec::new();
    let mut weights = Vec::new();
    for n in 1..=cfg.n_max {
        match (cache.iterate_symbol(n), cache.weight_product(&sp.psi, n)) {
            (Ok(p), Ok(w)) => {
                phis.push(p);
                weights.push(w);
            }
            _ => {
                return PropertyVerdict::new(
                    Verdict::Unknown,
                    "pb.evidence-grid",
                    "symbolic iterates exceeded the expansion caps before the probe finished",
                )
            }
        }
    }
    let qs = q_ladder(cfg.q_max);
    let ps = [rat_int(1), rat_int(2)];
    let mut any_unknown = false;

    let probe = |profile: &crate::growth::SupProfile,
                 p: &Rat,
                 label: String,
                 evidence: &mut Vec<EvidenceSection>|
     -> Option<Verdict> {
        let mut last = None;
        for q in &qs {
            let v = profile.verdict(p, q, &cfg.grid);
            let tag = v.tag;
            last = Some(v);
            if tag == GrowthTag::LikelyFinite {
                return None;
            }
        }
        let v = last.expect("probed");
        if v.tag == GrowthTag::LikelyInfinite {
            evidence.push(EvidenceSection {
                label,
                bands: v.evidence,
            });
            Some(Verdict::LikelyNo)
        } else {
            Some(Verdict::Unknown)
        }
    };

    for alpha in MultiIndex::all_up_to_order(d, cfg.alpha_max) {
        // Condition (a): cocycle derivative growth.
        let instances: Vec<(Expr, Vec<Expr>)> = weights
            .iter()
            .zip(&phis)
            .map(|(w, p)| (differentiate_multi(w, &alpha), p.clone()))
            .collect();
        let profile = sup_profile(&instances, &cfg.grid);
        for p in &ps {
            match probe(
                &profile,
                p,
                format!("pb (a): alpha={alpha} p={p} sup over n<={}", cfg.n_max),
                evidence,
            ) {
                Some(Verdict::LikelyNo) => {
                    return PropertyVerdict::new(
                        Verdict::LikelyNo,
                        "pb.evidence-grid",
                        "an iterated weight derivative outgrows every probed power of the \
                         symbol iterates",
                    )
                }
                Some(_) => any_unknown = true,
                None => {}
            }
        }
        // Condition (b): iterate derivative growth, componentwise.
        if alpha.is_zero() {
            continue;
        }
        for comp in 0..d {
            let instances: Vec<(Expr, Vec<Expr>)> = phis
                .iter()
                .map(|p| (differentiate_multi(&p[comp], &alpha), p.clone()))
                .collect();
            let profile = sup_profile(&instances, &cfg.grid);
            match probe(
                &profile,
                &Rat::zero(),
                format!(
                    "pb (b): alpha={alpha} component={comp} sup over n<={}",
                    cfg.n_max
                ),
                evidence,
            ) {
                Some(Verdict::LikelyNo) => {
                    return PropertyVerdict::new(
                        Verdict::LikelyNo,
                        "pb.evidence-grid",
                        "an iterate derivative outgrows every probed power of the iterates \
                         themselves",
                    )
                }
                Some(_) => any_unknown = true,
                None => {}
            }
        }
    }
    if any_unknown {
        PropertyVerdict::new(
            Verdict::Unknown,
            "pb.evidence-grid",
            "some iterate growth probes neither stabilized nor grew cleanly",
        )
    } else {
        PropertyVerdict::new(
            Verdict::LikelyYes,
            "pb.evidence-grid",
            "all iterate growth probes stabilized at some denominator exponent",
        )
    }
}

pub fn classify_topologizable(
    sp: &SymbolPair,
    cfg: &ClassifierConfig,
) -> Result<(PropertyVerdict, PropertyVerdict)> {
    let shape = Shape::of(sp);
    let mut ev = Vec::new();
    let acts = classify_acts_impl(sp, cfg, &shape, &mut ev);
    if acts.value == Verdict::No {
        return Err(Error::PreconditionViolated(
            "topologizability is undefined for an operator that does not act".into(),
        ));
    }
    let (pb, _) = classify_pb_impl(sp, cfg, &shape, &acts, &mut ev)?;
    Ok(classify_top_impl(sp, cfg, &shape, &pb, &mut ev))
}

fn classify_top_impl(
    sp: &SymbolPair,
    cfg: &ClassifierConfig,
    shape: &Shape,
    pb: &PropertyVerdict,
    evidence: &mut Vec<EvidenceSection>,
) -> (PropertyVerdict, PropertyVerdict) {
    if pb.value == Verdict::Yes {
        let v = PropertyVerdict::new(
            Verdict::Yes,
            "top.from-power-bounded",
            "a power bounded operator is m-topologizable with constants one",
        );
        return (v.clone(), v);
    }
    if shape.d == 1 {
        if shape.sqrt_canonical {
            if let Some(psi_p) = &shape.psi_poly {
                if psi_p.is_constant() {
                    let v = PropertyVerdict::new(
                        Verdict::Yes,
                        "top.sqrt-symbol",
                        "over sqrt(1+x^2) a constant weight only contributes a geometric \
                         factor, which m-topologizability absorbs",
                    );
                    return (v.clone(), v);
                }
                let v = PropertyVerdict::new(
                    Verdict::No,
                    "top.sqrt-symbol",
                    "after q+1 steps the weight product has polynomial degree above every \
                     fixed power of the slowly growing iterates",
                );
                return (v.clone(), v);
            }
        }
        if let Some(phi_p) = &shape.phi_poly {
            let deg = phi_p.degree();
            if let Some(psi_p) = &shape.psi_poly {
                if !psi_p.is_constant() && deg == Some(1) {
                    let v = PropertyVerdict::new(
                        Verdict::No,
                        "top.affine-nonconstant-weight",
                        "over an affine symbol the weight product gains degree n deg(psi) \
                         while the iterate stays affine, so no scaling sequence helps",
                    );
                    return (v.clone(), v);
                }
                if psi_p.is_constant() {
                    // Nonzero constant: zero weights are power bounded and
                    // handled above.
                    match deg {
                        Some(1) => {
                            let v = PropertyVerdict::new(
                                Verdict::Yes,
                                "top.affine-scalar",
                                "affine composition operators are m-topologizable and a \
                                 constant weight only adds a geometric factor",
                            );
                            return (v.clone(), v);
                        }
                        Some(dd) if dd >= 2 => {
                            let top = PropertyVerdict::new(
                                Verdict::Yes,
                                "top.poly-composition",
                                "composition by a nonconstant polynomial is topologizable: \
                                 each power separately satisfies the growth test, and a \
                                 constant weight only scales it",
                            );
                            let mtop = PropertyVerdict::new(
                                Verdict::Unknown,
                                "top.unsettled-m",
                                "m-topologizability over a degree >= 2 symbol with fixed \
                                 points is not settled by the implemented rule set",
                            );
                            return (top, mtop);
                        }
                        _ => {}
                    }
                }
                if !psi_p.is_constant() && deg.is_some_and(|dd| dd >= 2) {
                    let v = PropertyVerdict::new(
                        Verdict::Unknown,
                        "top.unsettled",
                        "topologizability for weighted operators over a degree >= 2 symbol \
                         with fixed points is not settled by the implemented rule set",
                    );
                    return (v.clone(), v);
                }
            }
        }
    }
    evidence_topologizable(sp, cfg, evidence)
}

fn evidence_topologizable(
    sp: &SymbolPair,
    cfg: &ClassifierConfig,
    evidence: &mut Vec<EvidenceSection>,
) -> (PropertyVerdict, PropertyVerdict) {
    let d = sp.dim();
    let mut cache = IterateCache::new(sp.phi.clone());
    let mut pairs = Vec::new();
    for n in 1..=cfg.n_max {
        match (cache.iterate_symbol(n), cache.weight_product(&sp.psi, n)) {
            (Ok(p), Ok(w)) => pairs.push((w, p)),
            _ => {
                let v = PropertyVerdict::new(
                    Verdict::Unknown,
                    "top.evidence-grid",
                    "symbolic iterates exceeded the expansion caps before the probe finished",
                );
                return (v.clone(), v);
            }
        }
    }
    let qs = q_ladder(cfg.q_max);
    let p = rat_int(1);
    let p0 = Rat::zero();
    let mut any_unknown = false;
    enum ProbeOutcome {
        Admissible,
        Defeated,
        Unsettled,
    }
    // Per-power probes: the bound may depend on n, but the exponent may not.
    let per_power_probe = |profiles: &[crate::growth::SupProfile],
                           p: &Rat,
                           label: String,
                           evidence: &mut Vec<EvidenceSection>|
     -> ProbeOutcome {
        'qloop: for q in &qs {
            for profile in profiles {
                let v = profile.verdict(p, q, &cfg.grid);
                match v.tag {
                    GrowthTag::LikelyFinite => {}
                    GrowthTag::LikelyInfinite if *q == *qs.last().unwrap() => {
                        evidence.push(EvidenceSection {
                            label,
                            bands: v.evidence,
                        });
                        return ProbeOutcome::Defeated;
                    }
                    _ => continue 'qloop,
                }
            }
            return ProbeOutcome::Admissible;
        }
        ProbeOutcome::Unsettled
    };
    for alpha in MultiIndex::all_up_to_order(d, cfg.alpha_max) {
        // Condition (a): cocycle derivative growth, per power.
        let profiles: Vec<crate::growth::SupProfile> = pairs
            .iter()
            .map(|(w, phin)| {
                let instance = [(differentiate_multi(w, &alpha), phin.clone())];
                sup_profile(&instance, &cfg.grid)
            })
            .collect();
        match per_power_probe(
            &profiles,
            &p,
            format!("top (a): alpha={alpha} p={p}"),
            evidence,
        ) {
            ProbeOutcome::Admissible => {}
            ProbeOutcome::Defeated => {
                let out = PropertyVerdict::new(
                    Verdict::LikelyNo,
                    "top.evidence-grid",
                    "a single power already defeats every probed exponent",
                );
                return (out.clone(), out);
            }
            ProbeOutcome::Unsettled => any_unknown = true,
        }
        // Condition (b): iterate derivative growth, per power and component.
        if alpha.is_zero() {
            continue;
        }
        for comp in 0..d {
            let profiles: Vec<crate::growth::SupProfile> = pairs
                .iter()
                .map(|(_, phin)| {
                    let instance = [(differentiate_multi(&phin[comp], &alpha), phin.clone())];
                    sup_profile(&instance, &cfg.grid)
                })
                .collect();
            match per_power_probe(
                &profiles,
                &p0,
                format!("top (b): alpha={alpha} component={comp}"),
                evidence,
            ) {
                ProbeOutcome::Admissible => {}
                ProbeOutcome::Defeated => {
                    let out = PropertyVerdict::new(
                        Verdict::LikelyNo,
                        "top.evidence-grid",
                        "an iterate derivative defeats every probed exponent at a single power",
                    );
                    return (out.clone(), out);
                }
                ProbeOutcome::Unsettled => any_unknown = true,
            }
        }
    }
    let top = if any_unknown {
        PropertyVerdict::new(
            Verdict::Unknown,
            "top.evidence-grid",
            "per-power growth probes did not settle at a common exponent",
        )
    } else {
        PropertyVerdict::new(
            Verdict::LikelyYes,
            "top.evidence-grid",
            "each probed power satisfied the growth test at a common exponent",
        )
    };
    let mtop = PropertyVerdict::new(
        Verdict::Unknown,
        "top.evidence-grid",
        "geometric bounds on the per-power constants cannot be certified numerically",
    );
    (top, mtop)
}

pub fn classify_iterates_to_zero(
    sp: &SymbolPair,
    cfg: &ClassifierConfig,
) -> Result<PropertyVerdict> {
    let shape = Shape::of(sp);
    let mut ev = Vec::new();
    let acts = classify_acts_impl(sp, cfg, &shape, &mut ev);
    if acts.value == Verdict::No {
        return Err(Error::PreconditionViolated(
            "iterate convergence is undefined for an operator that does not act".into(),
        ));
    }
    let (pb, path) = classify_pb_impl(sp, cfg, &shape, &acts, &mut ev)?;
    Ok(classify_it0_impl(&pb, &path))
}

fn classify_it0_impl(pb: &PropertyVerdict, path: &PbPath) -> PropertyVerdict {
    match path {
        PbPath::ZeroWeight => PropertyVerdict::new(
            Verdict::Yes,
            "it0.zero-weight",
            "the zero operator is its own limit",
        ),
        PbPath::FixedPointFree => PropertyVerdict::new(
            Verdict::Yes,
            "it0.fixed-point-free",
            "over a fixed-point-free polynomial symbol of degree >= 2 the iterates converge \
             to zero for every polynomial-growth weight",
        ),
        PbPath::Translation { const_abs: Some(c) } if *c < Rat::one() => PropertyVerdict::new(
            Verdict::Yes,
            "it0.contracting-translation",
            "a translation with constant weight of modulus below one has powers shrinking \
             geometrically on every seminorm",
        ),
        PbPath::Identity { const_abs: Some(c) } => {
            if *c < Rat::one() {
                PropertyVerdict::new(
                    Verdict::Yes,
                    "it0.identity-scalar",
                    "scalar multiples of the identity converge to zero exactly for modulus \
                     below one",
                )
            } else {
                PropertyVerdict::new(
                    Verdict::No,
                    "it0.identity-scalar",
                    "powers of a scalar of modulus at least one do not converge to zero",
                )
            }
        }
        _ if pb.value == Verdict::No => PropertyVerdict::new(
            Verdict::No,
            "it0.needs-power-bounded",
            "convergence of the powers to zero would make them bounded, hence equicontinuous, \
             contradicting the failure of power boundedness",
        ),
        _ => PropertyVerdict::new(
            Verdict::Unknown,
            "it0.unsettled",
            "no implemented rule decides iterate convergence for this pair",
        ),
    }
}

pub fn classify_supercyclicity(sp: &SymbolPair) -> Result<PropertyVerdict> {
    if sp.dim() != 1 {
        return Err(Error::NotApplicable(
            "the supercyclicity rules cover univariate polynomial symbols only".into(),
        ));
    }
    let shape = Shape::of(sp);
    let Some(phi_p) = shape.phi_poly.clone() else {
        return Err(Error::NotApplicable(
            "the supercyclicity rules cover polynomial symbols only".into(),
        ));
    };
    let wf = zero_free(&sp.psi, 1);
    if wf == Some(false) {
        return Ok(PropertyVerdict::new(
            Verdict::No,
            "sc.weight-zero",
            "a weight with a real zero traps the whole range in the kernel of a point \
             evaluation, so no orbit can be weakly dense",
        ));
    }
    let is_translation = shape
        .affine
        .as_ref()
        .is_some_and(|(a, b)| a.is_one() && !b.is_zero());
    if !is_translation {
        let note = match phi_p.degree() {
            None | Some(0) => "a constant symbol has rank-one range",
            Some(1) => {
                "an affine symbol that is not a nondegenerate translation leaves a \
                 two-dimensional dual subspace invariant with distinct eigenvalues"
            }
            _ => {
                "a symbol of degree >= 2 either identifies two points or has a fixed point \
                 trapping the orbit at polynomial growth; both exclude weak supercyclicity"
            }
        };
        return Ok(PropertyVerdict::new(Verdict::No, "sc.symbol-shape", note));
    }
    if wf == Some(true) {
        Ok(PropertyVerdict::new(
            Verdict::Unknown,
            "sc.not-excluded",
            "translations with zero-free weights are not excluded by the implemented \
             necessary conditions",
        ))
    } else {
        Ok(PropertyVerdict::new(
            Verdict::Unknown,
            "sc.not-excluded",
            "the weight's zero set could not be decided exactly; no implemented condition \
             excludes this translation",
        ))
    }
}

pub fn classify_universal_weights(phi: &[Expr], cfg: &ClassifierConfig) -> PropertyVerdict {
    let d = phi.len();
    let all_poly = phi.iter().all(|c| as_polynomial(c, d).is_some());
    if all_poly {
        return PropertyVerdict::new(
            Verdict::Yes,
            "uw.poly-symbol",
            "polynomial symbols have polynomial derivatives, so composition keeps every \
             rapidly decreasing weight admissible",
        );
    }
    if phi.iter().all(exp_free) {
        return PropertyVerdict::new(
            Verdict::Yes,
            "uw.root-growth",
            "all symbol derivatives are polynomials over positive roots and stay so under \
             further differentiation, hence grow at most polynomially",
        );
    }
    for comp in phi {
        for axis in 0..d {
            let deriv = differentiate(comp, axis);
            if superpolynomial(&deriv, d) == Some(true) {
                return PropertyVerdict::new(
                    Verdict::No,
                    "uw.exp-growth",
                    "a first derivative of the symbol contains an exponential that is \
                     unbounded above and therefore exceeds every polynomial bound",
                );
            }
        }
    }
    let _ = cfg;
    PropertyVerdict::new(
        Verdict::Unknown,
        "uw.unsettled",
        "the derivative growth class of this symbol is not decided by the implemented rules",
    )
}

fn classify_mean_ergodic_impl(
    shape: &Shape,
    pb: &PropertyVerdict,
    path: &PbPath,
) -> (PropertyVerdict, PropertyVerdict) {
    match pb.value {
        Verdict::Yes => {
            let v = PropertyVerdict::new(
                Verdict::Yes,
                "me.from-power-bounded",
                "on this Montel space power bounded operators are uniformly mean ergodic, and \
                 their averages are bounded",
            );
            (v.clone(), v)
        }
        Verdict::No
            if matches!(path, PbPath::FixedPointed)
                && shape.psi_poly.as_ref().is_some_and(|p| !p.is_zero()) =>
        {
            let v = PropertyVerdict::new(
                Verdict::No,
                "me.cesaro-transfer",
                "bounded averages would make a scaled copy power bounded and transfer power \
                 boundedness to the unweighted composition, contradicting the fixed point",
            );
            (v.clone(), v)
        }
        Verdict::LikelyYes => {
            let v = PropertyVerdict::new(
                Verdict::LikelyYes,
                "me.from-power-bounded",
                "inherited from the power boundedness evidence",
            );
            (v.clone(), v)
        }
        _ => {
            let v = PropertyVerdict::new(
                Verdict::Unknown,
                "me.unsettled",
                "mean ergodicity is only derived from power boundedness or its failure over \
                 fixed-pointed polynomial symbols",
            );
            (v.clone(), v)
        }
    }
}

pub fn full_report(sp: &SymbolPair, cfg: &ClassifierConfig) -> Result<ClassificationReport> {
    let shape = Shape::of(sp);
    let mut evidence = Vec::new();
    let acts = classify_acts_impl(sp, cfg, &shape, &mut evidence);
    let universal = classify_universal_weights(&sp.phi, cfg);

    let report = if acts.value == Verdict::No {
        let denial = |prop: &str| {
            PropertyVerdict::new(
                Verdict::No,
                "acts.none",
                &format!("{prop} is denied because the operator does not act on the space"),
            )
        };
        ClassificationReport {
            acts_on_schwartz: acts,
            power_bounded: denial("power boundedness"),
            topologizable: denial("topologizability"),
            m_topologizable: denial("m-topologizability"),
            iterates_to_zero: denial("iterate convergence"),
            uniformly_mean_ergodic: denial("uniform mean ergodicity"),
            cesaro_bounded: denial("Cesaro boundedness"),
            weak_supercyclicity_possible: denial("weak supercyclicity"),
            universal_schwartz_weights: universal,
            evidence,
        }
    } else {
        let (pb, path) = classify_pb_impl(sp, cfg, &shape, &acts, &mut evidence)?;
        let (top, mtop) = classify_top_impl(sp, cfg, &shape, &pb, &mut evidence);
        let it0 = classify_it0_impl(&pb, &path);
        let (ume, cesaro) = classify_mean_ergodic_impl(&shape, &pb, &path);
        let sc = match classify_supercyclicity(sp) {
            Ok(v) => v,
            Err(Error::NotApplicable(note)) => {
                PropertyVerdict::new(Verdict::Unknown, "sc.not-applicable", &note)
            }
            Err(e) => return Err(e),
        };
        ClassificationReport {
            acts_on_schwartz: acts,
            power_bounded: pb,
            topologizable: top,
            m_topologizable: mtop,
            iterates_to_zero: it0,
            uniformly_mean_ergodic: ume,
            cesaro_bounded: cesaro,
            weak_supercyclicity_possible: sc,
            universal_schwartz_weights: universal,
            evidence,
        }
    };
    check_lattice(&report)?;
    Ok(report)
}

/// The implication lattice every report must satisfy; a violation is a rule
/// bug, not a property of the input.
fn check_lattice(r: &ClassificationReport) -> Result<()> {
    let implies = |name: &str, a: &PropertyVerdict, b: &PropertyVerdict| -> Result<()> {
        if a.value == Verdict::Yes && b.value != Verdict::Yes {
            return Err(Error::InternalInconsistency(format!(
                "implication `{name}` violated: antecedent yes, consequent {}",
                b.value
            )));
        }
        Ok(())
    };
    implies("pb => m-top", &r.power_bounded, &r.m_topologizable)?;
    implies("m-top => top", &r.m_topologizable, &r.topologizable)?;
    implies("it0 => pb", &r.iterates_to_zero, &r.power_bounded)?;
    implies("pb => ume", &r.power_bounded, &r.uniformly_mean_ergodic)?;
    implies("pb => cesaro", &r.power_bounded, &r.cesaro_bounded)?;
    for (name, pv) in [
        ("pb", &r.power_bounded),
        ("top", &r.topologizable),
        ("m-top", &r.m_topologizable),
        ("it0", &r.iterates_to_zero),
        ("ume", &r.uniformly_mean_ergodic),
        ("cesaro", &r.cesaro_bounded),
    ] {
        if pv.value == Verdict::Yes && r.acts_on_schwartz.value != Verdict::Yes {
            return Err(Error::InternalInconsistency(format!(
                "`{name}` is yes but the operator was not certified to act"
            )));
        }
    }
    if r.topologizable.value == Verdict::No && r.m_topologizable.value == Verdict::Yes {
        return Err(Error::InternalInconsistency(
            "m-topologizable yes under topologizable no".into(),
        ));
    }
    if r.m_topologizable.value == Verdict::No && r.power_bounded.value == Verdict::Yes {
        return Err(Error::InternalInconsistency(
            "power bounded yes under m-topologizable no".into(),
        ));
    }
    if r.power_bounded.value == Verdict::No && r.iterates_to_zero.value == Verdict::Yes {
        return Err(Error::InternalInconsistency(
            "iterates to zero under power-boundedness failure".into(),
        ));
    }
    for (pv, name) in [
        (&r.acts_on_schwartz, "acts"),
        (&r.power_bounded, "pb"),
        (&r.topologizable, "top"),
        (&r.m_topologizable, "m-top"),
        (&r.iterates_to_zero, "it0"),
        (&r.uniformly_mean_ergodic, "ume"),
        (&r.cesaro_bounded, "cesaro"),
        (&r.weak_supercyclicity_possible, "supercyclicity"),
        (&r.universal_schwartz_weights, "universal-weights"),
    ] {
        if pv.value != Verdict::Unknown && pv.rationale.is_empty() {
            return Err(Error::InternalInconsistency(format!(
                "`{name}` verdict lacks a rationale"
            )));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_expr;

    fn pair(psi: &str, phi: &str) -> SymbolPair {
        SymbolPair::new(parse_expr(psi, 1).unwrap(), vec![parse_expr(phi, 1).unwrap()])
    }

    fn cfg() -> ClassifierConfig {
        ClassifierConfig::default()
    }

    #[test]
    fn acts_examples() {
        assert_eq!(
            classify_acts(&pair("x^3", "x^2 + 1"), &cfg()).value,
            Verdict::Yes
        );
        assert_eq!(classify_acts(&pair("1", "2"), &cfg()).value, Verdict::No);
        assert_eq!(
            classify_acts(&pair("exp(x)", "exp(x)"), &cfg()).value,
            Verdict::Yes
        );
    }

    #[test]
    fn power_bounded_examples() {
        assert_eq!(
            classify_power_bounded(&pair("5*x^7 - 3", "x^2 + 1"), &cfg())
                .unwrap()
                .value,
            Verdict::Yes
        );
        assert_eq!(
            classify_power_bounded(&pair("1", "x^2"), &cfg()).unwrap().value,
            Verdict::No
        );
        assert_eq!(
            classify_power_bounded(&pair("1/2", "1/2*x"), &cfg())
                .unwrap()
                .value,
            Verdict::No
        );
    }

    #[test]
    fn power_boundedness_precondition() {
        assert!(matches!(
            classify_power_bounded(&pair("1", "2"), &cfg()),
            Err(Error::PreconditionViolated(_))
        ));
    }

    #[test]
    fn topologizability_examples() {
        let (top, mtop) = classify_topologizable(&pair("1", "x + 1"), &cfg()).unwrap();
        assert_eq!(top.value, Verdict::Yes);
        assert_eq!(mtop.value, Verdict::Yes);
        let pb = classify_power_bounded(&pair("1", "x + 1"), &cfg()).unwrap();
        assert_eq!(pb.value, Verdict::No);

        let (top, mtop) = classify_topologizable(&pair("x^2", "x + 1"), &cfg()).unwrap();
        assert_eq!(top.value, Verdict::No);
        assert_eq!(mtop.value, Verdict::No);

        let (top, mtop) =
            classify_topologizable(&pair("x^3", "sqrt(1 + x^2)"), &cfg()).unwrap();
        assert_eq!(top.value, Verdict::No);
        assert_eq!(mtop.value, Verdict::No);
    }

    #[test]
    fn iterates_to_zero_examples() {
        assert_eq!(
            classify_iterates_to_zero(&pair("x", "x^2 + 2"), &cfg())
                .unwrap()
                .value,
            Verdict::Yes
        );
        assert_eq!(
            classify_iterates_to_zero(&pair("1/2", "x + 1"), &cfg())
                .unwrap()
                .value,
            Verdict::Yes
        );
        assert_eq!(
            classify_iterates_to_zero(&pair("1", "x"), &cfg()).unwrap().value,
            Verdict::No
        );
    }

    #[test]
    fn supercyclicity_examples() {
        assert_eq!(
            classify_supercyclicity(&pair("1", "x^2 + 1")).unwrap().value,
            Verdict::No
        );
        assert_eq!(
            classify_supercyclicity(&pair("1 + x^2", "x + 1")).unwrap().value,
            Verdict::Unknown
        );
        assert_eq!(
            classify_supercyclicity(&pair("x", "x + 1")).unwrap().value,
            Verdict::No
        );
        assert!(matches!(
            classify_supercyclicity(&pair("1", "exp(x)")),
            Err(Error::NotApplicable(_))
        ));
    }

    #[test]
    fn universal_weight_examples() {
        let c = cfg();
        let poly = vec![parse_expr("x^3", 1).unwrap()];
        assert_eq!(classify_universal_weights(&poly, &c).value, Verdict::Yes);
        let root = vec![parse_expr("sqrt(1 + x^2)", 1).unwrap()];
        assert_eq!(classify_universal_weights(&root, &c).value, Verdict::Yes);
        let e = vec![parse_expr("exp(x)", 1).unwrap()];
        assert_eq!(classify_universal_weights(&e, &c).value, Verdict::No);
    }

    #[test]
    fn universal_weight_verdicts_match_numeric_growth_scans() {
        // Oracle for the root symbol: the first four derivatives all admit a
        // polynomial envelope (the grid ratio against (1+|x|)^2 stabilizes).
        use crate::growth::{numeric_sup, GridConfig, GrowthTag};
        let ident = [Expr::var(0)];
        let grid = GridConfig::default();
        let mut d = parse_expr("sqrt(1 + x^2)", 1).unwrap();
        for order in 1..=4 {
            d = crate::expr::differentiate(&d, 0);
            let v = numeric_sup(&d, &ident, &Rat::zero(), &rat_int(2), &grid);
            assert_eq!(
                v.tag,
                GrowthTag::LikelyFinite,
                "derivative order {order} should have a polynomial envelope"
            );
        }
        // Oracle for exp: its derivative outgrows every probed polynomial
        // envelope on the grid.
        let e = parse_expr("exp(x)", 1).unwrap();
        let de = crate::expr::differentiate(&e, 0);
        for q in [1i64, 4, 16] {
            let v = numeric_sup(&de, &ident, &Rat::zero(), &rat_int(q), &grid);
            assert_eq!(v.tag, GrowthTag::LikelyInfinite, "q = {q}");
        }
    }

    #[test]
    fn sqrt_family_power_boundedness() {
        for (psi, expect) in [
            ("1/2", Verdict::Yes),
            ("1", Verdict::Yes),
            ("2", Verdict::No),
            ("x", Verdict::No),
        ] {
            let v = classify_power_bounded(&pair(psi, "sqrt(1 + x^2)"), &cfg()).unwrap();
            assert_eq!(v.value, expect, "psi = {psi}");
        }
    }

    #[test]
    fn translation_scalar_dichotomy_is_strict() {
        for (psi, expect) in [
            ("1/2", Verdict::Yes),
            ("1", Verdict::No),
            ("2", Verdict::No),
        ] {
            let v = classify_power_bounded(&pair(psi, "x + 1"), &cfg()).unwrap();
            assert_eq!(v.value, expect, "psi = {psi}");
        }
    }

    #[test]
    fn full_report_is_consistent_on_the_basics() {
        for (psi, phi) in [
            ("1", "x^2 + 1"),
            ("x", "x^2 + 2"),
            ("1", "x + 1"),
            ("x^2", "x + 1"),
            ("exp(x)", "exp(x)"),
            ("1", "x"),
            ("2", "sqrt(1 + x^2)"),
        ] {
            let r = full_report(&pair(psi, phi), &cfg()).unwrap();
            // A second invocation yields identical verdicts (determinism).
            let r2 = full_report(&pair(psi, phi), &cfg()).unwrap();
            assert_eq!(r.power_bounded.value, r2.power_bounded.value);
            assert_eq!(r.acts_on_schwartz.value, r2.acts_on_schwartz.value);
        }
    }

    #[test]
    fn exp_pair_full_report() {
        let r = full_report(&pair("exp(x)", "exp(x)"), &cfg()).unwrap();
        assert_eq!(r.acts_on_schwartz.value, Verdict::Yes);
        assert_eq!(r.power_bounded.value, Verdict::Yes);
        assert_eq!(r.uniformly_mean_ergodic.value, Verdict::Yes);
        assert_eq!(r.m_topologizable.value, Verdict::Yes);
        assert_eq!(r.universal_schwartz_weights.value, Verdict::No);
    }

    #[test]
    fn phase_flag_only_annotates() {
        let mut sp = pair("1/2", "x + 1");
        sp.phase_nontrivial = true;
        let v = classify_power_bounded(&sp, &cfg()).unwrap();
        assert_eq!(v.value, Verdict::Yes);
        assert!(v.rationale.iter().any(|r| r.rule == "scalar.modulus-only"));
    }
}
