//! Finiteness of the characteristic suprema
//! `sup_x (1+|x|)^p |g(x)| / (1+|phi(x)|)^q`: decided exactly for polynomial
//! data through degree arithmetic, estimated on a geometric grid in log
//! space otherwise. Numeric outcomes are always tagged `Likely*` or
//! `Unknown`; they never masquerade as proofs.

use crate::expr::{as_polynomial, eval_logreal_at, Expr};
use crate::logreal::LogReal;
use crate::multiindex::MultiIndex;
use crate::poly::Polynomial;
use crate::rational::{rat_int, rat_to_f64, Rat};
use crate::rootcheck::root_bound;
use num_traits::{One, Zero};
use std::collections::BTreeMap;

/// A weighted sup-norm index: `sup (1+|x|)^p |f^(alpha)(x)|`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Seminorm {
    pub p: Rat,
    pub alpha: MultiIndex,
}

impl Seminorm {
    pub fn new(p: Rat, alpha: MultiIndex) -> Self {
        assert!(p > Rat::zero(), "seminorm exponents are positive");
        Seminorm { p, alpha }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GrowthTag {
    Finite,
    Infinite,
    LikelyFinite,
    LikelyInfinite,
    Unknown,
}

impl GrowthTag {
    pub fn is_exact(self) -> bool {
        matches!(self, GrowthTag::Finite | GrowthTag::Infinite)
    }

    /// Exact and numeric tags agree when they point the same way.
    pub fn agrees_with_exact(self, exact: GrowthTag) -> bool {
        match (self, exact) {
            (GrowthTag::LikelyFinite, GrowthTag::Finite) => true,
            (GrowthTag::LikelyInfinite, GrowthTag::Infinite) => true,
            (GrowthTag::Unknown, _) => true,
            _ => false,
        }
    }
}

impl std::fmt::Display for GrowthTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            GrowthTag::Finite => "finite",
            GrowthTag::Infinite => "infinite",
            GrowthTag::LikelyFinite => "likely-finite",
            GrowthTag::LikelyInfinite => "likely-infinite",
            GrowthTag::Unknown => "unknown",
        };
        write!(f, "{s}")
    }
}

/// One dyadic band of the evidence table: the grid maximum of the log-ratio
/// over `|x| in [2^band, 2^(band+1))` and the running maximum up to it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BandSample {
    pub band: i64,
    pub band_max: f64,
    pub running_max: f64,
}

#[derive(Debug, Clone)]
pub struct GrowthVerdict {
    pub tag: GrowthTag,
    pub witness_q: Option<Rat>,
    pub evidence: Vec<BandSample>,
}

impl GrowthVerdict {
    fn exact(tag: GrowthTag, witness_q: Option<Rat>) -> Self {
        GrowthVerdict {
            tag,
            witness_q,
            evidence: Vec::new(),
        }
    }
}

/// Exact finiteness of `sup (1+|x|)^p |g| / (1+|phi|)^q` for univariate
/// polynomial data: compare asymptotic exponents. The denominator never
/// vanishes, so only the behaviour at infinity matters.
pub fn poly_sup_finite(g: &Polynomial, phi: &Polynomial, p: &Rat, q: &Rat) -> GrowthVerdict {
    assert_eq!(g.dim(), 1);
    assert_eq!(phi.dim(), 1);
    if g.is_zero() {
        return GrowthVerdict::exact(GrowthTag::Finite, Some(Rat::zero()));
    }
    let deg_g = rat_int(g.degree().unwrap_or(0) as i64);
    match phi.degree() {
        Some(d) if d >= 1 => {
            let deg_phi = rat_int(d as i64);
            let finite = q.clone() * deg_phi.clone() >= p.clone() + deg_g.clone();
            let witness = Some((p.clone() + deg_g) / deg_phi);
            if finite {
                GrowthVerdict::exact(GrowthTag::Finite, witness)
            } else {
                GrowthVerdict::exact(GrowthTag::Infinite, witness)
            }
        }
        _ => {
            // Constant symbol: the denominator is bounded, so finiteness is
            // decided by the numerator growth alone.
            if p.clone() + deg_g <= Rat::zero() {
                GrowthVerdict::exact(GrowthTag::Finite, Some(Rat::zero()))
            } else {
                GrowthVerdict::exact(GrowthTag::Infinite, None)
            }
        }
    }
}

/// Smallest exponent `q` making the polynomial supremum finite, when one
/// exists.
pub fn exists_q(g: &Polynomial, phi: &Polynomial, p: &Rat) -> Option<Rat> {
    if g.is_zero() {
        return Some(Rat::zero());
    }
    let deg_g = rat_int(g.degree().unwrap_or(0) as i64);
    match phi.degree() {
        Some(d) if d >= 1 => Some((p.clone() + deg_g) / rat_int(d as i64)),
        _ => {
            if p.clone() + deg_g <= Rat::zero() {
                Some(Rat::zero())
            } else {
                None
            }
        }
    }
}

/// Geometric evidence grid `x = +-2^(j/8)` and divergence thresholds in
/// nats per dyadic band.
#[derive(Debug, Clone)]
pub struct GridConfig {
    pub j_min: i64,
    pub j_max: i64,
    pub slope_up: f64,
    pub slope_flat: f64,
}

impl Default for GridConfig {
    fn default() -> Self {
        GridConfig {
            j_min: -64,
            j_max: 512,
            slope_up: 0.5,
            slope_flat: 0.05,
        }
    }
}

const LN_2: f64 = std::f64::consts::LN_2;

/// Ray directions `+-e_i` and the full-sign diagonals.
fn ray_directions(d: usize) -> Vec<Vec<i8>> {
    let mut rays = Vec::new();
    for axis in 0..d {
        for s in [1i8, -1] {
            let mut u = vec![0i8; d];
            u[axis] = s;
            rays.push(u);
        }
    }
    if d > 1 {
        // All-sign diagonals.
        for mask in 0..(1u32 << d) {
            let u: Vec<i8> = (0..d)
                .map(|i| if mask & (1 << i) != 0 { -1 } else { 1 })
                .collect();
            rays.push(u);
        }
    }
    rays
}

fn ln_norm(coords: &[LogReal]) -> f64 {
    // ln |x| for the Euclidean norm, via a stable log-sum of squares.
    let mut acc = LogReal::zero();
    for c in coords {
        acc = acc.add(&c.abs().powi(2));
    }
    acc.ln_abs() / 2.0
}

fn ln_1p_norm(coords: &[LogReal]) -> f64 {
    let ln = ln_norm(coords);
    if ln == f64::INFINITY {
        return f64::INFINITY;
    }
    if ln > 40.0 {
        ln
    } else {
        ln.exp().ln_1p()
    }
}

/// One evaluated grid point, with the exponent-independent pieces kept
/// apart: the log-ratio for any `(p, q)` is `p * ln1px + num - q * den`.
#[derive(Debug, Clone, Copy)]
struct ProfileSample {
    band: i64,
    ln1px: f64,
    num: f64,
    den: f64,
}

/// All grid samples of one supremum instance set. Evaluating the symbolic
/// data dominates the cost, so the profile is computed once and every
/// exponent pair is judged from it.
pub struct SupProfile {
    samples: Vec<ProfileSample>,
}

pub fn sup_profile(instances: &[(Expr, Vec<Expr>)], cfg: &GridConfig) -> SupProfile {
    let d = instances.first().map(|(_, phi)| phi.len()).unwrap_or(1);
    let rays = ray_directions(d);
    let mut samples = Vec::new();
    for j in cfg.j_min..=cfg.j_max {
        let band = j.div_euclid(8);
        let ln_t = j as f64 / 8.0 * LN_2;
        for ray in &rays {
            let coords: Vec<LogReal> =
                ray.iter().map(|&s| LogReal::new(s, ln_t)).collect();
            let ln1px = ln_1p_norm(&coords);
            for (e, phi) in instances {
                let num = eval_logreal_at(e, &coords).ln_abs();
                let phi_vals: Vec<LogReal> =
                    phi.iter().map(|c| eval_logreal_at(c, &coords)).collect();
                let den = ln_1p_norm(&phi_vals);
                samples.push(ProfileSample {
                    band,
                    ln1px,
                    num,
                    den,
                });
            }
        }
    }
    SupProfile { samples }
}

impl SupProfile {
    pub fn verdict(&self, p: &Rat, q: &Rat, cfg: &GridConfig) -> GrowthVerdict {
        let pf = rat_to_f64(p);
        let qf = rat_to_f64(q);
        let mut band_max: BTreeMap<i64, f64> = BTreeMap::new();
        let mut saw_divergent_sample = false;
        for s in &self.samples {
            let num = pf * s.ln1px + s.num;
            let r = if num == f64::INFINITY {
                // An overflowed numerator only means divergence when the
                // denominator stays meaningful.
                if qf > 0.0 && s.den == f64::INFINITY {
                    continue;
                }
                f64::INFINITY
            } else if qf == 0.0 {
                num
            } else if s.den == f64::INFINITY {
                f64::NEG_INFINITY
            } else {
                num - qf * s.den
            };
            if r.is_nan() {
                continue;
            }
            if r == f64::INFINITY {
                saw_divergent_sample = true;
                continue;
            }
            let slot = band_max.entry(s.band).or_insert(f64::NEG_INFINITY);
            if r > *slot {
                *slot = r;
            }
        }
        let mut evidence = Vec::with_capacity(band_max.len());
        let mut running = f64::NEG_INFINITY;
        for (&band, &bm) in &band_max {
            running = running.max(bm);
            evidence.push(BandSample {
                band,
                band_max: bm,
                running_max: running,
            });
        }
        let tag = if saw_divergent_sample {
            GrowthTag::LikelyInfinite
        } else {
            classify_bands(&evidence, cfg)
        };
        GrowthVerdict {
            tag,
            witness_q: None,
            evidence,
        }
    }
}

/// Numeric estimate of the characteristic supremum for a single instance.
pub fn numeric_sup(
    e: &Expr,
    phi: &[Expr],
    p: &Rat,
    q: &Rat,
    cfg: &GridConfig,
) -> GrowthVerdict {
    let instance = [(e.clone(), phi.to_vec())];
    numeric_sup_multi(&instance, p, q, cfg)
}

/// Numeric estimate of a supremum taken jointly over several numerator /
/// symbol instances (used for sups over the iterate index).
pub fn numeric_sup_multi(
    instances: &[(Expr, Vec<Expr>)],
    p: &Rat,
    q: &Rat,
    cfg: &GridConfig,
) -> GrowthVerdict {
    sup_profile(instances, cfg).verdict(p, q, cfg)
}

fn classify_bands(evidence: &[BandSample], cfg: &GridConfig) -> GrowthTag {
    if evidence.len() < 4 {
        return GrowthTag::Unknown;
    }
    let last = evidence[evidence.len() - 1].running_max;
    if last == f64::NEG_INFINITY {
        // Numerator vanished everywhere: the supremum is zero.
        return GrowthTag::LikelyFinite;
    }
    let base = evidence[evidence.len() - 4].running_max;
    if base == f64::NEG_INFINITY {
        return GrowthTag::Unknown;
    }
    let mean_delta = (last - base) / 3.0;
    if mean_delta > cfg.slope_up {
        GrowthTag::LikelyInfinite
    } else if mean_delta < cfg.slope_flat {
        GrowthTag::LikelyFinite
    } else {
        GrowthTag::Unknown
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SmallDecayTag {
    Certified,
    Refuted,
    Unknown,
}

/// Witness that `inf_{|x| >= m} (1+|x|)^m (1+|phi(x)|)^m |psi(x)|` is
/// positive, or the refusal to certify it.
#[derive(Debug, Clone)]
pub struct SmallDecayCertificate {
    pub m: Rat,
    pub lower_bound: f64,
    pub tag: SmallDecayTag,
}

/// Small-decay check. Exact for univariate polynomial weights: a nonzero
/// polynomial is bounded away from zero beyond its largest root, and both
/// `(1+|x|)` factors only help. Everything else falls back to a scan that
/// reports but cannot certify.
pub fn check_small_decay(psi: &Expr, phi: &[Expr], cfg: &GridConfig) -> SmallDecayCertificate {
    let d = phi.len();
    let psi_poly = as_polynomial(psi, d);
    match psi_poly {
        Some(p) if p.is_zero() => SmallDecayCertificate {
            m: Rat::one(),
            lower_bound: 0.0,
            tag: SmallDecayTag::Refuted,
        },
        Some(p) if d == 1 => {
            let m = match p.degree() {
                Some(deg) if deg >= 1 => root_bound(&p).expect("nonzero") + Rat::one(),
                _ => Rat::one(),
            };
            let lower = scan_decay_min(psi, phi, &m, cfg);
            SmallDecayCertificate {
                m,
                lower_bound: lower,
                tag: SmallDecayTag::Certified,
            }
        }
        _ => {
            let m = Rat::one();
            let lower = scan_decay_min(psi, phi, &m, cfg);
            SmallDecayCertificate {
                m,
                lower_bound: lower,
                tag: SmallDecayTag::Unknown,
            }
        }
    }
}

fn scan_decay_min(psi: &Expr, phi: &[Expr], m: &Rat, cfg: &GridConfig) -> f64 {
    let d = phi.len();
    let mf = rat_to_f64(m);
    let rays = ray_directions(d);
    let j_start = ((mf.max(1e-300).log2() * 8.0).ceil() as i64).max(cfg.j_min);
    let mut min_ln = f64::INFINITY;
    for j in j_start..=cfg.j_max {
        let ln_t = j as f64 / 8.0 * LN_2;
        for ray in &rays {
            let coords: Vec<LogReal> =
                ray.iter().map(|&s| LogReal::new(s, ln_t)).collect();
            let phi_vals: Vec<LogReal> =
                phi.iter().map(|c| eval_logreal_at(c, &coords)).collect();
            let ln_f = mf * ln_1p_norm(&coords)
                + mf * ln_1p_norm(&phi_vals)
                + eval_logreal_at(psi, &coords).ln_abs();
            if ln_f < min_ln {
                min_ln = ln_f;
            }
        }
    }
    if min_ln == f64::NEG_INFINITY {
        0.0
    } else {
        min_ln.exp()
    }
}
