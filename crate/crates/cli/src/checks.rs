//! Targeted probes of single criteria: one characteristic ratio, the two
//! iterate growth conditions (uniform and per-power), the small-decay
//! certificate, and the iterated-exponential domination inequality.

use serde::Serialize;
use std::collections::BTreeMap;
use wcop_core::expr::{differentiate_multi, eval_logreal, Expr};
use wcop_core::faadibruno::assemble_f_capped;
use wcop_core::growth::{
    check_small_decay, exists_q, numeric_sup, poly_sup_finite, GrowthTag, SmallDecayTag,
};
use wcop_core::iterates::IterateCache;
use wcop_core::rational::{rat_int, rat_to_f64, Rat};
use wcop_core::{as_polynomial, ClassifierConfig, MultiIndex};

use crate::report::{render_float, ToolInfo};

#[derive(Debug, Clone, Serialize)]
pub struct CheckRow {
    pub label: String,
    pub values: BTreeMap<String, String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckDocument {
    pub tool: ToolInfo,
    pub criterion: String,
    pub params: BTreeMap<String, String>,
    pub verdict: String,
    pub rows: Vec<CheckRow>,
    pub notes: Vec<String>,
}

pub struct CheckInputs {
    pub psi: Option<Expr>,
    pub psi_text: Option<String>,
    pub phi: Vec<Expr>,
    pub phi_text: String,
    pub dim: usize,
    pub alpha: MultiIndex,
    pub lambda: MultiIndex,
    pub p: Rat,
    pub q: Option<Rat>,
    pub n_range: (usize, usize),
    pub xrange: (f64, f64),
    pub step: f64,
    pub cfg: ClassifierConfig,
}

fn tool() -> ToolInfo {
    ToolInfo {
        name: "wcop".to_string(),
        version: env!("CARGO_PKG_VERSION").to_string(),
    }
}

fn row(label: impl Into<String>, pairs: &[(&str, String)]) -> CheckRow {
    CheckRow {
        label: label.into(),
        values: pairs
            .iter()
            .map(|(k, v)| (k.to_string(), v.clone()))
            .collect(),
    }
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

/// Trend of a series of grid maxima over the last three steps.
fn trend(series: &[f64]) -> &'static str {
    if series.contains(&f64::INFINITY) {
        return "diverging";
    }
    if !series.is_empty() && series.iter().all(|v| *v == f64::NEG_INFINITY) {
        // The numerator vanished at every probed power.
        return "stable";
    }
    // Judge the running maximum so that decreasing tails read as bounded.
    let mut running = Vec::new();
    let mut best = f64::NEG_INFINITY;
    for v in series.iter().copied().filter(|v| v.is_finite()) {
        best = best.max(v);
        running.push(best);
    }
    if running.len() < 3 {
        return "inconclusive";
    }
    let k = running.len();
    let mean_delta = (running[k - 1] - running[k - 3]) / 2.0;
    if mean_delta > 0.5 {
        "diverging"
    } else if mean_delta < 0.05 {
        "stable"
    } else {
        "inconclusive"
    }
}

/// One characteristic-ratio probe: exact for polynomial data, grid bands
/// otherwise.
pub fn check_acts(inp: &CheckInputs) -> Result<CheckDocument, String> {
    let psi = inp.psi.clone().ok_or("the acts check needs --psi")?;
    let cap = inp.cfg.alpha_max.max(inp.alpha.order());
    let f = assemble_f_capped(&psi, &inp.phi, &inp.alpha, &inp.lambda, cap)
        .map_err(|e| e.to_string())?;
    let mut params = BTreeMap::new();
    params.insert("alpha".into(), inp.alpha.to_string());
    params.insert("lambda".into(), inp.lambda.to_string());
    params.insert("p".into(), inp.p.to_string());
    let mut rows = Vec::new();
    let mut notes = Vec::new();
    let poly_f = if inp.dim == 1 {
        as_polynomial(&f, 1)
    } else {
        None
    };
    let poly_phi = if inp.dim == 1 {
        as_polynomial(&inp.phi[0], 1)
    } else {
        None
    };
    let verdict = match (&poly_f, &poly_phi) {
        (Some(g), Some(phi_p)) => {
            let witness = exists_q(g, phi_p, &inp.p);
            match &witness {
                Some(q) => notes.push(format!("smallest admissible exponent q = {q}")),
                None => notes.push("no exponent q makes this ratio finite".into()),
            }
            let q = inp
                .q
                .clone()
                .or(witness)
                .ok_or("no admissible q; pass --q to probe a specific one")?;
            let v = poly_sup_finite(g, phi_p, &inp.p, &q);
            params.insert("q".into(), q.to_string());
            let fmt_deg = |d: Option<usize>| d.map_or("-inf".to_string(), |v| v.to_string());
            rows.push(row(
                "exact",
                &[
                    ("numerator_degree", fmt_deg(g.degree())),
                    ("symbol_degree", fmt_deg(phi_p.degree())),
                    ("tag", v.tag.to_string()),
                ],
            ));
            v.tag.to_string()
        }
        _ => {
            let qs = match &inp.q {
                Some(q) => vec![q.clone()],
                None => q_ladder(inp.cfg.q_max),
            };
            let mut final_tag = GrowthTag::Unknown;
            let mut used_q = qs[0].clone();
            for q in &qs {
                let v = numeric_sup(&f, &inp.phi, &inp.p, q, &inp.cfg.grid);
                final_tag = v.tag;
                used_q = q.clone();
                if v.tag == GrowthTag::LikelyFinite {
                    for b in v.evidence.iter().rev().take(8).rev() {
                        rows.push(row(
                            format!("band {}", b.band),
                            &[
                                ("band_max", render_float(b.band_max)),
                                ("running_max", render_float(b.running_max)),
                            ],
                        ));
                    }
                    break;
                }
                if *q == *qs.last().unwrap() {
                    for b in v.evidence.iter().rev().take(8).rev() {
                        rows.push(row(
                            format!("band {}", b.band),
                            &[
                                ("band_max", render_float(b.band_max)),
                                ("running_max", render_float(b.running_max)),
                            ],
                        ));
                    }
                }
            }
            params.insert("q".into(), used_q.to_string());
            final_tag.to_string()
        }
    };
    Ok(CheckDocument {
        tool: tool(),
        criterion: "acts".into(),
        params,
        verdict,
        rows,
        notes,
    })
}

/// Shared engine for the iterate growth probes. `weighted` selects the
/// cocycle-derivative numerator; `per_power` switches between the uniform
/// supremum reading and the per-power reading.
fn check_iterates(
    inp: &CheckInputs,
    weighted: bool,
    per_power: bool,
    criterion: &str,
) -> Result<CheckDocument, String> {
    let mut cache = IterateCache::new(inp.phi.clone());
    let psi = if weighted {
        Some(inp.psi.clone().ok_or("this check needs --psi")?)
    } else {
        None
    };
    let (n_lo, n_hi) = inp.n_range;
    let p = if weighted { inp.p.clone() } else { Rat::from_integer(0.into()) };
    let mut params = BTreeMap::new();
    params.insert("alpha".into(), inp.alpha.to_string());
    params.insert("p".into(), p.to_string());
    params.insert("n".into(), format!("{n_lo}..{n_hi}"));

    // Gather numerators and symbols per power.
    let mut per_n: Vec<(usize, Expr, Vec<Expr>)> = Vec::new();
    for n in n_lo..=n_hi {
        let phin = cache.iterate_symbol(n).map_err(|e| e.to_string())?;
        let num = match &psi {
            Some(w) => {
                let wn = cache.weight_product(w, n).map_err(|e| e.to_string())?;
                differentiate_multi(&wn, &inp.alpha)
            }
            None => differentiate_multi(&phin[0], &inp.alpha),
        };
        per_n.push((n, num, phin));
    }

    // Pick the exponent: explicit, or the smallest exact one over the probed
    // powers, or a ladder scan.
    let all_poly = inp.dim == 1
        && per_n.iter().all(|(_, g, phin)| {
            as_polynomial(g, 1).is_some() && as_polynomial(&phin[0], 1).is_some()
        });
    let mut notes = Vec::new();
    let q = match &inp.q {
        Some(q) => q.clone(),
        None if all_poly => {
            let mut best = Rat::from_integer(0.into());
            let mut feasible = true;
            for (_, g, phin) in &per_n {
                let gp = as_polynomial(g, 1).unwrap();
                let pp = as_polynomial(&phin[0], 1).unwrap();
                match exists_q(&gp, &pp, &p) {
                    Some(qn) => {
                        if qn > best {
                            best = qn;
                        }
                    }
                    None => feasible = false,
                }
            }
            if !feasible {
                notes.push("no exponent is admissible for some probed power".into());
            }
            if best < Rat::from_integer(1.into()) {
                best = rat_int(1);
            }
            notes.push(format!("probing at the smallest uniform exponent q = {best}"));
            best
        }
        None => {
            let q = rat_int(inp.cfg.q_max as i64);
            notes.push(format!("probing at the largest configured exponent q = {q}"));
            q
        }
    };
    params.insert("q".into(), q.to_string());

    let mut rows = Vec::new();
    let mut maxima = Vec::new();
    let mut needed_q: Vec<f64> = Vec::new();
    let mut all_finite_per_power = true;
    for (n, g, phin) in &per_n {
        let mut exact_tag = None;
        let mut q_n = String::new();
        if all_poly {
            let gp = as_polynomial(g, 1).unwrap();
            let pp = as_polynomial(&phin[0], 1).unwrap();
            exact_tag = Some(poly_sup_finite(&gp, &pp, &p, &q).tag);
            if let Some(qn) = exists_q(&gp, &pp, &p) {
                needed_q.push(rat_to_f64(&qn));
                q_n = qn.to_string();
            }
        }
        let v = numeric_sup(g, phin, &p, &q, &inp.cfg.grid);
        let grid_max = v
            .evidence
            .last()
            .map(|b| b.running_max)
            .unwrap_or(f64::NEG_INFINITY);
        maxima.push(grid_max);
        let per_power_ok = match exact_tag {
            Some(GrowthTag::Finite) => true,
            Some(_) => false,
            None => v.tag == GrowthTag::LikelyFinite,
        };
        if !per_power_ok {
            all_finite_per_power = false;
        }
        let mut cells = vec![
            (
                "per_power",
                exact_tag.map_or(v.tag.to_string(), |t| t.to_string()),
            ),
            ("grid_max_log_ratio", render_float(grid_max)),
        ];
        if !q_n.is_empty() {
            cells.push(("smallest_q", q_n));
        }
        rows.push(row(format!("n={n}"), &cells));
    }
    let across = trend(&maxima);
    // Per-power exponents that keep growing mean no single exponent can
    // serve every power, even though each power passes on its own.
    let q_growth = trend(&needed_q);
    let verdict = if per_power {
        if !all_finite_per_power {
            "violated for some power".to_string()
        } else if q_growth == "diverging" {
            "each power passes, but only with ever larger exponents".to_string()
        } else {
            format!("satisfied per power at q = {q}")
        }
    } else {
        match (all_finite_per_power, across) {
            (true, "stable") => "likely-finite uniformly in the power".to_string(),
            (_, "diverging") => "likely-infinite: grid maxima grow across powers".to_string(),
            (false, _) => "violated for some power".to_string(),
            _ => "inconclusive across powers".to_string(),
        }
    };
    notes.push(format!("across-power trend of grid maxima: {across}"));
    if !needed_q.is_empty() {
        notes.push(format!("across-power trend of smallest exponents: {q_growth}"));
    }
    Ok(CheckDocument {
        tool: tool(),
        criterion: criterion.into(),
        params,
        verdict,
        rows,
        notes,
    })
}

pub fn check_pb_a(inp: &CheckInputs) -> Result<CheckDocument, String> {
    check_iterates(inp, true, false, "pb-a")
}

pub fn check_pb_b(inp: &CheckInputs) -> Result<CheckDocument, String> {
    check_iterates(inp, false, false, "pb-b")
}

pub fn check_top_a(inp: &CheckInputs) -> Result<CheckDocument, String> {
    check_iterates(inp, true, true, "top-a")
}

pub fn check_top_b(inp: &CheckInputs) -> Result<CheckDocument, String> {
    check_iterates(inp, false, true, "top-b")
}

pub fn check_small_decay_cmd(inp: &CheckInputs) -> Result<CheckDocument, String> {
    let psi = inp.psi.clone().ok_or("the smalldecay check needs --psi")?;
    let cert = check_small_decay(&psi, &inp.phi, &inp.cfg.grid);
    let verdict = match cert.tag {
        SmallDecayTag::Certified => "certified",
        SmallDecayTag::Refuted => "refuted",
        SmallDecayTag::Unknown => "unknown",
    };
    let mut params = BTreeMap::new();
    params.insert("m".into(), cert.m.to_string());
    let rows = vec![row(
        "certificate",
        &[
            ("m", cert.m.to_string()),
            ("observed_lower_bound", render_float(cert.lower_bound)),
        ],
    )];
    Ok(CheckDocument {
        tool: tool(),
        criterion: "smalldecay".into(),
        params,
        verdict: verdict.to_string(),
        rows,
        notes: Vec::new(),
    })
}

/// Verify, in log space over a linear grid, that the iterated-exponential
/// cocycle derivative is dominated by `phi_1 * phi_n^(2+alpha)` from some
/// power onward, and locate that power.
pub fn check_exp_inequality(inp: &CheckInputs) -> Result<CheckDocument, String> {
    let alpha = inp.alpha.order();
    let phi = Expr::exp(Expr::var(0));
    let mut cache = IterateCache::new(vec![phi.clone()]);
    let (n_lo, n_hi) = inp.n_range;
    let (x_lo, x_hi) = inp.xrange;
    let step = inp.step;
    if step <= 0.0 {
        return Err("the grid step must be positive".into());
    }
    let mut params = BTreeMap::new();
    params.insert("alpha".into(), alpha.to_string());
    params.insert("n".into(), format!("{n_lo}..{n_hi}"));
    params.insert("xrange".into(), format!("{x_lo}..{x_hi}"));
    params.insert("step".into(), render_float(step));

    let mut rows = Vec::new();
    let mut ok_by_n = Vec::new();
    for n in n_lo..=n_hi {
        let wn = cache.weight_product(&phi, n).map_err(|e| e.to_string())?;
        let lhs = differentiate_multi(&wn, &MultiIndex::new(vec![alpha]));
        let phin = cache.iterate_symbol(n).map_err(|e| e.to_string())?[0].clone();
        let mut violations = 0usize;
        let mut saturated = 0usize;
        let mut worst_gap = f64::NEG_INFINITY;
        let mut least_margin = f64::INFINITY;
        let mut x = x_lo;
        while x <= x_hi + 1e-12 {
            let l = eval_logreal(&lhs, &[x]).ln_abs();
            let r1 = eval_logreal(&phi, &[x]).ln_abs();
            let rn = eval_logreal(&phin, &[x]).ln_abs();
            let r = r1 + (2 + alpha) as f64 * rn;
            if l == f64::INFINITY && r == f64::INFINITY {
                saturated += 1;
            } else {
                let tol = 1e-9 * r.abs().max(1.0);
                if l > r + tol {
                    violations += 1;
                    worst_gap = worst_gap.max(l - r);
                } else {
                    least_margin = least_margin.min(r - l);
                }
            }
            x += step;
        }
        ok_by_n.push((n, violations == 0));
        rows.push(row(
            format!("n={n}"),
            &[
                ("violations", violations.to_string()),
                ("saturated_points", saturated.to_string()),
                ("worst_gap", render_float(worst_gap)),
                ("least_margin", render_float(least_margin)),
            ],
        ));
    }
    // Smallest power from which the inequality holds through the top of the
    // probed range.
    let mut n_alpha = None;
    for i in 0..ok_by_n.len() {
        if ok_by_n[i..].iter().all(|(_, ok)| *ok) {
            n_alpha = Some(ok_by_n[i].0);
            break;
        }
    }
    let verdict = match n_alpha {
        Some(n) => format!("holds on the grid for every n >= {n}"),
        None => "violated at the top of the probed range".to_string(),
    };
    let notes = match n_alpha {
        Some(n) => vec![format!("threshold power n_alpha = {n}")],
        None => vec![],
    };
    Ok(CheckDocument {
        tool: tool(),
        criterion: "exp-ineq".into(),
        params,
        verdict,
        rows,
        notes,
    })
}

pub fn to_json(doc: &CheckDocument) -> String {
    serde_json::to_string_pretty(doc).expect("check serialization cannot fail")
}

pub fn to_text(doc: &CheckDocument) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "{} {} — targeted check `{}`\n",
        doc.tool.name, doc.tool.version, doc.criterion
    ));
    for (k, v) in &doc.params {
        out.push_str(&format!("  {k} = {v}\n"));
    }
    out.push_str(&format!("  verdict: {}\n", doc.verdict));
    if !doc.rows.is_empty() {
        out.push('\n');
        for r in &doc.rows {
            let vals: Vec<String> = r.values.iter().map(|(k, v)| format!("{k}={v}")).collect();
            out.push_str(&format!("  {:<10} {}\n", r.label, vals.join("  ")));
        }
    }
    for n in &doc.notes {
        out.push_str(&format!("  note: {n}\n"));
    }
    out
}
