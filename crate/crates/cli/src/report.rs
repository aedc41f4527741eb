//! Machine-readable and plain-text report rendering. The JSON layout is
//! schema-stable: field order is fixed by the struct definitions and all
//! float values are rendered as fixed-precision strings so that identical
//! inputs always produce byte-identical documents.

use serde::{Deserialize, Serialize};
use wcop_core::classifier::{ClassificationReport, EvidenceSection, PropertyVerdict};
use wcop_core::ClassifierConfig;

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct ToolInfo {
    pub name: String,
    pub version: String,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct ConfigEcho {
    pub alpha_max: usize,
    pub q_max: u32,
    pub n_max: usize,
    pub grid_j: i64,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct InputEcho {
    pub psi: String,
    pub phi: Vec<String>,
    pub dim: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct RationaleDoc {
    pub rule: String,
    pub note: String,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct VerdictDoc {
    pub value: String,
    pub rationale: Vec<RationaleDoc>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct BandDoc {
    pub band: i64,
    pub band_max: String,
    pub running_max: String,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct EvidenceDoc {
    pub label: String,
    pub bands: Vec<BandDoc>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct VerdictsDoc {
    pub acts_on_schwartz: VerdictDoc,
    pub power_bounded: VerdictDoc,
    pub topologizable: VerdictDoc,
    pub m_topologizable: VerdictDoc,
    pub iterates_to_zero: VerdictDoc,
    pub uniformly_mean_ergodic: VerdictDoc,
    pub cesaro_bounded: VerdictDoc,
    pub weak_supercyclicity_possible: VerdictDoc,
    pub universal_schwartz_weights: VerdictDoc,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct ReportDocument {
    pub tool: ToolInfo,
    pub config: ConfigEcho,
    pub input: InputEcho,
    pub verdicts: VerdictsDoc,
    pub evidence: Vec<EvidenceDoc>,
}

pub fn render_float(v: f64) -> String {
    if v == f64::INFINITY {
        "inf".to_string()
    } else if v == f64::NEG_INFINITY {
        "-inf".to_string()
    } else if v.is_nan() {
        "nan".to_string()
    } else if v.abs() >= 1e6 {
        format!("{v:.6e}")
    } else {
        format!("{v:.6}")
    }
}

fn verdict_doc(pv: &PropertyVerdict) -> VerdictDoc {
    VerdictDoc {
        value: pv.value.to_string(),
        rationale: pv
            .rationale
            .iter()
            .map(|r| RationaleDoc {
                rule: r.rule.clone(),
                note: r.note.clone(),
            })
            .collect(),
    }
}

fn evidence_doc(section: &EvidenceSection) -> EvidenceDoc {
    EvidenceDoc {
        label: section.label.clone(),
        bands: section
            .bands
            .iter()
            .map(|b| BandDoc {
                band: b.band,
                band_max: render_float(b.band_max),
                running_max: render_float(b.running_max),
            })
            .collect(),
    }
}

pub fn build_document(
    psi: &str,
    phi: &[String],
    dim: usize,
    cfg: &ClassifierConfig,
    report: &ClassificationReport,
) -> ReportDocument {
    ReportDocument {
        tool: ToolInfo {
            name: "wcop".to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
        },
        config: ConfigEcho {
            alpha_max: cfg.alpha_max,
            q_max: cfg.q_max,
            n_max: cfg.n_max,
            grid_j: cfg.grid.j_max,
        },
        input: InputEcho {
            psi: psi.to_string(),
            phi: phi.to_vec(),
            dim,
        },
        verdicts: VerdictsDoc {
            acts_on_schwartz: verdict_doc(&report.acts_on_schwartz),
            power_bounded: verdict_doc(&report.power_bounded),
            topologizable: verdict_doc(&report.topologizable),
            m_topologizable: verdict_doc(&report.m_topologizable),
            iterates_to_zero: verdict_doc(&report.iterates_to_zero),
            uniformly_mean_ergodic: verdict_doc(&report.uniformly_mean_ergodic),
            cesaro_bounded: verdict_doc(&report.cesaro_bounded),
            weak_supercyclicity_possible: verdict_doc(&report.weak_supercyclicity_possible),
            universal_schwartz_weights: verdict_doc(&report.universal_schwartz_weights),
        },
        evidence: report.evidence.iter().map(evidence_doc).collect(),
    }
}

pub fn to_json(doc: &ReportDocument) -> String {
    serde_json::to_string_pretty(doc).expect("report serialization cannot fail")
}

pub fn to_text(doc: &ReportDocument) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "{} {} — weighted composition operator analysis\n",
        doc.tool.name, doc.tool.version
    ));
    out.push_str(&format!("  psi = {}\n", doc.input.psi));
    for (i, p) in doc.input.phi.iter().enumerate() {
        if doc.input.phi.len() == 1 {
            out.push_str(&format!("  phi = {p}\n"));
        } else {
            out.push_str(&format!("  phi_{} = {p}\n", i + 1));
        }
    }
    out.push('\n');
    let rows = [
        ("acts on the space", &doc.verdicts.acts_on_schwartz),
        ("power bounded", &doc.verdicts.power_bounded),
        ("topologizable", &doc.verdicts.topologizable),
        ("m-topologizable", &doc.verdicts.m_topologizable),
        ("iterates -> 0", &doc.verdicts.iterates_to_zero),
        ("uniformly mean ergodic", &doc.verdicts.uniformly_mean_ergodic),
        ("Cesaro bounded", &doc.verdicts.cesaro_bounded),
        (
            "weak supercyclicity possible",
            &doc.verdicts.weak_supercyclicity_possible,
        ),
        (
            "acts for every rapidly decreasing weight",
            &doc.verdicts.universal_schwartz_weights,
        ),
    ];
    for (label, v) in rows {
        let rules: Vec<&str> = v.rationale.iter().map(|r| r.rule.as_str()).collect();
        out.push_str(&format!(
            "  {label:<42} {:<14} [{}]\n",
            v.value,
            rules.join(", ")
        ));
    }
    out.push('\n');
    out.push_str("rationale:\n");
    for (label, v) in rows {
        for r in &v.rationale {
            out.push_str(&format!("  {label}: ({}) {}\n", r.rule, r.note));
        }
    }
    if !doc.evidence.is_empty() {
        out.push_str("\nevidence (log-ratio per dyadic band):\n");
        for section in &doc.evidence {
            out.push_str(&format!("  {}\n", section.label));
            out.push_str("    band    band-max      running-max\n");
            let n = section.bands.len();
            for b in section.bands.iter().skip(n.saturating_sub(12)) {
                out.push_str(&format!(
                    "    {:>4}    {:>12}  {:>12}\n",
                    b.band, b.band_max, b.running_max
                ));
            }
        }
    }
    out
}
