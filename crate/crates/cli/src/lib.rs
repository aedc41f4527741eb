//! Library surface behind the `wcop` binary, split out so the full pipeline
//! — argument interpretation, classification, rendering — is testable
//! in-process.

pub mod checks;
pub mod corpus;
pub mod report;

use wcop_core::classifier::{full_report, SymbolPair};
use wcop_core::rational::BigInt;
use wcop_core::{parse_expr, ClassifierConfig, Error, GridConfig, MultiIndex, Rat};

/// Exit codes shared by every subcommand.
pub mod exit {
    pub const OK: i32 = 0;
    pub const CORPUS_MISMATCH: i32 = 1;
    pub const BAD_INPUT: i32 = 2;
    pub const INTERNAL_INCONSISTENCY: i32 = 3;
}

pub fn config_from(alpha_max: usize, q_max: u32, n_max: usize, grid_j: i64) -> ClassifierConfig {
    ClassifierConfig {
        alpha_max,
        q_max,
        n_max,
        grid: GridConfig {
            j_max: grid_j,
            ..GridConfig::default()
        },
    }
}

/// Parse a rational CLI argument: `3`, `-2`, `3/2`, `1/8`.
pub fn parse_rat(text: &str) -> Result<Rat, String> {
    let t = text.trim();
    let parse_int = |s: &str| -> Result<BigInt, String> {
        s.trim()
            .parse()
            .map_err(|_| format!("`{s}` is not an integer"))
    };
    match t.split('/').collect::<Vec<_>>().as_slice() {
        [a] => Ok(Rat::from_integer(parse_int(a)?)),
        [a, b] => {
            let den = parse_int(b)?;
            if den == BigInt::from(0) {
                return Err("zero denominator".into());
            }
            Ok(Rat::new(parse_int(a)?, den))
        }
        _ => Err(format!("`{t}` is not a rational number")),
    }
}

/// Parse a multi-index argument: `2` or `2,1`.
pub fn parse_multiindex(text: &str, dim: usize) -> Result<MultiIndex, String> {
    let entries: Result<Vec<usize>, _> = text
        .split(',')
        .map(|t| t.trim().parse::<usize>())
        .collect();
    let entries = entries.map_err(|_| format!("`{text}` is not a multi-index"))?;
    if entries.len() != dim {
        return Err(format!(
            "multi-index `{text}` has {} entries but the dimension is {dim}",
            entries.len()
        ));
    }
    Ok(MultiIndex::new(entries))
}

/// Parse `lo..hi` ranges for powers.
pub fn parse_range_usize(text: &str) -> Result<(usize, usize), String> {
    let (lo, hi) = text
        .split_once("..")
        .ok_or_else(|| format!("`{text}` is not a range of the form lo..hi"))?;
    let lo: usize = lo.trim().parse().map_err(|_| "bad range start")?;
    let hi: usize = hi.trim().parse().map_err(|_| "bad range end")?;
    if lo > hi || lo == 0 {
        return Err(format!("range `{text}` must satisfy 1 <= lo <= hi"));
    }
    Ok((lo, hi))
}

pub fn parse_range_f64(text: &str) -> Result<(f64, f64), String> {
    let (lo, hi) = text
        .split_once("..")
        .ok_or_else(|| format!("`{text}` is not a range of the form lo..hi"))?;
    let lo: f64 = lo.trim().parse().map_err(|_| "bad range start")?;
    let hi: f64 = hi.trim().parse().map_err(|_| "bad range end")?;
    if lo >= hi {
        return Err(format!("range `{text}` must satisfy lo < hi"));
    }
    Ok((lo, hi))
}

pub struct ClassifyRequest {
    pub psi: String,
    pub phi: String,
    pub dim: Option<usize>,
    pub cfg: ClassifierConfig,
}

pub enum ClassifyOutcome {
    Report(Box<report::ReportDocument>),
    BadInput(String),
    Inconsistent(String),
}

/// The full classify pipeline used by both the binary and the tests.
pub fn run_classify(req: &ClassifyRequest) -> ClassifyOutcome {
    let phi_texts: Vec<String> = req.phi.split(',').map(|s| s.trim().to_string()).collect();
    let dim = req.dim.unwrap_or(phi_texts.len());
    if dim == 0 || phi_texts.len() != dim {
        return ClassifyOutcome::BadInput(format!(
            "the symbol needs exactly {dim} component(s), got {}",
            phi_texts.len()
        ));
    }
    let psi = match parse_expr(&req.psi, dim) {
        Ok(e) => e,
        Err(e) => return ClassifyOutcome::BadInput(format!("--psi: {e}")),
    };
    let mut phi = Vec::with_capacity(dim);
    for t in &phi_texts {
        match parse_expr(t, dim) {
            Ok(e) => phi.push(e),
            Err(e) => return ClassifyOutcome::BadInput(format!("--phi `{t}`: {e}")),
        }
    }
    let pair = SymbolPair::new(psi.clone(), phi.clone());
    match full_report(&pair, &req.cfg) {
        Ok(r) => {
            // Echo the normalized expressions, not the raw input.
            let psi_text = psi.to_string();
            let phi_norm: Vec<String> = phi.iter().map(|e| e.to_string()).collect();
            ClassifyOutcome::Report(Box::new(report::build_document(
                &psi_text, &phi_norm, dim, &req.cfg, &r,
            )))
        }
        Err(Error::InternalInconsistency(msg)) => ClassifyOutcome::Inconsistent(msg),
        Err(e) => ClassifyOutcome::BadInput(e.to_string()),
    }
}
