use clap::{Args, Parser, Subcommand};
use std::process::ExitCode;

use wcop_cli::checks::{self, CheckInputs};
use wcop_cli::corpus::{builtin_corpus, load_corpus_file, run_corpus};
use wcop_cli::{
    config_from, exit, parse_multiindex, parse_range_f64, parse_range_usize, parse_rat,
    report, run_classify, ClassifyOutcome, ClassifyRequest,
};
use wcop_core::rational::rat_int;
use wcop_core::{parse_expr, MultiIndex};

#[derive(Debug, Parser)]
#[command(
    name = "wcop",
    version,
    about = "analyze weighted composition operators f -> psi * (f o phi) on the Schwartz space"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Common {
    /// Highest derivative order probed in evidence mode.
    #[arg(long = "alpha-max", default_value_t = 4)]
    alpha_max: usize,

    /// Largest denominator exponent probed in evidence mode.
    #[arg(long = "q-max", default_value_t = 16)]
    q_max: u32,

    /// Largest power expanded symbolically in evidence mode.
    #[arg(long = "n-max", default_value_t = 8)]
    n_max: usize,

    /// Top grid index J of the geometric grid x = +-2^(j/8), j = -64..J.
    #[arg(long = "grid-J", default_value_t = 512)]
    grid_j: i64,

    /// Output format: text or json.
    #[arg(long, default_value = "text")]
    format: String,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Classify a weight/symbol pair against every implemented property.
    Classify {
        /// Weight expression.
        #[arg(long, allow_hyphen_values = true)]
        psi: String,

        /// Symbol expression(s); comma-separated for dimension > 1.
        #[arg(long, allow_hyphen_values = true)]
        phi: String,

        /// Ambient dimension; defaults to the number of symbol components.
        #[arg(long)]
        dim: Option<usize>,

        #[command(flatten)]
        common: Common,
    },

    /// Probe a single criterion and print its evidence.
    Check {
        /// One of: acts, pb-a, pb-b, top-a, top-b, smalldecay, exp-ineq.
        criterion: String,

        #[arg(long, allow_hyphen_values = true)]
        psi: Option<String>,

        #[arg(long, allow_hyphen_values = true)]
        phi: Option<String>,

        #[arg(long)]
        dim: Option<usize>,

        /// Derivative order (multi-index, comma-separated for dim > 1).
        #[arg(long)]
        alpha: Option<String>,

        /// Composition-derivative order for the acts check.
        #[arg(long)]
        lambda: Option<String>,

        /// Numerator exponent p.
        #[arg(long, allow_hyphen_values = true)]
        p: Option<String>,

        /// Denominator exponent q; searched when omitted.
        #[arg(long)]
        q: Option<String>,

        /// Power range lo..hi.
        #[arg(long)]
        n: Option<String>,

        /// Grid window lo..hi for the exp inequality.
        #[arg(long, allow_hyphen_values = true)]
        xrange: Option<String>,

        /// Grid step for the exp inequality.
        #[arg(long)]
        step: Option<f64>,

        #[command(flatten)]
        common: Common,
    },

    /// Run the built-in regression corpus (or one loaded from a file).
    Corpus {
        /// JSON file with corpus entries; the built-in corpus when omitted.
        #[arg(long)]
        file: Option<String>,

        #[command(flatten)]
        common: Common,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Classify {
            psi,
            phi,
            dim,
            common,
        } => classify_cmd(psi, phi, dim, common),
        Command::Check {
            criterion,
            psi,
            phi,
            dim,
            alpha,
            lambda,
            p,
            q,
            n,
            xrange,
            step,
            common,
        } => check_cmd(
            criterion, psi, phi, dim, alpha, lambda, p, q, n, xrange, step, common,
        ),
        Command::Corpus { file, common } => corpus_cmd(file, common),
    };
    ExitCode::from(code as u8)
}

fn bad_input(msg: &str) -> i32 {
    eprintln!("error: {msg}");
    exit::BAD_INPUT
}

fn classify_cmd(psi: String, phi: String, dim: Option<usize>, common: Common) -> i32 {
    let cfg = config_from(common.alpha_max, common.q_max, common.n_max, common.grid_j);
    let req = ClassifyRequest { psi, phi, dim, cfg };
    match run_classify(&req) {
        ClassifyOutcome::Report(doc) => {
            match common.format.as_str() {
                "json" => println!("{}", report::to_json(&doc)),
                _ => print!("{}", report::to_text(&doc)),
            }
            exit::OK
        }
        ClassifyOutcome::BadInput(msg) => bad_input(&msg),
        ClassifyOutcome::Inconsistent(msg) => {
            eprintln!("internal inconsistency: {msg}");
            exit::INTERNAL_INCONSISTENCY
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn check_cmd(
    criterion: String,
    psi: Option<String>,
    phi: Option<String>,
    dim: Option<usize>,
    alpha: Option<String>,
    lambda: Option<String>,
    p: Option<String>,
    q: Option<String>,
    n: Option<String>,
    xrange: Option<String>,
    step: Option<f64>,
    common: Common,
) -> i32 {
    let cfg = config_from(common.alpha_max, common.q_max, common.n_max, common.grid_j);
    // The exp inequality fixes its own symbol.
    let phi_text = match (criterion.as_str(), &phi) {
        ("exp-ineq", _) => "exp(x)".to_string(),
        (_, Some(t)) => t.clone(),
        (_, None) => return bad_input("this check needs --phi"),
    };
    let phi_texts: Vec<&str> = phi_text.split(',').collect();
    let d = dim.unwrap_or(phi_texts.len());
    if d == 0 || phi_texts.len() != d {
        return bad_input("the symbol component count must match the dimension");
    }
    let mut phi_exprs = Vec::new();
    for t in &phi_texts {
        match parse_expr(t, d) {
            Ok(e) => phi_exprs.push(e),
            Err(e) => return bad_input(&format!("--phi `{t}`: {e}")),
        }
    }
    let psi_expr = match &psi {
        Some(t) => match parse_expr(t, d) {
            Ok(e) => Some(e),
            Err(e) => return bad_input(&format!("--psi `{t}`: {e}")),
        },
        None => None,
    };
    let alpha_mi = match &alpha {
        Some(t) => match parse_multiindex(t, d) {
            Ok(m) => m,
            Err(e) => return bad_input(&e),
        },
        None => MultiIndex::zero(d),
    };
    let lambda_mi = match &lambda {
        Some(t) => match parse_multiindex(t, d) {
            Ok(m) => m,
            Err(e) => return bad_input(&e),
        },
        None => MultiIndex::zero(d),
    };
    let p_rat = match &p {
        Some(t) => match parse_rat(t) {
            Ok(r) => r,
            Err(e) => return bad_input(&e),
        },
        None => rat_int(1),
    };
    let q_rat = match &q {
        Some(t) => match parse_rat(t) {
            Ok(r) => Some(r),
            Err(e) => return bad_input(&e),
        },
        None => None,
    };
    let n_range = match &n {
        Some(t) => match parse_range_usize(t) {
            Ok(r) => r,
            Err(e) => return bad_input(&e),
        },
        None => (1, cfg.n_max),
    };
    let xr = match &xrange {
        Some(t) => match parse_range_f64(t) {
            Ok(r) => r,
            Err(e) => return bad_input(&e),
        },
        None => (-20.0, 5.0),
    };
    let inputs = CheckInputs {
        psi: psi_expr,
        psi_text: psi,
        phi: phi_exprs,
        phi_text: phi_text.clone(),
        dim: d,
        alpha: alpha_mi,
        lambda: lambda_mi,
        p: p_rat,
        q: q_rat,
        n_range,
        xrange: xr,
        step: step.unwrap_or(0.25),
        cfg,
    };
    let result = match criterion.as_str() {
        "acts" => checks::check_acts(&inputs),
        "pb-a" => checks::check_pb_a(&inputs),
        "pb-b" => checks::check_pb_b(&inputs),
        "top-a" => checks::check_top_a(&inputs),
        "top-b" => checks::check_top_b(&inputs),
        "smalldecay" => checks::check_small_decay_cmd(&inputs),
        "exp-ineq" => checks::check_exp_inequality(&inputs),
        other => return bad_input(&format!("unknown check criterion `{other}`")),
    };
    match result {
        Ok(doc) => {
            match common.format.as_str() {
                "json" => println!("{}", checks::to_json(&doc)),
                _ => print!("{}", checks::to_text(&doc)),
            }
            exit::OK
        }
        Err(msg) => bad_input(&msg),
    }
}

fn corpus_cmd(file: Option<String>, common: Common) -> i32 {
    let cfg = config_from(common.alpha_max, common.q_max, common.n_max, common.grid_j);
    let entries = match &file {
        Some(path) => match load_corpus_file(path) {
            Ok(e) => e,
            Err(msg) => return bad_input(&msg),
        },
        None => builtin_corpus(),
    };
    let outcome = run_corpus(&entries, &cfg);
    for line in &outcome.lines {
        println!("{line}");
    }
    if let Some(msg) = &outcome.internal_error {
        eprintln!("internal inconsistency: {msg}");
        return exit::INTERNAL_INCONSISTENCY;
    }
    if outcome.mismatches.is_empty() {
        println!("corpus: {} entries, all verdicts match", outcome.lines.len());
        exit::OK
    } else {
        println!("corpus: {} mismatch(es)", outcome.mismatches.len());
        for m in &outcome.mismatches {
            println!("  {m}");
        }
        exit::CORPUS_MISMATCH
    }
}
