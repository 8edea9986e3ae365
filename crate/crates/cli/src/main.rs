//! `qrr` — command-line front end for the truncated q-series verification
//! engine.
//!
//! Four subcommands:
//!
//! * `verify-table` — run the whole knot verification table (all fixed
//!   catalog entries plus the two parametric families up to `--p-max`),
//!   emitting one report per entry;
//! * `verify-identity <ID>` — check a single named identity instance;
//! * `compute` — expand one series (a named series, a catalog knot, or a
//!   multisum loaded from a JSON file) and print its coefficient list;
//! * `catalog` — list the available knot keys and identity ids.
//!
//! Reports stream as JSON Lines by default (`--format text` for a human
//! rendering).  Exit status: 0 when everything verified, 2 when any check
//! found a mismatch, 1 for configuration or input errors.

use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use qrr_core::classical::{
    ag_check, andy_check, euler1_check, euler2_check, h_even_unilateral_check, h_odd_product_check,
    h_series, jtp_check, negab_check, qbt_check, rr_check,
};
use qrr_core::error::{QError, Result};
use qrr_core::knots::{catalog_names, knot_spec, phi_series, verify_knot, MultisumSpec};
use qrr_core::report::IdentityReport;
use qrr_core::series::{poch_finite, poch_inf, Monomial, TruncSeries};
use qrr_core::transform::{
    b3_pair, bailey_chain_step, bailey_verify, blb3_check, genblb3_check, lemma_key_check,
    sumtosum_check,
};

/// Identity ids accepted by `verify-identity`, with the flags each consumes.
const IDENTITY_IDS: &[(&str, &str)] = &[
    ("rr", "--s"),
    ("ag", "--k --i"),
    ("euler1", "--m"),
    ("euler2", "--m"),
    ("andy", "--a"),
    ("qbt", "--t --k"),
    ("jtp", "--alpha --beta [--sigma]"),
    ("negab", "--a --b"),
    ("lemma-key", "--n --c"),
    ("blb3", ""),
    ("genblb3", "--l"),
    ("bailey", "[--steps] [--n-max]"),
    ("h-odd", "--b"),
    ("h-even", "--p"),
    ("sumtosum", "--i"),
];

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Parser)]
#[command(
    name = "qrr",
    version,
    about = "Exact truncated q-series verification of knot and partition identities"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Verify the full knot table: every fixed catalog entry plus the two
    /// parametric families for p = 1..=p_max.
    VerifyTable {
        /// Verify coefficients of q^e for all e < ORDER.
        #[arg(long, default_value_t = 50, env = "QRR_ORDER")]
        order: i64,
        /// Largest family parameter to include.
        #[arg(long, default_value_t = 5)]
        p_max: u32,
        /// Verify table entries on all available cores.
        #[arg(long)]
        parallel: bool,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Verify a single identity instance (see `catalog` for the id list).
    VerifyIdentity {
        /// Identity id, e.g. `rr`, `ag`, `lemma-key`.
        id: String,
        #[arg(long, default_value_t = 50, env = "QRR_ORDER")]
        order: i64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Shift parameter of the paired classical identities (`rr`).
        #[arg(long)]
        s: Option<u32>,
        /// Modulus-type parameter (`ag`), or polynomial degree cap (`qbt`).
        #[arg(long)]
        k: Option<u32>,
        /// Secondary index: a single integer for `ag`, a comma-separated
        /// list for `sumtosum`.
        #[arg(long)]
        i: Option<String>,
        /// Expansion index (`euler1`, `euler2`).
        #[arg(long)]
        m: Option<i64>,
        /// Integer offset (`andy`) or first exponent (`negab`).
        #[arg(long)]
        a: Option<i64>,
        /// Second exponent (`negab`) or odd modulus (`h-odd`).
        #[arg(long)]
        b: Option<i64>,
        /// Monomial parameter for `qbt`: `q`, `q^2`, `-q^3`, ...
        #[arg(long)]
        t: Option<String>,
        /// Quadratic coefficient of the bilateral exponent (`jtp`).
        #[arg(long)]
        alpha: Option<i64>,
        /// Linear coefficient of the bilateral exponent (`jtp`).
        #[arg(long)]
        beta: Option<i64>,
        /// Term sign for `jtp`: +1 or -1 (default -1, the alternating form).
        #[arg(long, default_value_t = -1, allow_hyphen_values = true)]
        sigma: i64,
        /// Nesting depth (`lemma-key`).
        #[arg(long)]
        n: Option<usize>,
        /// Comma-separated offset vector (`lemma-key`), e.g. `0,0,-1,2`.
        #[arg(long, allow_hyphen_values = true)]
        c: Option<String>,
        /// Chain depth (`genblb3`).
        #[arg(long)]
        l: Option<u32>,
        /// Number of chain steps applied before checking (`bailey`).
        #[arg(long, default_value_t = 0)]
        steps: u32,
        /// Largest sequence index checked (`bailey`).
        #[arg(long, default_value_t = 8)]
        n_max: u32,
        /// Even-modulus parameter (`h-even`).
        #[arg(long)]
        p: Option<i64>,
    },
    /// Expand a series and print its coefficient list `[c_0, ..., c_{N-1}]`.
    Compute {
        #[arg(long, default_value_t = 50, env = "QRR_ORDER")]
        order: i64,
        /// Catalog knot key; expands the normalized diagram series.
        #[arg(long, conflicts_with_all = ["series", "spec_file"])]
        knot: Option<String>,
        /// Family parameter for `--knot T2p` / `--knot Kp_pos`.
        #[arg(long, requires = "knot")]
        p: Option<u32>,
        /// Named series `NAME:PARAM`, e.g. `h:4`, `pochfin:3`, `invpochfin:5`,
        /// `pochinf:1`.
        #[arg(long, conflicts_with = "spec_file")]
        series: Option<String>,
        /// Path to a multisum description in JSON form; expands its
        /// normalized series.
        #[arg(long)]
        spec_file: Option<String>,
    },
    /// List the available knot keys and identity ids.
    Catalog {
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

fn validate_order(order: i64) -> Result<()> {
    if order < 1 {
        return Err(QError::InvalidOrder(order));
    }
    Ok(())
}

fn parse_monomial(text: &str) -> Result<Monomial> {
    let t = text.trim();
    let (neg, rest) = match t.strip_prefix('-') {
        Some(r) => (true, r.trim_start()),
        None => (false, t),
    };
    let e = if rest == "q" {
        1
    } else if let Some(p) = rest.strip_prefix("q^") {
        p.parse::<i64>().map_err(|_| {
            QError::BadParameter(format!("cannot parse monomial exponent in {text:?}"))
        })?
    } else {
        return Err(QError::BadParameter(format!(
            "cannot parse monomial {text:?} (expected q, q^E, -q, or -q^E)"
        )));
    };
    Ok(if neg {
        Monomial::neg_q_pow(e)
    } else {
        Monomial::q_pow(e)
    })
}

fn parse_i64_list(text: &str) -> Result<Vec<i64>> {
    let t = text.trim();
    if t.is_empty() {
        return Ok(Vec::new());
    }
    t.split(',')
        .map(|s| {
            s.trim()
                .parse::<i64>()
                .map_err(|_| QError::BadParameter(format!("cannot parse integer list {text:?}")))
        })
        .collect()
}

fn require<T>(value: Option<T>, flag: &str, id: &str) -> Result<T> {
    value.ok_or_else(|| QError::BadParameter(format!("identity {id:?} requires {flag}")))
}

fn emit(report: &IdentityReport, format: Format) {
    match format {
        Format::Json => println!("{}", report.to_json()),
        Format::Text => println!("{}", report.to_text()),
    }
    let _ = std::io::stdout().flush();
}

#[allow(clippy::too_many_arguments)]
fn run_identity(
    id: &str,
    order: i64,
    s: Option<u32>,
    k: Option<u32>,
    i: Option<String>,
    m: Option<i64>,
    a: Option<i64>,
    b: Option<i64>,
    t: Option<String>,
    alpha: Option<i64>,
    beta: Option<i64>,
    sigma: i64,
    n: Option<usize>,
    c: Option<String>,
    l: Option<u32>,
    steps: u32,
    n_max: u32,
    p: Option<i64>,
) -> Result<IdentityReport> {
    let as_u32 = |v: i64, flag: &str| -> Result<u32> {
        u32::try_from(v)
            .map_err(|_| QError::BadParameter(format!("{flag} must be a nonnegative integer")))
    };
    match id {
        "rr" => rr_check(require(s, "--s", id)?, order),
        "ag" => {
            let i_text = require(i, "--i", id)?;
            let i_val = i_text
                .trim()
                .parse::<u32>()
                .map_err(|_| QError::BadParameter(format!("cannot parse --i {i_text:?}")))?;
            ag_check(require(k, "--k", id)?, i_val, order)
        }
        "euler1" => euler1_check(require(m, "--m", id)?, order),
        "euler2" => euler2_check(require(m, "--m", id)?, order),
        "andy" => andy_check(require(a, "--a", id)?, order),
        "qbt" => {
            let mono = parse_monomial(&require(t, "--t", id)?)?;
            qbt_check(&mono, require(k, "--k", id)?)
        }
        "jtp" => {
            let sig = i8::try_from(sigma)
                .map_err(|_| QError::BadParameter("--sigma must be +1 or -1".into()))?;
            jtp_check(
                require(alpha, "--alpha", id)?,
                require(beta, "--beta", id)?,
                sig,
                order,
            )
        }
        "negab" => {
            let av = as_u32(require(a, "--a", id)?, "--a")?;
            let bv = as_u32(require(b, "--b", id)?, "--b")?;
            negab_check(av, bv)
        }
        "lemma-key" => {
            let cv = parse_i64_list(&require(c, "--c", id)?)?;
            lemma_key_check(require(n, "--n", id)?, &cv, order)
        }
        "blb3" => blb3_check(order),
        "genblb3" => genblb3_check(require(l, "--l", id)?, order),
        "bailey" => {
            let mut pair = b3_pair();
            for _ in 0..steps {
                pair = bailey_chain_step(&pair);
            }
            bailey_verify(&pair, n_max, order)
        }
        "h-odd" => h_odd_product_check(require(b, "--b", id)?, order),
        "h-even" => h_even_unilateral_check(require(p, "--p", id)?, order),
        "sumtosum" => {
            let entries = parse_i64_list(&require(i, "--i", id)?)?;
            sumtosum_check(&entries)
        }
        other => Err(QError::BadParameter(format!(
            "unknown identity id {other:?} (see `qrr catalog`)"
        ))),
    }
}

fn table_items(p_max: u32) -> Vec<(&'static str, Option<u32>)> {
    let mut items: Vec<(&'static str, Option<u32>)> = Vec::new();
    for name in catalog_names() {
        if matches!(name, "T2p" | "Kp_pos") {
            continue;
        }
        items.push((name, None));
    }
    for p in 1..=p_max {
        items.push(("T2p", Some(p)));
    }
    for p in 1..=p_max {
        items.push(("Kp_pos", Some(p)));
    }
    items
}

fn run_table(order: i64, p_max: u32, parallel: bool, format: Format) -> Result<bool> {
    validate_order(order)?;
    if p_max < 1 {
        return Err(QError::BadParameter(format!(
            "--p-max must be at least 1, got {p_max}"
        )));
    }
    let items = table_items(p_max);
    let mut all_verified = true;
    if parallel {
        use rayon::prelude::*;
        let reports: Vec<Result<IdentityReport>> = items
            .par_iter()
            .map(|&(name, p)| verify_knot(name, p, order))
            .collect();
        for report in reports {
            let report = report?;
            all_verified &= report.verified;
            emit(&report, format);
        }
    } else {
        for (name, p) in items {
            let report = verify_knot(name, p, order)?;
            all_verified &= report.verified;
            emit(&report, format);
        }
    }
    Ok(all_verified)
}

fn named_series(kind: &str, order: i64) -> Result<TruncSeries> {
    let (name, param) = kind.split_once(':').ok_or_else(|| {
        QError::BadParameter(format!("--series expects NAME:PARAM, got {kind:?}"))
    })?;
    let int_param = || -> Result<i64> {
        param
            .trim()
            .parse::<i64>()
            .map_err(|_| QError::BadParameter(format!("cannot parse series parameter {param:?}")))
    };
    match name {
        "h" => h_series(int_param()?, order),
        "pochfin" => {
            let n = u32::try_from(int_param()?)
                .map_err(|_| QError::BadParameter("pochfin index must be nonnegative".into()))?;
            Ok(poch_finite(&Monomial::q(), n, order))
        }
        "invpochfin" => {
            let n = u32::try_from(int_param()?).map_err(|_| {
                QError::BadParameter("invpochfin index must be nonnegative".into())
            })?;
            poch_finite(&Monomial::q(), n, order).invert()
        }
        "pochinf" => poch_inf(&Monomial::q_pow(int_param()?), order),
        other => Err(QError::BadParameter(format!(
            "unknown series name {other:?} (expected h, pochfin, invpochfin, pochinf)"
        ))),
    }
}

fn run_compute(
    order: i64,
    knot: Option<String>,
    p: Option<u32>,
    series: Option<String>,
    spec_file: Option<String>,
) -> Result<()> {
    validate_order(order)?;
    let s = match (knot, series, spec_file) {
        (Some(name), None, None) => {
            let spec = knot_spec(&name, p)?;
            phi_series(&spec, order)?
        }
        (None, Some(kind), None) => named_series(&kind, order)?,
        (None, None, Some(path)) => {
            let text = std::fs::read_to_string(&path).map_err(|e| {
                QError::BadParameter(format!("cannot read spec file {path:?}: {e}"))
            })?;
            let spec = MultisumSpec::from_json_str(&text)?;
            phi_series(&spec, order)?
        }
        _ => {
            return Err(QError::BadParameter(
                "compute needs exactly one of --knot, --series, --spec-file".into(),
            ))
        }
    };
    let coeffs = s.coeff_range(0, order);
    println!("{}", qrr_core::report::coeffs_to_json(&coeffs));
    Ok(())
}

fn run_catalog(format: Format) {
    let knots = catalog_names();
    match format {
        Format::Json => {
            let ids: Vec<&str> = IDENTITY_IDS.iter().map(|(id, _)| *id).collect();
            println!("{}", json!({ "knots": knots, "identities": ids }));
        }
        Format::Text => {
            println!("knot keys:");
            for name in knots {
                println!("  {name}");
            }
            println!("identity ids:");
            for (id, flags) in IDENTITY_IDS {
                if flags.is_empty() {
                    println!("  {id}");
                } else {
                    println!("  {id}  ({flags})");
                }
            }
        }
    }
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::VerifyTable {
            order,
            p_max,
            parallel,
            format,
        } => run_table(order, p_max, parallel, format),
        Command::VerifyIdentity {
            id,
            order,
            format,
            s,
            k,
            i,
            m,
            a,
            b,
            t,
            alpha,
            beta,
            sigma,
            n,
            c,
            l,
            steps,
            n_max,
            p,
        } => {
            validate_order(order)?;
            let _ = Instant::now();
            let report = run_identity(
                &id, order, s, k, i, m, a, b, t, alpha, beta, sigma, n, c, l, steps, n_max, p,
            )?;
            let verified = report.verified;
            emit(&report, format);
            Ok(verified)
        }
        Command::Compute {
            order,
            knot,
            p,
            series,
            spec_file,
        } => {
            run_compute(order, knot, p, series, spec_file)?;
            Ok(true)
        }
        Command::Catalog { format } => {
            run_catalog(format);
            Ok(true)
        }
    }
}

/// Exit status for an overall outcome: 0 when every check verified, 2 when
/// some check ran to completion but found a mismatch, 1 for errors.
fn exit_code_for(outcome: &Result<bool>) -> u8 {
    match outcome {
        Ok(true) => 0,
        Ok(false) => 2,
        Err(_) => 1,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version renderings are successful outputs; everything
            // else is a usage problem and must exit 1 (2 is reserved for
            // "checked and found a mismatch").
            use clap::error::ErrorKind;
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    let outcome = run(cli);
    if let Err(err) = &outcome {
        eprintln!("error: {err}");
    }
    ExitCode::from(exit_code_for(&outcome))
}
