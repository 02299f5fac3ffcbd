mod published;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Value};
use thiserror::Error;

use altchar_core::conjecture::{self, schur_map_json, CacheOutcome, ConjectureError, PredictionReport, SchurMap};
use altchar_core::dims::{self, DimSequence, DimsError};
use altchar_core::sl3char::{self, CheckError, CheckReport};

const MAX_CHECK_ORDER: usize = 32;
const MAX_PREDICT_ORDER: usize = 12;
const CACHE_ENV: &str = "ALTCHAR_CACHE_DIR";
const CACHE_FILE: &str = "prediction.json";

#[derive(Parser, Debug)]
#[command(name = "altchar", version, about = "Exact sl3-character checks for free alternative algebras")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    format: Format,
    /// Prediction cache file (default: $ALTCHAR_CACHE_DIR/prediction.json or ./.altchar-cache/prediction.json).
    #[arg(long, global = true)]
    cache: Option<PathBuf>,
    /// Ignore any cached prediction and recompute it.
    #[arg(long, global = true)]
    force: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Residues of the weighted Φ product for a dimension sequence.
    Check {
        /// p2, super, p3, solved:P or external:FILE (JSON array of dimensions).
        family: String,
        #[arg(long)]
        order: Option<usize>,
        /// Constant c in the prefactor q1 + c z q1^-1 q2^-1.
        #[arg(long, allow_hyphen_values = true)]
        prefactor: Option<i64>,
        /// Use exponents (-1)^n d_n in Φ.
        #[arg(long)]
        signed: Option<bool>,
    },
    /// Dimension sequence forced by vanishing residues, for p generators.
    Solve {
        p: u32,
        #[arg(long, default_value_t = 10)]
        order: usize,
    },
    /// Predicted Schur expansions of a_n and b_n.
    Predict {
        #[arg(long, default_value_t = 10)]
        order: usize,
    },
    /// Predicted dimension of a multihomogeneous component, e.g. `3,3,1`.
    Multidegree { composition: String },
    /// Run every published check and report failures.
    VerifyPaper,
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Dims(#[from] DimsError),
    #[error(transparent)]
    Check(#[from] CheckError),
    #[error(transparent)]
    Conjecture(#[from] ConjectureError),
    #[error("verification failed")]
    Verification(Value),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Dims(_) | CliError::Check(_) => 1,
            CliError::Verification(_) | CliError::Conjecture(_) => 2,
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(CliError::Verification(report)) => {
            print!("{}", render_verification(&report, cli.format));
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn cache_path(cli: &Cli) -> PathBuf {
    cli.cache.clone().unwrap_or_else(|| {
        let dir = std::env::var_os(CACHE_ENV).map(PathBuf::from).unwrap_or_else(|| PathBuf::from(".altchar-cache"));
        dir.join(CACHE_FILE)
    })
}

fn prediction(cli: &Cli, order: usize) -> Result<PredictionReport, CliError> {
    let (report, outcome) = conjecture::load_or_compute(&cache_path(cli), order, cli.force)?;
    if outcome == CacheOutcome::Recomputed {
        eprintln!("computed prediction through degree {order}");
    }
    Ok(report)
}

fn run(cli: &Cli) -> Result<String, CliError> {
    match &cli.command {
        Command::Check { family, order, prefactor, signed } => {
            let report = cmd_check(family, *order, *prefactor, *signed)?;
            Ok(match cli.format {
                Format::Json => json_line(&report.to_json()),
                Format::Table => check_table(&report),
            })
        }
        Command::Solve { p, order } => {
            check_bound("solve", *order, MAX_CHECK_ORDER)?;
            let values = dims::solve_dims(*p, *order)?;
            Ok(match cli.format {
                Format::Json => json_line(&json!({ "p": p, "order": order, "dims": values })),
                Format::Table => {
                    let mut s = format!("n  dim (p = {p})\n");
                    for (i, v) in values.iter().enumerate() {
                        s += &format!("{}  {v}\n", i + 1);
                    }
                    s
                }
            })
        }
        Command::Predict { order } => {
            check_bound("predict", *order, MAX_PREDICT_ORDER)?;
            let report = prediction(cli, *order)?;
            Ok(match cli.format {
                Format::Json => json_line(&predict_json(&report)),
                Format::Table => predict_table(&report),
            })
        }
        Command::Multidegree { composition } => {
            let content = parse_composition(composition)?;
            let n: usize = content.iter().sum();
            check_bound("multidegree", n, MAX_PREDICT_ORDER)?;
            let report = prediction(cli, n)?;
            let value = report
                .a_n(n)
                .multidegree_coeff(n, &content)
                .map_err(|e| CliError::Conjecture(ConjectureError::SymFunc(e)))?;
            Ok(match cli.format {
                Format::Json => json_line(&json!({ "multidegree": content, "degree": n, "dimension": value.to_string() })),
                Format::Table => format!("multidegree {composition}: {value}\n"),
            })
        }
        Command::VerifyPaper => {
            let report = prediction(cli, 10)?;
            let checks = published::run_all(&report);
            let summary = published::summary(&checks);
            if checks.iter().all(|c| c.passed) {
                Ok(render_verification(&summary, cli.format))
            } else {
                Err(CliError::Verification(summary))
            }
        }
    }
}

fn check_bound(what: &str, order: usize, max: usize) -> Result<(), CliError> {
    if order == 0 || order > max {
        return Err(CliError::Usage(format!("{what}: order must be in 1..={max}, got {order}")));
    }
    Ok(())
}

fn parse_family(family: &str, order: usize) -> Result<DimSequence, CliError> {
    Ok(match family {
        "p2" => DimSequence::assoc2(order),
        "super" => DimSequence::super_odd(order),
        "p3" => DimSequence::iltyakov3(order)?,
        _ => {
            if let Some(p) = family.strip_prefix("solved:") {
                let p: u32 = p.parse().map_err(|_| CliError::Usage(format!("bad generator count in {family:?}")))?;
                DimSequence::solved(p, order)?
            } else if let Some(path) = family.strip_prefix("external:") {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| CliError::Usage(format!("cannot read {path}: {e}")))?;
                DimSequence::from_json(&text)?
            } else {
                return Err(CliError::Usage(format!(
                    "unknown family {family:?} (expected p2, super, p3, solved:P or external:FILE)"
                )));
            }
        }
    })
}

fn default_order(family: &str) -> usize {
    match family {
        "p2" => 17,
        "super" => 10,
        "p3" => 7,
        _ => 10,
    }
}

fn cmd_check(
    family: &str,
    order: Option<usize>,
    prefactor: Option<i64>,
    signed: Option<bool>,
) -> Result<CheckReport, CliError> {
    let order = order.unwrap_or_else(|| default_order(family));
    check_bound("check", order, MAX_CHECK_ORDER)?;
    let dims = parse_family(family, order)?;
    if dims.len() < order {
        return Err(CliError::Usage(format!("{family}: {} dimensions given, order {order} needs {order}", dims.len())));
    }
    let c = prefactor.unwrap_or_else(|| dims.default_prefactor());
    let signed = signed.unwrap_or_else(|| dims.default_signed());
    Ok(sl3char::residue_check(&dims, c, order, signed)?)
}

fn parse_composition(s: &str) -> Result<Vec<usize>, CliError> {
    let parts: Result<Vec<usize>, _> = s.split(',').map(|t| t.trim().parse::<usize>()).collect();
    match parts {
        Ok(p) if !p.is_empty() && p.iter().sum::<usize>() > 0 => Ok(p),
        _ => Err(CliError::Usage(format!("bad composition {s:?}; expected e.g. 3,3,1"))),
    }
}

fn json_line(v: &Value) -> String {
    serde_json::to_string(v).expect("json") + "\n"
}

fn check_table(r: &CheckReport) -> String {
    let mut s = format!("family {}  order {}  prefactor {}  signed {}\n", r.family, r.order, r.prefactor_c, r.signed);
    s += "k  residue\n";
    for (k, v) in r.residues.iter().enumerate() {
        s += &format!("{k}  {v}\n");
    }
    match &r.first_nonzero {
        Some((k, v)) => s += &format!("first nonzero: k={k} residue={v}\n"),
        None => s += "all residues vanish\n",
    }
    s
}

fn predict_json(r: &PredictionReport) -> Value {
    let mut v = r.to_json();
    let negative: Vec<Value> = (1..=r.max_degree)
        .filter_map(|n| {
            let neg: SchurMap = r.negativity(n).into_iter().collect();
            (!neg.is_empty()).then(|| json!([n, schur_map_json(&neg)]))
        })
        .collect();
    v["negative"] = Value::Array(negative);
    v
}

fn schur_line(m: &SchurMap) -> String {
    if m.is_empty() {
        return "0".into();
    }
    let mut s = String::new();
    for (i, (lam, c)) in m.iter().enumerate() {
        let (sign, mag) = if *c < BigInt::from(0) { ("-", -c.clone()) } else { ("+", c.clone()) };
        if i == 0 {
            if sign == "-" {
                s.push('-');
            }
        } else {
            s += &format!(" {sign} ");
        }
        if mag != BigInt::from(1) {
            s += &mag.to_string();
        }
        s += &format!("s[{lam}]");
    }
    s
}

fn predict_table(r: &PredictionReport) -> String {
    let mut s = String::new();
    for n in 1..=r.max_degree {
        s += &format!("a_{n} = {}\n", schur_line(&r.a[n - 1]));
        s += &format!("b_{n} = {}\n", schur_line(&r.b[n - 1]));
        let neg = r.negativity(n);
        if !neg.is_empty() {
            let list: Vec<String> = neg.iter().map(|(p, c)| format!("s[{p}]:{c}")).collect();
            s += &format!("negative in a_{n}: {}\n", list.join(" "));
        }
    }
    s
}

fn render_verification(summary: &Value, format: Format) -> String {
    match format {
        Format::Json => json_line(summary),
        Format::Table => {
            let mut s = String::new();
            for c in summary["checks"].as_array().into_iter().flatten() {
                let status = if c["passed"].as_bool() == Some(true) { "PASS" } else { "FAIL" };
                s += &format!("{status} {}: {}\n", c["name"].as_str().unwrap_or(""), c["detail"].as_str().unwrap_or(""));
            }
            let failures = summary["failures"].as_array().map_or(0, Vec::len);
            s += &format!("{} checks, {failures} failed\n", summary["checks"].as_array().map_or(0, Vec::len));
            s
        }
    }
}
