//! Command-line front end. Every command emits one report document with the
//! same top-level layout: `command`, `input`, `result`, `checks`.
//!
//! Exit codes: 0 success, 1 a verification check failed, 2 usage error,
//! 3 resource limit.

use std::ffi::OsString;
use std::fmt::Write as _;

use clap::{Parser, Subcommand, ValueEnum};
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};

use crate::bipartite::{
    chain_from_degrees, enumerate_chain_candidates, ferrers_profile, DegreeSequence, DEFAULT_BUDGET,
};
use crate::cmatrix::{bound_est1, bound_maxest, convex_decomposition, CVector};
use crate::compound::chain_bounds;
use crate::error::Error;
use crate::extremal::{
    min_omega_continuous, min_omega_e3k1, min_omega_integer, verify_chain_dominance,
    verify_conjecture, Candidate, DominanceMode,
};
use crate::report::{all_passed, Check, CheckStatus};
use crate::spectra::{sqrt_e_gap, SPECTRAL_TOL};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFICATION_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

/// Environment variable overriding the enumeration budget.
pub const BUDGET_ENV: &str = "CHAINSPEC_BUDGET";

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MinMode {
    Integer,
    Continuous,
    E3k1,
}

#[derive(Debug, Parser)]
#[command(
    name = "chainspec",
    version,
    about = "Largest eigenvalue of bipartite chain graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: CliCommand,
}

fn parse_degrees(s: &str) -> std::result::Result<DegreeSequence, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

#[derive(Debug, Subcommand)]
enum CliCommand {
    /// Largest eigenvalue and bounds for the chain graph of a degree list.
    Lambda {
        #[arg(long, value_parser = parse_degrees)]
        degrees: DegreeSequence,
        #[arg(long, value_enum, default_value = "text")]
        format: OutputFormat,
    },
    /// omega bounds, C-matrix estimates and the vertex decomposition.
    Bounds {
        #[arg(long, value_parser = parse_degrees)]
        degrees: DegreeSequence,
        #[arg(long, value_enum, default_value = "text")]
        format: OutputFormat,
    },
    /// Minimise m1 m2 n1 n2 under the two-block edge identity.
    MinOmega {
        #[arg(long)]
        e: Option<u64>,
        #[arg(long)]
        r: Option<u64>,
        #[arg(long)]
        p: Option<u64>,
        #[arg(long)]
        q: Option<u64>,
        #[arg(long, value_enum, default_value = "integer")]
        mode: MinMode,
        #[arg(long)]
        k: Option<u64>,
        #[arg(long, value_enum, default_value = "text")]
        format: OutputFormat,
    },
    /// Rank all chain graphs in K(p,q,e) and check the extremal graph.
    VerifyConjecture {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: usize,
        #[arg(long)]
        e: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: OutputFormat,
    },
    /// Exhaustively check that the chain graph maximises lambda for its degrees.
    VerifyDominance {
        #[arg(long, value_parser = parse_degrees)]
        degrees: DegreeSequence,
        #[arg(long)]
        n_min: usize,
        #[arg(long)]
        n_max: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: OutputFormat,
    },
    /// List the chain candidates of K(p,q,e).
    Enumerate {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: usize,
        #[arg(long)]
        e: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: OutputFormat,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub enum Command {
    Lambda {
        degrees: DegreeSequence,
    },
    Bounds {
        degrees: DegreeSequence,
    },
    MinOmega {
        mode: MinMode,
        e: u64,
        r: u64,
        p: u64,
        q: u64,
        k: u64,
    },
    VerifyConjecture {
        p: usize,
        q: usize,
        e: usize,
    },
    VerifyDominance {
        degrees: DegreeSequence,
        n_min: usize,
        n_max: usize,
    },
    Enumerate {
        p: usize,
        q: usize,
        e: usize,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Lambda { .. } => "lambda",
            Command::Bounds { .. } => "bounds",
            Command::MinOmega { .. } => "min-omega",
            Command::VerifyConjecture { .. } => "verify-conjecture",
            Command::VerifyDominance { .. } => "verify-dominance",
            Command::Enumerate { .. } => "enumerate",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub output_format: OutputFormat,
    pub tolerance: f64,
    pub budget: u64,
}

/// A rejected command line; `message` names the offending flag.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UsageError {
    pub message: String,
    pub exit_code: i32,
}

fn usage(message: impl Into<String>) -> UsageError {
    UsageError {
        message: message.into(),
        exit_code: EXIT_USAGE,
    }
}

fn budget_from_env() -> std::result::Result<u64, UsageError> {
    match std::env::var(BUDGET_ENV) {
        Ok(v) => v.trim().parse().map_err(|_| {
            usage(format!(
                "{BUDGET_ENV} must be a nonnegative integer, got {v:?}"
            ))
        }),
        Err(_) => Ok(DEFAULT_BUDGET),
    }
}

/// Parses `argv` (program name first). Help and version requests come back
/// as a `UsageError` with exit code 0 and the rendered text as message.
pub fn parse_args<I, T>(argv: I) -> std::result::Result<RunConfig, UsageError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(argv).map_err(|e| {
        use clap::error::ErrorKind;
        let code = match e.kind() {
            ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
            _ => EXIT_USAGE,
        };
        UsageError {
            message: e.render().to_string(),
            exit_code: code,
        }
    })?;

    let (command, output_format) = match cli.command {
        CliCommand::Lambda { degrees, format } => (Command::Lambda { degrees }, format),
        CliCommand::Bounds { degrees, format } => (Command::Bounds { degrees }, format),
        CliCommand::MinOmega {
            e,
            r,
            p,
            q,
            mode,
            k,
            format,
        } => {
            let cmd = match mode {
                MinMode::E3k1 => {
                    let k = k.ok_or_else(|| usage("--mode e3k1 requires --k"))?;
                    Command::MinOmega {
                        mode,
                        e: 3 * k + 1,
                        r: 3,
                        p: 3 * k + 1,
                        q: 3 * k + 1,
                        k,
                    }
                }
                MinMode::Integer | MinMode::Continuous => {
                    let e = e.ok_or_else(|| usage("missing required flag --e"))?;
                    let r = r.ok_or_else(|| usage("missing required flag --r"))?;
                    if p.is_some() != q.is_some() {
                        return Err(usage("--p and --q must be given together"));
                    }
                    let (p, q) = (p.unwrap_or(e), q.unwrap_or(e));
                    Command::MinOmega {
                        mode,
                        e,
                        r,
                        p,
                        q,
                        k: 0,
                    }
                }
            };
            (cmd, format)
        }
        CliCommand::VerifyConjecture { p, q, e, format } => {
            (Command::VerifyConjecture { p, q, e }, format)
        }
        CliCommand::VerifyDominance {
            degrees,
            n_min,
            n_max,
            format,
        } => (
            Command::VerifyDominance {
                degrees,
                n_min,
                n_max,
            },
            format,
        ),
        CliCommand::Enumerate { p, q, e, format } => (Command::Enumerate { p, q, e }, format),
    };
    if output_format == OutputFormat::Csv
        && !matches!(
            command,
            Command::VerifyConjecture { .. } | Command::Enumerate { .. }
        )
    {
        return Err(usage(
            "--format csv is only available for candidate rankings",
        ));
    }
    Ok(RunConfig {
        command,
        output_format,
        tolerance: SPECTRAL_TOL,
        budget: budget_from_env()?,
    })
}

/// Rendered report plus exit code.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub exit_code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Document {
    input: Value,
    result: Value,
    checks: Vec<Check>,
    ranking: Option<Vec<Candidate>>,
}

pub fn run(config: &RunConfig) -> Outcome {
    match build_document(config) {
        Ok(doc) => {
            let failed = doc.checks.iter().any(|c| c.status == CheckStatus::Fail);
            let stdout = match config.output_format {
                OutputFormat::Json => to_json_string(&document_value(config, &doc)),
                OutputFormat::Csv => render_csv(doc.ranking.as_deref().unwrap_or(&[])),
                OutputFormat::Text => render_text(config, &doc),
            };
            let exit_code = if failed {
                EXIT_VERIFICATION_FAILED
            } else {
                EXIT_OK
            };
            Outcome {
                exit_code,
                stdout,
                stderr: String::new(),
            }
        }
        Err(err) => {
            let exit_code = match err {
                Error::ResourceLimit { .. } => EXIT_RESOURCE,
                Error::VerificationFailed(_) => EXIT_VERIFICATION_FAILED,
                _ => EXIT_USAGE,
            };
            Outcome {
                exit_code,
                stdout: String::new(),
                stderr: format!("error: {err}\n"),
            }
        }
    }
}

/// Parses and runs; writes to the process streams and returns the exit code.
pub fn main_with_args<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let config = match parse_args(argv) {
        Ok(c) => c,
        Err(e) => {
            if e.exit_code == EXIT_OK {
                print!("{}", e.message);
            } else {
                eprint!("{}", e.message);
                if !e.message.ends_with('\n') {
                    eprintln!();
                }
            }
            return e.exit_code;
        }
    };
    let out = run(&config);
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    out.exit_code
}

fn build_document(config: &RunConfig) -> crate::Result<Document> {
    let tol = config.tolerance;
    match &config.command {
        Command::Lambda { degrees } => {
            let b = chain_bounds(degrees)?;
            let chain = chain_from_degrees(degrees);
            let gap = sqrt_e_gap(&chain)?;
            let result = json!({
                "degrees": degrees.to_string(),
                "m": chain.rows(),
                "n": chain.cols(),
                "e": b.e,
                "h": b.h,
                "lambda_max": b.sigma1_sq.sqrt(),
                "lambda_max_sq": b.sigma1_sq,
                "sigma2": b.sigma2_sq.sqrt(),
                "sqrt_e": (b.e as f64).sqrt(),
                "sqrt_e_gap": gap.gap,
                "complete": gap.complete,
                "omega": b.omega,
                "omega_prime": b.omega_prime,
                "omega_star": b.omega_star,
                "omega_star_value": b.omega_star_value,
                "upper_bound_sq": b.upper_bound,
                "slack": b.slack,
            });
            let checks = vec![
                Check::from_bool("sqrt_e_bound", gap.consistent(), Some(gap.gap)),
                Check::from_bool(
                    "upper_bound_dominates",
                    b.sigma1_sq <= b.upper_bound + tol,
                    Some(b.slack),
                ),
            ];
            Ok(Document {
                input: json!({ "degrees": degrees.to_string() }),
                result,
                checks,
                ranking: None,
            })
        }
        Command::Bounds { degrees } => {
            let b = chain_bounds(degrees)?;
            let c = CVector::from_degrees(degrees);
            let est1 = bound_est1(&c);
            let mut checks = vec![
                Check::from_bool(
                    "omega_star_below_sigma_product",
                    b.omega_star_value <= b.sigma_product_sq + tol,
                    Some(b.sigma_product_sq - b.omega_star_value),
                ),
                Check::from_bool(
                    "upper_bound_dominates",
                    b.sigma1_sq <= b.upper_bound + tol,
                    Some(b.slack),
                ),
                Check::from_bool(
                    "est1_dominates",
                    b.sigma1_sq <= est1 + tol,
                    Some(est1 - b.sigma1_sq),
                ),
            ];
            let mut result = serde_json::to_value(&b).expect("serializable");
            result["est1"] = json!(est1);
            if ferrers_profile(degrees).h() >= 2 {
                let maxest = bound_maxest(&c)?;
                result["maxest"] = json!(maxest);
                checks.push(Check::from_bool(
                    "maxest_between",
                    b.sigma1_sq <= maxest + tol && maxest <= est1 + tol,
                    Some(maxest - b.sigma1_sq),
                ));
                let dec = convex_decomposition(degrees)?;
                let vertex = dec.vertex_eigenvalues();
                let best = vertex.iter().copied().fold(f64::NEG_INFINITY, f64::max);
                checks.push(Check::from_bool(
                    "vertex_eigenvalue_bound",
                    b.sigma1_sq <= best + tol,
                    Some(best - b.sigma1_sq),
                ));
                let mut dv = serde_json::to_value(&dec).expect("serializable");
                dv["vertex_eigenvalues"] = json!(vertex);
                result["decomposition"] = dv;
            }
            Ok(Document {
                input: json!({ "degrees": degrees.to_string() }),
                result,
                checks,
                ranking: None,
            })
        }
        Command::MinOmega {
            mode,
            e,
            r,
            p,
            q,
            k,
        } => {
            let input = match mode {
                MinMode::E3k1 => json!({ "mode": "e3k1", "k": k }),
                MinMode::Integer => json!({ "mode": "integer", "e": e, "r": r, "p": p, "q": q }),
                MinMode::Continuous => json!({ "mode": "continuous", "e": e, "r": r }),
            };
            let (result, checks) = match mode {
                MinMode::Integer => {
                    let m = min_omega_integer(*e, *r, *p, *q)?;
                    (serde_json::to_value(&m).expect("serializable"), Vec::new())
                }
                MinMode::E3k1 => {
                    let m = min_omega_e3k1(*k)?;
                    let ok = m.value == 2 * k;
                    (
                        serde_json::to_value(&m).expect("serializable"),
                        vec![Check::from_bool("minimum_is_2k", ok, None)],
                    )
                }
                MinMode::Continuous => {
                    let m = min_omega_continuous(*r as usize, *e as usize)?;
                    let ok = m.solutions.len() == 2;
                    let mut v = serde_json::to_value(&m).expect("serializable");
                    v["value_f64"] = json!(m.value.to_f64());
                    (
                        v,
                        vec![Check::from_bool("closed_form_solutions_valid", ok, None)],
                    )
                }
            };
            Ok(Document {
                input,
                result,
                checks,
                ranking: None,
            })
        }
        Command::VerifyConjecture { p, q, e } => {
            let rep = verify_conjecture(*p, *q, *e)?;
            let mut result = serde_json::to_value(&rep).expect("serializable");
            let checks = rep.checks.clone();
            if let Value::Object(map) = &mut result {
                for key in ["p", "q", "e", "checks"] {
                    map.shift_remove(key);
                }
            }
            Ok(Document {
                input: json!({ "p": p, "q": q, "e": e }),
                result,
                checks,
                ranking: Some(rep.candidates),
            })
        }
        Command::VerifyDominance {
            degrees,
            n_min,
            n_max,
        } => {
            let rep = verify_chain_dominance(
                degrees,
                *n_min,
                *n_max,
                config.budget,
                DominanceMode::ColumnClasses,
            )?;
            let checks = rep
                .rows
                .iter()
                .map(|r| Check::new(format!("chain_maximal_n{}", r.n), r.status, r.gap))
                .collect();
            Ok(Document {
                input: json!({ "degrees": degrees.to_string(), "n_min": n_min, "n_max": n_max }),
                result: serde_json::to_value(&rep).expect("serializable"),
                checks,
                ranking: None,
            })
        }
        Command::Enumerate { p, q, e } => {
            let cands = enumerate_chain_candidates(*p, *q, *e)?
                .iter()
                .map(Candidate::evaluate)
                .collect::<crate::Result<Vec<_>>>()?;
            Ok(Document {
                input: json!({ "p": p, "q": q, "e": e }),
                result: json!({ "count": cands.len(), "candidates": cands }),
                checks: Vec::new(),
                ranking: Some(cands),
            })
        }
    }
}

fn document_value(config: &RunConfig, doc: &Document) -> Value {
    let mut top = Map::new();
    top.insert("command".into(), json!(config.command.name()));
    top.insert("input".into(), doc.input.clone());
    top.insert("result".into(), doc.result.clone());
    top.insert(
        "checks".into(),
        serde_json::to_value(&doc.checks).expect("serializable"),
    );
    round_floats(Value::Object(top))
}

/// Rounds a float to 15 significant digits.
pub fn round_sig15(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.14e}").parse().expect("formatted float parses")
}

/// Applies [`round_sig15`] to every float so that emitted JSON survives a
/// parse/serialize round trip byte for byte.
pub fn round_floats(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => {
            json!(round_sig15(n.as_f64().expect("f64 number")))
        }
        Value::Array(a) => Value::Array(a.into_iter().map(round_floats).collect()),
        Value::Object(m) => {
            Value::Object(m.into_iter().map(|(k, v)| (k, round_floats(v))).collect())
        }
        other => other,
    }
}

pub fn to_json_string(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn render_csv(cands: &[Candidate]) -> String {
    let mut out = String::from("degrees,lambda_max,omega_star,upper_bound\n");
    for c in cands {
        let _ = writeln!(
            out,
            "\"{}\",{},{},{}",
            c.degrees,
            round_sig15(c.lambda_max),
            c.omega_star,
            round_sig15(c.upper_bound)
        );
    }
    out
}

fn render_text(config: &RunConfig, doc: &Document) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "command: {}", config.command.name());
    let _ = writeln!(out, "input: {}", round_floats(doc.input.clone()));
    if let Some(cands) = &doc.ranking {
        let _ = writeln!(
            out,
            "{:<24} {:>18} {:>12} {:>18}",
            "degrees", "lambda_max", "omega*", "upper_bound^2"
        );
        for c in cands {
            let _ = writeln!(
                out,
                "{:<24} {:>18.12} {:>12} {:>18.12}",
                c.degrees.to_string(),
                c.lambda_max,
                c.omega_star.to_string(),
                c.upper_bound
            );
        }
    }
    if let Value::Object(map) = round_floats(doc.result.clone()) {
        for (k, v) in map {
            if k == "candidates" && doc.ranking.is_some() {
                continue;
            }
            match v {
                Value::String(s) => {
                    let _ = writeln!(out, "{k}: {s}");
                }
                other => {
                    let _ = writeln!(out, "{k}: {other}");
                }
            }
        }
    }
    for c in &doc.checks {
        let status = match c.status {
            CheckStatus::Pass => "PASS",
            CheckStatus::Fail => "FAIL",
            CheckStatus::Indistinguishable => "INDISTINGUISHABLE",
        };
        match c.margin {
            Some(m) => {
                let _ = writeln!(out, "[{status}] {} (margin {:e})", c.name, round_sig15(m));
            }
            None => {
                let _ = writeln!(out, "[{status}] {}", c.name);
            }
        }
    }
    if !doc.checks.is_empty() {
        let verdict = if all_passed(&doc.checks) {
            "all checks passed"
        } else {
            "not all checks passed"
        };
        let _ = writeln!(out, "{verdict}");
    }
    out
}
