use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use lucas_squares::chabauty::{prime_of, run_case, CaseLabel, PrecisionPlan, Status};
use lucas_squares::descent::descent_report;
use lucas_squares::lucas::{search_square_terms, FamilyKind};
use lucas_squares::report::{full_run, verify_theorem2, Envelope};
use serde::Serialize;
use serde_json::Value;

const WORKERS_ENV: &str = "LUCAS_SQUARES_WORKERS";

#[derive(Parser, Debug)]
#[command(name = "lucas-squares", version, about = "Perfect squares in the Lucas sequences U_9 and U_12")]
struct Cli {
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Case {
    U12,
    U9,
}

impl From<Case> for CaseLabel {
    fn from(c: Case) -> Self {
        match c {
            Case::U12 => CaseLabel::U12,
            Case::U9 => CaseLabel::U9,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Family {
    U3,
    U6,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Brute-force scan of coprime nonzero (P, Q) with |P|, |Q| <= bound.
    Search {
        #[arg(long, default_value_t = 12)]
        n: u64,
        #[arg(long, default_value_t = 100)]
        bound: i64,
    },
    /// Square-constraint systems for U_12, their local verdicts and companion-curve evidence.
    Descent {
        /// Naive height bound for the companion point search.
        #[arg(long, default_value_t = 50)]
        height: i64,
    },
    /// Elliptic Chabauty for one case.
    Chabauty {
        #[arg(long, value_enum)]
        case: Case,
        /// p-adic working precision N; disables automatic escalation.
        #[arg(long)]
        precision: Option<u32>,
        /// Power-series truncation order M (only with --precision).
        #[arg(long, requires = "precision")]
        order: Option<usize>,
    },
    /// Search, descent and both Chabauty cases, compared against each other.
    Full {
        #[arg(long, default_value_t = 100)]
        bound: i64,
        #[arg(long, default_value_t = 50)]
        height: i64,
    },
    /// Check the parametric U_3 and U_6 square families on seeded random samples.
    VerifyTheorem2 {
        /// Restrict to one family; both by default.
        #[arg(long, value_enum)]
        family: Option<Family>,
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Serialize)]
struct Failure {
    error: String,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Err(e) = configure_workers() {
        eprintln!("error: {e:#}");
        return ExitCode::from(1);
    }
    match run(&cli) {
        Ok(Status::Complete) => ExitCode::SUCCESS,
        Ok(Status::Incomplete) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn configure_workers() -> anyhow::Result<()> {
    let Ok(raw) = std::env::var(WORKERS_ENV) else { return Ok(()) };
    let n: usize = raw.trim().parse().with_context(|| format!("{WORKERS_ENV}={raw:?} is not a count"))?;
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    Ok(())
}

fn run(cli: &Cli) -> anyhow::Result<Status> {
    match &cli.command {
        Command::Search { n, bound } => {
            anyhow::ensure!(*bound >= 1, "--bound must be positive");
            emit(cli, Envelope::new("search", Status::Complete, search_square_terms(*n, *bound)))
        }
        Command::Descent { height } => {
            anyhow::ensure!(*height >= 1, "--height must be positive");
            emit(cli, Envelope::new("descent", Status::Complete, descent_report(*height)))
        }
        Command::Chabauty { case, precision, order } => {
            let label = CaseLabel::from(*case);
            let plan = precision.map(|n| PrecisionPlan::fixed(prime_of(label), n, *order));
            match run_case(label, plan) {
                Ok(r) => emit(cli, Envelope::new("chabauty", r.status, r)),
                // Precision and series failures are method incompleteness, not usage errors.
                Err(e) => emit(cli, Envelope::new("chabauty", Status::Incomplete, Failure { error: e.to_string() })),
            }
        }
        Command::Full { bound, height } => {
            anyhow::ensure!(*bound >= 1 && *height >= 1, "--bound and --height must be positive");
            match full_run(*bound, *height, None, None) {
                Ok(r) => emit(cli, Envelope::new("full", r.status(), r)),
                Err(e) => emit(cli, Envelope::new("full", Status::Incomplete, Failure { error: e.to_string() })),
            }
        }
        Command::VerifyTheorem2 { family, count, seed } => {
            let kinds = match family {
                Some(Family::U3) => vec![FamilyKind::U3],
                Some(Family::U6) => vec![FamilyKind::U6],
                None => vec![FamilyKind::U3, FamilyKind::U6],
            };
            let reports: Vec<_> = kinds.into_iter().map(|k| verify_theorem2(k, *count, *seed)).collect();
            let status = if reports.iter().all(|r| r.status() == Status::Complete) {
                Status::Complete
            } else {
                Status::Incomplete
            };
            emit(cli, Envelope::new("verify-theorem2", status, reports))
        }
    }
}

fn emit<T: Serialize>(cli: &Cli, env: Envelope<T>) -> anyhow::Result<Status> {
    let value = serde_json::to_value(&env)?;
    let body = match cli.format {
        Format::Json => serde_json::to_string_pretty(&value)? + "\n",
        Format::Text => render_text(&value),
    };
    match &cli.output {
        Some(path) => std::fs::write(path, body).with_context(|| format!("writing {}", path.display()))?,
        None => std::io::stdout().lock().write_all(body.as_bytes())?,
    }
    Ok(env.status)
}

/// Indented outline of the same JSON value, so both formats carry the same facts.
fn render_text(v: &Value) -> String {
    let mut out = String::new();
    outline(v, 0, &mut out);
    out
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(a) if a.iter().all(|x| !x.is_array() && !x.is_object()) => {
            Some(format!("[{}]", a.iter().filter_map(scalar).collect::<Vec<_>>().join(", ")))
        }
        _ => None,
    }
}

fn outline(v: &Value, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                match scalar(x) {
                    Some(s) => out.push_str(&format!("{pad}{k}: {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        outline(x, depth + 1, out);
                    }
                }
            }
        }
        Value::Array(a) => {
            for (i, x) in a.iter().enumerate() {
                match scalar(x) {
                    Some(s) => out.push_str(&format!("{pad}- {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}- [{i}]\n"));
                        outline(x, depth + 1, out);
                    }
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar(other).unwrap_or_default())),
    }
}
