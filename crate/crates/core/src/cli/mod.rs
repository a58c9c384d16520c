//! Command-line front end: `solve`, `verify`, `bounds` and `cyclo`.

mod output;
mod parse;

pub use output::{
    coset_text, parse_coset_text, verify_text, CosetDocument, CosetRecord, DocumentError,
    TextCoset, VerifyDocument,
};
pub use parse::{parse_system, ParseError, ParseErrorKind, SystemDocument};

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::bounds::{bound_catalog, newton_polygon_area, BoundsError};
use crate::oracle::{cross_check, OracleError, DEFAULT_BUDGET};
use crate::poly::{cyclotomic_roots, PolyError};
use crate::solver::{variety_cosets, SolveError, SolveOptions};

/// Process exit statuses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok = 0,
    /// Unreadable input, parse failure, bad flags or an input the solver rejects.
    Input = 1,
    Budget = 2,
    Mismatch = 3,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("parse error at {0}")]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Bounds(#[from] BoundsError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("{0}")]
    Usage(String),
    #[error("cannot start thread pool: {0}")]
    Threads(#[from] rayon::ThreadPoolBuildError),
    #[error("cannot write output: {0}")]
    Output(#[from] std::io::Error),
    #[error("formatting failed")]
    Format(#[from] std::fmt::Error),
}

impl CliError {
    fn status(&self) -> Status {
        match self {
            CliError::Oracle(OracleError::Budget { .. }) => Status::Budget,
            _ => Status::Input,
        }
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "torsion",
    version,
    about = "Maximal torsion cosets of Laurent polynomial systems"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args, Debug)]
struct InputArgs {
    /// Input file; standard input when absent.
    #[arg(long)]
    input: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List the maximal torsion cosets of the system.
    Solve {
        #[command(flatten)]
        input: InputArgs,
        /// Work budget for level normalization.
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Solve, then compare against an exhaustive search of small orders.
    Verify {
        #[command(flatten)]
        input: InputArgs,
        /// Largest point order searched.
        #[arg(long, default_value_t = 12)]
        max_order: u64,
        /// Work budget for the search and for level normalization.
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Print the explicit bounds for `n` variables and degree `d`.
    Bounds {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        d: u64,
        /// Optional bivariate polynomial whose Newton polygon is measured.
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Roots of unity of a univariate polynomial.
    Cyclo {
        #[command(flatten)]
        input: InputArgs,
    },
}

/// Runs the command line, writing results to `out` and diagnostics to `err`.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{}", e.render());
                return Status::Input as i32;
            }
            let _ = write!(out, "{}", e.render());
            return Status::Ok as i32;
        }
    };
    let result = dispatch(&cli, stdin).and_then(|(status, text)| {
        out.write_all(text.as_bytes())?;
        Ok(status)
    });
    match result {
        Ok(status) => status as i32,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.status() as i32
        }
    }
}

fn dispatch(cli: &Cli, stdin: &mut dyn Read) -> Result<(Status, String), CliError> {
    let path = match &cli.command {
        Command::Solve { input, .. } | Command::Verify { input, .. } | Command::Cyclo { input } => {
            Some(input.input.as_ref())
        }
        Command::Bounds { input, .. } => input.as_ref().map(Some),
    };
    let text = path
        .map(|p| read_input(p, stdin))
        .transpose()?
        .unwrap_or_default();
    match cli.threads {
        Some(0) => Err(CliError::Usage("--threads must be positive".into())),
        Some(t) => {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(t).build()?;
            pool.install(|| execute(cli, &text))
        }
        None => execute(cli, &text),
    }
}

fn read_input(input: Option<&PathBuf>, stdin: &mut dyn Read) -> Result<String, CliError> {
    let mut text = String::new();
    match input {
        Some(path) => {
            text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
                path: path.display().to_string(),
                source,
            })?;
        }
        None => {
            stdin
                .read_to_string(&mut text)
                .map_err(|source| CliError::Io {
                    path: "standard input".into(),
                    source,
                })?;
        }
    }
    Ok(text)
}

fn solve_options(cli: &Cli, budget: Option<u64>) -> SolveOptions {
    let mut opts = SolveOptions::default();
    if let Some(b) = budget {
        opts.normalization_budget = b;
    }
    opts.parallel = cli.threads != Some(1);
    opts
}

fn execute(cli: &Cli, text: &str) -> Result<(Status, String), CliError> {
    let mut out = String::new();
    match &cli.command {
        Command::Solve { budget, .. } => {
            let doc = parse_system(text)?;
            log::info!(
                "solving {} polynomial(s) in {} variable(s)",
                doc.polys.len(),
                doc.nvars()
            );
            let report = variety_cosets(&doc.polys, &solve_options(cli, *budget))?;
            let listing = CosetDocument::from_report(&report, doc.level);
            match cli.format {
                Format::Json => writeln!(
                    &mut out,
                    "{}",
                    serde_json::to_string(&listing).expect("serializable")
                )?,
                Format::Text => write!(&mut out, "{}", coset_text(&listing))?,
            }
            Ok((Status::Ok, out))
        }
        Command::Verify {
            max_order, budget, ..
        } => {
            let doc = parse_system(text)?;
            let report = variety_cosets(&doc.polys, &solve_options(cli, *budget))?;
            let oracle = cross_check(
                &report,
                &doc.polys,
                *max_order,
                budget.unwrap_or(DEFAULT_BUDGET),
            )?;
            let listing = VerifyDocument::new(&report, &oracle, doc.level);
            match cli.format {
                Format::Json => writeln!(
                    &mut out,
                    "{}",
                    serde_json::to_string(&listing).expect("serializable")
                )?,
                Format::Text => write!(&mut out, "{}", verify_text(&listing))?,
            }
            let status = if oracle.is_clean() {
                Status::Ok
            } else {
                Status::Mismatch
            };
            Ok((status, out))
        }
        Command::Bounds { n, d, input } => {
            let mut catalog = bound_catalog(*n, *d)?;
            if input.is_some() {
                let doc = parse_system(text)?;
                catalog.vol2 = doc.polys.first().and_then(newton_polygon_area);
            }
            match cli.format {
                Format::Json => writeln!(
                    &mut out,
                    "{}",
                    serde_json::to_string(&catalog).expect("serializable")
                )?,
                Format::Text => write!(&mut out, "{catalog}")?,
            }
            Ok((Status::Ok, out))
        }
        Command::Cyclo { .. } => {
            let doc = parse_system(text)?;
            let [f] = doc.polys.as_slice() else {
                return Err(CliError::Usage("cyclo takes exactly one polynomial".into()));
            };
            if doc.nvars() != 1 {
                return Err(CliError::Usage(format!(
                    "cyclo needs a univariate polynomial, got {} variables",
                    doc.nvars()
                )));
            }
            let mut roots = cyclotomic_roots(f)?;
            roots.sort();
            let pairs: Vec<[String; 2]> = roots
                .iter()
                .map(|r| [r.numer().to_string(), r.denom().to_string()])
                .collect();
            match cli.format {
                Format::Json => writeln!(&mut out, "{}", serde_json::json!({ "roots": pairs }))?,
                Format::Text => {
                    let shown: Vec<String> =
                        pairs.iter().map(|[a, m]| format!("{a}/{m}")).collect();
                    writeln!(
                        &mut out,
                        "{} root(s) of unity: {}",
                        roots.len(),
                        shown.join(" ")
                    )?;
                }
            }
            Ok((Status::Ok, out))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str], input: &str) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("torsion").chain(args.iter().copied());
        let code = run(argv, &mut input.as_bytes(), &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    const LINE: &str = "vars: x y\npoly: x + y - 1\n";

    #[test]
    fn solve_json() {
        let (code, out, _) = call(&["solve", "--format", "json"], LINE);
        assert_eq!(code, 0);
        let doc = CosetDocument::from_json(&out).unwrap();
        assert_eq!((doc.n, doc.field, doc.cosets.len()), (2, 1, 2));
        assert!(doc.cosets.iter().all(|c| c.dim == 0 && c.certified));
        assert_eq!(
            doc.cosets[0].point,
            vec![["1".to_string(), "6".to_string()], ["5".into(), "6".into()]]
        );
    }

    #[test]
    fn verify_and_exit_codes() {
        let (code, out, _) = call(&["verify", "--max-order", "12"], LINE);
        assert_eq!(code, Status::Ok as i32);
        assert!(out.ends_with("ok\n"));
        let (code, _, err) = call(&["solve"], "poly: x + q +");
        assert_eq!(code, Status::Input as i32);
        assert!(err.contains("line 1"));
        let (code, _, _) = call(&["verify", "--max-order", "40", "--budget", "100"], LINE);
        assert_eq!(code, Status::Budget as i32);
        let (code, _, _) = call(&["frobnicate"], LINE);
        assert_eq!(code, Status::Input as i32);
        let (code, _, _) = call(&["--threads", "0", "solve"], LINE);
        assert_eq!(code, Status::Input as i32);
    }

    #[test]
    fn bounds_table() {
        let (code, out, _) = call(&["bounds", "--n", "2", "--d", "3"], "");
        assert_eq!(code, 0);
        assert!(out.contains("102"));
        let (_, json, _) = call(&["bounds", "--n", "2", "--d", "3", "--format", "json"], "");
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["plane_curve_bound"], "102");
    }

    #[test]
    fn cyclo_roots() {
        let (code, out, _) = call(&["cyclo", "--format", "json"], "poly: x^3 - 1");
        assert_eq!(code, 0);
        assert_eq!(out.trim(), r#"{"roots":[["0","1"],["1","3"],["2","3"]]}"#);
        let (code, _, _) = call(&["cyclo"], LINE);
        assert_eq!(code, Status::Input as i32);
    }
}
