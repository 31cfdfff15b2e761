//! Command-line front end.
//!
//! ```text
//! gaussint list
//! gaussint verify [--id ID] [--tol X] [--format json|csv|md] [--out PATH] [--param NAME=VALUE]...
//! gaussint eval "QUERY" [--tol X]
//! gaussint gamma-table [--n N[,N...]]
//! ```
//!
//! Exit codes: 0 success, 1 a verification or certification failed,
//! 2 usage error (bad flags, unknown id, malformed query).

use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::catalog::{self, CatalogEntry, ParamSet};
use crate::expr;
use crate::quadrature;
use crate::specfun::{self, constants::EULER_GAMMA};
use crate::verifier::{self, ParamsPolicy, ReportFormat, VerificationRecord, ORACLE_TOL_DIVISOR};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Tolerance used by `eval` for queries with no catalog match.
pub const DEFAULT_TOL: f64 = 1e-10;

#[derive(Debug, Parser)]
#[command(
    name = "gaussint",
    version,
    about = "Closed forms for Gaussian-like integrals, checked by quadrature"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List every catalog identity.
    List,
    /// Certify closed forms against the quadrature oracle.
    Verify {
        /// Only this entry.
        #[arg(long)]
        id: Option<String>,
        /// Tolerance for every record, replacing the entry's class.
        #[arg(long, value_parser = positive_f64)]
        tol: Option<f64>,
        #[arg(long, value_enum, default_value_t = Format::Md)]
        format: Format,
        /// Also write the report to this file.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Parameter binding for --id, e.g. --param n=4.
        #[arg(long = "param", value_parser = parse_binding)]
        params: Vec<(String, f64)>,
    },
    /// Evaluate an integral query, with its closed form when one is catalogued.
    Eval {
        query: String,
        #[arg(long, value_parser = positive_f64)]
        tol: Option<f64>,
    },
    /// Γ(1/n) against the asymptote n − γ.
    GammaTable {
        #[arg(long = "n", value_delimiter = ',', default_values_t = [2.0, 3.0, 4.0, 5.0, 10.0, 100.0])]
        n: Vec<f64>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Md,
}

impl From<Format> for ReportFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Json => ReportFormat::Json,
            Format::Csv => ReportFormat::Csv,
            Format::Md => ReportFormat::Markdown,
        }
    }
}

fn positive_f64(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v > 0.0 && v.is_finite() => Ok(v),
        _ => Err(format!("'{s}' is not a positive number")),
    }
}

fn parse_binding(s: &str) -> Result<(String, f64), String> {
    let (name, value) = s.split_once('=').ok_or_else(|| format!("'{s}' is not NAME=VALUE"))?;
    let value = value
        .trim()
        .parse::<f64>()
        .map_err(|_| format!("'{value}' is not a number"))?;
    Ok((name.trim().to_string(), value))
}

/// Runs the CLI on `args` (program name first) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    let result = match cli.command {
        Command::List => cmd_list(out),
        Command::Verify {
            id,
            tol,
            format,
            out: path,
            params,
        } => cmd_verify(id.as_deref(), tol, format.into(), path, &params, out),
        Command::Eval { query, tol } => cmd_eval(&query, tol, out),
        Command::GammaTable { n } => cmd_gamma_table(&n, out),
    };
    match result {
        Ok(code) => code,
        Err(CliError::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(CliError::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

enum CliError {
    Usage(String),
    Io(io::Error),
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

fn usage(msg: impl ToString) -> CliError {
    CliError::Usage(msg.to_string())
}

fn schema(entry: &CatalogEntry) -> String {
    if entry.params.is_empty() {
        return "-".into();
    }
    entry
        .params
        .iter()
        .map(|p| match p.constraint {
            catalog::Constraint::Real => p.name.to_string(),
            c => format!("{} {c}", p.name),
        })
        .collect::<Vec<_>>()
        .join(", ")
}

fn cmd_list(out: &mut dyn Write) -> Result<i32, CliError> {
    let write_rows = |out: &mut dyn Write, entries: &[CatalogEntry]| -> io::Result<()> {
        writeln!(out, "| id | params | closed form | reference | description |")?;
        writeln!(out, "|---|---|---|---|---|")?;
        for e in entries {
            writeln!(
                out,
                "| {} | {} | {} | {} | {} |",
                e.id,
                schema(e),
                e.closed_form_text,
                e.paper_ref,
                e.description
            )?;
        }
        Ok(())
    };
    writeln!(out, "Catalog ({} entries)\n", catalog::registry().len())?;
    write_rows(out, catalog::registry())?;
    writeln!(out, "\nAuxiliary entries\n")?;
    write_rows(out, catalog::auxiliary())?;
    Ok(EXIT_OK)
}

fn cmd_verify(
    id: Option<&str>,
    tol: Option<f64>,
    format: ReportFormat,
    path: Option<PathBuf>,
    bindings: &[(String, f64)],
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    let records: Vec<VerificationRecord> = match id {
        None => {
            if !bindings.is_empty() {
                return Err(usage("--param requires --id"));
            }
            verifier::verify_all_with(&ParamsPolicy::default(), tol)
        }
        Some(id) => {
            let entry = catalog::lookup(id).map_err(usage)?;
            let grid = if bindings.is_empty() {
                ParamsPolicy::default().grid_for(entry)
            } else {
                vec![bindings.iter().map(|(n, v)| (n.as_str(), *v)).collect::<ParamSet>()]
            };
            grid.iter()
                .map(|p| verifier::verify_entry(id, p, tol).map_err(usage))
                .collect::<Result<_, _>>()?
        }
    };
    let mut buffer = Vec::new();
    verifier::emit_report(&records, format, &mut buffer).map_err(|e| usage(e.to_string()))?;
    if let Some(path) = path {
        fs::write(&path, &buffer).map_err(|e| usage(format!("cannot write {}: {e}", path.display())))?;
    }
    out.write_all(&buffer)?;
    Ok(if records.iter().all(VerificationRecord::passed) {
        EXIT_OK
    } else {
        EXIT_FAILED
    })
}

fn caret_diagnostic(query: &str, e: &expr::ExprError) -> String {
    let pad = " ".repeat(e.position().saturating_sub(1));
    format!("{e}\n  {query}\n  {pad}^")
}

fn cmd_eval(query: &str, tol: Option<f64>, out: &mut dyn Write) -> Result<i32, CliError> {
    let parsed = expr::parse(query).map_err(|e| usage(caret_diagnostic(query, &e)))?;
    let normalized = expr::normalize(&parsed);
    let matched = expr::match_catalog(&normalized);
    let entry = matched.as_ref().and_then(|m| catalog::lookup(m.entry_id).ok());
    let tol = tol.or(entry.map(CatalogEntry::tolerance)).unwrap_or(DEFAULT_TOL);
    let interval = normalized.interval();
    let breakpoints = entry.map(|e| e.breakpoints).unwrap_or(&[]);

    writeln!(out, "query:       {normalized}")?;
    let compiled = expr::compile(&parsed.integrand);
    let oracle = quadrature::integrate_split(compiled.as_fn(), &interval, breakpoints, tol / ORACLE_TOL_DIVISOR);
    let (Some(m), Some(entry)) = (&matched, entry) else {
        writeln!(out, "match:       none (no closed form in catalog)")?;
        return match oracle {
            Ok(r) => {
                writeln!(out, "oracle:      {:.15}", r.value)?;
                if r.converged {
                    Ok(EXIT_OK)
                } else {
                    writeln!(
                        out,
                        "warning:     oracle did not reach {:.0e}",
                        tol / ORACLE_TOL_DIVISOR
                    )?;
                    Ok(EXIT_FAILED)
                }
            }
            Err(e) => {
                writeln!(out, "oracle:      failed: {e}")?;
                Ok(EXIT_FAILED)
            }
        };
    };
    if m.bound_params.is_empty() {
        writeln!(out, "match:       {}", m.entry_id)?;
    } else {
        writeln!(out, "match:       {} ({})", m.entry_id, m.bound_params)?;
    }
    let closed = match entry.closed_form(&m.bound_params) {
        Ok(v) => v,
        Err(e) => {
            writeln!(out, "closed form: failed: {e}")?;
            return Ok(EXIT_FAILED);
        }
    };
    writeln!(out, "closed form: {} = {closed:.15}", entry.closed_form_text)?;
    let r = match oracle {
        Ok(r) => r,
        Err(e) => {
            writeln!(out, "oracle:      failed: {e}")?;
            return Ok(EXIT_FAILED);
        }
    };
    let diff = (closed - r.value).abs();
    let certified = r.converged && diff <= tol;
    writeln!(out, "oracle:      {:.15}", r.value)?;
    writeln!(
        out,
        "abs diff:    {diff:.3e} (tol {tol:.0e}) {}",
        if certified { "certified" } else { "NOT certified" }
    )?;
    Ok(if certified { EXIT_OK } else { EXIT_FAILED })
}

/// Commonly quoted, digit-transposed figure for Γ(1/3).
const QUOTED_GAMMA_THIRD: f64 = 2.7689;

fn cmd_gamma_table(ns: &[f64], out: &mut dyn Write) -> Result<i32, CliError> {
    if let Some(bad) = ns.iter().find(|n| !n.is_finite() || **n < 2.0) {
        return Err(usage(format!("gamma-table needs n >= 2, got {bad}")));
    }
    writeln!(out, "| n | Γ(1/n) | n − γ | abs error |")?;
    writeln!(out, "|---|---|---|---|")?;
    let mut flagged = false;
    for &n in ns {
        let g = specfun::gamma(1.0 / n).map_err(usage)?;
        let approx = n - EULER_GAMMA;
        let mark = if n == 3.0 {
            flagged = true;
            " [^1]"
        } else {
            ""
        };
        writeln!(
            out,
            "| {n}{mark} | {g:.10} | {approx:.10} | {:.3e} |",
            (g - approx).abs()
        )?;
    }
    if flagged {
        writeln!(
            out,
            "\n[^1]: Γ(1/3) is sometimes quoted as {QUOTED_GAMMA_THIRD}; the computed value {:.10} differs from it by {:.4}.",
            specfun::gamma(1.0 / 3.0).map_err(usage)?,
            (specfun::gamma(1.0 / 3.0).map_err(usage)? - QUOTED_GAMMA_THIRD).abs()
        )?;
    }
    Ok(EXIT_OK)
}
