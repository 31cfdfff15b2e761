//! Certification of catalog closed forms against the quadrature oracle.
//!
//! A failing identity is reported as a [`VerificationRecord`] with a `fail`
//! status, never as an `Err`. Reports come in three frozen layouts:
//!
//! * JSON lines, one object per record, fields named as in [`VerificationRecord`];
//! * CSV with a header row and floats rendered to 17 significant digits;
//! * a Markdown table sorted by entry id, with discrepancy notes as footnotes.

use std::fmt;
use std::io::{self, Write};
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::catalog::{self, CatalogEntry, CatalogError, ParamSet};
use crate::quadrature::{self, QuadratureResult};

/// The oracle runs at `tol / ORACLE_TOL_DIVISOR`.
pub const ORACLE_TOL_DIVISOR: f64 = 10.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    OracleNonconverged,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::OracleNonconverged => "oracle_nonconverged",
        }
    }

    fn glyph(self) -> &'static str {
        match self {
            Status::Pass => "✓ pass",
            Status::Fail => "✗ fail",
            Status::OracleNonconverged => "⚠ oracle_nonconverged",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationRecord {
    pub entry_id: String,
    pub params: ParamSet,
    pub closed_value: f64,
    pub quad_value: f64,
    pub abs_diff: f64,
    pub tol: f64,
    pub status: Status,
    pub evaluations: usize,
    pub paper_ref: String,
    pub discrepancy_note: Option<String>,
}

impl VerificationRecord {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Parameter grids used by [`verify_all`]. Parameterized entries without a
/// grid fall back to their example parameters.
#[derive(Debug, Clone)]
pub struct ParamsPolicy {
    grids: Vec<(&'static str, Vec<ParamSet>)>,
}

impl ParamsPolicy {
    pub fn new() -> Self {
        Self { grids: Vec::new() }
    }

    pub fn with_grid(mut self, id: &'static str, grid: Vec<ParamSet>) -> Self {
        self.grids.retain(|(g, _)| *g != id);
        self.grids.push((id, grid));
        self
    }

    pub fn grid_for(&self, entry: &CatalogEntry) -> Vec<ParamSet> {
        if let Some((_, grid)) = self.grids.iter().find(|(id, _)| *id == entry.id) {
            return grid.clone();
        }
        vec![entry.example_param_set()]
    }
}

impl Default for ParamsPolicy {
    /// GEN.N on n ∈ {1,2,3,5,10}, T2.POW on n ∈ {0,1,2,3,7},
    /// Q.ABC on four (a,b,c) triples and Q.A on a ∈ {1,4,1/4}.
    fn default() -> Self {
        let single = |name: &str, values: &[f64]| -> Vec<ParamSet> {
            values.iter().map(|&v| ParamSet::new().with(name, v)).collect()
        };
        let abc = [(1.0, 0.0, 0.0), (2.0, 1.0, 0.0), (1.0, -1.0, 1.0), (0.5, 3.0, -1.0)]
            .iter()
            .map(|&(a, b, c)| ParamSet::new().with("a", a).with("b", b).with("c", c))
            .collect();
        ParamsPolicy::new()
            .with_grid("GEN.N", single("n", &[1.0, 2.0, 3.0, 5.0, 10.0]))
            .with_grid("T2.POW", single("n", &[0.0, 1.0, 2.0, 3.0, 7.0]))
            .with_grid("Q.ABC", abc)
            .with_grid("Q.A", single("a", &[1.0, 4.0, 0.25]))
    }
}

/// Oracle value of an entry's integral at `abs_tol`, split at its breakpoints.
pub fn oracle(entry: &CatalogEntry, params: &ParamSet, abs_tol: f64) -> Result<QuadratureResult, OracleError> {
    let f = entry.integrand(params)?;
    Ok(quadrature::integrate_split(
        f,
        &entry.interval(),
        entry.breakpoints,
        abs_tol,
    )?)
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum OracleError {
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error(transparent)]
    Quadrature(#[from] quadrature::QuadratureError),
}

/// Verifies one entry.
///
/// Unknown ids and invalid parameters are errors; every failure after that
/// (closed form or oracle) becomes a `fail` record.
pub fn verify_entry(
    id: &str,
    params: &ParamSet,
    tol_override: Option<f64>,
) -> Result<VerificationRecord, CatalogError> {
    let entry = catalog::lookup(id)?;
    entry.bind(params)?;
    Ok(verify_bound(entry, params, tol_override))
}

fn verify_bound(entry: &CatalogEntry, params: &ParamSet, tol_override: Option<f64>) -> VerificationRecord {
    let tol = tol_override.unwrap_or_else(|| entry.tolerance());
    let mut record = VerificationRecord {
        entry_id: entry.id.to_string(),
        params: params.clone(),
        closed_value: f64::NAN,
        quad_value: f64::NAN,
        abs_diff: f64::NAN,
        tol,
        status: Status::Fail,
        evaluations: 0,
        paper_ref: entry.paper_ref.to_string(),
        discrepancy_note: None,
    };
    let closed = entry.closed_form(params);
    let quad = oracle(entry, params, tol / ORACLE_TOL_DIVISOR);
    let (closed, quad) = match (closed, quad) {
        (Ok(c), Ok(q)) => (c, q),
        (c, q) => {
            if let Ok(c) = &c {
                record.closed_value = *c;
            }
            if let Ok(q) = &q {
                record.quad_value = q.value;
                record.evaluations = q.evaluations;
            }
            let mut errors = Vec::new();
            if let Err(e) = c {
                errors.push(format!("closed form: {e}"));
            }
            if let Err(e) = q {
                errors.push(format!("oracle: {e}"));
            }
            record.discrepancy_note = Some(format!("error: {}", errors.join("; ")));
            return record;
        }
    };
    record.closed_value = closed;
    record.quad_value = quad.value;
    record.evaluations = quad.evaluations;
    record.abs_diff = (closed - quad.value).abs();
    record.status = if !quad.converged {
        Status::OracleNonconverged
    } else if record.abs_diff <= tol {
        Status::Pass
    } else {
        Status::Fail
    };
    record.discrepancy_note = adjudicate(entry, params, closed, quad.value, tol);
    record
}

fn adjudicate(entry: &CatalogEntry, params: &ParamSet, closed: f64, quad: f64, tol: f64) -> Option<String> {
    let discrepancy = entry.discrepancy?;
    let alternate = entry.alternate_value(params).ok().flatten()?;
    let alt_diff = (alternate - quad).abs();
    let stated_ok = (closed - quad).abs() <= tol;
    let alt_ok = alt_diff <= tol;
    let verdict = match (stated_ok, alt_ok) {
        (true, false) => "quadrature confirms the catalog form and rejects the alternate",
        (false, true) => "quadrature rejects the catalog form and matches the alternate",
        (true, true) => "quadrature cannot separate the catalog form from the alternate",
        (false, false) => "quadrature matches neither form",
    };
    Some(format!(
        "{}. Alternate {} = {:.12}, |alternate - quadrature| = {:.3e}; {}.",
        discrepancy.summary, discrepancy.alternate_label, alternate, alt_diff, verdict
    ))
}

/// Verifies every registry and auxiliary entry, expanding parameterized
/// entries over the policy grid. Output order follows the catalog.
pub fn verify_all(policy: &ParamsPolicy) -> Vec<VerificationRecord> {
    verify_all_with(policy, None)
}

/// [`verify_all`] with every tolerance replaced by `tol_override` when given.
pub fn verify_all_with(policy: &ParamsPolicy, tol_override: Option<f64>) -> Vec<VerificationRecord> {
    let jobs: Vec<(&CatalogEntry, ParamSet)> = catalog::all_entries()
        .flat_map(|entry| policy.grid_for(entry).into_iter().map(move |p| (entry, p)))
        .collect();
    jobs.par_iter()
        .map(|(entry, params)| match entry.bind(params) {
            Ok(_) => verify_bound(entry, params, tol_override),
            Err(e) => VerificationRecord {
                entry_id: entry.id.to_string(),
                params: params.clone(),
                closed_value: f64::NAN,
                quad_value: f64::NAN,
                abs_diff: f64::NAN,
                tol: tol_override.unwrap_or_else(|| entry.tolerance()),
                status: Status::Fail,
                evaluations: 0,
                paper_ref: entry.paper_ref.to_string(),
                discrepancy_note: Some(format!("error: {e}")),
            },
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Csv,
    Markdown,
}

impl FromStr for ReportFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "json" => Ok(ReportFormat::Json),
            "csv" => Ok(ReportFormat::Csv),
            "md" | "markdown" => Ok(ReportFormat::Markdown),
            other => Err(format!("unknown report format '{other}' (expected json, csv or md)")),
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum ReportError {
    #[error("no records to report")]
    Empty,
    #[error("report sink: {0}")]
    Io(#[from] io::Error),
    #[error("report serialization: {0}")]
    Json(#[from] serde_json::Error),
    #[error("report serialization: {0}")]
    Csv(#[from] csv::Error),
}

/// CSV column order.
pub const CSV_COLUMNS: [&str; 10] = [
    "entry_id",
    "params",
    "closed_value",
    "quad_value",
    "abs_diff",
    "tol",
    "status",
    "evaluations",
    "paper_ref",
    "discrepancy_note",
];

pub fn emit_report(
    records: &[VerificationRecord],
    format: ReportFormat,
    sink: &mut dyn Write,
) -> Result<(), ReportError> {
    if records.is_empty() {
        return Err(ReportError::Empty);
    }
    match format {
        ReportFormat::Json => emit_json(records, sink)?,
        ReportFormat::Csv => emit_csv(records, sink)?,
        ReportFormat::Markdown => emit_markdown(records, sink)?,
    }
    sink.flush()?;
    Ok(())
}

fn emit_json(records: &[VerificationRecord], sink: &mut dyn Write) -> Result<(), ReportError> {
    for r in records {
        serde_json::to_writer(&mut *sink, r)?;
        sink.write_all(b"\n")?;
    }
    Ok(())
}

/// 17 significant digits.
fn sig17(v: f64) -> String {
    format!("{v:.16e}")
}

fn emit_csv(records: &[VerificationRecord], sink: &mut dyn Write) -> Result<(), ReportError> {
    let mut w = csv::Writer::from_writer(sink);
    w.write_record(CSV_COLUMNS)?;
    for r in records {
        w.write_record([
            r.entry_id.clone(),
            r.params.to_string(),
            sig17(r.closed_value),
            sig17(r.quad_value),
            sig17(r.abs_diff),
            sig17(r.tol),
            r.status.to_string(),
            r.evaluations.to_string(),
            r.paper_ref.clone(),
            r.discrepancy_note.clone().unwrap_or_default(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

fn emit_markdown(records: &[VerificationRecord], sink: &mut dyn Write) -> Result<(), ReportError> {
    let mut sorted: Vec<&VerificationRecord> = records.iter().collect();
    sorted.sort_by(|a, b| a.entry_id.cmp(&b.entry_id));

    let passed = records.iter().filter(|r| r.passed()).count();
    writeln!(sink, "# Verification report\n")?;
    writeln!(sink, "{passed}/{} records pass.\n", records.len())?;
    writeln!(
        sink,
        "| entry | params | closed form | quadrature | abs diff | tol | status | reference |"
    )?;
    writeln!(sink, "|---|---|---|---|---|---|---|---|")?;
    let mut notes = Vec::new();
    for r in &sorted {
        let mut status = r.status.glyph().to_string();
        if let Some(note) = &r.discrepancy_note {
            notes.push(note.as_str());
            status.push_str(&format!(" [^{}]", notes.len()));
        }
        let params = if r.params.is_empty() {
            "-".to_string()
        } else {
            r.params.to_string()
        };
        writeln!(
            sink,
            "| {} | {} | {:.15} | {:.15} | {:.2e} | {:.0e} | {} | {} |",
            r.entry_id, params, r.closed_value, r.quad_value, r.abs_diff, r.tol, status, r.paper_ref
        )?;
    }
    if !notes.is_empty() {
        writeln!(sink)?;
        for (i, note) in notes.iter().enumerate() {
            writeln!(sink, "[^{}]: {}", i + 1, note)?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_entries_pass() {
        let r = verify_entry("T1.TAN", &ParamSet::new(), None).unwrap();
        assert_eq!(r.status, Status::Pass, "{r:?}");
        assert!(r.abs_diff <= 1e-10);
        assert_eq!(r.abs_diff, (r.closed_value - r.quad_value).abs());

        let r = verify_entry("GEN.N", &ParamSet::new().with("n", 1.0), None).unwrap();
        assert!(r.passed());
        assert!((r.closed_value - 1.0).abs() < 1e-15);
        assert!(r.discrepancy_note.is_none());
    }

    #[test]
    fn unknown_and_invalid_are_errors() {
        assert!(verify_entry("NOPE", &ParamSet::new(), None).is_err());
        assert!(verify_entry("Q.A", &ParamSet::new().with("a", 0.0), None).is_err());
    }

    #[test]
    fn impossible_tolerance_is_a_record() {
        let r = verify_entry("T1.LN", &ParamSet::new(), Some(1e-30)).unwrap();
        assert_ne!(r.status, Status::Pass);
    }

    #[test]
    fn sinh_note_adjudicates() {
        let r = verify_entry("T2.SINH", &ParamSet::new(), None).unwrap();
        assert!(r.passed());
        let note = r.discrepancy_note.unwrap();
        assert!(note.contains("confirms the catalog form"), "{note}");
    }

    #[test]
    fn gen_n_note_only_at_three() {
        let three = verify_entry("GEN.N", &ParamSet::new().with("n", 3.0), None).unwrap();
        assert!(three.discrepancy_note.unwrap().contains("2.7689"));
        let five = verify_entry("GEN.N", &ParamSet::new().with("n", 5.0), None).unwrap();
        assert!(five.discrepancy_note.is_none());
    }

    #[test]
    fn empty_report_is_an_error() {
        let mut out = Vec::new();
        assert!(matches!(
            emit_report(&[], ReportFormat::Json, &mut out),
            Err(ReportError::Empty)
        ));
    }

    #[test]
    fn formats_parse() {
        assert_eq!("md".parse::<ReportFormat>().unwrap(), ReportFormat::Markdown);
        assert_eq!("csv".parse::<ReportFormat>().unwrap(), ReportFormat::Csv);
        assert!("xml".parse::<ReportFormat>().is_err());
    }

    #[test]
    fn sig17_has_seventeen_digits() {
        let s = sig17(std::f64::consts::PI);
        assert_eq!(s, "3.1415926535897931e0");
        let digits = s
            .split('e')
            .next()
            .unwrap()
            .chars()
            .filter(char::is_ascii_digit)
            .count();
        assert_eq!(digits, 17);
    }

    #[test]
    fn policy_override_replaces_grid() {
        let policy = ParamsPolicy::default().with_grid("Q.A", vec![ParamSet::new().with("a", 9.0)]);
        let entry = catalog::lookup("Q.A").unwrap();
        assert_eq!(policy.grid_for(entry).len(), 1);
        let single = catalog::lookup("T1.LN").unwrap();
        assert_eq!(policy.grid_for(single), vec![ParamSet::new()]);
    }
}
