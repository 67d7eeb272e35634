use std::fmt::Write as _;

use probident_core::exact::format_rational;
use probident_core::montecarlo::{SampleStats, Z_THRESHOLD};
use serde::Serialize;
use serde_json::Value;

use crate::args::Format;
use crate::commands::{Document, FullReport};
use crate::rows::{DensityRow, IdentityCsvRow, IdentityRow, SeriesRow};
use crate::CliError;

pub fn render(doc: &Document, format: Format) -> Result<String, CliError> {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(doc).map_err(|e| CliError::Render(e.to_string()))?;
            s.push('\n');
            Ok(s)
        }
        Format::Csv => render_csv(doc),
        Format::Text => Ok(render_text(doc)),
    }
}

fn csv_err(e: impl std::fmt::Display) -> CliError {
    CliError::Render(e.to_string())
}

fn identity_csv(rows: &[IdentityRow]) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        w.serialize(IdentityCsvRow::from(row)).map_err(csv_err)?;
    }
    if rows.is_empty() {
        w.write_record([
            "identity", "n", "p", "lhs", "rhs", "equal", "residual", "approx_lhs", "approx_rhs", "note",
        ])
        .map_err(csv_err)?;
    }
    String::from_utf8(w.into_inner().map_err(csv_err)?).map_err(csv_err)
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        Value::Bool(_) | Value::Number(_) => v.to_string(),
        Value::Array(_) | Value::Object(_) => v.to_string(),
    }
}

/// CSV for flat records: columns sorted by name, nested values as JSON text.
fn generic_csv<T: Serialize>(rows: &[T]) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header: Option<Vec<String>> = None;
    for row in rows {
        let Value::Object(map) = serde_json::to_value(row).map_err(csv_err)? else {
            return Err(CliError::Render("expected a record".to_string()));
        };
        let cols: Vec<String> = map.keys().cloned().collect();
        if header.is_none() {
            w.write_record(&cols).map_err(csv_err)?;
            header = Some(cols);
        }
        let header = header.as_ref().expect("header written");
        w.write_record(header.iter().map(|k| map.get(k).map(cell).unwrap_or_default()))
            .map_err(csv_err)?;
    }
    String::from_utf8(w.into_inner().map_err(csv_err)?).map_err(csv_err)
}

fn render_csv(doc: &Document) -> Result<String, CliError> {
    match doc {
        Document::Identity(row) => identity_csv(std::slice::from_ref(row)),
        Document::Identities(rows) => identity_csv(rows),
        Document::Sample(stats) => generic_csv(std::slice::from_ref(stats)),
        Document::Series(row) => generic_csv(std::slice::from_ref(row)),
        Document::Density(rows) => generic_csv(rows),
        Document::Report(report) => {
            let rows: Vec<IdentityRow> =
                report.identities.iter().flat_map(|g| g.reports.iter().cloned()).collect();
            identity_csv(&rows)
        }
    }
}

fn render_text(doc: &Document) -> String {
    let mut out = String::new();
    match doc {
        Document::Identity(row) => identity_text(&mut out, std::slice::from_ref(row)),
        Document::Identities(rows) => identity_text(&mut out, rows),
        Document::Sample(stats) => sample_text(&mut out, stats),
        Document::Series(row) => series_text(&mut out, row),
        Document::Density(rows) => density_text(&mut out, rows),
        Document::Report(report) => report_text(&mut out, report),
    }
    out
}

fn identity_text(out: &mut String, rows: &[IdentityRow]) {
    let mut last_note: Option<&str> = None;
    for row in rows {
        let r = &row.report;
        let p = r.p.as_ref().map(|p| format!(" p={}", format_rational(p))).unwrap_or_default();
        let verdict = if r.equal { "equal".to_string() } else { format!("NOT equal, residual = {}", r.residual) };
        let _ = writeln!(out, "{} n={}{}: lhs = {}; rhs = {}; {}", r.identity, r.n, p, r.lhs, r.rhs, verdict);
        if let Some(note) = r.note.as_deref() {
            if last_note != Some(note) {
                let _ = writeln!(out, "  note: {note}");
            }
        }
        last_note = r.note.as_deref();
    }
}

fn sample_text(out: &mut String, s: &SampleStats) {
    let p = s.p.as_ref().map(format_rational).unwrap_or_else(|| "-".to_string());
    let verdict = if s.passes(Z_THRESHOLD) { "PASS" } else { "FAIL" };
    let _ = writeln!(
        out,
        "{} power={} p={} samples={}: mean = {:.10}, std error = {:.3e}, exact = {:.10}, z = {:.3} {} (|z| <= {})",
        s.statistic_id, s.power, p, s.samples, s.mean, s.std_error, s.exact_target, s.z_score, verdict, Z_THRESHOLD
    );
}

fn series_text(out: &mut String, s: &SeriesRow) {
    let verdict = if s.brackets_target { "brackets the target" } else { "does NOT bracket the target" };
    let _ = writeln!(
        out,
        "series n={} terms={}: partial = {:.15}, tail bound = {:.3e}, target = {} = {:.15}, ratio = {:.12}; {}",
        s.n, s.terms, s.approx_partial_sum, s.approx_tail_bound, s.target, s.approx_target, s.ratio_to_target, verdict
    );
    let _ = writeln!(out, "  note: {}", s.note);
}

fn opt(v: Option<f64>, prec: usize) -> String {
    v.map(|x| format!("{x:.prec$e}")).unwrap_or_else(|| "-".to_string())
}

fn density_text(out: &mut String, rows: &[DensityRow]) {
    for r in rows {
        let at = match (r.x, r.n, &r.p) {
            (Some(x), _, _) => format!("x = {x:+.6}"),
            (None, Some(n), Some(p)) => format!("n = {n}, p = {p}"),
            (None, Some(n), None) => format!("n = {n}"),
            _ => String::new(),
        };
        let _ = write!(
            out,
            "{:<8} {}: value = {}, reference = {}, |diff| = {} {}",
            r.kind,
            at,
            opt(r.value, 12),
            opt(r.reference, 12),
            opt(r.abs_diff, 2),
            if r.ok { "ok" } else { "FAIL" }
        );
        if let Some(m) = &r.message {
            let _ = write!(out, " ({m})");
        }
        out.push('\n');
    }
}

fn report_text(out: &mut String, report: &FullReport) {
    for g in &report.identities {
        let equal = g.reports.iter().filter(|r| r.report.equal).count();
        let _ = writeln!(
            out,
            "{} [{}]: {}/{} equal{}",
            g.identity,
            g.scope,
            equal,
            g.checks,
            if g.passed { "" } else { "  FAIL" }
        );
        if let Some(note) = &g.note {
            let _ = writeln!(out, "  note: {note}");
        }
        for r in g.reports.iter().filter(|r| !r.report.equal) {
            let _ = writeln!(out, "  mismatch at n={}: residual = {}", r.report.n, r.report.residual);
        }
    }
    for s in &report.series {
        let _ = writeln!(
            out,
            "series n={} terms={}: partial = {:.15}, tail bound = {:.3e}, target = {:.15}, {}",
            s.n,
            s.terms,
            s.approx_partial_sum,
            s.approx_tail_bound,
            s.approx_target,
            if s.brackets_target { "bracketed" } else { "NOT bracketed" }
        );
    }
    let _ = writeln!(out, "{}", if report.passed { "all checks passed" } else { "some checks FAILED" });
}
