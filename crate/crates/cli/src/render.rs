//! Text, JSON and CSV renderings.

use std::io::Write;

use qag_core::identity_engine::VerificationReport;
use qag_core::selftest::CriterionResult;
use qag_core::ExactInt;
use serde::Serialize;

use crate::compute::Computed;
use crate::{Failure, Format};

fn join(xs: &[ExactInt]) -> String {
    xs.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" ")
}

fn text_report(out: &mut impl Write, r: &VerificationReport, verbose: bool) -> std::io::Result<()> {
    let verdict = r.status.to_string().to_uppercase();
    write!(out, "{verdict:<11} {} {}", r.case, r.params)?;
    if let Some(at) = r.first_mismatch_order {
        write!(out, "  first mismatch at q^{at}")?;
    }
    writeln!(out, "  ({} ms)", r.runtime_ms)?;
    if verbose || !r.passed() {
        writeln!(out, "    lhs from q^{}: {}", r.excerpt_start, join(&r.lhs_head))?;
        writeln!(out, "    rhs from q^{}: {}", r.excerpt_start, join(&r.rhs_head))?;
    }
    if let Some(note) = &r.note {
        writeln!(out, "    note: {note}")?;
    }
    Ok(())
}

/// Flat CSV row; vectors are space-separated inside one field.
#[derive(Serialize)]
struct ReportRow<'a> {
    case: &'a str,
    nu: Option<usize>,
    s: Option<i64>,
    b: Option<i64>,
    #[serde(rename = "L")]
    l: Option<i64>,
    #[serde(rename = "M")]
    m: Option<i64>,
    #[serde(rename = "Mvec")]
    mvec: Option<String>,
    #[serde(rename = "Q")]
    q: Option<i64>,
    status: String,
    first_mismatch_order: Option<i64>,
    excerpt_start: i64,
    lhs_head: String,
    rhs_head: String,
    runtime_ms: u64,
    note: Option<&'a str>,
}

pub fn reports(
    out: &mut impl Write,
    format: Format,
    reports: &[VerificationReport],
    single: bool,
) -> Result<(), Failure> {
    match format {
        Format::Text => {
            for r in reports {
                text_report(out, r, single)?;
            }
            if !single {
                let passed = reports.iter().filter(|r| r.passed()).count();
                writeln!(out, "{} cases: {} pass, {} fail", reports.len(), passed, reports.len() - passed)?;
            }
        }
        Format::Json => {
            if single && reports.len() == 1 {
                serde_json::to_writer_pretty(&mut *out, &reports[0])?;
            } else {
                serde_json::to_writer_pretty(&mut *out, reports)?;
            }
            writeln!(out)?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            for r in reports {
                let p = &r.params;
                w.serialize(ReportRow {
                    case: &r.case,
                    nu: p.nu,
                    s: p.s,
                    b: p.b,
                    l: p.l,
                    m: p.m,
                    mvec: p.mvec.as_ref().map(|v| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")),
                    q: p.q,
                    status: r.status.to_string(),
                    first_mismatch_order: r.first_mismatch_order,
                    excerpt_start: r.excerpt_start,
                    lhs_head: join(&r.lhs_head),
                    rhs_head: join(&r.rhs_head),
                    runtime_ms: r.runtime_ms,
                    note: r.note.as_deref(),
                })?;
            }
            w.flush()?;
        }
    }
    Ok(())
}

pub fn computed(out: &mut impl Write, format: Format, c: &Computed) -> Result<(), Failure> {
    match format {
        Format::Text => match c.order {
            Some(q) => writeln!(out, "{} + O(q^{})", c.text, q + 1)?,
            None => writeln!(out, "{}", c.text)?,
        },
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, c)?;
            writeln!(out)?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["exponent", "coefficient"])?;
            for (e, coeff) in c.value.terms() {
                w.write_record([e.to_string(), coeff.to_string()])?;
            }
            w.flush()?;
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct CriterionRow<'a> {
    id: u8,
    title: &'a str,
    passed: bool,
    explained: bool,
    checks: usize,
    elapsed_ms: u128,
    detail: &'a str,
}

pub fn selftest(out: &mut impl Write, format: Format, results: &[CriterionResult]) -> Result<(), Failure> {
    let rows: Vec<CriterionRow> = results
        .iter()
        .map(|r| CriterionRow {
            id: r.id,
            title: r.title,
            passed: r.passed,
            explained: r.explained,
            checks: r.checks,
            elapsed_ms: r.elapsed_ms,
            detail: &r.detail,
        })
        .collect();
    match format {
        Format::Text => {
            for r in results {
                writeln!(out, "{r}")?;
            }
            let passed = results.iter().filter(|r| r.passed).count();
            writeln!(out, "{passed} of {} criteria passed", results.len())?;
        }
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, &rows)?;
            writeln!(out)?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            for row in &rows {
                w.serialize(row)?;
            }
            w.flush()?;
        }
    }
    Ok(())
}
