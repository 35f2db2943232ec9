//! Running claims and rendering reports.

use std::io::{self, Write};
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use qseries_core::claims::{verify_with, Claim, Overrides, Status, VerificationReport};
use qseries_core::expr::Evaluator;

/// Verifies each claim, timing it, and returns the reports sorted by id.
pub fn run_claims(claims: &[Claim], overrides: Overrides, parallel: bool) -> Vec<VerificationReport> {
    let one = |c: &Claim| {
        let start = Instant::now();
        let mut r = verify_with(&mut Evaluator::new(), c, overrides);
        r.elapsed_ms = start.elapsed().as_millis() as u64;
        r
    };
    let mut out: Vec<_> = if parallel {
        claims.par_iter().map(one).collect()
    } else {
        claims.iter().map(one).collect()
    };
    out.sort_by(|a, b| a.id.cmp(&b.id));
    out
}

pub fn any_failed(reports: &[VerificationReport]) -> bool {
    reports.iter().any(|r| r.status == Status::Fail)
}

#[derive(Serialize)]
struct FailureJson {
    n: i64,
    lhs: String,
    rhs: String,
}

/// JSON form of a report. Big integers are strings so no precision is lost.
#[derive(Serialize)]
struct ReportJson<'a> {
    id: &'a str,
    status: &'static str,
    order: i64,
    first_failure: Option<FailureJson>,
    message: Option<&'a str>,
    elapsed_ms: u64,
}

impl<'a> From<&'a VerificationReport> for ReportJson<'a> {
    fn from(r: &'a VerificationReport) -> Self {
        ReportJson {
            id: &r.id,
            status: r.status.name(),
            order: r.order,
            first_failure: r.first_failure.as_ref().map(|f| FailureJson {
                n: f.n,
                lhs: f.lhs.to_string(),
                rhs: f.rhs.to_string(),
            }),
            message: r.message.as_deref(),
            elapsed_ms: r.elapsed_ms,
        }
    }
}

#[derive(Serialize)]
struct ReportCsv<'a> {
    id: &'a str,
    status: &'static str,
    order: i64,
    first_n: Option<i64>,
    elapsed_ms: u64,
}

pub fn write_json(out: &mut dyn Write, reports: &[VerificationReport]) -> io::Result<()> {
    let rows: Vec<ReportJson> = reports.iter().map(Into::into).collect();
    serde_json::to_writer_pretty(&mut *out, &rows)?;
    writeln!(out)
}

pub fn write_csv(out: &mut dyn Write, reports: &[VerificationReport]) -> io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in reports {
        w.serialize(ReportCsv {
            id: &r.id,
            status: r.status.name(),
            order: r.order,
            first_n: r.first_failure.as_ref().map(|f| f.n),
            elapsed_ms: r.elapsed_ms,
        })?;
    }
    w.flush()
}

pub fn write_text(out: &mut dyn Write, reports: &[VerificationReport]) -> io::Result<()> {
    let width = reports.iter().map(|r| r.id.len()).max().unwrap_or(0);
    for r in reports {
        writeln!(
            out,
            "{:<7} {:<width$}  order {:>5}  {:>6} ms",
            r.status.name(),
            r.id,
            r.order,
            r.elapsed_ms
        )?;
        if let Some(f) = &r.first_failure {
            writeln!(out, "        first failure at n = {}: lhs {}, rhs {}", f.n, f.lhs, f.rhs)?;
        }
        if let Some(m) = &r.message {
            writeln!(out, "        {m}")?;
        }
    }
    let count = |s| reports.iter().filter(|r| r.status == s).count();
    writeln!(
        out,
        "{} passed, {} failed, {} skipped",
        count(Status::Pass),
        count(Status::Fail),
        count(Status::Skipped)
    )
}
