//! Command-line front end for `qseries-core`.
//!
//! [`run`] takes the argument list and output streams and returns the exit
//! code: 0 when everything passed, 1 when a claim failed, 2 on usage or parse
//! errors.

pub mod claimfile;
pub mod report;

use std::ffi::OsString;
use std::io::{self, Write};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use qseries_core::claims::{registry, summary, Claim, Overrides};
use qseries_core::expr::{parse_expr, Evaluator};
use qseries_core::mocktheta::{coefficients, MockThetaId};
use qseries_core::partitions::{count_signed, for_each_partition, ColoredPart, PartitionRuleSet, RULESET_NAMES};
use qseries_core::Series;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Series up to this order print densely; longer ones as `exponent:coefficient` pairs.
const DENSE_LIMIT: i64 = 50;

#[derive(Parser, Debug)]
#[command(name = "qseries", version, about = "Exact q-series, mock theta coefficients and claim verification")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print exact coefficients of a mock theta function.
    Coeff {
        /// One of mu, sigma, beta, lambda, v, nu, phi6, psi6.
        name: String,
        #[arg(required = true)]
        n: Vec<u64>,
    },
    /// Expand an expression.
    Series {
        expr: String,
        #[arg(long, default_value_t = 500, value_parser = clap::value_parser!(i64).range(1..))]
        order: i64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Verify built-in and user claims.
    Verify {
        /// A claim id, or `all`.
        target: Option<String>,
        /// Override every claim's order.
        #[arg(long, value_parser = clap::value_parser!(i64).range(1..))]
        order: Option<i64>,
        /// Override every congruence and family count.
        #[arg(long)]
        count: Option<u64>,
        /// Extra claim files.
        #[arg(long = "claims", value_name = "FILE")]
        claims: Vec<std::path::PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Run claims one at a time.
        #[arg(long)]
        no_parallel: bool,
    },
    /// Count (and optionally list) the partitions of `n` under a rule set.
    Enumerate {
        ruleset: String,
        n: u64,
        #[arg(long)]
        list: bool,
    },
    /// Print the built-in claims with their citations.
    List {
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

/// Problems reported with exit code 2.
enum Usage {
    Message(String),
    Io(io::Error),
}

fn usage(msg: String) -> Usage {
    Usage::Message(msg)
}

impl From<io::Error> for Usage {
    fn from(e: io::Error) -> Self {
        Usage::Io(e)
    }
}

pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        // A closed pipe (`qseries list | head`) is not an error.
        Err(Usage::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => EXIT_OK,
        Err(Usage::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
        Err(Usage::Message(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<i32, Usage> {
    match command {
        Command::Coeff { name, n } => {
            let id = MockThetaId::from_name(&name).ok_or_else(|| {
                let known: Vec<_> = MockThetaId::ALL.iter().map(|m| m.name()).collect();
                usage(format!("unknown mock theta function `{name}` (known: {})", known.join(", ")))
            })?;
            let values: Vec<String> = coefficients(id, &n).iter().map(ToString::to_string).collect();
            writeln!(out, "{}", values.join(" "))?;
            Ok(EXIT_OK)
        }
        Command::Series { expr, order, format } => {
            let e = parse_expr(&expr).map_err(|e| usage(e.to_string()))?;
            let s = Evaluator::new().eval(&e, order).map_err(|e| usage(e.to_string()))?;
            write_series(out, &e.to_string(), &s, format)?;
            Ok(EXIT_OK)
        }
        Command::Verify { target, order, count, claims, format, no_parallel } => {
            let mut user = Vec::new();
            for path in &claims {
                let text = std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
                let parsed = claimfile::parse_claims(&text, order.unwrap_or(500))
                    .map_err(|e| usage(format!("{}: {e}", path.display())))?;
                user.extend(parsed);
            }
            let selected = select(target.as_deref(), user)?;
            let reports = report::run_claims(&selected, Overrides { order, count }, !no_parallel);
            match format {
                Format::Text => report::write_text(out, &reports)?,
                Format::Json => report::write_json(out, &reports)?,
                Format::Csv => report::write_csv(out, &reports)?,
            }
            Ok(if report::any_failed(&reports) { EXIT_FAIL } else { EXIT_OK })
        }
        Command::Enumerate { ruleset, n, list } => {
            let rs = PartitionRuleSet::named(&ruleset)
                .map_err(|_| usage(format!("unknown rule set `{ruleset}` (known: {})", RULESET_NAMES.join(", "))))?;
            writeln!(out, "{ruleset}: {}", rs.describe())?;
            if list {
                let mut lines = Vec::new();
                for_each_partition(&rs, n, |parts, sign| lines.push(render_partition(parts, sign)));
                for l in lines {
                    writeln!(out, "{l}")?;
                }
            }
            writeln!(out, "signed count of {n}: {}", count_signed(&rs, n as i64))?;
            Ok(EXIT_OK)
        }
        Command::List { format } => {
            write_list(out, &registry(), format)?;
            Ok(EXIT_OK)
        }
    }
}

/// Registry claims, user claims, or one claim by id.
fn select(target: Option<&str>, user: Vec<Claim>) -> Result<Vec<Claim>, Usage> {
    let builtin = registry();
    if let Some(dup) = user.iter().find(|u| builtin.iter().any(|b| b.id == u.id)) {
        return Err(usage(format!("claim file redefines built-in id `{}`", dup.id)));
    }
    match target {
        None if !user.is_empty() => Ok(user),
        None | Some("all") => Ok(builtin.into_iter().chain(user).collect()),
        Some(id) => builtin
            .into_iter()
            .chain(user)
            .find(|c| c.id == id)
            .map(|c| vec![c])
            .ok_or_else(|| usage(format!("unknown claim id `{id}`; see `qseries list`"))),
    }
}

fn render_partition(parts: &[ColoredPart], sign: i8) -> String {
    let body: Vec<String> = parts
        .iter()
        .map(|p| {
            let color = char::from_u32('a' as u32 + p.color).unwrap_or('?');
            format!("{}{color}", p.value)
        })
        .collect();
    let body = if body.is_empty() { "(empty)".to_string() } else { body.join(" + ") };
    format!("{body}  ({})", if sign < 0 { "-1" } else { "+1" })
}

#[derive(Serialize)]
struct SeriesJson {
    expr: String,
    order: i64,
    valuation: i64,
    coefficients: Vec<String>,
}

fn write_series(out: &mut dyn Write, expr: &str, s: &Series, format: Format) -> io::Result<()> {
    match format {
        Format::Text if s.order() - s.valuation() <= DENSE_LIMIT => writeln!(out, "{s}"),
        Format::Text => {
            let pairs: Vec<String> = s.terms().map(|(e, c)| format!("{e}:{c}")).collect();
            writeln!(out, "{}", pairs.join(" "))?;
            writeln!(out, "O(q^{})", s.order())
        }
        Format::Json => {
            let j = SeriesJson {
                expr: expr.to_string(),
                order: s.order(),
                valuation: s.valuation(),
                coefficients: s.coeffs().iter().map(ToString::to_string).collect(),
            };
            serde_json::to_writer_pretty(&mut *out, &j)?;
            writeln!(out)
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["n", "coefficient"])?;
            for (i, c) in s.coeffs().iter().enumerate() {
                w.write_record([(s.valuation() + i as i64).to_string(), c.to_string()])?;
            }
            w.flush()
        }
    }
}

#[derive(Serialize)]
struct ListEntry<'a> {
    id: &'a str,
    kind: &'static str,
    cite: &'a str,
    checks: String,
}

fn write_list(out: &mut dyn Write, claims: &[Claim], format: Format) -> io::Result<()> {
    let rows: Vec<ListEntry> = claims
        .iter()
        .map(|c| ListEntry { id: &c.id, kind: c.kind.name(), cite: &c.cite, checks: summary(c) })
        .collect();
    match format {
        Format::Text => {
            let width = rows.iter().map(|r| r.id.len()).max().unwrap_or(0);
            for r in &rows {
                writeln!(out, "{:<width$}  {:<14}  {}", r.id, r.kind, r.cite)?;
            }
            Ok(())
        }
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, &rows)?;
            writeln!(out)
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            for r in &rows {
                w.serialize(r)?;
            }
            w.flush()
        }
    }
}
