//! Command-line front end: `seq`, `dist`, `series` and `verify`.
//!
//! Exit codes are 0 on success, 1 when `verify` finds an unexpected verdict
//! (or any failure under `--strict`), and 2 for usage and guard errors.

use std::ffi::OsString;
use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::arith::{factorial, Integer, Rational};
use crate::claims::{self, Registry};
use crate::perm::{self, DEFAULT_GUARD, HARD_GUARD};
use crate::sequences::{Catalog, Listing, SequenceName};
use crate::series::{self, Series};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CLAIM_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

const MAX_SERIES_ORDER: usize = 64;

#[derive(Debug, Parser)]
#[command(
    name = "excedance",
    version,
    about = "Exact excedance statistics and identity checks"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,
    /// Omit the timestamp/version block from JSON reports.
    #[arg(long, global = true)]
    no_meta: bool,
    /// Allow brute-force enumeration up to length 12.
    #[arg(long, global = true)]
    force: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SeqName {
    Tangent,
    Bernoulli,
    Genocchi,
    Eulerian,
    Altsum,
}

impl From<SeqName> for SequenceName {
    fn from(n: SeqName) -> Self {
        match n {
            SeqName::Tangent => SequenceName::Tangent,
            SeqName::Bernoulli => SequenceName::Bernoulli,
            SeqName::Genocchi => SequenceName::Genocchi,
            SeqName::Eulerian => SequenceName::Eulerian,
            SeqName::Altsum => SequenceName::AltSum,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SeriesName {
    Tanh,
    Phi,
    Genocchi,
    Bernoulli,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the first values of a sequence.
    Seq {
        #[arg(value_enum)]
        name: SeqName,
        #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u64).range(1..=500))]
        count: u64,
    },
    /// Tabulate the number of permutations of length n by excedance count.
    Dist { n: usize },
    /// Print a truncated generating function.
    Series {
        #[arg(value_enum)]
        name: SeriesName,
        #[arg(long, default_value_t = 10)]
        order: usize,
        /// Parameter for phi, as an integer or p/q.
        #[arg(long, allow_negative_numbers = true)]
        t: Option<String>,
    },
    /// Check the registered identities.
    Verify {
        /// `all` or a comma-separated list of claim ids.
        #[arg(long, default_value = "all")]
        claims: String,
        #[arg(long, default_value_t = DEFAULT_GUARD)]
        max_n: usize,
        /// Exit 1 if any claim fails, expected or not.
        #[arg(long)]
        strict: bool,
    },
}

struct UsageError(String);

impl<E: std::fmt::Display> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

/// Runs one invocation, writing results to `out` and diagnostics to `err`.
/// Nothing is written to `out` when the invocation fails with a usage error.
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
    match dispatch(&cli) {
        Ok((text, code)) => {
            let _ = out.write_all(text.as_bytes());
            code
        }
        Err(UsageError(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
    }
}

fn dispatch(cli: &Cli) -> Result<(String, i32), UsageError> {
    let json = cli.format == OutputFormat::Json;
    match &cli.command {
        Command::Seq { name, count } => {
            Ok((cmd_seq((*name).into(), *count as usize, json)?, EXIT_OK))
        }
        Command::Dist { n } => Ok((cmd_dist(*n, cli.force, json)?, EXIT_OK)),
        Command::Series { name, order, t } => {
            Ok((cmd_series(*name, *order, t.as_deref(), json)?, EXIT_OK))
        }
        Command::Verify {
            claims,
            max_n,
            strict,
        } => cmd_verify(claims, *max_n, *strict, cli.force, json, !cli.no_meta),
    }
}

fn cmd_seq(name: SequenceName, count: usize, json: bool) -> Result<String, UsageError> {
    let listing = Catalog::default().first(name, count)?;
    Ok(match (listing, json) {
        (Listing::Values(v), false) => format!("{}\n", v.join(", ")),
        (Listing::Rows(rows), false) => rows.iter().map(|r| format!("{}\n", r.join(" "))).collect(),
        (Listing::Values(v), true) => to_json(&json!({ "name": name.to_string(), "values": v })),
        (Listing::Rows(rows), true) => to_json(&json!({ "name": name.to_string(), "rows": rows })),
    })
}

fn cmd_dist(n: usize, force: bool, json: bool) -> Result<String, UsageError> {
    let guard = if force { HARD_GUARD } else { DEFAULT_GUARD };
    if n == 0 {
        return Err(UsageError("dist needs n >= 1".into()));
    }
    let counts = perm::excedance_distribution(n, guard)?;
    let sum: Integer = counts.iter().sum();
    let fact = factorial(n as u32);
    if json {
        return Ok(to_json(&json!({
            "n": n,
            "counts": counts.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            "sum": sum.to_string(),
            "factorial": fact.to_string(),
            "sum_equals_factorial": sum == fact,
        })));
    }
    let width = counts
        .iter()
        .map(|c| c.to_string().len())
        .max()
        .unwrap_or(1)
        .max(5);
    let mut s = format!("{:>3}  {:>width$}\n", "k", "count");
    for (k, c) in counts.iter().enumerate() {
        s.push_str(&format!("{k:>3}  {:>width$}\n", c.to_string()));
    }
    let verdict = if sum == fact { "=" } else { "!=" };
    s.push_str(&format!("sum {sum} {verdict} {n}! = {fact}\n"));
    Ok(s)
}

fn cmd_series(
    name: SeriesName,
    order: usize,
    t: Option<&str>,
    json: bool,
) -> Result<String, UsageError> {
    if order > MAX_SERIES_ORDER {
        return Err(UsageError(format!(
            "order {order} exceeds the limit {MAX_SERIES_ORDER}"
        )));
    }
    let (label, s): (String, Series) = match name {
        SeriesName::Tanh => ("tanh".into(), series::tanh_series(order)),
        SeriesName::Genocchi => ("genocchi".into(), series::genocchi_series(order)),
        SeriesName::Bernoulli => ("bernoulli".into(), series::bernoulli_series(order)),
        SeriesName::Phi => {
            let t = t.ok_or_else(|| UsageError("phi requires --t".into()))?;
            let t: Rational = t.parse()?;
            (format!("phi t={t}"), series::phi_series(&t, order)?)
        }
    };
    if name != SeriesName::Phi && t.is_some() {
        return Err(UsageError("--t only applies to phi".into()));
    }
    let egf: Vec<String> = (0..=order)
        .map(|k| s.egf_coeff(k).expect("k <= order").to_string())
        .collect();
    let coeffs: Vec<String> = s.coeffs().iter().map(|c| c.to_string()).collect();
    if json {
        return Ok(to_json(&json!({
            "name": label,
            "order": order,
            "coefficients": coeffs,
            "egf": egf,
        })));
    }
    let cw = coeffs.iter().map(String::len).max().unwrap_or(1).max(5);
    let mut out = format!("{label} (order {order})\n{s}\n");
    out.push_str(&format!("{:>3}  {:>cw$}  egf\n", "k", "coeff"));
    for (k, (c, e)) in coeffs.iter().zip(&egf).enumerate() {
        out.push_str(&format!("{k:>3}  {c:>cw$}  {e}\n"));
    }
    Ok(out)
}

fn cmd_verify(
    claim_list: &str,
    max_n: usize,
    strict: bool,
    force: bool,
    json: bool,
    with_meta: bool,
) -> Result<(String, i32), UsageError> {
    let registry = Registry::standard();
    let ids: Option<Vec<String>> = if claim_list.trim() == "all" {
        None
    } else {
        Some(
            claim_list
                .split(',')
                .map(|s| s.trim().to_string())
                .filter(|s| !s.is_empty())
                .collect(),
        )
    };
    let report = registry.verify(ids.as_deref(), max_n, force)?;
    let format = if json {
        claims::Format::Json
    } else {
        claims::Format::Text
    };
    let text = claims::render_report(&report, format, with_meta);
    let code = if (strict && report.any_failed()) || !report.all_as_expected() {
        EXIT_CLAIM_FAILURE
    } else {
        EXIT_OK
    };
    Ok((text, code))
}

fn to_json(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json value serializes");
    s.push('\n');
    s
}
