//! Command-line front end. [`run`] does all the work so that tests can drive
//! it with captured output streams; `main` only forwards the exit code.
//!
//! Exit codes: 0 success, 1 an identity check failed, 2 usage or parse error.

use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::dsl;
use crate::poly::Polynomial;
use crate::polycauchy::{
    expand_bernoulli_basis, expand_frobenius_basis, expand_rising_basis, pc_number, pc_poly,
    t_numbers_series,
};
use crate::rational::{parse_rational, Rational};
use crate::special::{bernoulli_higher, cauchy_numbers, norlund_numbers, bernoulli_higher_row};
use crate::stirling::stirling1;
use crate::suite::{self, IdentityId, SuiteConfig, K_LIMIT};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

const N_MAX: u64 = 1024;
const POLY_N_MAX: u64 = 256;

#[derive(Debug, Parser)]
#[command(name = "polycauchy", version, about = "Exact poly-Cauchy numbers, polynomials and identity checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Family {
    Polycauchy,
    Cauchy,
    Bernoulli,
    Norlund,
    Stirling1,
    Tnum,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Basis {
    Monomial,
    Rising,
    Bernoulli,
    Frobenius,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TableFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TextOrJson {
    Text,
    Json,
}

fn k_parser() -> clap::builder::RangedI64ValueParser<i64> {
    clap::value_parser!(i64).range(-K_LIMIT..=K_LIMIT)
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print one exact value.
    Number {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long, default_value_t = 0, value_parser = clap::value_parser!(u64).range(0..=N_MAX))]
        n: u64,
        /// Poly-Cauchy index.
        #[arg(long, default_value_t = 1, allow_negative_numbers = true, value_parser = k_parser())]
        k: i64,
        /// Order of higher-order Bernoulli numbers, or the Cauchy power of `tnum`.
        #[arg(long, allow_negative_numbers = true, value_parser = k_parser())]
        r: Option<i64>,
        /// Column of `stirling1`.
        #[arg(long)]
        m: Option<u64>,
    },
    /// Print C_n^(k)(x), or its coefficients in another basis.
    Poly {
        #[arg(long, value_parser = clap::value_parser!(u64).range(0..=POLY_N_MAX))]
        n: u64,
        #[arg(long, allow_negative_numbers = true, value_parser = k_parser())]
        k: i64,
        #[arg(long, value_enum, default_value_t = Basis::Monomial)]
        basis: Basis,
        #[arg(long, value_parser = clap::value_parser!(u64).range(0..=K_LIMIT as u64))]
        r: Option<u64>,
        /// Frobenius-Euler parameter `p/q`, not equal to 1.
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<String>,
    },
    /// Print the first rows of a number family.
    Table {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long, value_parser = clap::value_parser!(u64).range(0..=N_MAX))]
        rows: u64,
        #[arg(long, default_value_t = 1, allow_negative_numbers = true, value_parser = k_parser())]
        k: i64,
        #[arg(long, allow_negative_numbers = true, value_parser = k_parser())]
        r: Option<i64>,
        #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
        format: TableFormat,
    },
    /// Expand a generating-function expression in t.
    Series {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[arg(long)]
        order: usize,
        /// Multiply the coefficient of t^n by n!.
        #[arg(long)]
        egf: bool,
        #[arg(long, value_enum, default_value_t = TextOrJson::Text)]
        format: TextOrJson,
    },
    /// Check the identities over their parameter grids.
    Verify {
        /// Comma-separated identity ids.
        #[arg(long, value_delimiter = ',')]
        only: Option<Vec<String>>,
        #[arg(long)]
        nmax: Option<usize>,
        #[arg(long, allow_negative_numbers = true, requires = "kmax")]
        kmin: Option<i64>,
        #[arg(long, allow_negative_numbers = true, requires = "kmin")]
        kmax: Option<i64>,
        #[arg(long, value_enum, default_value_t = TextOrJson::Text)]
        report: TextOrJson,
        /// Flip one sign per identity; every identity should then fail.
        #[arg(long, hide = true)]
        mutate: bool,
        /// Check grid points one at a time.
        #[arg(long)]
        sequential: bool,
        /// List identity ids and exit.
        #[arg(long)]
        list: bool,
    },
}

/// A usage problem found after argument parsing.
struct Usage(String);

type Outcome = Result<i32, Usage>;

/// Runs one command line; `argv[0]` is the program name.
pub fn run<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{text}")
            } else {
                write!(out, "{text}")
            };
            return code;
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(code) => code,
        Err(Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    match command {
        Command::Number { family, n, k, r, m } => number(family, n as usize, k, r, m, out),
        Command::Poly {
            n,
            k,
            basis,
            r,
            lambda,
        } => poly(n as usize, k, basis, r.map(|r| r as usize), lambda, out),
        Command::Table {
            family,
            rows,
            k,
            r,
            format,
        } => table(family, rows as usize, k, r, format, out),
        Command::Series {
            expr,
            order,
            egf,
            format,
        } => series(&expr, order, egf, format, out, err),
        Command::Verify {
            only,
            nmax,
            kmin,
            kmax,
            report,
            mutate,
            sequential,
            list,
        } => {
            if list {
                for id in IdentityId::ALL {
                    emit(out, format!("{}\t{}", id.as_str(), id.description()));
                }
                return Ok(EXIT_OK);
            }
            let only = only
                .map(|ids| {
                    ids.iter()
                        .map(|s| s.parse::<IdentityId>())
                        .collect::<Result<Vec<_>, _>>()
                })
                .transpose()
                .map_err(|e| Usage(e.to_string()))?;
            let config = SuiteConfig {
                only,
                nmax,
                k_range: kmin.zip(kmax),
                mutate,
                sequential,
            };
            let result = suite::run_suite(&config).map_err(|e| Usage(e.to_string()))?;
            match report {
                TextOrJson::Text => {
                    let _ = write!(out, "{}", result.to_text());
                }
                TextOrJson::Json => emit(out, result.to_json().to_string()),
            }
            Ok(if result.all_passed() {
                EXIT_OK
            } else {
                EXIT_CHECK_FAILED
            })
        }
    }
}

fn emit(out: &mut dyn Write, line: impl AsRef<str>) {
    let _ = writeln!(out, "{}", line.as_ref());
}

fn number(family: Family, n: usize, k: i64, r: Option<i64>, m: Option<u64>, out: &mut dyn Write) -> Outcome {
    let value: Rational = match family {
        Family::Polycauchy => pc_number(n, k),
        Family::Cauchy => cauchy_numbers(n).swap_remove(n),
        Family::Bernoulli => bernoulli_higher(n, r.unwrap_or(1)),
        Family::Norlund => norlund_numbers(n).swap_remove(n),
        Family::Stirling1 => {
            let m = m.ok_or_else(|| Usage("stirling1 needs --m".into()))?;
            Rational::from_integer(stirling1(n, m as usize))
        }
        Family::Tnum => {
            let r = nonnegative_r(r)?;
            t_numbers_series(n, r, k).swap_remove(n)
        }
    };
    emit(out, value.to_string());
    Ok(EXIT_OK)
}

fn nonnegative_r(r: Option<i64>) -> Result<usize, Usage> {
    let r = r.ok_or_else(|| Usage("tnum needs --r".into()))?;
    usize::try_from(r).map_err(|_| Usage(format!("--r must be nonnegative, got {r}")))
}

fn poly(
    n: usize,
    k: i64,
    basis: Basis,
    r: Option<usize>,
    lambda: Option<String>,
    out: &mut dyn Write,
) -> Outcome {
    let coeffs = match basis {
        Basis::Monomial => {
            emit(out, pc_poly(n, k).poly.to_string());
            return Ok(EXIT_OK);
        }
        Basis::Rising => expand_rising_basis(n, k),
        Basis::Bernoulli => {
            let r = r.ok_or_else(|| Usage("the bernoulli basis needs --r".into()))?;
            expand_bernoulli_basis(n, k, r as i64)
        }
        Basis::Frobenius => {
            let r = r.ok_or_else(|| Usage("the frobenius basis needs --r".into()))?;
            let text = lambda.ok_or_else(|| Usage("the frobenius basis needs --lambda".into()))?;
            let lambda = parse_rational(&text)
                .ok_or_else(|| Usage(format!("cannot read `{text}` as a rational p/q")))?;
            expand_frobenius_basis(n, k, r, &lambda).map_err(|e| Usage(e.to_string()))?
        }
    };
    for (m, c) in coeffs.iter().enumerate() {
        emit(out, format!("{m}: {c}"));
    }
    Ok(EXIT_OK)
}

fn table(family: Family, rows: usize, k: i64, r: Option<i64>, format: TableFormat, out: &mut dyn Write) -> Outcome {
    let name = family
        .to_possible_value()
        .expect("no skipped variants")
        .get_name()
        .to_string();
    if family == Family::Stirling1 {
        let triangle: Vec<Vec<Rational>> = (0..rows)
            .map(|n| (0..=n).map(|m| Rational::from_integer(stirling1(n, m))).collect())
            .collect();
        return match format {
            TableFormat::Csv => {
                let mut records = vec![vec!["n".to_string(), "m".into(), "value".into()]];
                for (n, row) in triangle.iter().enumerate() {
                    for (m, v) in row.iter().enumerate() {
                        records.push(vec![n.to_string(), m.to_string(), v.to_string()]);
                    }
                }
                write_csv(out, &records)
            }
            TableFormat::Json => {
                let values: Vec<Vec<String>> = triangle
                    .iter()
                    .map(|row| row.iter().map(|v| v.to_string()).collect())
                    .collect();
                emit(out, json!({ "family": name, "params": {}, "values": values }).to_string());
                Ok(EXIT_OK)
            }
        };
    }
    let last = rows.saturating_sub(1);
    let (values, params): (Vec<Rational>, Value) = match family {
        Family::Polycauchy => ((0..rows).map(|n| pc_number(n, k)).collect(), json!({ "k": k })),
        Family::Cauchy => (cauchy_numbers(last), json!({})),
        Family::Bernoulli => {
            let r = r.unwrap_or(1);
            (bernoulli_higher_row(r, last), json!({ "r": r }))
        }
        Family::Norlund => (norlund_numbers(last), json!({})),
        Family::Tnum => {
            let r = nonnegative_r(r)?;
            (t_numbers_series(last, r, k), json!({ "r": r, "k": k }))
        }
        Family::Stirling1 => unreachable!("handled above"),
    };
    let values = &values[..rows.min(values.len())];
    match format {
        TableFormat::Csv => {
            let mut records = vec![vec!["n".to_string(), "value".into()]];
            records.extend(
                values
                    .iter()
                    .enumerate()
                    .map(|(n, v)| vec![n.to_string(), v.to_string()]),
            );
            write_csv(out, &records)
        }
        TableFormat::Json => {
            let values: Vec<String> = values.iter().map(|v| v.to_string()).collect();
            emit(out, json!({ "family": name, "params": params, "values": values }).to_string());
            Ok(EXIT_OK)
        }
    }
}

fn write_csv(out: &mut dyn Write, records: &[Vec<String>]) -> Outcome {
    let mut w = csv::Writer::from_writer(out);
    for rec in records {
        w.write_record(rec).map_err(|e| Usage(e.to_string()))?;
    }
    w.flush().map_err(|e| Usage(e.to_string()))?;
    Ok(EXIT_OK)
}

fn series(
    input: &str,
    order: usize,
    egf: bool,
    format: TextOrJson,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Outcome {
    let parsed = dsl::parse(input).map_err(dsl::DslError::from);
    let result = parsed.and_then(|e| Ok((dsl::eval_series(&e, order)?, e)));
    let (s, expr) = match result {
        Ok(v) => v,
        Err(e) => {
            let _ = write!(err, "{}", dsl::diagnostic(input, &e));
            return Ok(EXIT_USAGE);
        }
    };
    let coeffs: Vec<Polynomial> = if egf {
        dsl::egf(&s)
    } else {
        s.coeffs().to_vec()
    };
    match format {
        TextOrJson::Text => {
            for (n, c) in coeffs.iter().enumerate() {
                emit(out, format!("{n}: {c}"));
            }
        }
        TextOrJson::Json => {
            let scalar = coeffs.iter().all(|c| c.as_constant().is_some());
            let items: Vec<Value> = coeffs
                .iter()
                .map(|c| match c.as_constant() {
                    Some(v) if scalar => json!(v.to_string()),
                    _ => json!(c.to_json_coeffs()),
                })
                .collect();
            emit(
                out,
                json!({
                    "expr": expr.to_string(),
                    "order_bound": s.order(),
                    "egf": egf,
                    "coefficients": items,
                })
                .to_string(),
            );
        }
    }
    Ok(EXIT_OK)
}
