//! The `homexp` command line.
//!
//! Exit codes: 0 success, 1 bad input or a table mismatch, 2 an internal
//! inconsistency (a certificate that fails to replay, or crossed bounds).

use std::ffi::OsString;

use clap::{Parser, Subcommand};
use serde_json::json;

use crate::arith::OddPrime;
use crate::bounds::replay::replay;
use crate::bounds::{su_lower, su_upper_closed, su_upper_recursive, Engine, RuleContext};
use crate::error::Error;
use crate::exceptional::{crosscheck_table, default_table_primes};
use crate::output::{interval_line, render_exceptional_table, render_su_table, su_table, Format};
use crate::spaces::{parse_space, LieGroup, Space};

/// Largest prime accepted on the command line.
pub const MAX_CLI_PRIME: u64 = 10_000;
/// Largest `--max-n` accepted by `su-table`.
pub const MAX_TABLE_N: u64 = 100_000;

#[derive(Debug, Parser)]
#[command(
    name = "homexp",
    version,
    about = "Certified bounds on odd-primary homotopy exponents"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Bound exp_p of a space expression such as "SU(18)" or "B(3,11) x S^5"
    Exp {
        space: String,
        #[arg(short = 'p', long = "prime")]
        prime: u64,
        /// Only fire rule instances worked out verbatim; no extrapolation
        #[arg(long)]
        strict: bool,
        /// Print the certificate trees for both bounds
        #[arg(long)]
        certificate: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Lower and upper bounds for exp_p(SU(n)), n = 2..=max-n
    SuTable {
        #[arg(short = 'p', long = "prime")]
        prime: u64,
        #[arg(long = "max-n")]
        max_n: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// The exceptional Lie group exponent table
    ExceptionalTable {
        #[arg(short = 'p', long = "prime")]
        prime: Option<u64>,
        #[arg(long)]
        strict: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Recompute the exceptional table and run fast self-checks
    Check {
        #[arg(long)]
        strict: bool,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            stdout,
            stderr: String::new(),
            code: 0,
        }
    }

    fn fail(code: i32, msg: impl std::fmt::Display) -> Self {
        Outcome {
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
            code,
        }
    }
}

fn error_code(e: &Error) -> i32 {
    match e {
        Error::Inconsistent { .. } => 2,
        _ => 1,
    }
}

fn cli_prime(p: u64) -> Result<OddPrime, Outcome> {
    if p > MAX_CLI_PRIME {
        return Err(Outcome::fail(
            1,
            Error::PrimeTooLarge {
                p,
                max: MAX_CLI_PRIME,
            },
        ));
    }
    OddPrime::new(p).map_err(|e| Outcome::fail(1, e))
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    stdout: String::new(),
                    stderr: text,
                    code: 1,
                }
            } else {
                Outcome::ok(text)
            };
        }
    };
    execute(Engine::standard(), cli.command)
}

pub fn execute(engine: &Engine, command: Command) -> Outcome {
    let result = match command {
        Command::Exp {
            space,
            prime,
            strict,
            certificate,
            format,
        } => cmd_exp(engine, &space, prime, strict, certificate, format),
        Command::SuTable {
            prime,
            max_n,
            format,
        } => cmd_su_table(prime, max_n, format),
        Command::ExceptionalTable {
            prime,
            strict,
            format,
        } => cmd_exceptional_table(engine, prime, strict, format),
        Command::Check { strict } => Ok(check(engine, strict)),
    };
    result.unwrap_or_else(|o| o)
}

fn cmd_exp(
    engine: &Engine,
    expr: &str,
    prime: u64,
    strict: bool,
    certificate: bool,
    format: Format,
) -> Result<Outcome, Outcome> {
    let p = cli_prime(prime)?;
    let space = parse_space(expr).map_err(|e| Outcome::fail(1, e))?;
    let ctx = RuleContext { p, strict };
    let iv = engine
        .exponent_interval(&space, &ctx)
        .map_err(|e| Outcome::fail(error_code(&e), e))?;
    let certs = json!({
        "lower": iv.lower_cert().to_json(),
        "upper": iv.upper_cert().to_json(),
    });
    let stdout = match format {
        Format::Json => {
            let mut obj = json!({
                "space": space.to_string(),
                "p": p.get(),
                "lower": iv.lower(),
                "upper": iv.upper(),
                "exact": iv.is_exact(),
            });
            if certificate {
                obj["certificate"] = certs;
            }
            serde_json::to_string_pretty(&obj).expect("json") + "\n"
        }
        _ => {
            let mut s = interval_line(&space, p, &iv) + "\n";
            if certificate {
                s.push_str(&serde_json::to_string_pretty(&certs).expect("json"));
                s.push('\n');
            }
            s
        }
    };
    Ok(Outcome::ok(stdout))
}

fn cmd_su_table(prime: u64, max_n: u64, format: Format) -> Result<Outcome, Outcome> {
    let p = cli_prime(prime)?;
    if !(2..=MAX_TABLE_N).contains(&max_n) {
        return Err(Outcome::fail(
            1,
            format!("--max-n must lie in 2..={MAX_TABLE_N}"),
        ));
    }
    Ok(Outcome::ok(render_su_table(&su_table(p, max_n), format)))
}

fn cmd_exceptional_table(
    engine: &Engine,
    prime: Option<u64>,
    strict: bool,
    format: Format,
) -> Result<Outcome, Outcome> {
    let primes = match prime {
        Some(p) => vec![cli_prime(p)?],
        None => default_table_primes(),
    };
    let table = engine
        .exceptional_table(&primes, strict)
        .map_err(|e| Outcome::fail(error_code(&e), e))?;
    let stderr = table
        .skipped
        .iter()
        .map(|(g, p)| format!("note: ({g}, {p}) is a torsion case and is not tabulated\n"))
        .collect();
    Ok(Outcome {
        stdout: render_exceptional_table(&table, format),
        stderr,
        code: 0,
    })
}

/// Table cross-check plus a sweep of fast invariants over small ranks.
pub fn check(engine: &Engine, strict: bool) -> Outcome {
    let report = crosscheck_table(engine, strict);
    let mut out = report.render();
    let mut code = report.exit_code();
    let mut failures = Vec::new();
    let mut queries = 0;

    for p in [3u64, 5, 7] {
        let p = OddPrime::new(p).unwrap();
        for n in 2..=40 {
            let (lo, rec, closed) = (
                su_lower(p, n),
                su_upper_recursive(p, n),
                su_upper_closed(p, n),
            );
            if lo > rec || rec > closed {
                failures.push((
                    1,
                    format!("SU({n}) at p={p}: lower {lo}, recursive {rec}, closed {closed}"),
                ));
            }
            if n < p.get() * p.get() + p.get() && rec != closed {
                failures.push((
                    1,
                    format!("SU({n}) at p={p}: recursive {rec} != closed {closed}"),
                ));
            }
        }
        let ctx = RuleContext { p, strict };
        for n in 1..=12 {
            let spaces = [LieGroup::SU(n), LieGroup::Sp(n), LieGroup::Spin(n + 2)];
            for g in spaces {
                queries += 1;
                let s = Space::Group(g);
                match engine.exponent_interval(&s, &ctx) {
                    Err(e) => failures.push((error_code(&e), format!("{s} at p={p}: {e}"))),
                    Ok(iv) => {
                        for cert in [iv.lower_cert(), iv.upper_cert()] {
                            if let Err(e) = replay(cert, engine.facts()) {
                                failures.push((2, format!("{s} at p={p}: {e}")));
                            }
                        }
                    }
                }
            }
        }
    }
    for (c, msg) in &failures {
        code = code.max(*c);
        out.push_str(&format!("FAIL {msg}\n"));
    }
    out.push_str(&format!("{}\n", report.summary()));
    out.push_str(&format!(
        "invariants: {} failures over {queries} certified queries and {} SU rows\n",
        failures.len(),
        3 * 39
    ));
    Outcome {
        stdout: out,
        stderr: String::new(),
        code,
    }
}
