//! `meander`: enumeration dumps, loop polynomials, series, verification
//! suites and matrix-model simulations.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error, 3 resource
//! limit.

mod commands;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub const EXIT_OK: u8 = 0;
pub const EXIT_VERIFY: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_LIMIT: u8 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "meander",
    version,
    about = "Meandric systems with one shallow side"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Stream partitions of one kind as JSON lines, then a count line.
    Enumerate(EnumerateArgs),
    /// Loop polynomials of a class over a range of orders.
    Polynomial(PolynomialArgs),
    /// Closed-form generating series truncated at an order.
    Series(SeriesArgs),
    /// Run closed-form versus enumeration checks.
    Verify(VerifyArgs),
    /// Monte Carlo estimates of a matrix model, one row per dimension.
    Simulate(SimulateArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args, Debug)]
struct Output {
    /// Output format.
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Write to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Replace the default enumeration budget (prints a warning).
    #[arg(long, value_name = "N")]
    budget_override: Option<usize>,
}

#[derive(Args, Debug)]
struct EnumerateArgs {
    /// nc, interval, kr-interval or rainbow.
    kind: String,
    /// Order (or use --n).
    n_pos: Option<usize>,
    #[arg(long = "n")]
    n: Option<usize>,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct PolynomialArgs {
    /// full, shallow-top, thin or semi (or use --class).
    class_pos: Option<String>,
    /// Orders: `5`, `1..5` or `1..=5` (or use --range / --n).
    range_pos: Option<String>,
    #[arg(long)]
    class: Option<String>,
    #[arg(long)]
    range: Option<String>,
    #[arg(long = "n")]
    n: Option<usize>,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct SeriesArgs {
    /// thin, shallow-top or semi.
    which: String,
    /// Truncation order (or use --order).
    order_pos: Option<usize>,
    #[arg(long)]
    order: Option<usize>,
    /// Emit the cumulant series K instead of M.
    #[arg(long)]
    cumulants: bool,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// lemmas, thin, shallow-top, semi, transforms or all.
    #[arg(default_value = "all")]
    suite: String,
    /// Largest order for every enumerative check.
    #[arg(long = "n")]
    n: Option<usize>,
    #[arg(long, hide = true)]
    inject_fault: bool,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct SimulateArgs {
    /// gue-df, wishart-pt, nc-nc, shallow-top or thin (or use --model).
    model_pos: Option<String>,
    /// Moment order (or use --n).
    n_pos: Option<usize>,
    /// Loop fugacity ℓ (or use --l).
    l_pos: Option<usize>,
    #[arg(long)]
    model: Option<String>,
    #[arg(long = "n")]
    n: Option<usize>,
    #[arg(long = "l")]
    l: Option<usize>,
    /// Comma-separated dimensions.
    #[arg(long, value_delimiter = ',', default_value = "16")]
    d: Vec<usize>,
    #[arg(long, default_value_t = 400)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Second Ginibre matrix for nc-nc: independent, same or conjugate.
    #[arg(long, default_value = "independent")]
    variant: String,
    #[command(flatten)]
    output: Output,
}

/// A failed command and the exit code it maps to.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<meander_core::Error> for Failure {
    fn from(e: meander_core::Error) -> Self {
        use meander_core::Error as E;
        let code = match e {
            E::ResourceLimit { .. } => EXIT_LIMIT,
            E::Inconsistent(_) => EXIT_VERIFY,
            _ => EXIT_USAGE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

/// What a command produced: text for the sink and the exit code.
pub struct Outcome {
    pub text: String,
    pub code: u8,
}

fn either<T>(what: &str, positional: Option<T>, flag: Option<T>) -> Result<T, Failure> {
    match (positional, flag) {
        (Some(_), Some(_)) => Err(Failure::usage(format!(
            "{what} given both positionally and as a flag"
        ))),
        (Some(v), None) | (None, Some(v)) => Ok(v),
        (None, None) => Err(Failure::usage(format!("missing {what}"))),
    }
}

fn warn_override(output: &Output) {
    if let Some(b) = output.budget_override {
        eprintln!("warning: --budget-override {b} replaces the default enumeration budgets");
    }
}

fn dispatch(cli: Cli) -> Result<(Outcome, Option<PathBuf>), Failure> {
    let (outcome, out) = match cli.command {
        Command::Enumerate(a) => {
            warn_override(&a.output);
            let n = either("order", a.n_pos, a.n)?;
            let text = commands::enumerate(
                &a.kind,
                n,
                a.output.format == Format::Csv,
                a.output.budget_override,
            )?;
            (
                Outcome {
                    text,
                    code: EXIT_OK,
                },
                a.output.out,
            )
        }
        Command::Polynomial(a) => {
            warn_override(&a.output);
            let class = either("class", a.class_pos, a.class)?;
            let range = match (a.range_pos, a.range, a.n) {
                (Some(r), None, None) | (None, Some(r), None) => r,
                (None, None, Some(n)) => n.to_string(),
                (None, None, None) => return Err(Failure::usage("missing range")),
                _ => return Err(Failure::usage("give the range once")),
            };
            let text = commands::polynomial(
                &class,
                &range,
                a.output.format == Format::Csv,
                a.output.budget_override,
            )?;
            (
                Outcome {
                    text,
                    code: EXIT_OK,
                },
                a.output.out,
            )
        }
        Command::Series(a) => {
            let order = either("order", a.order_pos, a.order)?;
            let text =
                commands::series(&a.which, order, a.cumulants, a.output.format == Format::Csv)?;
            (
                Outcome {
                    text,
                    code: EXIT_OK,
                },
                a.output.out,
            )
        }
        Command::Verify(a) => {
            warn_override(&a.output);
            let opts = meander_core::verify::VerifyOptions {
                max_n: a.n,
                budget_override: a.output.budget_override,
                inject_fault: a.inject_fault,
            };
            let outcome = commands::verify(&a.suite, &opts, a.output.format == Format::Csv)?;
            (outcome, a.output.out)
        }
        Command::Simulate(a) => {
            warn_override(&a.output);
            let model = either("model", a.model_pos, a.model)?;
            let n = either("n", a.n_pos, a.n)?;
            let l = either("l", a.l_pos, a.l)?;
            let req = commands::SimulateRequest {
                model: &model,
                n,
                l,
                ds: &a.d,
                samples: a.samples,
                seed: a.seed,
                variant: &a.variant,
                budget_override: a.output.budget_override,
            };
            let text = commands::simulate(&req, a.output.format == Format::Csv)?;
            (
                Outcome {
                    text,
                    code: EXIT_OK,
                },
                a.output.out,
            )
        }
    };
    Ok((outcome, out))
}

fn emit(text: &str, out: Option<PathBuf>) -> Result<(), Failure> {
    match out {
        Some(path) => std::fs::write(&path, text).map_err(|e| Failure {
            code: EXIT_USAGE,
            message: format!("cannot write {}: {e}", path.display()),
        }),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| Failure {
                    code: EXIT_VERIFY,
                    message: format!("stdout: {e}"),
                })
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result =
        dispatch(cli).and_then(|(outcome, out)| emit(&outcome.text, out).map(|_| outcome.code));
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
