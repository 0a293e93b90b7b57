use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use sasaki_core::scalar::parse_rational;
use sasaki_core::verifier::{self, Report, ALL_DIMS, DEFAULT_ALPHAS, DEFAULT_DELTAS};
use sasaki_core::{Error, Rational};

#[derive(Parser)]
#[command(name = "sasaki-verify", about = "Exact verification of spinor identities on 3-(α,δ)-Sasaki manifolds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run checks over a parameter grid.
    Verify(VerifyArgs),
    /// Print the check table with references.
    ListChecks,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(clap::Args)]
struct VerifyArgs {
    /// Glob over check ids.
    #[arg(long, default_value = "*")]
    filter: String,
    /// α value (p/q), repeatable; the grid is the product with the δ values.
    #[arg(long, allow_hyphen_values = true)]
    alpha: Vec<String>,
    /// δ value (p/q), repeatable.
    #[arg(long, allow_hyphen_values = true)]
    delta: Vec<String>,
    /// Explicit point "α,δ", repeatable; used instead of the product grid.
    #[arg(long, allow_hyphen_values = true)]
    point: Vec<String>,
    /// Dimensions among 7, 11, 15.
    #[arg(long, value_delimiter = ',')]
    dims: Vec<usize>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_all(values: &[String], defaults: &[&str]) -> Result<Vec<Rational>, Error> {
    if values.is_empty() {
        return defaults.iter().map(|s| parse_rational(s)).collect();
    }
    values.iter().map(|s| parse_rational(s)).collect()
}

fn grid(args: &VerifyArgs) -> Result<Vec<(Rational, Rational)>, Error> {
    if !args.point.is_empty() {
        return args
            .point
            .iter()
            .map(|p| {
                let (a, d) = p.split_once(',').ok_or_else(|| Error::Parse(format!("point {p:?} is not \"α,δ\"")))?;
                Ok((parse_rational(a.trim())?, parse_rational(d.trim())?))
            })
            .collect();
    }
    let alphas = parse_all(&args.alpha, &DEFAULT_ALPHAS)?;
    let deltas = parse_all(&args.delta, &DEFAULT_DELTAS)?;
    Ok(verifier::product_grid(&alphas, &deltas))
}

fn verify(args: &VerifyArgs) -> Result<Report, Error> {
    let grid = grid(args)?;
    let dims = if args.dims.is_empty() { ALL_DIMS.to_vec() } else { args.dims.clone() };
    Ok(Report::new(verifier::run_suite(&args.filter, &grid, &dims)?))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match cli.command {
        Command::ListChecks => {
            print!("{}", verifier::list_checks());
            ExitCode::SUCCESS
        }
        Command::Verify(args) => {
            let report = match verify(&args) {
                Ok(r) => r,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
            };
            let body = match args.format {
                Format::Text => report.to_text(),
                Format::Json => report.to_json(),
            };
            match &args.out {
                Some(path) => {
                    if let Err(e) = fs::write(path, &body) {
                        eprintln!("error: cannot write {}: {e}", path.display());
                        return ExitCode::from(2);
                    }
                    let s = &report.summary;
                    eprintln!("{} entries: {} pass, {} fail, {} skipped", s.total, s.pass, s.fail, s.skipped);
                }
                None => print!("{body}"),
            }
            if report.any_failure() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
    }
}
