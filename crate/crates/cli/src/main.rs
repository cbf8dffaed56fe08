//! `covpar`: validate, analyze and enumerate branched covers of curves.
//!
//! Exit codes: 0 success, 1 domain failure (invalid datum, exceeded cap,
//! missing fiber), 2 unreadable or malformed input.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use covpar_core::report::to_canonical_json;
use covpar_core::{
    build_report, census, parse_cover, pullback_report, AnalysisOptions, CoverDatum,
    EnumerationCaps, Error, ParabolicData, PullbackProfile,
};

#[derive(Parser)]
#[command(name = "covpar", version, about = "Parabolic direct images of branched covers of curves")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a cover file and list every violated invariant.
    Validate { path: PathBuf },
    /// Full report: genus, direct image, degree identities, stability.
    Analyze {
        path: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Do not construct the Galois closure.
        #[arg(long)]
        skip_closure_check: bool,
        /// Largest monodromy group for which the closure is built.
        #[arg(long, default_value_t = AnalysisOptions::default().closure_cap)]
        closure_cap: usize,
    },
    /// Enumerate Hurwitz classes with given branch cycle types and analyze each.
    Enumerate {
        #[arg(long, default_value_t = 0)]
        genus: usize,
        #[arg(long)]
        degree: usize,
        /// Comma-separated cycle types, parts joined by '+'. Missing fixed
        /// points are filled in, so "2,2,2,2" means four transpositions.
        #[arg(long, default_value = "")]
        types: String,
        #[command(flatten)]
        caps: CapArgs,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Pull parabolic data back along a cover given by its fiber profile.
    Pullback {
        parabolic: PathBuf,
        profile: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Args)]
struct CapArgs {
    #[arg(long, default_value_t = EnumerationCaps::default().max_degree)]
    max_degree: usize,
    #[arg(long, default_value_t = EnumerationCaps::default().max_branch_points)]
    max_branch_points: usize,
    #[arg(long, default_value_t = EnumerationCaps::default().max_base_genus)]
    max_genus: usize,
    /// Upper bound on the number of candidate tuples examined.
    #[arg(long, default_value_t = EnumerationCaps::default().max_search)]
    max_search: u128,
}

impl From<&CapArgs> for EnumerationCaps {
    fn from(c: &CapArgs) -> Self {
        EnumerationCaps {
            max_degree: c.max_degree,
            max_branch_points: c.max_branch_points,
            max_base_genus: c.max_genus,
            max_search: c.max_search,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

/// A failure together with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if matches!(e, Error::Parse(_)) { 2 } else { 1 };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn parse_failure(message: String) -> Failure {
    Failure { code: 2, message }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| parse_failure(format!("cannot read {}: {e}", path.display())))
}

fn load_cover(path: &Path) -> Result<CoverDatum, Failure> {
    Ok(parse_cover(&read(path)?)?)
}

fn load_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    serde_json::from_str(&read(path)?)
        .map_err(|e| parse_failure(format!("parse error in {}: {e}", path.display())))
}

/// Prints violations and fails with exit code 1 if there are any.
fn require_valid(d: &CoverDatum) -> Result<(), Failure> {
    let report = d.validate();
    if report.is_ok() {
        return Ok(());
    }
    for v in &report.violations {
        eprintln!("violation [{:?}]: {}", v.kind, v.message);
    }
    Err(Failure {
        code: 1,
        message: format!("{} violation(s)", report.violations.len()),
    })
}

fn parse_types(text: &str, degree: usize) -> Result<Vec<Vec<usize>>, Failure> {
    text.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            let mut parts = t
                .split('+')
                .map(|p| {
                    p.trim()
                        .parse::<usize>()
                        .map_err(|_| parse_failure(format!("bad cycle type {t:?}")))
                })
                .collect::<Result<Vec<usize>, Failure>>()?;
            let used: usize = parts.iter().sum();
            parts.extend(std::iter::repeat_n(1, degree.saturating_sub(used)));
            Ok(parts)
        })
        .collect()
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Validate { path } => {
            let d = load_cover(&path)?;
            require_valid(&d)?;
            println!(
                "valid: base genus {}, degree {}, {} branch point(s), genus of cover {}",
                d.base_genus,
                d.degree,
                d.branch.len(),
                d.genus_x()?
            );
        }
        Command::Analyze {
            path,
            format,
            skip_closure_check,
            closure_cap,
        } => {
            let d = load_cover(&path)?;
            require_valid(&d)?;
            let opts = AnalysisOptions {
                skip_closure_check,
                closure_cap,
            };
            let report = build_report(&d, &opts)?;
            match format {
                Format::Text => print!("{}", report.to_text()),
                Format::Json => println!("{}", report.to_json()),
            }
        }
        Command::Enumerate {
            genus,
            degree,
            types,
            caps,
            format,
        } => {
            let types = parse_types(&types, degree)?;
            let (table, _) = census(genus, degree, &types, &(&caps).into())?;
            match format {
                Format::Text => print!("{}", table.to_text()),
                Format::Json => println!("{}", to_canonical_json(&table)),
            }
        }
        Command::Pullback {
            parabolic,
            profile,
            format,
        } => {
            let p: ParabolicData = load_json(&parabolic)?;
            let f: PullbackProfile = load_json(&profile)?;
            let report = pullback_report(&p, &f)?;
            match format {
                Format::Text => print!("{}", report.to_text()),
                Format::Json => println!("{}", to_canonical_json(&report)),
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
