use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use ecverify::ledger::{self, Format, LedgerOptions, Section};
use ecverify::WeierstrassCurve;

/// Verification ledger for elliptic curves over Q.
#[derive(Parser)]
#[command(name = "ecverify", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Weierstrass coefficients a1,a2,a3,a4,a6
    #[arg(long, global = true, default_value = "1,1,1,-10,-10", allow_hyphen_values = true)]
    curve: WeierstrassCurve,

    #[arg(long, global = true, default_value_t = 10_000)]
    prime_bound: u64,

    /// Primes l for the mod-l surjectivity certificates
    #[arg(long, global = true, default_value = "3,5,7", value_parser = parse_l_list)]
    l_list: LList,

    /// Terms of the L-series (raised automatically for large conductors)
    #[arg(long, global = true, default_value_t = 2000)]
    terms: usize,

    #[arg(long, global = true, default_value_t = 128)]
    precision_bits: u32,

    #[arg(long, global = true, default_value_t = 20)]
    padic_digits: u32,

    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Json)]
    format: OutputFormat,

    /// Write the report here instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Clone, Copy)]
enum Command {
    /// Run every check in proof order
    Ledger,
    /// Invariants and minimality
    Invariants,
    /// Conductor, reduction types and Tamagawa numbers
    Local,
    /// Torsion subgroup and 2-isogenies
    Torsion,
    /// Point counts: the ordinary criterion and the Hasse inequality
    Count,
    /// Mod-8 image checks (built-in data for [1,1,1,-10,-10] only)
    ImageMod8,
    /// Mod-l surjectivity certificates
    ImageModl,
    /// L(E,1)/Omega
    Lvalue,
    /// L-invariants at split multiplicative primes
    Linv,
}

#[derive(ValueEnum, Clone, Copy)]
enum OutputFormat {
    Json,
    Text,
}

// clap treats Vec<T> fields as repeated values, so the parsed list is wrapped
#[derive(Clone)]
struct LList(Vec<u32>);

fn parse_l_list(s: &str) -> Result<LList, String> {
    ledger::parse_l_list(s).map(LList).map_err(|e| e.to_string())
}

fn sections(cmd: Command) -> &'static [Section] {
    match cmd {
        Command::Ledger => &Section::ALL,
        Command::Invariants => &[Section::Invariants],
        Command::Local => &[Section::Local],
        Command::Torsion => &[Section::Torsion],
        Command::Count => &[Section::Count],
        Command::ImageMod8 => &[Section::ImageMod8],
        Command::ImageModl => &[Section::ImageModl],
        Command::Lvalue => &[Section::LValue],
        Command::Linv => &[Section::Linv],
    }
}

fn run(cli: Cli) -> Result<bool> {
    let options = LedgerOptions {
        prime_bound: cli.prime_bound,
        l_list: cli.l_list.0,
        terms: cli.terms,
        precision_bits: cli.precision_bits,
        padic_digits: cli.padic_digits,
    };
    let report = ledger::run_sections(&cli.curve, &options, sections(cli.command));
    let format = match cli.format {
        OutputFormat::Json => Format::Json,
        OutputFormat::Text => Format::Text,
    };
    let body = ledger::emit_report(&report, format);
    match &cli.out {
        Some(path) => std::fs::write(path, body).with_context(|| format!("writing {}", path.display()))?,
        None => print!("{body}"),
    }
    Ok(report.is_verified())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
