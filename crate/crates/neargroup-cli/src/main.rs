//! Batch command-line interface emitting machine-readable verification
//! reports. Exit codes: 0 = all verdicts pass, 1 = some verdict failed,
//! 2 = usage or environment error.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use neargroup_cli::commands::{
    cmd_category, cmd_check_group, cmd_dump_cochain, cmd_dump_group, cmd_full, cmd_indicators,
    cmd_invertibles, cmd_verify_cocycles, Settings,
};
use neargroup_cli::report::Report;

#[derive(Parser)]
#[command(
    name = "neargroup",
    version,
    about = "Exact verification reports for near-group fusion category data built from G_n = (V_n + V_n) : S4"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Root-of-unity modulus N (a positive multiple of 36)
    #[arg(long = "N", global = true, default_value_t = 36, env = "NEARGROUP_N")]
    modulus: u32,
    /// Seed for sampled verifications (reports are byte-stable per seed)
    #[arg(long, global = true, default_value_t = 42, env = "NEARGROUP_SEED")]
    seed: u64,
    /// Sample count for sampled verifications
    #[arg(
        long,
        global = true,
        default_value_t = 1_000_000,
        env = "NEARGROUP_SAMPLES"
    )]
    samples: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json, env = "NEARGROUP_FORMAT")]
    format: Format,
    /// Write the report to this path instead of stdout
    #[arg(long, global = true, env = "NEARGROUP_OUT")]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Tsv,
}

#[derive(Clone, Copy, ValueEnum)]
enum GroupKind {
    S3,
    S4,
    Gn,
    Hn,
    Kn,
}

#[derive(Clone, Copy, ValueEnum)]
enum CochainKind {
    Omega0,
    Omega,
    OmegaN,
}

#[derive(Subcommand)]
enum Command {
    /// Verify d(omega_0) = 1, adaptedness of omega/omega_n, the closed
    /// formula, and the [omega_0^l] triviality pattern
    VerifyCocycles {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
        n: u8,
    },
    /// Emit the simple-object table of C(G_n, omega_n^l, H_n, 1)
    Category {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
        n: u8,
        #[arg(long, value_parser = clap::value_parser!(u8).range(0..=5))]
        l: u8,
    },
    /// Frobenius-Schur indicators nu_k of the non-invertible simple
    Indicators {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
        n: u8,
        #[arg(long, value_parser = clap::value_parser!(u8).range(0..=5))]
        l: u8,
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u8).range(1..=12))]
        kmax: u8,
    },
    /// Rebuild the invertible-object group and identify its type
    Invertibles {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
        n: u8,
        #[arg(long, value_parser = clap::value_parser!(u8).range(0..=5))]
        l: u8,
    },
    /// Run the whole (n, l) grid and cross-check the closed forms
    Full {
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u8).range(1..=3))]
        nmax: u8,
    },
    /// Emit a group as a JSON document {order, mul, labels, cyclic_cert?}
    DumpGroup {
        #[arg(long, value_enum)]
        which: GroupKind,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=3))]
        n: u8,
    },
    /// Validate a group JSON document (axioms and certificate)
    CheckGroup {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Emit a cochain as a JSON document (table or pullback descriptor)
    DumpCochain {
        #[arg(long, value_enum)]
        which: CochainKind,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=3))]
        n: u8,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(0..=5))]
        l: u8,
    },
}

fn write_output(text: &str, out: &Option<PathBuf>) -> anyhow::Result<()> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn emit_report(report: Report, cli: &Cli) -> anyhow::Result<ExitCode> {
    let text = match cli.format {
        Format::Json => report.to_json(),
        Format::Tsv => report.to_tsv(),
    };
    write_output(&text, &cli.out)?;
    eprintln!(
        "{}: {} in {:.1?}",
        report.command,
        if report.all_pass {
            "all checks passed"
        } else {
            "CHECKS FAILED"
        },
        report.runtime
    );
    Ok(if report.all_pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn run(cli: &Cli) -> anyhow::Result<ExitCode> {
    let st = Settings {
        modulus: cli.modulus,
        seed: cli.seed,
        samples: cli.samples,
    };
    match &cli.command {
        Command::VerifyCocycles { n } => emit_report(cmd_verify_cocycles(*n as usize, st)?, cli),
        Command::Category { n, l } => emit_report(cmd_category(*n as usize, *l as i64, st)?, cli),
        Command::Indicators { n, l, kmax } => emit_report(
            cmd_indicators(*n as usize, *l as i64, *kmax as u32, st)?,
            cli,
        ),
        Command::Invertibles { n, l } => {
            emit_report(cmd_invertibles(*n as usize, *l as i64, st)?, cli)
        }
        Command::Full { nmax } => emit_report(cmd_full(*nmax as usize, st)?, cli),
        Command::DumpGroup { which, n } => {
            let which = match which {
                GroupKind::S3 => "s3",
                GroupKind::S4 => "s4",
                GroupKind::Gn => "gn",
                GroupKind::Hn => "hn",
                GroupKind::Kn => "kn",
            };
            write_output(&cmd_dump_group(which, *n as usize, st)?, &cli.out)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::CheckGroup { input } => emit_report(cmd_check_group(input)?, cli),
        Command::DumpCochain { which, n, l } => {
            let which = match which {
                CochainKind::Omega0 => "omega0",
                CochainKind::Omega => "omega",
                CochainKind::OmegaN => "omega-n",
            };
            write_output(
                &cmd_dump_cochain(which, *n as usize, *l as i64, st)?,
                &cli.out,
            )?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
