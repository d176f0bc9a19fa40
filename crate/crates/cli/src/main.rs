mod commands;
mod record;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use commands::{BackendKind, BackendParams, Mode, Suite, SynthParams, UsageError};
use record::Record;

const DEFAULT_DUMP_DIR: &str = "h90-counterexamples";

#[derive(Parser, Debug)]
#[command(name = "h90", version, about = "Check Hilbert 90 style statements on finite models")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    /// Treat the run as a negative control: exit 0 iff some check fails.
    #[arg(long, global = true)]
    expect_negative: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Axiom-by-axiom validation of a model file.
    Validate { path: PathBuf },

    /// Run a checker suite on a model file.
    Check {
        path: PathBuf,
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
    },

    /// Build a degree tower and check every degree.
    Backend {
        #[arg(value_enum)]
        kind: BackendKind,
        #[arg(long, value_parser = parse_prime)]
        p: Option<u32>,
        #[arg(long, value_parser = clap::value_parser!(u64).range(2..=10_000_000))]
        q: Option<u64>,
        #[arg(long, value_parser = clap::value_parser!(u64).range(2..=97))]
        ell: Option<u64>,
        /// One of u, ell, uell.
        #[arg(long)]
        a: Option<String>,
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..=8))]
        n_max: u64,
        #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(u32).range(6..=16))]
        precision: u32,
        /// Write the tower (manifest plus one model file per degree) here.
        #[arg(long)]
        dump_dir: Option<PathBuf>,
    },

    /// Generate random models and tally each property.
    Synth {
        #[arg(long, value_parser = parse_prime)]
        p: u32,
        #[arg(long, value_enum, default_value_t = Mode::Realizable)]
        mode: Mode,
        #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..=1_000_000))]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Bound on dim A when block sizes are drawn at random.
        #[arg(long, default_value_t = 12, value_parser = clap::value_parser!(u64).range(1..=40))]
        max_dim: u64,
        /// Fixed Jordan block sizes, e.g. `3` or `1,1,2`.
        #[arg(long, value_delimiter = ',')]
        blocks: Option<Vec<usize>>,
        /// Extra dimensions of B beyond the default (freeform only).
        #[arg(long, default_value_t = 0, value_parser = clap::value_parser!(u64).range(0..=20))]
        extra_b_dim: u64,
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        #[arg(long, default_value = DEFAULT_DUMP_DIR)]
        dump_dir: PathBuf,
    },

    /// Compare the fast checkers with exhaustive enumeration.
    Oracle {
        /// Model file; without it, random realizable models are generated.
        path: Option<PathBuf>,
        #[arg(long, value_parser = parse_prime)]
        p: Option<u32>,
        #[arg(long, default_value_t = 20, value_parser = clap::value_parser!(u64).range(1..=100_000))]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u64).range(1..=8))]
        max_dim: u64,
        #[arg(long, default_value = DEFAULT_DUMP_DIR)]
        dump_dir: PathBuf,
    },
}

fn parse_prime(s: &str) -> Result<u32, String> {
    match s.parse::<u32>() {
        Ok(p @ (2 | 3 | 5 | 7)) => Ok(p),
        _ => Err(format!("`{}` is not one of 2, 3, 5, 7", s)),
    }
}

fn run(cli: &Cli) -> Result<Vec<Record>, UsageError> {
    match &cli.command {
        Command::Validate { path } => commands::validate(path),
        Command::Check { path, suite } => commands::check(path, *suite),
        Command::Backend {
            kind,
            p,
            q,
            ell,
            a,
            n_max,
            precision,
            dump_dir,
        } => commands::backend(
            &BackendParams {
                kind: *kind,
                p: *p,
                q: *q,
                ell: *ell,
                a: a.clone(),
                n_max: *n_max as usize,
                precision: *precision,
            },
            dump_dir.as_deref(),
        ),
        Command::Synth {
            p,
            mode,
            trials,
            seed,
            max_dim,
            blocks,
            extra_b_dim,
            suite,
            dump_dir,
        } => commands::synth(
            &SynthParams {
                p: *p,
                mode: *mode,
                trials: *trials,
                seed: *seed,
                max_dim: *max_dim as usize,
                blocks: blocks.clone(),
                extra_b_dim: *extra_b_dim as usize,
                suite: *suite,
            },
            dump_dir,
        ),
        Command::Oracle {
            path,
            p,
            trials,
            seed,
            max_dim,
            dump_dir,
        } => match (path, p) {
            (Some(path), _) => commands::oracle_records(&commands::load_model(path)?),
            (None, Some(p)) => {
                commands::oracle_sweep(*p, *trials, *seed, *max_dim as usize, dump_dir)
            }
            (None, None) => Err(UsageError::Invalid(
                "oracle needs a model file or --p".into(),
            )),
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let records = match run(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {}", e);
            return ExitCode::from(2);
        }
    };
    match cli.format {
        Format::Text => {
            for r in &records {
                println!("{}", r);
            }
        }
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(&records).expect("records serialize")
        ),
    }
    let failed = records.iter().any(|r| r.is_failure());
    let ok = if cli.expect_negative { failed } else { !failed };
    if cli.expect_negative && !failed {
        eprintln!("expected a failing check, none failed");
    }
    ExitCode::from(if ok { 0 } else { 1 })
}
