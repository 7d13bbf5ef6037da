use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use vvhecke_cli::{render, run, Caps, ClassifyArgs, ClassifyMode, Format, RunConfig, Suite};

#[derive(Parser)]
#[command(name = "vvhecke", version, about = "Exact verification suites for quiver Hecke algebras of types A, B and D")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, value_enum, ignore_case = true, default_value_t = FormatArg::Json, global = true)]
    format: FormatArg,
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,
    #[arg(long, default_value_t = Caps::default().max_len, global = true)]
    max_len: usize,
    #[arg(long, default_value_t = Caps::default().max_ydeg, global = true)]
    max_ydeg: u32,
    #[arg(long, default_value_t = Caps::default().samples, global = true)]
    samples: usize,
    /// Include wall-clock time in the report.
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    B,
    D,
}

#[derive(Args)]
struct ConfigArg {
    /// Path to a JSON configuration.
    config: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Check the quiver, parameters, orbits and partition of a configuration.
    Validate(ConfigArg),
    /// Verify every defining relation on every orbit, plus the type D relations when they apply.
    Relations(ConfigArg),
    /// PBW round trips, closure under products and associativity.
    Pbw(ConfigArg),
    /// Full decomposition checks along the configured partition.
    Decompose(ConfigArg),
    /// Type D suites: W relations, iota/pi coherence, semidirect law, splitting.
    Typed(ConfigArg),
    /// Cyclotomic identities and transport through the decomposition.
    Cyclo(ConfigArg),
    /// Bijections and counts between orbits and component orbits.
    Orbits(ConfigArg),
    /// Normal forms, lengths and block embeddings of B_n.
    Coxeter {
        #[arg(long, default_value_t = 4)]
        max_rank: usize,
    },
    /// Morita case of cyclotomic Hecke parameters over a prime field.
    Classify {
        #[arg(long = "char")]
        characteristic: u64,
        #[arg(long)]
        q: Option<String>,
        #[arg(long)]
        p: Option<String>,
        #[arg(long)]
        x: Option<String>,
        #[arg(long, value_enum, ignore_case = true, default_value_t = ModeArg::B)]
        mode: ModeArg,
        /// Classify sampled parameter triples against the membership oracle.
        #[arg(long)]
        sweep: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (suite, config) = match cli.command {
        Command::Validate(c) => (Suite::Validate, Some(c.config)),
        Command::Relations(c) => (Suite::Relations, Some(c.config)),
        Command::Pbw(c) => (Suite::Pbw, Some(c.config)),
        Command::Decompose(c) => (Suite::Decompose, Some(c.config)),
        Command::Typed(c) => (Suite::Typed, Some(c.config)),
        Command::Cyclo(c) => (Suite::Cyclo, Some(c.config)),
        Command::Orbits(c) => (Suite::Orbits, Some(c.config)),
        Command::Coxeter { max_rank } => (Suite::Coxeter { max_rank }, None),
        Command::Classify { characteristic, q, p, x, mode, sweep } => {
            let mode = match mode {
                ModeArg::B => ClassifyMode::B,
                ModeArg::D => ClassifyMode::D,
            };
            (Suite::Classify(ClassifyArgs { characteristic, q, p, x, mode, sweep }), None)
        }
    };
    let format = match cli.format {
        FormatArg::Json => Format::Json,
        FormatArg::Text => Format::Text,
    };
    let rc = RunConfig {
        config,
        caps: Caps { max_len: cli.max_len, max_ydeg: cli.max_ydeg, samples: cli.samples },
        seed: cli.seed,
        format,
        timing: cli.timing,
        workers: RunConfig::workers_from_env(),
    };
    match run(&suite, &rc) {
        Ok(report) => {
            print!("{}", render(&report, rc.format));
            if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
