//! Suite orchestration for `vvhecke`: configuration loading, seeded sampling and
//! order-normalised reports.

pub mod config;
pub mod report;
pub mod sample;
mod suites;

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::time::Instant;

use serde_json::{json, Value};

pub use config::{Config, ConfigError};
pub use report::{Case, Report, Status};
pub use suites::classify::{oracle_b, oracle_d, ClassifyArgs, ClassifyMode};

/// Environment variable holding the worker count.
pub const WORKERS_ENV: &str = "VVHECKE_WORKERS";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Suite {
    Validate,
    Relations,
    Pbw,
    Decompose,
    Typed,
    Cyclo,
    Orbits,
    Coxeter { max_rank: usize },
    Classify(ClassifyArgs),
}

impl Suite {
    pub fn name(&self) -> &'static str {
        match self {
            Suite::Validate => "validate",
            Suite::Relations => "relations",
            Suite::Pbw => "pbw",
            Suite::Decompose => "decompose",
            Suite::Typed => "typed",
            Suite::Cyclo => "cyclo",
            Suite::Orbits => "orbits",
            Suite::Coxeter { .. } => "coxeter",
            Suite::Classify(_) => "classify",
        }
    }

    pub fn needs_config(&self) -> bool {
        !matches!(self, Suite::Coxeter { .. } | Suite::Classify(_))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    pub max_len: usize,
    pub max_ydeg: u32,
    pub samples: usize,
}

impl Default for Caps {
    fn default() -> Caps {
        Caps { max_len: 4, max_ydeg: 2, samples: 1000 }
    }
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub config: Option<PathBuf>,
    pub caps: Caps,
    pub seed: u64,
    pub format: Format,
    /// Adds wall-clock time to the report, which then is no longer reproducible.
    pub timing: bool,
    pub workers: usize,
}

impl RunConfig {
    pub fn new(config: Option<PathBuf>) -> RunConfig {
        RunConfig { config, caps: Caps::default(), seed: 0, format: Format::Json, timing: false, workers: 1 }
    }

    /// Reads the worker count from [`WORKERS_ENV`], defaulting to 1.
    pub fn workers_from_env() -> usize {
        std::env::var(WORKERS_ENV).ok().and_then(|s| s.parse().ok()).filter(|&w| w > 0).unwrap_or(1)
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("invalid argument: {0}")]
    Argument(String),
}

/// Runs one suite and assembles its report.
pub fn run(suite: &Suite, rc: &RunConfig) -> Result<Report, CliError> {
    let caps = rc.caps;
    if caps.max_len == 0 || caps.samples == 0 {
        return Err(CliError::Argument("caps must be positive".into()));
    }
    let start = Instant::now();
    let mut params: BTreeMap<String, Value> = BTreeMap::new();
    params.insert("seed".into(), json!(rc.seed));
    params.insert("max_len".into(), json!(caps.max_len));
    params.insert("max_ydeg".into(), json!(caps.max_ydeg));
    params.insert("samples".into(), json!(caps.samples));
    let ctx = suites::Ctx { caps, seed: rc.seed, workers: rc.workers.max(1) };
    let cases = if suite.needs_config() {
        let path = rc.config.as_ref().ok_or_else(|| CliError::Argument(format!("{} needs a config file", suite.name())))?;
        let cfg = Config::load(path)?;
        params.extend(suites::echo(&cfg));
        suites::run_config(suite, &cfg, &ctx)?
    } else {
        match suite {
            Suite::Coxeter { max_rank } => {
                params.insert("max_rank".into(), json!(max_rank));
                suites::coxeter::run(*max_rank).map_err(CliError::Argument)?
            }
            Suite::Classify(args) => {
                params.extend(args.echo());
                suites::classify::run(args, &ctx).map_err(CliError::Argument)?
            }
            _ => unreachable!("config-free suites"),
        }
    };
    let mut report = Report::new(suite.name(), params, cases);
    if rc.timing {
        report.timing_ms = Some(start.elapsed().as_millis());
    }
    Ok(report)
}

/// Renders a report in the requested format.
pub fn render(report: &Report, format: Format) -> String {
    match format {
        Format::Json => report.to_json(),
        Format::Text => report.to_text(),
    }
}
