//! Resolution of command-line flags and an optional TOML file into a validated
//! [`RunConfig`]. Flags win over the file, the file wins over defaults.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;

use hyperstab::ffcurves::FqContext;
use hyperstab::partition::{parse_partition_list, Partition};
use hyperstab::series::Family;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Pretty,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Profile {
    Quick,
    Full,
}

#[derive(Debug, Parser)]
#[command(name = "hyperstab", version, about = "Stable homology series and hyperelliptic point-count statistics")]
pub struct Cli {
    /// TOML file supplying defaults for any flag
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Worker threads for the parallel kernels
    #[arg(long, global = true)]
    pub workers: Option<usize>,
    /// Directory holding per-(q, n) Frobenius data caches
    #[arg(long, global = true)]
    pub cache: Option<PathBuf>,
    #[command(subcommand)]
    pub command: CliCommand,
}

#[derive(Debug, Subcommand)]
pub enum CliCommand {
    /// Poincaré series and rational fits of a stable family
    Series(SeriesArgs),
    /// Brute-force Z_n coefficients against the stable traces
    Traces(TracesArgs),
    /// Moments of quadratic L-functions at the central point
    Moments(MomentsArgs),
    /// Runs the invariant suites and prints a pass/fail matrix
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct SeriesArgs {
    #[arg(long)]
    pub family: Option<String>,
    /// Partitions such as "2,1,1;4;∅"
    #[arg(long)]
    pub lambda: Option<String>,
    #[arg(long)]
    pub max_arity: Option<usize>,
    #[arg(long = "zmax", alias = "z-max")]
    pub z_max: Option<i64>,
    /// Trailing coefficients a rational fit must predict
    #[arg(long)]
    pub guard: Option<usize>,
}

#[derive(Debug, Args)]
pub struct TracesArgs {
    #[arg(long)]
    pub q: Option<u64>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub max_weight: Option<usize>,
    #[arg(long)]
    pub slack: Option<u32>,
}

#[derive(Debug, Args)]
pub struct MomentsArgs {
    #[arg(long)]
    pub q: Option<u64>,
    #[arg(long)]
    pub g: Option<usize>,
    #[arg(long)]
    pub r: Option<usize>,
    /// Largest |λ| kept in the stable prediction
    #[arg(long)]
    pub cutoff: Option<usize>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    pub profile: Option<Profile>,
    /// Flips the reciprocity sign in the residue symbol (negative control)
    #[arg(long, hide = true)]
    pub inject_fault: bool,
}

/// Keys of the config file. Every key is optional and shared by all commands.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub format: Option<Format>,
    pub workers: Option<usize>,
    pub cache: Option<PathBuf>,
    pub family: Option<String>,
    pub lambda: Option<String>,
    pub max_arity: Option<usize>,
    pub z_max: Option<i64>,
    pub guard: Option<usize>,
    pub q: Option<u64>,
    pub n: Option<usize>,
    pub max_weight: Option<usize>,
    pub slack: Option<u32>,
    pub g: Option<usize>,
    pub r: Option<usize>,
    pub cutoff: Option<usize>,
    pub profile: Option<Profile>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self, UsageError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| UsageError(format!("cannot read config {}: {e}", path.display())))?;
        toml::from_str(&text).map_err(|e| UsageError(format!("bad config {}: {e}", path.display())))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Command {
    Series { family: Family, lambdas: Vec<Partition>, max_arity: usize, z_max: i64, guard: usize },
    Traces { q: u64, n: usize, max_weight: usize, slack: u32 },
    Moments { q: u64, g: usize, r: usize, cutoff: usize },
    Verify { profile: Profile, inject_fault: bool },
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub format: Format,
    pub workers: usize,
    pub cache: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn usage<T>(msg: impl Into<String>) -> Result<T, UsageError> {
    Err(UsageError(msg.into()))
}

fn check_field(q: u64) -> Result<(), UsageError> {
    FqContext::new(q).map(|_| ()).map_err(|e| UsageError(format!("--q {q}: {e}; use an odd prime power such as 3, 5, 9")))
}

/// Keeps brute-force enumerations at a size that finishes in minutes.
fn check_enumeration(q: u64, n: usize, limit: f64) -> Result<(), UsageError> {
    let count = (q as f64).powi(n as i32);
    if count > limit {
        return usage(format!("q^n = {q}^{n} polynomials is beyond the supported enumeration size ({limit:e})"));
    }
    Ok(())
}

impl RunConfig {
    pub fn resolve(cli: Cli) -> Result<Self, UsageError> {
        let file = match &cli.config {
            Some(p) => FileConfig::load(p)?,
            None => FileConfig::default(),
        };
        let format = cli.format.or(file.format).unwrap_or(Format::Json);
        let workers = cli.workers.or(file.workers).unwrap_or_else(default_workers);
        if workers == 0 {
            return usage("--workers must be at least 1");
        }
        let cache = cli.cache.or(file.cache);
        let command = match cli.command {
            CliCommand::Series(a) => {
                let family_s = a.family.or(file.family).unwrap_or_else(|| "braid-schur".into());
                let family: Family = family_s.parse().map_err(|_| {
                    let names: Vec<&str> = Family::ALL.iter().map(|f| f.name()).collect();
                    UsageError(format!("unknown family `{family_s}`; expected one of {}", names.join(", ")))
                })?;
                let lambda_s =
                    a.lambda.or(file.lambda).ok_or_else(|| UsageError("series needs --lambda, e.g. --lambda 1,1".into()))?;
                let lambdas = parse_partition_list(&lambda_s).map_err(|e| UsageError(format!("--lambda: {e}")))?;
                if lambdas.is_empty() {
                    return usage("--lambda lists no partitions");
                }
                let widest = lambdas.iter().map(|l| l.weight()).max().unwrap_or(0);
                let max_arity = a.max_arity.or(file.max_arity).unwrap_or(widest.max(2));
                if max_arity < widest.max(2) {
                    return usage(format!("--max-arity {max_arity} is below the largest |λ| = {widest} (minimum 2)"));
                }
                if max_arity > 16 {
                    return usage("--max-arity above 16 is not supported");
                }
                let z_max = a.z_max.or(file.z_max).unwrap_or(8);
                if !(0..=64).contains(&z_max) {
                    return usage("--zmax must lie in 0..=64");
                }
                let guard = a.guard.or(file.guard).unwrap_or(6);
                Command::Series { family, lambdas, max_arity, z_max, guard }
            }
            CliCommand::Traces(a) => {
                let q = a.q.or(file.q).unwrap_or(3);
                check_field(q)?;
                let n = a.n.or(file.n).ok_or_else(|| UsageError("traces needs --n".into()))?;
                if n == 0 {
                    return usage("--n must be positive");
                }
                check_enumeration(q, n, 5e7)?;
                let max_weight = a.max_weight.or(file.max_weight).unwrap_or(4);
                if max_weight > 10 {
                    return usage("--max-weight above 10 is not supported");
                }
                let slack = a.slack.or(file.slack).unwrap_or(2);
                Command::Traces { q, n, max_weight, slack }
            }
            CliCommand::Moments(a) => {
                let q = a.q.or(file.q).unwrap_or(3);
                check_field(q)?;
                let g = a.g.or(file.g).ok_or_else(|| UsageError("moments needs --g".into()))?;
                let r = a.r.or(file.r).ok_or_else(|| UsageError("moments needs --r".into()))?;
                if g == 0 {
                    return usage("--g must be positive");
                }
                if r > 6 {
                    return usage("--r above 6 is not supported");
                }
                check_enumeration(q, 2 * g + 1, 5e6)?;
                let cutoff = a.cutoff.or(file.cutoff).unwrap_or(8);
                if cutoff > 12 {
                    return usage("--cutoff above 12 is not supported");
                }
                Command::Moments { q, g, r, cutoff }
            }
            CliCommand::Verify(a) => Command::Verify {
                profile: a.profile.or(file.profile).unwrap_or(Profile::Quick),
                inject_fault: a.inject_fault,
            },
        };
        Ok(RunConfig { command, format, workers, cache })
    }
}

fn default_workers() -> usize {
    std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)
}
