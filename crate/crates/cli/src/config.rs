use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qcvol_core::rng::DEFAULT_SEED;
use qcvol_core::ChannelKind;

#[derive(Debug, Parser)]
#[command(name = "qcvol", version, about = "Uniformly random qubit channels: volumes, samplers and radial laws")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Monte Carlo estimate of the channel volume.
    Volume {
        #[arg(long, value_enum, default_value_t = Kind::General)]
        kind: Kind,
        #[arg(long, default_value_t = 1_000_000, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        #[command(flatten)]
        common: Common,
    },
    /// Uniformly random channel parameters, one row per channel.
    Sample {
        #[arg(long, value_enum, default_value_t = Kind::General)]
        kind: Kind,
        #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        #[arg(long, value_enum, default_value_t = Sampler::Sequential)]
        sampler: Sampler,
        #[command(flatten)]
        common: Common,
    },
    /// Histogram of output Bloch radii for the input state (0, 0, r0).
    Push {
        #[arg(long, value_enum, default_value_t = Kind::General)]
        kind: Kind,
        #[arg(long, default_value_t = 0.0, value_parser = parse_unit)]
        r0: f64,
        #[arg(long, default_value_t = 10_000, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        #[arg(long, default_value_t = 50, value_parser = clap::value_parser!(u64).range(2..))]
        bins: u64,
        #[command(flatten)]
        common: Common,
    },
    /// Closed-form curve on a uniform grid.
    Density {
        #[arg(long, value_enum)]
        which: Which,
        /// Family used by `fz` and `cdf`.
        #[arg(long, value_enum, default_value_t = Kind::General)]
        kind: Kind,
        #[arg(long, default_value_t = 0.5, value_parser = parse_unit)]
        r0: f64,
        #[arg(long, default_value_t = 101, value_parser = clap::value_parser!(u64).range(2..))]
        grid: u64,
        #[command(flatten)]
        common: Common,
    },
    /// Two-sample KS tests of rotation invariance.
    Invariance {
        #[arg(long, default_value_t = 20, value_parser = clap::value_parser!(u64).range(1..))]
        rotations: u64,
        #[arg(long, default_value_t = 10_000, value_parser = clap::value_parser!(u64).range(100..))]
        n: u64,
        /// Multiplies the transformed affine maps by this factor.
        #[arg(long, hide = true)]
        scale: Option<f64>,
        #[command(flatten)]
        common: Common,
    },
    /// Mean Bloch radius under repeated random channels.
    Iterate {
        #[arg(long, value_enum, default_value_t = Kind::General)]
        kind: Kind,
        #[arg(long, default_value_t = 1.0, value_parser = parse_unit)]
        r0: f64,
        #[arg(long, default_value_t = 20, value_parser = clap::value_parser!(u64).range(1..))]
        steps: u64,
        /// Ensemble size.
        #[arg(long, default_value_t = 10_000, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Decimal or 0x-prefixed hexadecimal.
    #[arg(long, env = "QCVOL_SEED", default_value_t = DEFAULT_SEED, value_parser = parse_seed)]
    pub seed: u64,
    #[arg(long, default_value_t = default_workers(), value_parser = clap::value_parser!(u64).range(1..))]
    pub workers: u64,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Output file; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    General,
    Unital,
}

impl From<Kind> for ChannelKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::General => ChannelKind::General,
            Kind::Unital => ChannelKind::Unital,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Sampler {
    Sequential,
    Rejection,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
pub enum Which {
    Vaf,
    Va,
    Eta,
    KappaMm,
    KappaUnital,
    KappaGeneral,
    Fz,
    Cdf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CommandKind {
    Volume,
    Sample,
    Push,
    Density,
    Invariance,
    Iterate,
}

impl CommandKind {
    pub fn name(&self) -> &'static str {
        match self {
            CommandKind::Volume => "volume",
            CommandKind::Sample => "sample",
            CommandKind::Push => "push",
            CommandKind::Density => "density",
            CommandKind::Invariance => "invariance",
            CommandKind::Iterate => "iterate",
        }
    }
}

/// Flattened settings of one invocation; fields a command does not use keep
/// their defaults.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: CommandKind,
    pub kind: ChannelKind,
    pub n: u64,
    pub seed: u64,
    pub r0: f64,
    pub bins: usize,
    pub grid: usize,
    pub steps: usize,
    pub workers: usize,
    pub output_format: Format,
    pub output_path: Option<PathBuf>,
    pub which: Which,
    pub sampler: Sampler,
    pub rotations: usize,
    pub scale: Option<f64>,
    pub command_line: Vec<String>,
}

impl RunConfig {
    fn base(command: CommandKind, common: Common) -> Self {
        Self {
            command,
            kind: ChannelKind::General,
            n: 1,
            seed: common.seed,
            r0: 0.0,
            bins: 50,
            grid: 101,
            steps: 1,
            workers: common.workers as usize,
            output_format: common.format,
            output_path: common.out,
            which: Which::Eta,
            sampler: Sampler::Sequential,
            rotations: 0,
            scale: None,
            command_line: std::env::args().collect(),
        }
    }
}

impl From<Cli> for RunConfig {
    fn from(cli: Cli) -> Self {
        match cli.command {
            Command::Volume { kind, n, common } => RunConfig {
                kind: kind.into(),
                n,
                ..RunConfig::base(CommandKind::Volume, common)
            },
            Command::Sample { kind, n, sampler, common } => RunConfig {
                kind: kind.into(),
                n,
                sampler,
                ..RunConfig::base(CommandKind::Sample, common)
            },
            Command::Push { kind, r0, n, bins, common } => RunConfig {
                kind: kind.into(),
                r0,
                n,
                bins: bins as usize,
                ..RunConfig::base(CommandKind::Push, common)
            },
            Command::Density { which, kind, r0, grid, common } => RunConfig {
                which,
                kind: kind.into(),
                r0,
                grid: grid as usize,
                ..RunConfig::base(CommandKind::Density, common)
            },
            Command::Invariance { rotations, n, scale, common } => RunConfig {
                rotations: rotations as usize,
                n,
                scale,
                ..RunConfig::base(CommandKind::Invariance, common)
            },
            Command::Iterate { kind, r0, steps, n, common } => RunConfig {
                kind: kind.into(),
                r0,
                steps: steps as usize,
                n,
                ..RunConfig::base(CommandKind::Iterate, common)
            },
        }
    }
}

fn default_workers() -> u64 {
    std::thread::available_parallelism().map_or(1, |n| n.get() as u64)
}

fn parse_seed(s: &str) -> Result<u64, String> {
    let parsed = match s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        Some(hex) => u64::from_str_radix(hex, 16),
        None => s.parse(),
    };
    parsed.map_err(|e| format!("invalid seed '{s}': {e}"))
}

fn parse_unit(s: &str) -> Result<f64, String> {
    let x: f64 = s.parse().map_err(|e| format!("invalid number '{s}': {e}"))?;
    if (0.0..=1.0).contains(&x) {
        Ok(x)
    } else {
        Err(format!("{x} is outside [0, 1]"))
    }
}
