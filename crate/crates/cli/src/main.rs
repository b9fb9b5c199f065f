//! `shellbound` command-line front end.

mod commands;
mod export;

use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use anyhow::{bail, Context, Result};
use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use shellbound::verify::{Family, BOUND_TOL, DEFAULT_MODES};
use shellbound::{PinchSpec, SpaceCurvature};

#[derive(Debug, Parser)]
#[command(
    name = "shellbound",
    version,
    about = "Sharp spherical-shell bounds for curvature-pinched convex domains"
)]
struct Cli {
    /// Worker threads for `verify` (0 = one per core).
    #[arg(long, global = true, env = "SHELLBOUND_THREADS", default_value_t = 0)]
    threads: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the closed-form bounds for a curvature pinch.
    Bound(BoundArgs),
    /// Build a rounded spindle and export its meridian.
    Spindle(SpindleArgs),
    /// Measure generated bodies and check them against the bounds.
    Verify(VerifyArgs),
}

/// Ambient space and curvature pinch shared by every command.
#[derive(Debug, Clone, Args)]
#[command(group(ArgGroup::new("space").required(true).args(["flat", "spherical", "hyperbolic"])))]
pub struct PinchArgs {
    /// Euclidean space (c = 0).
    #[arg(long)]
    flat: bool,
    /// Sphere of curvature c = K^2.
    #[arg(long, value_name = "K")]
    spherical: Option<f64>,
    /// Hyperbolic space of curvature c = -K^2.
    #[arg(long, value_name = "K")]
    hyperbolic: Option<f64>,
    /// Lower normal-curvature bound.
    #[arg(long, allow_hyphen_values = true)]
    k1: f64,
    /// Upper normal-curvature bound.
    #[arg(long, allow_hyphen_values = true)]
    k2: f64,
}

impl PinchArgs {
    pub fn pinch(&self) -> Result<PinchSpec> {
        let space = match (self.flat, self.spherical, self.hyperbolic) {
            (true, None, None) => SpaceCurvature::flat(),
            (false, Some(k), None) => SpaceCurvature::spherical(k)?,
            (false, None, Some(k)) => SpaceCurvature::hyperbolic(k)?,
            _ => bail!("exactly one of --flat, --spherical, --hyperbolic is required"),
        };
        Ok(PinchSpec::new(space, self.k1, self.k2)?)
    }
}

#[derive(Debug, Args)]
pub struct BoundArgs {
    #[command(flatten)]
    pinch: PinchArgs,
    /// Inner radius at which to evaluate the outer-radius bound.
    #[arg(long)]
    r: Option<f64>,
    /// Emit full-precision JSON instead of text.
    #[arg(long)]
    json: bool,
}

/// Spindle parameter: a number or one of the extremal sentinels.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RTilde {
    Value(f64),
    MaxWidth,
    MaxQuotient,
}

impl FromStr for RTilde {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "max-width" => Ok(RTilde::MaxWidth),
            "max-quotient" => Ok(RTilde::MaxQuotient),
            _ => s.parse().map(RTilde::Value).map_err(|_| {
                format!("expected a number, `max-width` or `max-quotient`, got `{s}`")
            }),
        }
    }
}

#[derive(Debug, Args)]
pub struct SpindleArgs {
    #[command(flatten)]
    pinch: PinchArgs,
    /// Inscribed radius r~ in [R2, R1], `max-width` or `max-quotient`.
    #[arg(long, default_value = "max-width")]
    r: RTilde,
    /// Write sampled meridian points as CSV.
    #[arg(long, value_name = "PATH")]
    csv: Option<PathBuf>,
    /// Write an SVG drawing of the meridian.
    #[arg(long, value_name = "PATH")]
    svg: Option<PathBuf>,
    /// Number of meridian samples in the CSV and SVG outputs.
    #[arg(long, default_value_t = 720)]
    samples: usize,
    /// Emit full-precision JSON instead of text.
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FamilyArg {
    Random,
    Revolution,
    Spindle,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::Random => Family::Random,
            FamilyArg::Revolution => Family::Revolution,
            FamilyArg::Spindle => Family::Spindle,
        }
    }
}

/// Inclusive seed range `a..b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SeedRange {
    pub first: u64,
    pub last: u64,
}

impl FromStr for SeedRange {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let (a, b) = s
            .split_once("..")
            .ok_or_else(|| format!("expected `a..b`, got `{s}`"))?;
        let b = b.strip_prefix('=').unwrap_or(b);
        let first: u64 = a
            .trim()
            .parse()
            .map_err(|e| format!("bad seed `{a}`: {e}"))?;
        let last: u64 = b
            .trim()
            .parse()
            .map_err(|e| format!("bad seed `{b}`: {e}"))?;
        if last < first || last == u64::MAX {
            return Err(format!("empty or unsupported seed range `{s}`"));
        }
        Ok(SeedRange { first, last })
    }
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pinch: PinchArgs,
    /// Body generator.
    #[arg(long, value_enum, default_value = "random")]
    family: FamilyArg,
    /// Inclusive seed range.
    #[arg(long, default_value = "0..99")]
    seeds: SeedRange,
    /// Highest Fourier mode of random curves.
    #[arg(long, default_value_t = DEFAULT_MODES)]
    modes: usize,
    /// Number of r~ grid points for the spindle family.
    #[arg(long, default_value_t = 33)]
    grid: usize,
    /// Slack allowed on every bound comparison.
    #[arg(long, default_value_t = BOUND_TOL, allow_hyphen_values = true)]
    tol: f64,
    /// Write one JSON record per body.
    #[arg(long, value_name = "PATH")]
    report: Option<PathBuf>,
    /// Write a one-row CSV summary.
    #[arg(long, value_name = "PATH")]
    summary: Option<PathBuf>,
}

fn run(cli: Cli) -> Result<ExitCode> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(cli.threads)
        .build_global()
        .context("configuring the thread pool")?;
    match cli.command {
        Command::Bound(args) => commands::bound(&args),
        Command::Spindle(args) => commands::spindle(&args),
        Command::Verify(args) => commands::verify(&args),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
