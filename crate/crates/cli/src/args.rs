use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use probident_core::exact::{parse_rational, Rational};
use probident_core::identities::IdentityId;
use probident_core::montecarlo::{StatisticId, DEFAULT_SEED};

pub const DEFAULT_SAMPLES: u64 = 1_000_000;
pub const DEFAULT_TOL: f64 = 1e-8;
pub const DEFAULT_SERIES_TERMS: u64 = 10_000;

#[derive(Parser, Debug)]
#[command(name = "probident", version, about = "Exact and numerical checks of gamma/beta moment identities")]
pub struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Write the output to this file instead of standard output
    #[arg(long, global = true, value_name = "PATH")]
    pub output: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Verify one identity exactly at one order
    Verify(VerifyArgs),
    /// Verify one identity for n = 1..=n-max
    Sweep(SweepArgs),
    /// Monte Carlo moment estimate with a z-test against the exact value
    Sample(SampleArgs),
    /// Exact partial sum of the arcsine-moment series with its tail bound
    Series(SeriesArgs),
    /// Density of the difference of two arcsine variables and its moments
    Density(DensityArgs),
    /// Every identity over a range of orders, with series tallies
    Report(ReportArgs),
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long, value_parser = parse_identity)]
    pub identity: IdentityId,
    #[arg(long)]
    pub n: u64,
    /// Shape p, or the number of factors m for multi-convolution ("a/b" or integer)
    #[arg(long, value_parser = parse_rational_arg)]
    pub p: Option<Rational>,
}

#[derive(Args, Debug)]
pub struct SweepArgs {
    #[arg(long, value_parser = parse_identity)]
    pub identity: IdentityId,
    #[arg(long)]
    pub n_max: u64,
    /// Comma-separated parameter values, e.g. "1/3,1/2,1"
    #[arg(long, value_parser = parse_rational_list)]
    pub p_list: Option<RationalList>,
}

#[derive(Args, Debug)]
pub struct SampleArgs {
    #[arg(long, value_parser = parse_statistic)]
    pub statistic: StatisticId,
    /// Moment order; the estimated power is 2n (2n+1 with --odd)
    #[arg(long)]
    pub n: u32,
    #[arg(long, value_parser = parse_rational_arg)]
    pub p: Option<Rational>,
    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    pub samples: u64,
    /// Decimal or 0x-prefixed hexadecimal
    #[arg(long, value_parser = parse_seed, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long, default_value_t = 0)]
    pub stream: u64,
    /// Estimate the odd moment of power 2n+1 instead
    #[arg(long)]
    pub odd: bool,
}

#[derive(Args, Debug)]
pub struct SeriesArgs {
    #[arg(long)]
    pub n: u64,
    #[arg(long, default_value_t = DEFAULT_SERIES_TERMS)]
    pub terms: u64,
}

#[derive(Args, Debug)]
pub struct DensityArgs {
    /// Number of evenly spaced interior points of (-1, 1)
    #[arg(long)]
    pub points: usize,
    #[arg(long, default_value_t = DEFAULT_TOL)]
    pub tol: f64,
}

#[derive(Args, Debug)]
pub struct ReportArgs {
    /// Cover every identity
    #[arg(long, conflicts_with = "identity")]
    pub all: bool,
    /// Restrict the report to one identity
    #[arg(long, value_parser = parse_identity)]
    pub identity: Option<IdentityId>,
    #[arg(long)]
    pub n_max: u64,
    /// Terms per arcsine-moment series tally
    #[arg(long, default_value_t = DEFAULT_SERIES_TERMS)]
    pub terms: u64,
}

#[derive(Clone, Debug)]
pub struct RationalList(pub Vec<Rational>);

fn parse_identity(s: &str) -> Result<IdentityId, String> {
    s.parse().map_err(|e| {
        let known: Vec<&str> = IdentityId::ALL.iter().map(|id| id.tag()).collect();
        format!("{e}; expected one of {}", known.join(", "))
    })
}

fn parse_statistic(s: &str) -> Result<StatisticId, String> {
    s.parse().map_err(|e| {
        let known: Vec<&str> = StatisticId::ALL.iter().map(|id| id.tag()).collect();
        format!("{e}; expected one of {}", known.join(", "))
    })
}

fn parse_rational_arg(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

fn parse_rational_list(s: &str) -> Result<RationalList, String> {
    s.split(',').map(parse_rational_arg).collect::<Result<_, _>>().map(RationalList)
}

fn parse_seed(s: &str) -> Result<u64, String> {
    let t = s.trim();
    let parsed = match t.strip_prefix("0x").or_else(|| t.strip_prefix("0X")) {
        Some(hex) => u64::from_str_radix(&hex.replace('_', ""), 16),
        None => t.replace('_', "").parse(),
    };
    parsed.map_err(|e| format!("invalid seed {s:?}: {e}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_seed_literal_matches_core() {
        assert_eq!(parse_seed("0x9E3779B97F4A7C15").unwrap(), DEFAULT_SEED);
        assert_eq!(parse_seed("42").unwrap(), 42);
        assert!(parse_seed("0xZZ").is_err());
    }

    #[test]
    fn rational_lists() {
        let l = parse_rational_list("1/3,1/2,1").unwrap();
        assert_eq!(l.0.len(), 3);
        assert!(parse_rational_list("1/3,0.5").is_err());
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
