use std::fmt;

use clap::{Args, Parser, Subcommand, ValueEnum};
use parity_psi_core::ring::BaseRing;

#[derive(Debug, Parser)]
#[command(name = "parity-psi", version, about = "Exact checks for the nearby-cycles complex on affine space")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub opts: RunConfig,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Run every identity, chain-map, homotopy and table check.
    Verify,
    /// Emit the complex for nearby cycles.
    Psi,
    /// Monodromy filtration layers and associated-graded tables.
    Grm,
    /// Admissible elements and Hecke subexpression coefficients.
    Weyl,
    /// Polynomial identities for the open chart.
    Chart,
    /// Relations consumed while validating the complex.
    Usage,
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Command::Verify => "verify",
            Command::Psi => "psi",
            Command::Grm => "grm",
            Command::Weyl => "weyl",
            Command::Chart => "chart",
            Command::Usage => "usage",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Latex,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    /// Report relation usage without enforcing a bound.
    Affine,
    /// Fail unless every unit sum is on a stratum with |I| <= n - 2.
    Global,
}

#[derive(Debug, Clone, Args)]
pub struct RunConfig {
    #[arg(long, global = true, default_value_t = 3)]
    pub n: usize,
    /// z, q, or gf:P for a prime P.
    #[arg(long, global = true, default_value = "z", value_parser = parse_ring)]
    pub ring: BaseRing,
    #[arg(long, global = true, value_enum, default_value_t = Mode::Affine)]
    pub mode: Mode,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Restrict `verify` to one suite.
    #[arg(long, global = true)]
    pub suite: Option<String>,
    /// Tate twist applied by `psi`.
    #[arg(long, global = true, default_value_t = -1, allow_hyphen_values = true)]
    pub twist: i64,
    /// Break `grm` tables down by individual stratum.
    #[arg(long, global = true)]
    pub refine: bool,
    /// Force the brute-force oracles on or off (default: on for small n).
    #[arg(long, global = true)]
    pub oracles: Option<bool>,
}

pub fn parse_ring(s: &str) -> Result<BaseRing, String> {
    match s.to_ascii_lowercase().as_str() {
        "z" => Ok(BaseRing::Integers),
        "q" => Ok(BaseRing::Rationals),
        other => {
            let p = other.strip_prefix("gf:").ok_or_else(|| format!("unknown ring `{s}`; use z, q or gf:P"))?;
            let p: u64 = p.parse().map_err(|_| format!("`{p}` is not a number"))?;
            BaseRing::prime_field(p).map_err(|e| e.to_string())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rings() {
        assert_eq!(parse_ring("z"), Ok(BaseRing::Integers));
        assert_eq!(parse_ring("Q"), Ok(BaseRing::Rationals));
        assert_eq!(parse_ring("gf:7"), Ok(BaseRing::PrimeField(7)));
        assert!(parse_ring("gf:8").is_err());
        assert!(parse_ring("r").is_err());
    }

    #[test]
    fn negative_twist_parses() {
        let cli = Cli::try_parse_from(["parity-psi", "psi", "--twist", "-2"]).unwrap();
        assert_eq!(cli.opts.twist, -2);
        assert_eq!(cli.command, Command::Psi);
    }
}
