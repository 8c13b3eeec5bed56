use std::path::PathBuf;

use clap::{Args, ValueEnum};
use primebound::grid_verifier::GridOptions;
use primebound::prime_engine::{EngineConfig, PrimeEngine, DEFAULT_CEILING, HARD_CAP};
use primebound::range_verifier::{VerifyOptions, DEFAULT_CHUNK_SIZE};
use primebound::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Precision {
    /// `f64` intervals only; undecided points stay unresolved.
    Standard,
    /// Retry undecided points at 128 and 340 bits.
    Escalating,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Output {
    Json,
    Csv,
    Human,
}

/// Settings shared by every subcommand. Each flag can also be set through
/// the matching `PRIMEBOUND_*` environment variable.
#[derive(Clone, Debug, Args)]
pub struct RunConfig {
    /// Largest prime value the sieve may reach.
    #[arg(long, global = true, env = "PRIMEBOUND_CEILING", value_parser = parse_count, default_value_t = DEFAULT_CEILING)]
    pub ceiling: u64,

    /// Worker threads [default: available cores].
    #[arg(long, global = true, env = "PRIMEBOUND_WORKERS")]
    pub workers: Option<usize>,

    /// Indices (or grid cells) per work item.
    #[arg(long, global = true, env = "PRIMEBOUND_CHUNK_SIZE", value_parser = parse_count, default_value_t = DEFAULT_CHUNK_SIZE)]
    pub chunk_size: u64,

    #[arg(long, global = true, env = "PRIMEBOUND_PRECISION", value_enum, default_value_t = Precision::Escalating)]
    pub precision: Precision,

    #[arg(long, global = true, env = "PRIMEBOUND_OUTPUT", value_enum, default_value_t = Output::Human)]
    pub output: Output,

    /// Directory for progress and checkpoint files of range scans.
    #[arg(long, global = true, env = "PRIMEBOUND_CHECKPOINT_DIR")]
    pub checkpoint_dir: Option<PathBuf>,

    /// Continue an interrupted scan from the checkpoint directory.
    #[arg(long, global = true, env = "PRIMEBOUND_RESUME")]
    pub resume: bool,

    /// Admit bounds that rest on an unproven hypothesis.
    #[arg(long, global = true, env = "PRIMEBOUND_ALLOW_CONDITIONAL")]
    pub allow_conditional: bool,
}

/// Accepts `1000000`, `1_000_000` and `1e6`.
pub fn parse_count(s: &str) -> std::result::Result<u64, String> {
    let t = s.replace('_', "");
    if let Ok(v) = t.parse::<u64>() {
        return Ok(v);
    }
    let q = primebound::numeric::rational::parse(&t).map_err(|e| e.to_string())?;
    if !q.is_integer() || *q.numer() < 0 || *q.numer() > u64::MAX as i128 {
        return Err(format!("`{s}` is not a nonnegative integer"));
    }
    Ok(*q.numer() as u64)
}

/// `LO..HI` or `LO:HI`, both ends inclusive.
pub fn parse_range(s: &str) -> std::result::Result<(u64, u64), String> {
    let (a, b) = s
        .split_once("..")
        .or_else(|| s.split_once(':'))
        .ok_or_else(|| format!("range `{s}` should look like LO..HI"))?;
    let (a, b) = (parse_count(a.trim())?, parse_count(b.trim())?);
    if a > b {
        return Err(format!("empty range `{s}`"));
    }
    Ok((a, b))
}

impl RunConfig {
    pub fn workers(&self) -> usize {
        self.workers
            .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
    }

    pub fn validate(&self) -> Result<()> {
        if self.workers() == 0 {
            return Err(Error::Argument("--workers must be at least 1".into()));
        }
        if self.ceiling > HARD_CAP {
            return Err(Error::Argument(format!("--ceiling is above the hard cap {HARD_CAP}")));
        }
        if self.chunk_size < 1000 {
            return Err(Error::Argument("--chunk-size must be at least 1000".into()));
        }
        Ok(())
    }

    pub fn engine(&self) -> Result<PrimeEngine> {
        PrimeEngine::new(EngineConfig { ceiling: self.ceiling, workers: self.workers(), ..EngineConfig::default() })
    }

    pub fn verify_options(&self) -> VerifyOptions {
        VerifyOptions {
            chunk_size: self.chunk_size,
            escalate: self.precision == Precision::Escalating,
            allow_conditional: self.allow_conditional,
            checkpoint_dir: self.checkpoint_dir.clone(),
            resume: self.resume,
        }
    }

    pub fn grid_options(&self) -> GridOptions {
        GridOptions {
            workers: self.workers(),
            escalate: self.precision == Precision::Escalating,
            ..GridOptions::default()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_and_ranges() {
        assert_eq!(parse_count("1e6"), Ok(1_000_000));
        assert_eq!(parse_count("50_847_534"), Ok(50_847_534));
        assert!(parse_count("1.5").is_err());
        assert!(parse_count("-3").is_err());
        assert_eq!(parse_range("2..1e3"), Ok((2, 1000)));
        assert_eq!(parse_range("5:5"), Ok((5, 5)));
        assert!(parse_range("9..3").is_err());
        assert!(parse_range("9").is_err());
    }
}
