//! Checkpoint records: `n,p_n,theta_lo_hex,theta_hi_hex`, one per line.

use std::fs;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::numeric::{hexfloat, Interval};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CheckpointRecord {
    pub n: u64,
    pub p: u64,
    pub theta: Interval,
}

impl CheckpointRecord {
    pub fn to_line(&self) -> String {
        format!(
            "{},{},{},{}",
            self.n,
            self.p,
            hexfloat::format(self.theta.lo),
            hexfloat::format(self.theta.hi)
        )
    }

    pub fn parse_line(line: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("checkpoint line `{line}`"));
        let f: Vec<&str> = line.trim().split(',').collect();
        if f.len() != 4 {
            return Err(bad());
        }
        let lo = hexfloat::parse(f[2])?;
        let hi = hexfloat::parse(f[3])?;
        if !(lo <= hi) {
            return Err(bad());
        }
        Ok(CheckpointRecord {
            n: f[0].parse().map_err(|_| bad())?,
            p: f[1].parse().map_err(|_| bad())?,
            theta: Interval { lo, hi },
        })
    }
}

pub fn append(path: &Path, records: &[CheckpointRecord]) -> Result<()> {
    let mut f = fs::OpenOptions::new().create(true).append(true).open(path)?;
    let mut buf = String::new();
    for r in records {
        buf.push_str(&r.to_line());
        buf.push('\n');
    }
    f.write_all(buf.as_bytes())?;
    f.sync_data()?;
    Ok(())
}

pub fn read(path: &Path) -> Result<Vec<CheckpointRecord>> {
    let f = fs::File::open(path)?;
    let mut out = Vec::new();
    for line in BufReader::new(f).lines() {
        let line = line?;
        if !line.trim().is_empty() {
            out.push(CheckpointRecord::parse_line(&line)?);
        }
    }
    Ok(out)
}

/// Drops every record with index `>= n`, e.g. ones written by a batch that
/// was interrupted before its progress marker.
pub fn truncate_from(path: &Path, n: u64) -> Result<()> {
    if !path.exists() {
        return Ok(());
    }
    let kept: Vec<_> = read(path)?.into_iter().filter(|r| r.n < n).collect();
    let tmp = path.with_extension("tmp");
    fs::write(&tmp, "")?;
    append(&tmp, &kept)?;
    fs::rename(tmp, path)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn line_round_trip() {
        let r = CheckpointRecord {
            n: 4,
            p: 7,
            theta: Interval::new(5.347107530717467, 5.347107530717469),
        };
        let line = r.to_line();
        assert!(line.starts_with("4,7,0x1.5"));
        assert_eq!(CheckpointRecord::parse_line(&line).unwrap(), r);
    }

    #[test]
    fn malformed_lines_are_rejected() {
        assert!(CheckpointRecord::parse_line("1,2,3").is_err());
        assert!(CheckpointRecord::parse_line("1,2,0x1p+1,0x1p+0").is_err());
    }

    #[test]
    fn truncation_keeps_earlier_records() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.csv");
        let recs: Vec<_> = (1..=5)
            .map(|n| CheckpointRecord { n, p: n, theta: Interval::point(n as f64) })
            .collect();
        append(&path, &recs).unwrap();
        truncate_from(&path, 3).unwrap();
        assert_eq!(read(&path).unwrap(), recs[..2].to_vec());
    }
}
