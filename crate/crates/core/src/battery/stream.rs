//! Number streams feeding the randomness tests.

use crate::error::{Error, Location, Result};
use crate::rng::Seed;
use rand::Rng;
use serde::{Deserialize, Serialize};
use std::fs::File;
use std::io::{BufRead, BufReader, ErrorKind, Read};
use std::path::{Path, PathBuf};

/// Largest double below 1.
const BELOW_ONE: f64 = 1.0 - f64::EPSILON / 2.0;

/// Where the numbers under test come from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum StreamSource {
    /// One decimal literal per line (LF or CRLF); blank lines are skipped.
    FileText { path: PathBuf },
    /// Consecutive little-endian IEEE-754 doubles.
    FileBinary { path: PathBuf },
    /// iid uniforms on `[0, 1)`.
    GenUniform { seed: Seed },
    /// `X_1 ~ U[0,1)`, `X_{i+1} = alpha X_i + (1 - alpha) U_i`.
    GenAr { alpha: f64, seed: Seed },
}

impl StreamSource {
    pub fn uniform(seed: Seed) -> Self {
        StreamSource::GenUniform { seed }
    }

    pub fn autoregressive(alpha: f64, seed: Seed) -> Result<Self> {
        if !(0.0..1.0).contains(&alpha) {
            return Err(Error::domain(format!("AR coefficient must lie in [0, 1), got {alpha}")));
        }
        Ok(StreamSource::GenAr { alpha, seed })
    }

    /// Same source with a different seed; file sources are unchanged.
    pub fn reseeded(&self, seed: Seed) -> Self {
        match self {
            StreamSource::GenUniform { .. } => StreamSource::GenUniform { seed },
            StreamSource::GenAr { alpha, .. } => StreamSource::GenAr { alpha: *alpha, seed },
            other => other.clone(),
        }
    }
}

fn open(path: &Path) -> Result<File> {
    File::open(path).map_err(|e| Error::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display()))))
}

/// Reads exactly `count` values in `[0, 1)` from `source`.
pub fn read_stream(source: &StreamSource, count: usize) -> Result<Vec<f64>> {
    if count == 0 {
        return Err(Error::domain("count must be at least 1"));
    }
    match source {
        StreamSource::FileText { path } => read_text(BufReader::new(open(path)?), count),
        StreamSource::FileBinary { path } => read_binary(BufReader::new(open(path)?), count),
        StreamSource::GenUniform { seed } => {
            let mut rng = seed.rng();
            Ok((0..count).map(|_| rng.random::<f64>()).collect())
        }
        StreamSource::GenAr { alpha, seed } => {
            if !(0.0..1.0).contains(alpha) {
                return Err(Error::domain(format!("AR coefficient must lie in [0, 1), got {alpha}")));
            }
            let mut rng = seed.rng();
            let mut x: f64 = rng.random();
            let mut out = Vec::with_capacity(count);
            out.push(x);
            while out.len() < count {
                let u: f64 = rng.random();
                x = (alpha * x + (1.0 - alpha) * u).min(BELOW_ONE);
                out.push(x);
            }
            Ok(out)
        }
    }
}

fn check_unit(v: f64, location: Location) -> Result<f64> {
    if (0.0..1.0).contains(&v) {
        Ok(v)
    } else {
        Err(Error::Data { location, message: format!("value {v} outside [0, 1)") })
    }
}

pub(crate) fn read_text<R: BufRead>(reader: R, count: usize) -> Result<Vec<f64>> {
    let mut out = Vec::with_capacity(count);
    for (idx, line) in reader.lines().enumerate() {
        if out.len() == count {
            break;
        }
        let line = line?;
        let text = line.trim();
        if text.is_empty() {
            continue;
        }
        let location = Location::Line(idx + 1);
        let v: f64 = text
            .parse()
            .map_err(|_| Error::Data { location, message: format!("cannot parse '{text}' as a number") })?;
        out.push(check_unit(v, location)?);
    }
    if out.len() < count {
        return Err(Error::Truncated { needed: count, read: out.len() });
    }
    Ok(out)
}

pub(crate) fn read_binary<R: Read>(mut reader: R, count: usize) -> Result<Vec<f64>> {
    let mut out = Vec::with_capacity(count);
    let mut buf = [0u8; 8];
    while out.len() < count {
        match reader.read_exact(&mut buf) {
            Ok(()) => {}
            Err(e) if e.kind() == ErrorKind::UnexpectedEof => break,
            Err(e) => return Err(e.into()),
        }
        let location = Location::Offset(8 * out.len() as u64);
        out.push(check_unit(f64::from_le_bytes(buf), location)?);
    }
    if out.len() < count {
        return Err(Error::Truncated { needed: count, read: out.len() });
    }
    Ok(out)
}
