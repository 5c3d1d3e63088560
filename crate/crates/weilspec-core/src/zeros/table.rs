//! Tables of nontrivial-zero ordinates.

use crate::error::{Error, Result, ZerosFormatError};
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

/// Ascending positive ordinates (imaginary parts) of nontrivial zeta zeros.
///
/// File format: ASCII text, one positive decimal ordinate per line,
/// ascending; comment lines start with `#`; blank lines are ignored.
#[derive(Debug, Clone)]
pub struct ZerosTable {
    ordinates: Vec<f64>,
    source: String,
}

impl ZerosTable {
    pub fn load(path: impl AsRef<Path>) -> Result<ZerosTable> {
        let path = path.as_ref();
        let file = std::fs::File::open(path).map_err(|source| Error::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::read(BufReader::new(file), &path.display().to_string())
    }

    /// Parse from any reader; `source` only labels error messages.
    pub fn read(reader: impl BufRead, source: &str) -> Result<ZerosTable> {
        let fail = |kind| Error::ZerosFormat {
            path: source.to_string(),
            kind,
        };
        let mut ordinates = Vec::new();
        for (idx, line) in reader.lines().enumerate() {
            let line_no = idx + 1;
            let line = line.map_err(|source| Error::Io {
                path: source.to_string(),
                source,
            })?;
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let value: f64 = trimmed.parse().map_err(|_| {
                fail(ZerosFormatError::Parse {
                    line: line_no,
                    content: trimmed.to_string(),
                })
            })?;
            if !value.is_finite() || value <= 0.0 {
                return Err(fail(ZerosFormatError::NonPositive {
                    line: line_no,
                    value,
                }));
            }
            if let Some(&previous) = ordinates.last() {
                if value <= previous {
                    return Err(fail(ZerosFormatError::NotAscending {
                        line: line_no,
                        value,
                        previous,
                    }));
                }
            }
            ordinates.push(value);
        }
        if ordinates.is_empty() {
            return Err(fail(ZerosFormatError::Empty));
        }
        Ok(ZerosTable {
            ordinates,
            source: source.to_string(),
        })
    }

    pub fn from_ordinates(ordinates: Vec<f64>, source: &str) -> Result<ZerosTable> {
        let text = ordinates
            .iter()
            .map(|v| format!("{v}"))
            .collect::<Vec<_>>()
            .join("\n");
        Self::read(std::io::Cursor::new(text), source)
    }

    /// Write the table back out, one ordinate per line, with full
    /// round-trip precision.
    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        let mut file = std::fs::File::create(path).map_err(|source| Error::Io {
            path: path.display().to_string(),
            source,
        })?;
        let mut text = String::new();
        for v in &self.ordinates {
            text.push_str(&format!("{v}\n"));
        }
        file.write_all(text.as_bytes()).map_err(|source| Error::Io {
            path: path.display().to_string(),
            source,
        })
    }

    pub fn count(&self) -> usize {
        self.ordinates.len()
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn ordinates(&self) -> &[f64] {
        &self.ordinates
    }

    /// 1-based access: `gamma(1)` is the first ordinate.
    pub fn gamma(&self, index: usize) -> f64 {
        self.ordinates[index - 1]
    }

    pub fn require_count(&self, needed: usize) -> Result<()> {
        if self.count() < needed {
            Err(Error::Shortfall {
                what: "zero ordinates",
                needed,
                available: self.count(),
            })
        } else {
            Ok(())
        }
    }
}

/// Riemann-von Mangoldt main term
/// `N(T) ~ (T/2pi) ln(T/2pi) - T/2pi + 7/8` for the number of zeros with
/// ordinate below `T`. Domain `T > 2 pi`.
pub fn zero_count_estimate(t: f64) -> Result<f64> {
    let two_pi = std::f64::consts::TAU;
    if t <= two_pi {
        return Err(Error::ZeroCountDomain { t });
    }
    let x = t / two_pi;
    Ok(x * x.ln() - x + 0.875)
}
