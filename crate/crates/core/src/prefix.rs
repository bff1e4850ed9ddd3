use std::path::Path;

use crate::error::{Error, Result};
use crate::metric::{DistanceMatrix, Interval, MetricSpace};

/// A finite list `x_0, ..., x_K` standing in for an infinite sequence.
/// Indexing starts at zero.
#[derive(Debug, Clone)]
pub struct SequencePrefix<S: MetricSpace> {
    space: S,
    entries: Vec<S::Point>,
}

impl<S: MetricSpace> SequencePrefix<S> {
    pub fn new(space: S, entries: Vec<S::Point>) -> Self {
        SequencePrefix { space, entries }
    }

    pub fn space(&self) -> &S {
        &self.space
    }

    pub fn entries(&self) -> &[S::Point] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, n: usize) -> &S::Point {
        &self.entries[n]
    }

    pub fn dist(&self, p: usize, q: usize) -> S::Dist {
        self.space.distance(&self.entries[p], &self.entries[q])
    }

    /// `d(x_n, x_{n+1})` for `n = 0 .. len - 2`.
    pub fn steps(&self) -> Vec<S::Dist> {
        self.entries
            .windows(2)
            .map(|w| self.space.distance(&w[0], &w[1]))
            .collect()
    }

    pub fn distances(&self) -> DistanceMatrix<S::Dist> {
        DistanceMatrix::build(&self.space, &self.entries)
    }

    pub fn truncated(&self, len: usize) -> Self {
        SequencePrefix {
            space: self.space.clone(),
            entries: self.entries[..len.min(self.entries.len())].to_vec(),
        }
    }
}

impl SequencePrefix<Interval> {
    /// Reals on the line, spanned by the smallest interval holding them.
    pub fn from_reals(values: Vec<f64>) -> Result<Self> {
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::usage("sequence values must be finite"));
        }
        let lo = values.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let space = if values.is_empty() {
            Interval::unit()
        } else if lo < hi {
            Interval::new(lo, hi)?
        } else {
            Interval::new(lo - 1.0, hi + 1.0)?
        };
        Ok(SequencePrefix::new(space, values))
    }

    /// One scalar per line; blank lines and `#` comments are skipped.
    pub fn from_csv(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text =
            std::fs::read_to_string(path).map_err(|e| Error::io(path.display().to_string(), e))?;
        Self::from_csv_str(&text)
    }

    pub fn from_csv_str(text: &str) -> Result<Self> {
        let values = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(|l| {
                let cell = l.split(',').next().unwrap_or(l).trim();
                cell.parse::<f64>()
                    .map_err(|_| Error::parse(cell, "expected a real number"))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_reals(values)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_one_value_per_line() {
        let p = SequencePrefix::from_csv_str("# x_n\n1\n0.5\n\n0.25\n").unwrap();
        assert_eq!(p.entries(), &[1.0, 0.5, 0.25]);
        assert_eq!(p.steps(), vec![0.5, 0.25]);
        assert!(SequencePrefix::from_csv_str("1\nabc\n").is_err());
    }

    #[test]
    fn constant_sequence_gets_a_nondegenerate_space() {
        let p = SequencePrefix::from_reals(vec![3.0; 4]).unwrap();
        assert_eq!(p.space().lo(), 2.0);
        assert_eq!(p.dist(0, 3), 0.0);
    }
}
