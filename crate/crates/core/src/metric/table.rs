use std::path::Path;
use std::sync::Arc;

use rand::Rng;

use super::MetricSpace;
use crate::error::{Error, Result};

/// A finite space given by an explicit distance table.
///
/// Construction only checks shape and finiteness. Symmetry, nonnegativity
/// and the triangle inequality are left to
/// [`verify_metric_axioms`](super::verify_metric_axioms), which lets a
/// corrupted table be loaded and diagnosed.
#[derive(Debug, Clone, PartialEq)]
pub struct TableSpace {
    names: Arc<Vec<String>>,
    dist: Arc<Vec<f64>>,
    source: Option<String>,
}

impl TableSpace {
    pub fn new(names: Vec<String>, rows: Vec<Vec<f64>>) -> Result<Self> {
        let n = names.len();
        if n == 0 {
            return Err(Error::usage("distance table has no points"));
        }
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(Error::usage(format!(
                "distance table must be {n}x{n} to match its header"
            )));
        }
        if rows.iter().flatten().any(|d| !d.is_finite()) {
            return Err(Error::usage("distance table contains a non-finite entry"));
        }
        for (i, a) in names.iter().enumerate() {
            if names[..i].contains(a) {
                return Err(Error::usage(format!("duplicate point name `{a}`")));
            }
        }
        Ok(TableSpace {
            names: Arc::new(names),
            dist: Arc::new(rows.into_iter().flatten().collect()),
            source: None,
        })
    }

    /// Reads a CSV whose header row names the points, followed by the square
    /// matrix. A data row may optionally start with its point name.
    pub fn from_csv(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text =
            std::fs::read_to_string(path).map_err(|e| Error::io(path.display().to_string(), e))?;
        let mut space = Self::from_csv_str(&text)?;
        space.source = Some(path.display().to_string());
        Ok(space)
    }

    pub fn from_csv_str(text: &str) -> Result<Self> {
        let mut reader = csv::ReaderBuilder::new()
            .has_headers(true)
            .trim(csv::Trim::All)
            .flexible(true)
            .from_reader(text.as_bytes());
        let mut names: Vec<String> = reader.headers()?.iter().map(str::to_string).collect();
        // A blank leading header cell marks a row-label column.
        let labelled = names.first().is_some_and(|h| h.is_empty());
        if labelled {
            names.remove(0);
        }
        let n = names.len();
        let mut rows = Vec::with_capacity(n);
        for record in reader.records() {
            let record = record?;
            let fields: Vec<&str> = record.iter().collect();
            let cells = if fields.len() == n + 1 {
                &fields[1..]
            } else {
                &fields[..]
            };
            let row = cells
                .iter()
                .map(|c| {
                    c.parse::<f64>()
                        .map_err(|_| Error::parse(*c, "expected a distance"))
                })
                .collect::<Result<Vec<_>>>()?;
            rows.push(row);
        }
        Self::new(names, rows)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

impl MetricSpace for TableSpace {
    type Point = usize;
    type Dist = f64;

    fn distance(&self, a: &usize, b: &usize) -> f64 {
        self.dist[a * self.len() + b]
    }

    fn describe(&self) -> String {
        match &self.source {
            Some(p) => format!("table:{p}"),
            None => format!("table:<{} points>", self.len()),
        }
    }

    fn contains(&self, p: &usize) -> bool {
        *p < self.len()
    }

    fn format_point(&self, p: &usize) -> String {
        self.names
            .get(*p)
            .cloned()
            .unwrap_or_else(|| format!("#{p}"))
    }

    fn parse_point(&self, s: &str) -> Result<usize> {
        let t = s.trim();
        if let Some(i) = self.index_of(t) {
            return Ok(i);
        }
        match t.strip_prefix('#').and_then(|d| d.parse::<usize>().ok()) {
            Some(i) if i < self.len() => Ok(i),
            _ => Err(Error::parse(s, "not a point of this table")),
        }
    }

    fn sample_points<R: Rng>(&self, _cutoff: usize, _count: usize, _rng: &mut R) -> Vec<usize> {
        (0..self.len()).collect()
    }

    fn is_indexed(&self) -> bool {
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_plain_and_labelled_tables() {
        let plain = TableSpace::from_csv_str("a,b\n0,1\n1,0\n").unwrap();
        let labelled = TableSpace::from_csv_str(",a,b\na,0,1\nb,1,0\n").unwrap();
        assert_eq!(plain.len(), 2);
        assert_eq!(plain.distance(&0, &1), 1.0);
        assert_eq!(labelled.distance(&1, &0), 1.0);
        assert_eq!(labelled.parse_point("b").unwrap(), 1);
    }

    #[test]
    fn rejects_ragged_tables() {
        assert!(TableSpace::from_csv_str("a,b,c\n0,1,2\n1,0,1\n").is_err());
        assert!(TableSpace::from_csv_str("a,b\n0,x\n1,0\n").is_err());
    }

    #[test]
    fn keeps_asymmetric_entries_for_diagnosis() {
        let t = TableSpace::new(
            vec!["a".into(), "b".into()],
            vec![vec![0.0, 1.0], vec![2.0, 0.0]],
        )
        .unwrap();
        assert_eq!(t.distance(&0, &1), 1.0);
        assert_eq!(t.distance(&1, &0), 2.0);
    }
}
