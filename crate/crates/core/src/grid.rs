//! Search grids for epsilon, delta and eta.

use crate::error::{Error, Result};

/// Geometric epsilon grid `lo, 2 lo, 4 lo, ...` up to `hi`.
#[derive(Debug, Clone, PartialEq)]
pub struct EpsGrid(Vec<f64>);

impl EpsGrid {
    pub fn geometric(lo: f64, hi: f64) -> Result<Self> {
        if !(lo > 0.0 && lo.is_finite() && hi.is_finite() && lo <= hi) {
            return Err(Error::usage(format!("bad epsilon range {lo}:{hi}")));
        }
        let mut values = Vec::new();
        let mut e = lo;
        while e <= hi * (1.0 + 1e-12) {
            values.push(e);
            e *= 2.0;
        }
        Ok(EpsGrid(values))
    }

    pub fn from_values(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() || values.iter().any(|e| !(*e > 0.0 && e.is_finite())) {
            return Err(Error::usage("epsilon grid must be nonempty and positive"));
        }
        Ok(EpsGrid(values))
    }

    /// Parses `lo:hi:geometric` (the `:geometric` suffix is optional).
    pub fn parse(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let kind_ok = parts.len() == 2 || (parts.len() == 3 && parts[2] == "geometric");
        if !kind_ok {
            return Err(Error::parse(s, "expected lo:hi:geometric"));
        }
        let num = |t: &str| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| Error::parse(t, "expected a number"))
        };
        Self::geometric(num(parts[0])?, num(parts[1])?)
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }
}

impl Default for EpsGrid {
    /// `2^-6, ..., 2^2`
    fn default() -> Self {
        EpsGrid((-6..=2).map(|k| 2f64.powi(k)).collect())
    }
}

/// Relative delta grid `eps * 2^-j`, `j = 0..=steps`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DeltaGrid {
    pub steps: u32,
}

impl DeltaGrid {
    pub fn new(steps: u32) -> Self {
        DeltaGrid { steps }
    }

    /// A grid holding only `delta = eps`.
    pub fn eps_only() -> Self {
        DeltaGrid { steps: 0 }
    }

    /// Descending deltas for the given epsilon.
    pub fn values(&self, eps: f64) -> Vec<f64> {
        (0..=self.steps)
            .map(|j| eps * 2f64.powi(-(j as i32)))
            .collect()
    }
}

impl Default for DeltaGrid {
    fn default() -> Self {
        DeltaGrid { steps: 12 }
    }
}

/// Ascending eta values `eps (1 - 2^-j)`, `j = 1..=8`, all inside `(0, eps)`.
pub fn eta_values(eps: f64) -> Vec<f64> {
    (1..=8).map(|j| eps * (1.0 - 2f64.powi(-j))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_eps_grid_spans_the_example_scale() {
        let g = EpsGrid::default();
        assert_eq!(g.values().len(), 9);
        assert_eq!(g.values()[0], 1.0 / 64.0);
        assert_eq!(*g.values().last().unwrap(), 4.0);
        assert_eq!(EpsGrid::parse("0.015625:4:geometric").unwrap(), g);
    }

    #[test]
    fn delta_grid_descends_from_eps() {
        let d = DeltaGrid::default().values(0.5);
        assert_eq!(d.len(), 13);
        assert_eq!(d[0], 0.5);
        assert_eq!(d[12], 0.5 / 4096.0);
        assert!(d.windows(2).all(|w| w[0] > w[1]));
    }

    #[test]
    fn eta_stays_strictly_inside() {
        let eta = eta_values(1.0);
        assert_eq!(eta[0], 0.5);
        assert!(eta.iter().all(|e| *e > 0.0 && *e < 1.0));
    }

    #[test]
    fn rejects_malformed_grids() {
        assert!(EpsGrid::parse("1:0.5").is_err());
        assert!(EpsGrid::parse("0:1:geometric").is_err());
        assert!(EpsGrid::parse("0.1:1:linear").is_err());
    }
}
