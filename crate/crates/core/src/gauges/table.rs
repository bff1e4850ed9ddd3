use rayon::prelude::*;

use super::Gauge;
use crate::error::{Error, Result};
use crate::metric::{DistanceMatrix, MetricSpace};
use crate::prefix::SequencePrefix;
use crate::scalar::Scalar;

/// Gauge values `m(x_p, x_q)` on a sequence prefix, with the shift
/// `T x_p = x_{p+1}`. Covers every ordered pair with both positions below
/// `len - probe_depth`.
#[derive(Debug, Clone)]
pub struct GaugeTable<D> {
    gauge: Gauge,
    covered: usize,
    values: Vec<D>,
}

impl<D: Scalar> GaugeTable<D> {
    pub fn on_prefix<S: MetricSpace<Dist = D>>(gauge: Gauge, prefix: &SequencePrefix<S>) -> Self {
        Self::from_distances(gauge, &prefix.distances())
    }

    pub fn from_distances(gauge: Gauge, dist: &DistanceMatrix<D>) -> Self {
        let covered = dist.len().saturating_sub(gauge.probe_depth());
        let values = (0..covered)
            .into_par_iter()
            .flat_map_iter(|p| (0..covered).map(move |q| evaluate_indexed(&gauge, dist, p, q)))
            .collect();
        GaugeTable {
            gauge,
            covered,
            values,
        }
    }

    pub fn gauge(&self) -> &Gauge {
        &self.gauge
    }

    /// Positions `0..covered` have values.
    pub fn covered(&self) -> usize {
        self.covered
    }

    pub fn get(&self, p: usize, q: usize) -> &D {
        &self.values[p * self.covered + q]
    }

    pub fn try_get(&self, p: usize, q: usize) -> Result<&D> {
        if p < self.covered && q < self.covered {
            Ok(self.get(p, q))
        } else {
            Err(Error::usage(format!(
                "gauge table covers positions below {}, pair ({p}, {q}) is outside",
                self.covered
            )))
        }
    }
}

/// `m(x_p, x_q)` read from a distance matrix of the prefix.
pub(crate) fn evaluate_indexed<D: Scalar>(
    gauge: &Gauge,
    dist: &DistanceMatrix<D>,
    p: usize,
    q: usize,
) -> D {
    gauge.evaluate_nodes(|(sa, a), (sb, b)| {
        let i = if sa { q + a } else { p + a };
        let j = if sb { q + b } else { p + b };
        dist.get(i, j)
    })
}
