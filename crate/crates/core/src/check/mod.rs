//! Falsifiers for contraction conditions on sampled pairs and orbits.
//!
//! Decisions compare the computed values directly: an implication is
//! violated as soon as its computed hypothesis holds and its computed
//! conclusion fails, with no slack.

mod asymptotic;
mod banach;
mod meir_keeler;
mod replay;
pub(crate) mod search;
mod shifted;

pub use asymptotic::{
    check_asymptotic_final_type, check_asymptotic_m_contraction, AsymptoticBudget, AsymptoticReport,
};
pub use banach::{check_banach, BanachEstimate};
pub use meir_keeler::{check_ciric_matkowski, check_meir_keeler, CiricMatkowskiReport};
pub use replay::{replay_on_orbit, replay_pair};
pub use shifted::check_shifted_m_contraction;

use rand::Rng;
use rayon::prelude::*;

use crate::maps::{Orbit, SelfMap};
use crate::metric::MetricSpace;

/// Points and the pairs drawn from them.
#[derive(Debug, Clone)]
pub struct PairSample<P> {
    pub points: Vec<P>,
    pub pairs: Vec<(usize, usize)>,
}

impl<P: Clone> PairSample<P> {
    /// Every pair `i < j` of the given points.
    pub fn all_pairs(points: Vec<P>) -> Self {
        let n = points.len();
        let pairs = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .collect();
        PairSample { points, pairs }
    }

    pub fn from_pairs(pairs: Vec<(P, P)>) -> Self {
        let mut points = Vec::with_capacity(2 * pairs.len());
        let mut idx = Vec::with_capacity(pairs.len());
        for (x, y) in pairs {
            idx.push((points.len(), points.len() + 1));
            points.push(x);
            points.push(y);
        }
        PairSample { points, pairs: idx }
    }

    /// Exhaustive pairs up to `cutoff` on indexed spaces, otherwise `count`
    /// seeded random pairs.
    pub fn draw<S, R>(space: &S, cutoff: usize, count: usize, rng: &mut R) -> Self
    where
        S: MetricSpace<Point = P>,
        R: Rng,
    {
        if space.is_indexed() {
            PairSample::all_pairs(space.sample_points(cutoff, 0, rng))
        } else {
            let pts = space.sample_points(cutoff, 2 * count, rng);
            let pairs = (0..pts.len() / 2).map(|k| (2 * k, 2 * k + 1)).collect();
            PairSample { points: pts, pairs }
        }
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn pair(&self, k: usize) -> (&P, &P) {
        let (i, j) = self.pairs[k];
        (&self.points[i], &self.points[j])
    }
}

/// `T^0 p, ..., T^depth p` for every sample point.
pub(crate) fn orbit_sections<M: SelfMap>(
    map: &M,
    points: &[M::Point],
    depth: usize,
) -> Vec<Vec<M::Point>>
where
    M::Point: Clone + Send + Sync,
{
    points
        .par_iter()
        .map(|p| Orbit::new(map, p.clone()).prefix(depth).to_vec())
        .collect()
}
