use rayon::prelude::*;

use super::PairSample;
use crate::error::{Error, Result};
use crate::maps::SelfMap;
use crate::metric::MetricSpace;
use crate::scalar::Scalar;
use crate::verdict::{CheckVerdict, Condition, SampleStats, Witness};

/// Sampled Lipschitz constant of a map.
#[derive(Debug, Clone, PartialEq)]
pub struct BanachEstimate<P, D> {
    /// Supremum of `d(Tx,Ty) / d(x,y)` over the usable pairs.
    pub lipschitz: D,
    pub pairs_used: usize,
    /// Pairs at distance zero.
    pub skipped: usize,
    pub verdict: CheckVerdict<P, D>,
}

/// Falsified when the sampled Lipschitz constant reaches 1.
pub fn check_banach<S, M>(
    space: &S,
    map: &M,
    sample: &PairSample<S::Point>,
) -> Result<BanachEstimate<S::Point, S::Dist>>
where
    S: MetricSpace,
    M: SelfMap<Point = S::Point>,
{
    let rows: Vec<Option<(S::Dist, S::Dist)>> = (0..sample.len())
        .into_par_iter()
        .map(|k| {
            let (x, y) = sample.pair(k);
            let d = space.distance(x, y);
            if d.is_zero() {
                None
            } else {
                Some((d, space.distance(&map.apply(x), &map.apply(y))))
            }
        })
        .collect();
    let mut best: Option<(usize, S::Dist)> = None;
    let mut used = 0;
    for (k, row) in rows.iter().enumerate() {
        if let Some((d, dt)) = row {
            used += 1;
            let ratio = dt.clone() / d.clone();
            if best.as_ref().is_none_or(|(_, b)| ratio > *b) {
                best = Some((k, ratio));
            }
        }
    }
    let (arg, lipschitz) = best.ok_or_else(|| {
        Error::usage("the Banach check needs at least one pair at positive distance")
    })?;
    let verdict = if lipschitz >= S::Dist::from_f64(1.0) {
        let (x, y) = sample.pair(arg);
        let (d, dt) = rows[arg].clone().expect("argmax row is usable");
        CheckVerdict::Falsified(
            Witness::new(Condition::Banach)
                .with_points(vec![x.clone(), y.clone()])
                .measure("d", d)
                .measure("d-image", dt)
                .measure("ratio", lipschitz.clone()),
        )
    } else {
        CheckVerdict::ConsistentUpToSample(SampleStats::evaluated(used))
    };
    Ok(BanachEstimate {
        lipschitz,
        pairs_used: used,
        skipped: sample.len() - used,
        verdict,
    })
}
